//! Exact GIT (semi)stability analysis of projective hypersurfaces.

pub mod analyze;
pub mod benoist;
pub mod certificate;
pub mod criteria;
pub mod error;
pub mod fp;
pub mod groebner;
pub mod linear;
pub mod lp;
pub mod macaulay;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod singularity;
pub mod weights;

pub use error::{Error, Result};
pub use linear::LinearChange;
pub use parse::{parse_affine, parse_point, parse_poly};
pub use poly::{AffinePoly, HomogeneousPoly, Monomial, Poly};
pub use scalar::{Field, Scalar};
