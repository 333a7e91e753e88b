//! One-parameter subgroup weights, alpha-degrees and weighted multiplicities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::LinearChange;
use crate::poly::{HomogeneousPoly, Poly};

/// Integer weights `alpha` with zero sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(alpha: Vec<i64>) -> Result<WeightVector> {
        let sum: i64 = alpha.iter().sum();
        if sum != 0 {
            return Err(Error::NonZeroSum(sum));
        }
        Ok(WeightVector(alpha))
    }

    /// Requires the entries to be nondecreasing and not all zero.
    pub fn sorted(alpha: Vec<i64>) -> Result<WeightVector> {
        let w = WeightVector::new(alpha)?;
        w.require_sorted()?;
        Ok(w)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn require_sorted(&self) -> Result<()> {
        if !self.is_sorted() {
            return Err(Error::UnsortedWeights);
        }
        if self.is_zero() {
            return Err(Error::ZeroWeights);
        }
        Ok(())
    }

    /// `alpha_N - alpha_i` for `i < N`.
    pub fn affine_weights(&self) -> Vec<i64> {
        let top = *self.0.last().expect("nonempty weights");
        self.0[..self.0.len() - 1].iter().map(|a| top - a).collect()
    }

    /// Clears denominators of a zero-sum rational vector and divides by the gcd.
    pub fn from_rational(alpha: &[BigRational]) -> Result<WeightVector> {
        let ints = primitive_integer_vector(alpha);
        let ints: Vec<i64> = ints
            .iter()
            .map(|v| {
                i64::try_from(v.clone())
                    .map_err(|_| Error::InvalidWeights("weight entry exceeds 64 bits".into()))
            })
            .collect::<Result<_>>()?;
        WeightVector::new(ints)
    }
}

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(w: WeightVector) -> Vec<i64> {
        w.0
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// `max_m alpha . m` over the support of `f`.
pub fn alpha_degree(f: &HomogeneousPoly, alpha: &WeightVector) -> Result<i64> {
    if alpha.len() != f.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.n_vars(),
            found: alpha.len(),
        });
    }
    f.support()
        .map(|m| dot(m.exponents(), alpha.as_slice()))
        .max()
        .ok_or(Error::ZeroPolynomial)
}

pub(crate) fn dot(m: &[u32], alpha: &[i64]) -> i64 {
    m.iter().zip(alpha).map(|(&e, &a)| e as i64 * a).sum()
}

/// `min_m w . m` over the support of `f`, for nonnegative rational `w`.
pub fn weighted_multiplicity(f: &Poly, w: &[BigRational]) -> Result<BigRational> {
    if w.len() != f.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.n_vars(),
            found: w.len(),
        });
    }
    if w.iter().any(Signed::is_negative) {
        return Err(Error::InvalidWeights("affine weights must be nonnegative".into()));
    }
    f.support()
        .map(|m| {
            m.exponents()
                .iter()
                .zip(w)
                .map(|(&e, wi)| wi * BigInt::from(e))
                .sum::<BigRational>()
        })
        .min()
        .ok_or(Error::ZeroPolynomial)
}

/// Integer convenience wrapper around [`weighted_multiplicity`].
pub fn weighted_multiplicity_int(f: &Poly, w: &[i64]) -> Result<BigRational> {
    let w: Vec<BigRational> = w.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    weighted_multiplicity(f, &w)
}

/// The four lower bounds on `deg_alpha(F o g)` at a point `P = g(e_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBounds {
    /// Applies when `P` is off the hypersurface.
    pub off_hypersurface: i64,
    /// Applies at every point of multiplicity `delta_p`.
    pub multiplicity: i64,
    /// Applies when the tangent cone is not a hyperplane; needs `N >= 2`.
    pub not_hyperplane: Option<i64>,
    /// Applies when the tangent cone is not a cone over a hyperplane section; needs `N >= 2`.
    pub not_cone: Option<i64>,
}

pub fn local_bounds(alpha: &WeightVector, d: u32, delta_p: u32) -> Result<LocalBounds> {
    alpha.require_sorted()?;
    let a = alpha.as_slice();
    let n = a.len() - 1;
    let (d, dp) = (d as i64, delta_p as i64);
    let an = a[n];
    let sum = |lo: usize, hi: usize| -> i64 {
        // inclusive range, empty when lo > hi
        if lo > hi || hi >= a.len() {
            0
        } else {
            a[lo..=hi].iter().sum()
        }
    };
    let off = d * an;
    let mult = (d - 2 * dp) * an - dp * sum(1, n.saturating_sub(1));
    let (hyper, cone) = if n >= 2 {
        (
            Some((d - 2 * dp + 1) * an - (dp - 2) * a[1] - (dp - 1) * sum(2, n - 1)),
            Some((d - 2 * dp + 1) * an - (dp - 1) * sum(1, n - 2) - (dp - 2) * a[n - 1]),
        )
    } else {
        (None, None)
    };
    Ok(LocalBounds {
        off_hypersurface: off,
        multiplicity: if n >= 1 { mult } else { off },
        not_hyperplane: hyper,
        not_cone: cone,
    })
}

/// Both sides of the identity
/// `deg_alpha(F o g) = d/(N+1) * sum_i w_i - mult_w(f)`, `w_i = alpha_N - alpha_i`,
/// where `f` is `F o g` dehomogenized at `X_N`.
pub fn hm_lee_bridge(
    f: &HomogeneousPoly,
    g: &LinearChange,
    alpha: &WeightVector,
) -> Result<(BigRational, BigRational)> {
    alpha.require_sorted()?;
    f.require_nonzero()?;
    let fg = f.apply_linear_change(g)?;
    let lhs = BigRational::from_integer(alpha_degree(&fg, alpha)?.into());
    let n = f.n_vars() - 1;
    let w: Vec<BigRational> = alpha
        .affine_weights()
        .into_iter()
        .map(|x| BigRational::from_integer(x.into()))
        .collect();
    let local = fg.dehomogenize(n)?;
    let sum_w: BigRational = w.iter().sum();
    let rhs = sum_w * BigRational::new(f.degree().into(), (n as u32 + 1).into())
        - weighted_multiplicity(&local, &w)?;
    Ok((lhs, rhs))
}
