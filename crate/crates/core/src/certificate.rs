//! Re-checkable witnesses `(g, alpha)` for instability and non-stability.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::LinearChange;
use crate::poly::HomogeneousPoly;
use crate::scalar::{Field, Scalar};
use crate::weights::{alpha_degree, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `deg_alpha(F o g) < 0`.
    NotSemistable,
    /// `deg_alpha(F o g) <= 0`.
    NotStable,
}

impl Claim {
    pub fn holds_for(self, degree: i64) -> bool {
        match self {
            Claim::NotSemistable => degree < 0,
            Claim::NotStable => degree <= 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub field: String,
    pub nvars: usize,
    pub poly: String,
    /// Rows of `g`, entries as exact rational (or residue) strings.
    pub frame: Vec<Vec<String>>,
    pub alpha: WeightVector,
    pub degree_value: String,
    pub claim: Claim,
}

impl Certificate {
    /// Builds a certificate, refusing one whose claim does not hold.
    pub fn new(f: &HomogeneousPoly, g: &LinearChange, alpha: &WeightVector, claim: Claim) -> Result<Certificate> {
        if alpha.is_zero() {
            return Err(Error::ZeroWeights);
        }
        let deg = alpha_degree(&f.apply_linear_change(g)?, alpha)?;
        if !claim.holds_for(deg) {
            return Err(Error::Internal(format!("claimed {claim:?} but deg_alpha = {deg}")));
        }
        Ok(Certificate {
            field: f.field().to_string(),
            nvars: f.n_vars(),
            poly: f.to_string(),
            frame: g.rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect(),
            alpha: alpha.clone(),
            degree_value: deg.to_string(),
            claim,
        })
    }

    pub fn frame_matrix(&self) -> Result<LinearChange> {
        let field: Field = self.field.parse()?;
        let rows = self
            .frame
            .iter()
            .map(|r| r.iter().map(|e| Scalar::parse(e, field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LinearChange::new(field, rows)
    }

    /// Recomputes the degree through the library's own substitution.
    pub fn recheck(&self) -> Result<bool> {
        let field: Field = self.field.parse()?;
        let f = crate::parse::parse_poly(&self.poly, self.nvars, field)?;
        let g = self.frame_matrix()?;
        if self.alpha.is_zero() {
            return Ok(false);
        }
        let deg = alpha_degree(&f.apply_linear_change(&g)?, &self.alpha)?;
        Ok(deg.to_string() == self.degree_value && self.claim.holds_for(deg))
    }
}
