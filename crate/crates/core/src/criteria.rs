//! Numerical sufficient conditions for (semi)stability.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::singularity::TriState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Stable,
    Semistable,
    NotStable,
    NotSemistable,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Stable => "stable",
            Status::Semistable => "semistable",
            Status::NotStable => "not-stable",
            Status::NotSemistable => "not-semistable",
            Status::Inconclusive => "inconclusive",
        }
    }

    /// Stable implies semistable.
    pub fn implies_semistable(self) -> bool {
        matches!(self, Status::Stable | Status::Semistable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub basis: String,
    pub conditional_on: Vec<String>,
}

impl Verdict {
    fn new(status: Status, basis: impl Into<String>) -> Verdict {
        Verdict {
            status,
            basis: basis.into(),
            conditional_on: Vec::new(),
        }
    }

    pub fn is_conditional(&self) -> bool {
        !self.conditional_on.is_empty()
    }

    pub fn with_condition(mut self, c: impl Into<String>) -> Verdict {
        let c = c.into();
        if !self.conditional_on.contains(&c) {
            self.conditional_on.push(c);
        }
        self
    }
}

fn compare(lhs: i64, rhs: i64, basis: String) -> Verdict {
    let status = if lhs > rhs {
        Status::Stable
    } else if lhs == rhs {
        Status::Semistable
    } else {
        Status::Inconclusive
    };
    Verdict::new(status, basis)
}

fn validate(d: u32, delta: u32, s: i32, n: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Precondition(format!("degree {d} < 2")));
    }
    if n < 1 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    if delta < 1 || delta > d {
        return Err(Error::Precondition(format!("delta = {delta} outside [1, {d}]")));
    }
    if s < -1 || s > n as i32 - 1 {
        return Err(Error::Precondition(format!("s = {s} outside [-1, {}]", n as i32 - 1)));
    }
    Ok(())
}

fn min_term(s: i32, n: usize) -> i64 {
    (n as i64 + 1).min(s as i64 + 3)
}

/// `d >= delta * min(N+1, s+3)`, strict for stability.
pub fn check_part1(d: u32, delta: u32, s: i32, n: usize) -> Result<Verdict> {
    validate(d, delta, s, n)?;
    let rhs = delta as i64 * min_term(s, n);
    Ok(compare(d as i64, rhs, format!("d = {d} vs delta*min(N+1, s+3) = {rhs}")))
}

/// `d >= (delta-1) * min(N+1, s+3)` when no tangent cone of multiplicity `delta`
/// is a cone over a lower-dimensional hypersurface.
pub fn check_part2(d: u32, delta: u32, s: i32, n: usize, cone_flags: &[TriState]) -> Result<Verdict> {
    validate(d, delta, s, n)?;
    if n < 2 {
        return Err(Error::Precondition("needs N >= 2".into()));
    }
    if delta < 2 {
        return Err(Error::Precondition("needs delta >= 2".into()));
    }
    let rhs = (delta as i64 - 1) * min_term(s, n);
    let basis = format!("d = {d} vs (delta-1)*min(N+1, s+3) = {rhs}");
    if cone_flags.is_empty() || cone_flags.iter().any(|&f| f != TriState::No) {
        return Ok(Verdict::new(Status::Inconclusive, format!("{basis}; tangent-cone hypothesis not established")));
    }
    Ok(compare(d as i64, rhs, basis))
}

/// The first condition with `s'` in place of `s`.
pub fn check_sprime_variant(d: u32, delta: u32, s_prime: i32, n: usize) -> Result<Verdict> {
    validate(d, delta, s_prime, n)?;
    let rhs = delta as i64 * min_term(s_prime, n);
    Ok(compare(d as i64, rhs, format!("d = {d} vs delta*min(N+1, s'+3) = {rhs}")))
}

/// `d >= (N+1)(delta-1)` when no tangent cone of multiplicity `delta` is a hyperplane.
pub fn check_thm41(d: u32, delta: u32, n: usize, hyperplane_flags: &[TriState]) -> Result<Verdict> {
    if delta < 2 {
        return Err(Error::Precondition("needs delta >= 2".into()));
    }
    validate(d, delta, -1, n)?;
    let rhs = (n as i64 + 1) * (delta as i64 - 1);
    let basis = format!("d = {d} vs (N+1)(delta-1) = {rhs}");
    if hyperplane_flags.is_empty() || hyperplane_flags.iter().any(|&f| f != TriState::No) {
        return Ok(Verdict::new(Status::Inconclusive, format!("{basis}; tangent-cone hypothesis not established")));
    }
    Ok(compare(d as i64, rhs, basis))
}
