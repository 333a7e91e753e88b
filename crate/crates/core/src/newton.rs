//! Newton-polytope tests: torus verdicts in a fixed frame, frame search, and
//! weighted-multiplicity ratios.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{nullspace, LinearChange};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::poly::{AffinePoly, HomogeneousPoly, Monomial};
use crate::scalar::{Field, Scalar};
use crate::weights::{alpha_degree, weighted_multiplicity, WeightVector};

/// Exponent vectors of a nonzero form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub points: Vec<Vec<u32>>,
    pub degree: u32,
}

impl SupportSet {
    pub fn of(f: &HomogeneousPoly) -> Result<SupportSet> {
        f.require_nonzero()?;
        Ok(SupportSet {
            points: f.support().map(|m| m.exponents().to_vec()).collect(),
            degree: f.degree(),
        })
    }

    pub fn n_vars(&self) -> usize {
        self.points[0].len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameStatus {
    StableInFrame,
    StrictlySemistableInFrame,
    UnstableInFrame,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameVerdict {
    pub status: FrameStatus,
    /// Present unless stable: `deg_alpha < 0` (unstable) or `= 0` (strict).
    pub certificate: Option<WeightVector>,
}

fn q(v: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Barycenter membership by one convex-combination LP with
/// `lambda_j = mu_j + eps`: (in hull, in relative interior).
fn barycenter_position(s: &SupportSet) -> (bool, bool) {
    let k = s.points.len();
    let n = s.n_vars();
    let b = BigRational::new(BigInt::from(s.degree), BigInt::from(n));
    // variables: mu_0..mu_{k-1}, eps
    let mut lp = LinearProgram::new(k + 1);
    let mut obj = vec![BigRational::zero(); k + 1];
    obj[k] = BigRational::one();
    lp.maximize(obj);
    let mut sum = vec![BigRational::one(); k + 1];
    sum[k] = q(k as u32);
    lp.add(sum, Relation::Eq, BigRational::one());
    for i in 0..n {
        let mut row: Vec<BigRational> = s.points.iter().map(|m| q(m[i])).collect();
        row.push(q(s.points.iter().map(|m| m[i]).sum()));
        lp.add(row, Relation::Eq, b.clone());
    }
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => (true, value.is_positive()),
        LpOutcome::Infeasible => (false, false),
        LpOutcome::Unbounded => unreachable!("slack is bounded by the simplex constraint"),
    }
}

/// Every `X_i^d` present: the hull is the whole simplex.
fn contains_all_pure_powers(s: &SupportSet) -> bool {
    let n = s.n_vars();
    (0..n).all(|i| s.points.iter().any(|m| m[i] == s.degree))
}

/// Affine dimension of the support.
fn affine_dim(s: &SupportSet) -> usize {
    let base = &s.points[0];
    let rows: Vec<Vec<Scalar>> = s.points[1..]
        .iter()
        .map(|m| {
            m.iter()
                .zip(base)
                .map(|(&a, &b)| Scalar::from_i64(a as i64 - b as i64, Field::Rational))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return 0;
    }
    crate::linear::rank(&rows, Field::Rational)
}

fn box_lp(s: &SupportSet) -> LinearProgram {
    // variables alpha_0..alpha_N (free), then t (free)
    let n = s.n_vars();
    let mut lp = LinearProgram::new(n + 1);
    for j in 0..=n {
        lp.set_free(j);
    }
    let mut zs = vec![BigRational::one(); n + 1];
    zs[n] = BigRational::zero();
    lp.add(zs, Relation::Eq, BigRational::zero());
    for i in 0..n {
        let mut up = vec![BigRational::zero(); n + 1];
        up[i] = BigRational::one();
        lp.add(up.clone(), Relation::Le, BigRational::one());
        lp.add(up, Relation::Ge, -BigRational::one());
    }
    lp
}

/// Maximizes `t` with `alpha . m <= -t` for all support points.
fn separating_alpha(s: &SupportSet) -> (BigRational, Vec<BigRational>) {
    let n = s.n_vars();
    let mut lp = box_lp(s);
    for m in &s.points {
        let mut row: Vec<BigRational> = m.iter().map(|&e| q(e)).collect();
        row.push(BigRational::one());
        lp.add(row, Relation::Le, BigRational::zero());
    }
    let mut obj = vec![BigRational::zero(); n + 1];
    obj[n] = BigRational::one();
    lp.maximize(obj);
    match lp.solve() {
        LpOutcome::Optimal { value, x } => (value, x[..n].to_vec()),
        o => unreachable!("separation LP is feasible and bounded: {o:?}"),
    }
}

/// Nonzero `alpha` with `alpha . m <= 0` on the support, if one exists.
fn weakly_separating_alpha(s: &SupportSet) -> Option<Vec<BigRational>> {
    let n = s.n_vars();
    // Kernel first: alpha orthogonal to every support point and to (1,...,1).
    let mut rows: Vec<Vec<Scalar>> = s
        .points
        .iter()
        .map(|m| m.iter().map(|&e| Scalar::from_i64(e as i64, Field::Rational)).collect())
        .collect();
    rows.push(vec![Scalar::one(Field::Rational); n]);
    if let Some(v) = nullspace(&rows, n, Field::Rational).into_iter().next() {
        return Some(v.iter().map(|c| c.as_rational().cloned().expect("rational")).collect());
    }
    let mut lp = box_lp(s);
    let mut obj = vec![BigRational::zero(); n + 1];
    for m in &s.points {
        let mut row: Vec<BigRational> = m.iter().map(|&e| q(e)).collect();
        row.push(BigRational::zero());
        for (o, r) in obj.iter_mut().zip(&row) {
            *o -= r;
        }
        lp.add(row, Relation::Le, BigRational::zero());
    }
    lp.maximize(obj);
    match lp.solve() {
        LpOutcome::Optimal { value, x } if value.is_positive() => Some(x[..n].to_vec()),
        LpOutcome::Optimal { .. } => None,
        o => unreachable!("strictness LP is feasible and bounded: {o:?}"),
    }
}

/// Torus (semi)stability of the support in the current coordinates.
///
/// The convex-combination route and the separating-functional route are both
/// evaluated; disagreement is reported as an internal error.
pub fn torus_verdict(f: &HomogeneousPoly) -> Result<FrameVerdict> {
    torus_verdict_of_support(&SupportSet::of(f)?)
}

pub fn torus_verdict_of_support(s: &SupportSet) -> Result<FrameVerdict> {
    let n = s.n_vars();
    if s.degree > 0 && contains_all_pure_powers(s) {
        return Ok(FrameVerdict {
            status: FrameStatus::StableInFrame,
            certificate: None,
        });
    }
    let (in_hull, in_relint) = barycenter_position(s);
    let full = affine_dim(s) + 1 == n;
    let (t, alpha) = separating_alpha(s);
    if t.is_positive() {
        if in_hull {
            return Err(Error::Internal("barycenter in hull but separated".into()));
        }
        let w = WeightVector::from_rational(&alpha)?;
        return Ok(FrameVerdict {
            status: FrameStatus::UnstableInFrame,
            certificate: Some(w),
        });
    }
    if !in_hull {
        return Err(Error::Internal("barycenter outside hull but not separated".into()));
    }
    match weakly_separating_alpha(s) {
        Some(alpha) => {
            if in_relint && full {
                return Err(Error::Internal("interior barycenter with weak separator".into()));
            }
            Ok(FrameVerdict {
                status: FrameStatus::StrictlySemistableInFrame,
                certificate: Some(WeightVector::from_rational(&alpha)?),
            })
        }
        None => {
            if !(in_relint && full) {
                return Err(Error::Internal("boundary barycenter without weak separator".into()));
            }
            Ok(FrameVerdict {
                status: FrameStatus::StableInFrame,
                certificate: None,
            })
        }
    }
}

/// What a frame search is looking for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// `deg_alpha < 0`: not semistable.
    Unstable,
    /// `deg_alpha <= 0`: not stable.
    NotStable,
}

#[derive(Clone, Debug)]
pub struct SamplerConfig {
    pub random_frames: usize,
    pub seed: u64,
    pub mode: SearchMode,
}

/// Unimodular matrix from a product of elementary matrices with entries in `[-3, 3]`.
pub fn random_unimodular<R: Rng>(field: Field, n: usize, rng: &mut R) -> LinearChange {
    let mut g = LinearChange::identity(field, n);
    if n < 2 {
        return g;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            g = g.mul(&LinearChange::elementary(field, n, i, j, c));
        }
    }
    g
}

/// Tries the given frames, then seeded random ones, returning the first frame
/// whose torus verdict matches the mode.
pub fn find_destabilizing_frame(
    f: &HomogeneousPoly,
    frames: &[LinearChange],
    config: &SamplerConfig,
) -> Result<Option<(LinearChange, WeightVector, FrameStatus)>> {
    f.require_nonzero()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let randoms = (0..config.random_frames).map(|_| random_unimodular(f.field(), f.n_vars(), &mut rng));
    for g in frames.iter().cloned().chain(randoms) {
        let fg = f.apply_linear_change(&g)?;
        let v = torus_verdict(&fg)?;
        let hit = match (config.mode, v.status) {
            (_, FrameStatus::UnstableInFrame) => true,
            (SearchMode::NotStable, FrameStatus::StrictlySemistableInFrame) => true,
            _ => false,
        };
        if hit {
            let w = v.certificate.expect("non-stable verdicts carry a certificate");
            return Ok(Some((g, w, v.status)));
        }
    }
    Ok(None)
}

/// Optimum of `min sum w` subject to `w . m >= 1` on the support, `w >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeRatio {
    pub value: BigRational,
    pub optimal_w: Vec<BigRational>,
}

pub fn lee_ratio(f: &AffinePoly) -> Result<LeeRatio> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Precondition("local equation does not vanish at the origin".into()));
    }
    let n = f.n_vars();
    let mut lp = LinearProgram::new(n);
    lp.minimize(vec![BigRational::one(); n]);
    for m in f.support() {
        lp.add(m.exponents().iter().map(|&e| q(e)).collect(), Relation::Ge, BigRational::one());
    }
    match lp.solve() {
        LpOutcome::Optimal { value, x } => Ok(LeeRatio {
            value: -value,
            optimal_w: x,
        }),
        o => Err(Error::Internal(format!("weight LP failed: {o:?}"))),
    }
}

/// `min(1, sum w / mult_w(f))`.
pub fn newton_lct_upper_bound(f: &AffinePoly, w: &[BigRational]) -> Result<BigRational> {
    if w.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidWeights("weights must be positive".into()));
    }
    let mult = weighted_multiplicity(f, w)?;
    if mult.is_zero() {
        return Err(Error::Precondition("weighted multiplicity is zero".into()));
    }
    let ratio = w.iter().sum::<BigRational>() / mult;
    Ok(ratio.min(BigRational::one()))
}

/// A per-frame ratio below (or at) the threshold, translated into weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeCertificate {
    pub frame: LinearChange,
    pub ratio: LeeRatio,
    pub alpha: WeightVector,
    pub degree_value: i64,
    pub status: FrameStatus,
}

/// Weights `alpha` with `alpha_N - alpha_i = w_i` and zero sum.
pub fn alpha_from_affine_weights(w: &[BigRational]) -> Result<WeightVector> {
    let n1 = BigRational::from_integer(BigInt::from(w.len() + 1));
    let top = w.iter().sum::<BigRational>() / n1;
    let mut alpha: Vec<BigRational> = w.iter().map(|wi| &top - wi).collect();
    alpha.push(top);
    WeightVector::from_rational(&alpha)
}

/// Frame-wise ratio test against `(N+1)/d`; `< ` certifies instability and
/// `=` non-stability, each converted into an alpha certificate.
pub fn lee_instability_check(f: &HomogeneousPoly, frames: &[LinearChange]) -> Result<Option<LeeCertificate>> {
    f.require_nonzero()?;
    let n = f.dim();
    let threshold = BigRational::new(BigInt::from(n + 1), BigInt::from(f.degree()));
    let mut strict: Option<LeeCertificate> = None;
    for g in frames {
        let fg = f.apply_linear_change(g)?;
        let local = fg.dehomogenize(n)?;
        if !local.constant_term().is_zero() {
            continue;
        }
        let ratio = lee_ratio(&local)?;
        if ratio.value > threshold {
            continue;
        }
        let alpha = alpha_from_affine_weights(&ratio.optimal_w)?;
        let deg = alpha_degree(&fg, &alpha)?;
        let status = if ratio.value < threshold {
            FrameStatus::UnstableInFrame
        } else {
            FrameStatus::StrictlySemistableInFrame
        };
        let ok = match status {
            FrameStatus::UnstableInFrame => deg < 0,
            _ => deg <= 0,
        };
        if !ok {
            return Err(Error::Internal("ratio certificate failed to translate".into()));
        }
        let cert = LeeCertificate {
            frame: g.clone(),
            ratio,
            alpha,
            degree_value: deg,
            status,
        };
        if status == FrameStatus::UnstableInFrame {
            return Ok(Some(cert));
        }
        strict.get_or_insert(cert);
    }
    Ok(strict)
}

/// All exponent vectors of degree `d` in `n` variables.
pub fn full_support(n: usize, d: u32) -> Vec<Monomial> {
    crate::macaulay::monomials_of_degree(n, d).into_iter().map(Monomial).collect()
}
