//! Point-local invariants (multiplicity, tangent cone, cone-shape tests) and
//! global estimates of the singular locus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{for_each_projective_point, projective_count, ModPoly};
use crate::linear::{rank, LinearChange};
use crate::macaulay::monomials_of_degree;
use crate::poly::{HomogeneousPoly, Monomial, Poly};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

/// Where a numerical invariant came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    UserSupplied,
    FiniteFieldEstimate,
    ExactSmallCase,
    /// Proven upper bound; sound to use wherever overestimating is harmless.
    CertifiedUpperBound,
}

/// A point of projective space, normalized: primitive integers with a
/// positive leading entry over the rationals, leading entry 1 over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint(Vec<Scalar>);

impl ProjectivePoint {
    pub fn new(coords: Vec<Scalar>) -> Result<ProjectivePoint> {
        let k = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Precondition("zero vector is not a projective point".into()))?;
        let field = coords[k].field();
        let out = match field {
            Field::Rational => {
                let qs: Vec<BigRational> = coords
                    .iter()
                    .map(|c| c.as_rational().cloned().expect("rational coordinate"))
                    .collect();
                let mut ints = crate::weights::primitive_integer_vector(&qs);
                if ints[k].is_negative() {
                    for v in ints.iter_mut() {
                        *v = -v.clone();
                    }
                }
                ints.iter().map(|v| Scalar::from_bigint(v, field)).collect()
            }
            Field::Prime(_) => {
                let inv = coords[k].inv()?;
                coords.iter().map(|c| c.mul(&inv)).collect()
            }
        };
        Ok(ProjectivePoint(out))
    }

    pub fn from_ints(field: Field, coords: &[i64]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(coords.iter().map(|&v| Scalar::from_i64(v, field)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn field(&self) -> Field {
        self.0[0].field()
    }

    pub fn pivot(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).expect("nonzero point")
    }

    /// Residues modulo `p`, normalized; `None` if the reduction is zero or undefined.
    pub fn reduce_mod(&self, p: u32) -> Option<Vec<u32>> {
        let f = Field::Prime(p);
        let v: Vec<Scalar> = self
            .0
            .iter()
            .map(|c| Scalar::from_rational(c.as_rational()?, f).ok())
            .collect::<Option<_>>()?;
        let q = ProjectivePoint::new(v).ok()?;
        Some(q.0.iter().map(|c| c.residue().expect("residue")).collect())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::format_point(&self.0))
    }
}

/// A coordinate change `g` with `g([0:...:0:1]) = P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedFrame {
    pub point: ProjectivePoint,
    pub g: LinearChange,
}

/// Frame at `P`: start from the identity, put `e_N` in the column of the first
/// nonzero coordinate of `P`, then put `P` in the last column.
pub fn frame_at(p: &ProjectivePoint) -> PointedFrame {
    let n = p.coords().len();
    let field = p.field();
    let pivot = p.pivot();
    let mut cols: Vec<Vec<Scalar>> = (0..n)
        .map(|j| (0..n).map(|i| Scalar::from_i64((i == j) as i64, field)).collect())
        .collect();
    cols[pivot] = cols[n - 1].clone();
    cols[n - 1] = p.coords().to_vec();
    let g = LinearChange::from_columns(field, &cols).expect("pivot entry makes the frame invertible");
    PointedFrame { point: p.clone(), g }
}

/// Local data of `H` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentConeInfo {
    /// Multiplicity; 0 when the point is off the hypersurface.
    pub delta_p: u32,
    /// Lowest homogeneous part of the local equation, in `N` variables.
    pub cone_poly: Poly,
    pub is_pure_power: TriState,
    pub is_cone: TriState,
}

pub fn multiplicity_and_cone(f: &HomogeneousPoly, frame: &PointedFrame) -> Result<TangentConeInfo> {
    f.require_nonzero()?;
    let n = f.dim();
    let local = f.apply_linear_change(&frame.g)?.dehomogenize(n)?;
    let delta_p = local.order().expect("nonzero local equation");
    let cone_poly = local.homogeneous_component(delta_p);
    if delta_p == 0 {
        return Ok(TangentConeInfo {
            delta_p,
            cone_poly,
            is_pure_power: TriState::Unknown,
            is_cone: TriState::Unknown,
        });
    }
    let is_pure_power = is_pure_power(&cone_poly)?;
    let is_cone = if n >= 2 { is_cone(&cone_poly)? } else { TriState::Unknown };
    Ok(TangentConeInfo {
        delta_p,
        cone_poly,
        is_pure_power,
        is_cone,
    })
}

fn partials_rank(h: &Poly) -> Result<(usize, TriState)> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !h.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let delta = h.degree().expect("nonzero");
    if delta == 0 {
        return Err(Error::Precondition("tangent cone must have positive degree".into()));
    }
    if h.field().char_at_most(delta) {
        return Ok((0, TriState::Unknown));
    }
    let n = h.n_vars();
    let cols = monomials_of_degree(n, delta - 1);
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let d = h.derivative(i).expect("index in range");
            cols.iter().map(|m| d.coefficient(&Monomial(m.clone()))).collect()
        })
        .collect();
    Ok((rank(&rows, h.field()), TriState::No))
}

/// Whether `h` is a scalar multiple of a power of a linear form.
pub fn is_pure_power(h: &Poly) -> Result<TriState> {
    let (r, guard) = partials_rank(h)?;
    if guard == TriState::Unknown {
        return Ok(TriState::Unknown);
    }
    Ok(if r == 1 { TriState::Yes } else { TriState::No })
}

/// Whether `h` becomes independent of one variable after a linear change.
/// In two variables this is the pure-power test.
pub fn is_cone(h: &Poly) -> Result<TriState> {
    if h.n_vars() < 2 {
        return Err(Error::Precondition("cone test needs at least two variables".into()));
    }
    if h.n_vars() == 2 {
        return is_pure_power(h);
    }
    let (r, guard) = partials_rank(h)?;
    if guard == TriState::Unknown {
        return Ok(TriState::Unknown);
    }
    Ok(if r < h.n_vars() { TriState::Yes } else { TriState::No })
}

/// Multiplicity at `P` from Hasse derivatives in the original coordinates:
/// the least order with a nonvanishing derivative at `P`.
pub fn multiplicity_at(f: &HomogeneousPoly, p: &ProjectivePoint) -> Result<u32> {
    f.require_nonzero()?;
    let n = f.n_vars();
    for k in 0..=f.degree() {
        for mu in monomials_of_degree(n, k) {
            let h = f.as_poly().hasse_derivative(&mu);
            if !h.is_zero() && !h.evaluate(p.coords())?.is_zero() {
                return Ok(k);
            }
        }
    }
    Err(Error::Internal("no nonvanishing derivative at a point".into()))
}

/// Singular points over the prime field itself, with their multiplicities.
pub fn singular_points_over_fp(f: &HomogeneousPoly, budget: u64) -> Result<Vec<(ProjectivePoint, u32)>> {
    let Field::Prime(p) = f.field() else {
        return Err(Error::FieldMismatch("enumeration needs a prime field".into()));
    };
    f.require_nonzero()?;
    let n = f.n_vars();
    let needed = projective_count(p, n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut eqs = vec![ModPoly::new(f.as_poly(), p)?];
    for g in f.gradient() {
        eqs.push(ModPoly::new(g.as_poly(), p)?);
    }
    let mut raw = Vec::new();
    for_each_projective_point(p, n, |x| {
        if eqs.iter().all(|e| e.vanishes_at(x)) {
            raw.push(x.to_vec());
        }
    });
    raw.into_iter()
        .map(|x| {
            let pt = ProjectivePoint::from_ints(f.field(), &x.iter().map(|&v| v as i64).collect::<Vec<_>>())?;
            let m = multiplicity_and_cone(f, &frame_at(&pt))?.delta_p;
            Ok((pt, m))
        })
        .collect()
}

/// Number of `F_p`-points where all `eqs` vanish.
pub(crate) fn count_common_zeros(eqs: &[ModPoly], p: u32, n: usize) -> u64 {
    let mut count = 0;
    for_each_projective_point(p, n, |x| {
        if eqs.iter().all(|e| e.vanishes_at(x)) {
            count += 1;
        }
    });
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    High,
    Low,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionEstimate {
    pub s: i32,
    pub confidence: Confidence,
    /// `(p, #points)` for every prime of good reduction used.
    pub counts: Vec<(u32, u64)>,
}

/// Good reduction: no denominator vanishes, no coefficient vanishes, `p > d`.
fn good_reduction(f: &HomogeneousPoly, p: u32) -> Option<HomogeneousPoly> {
    if p <= f.degree() {
        return None;
    }
    let r = f.reduce_mod(p).ok()?;
    (r.as_poly().len() == f.as_poly().len()).then_some(r)
}

/// Integer `k` with `(q/p)^(2k-1) <= (cq/cp)^2 < (q/p)^(2k+1)`: the nearest
/// integer to the log-slope between two counts.
fn log_slope(p: u32, cp: u64, q: u32, cq: u64, lo: i32, hi: i32) -> i32 {
    let base = BigRational::new(BigInt::from(q), BigInt::from(p));
    let r = BigRational::new(BigInt::from(cq) * cq, BigInt::from(cp) * cp);
    let pw = |e: i32| -> BigRational {
        if e >= 0 {
            num_traits::pow(base.clone(), e as usize)
        } else {
            num_traits::pow(base.recip(), (-e) as usize)
        }
    };
    for k in lo..=hi {
        if pw(2 * k - 1) <= r && r < pw(2 * k + 1) {
            return k;
        }
    }
    if r < pw(2 * lo - 1) {
        lo
    } else {
        hi
    }
}

/// Fits `#points ~ C p^s` across primes.
pub fn fit_dimension(counts: &[(u32, u64)], max_dim: i32) -> (i32, Confidence) {
    let nonzero: Vec<(u32, u64)> = counts.iter().copied().filter(|c| c.1 > 0).collect();
    if nonzero.is_empty() {
        return (-1, Confidence::High);
    }
    let mixed = nonzero.len() != counts.len();
    let slopes: Vec<i32> = if nonzero.len() == 1 {
        let (p, c) = nonzero[0];
        vec![log_slope(1, 1, p, c, 0, max_dim)]
    } else {
        nonzero
            .windows(2)
            .map(|w| log_slope(w[0].0, w[0].1, w[1].0, w[1].1, 0, max_dim))
            .collect()
    };
    let s = *slopes.iter().max().expect("nonempty");
    let agree = slopes.iter().all(|&k| k == s);
    let conf = if agree && !mixed && nonzero.len() > 1 {
        Confidence::High
    } else {
        Confidence::Low
    };
    (s.clamp(0, max_dim), conf)
}

fn good_primes(f: &HomogeneousPoly, primes: &[u32]) -> Result<Vec<(u32, HomogeneousPoly)>> {
    if f.field() != Field::Rational {
        return Err(Error::FieldMismatch("estimates reduce rational polynomials".into()));
    }
    f.require_nonzero()?;
    let good: Vec<(u32, HomogeneousPoly)> = primes
        .iter()
        .filter(|&&p| crate::scalar::is_prime(p as u64))
        .filter_map(|&p| good_reduction(f, p).map(|r| (p, r)))
        .collect();
    if good.is_empty() {
        return Err(Error::BadPrimes(format!("no prime of good reduction among {primes:?}")));
    }
    Ok(good)
}

fn sing_equations_mod(r: &HomogeneousPoly, p: u32) -> Result<Vec<ModPoly>> {
    let mut eqs = vec![ModPoly::new(r.as_poly(), p)?];
    for g in r.gradient() {
        eqs.push(ModPoly::new(g.as_poly(), p)?);
    }
    Ok(eqs)
}

/// Point-count estimate of `dim H_sing` for a rational polynomial.
pub fn estimate_sing_dim(f: &HomogeneousPoly, primes: &[u32]) -> Result<DimensionEstimate> {
    let good = good_primes(f, primes)?;
    let n = f.n_vars();
    let mut counts = Vec::new();
    for (p, r) in good {
        let eqs = sing_equations_mod(&r, p)?;
        counts.push((p, count_common_zeros(&eqs, p, n)));
    }
    let (s, confidence) = fit_dimension(&counts, n as i32 - 2);
    Ok(DimensionEstimate { s, confidence, counts })
}

/// A hyperplane with integer coefficients.
fn hyperplane_poly(coeffs: &[i64], field: Field) -> Poly {
    let n = coeffs.len();
    Poly::from_terms(
        field,
        n,
        coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| (Monomial::var(j, n), Scalar::from_i64(c, field))),
    )
}

/// Random integer hyperplane through a rational point.
pub(crate) fn hyperplane_through<R: Rng>(p: &ProjectivePoint, rng: &mut R) -> Vec<i64> {
    let n = p.coords().len();
    let k = p.pivot();
    let pts: Vec<BigInt> = p
        .coords()
        .iter()
        .map(|c| c.as_rational().expect("rational").to_integer())
        .collect();
    loop {
        let a: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
        // Scale by P_k and fix coordinate k so that l(P) = 0.
        let dotp: BigInt = a.iter().zip(&pts).map(|(x, y)| x * y).sum();
        let mut l: Vec<BigInt> = a.iter().map(|x| x * &pts[k]).collect();
        l[k] = &l[k] - &dotp;
        let g = l.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            continue;
        }
        let l: Vec<i64> = l.iter().map(|x| i64::try_from(x / &g).unwrap_or(0)).collect();
        if l.iter().any(|&x| x != 0) {
            return l;
        }
    }
}

/// Point-count estimate of `s' = max_V dim(H_sing cap V)` over coordinate
/// hyperplanes, random hyperplanes and hyperplanes through `through`.
pub fn estimate_s_prime(
    f: &HomogeneousPoly,
    primes: &[u32],
    trials: usize,
    through: &[ProjectivePoint],
    seed: u64,
) -> Result<DimensionEstimate> {
    let good = good_primes(f, primes)?;
    let n = f.n_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planes: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for _ in 0..trials {
        planes.push((0..n).map(|_| rng.gen_range(-5..=5)).collect());
    }
    for pt in through {
        planes.push(hyperplane_through(pt, &mut rng));
    }
    planes.retain(|l| l.iter().any(|&x| x != 0));
    let mut best = DimensionEstimate {
        s: -1,
        confidence: Confidence::High,
        counts: Vec::new(),
    };
    for l in planes {
        let mut counts = Vec::new();
        for (p, r) in &good {
            let mut eqs = sing_equations_mod(r, *p)?;
            eqs.push(ModPoly::new(&hyperplane_poly(&l, Field::Rational), *p)?);
            counts.push((*p, count_common_zeros(&eqs, *p, n)));
        }
        let (s, conf) = fit_dimension(&counts, n as i32 - 2);
        if s > best.s || (s == best.s && conf == Confidence::Low) {
            best = DimensionEstimate {
                s,
                confidence: conf,
                counts,
            };
        }
    }
    Ok(best)
}

/// Rational points of `H` with integer coordinates in `[-bound, bound]`.
pub fn small_rational_points(f: &HomogeneousPoly, bound: i64) -> Result<Vec<ProjectivePoint>> {
    f.require_nonzero()?;
    let n = f.n_vars();
    let filter = crate::macaulay::LARGE_PRIMES
        .iter()
        .find_map(|&p| ModPoly::new(f.as_poly(), p).ok().map(|m| (p, m)));
    let mut out = Vec::new();
    let mut x = vec![-bound; n];
    loop {
        let lead = x.iter().position(|&v| v != 0);
        let primitive = x.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1;
        if let Some(k) = lead {
            if x[k] > 0 && primitive {
                let passes = match &filter {
                    Some((p, m)) => {
                        let r: Vec<u32> = x.iter().map(|&v| v.rem_euclid(*p as i64) as u32).collect();
                        m.vanishes_at(&r)
                    }
                    None => true,
                };
                if passes {
                    let pt = ProjectivePoint::from_ints(f.field(), &x)?;
                    if f.evaluate(pt.coords())?.is_zero() {
                        out.push(pt);
                    }
                }
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
        }
    }
}

/// All points of `H` over the prime field.
pub fn fp_points(f: &HomogeneousPoly, budget: u64) -> Result<Vec<ProjectivePoint>> {
    let Field::Prime(p) = f.field() else {
        return Err(Error::FieldMismatch("enumeration needs a prime field".into()));
    };
    let n = f.n_vars();
    let needed = projective_count(p, n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let m = ModPoly::new(f.as_poly(), p)?;
    let mut raw = Vec::new();
    for_each_projective_point(p, n, |x| {
        if m.vanishes_at(x) {
            raw.push(x.iter().map(|&v| v as i64).collect::<Vec<_>>());
        }
    });
    raw.iter().map(|x| ProjectivePoint::from_ints(f.field(), x)).collect()
}

/// A point record in the serialized profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub point: String,
    pub delta_p: u32,
    pub tangent_cone: String,
    pub is_pure_power: TriState,
    pub is_cone: TriState,
}

impl PointRecord {
    pub fn new(p: &ProjectivePoint, info: &TangentConeInfo) -> PointRecord {
        PointRecord {
            point: p.to_string(),
            delta_p: info.delta_p,
            tangent_cone: info.cone_poly.to_string(),
            is_pure_power: info.is_pure_power,
            is_cone: info.is_cone,
        }
    }
}

/// Global singularity data with provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    pub delta: u32,
    pub delta_provenance: Provenance,
    pub s: i32,
    pub s_provenance: Provenance,
    pub s_prime: i32,
    pub s_prime_provenance: Provenance,
    /// Points realizing `delta` (over the input field) with their tangent cones.
    pub max_mult_points: Vec<PointRecord>,
    /// Whether `max_mult_points` is believed to list every point of multiplicity `delta`.
    pub max_mult_points_complete: bool,
    pub singular_points_found: usize,
    pub notes: Vec<String>,
}
