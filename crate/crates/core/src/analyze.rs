//! End-to-end analysis: singularity profile, positive criteria, certificate
//! search and the merged verdict.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Claim};
use crate::criteria::{check_part1, check_part2, check_sprime_variant, check_thm41, Status, Verdict};
use crate::error::{Error, Result};
use crate::fp::projective_count;
use crate::groebner::{finite_scheme_length_mod_p, projective_dimension_mod_p};
use crate::linear::LinearChange;
use crate::macaulay::{
    max_multiplicity_bound, multiplicity_locus_equations, projective_dimension, singular_locus_equations,
    DEFAULT_CELL_BUDGET, LARGE_PRIMES,
};
use crate::newton::{lee_instability_check, random_unimodular, torus_verdict, FrameStatus};
use crate::poly::{HomogeneousPoly, Poly};
use crate::scalar::{Field, Scalar};
use crate::singularity::{
    estimate_s_prime, fp_points, frame_at, multiplicity_and_cone, small_rational_points, PointRecord,
    ProjectivePoint, Provenance, SingularityProfile, TangentConeInfo, TriState,
};

pub const REPORT_VERSION: &str = "v1";

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Replaces the computed singular-locus dimension.
    pub s_override: Option<i32>,
    pub points: Vec<ProjectivePoint>,
    pub frames: Vec<LinearChange>,
    /// Cell budget for Macaulay matrices and point budget for enumerations.
    pub budget: u64,
    pub seed: u64,
    pub random_frames: usize,
    pub random_frames_per_point: usize,
    /// Coordinate bound for the rational point search.
    pub point_search_bound: i64,
    pub scan_primes: Vec<u32>,
    pub groebner_pairs: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            s_override: None,
            points: Vec::new(),
            frames: Vec::new(),
            budget: DEFAULT_CELL_BUDGET,
            seed: 0,
            random_frames: 24,
            random_frames_per_point: 4,
            point_search_bound: 10,
            scan_primes: vec![11, 13, 17, 19, 23],
            groebner_pairs: 4_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub poly: String,
    pub nvars: usize,
    pub field: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_ref: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Status,
    pub conditional_on: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalVerdict {
    pub semistability: Status,
    pub stability: Status,
    pub summary: String,
    pub conditional_on: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub input: InputRecord,
    pub profile: SingularityProfile,
    pub checks: Vec<CheckRecord>,
    pub certificates: Vec<Certificate>,
    #[serde(rename = "final")]
    pub final_verdict: FinalVerdict,
    pub warnings: Vec<String>,
}

struct FoundPoint {
    point: ProjectivePoint,
    frame: LinearChange,
    info: TangentConeInfo,
}

struct Profiled {
    profile: SingularityProfile,
    points: Vec<FoundPoint>,
    s_condition: Option<String>,
    s_prime_condition: Option<String>,
    points_condition: Option<String>,
}

const COND_S_USER: &str = "s supplied by the user and not verified";
const COND_S_PRIME: &str = "s' estimated from point counts";
const COND_POINTS_Q: &str = "maximal-multiplicity points found by bounded search only";
const COND_POINTS_FP: &str = "maximal-multiplicity points enumerated over the prime field only";

fn search_bound(requested: i64, n: usize) -> i64 {
    let mut b = requested.max(1);
    while b > 1 && ((2 * b + 1) as f64).powi(n as i32) > 60_000.0 {
        b -= 1;
    }
    b
}

fn collect_points(f: &HomogeneousPoly, opts: &AnalyzeOptions, warnings: &mut Vec<String>, notes: &mut Vec<String>) -> Result<Vec<ProjectivePoint>> {
    let n = f.n_vars();
    let mut pts: Vec<ProjectivePoint> = Vec::new();
    for p in &opts.points {
        if p.field() != f.field() || p.coords().len() != n {
            return Err(Error::Precondition(format!("point {p} does not match the polynomial's field and arity")));
        }
        if !f.evaluate(p.coords())?.is_zero() {
            warnings.push(format!("supplied point {p} is not on the hypersurface"));
            continue;
        }
        pts.push(p.clone());
    }
    match f.field() {
        Field::Rational => {
            let b = search_bound(opts.point_search_bound, n);
            notes.push(format!("rational points searched in the box |x_i| <= {b}"));
            pts.extend(small_rational_points(f, b)?);
        }
        Field::Prime(p) => {
            if projective_count(p, n) <= opts.budget {
                pts.extend(fp_points(f, opts.budget)?);
            } else {
                notes.push("too many points over the prime field to enumerate".into());
            }
        }
    }
    let mut uniq: Vec<ProjectivePoint> = Vec::new();
    for p in pts {
        if !uniq.contains(&p) {
            uniq.push(p);
        }
    }
    Ok(uniq)
}

fn sing_eqs_with_form(f: &HomogeneousPoly) -> Vec<Poly> {
    let mut eqs = singular_locus_equations(f);
    if !eqs.contains(f.as_poly()) {
        eqs.push(f.as_poly().clone());
    }
    eqs
}

/// Groebner dimension mod a prime; over Q the first usable large prime.
fn groebner_dimension(eqs: &[Poly], n: usize, field: Field, pairs: usize) -> Option<i32> {
    let primes: Vec<u32> = match field {
        Field::Prime(p) => vec![p],
        Field::Rational => LARGE_PRIMES.to_vec(),
    };
    primes.into_iter().find_map(|p| projective_dimension_mod_p(eqs, n, p, pairs).ok())
}

fn groebner_length(eqs: &[Poly], n: usize, field: Field, pairs: usize) -> Option<Option<u64>> {
    let primes: Vec<u32> = match field {
        Field::Prime(p) => vec![p],
        Field::Rational => LARGE_PRIMES.to_vec(),
    };
    primes.into_iter().find_map(|p| finite_scheme_length_mod_p(eqs, n, p, pairs).ok())
}

fn build_profile(f: &HomogeneousPoly, opts: &AnalyzeOptions, warnings: &mut Vec<String>) -> Result<Profiled> {
    let n = f.n_vars();
    let big_n = n - 1;
    let d = f.degree();
    let field = f.field();
    let mut notes = Vec::new();

    let delta_upper = match max_multiplicity_bound(f, opts.budget) {
        Ok(m) => m,
        Err(Error::BudgetExceeded { .. }) => {
            notes.push("multiplicity bound exceeded the budget; using delta <= d".into());
            d
        }
        Err(e) => return Err(e),
    };

    let mut points = Vec::new();
    for p in collect_points(f, opts, warnings, &mut notes)? {
        let frame = frame_at(&p);
        let info = multiplicity_and_cone(f, &frame)?;
        points.push(FoundPoint {
            point: p,
            frame: frame.g,
            info,
        });
    }
    let delta_found = points.iter().map(|p| p.info.delta_p).max().unwrap_or(0).max(1);
    if delta_found > delta_upper {
        return Err(Error::Internal(format!(
            "point of multiplicity {delta_found} above the certified bound {delta_upper}"
        )));
    }
    let (mut delta, mut delta_provenance) = if delta_found == delta_upper {
        (delta_upper, Provenance::ExactSmallCase)
    } else {
        (delta_upper, Provenance::CertifiedUpperBound)
    };
    let singular_found = points.iter().filter(|p| p.info.delta_p >= 2).count();

    let max_points: Vec<&FoundPoint> = if delta >= 2 {
        points.iter().filter(|p| p.info.delta_p == delta).collect()
    } else {
        Vec::new()
    };
    let mut complete = false;
    let mut points_condition = None;
    if delta >= 2 && !max_points.is_empty() {
        let eqs = multiplicity_locus_equations(f, delta);
        match groebner_length(&eqs, n, field, opts.groebner_pairs) {
            Some(Some(len)) if len == max_points.len() as u64 => complete = true,
            Some(Some(len)) => notes.push(format!(
                "multiplicity-{delta} locus has length {len} but {} points were found",
                max_points.len()
            )),
            Some(None) => notes.push(format!("multiplicity-{delta} locus is positive-dimensional")),
            None => notes.push("multiplicity locus length not computed within budget".into()),
        }
        if !complete {
            points_condition = Some(match field {
                Field::Rational => COND_POINTS_Q.to_string(),
                Field::Prime(_) => COND_POINTS_FP.to_string(),
            });
        }
    }

    // Singular-locus dimension: certified upper bounds, exact when matched.
    let (s_computed, s_exact) = if delta_upper == 1 {
        (-1, true)
    } else {
        let eqs = sing_eqs_with_form(f);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mac = match projective_dimension(&eqs, n, field, 4, opts.budget, &mut rng) {
            Ok(b) => Some(b),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        let gro = groebner_dimension(&eqs, n, field, opts.groebner_pairs);
        let upper = [mac.map(|b| b.upper), gro, Some(big_n as i32 - 1)]
            .into_iter()
            .flatten()
            .min()
            .expect("nonempty");
        let exact = match field {
            Field::Prime(_) => gro.is_some() || mac.is_some_and(|b| b.exact),
            Field::Rational => upper == -1 || (upper == 0 && singular_found > 0),
        };
        (upper.max(if singular_found > 0 { 0 } else { -1 }), exact)
    };
    if s_computed == -1 {
        delta = 1;
        delta_provenance = Provenance::ExactSmallCase;
    }
    let mut s_condition = None;
    let (s, s_provenance) = match opts.s_override {
        Some(user) => {
            if user < -1 || user > big_n as i32 - 1 {
                return Err(Error::Precondition(format!("s = {user} outside [-1, {}]", big_n as i32 - 1)));
            }
            if user < s_computed {
                if s_exact {
                    warnings.push(format!("supplied s = {user} differs from the computed value {s_computed}"));
                }
                s_condition = Some(COND_S_USER.to_string());
            } else if user > s_computed && s_exact {
                warnings.push(format!("supplied s = {user} exceeds the computed value {s_computed}"));
            }
            (user, Provenance::UserSupplied)
        }
        None => (
            s_computed,
            if s_exact {
                Provenance::ExactSmallCase
            } else {
                Provenance::CertifiedUpperBound
            },
        ),
    };

    // s' lies in {s - 1, s}; s itself is always a sound value.
    let (s_prime, s_prime_provenance, s_prime_condition) = if s <= 0 {
        (s, s_provenance, None)
    } else if field == Field::Rational {
        let through: Vec<ProjectivePoint> = points.iter().filter(|p| p.info.delta_p >= 2).map(|p| p.point.clone()).collect();
        match estimate_s_prime(f, &opts.scan_primes, 8, &through, opts.seed) {
            Ok(est) if est.s < s => (s - 1, Provenance::FiniteFieldEstimate, Some(COND_S_PRIME.to_string())),
            _ => (s, s_provenance, None),
        }
    } else {
        (s, s_provenance, None)
    };

    let max_mult_points = max_points.iter().map(|p| PointRecord::new(&p.point, &p.info)).collect();
    Ok(Profiled {
        profile: SingularityProfile {
            delta,
            delta_provenance,
            s,
            s_provenance,
            s_prime,
            s_prime_provenance,
            max_mult_points,
            max_mult_points_complete: complete,
            singular_points_found: singular_found,
            notes,
        },
        points,
        s_condition,
        s_prime_condition,
        points_condition,
    })
}

fn record(name: &str, reference: &str, inputs: &[(&str, String)], v: &Verdict) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        paper_ref: reference.into(),
        inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        result: v.status,
        conditional_on: v.conditional_on.clone(),
    }
}

fn attach(mut v: Verdict, conds: &[&Option<String>]) -> Verdict {
    if v.status == Status::Inconclusive {
        return v;
    }
    for c in conds.iter().copied().flatten() {
        v = v.with_condition(c.clone());
    }
    v
}

fn positive_checks(f: &HomogeneousPoly, pr: &Profiled) -> Result<Vec<CheckRecord>> {
    let d = f.degree();
    let n = f.dim();
    let prof = &pr.profile;
    let (delta, s, sp) = (prof.delta, prof.s, prof.s_prime);
    let mut out = Vec::new();
    let base = |extra: Vec<(&'static str, String)>| -> Vec<(&'static str, String)> {
        let mut v = vec![("d", d.to_string()), ("N", n.to_string()), ("delta", delta.to_string())];
        v.extend(extra);
        v
    };

    let v = attach(check_part1(d, delta, s, n)?, &[&pr.s_condition]);
    out.push(record("part1", "d >= delta*min(N+1, s+3); strict for stable", &base(vec![("s", s.to_string())]), &v));

    let v = attach(check_sprime_variant(d, delta, sp, n)?, &[&pr.s_condition, &pr.s_prime_condition]);
    out.push(record(
        "part1-s-prime",
        "d >= delta*min(N+1, s'+3); strict for stable",
        &base(vec![("s_prime", sp.to_string())]),
        &v,
    ));

    if delta >= 2 {
        let cone_flags: Vec<TriState> = prof.max_mult_points.iter().map(|p| p.is_cone).collect();
        let hyper_flags: Vec<TriState> = prof.max_mult_points.iter().map(|p| p.is_pure_power).collect();
        let flag_str = |fl: &[TriState]| {
            fl.iter()
                .map(|t| match t {
                    TriState::Yes => "yes",
                    TriState::No => "no",
                    TriState::Unknown => "unknown",
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        if n >= 2 {
            let v = attach(check_part2(d, delta, s, n, &cone_flags)?, &[&pr.s_condition, &pr.points_condition]);
            out.push(record(
                "part2",
                "d >= (delta-1)*min(N+1, s+3) when no maximal tangent cone is a cone; strict for stable",
                &base(vec![("s", s.to_string()), ("cone_flags", flag_str(&cone_flags))]),
                &v,
            ));
        }
        let v = attach(check_thm41(d, delta, n, &hyper_flags)?, &[&pr.points_condition]);
        out.push(record(
            "hyperplane-cone",
            "d >= (N+1)(delta-1) when no maximal tangent cone is a hyperplane; strict for stable",
            &base(vec![("hyperplane_flags", flag_str(&hyper_flags))]),
            &v,
        ));
    }
    Ok(out)
}

/// Linear form `l` with `h = c * l^k`, read off a `(k-1)`-fold derivative.
fn linear_root(h: &Poly) -> Option<Vec<Scalar>> {
    let k = h.degree()?;
    let n = h.n_vars();
    for j in 0..n {
        let mut g = h.clone();
        for _ in 1..k {
            g = g.derivative(j).ok()?;
        }
        if !g.is_zero() && g.degree() == Some(1) {
            return Some(
                (0..n)
                    .map(|i| g.coefficient(&crate::poly::Monomial::var(i, n)))
                    .collect(),
            );
        }
    }
    None
}

/// Frame at a point whose tangent cone is `l^k`, rotated so that `l` becomes the first coordinate.
fn adapted_frame(pt: &FoundPoint) -> Option<LinearChange> {
    if pt.info.delta_p == 0 || (pt.info.is_pure_power != TriState::Yes && pt.info.delta_p != 1) {
        return None;
    }
    let l = linear_root(&pt.info.cone_poly)?;
    let big_n = l.len();
    let field = pt.frame.field();
    let piv = l.iter().position(|c| !c.is_zero())?;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(big_n + 1);
    let mut first = l.clone();
    first.push(Scalar::zero(field));
    rows.push(first);
    for k in (0..big_n).filter(|&k| k != piv) {
        rows.push((0..=big_n).map(|j| Scalar::from_i64((j == k) as i64, field)).collect());
    }
    rows.push((0..=big_n).map(|j| Scalar::from_i64((j == big_n) as i64, field)).collect());
    let m = LinearChange::new(field, rows).ok()?;
    Some(pt.frame.mul(&m.inverse().ok()?))
}

struct NegativeOutcome {
    unstable: Option<Certificate>,
    strict: Option<Certificate>,
    checks: Vec<CheckRecord>,
}

fn block_extend(r: &LinearChange, field: Field) -> LinearChange {
    let k = r.dim();
    let rows = (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| {
                    if i < k && j < k {
                        r.entry(i, j).clone()
                    } else {
                        Scalar::from_i64((i == j) as i64, field)
                    }
                })
                .collect()
        })
        .collect();
    LinearChange::new(field, rows).expect("block extension of an invertible matrix")
}

const MAX_POINT_FRAMES: usize = 16;

fn negative_search(f: &HomogeneousPoly, pr: &Profiled, opts: &AnalyzeOptions) -> Result<NegativeOutcome> {
    let n = f.n_vars();
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut pointed: Vec<LinearChange> = Vec::new();
    let last = {
        let mut e = vec![Scalar::zero(field); n];
        e[n - 1] = Scalar::one(field);
        e
    };
    if f.evaluate(&last)?.is_zero() {
        pointed.push(LinearChange::identity(field, n));
    }
    let mut singular: Vec<&FoundPoint> = pr.points.iter().filter(|p| p.info.delta_p >= 2).collect();
    singular.sort_by(|a, b| b.info.delta_p.cmp(&a.info.delta_p));
    singular.truncate(MAX_POINT_FRAMES);
    let smooth = pr.points.iter().filter(|p| p.info.delta_p == 1);
    for p in singular.iter().copied().chain(smooth.take(8)) {
        pointed.push(p.frame.clone());
        if let Some(g) = adapted_frame(p) {
            pointed.push(g);
        }
    }
    for p in &singular {
        for _ in 0..opts.random_frames_per_point {
            let r = random_unimodular(field, n - 1, &mut rng);
            pointed.push(p.frame.mul(&block_extend(&r, field)));
        }
    }
    for g in &opts.frames {
        if g.dim() != n || g.field() != field {
            return Err(Error::Precondition("supplied frame does not match the polynomial".into()));
        }
    }

    let mut frames: Vec<LinearChange> = vec![LinearChange::identity(field, n)];
    frames.extend(opts.frames.iter().cloned());
    frames.extend(pointed.iter().cloned());
    for _ in 0..opts.random_frames {
        frames.push(random_unimodular(field, n, &mut rng));
    }

    let mut unstable = None;
    let mut strict = None;
    let mut tried = 0;
    for g in &frames {
        tried += 1;
        let v = torus_verdict(&f.apply_linear_change(g)?)?;
        match v.status {
            FrameStatus::UnstableInFrame => {
                let a = v.certificate.expect("certificate");
                unstable = Some(Certificate::new(f, g, &a, Claim::NotSemistable)?);
                break;
            }
            FrameStatus::StrictlySemistableInFrame if strict.is_none() => {
                let a = v.certificate.expect("certificate");
                strict = Some(Certificate::new(f, g, &a, Claim::NotStable)?);
            }
            _ => {}
        }
    }
    let torus_status = if unstable.is_some() {
        Status::NotSemistable
    } else if strict.is_some() {
        Status::NotStable
    } else {
        Status::Inconclusive
    };
    let mut checks = vec![CheckRecord {
        name: "torus-frame-search".into(),
        paper_ref: "deg_alpha(F o g) < 0 (resp. <= 0) for some frame g and nonzero zero-sum alpha".into(),
        inputs: [("frames_tried".to_string(), tried.to_string())].into_iter().collect(),
        result: torus_status,
        conditional_on: Vec::new(),
    }];

    let threshold = format!("{}/{}", n, f.degree());
    let lee = lee_instability_check(f, &pointed)?;
    let mut inputs: BTreeMap<String, String> = [
        ("frames_tried".to_string(), pointed.len().to_string()),
        ("threshold".to_string(), threshold),
    ]
    .into_iter()
    .collect();
    let lee_status = match &lee {
        Some(c) => {
            inputs.insert("ratio".into(), crate::scalar::fmt_rational(&c.ratio.value));
            inputs.insert("degree_value".into(), c.degree_value.to_string());
            if c.status == FrameStatus::UnstableInFrame {
                if unstable.is_none() {
                    unstable = Some(Certificate::new(f, &c.frame, &c.alpha, Claim::NotSemistable)?);
                }
                Status::NotSemistable
            } else {
                if strict.is_none() {
                    strict = Some(Certificate::new(f, &c.frame, &c.alpha, Claim::NotStable)?);
                }
                Status::NotStable
            }
        }
        None => Status::Inconclusive,
    };
    checks.push(CheckRecord {
        name: "weighted-multiplicity-ratio".into(),
        paper_ref: "sum(w)/mult_w(f) < (N+1)/d (resp. <=) at a point of H".into(),
        inputs,
        result: lee_status,
        conditional_on: Vec::new(),
    });
    Ok(NegativeOutcome {
        unstable,
        strict,
        checks,
    })
}

fn best_positive<'a>(checks: &'a [CheckRecord], want: impl Fn(Status) -> bool) -> Option<&'a CheckRecord> {
    let hits: Vec<&CheckRecord> = checks.iter().filter(|c| want(c.result)).collect();
    hits.iter()
        .find(|c| c.conditional_on.is_empty())
        .or_else(|| hits.iter().min_by_key(|c| c.conditional_on.len()))
        .copied()
}

fn merge(checks: &[CheckRecord], neg: &NegativeOutcome, warnings: &mut Vec<String>) -> Result<FinalVerdict> {
    let positive: Vec<CheckRecord> = checks
        .iter()
        .filter(|c| matches!(c.result, Status::Stable | Status::Semistable))
        .cloned()
        .collect();
    let mut conditions: Vec<String> = Vec::new();
    let add_conditions = |c: &CheckRecord, conditions: &mut Vec<String>| {
        for x in &c.conditional_on {
            if !conditions.contains(x) {
                conditions.push(x.clone());
            }
        }
    };

    let semistability = if neg.unstable.is_some() {
        for c in positive.iter() {
            if c.conditional_on.is_empty() {
                return Err(Error::Internal(format!(
                    "certified instability contradicts unconditional check {}",
                    c.name
                )));
            }
            warnings.push(format!("conditional check {} overridden by an instability certificate", c.name));
        }
        Status::NotSemistable
    } else if let Some(c) = best_positive(&positive, Status::implies_semistable) {
        add_conditions(c, &mut conditions);
        Status::Semistable
    } else {
        Status::Inconclusive
    };

    let stability = if neg.unstable.is_some() || neg.strict.is_some() {
        for c in positive.iter().filter(|c| c.result == Status::Stable) {
            if c.conditional_on.is_empty() {
                return Err(Error::Internal(format!(
                    "certified non-stability contradicts unconditional check {}",
                    c.name
                )));
            }
            if neg.unstable.is_none() {
                warnings.push(format!("conditional check {} overridden by a non-stability certificate", c.name));
            }
        }
        Status::NotStable
    } else if let Some(c) = best_positive(&positive, |s| s == Status::Stable) {
        add_conditions(c, &mut conditions);
        Status::Stable
    } else {
        Status::Inconclusive
    };

    let summary = match (semistability, stability) {
        (Status::NotSemistable, _) => "not semistable",
        (Status::Semistable, Status::Stable) => "stable",
        (Status::Semistable, Status::NotStable) => "strictly semistable",
        (Status::Semistable, _) => "semistable (stability inconclusive)",
        (_, Status::NotStable) => "not stable (semistability inconclusive)",
        _ => "inconclusive",
    };
    Ok(FinalVerdict {
        semistability,
        stability,
        summary: summary.into(),
        conditional_on: conditions,
    })
}

/// Full analysis of a hypersurface.
pub fn analyze(f: &HomogeneousPoly, opts: &AnalyzeOptions) -> Result<Report> {
    f.require_nonzero()?;
    if f.degree() < 2 {
        return Err(Error::Precondition(format!("degree {} < 2", f.degree())));
    }
    if f.n_vars() < 2 {
        return Err(Error::Precondition("need at least two variables".into()));
    }
    let mut warnings = Vec::new();
    let profiled = build_profile(f, opts, &mut warnings)?;
    let mut checks = positive_checks(f, &profiled)?;
    let neg = negative_search(f, &profiled, opts)?;
    let final_verdict = merge(&checks, &neg, &mut warnings)?;
    checks.extend(neg.checks.iter().cloned());
    let certificates = neg.unstable.iter().chain(neg.strict.iter()).cloned().collect();
    Ok(Report {
        version: REPORT_VERSION.into(),
        input: InputRecord {
            poly: f.to_string(),
            nvars: f.n_vars(),
            field: f.field().to_string(),
            degree: f.degree(),
        },
        profile: profiled.profile,
        checks,
        certificates,
        final_verdict,
        warnings,
    })
}
