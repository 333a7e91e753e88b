//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use hmstab_core::analyze::{analyze, AnalyzeOptions, Report};
use hmstab_core::benoist::{benoist_hypothesis, build_z, cor32_check, cor33_check, divisibility_lemma_check, verify_z_in_sing};
use hmstab_core::criteria::Status;
use hmstab_core::groebner::projective_dimension_mod_p;
use hmstab_core::lp::rat;
use hmstab_core::macaulay::singular_locus_equations;
use hmstab_core::newton::{lee_ratio, torus_verdict, FrameStatus};
use hmstab_core::singularity::{multiplicity_and_cone, PointedFrame, ProjectivePoint, TriState};
use hmstab_core::weights::{alpha_degree, hm_lee_bridge, local_bounds, weighted_multiplicity, WeightVector};
use hmstab_core::{parse_affine, parse_poly, Field, HomogeneousPoly, LinearChange, Monomial, Poly, Scalar};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;

fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .rev()
        .flat_map(|a| {
            exponents(n - 1, d - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

fn run(text: &str, nvars: usize, field: Field) -> Report {
    let f = parse_poly(text, nvars, field).unwrap();
    analyze(&f, &AnalyzeOptions::default()).unwrap()
}

fn check<'a>(r: &'a Report, name: &str) -> &'a hmstab_core::analyze::CheckRecord {
    r.checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}"))
}

fn verify_with_cli(json: &str) -> i32 {
    let dir = std::env::temp_dir().join(format!("hmstab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    std::fs::write(&path, json).unwrap();
    Command::new(env!("CARGO_BIN_EXE_hmstab"))
        .arg("verify")
        .arg(&path)
        .stdout(std::process::Stdio::null())
        .status()
        .unwrap()
        .code()
        .unwrap()
}

/// Exhaustive zero-sum weights with entries in `[-bound, bound]`:
/// (some weight has negative degree, some nonzero weight has degree <= 0).
fn brute_force(support: &[Vec<u32>], bound: i64) -> (bool, bool) {
    let n = support[0].len();
    let mut unstable = false;
    let mut not_stable = false;
    let mut alpha = vec![-bound; n - 1];
    loop {
        let last = -alpha.iter().sum::<i64>();
        if last.abs() <= bound && (last != 0 || alpha.iter().any(|&a| a != 0)) {
            let deg = support
                .iter()
                .map(|m| m.iter().zip(alpha.iter().chain([&last])).map(|(&e, &a)| e as i64 * a).sum::<i64>())
                .max()
                .unwrap();
            unstable |= deg < 0;
            not_stable |= deg <= 0;
        }
        let mut i = 0;
        loop {
            if i == alpha.len() {
                return (unstable, not_stable);
            }
            if alpha[i] < bound {
                alpha[i] += 1;
                break;
            }
            alpha[i] = -bound;
            i += 1;
        }
    }
}

fn expected_status(unstable: bool, not_stable: bool) -> FrameStatus {
    if unstable {
        FrameStatus::UnstableInFrame
    } else if not_stable {
        FrameStatus::StrictlySemistableInFrame
    } else {
        FrameStatus::StableInFrame
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, field: Field) -> LinearChange {
    loop {
        let v: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-3..=3)).collect();
        let rows: Vec<&[i64]> = v.chunks(n).collect();
        if let Ok(g) = LinearChange::from_ints(field, &rows) {
            return g;
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32, field: Field, allowed: impl Fn(&[u32]) -> bool) -> HomogeneousPoly {
    let mons: Vec<Vec<u32>> = exponents(n, d).into_iter().filter(|m| allowed(m)).collect();
    loop {
        let k = rng.gen_range(1..=mons.len().min(8));
        let terms: Vec<(Monomial, Scalar)> = (0..k)
            .map(|_| {
                let m = mons.choose(rng).unwrap().clone();
                (Monomial(m), Scalar::from_i64(rng.gen_range(-4..=4), field))
            })
            .collect();
        let p = Poly::from_terms(field, n, terms);
        if !p.is_zero() {
            return HomogeneousPoly::new(p, d).unwrap();
        }
    }
}

fn random_sorted_alpha(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> WeightVector {
    loop {
        let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-bound..=bound)).collect();
        v.push(-v.iter().sum::<i64>());
        v.sort();
        if v.iter().any(|&x| x != 0) && v.iter().all(|x| x.abs() <= bound) {
            return WeightVector::new(v).unwrap();
        }
    }
}

fn smooth_corpus() {
    for (n, d) in [(1usize, 3u32), (2, 3), (2, 4), (3, 3), (1, 2), (2, 2)] {
        let text: Vec<String> = (0..=n).map(|i| format!("X{i}^{d}")).collect();
        let t = Instant::now();
        let r = run(&text.join(" + "), n + 1, Q);
        assert!(t.elapsed() < Duration::from_secs(1), "({n},{d}) took {:?}", t.elapsed());
        assert_eq!((r.profile.delta, r.profile.s), (1, -1));
        let p1 = check(&r, "part1");
        assert!(p1.conditional_on.is_empty());
        let want = if d > 2 { Status::Stable } else { Status::Semistable };
        assert_eq!(p1.result, want, "({n},{d})");
        assert_eq!(r.final_verdict.semistability, Status::Semistable);
        if d > 2 {
            assert_eq!(r.final_verdict.stability, Status::Stable);
        }
    }
}

fn plane_cubics() {
    let t = Instant::now();
    let node = run("X1^2*X2 - X0^3 - X0^2*X2", 3, Q);
    let p2 = check(&node, "part2");
    assert_eq!(p2.result, Status::Semistable);
    assert!(p2.conditional_on.is_empty());
    assert_eq!(node.final_verdict.semistability, Status::Semistable);
    assert_ne!(node.final_verdict.stability, Status::Stable);
    assert!(node.checks.iter().all(|c| c.result != Status::Stable));
    assert!(node.certificates.iter().all(|c| c.claim != hmstab_core::certificate::Claim::NotSemistable));

    let cusp = run("X1^2*X2 - X0^3", 3, Q);
    assert_eq!(cusp.final_verdict.semistability, Status::NotSemistable);
    let cert = cusp
        .certificates
        .iter()
        .find(|c| c.claim == hmstab_core::certificate::Claim::NotSemistable)
        .expect("instability certificate");
    assert_eq!(verify_with_cli(&serde_json::to_string(cert).unwrap()), 0);
    for name in ["part1", "part1-s-prime", "part2", "hyperplane-cone"] {
        assert_eq!(check(&cusp, name).result, Status::Inconclusive, "{name}");
    }
    assert!(t.elapsed() < Duration::from_secs(1), "{:?}", t.elapsed());
}

fn partitions(d: u32, max: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    (1..=max.min(d))
        .rev()
        .flat_map(|k| {
            partitions(d - k, k).into_iter().map(move |mut rest| {
                rest.insert(0, k);
                rest
            })
        })
        .collect()
}

fn binary_forms() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = 0;
    for d in 2..=8u32 {
        for pattern in partitions(d, d) {
            // Largest root at [0:1], the next at [1:0], the rest at distinct finite points.
            let mut roots: Vec<i64> = (1..=12).collect();
            roots.shuffle(&mut rng);
            let mut f = parse_poly(&format!("X0^{}", pattern[0]), 2, Q).unwrap();
            for (i, &m) in pattern.iter().enumerate().skip(1) {
                let factor = if i == 1 {
                    format!("X1^{m}")
                } else {
                    let lin = parse_poly(&format!("X0 - {}*X1", roots[i]), 2, Q).unwrap();
                    let mut p = lin.clone();
                    for _ in 1..m {
                        p = p.mul(&lin);
                    }
                    p.to_string()
                };
                f = f.mul(&parse_poly(&factor, 2, Q).unwrap());
            }
            let v = torus_verdict(&f).unwrap();
            let max = pattern[0];
            let classical = if 2 * max > d {
                FrameStatus::UnstableInFrame
            } else if 2 * max == d {
                FrameStatus::StrictlySemistableInFrame
            } else {
                FrameStatus::StableInFrame
            };
            let support: Vec<Vec<u32>> = f.support().map(|m| m.exponents().to_vec()).collect();
            let (u, ns) = brute_force(&support, 2 * d as i64);
            assert_eq!(v.status, classical, "{f} pattern {pattern:?}");
            assert_eq!(v.status, expected_status(u, ns), "{f}");
            cases += 1;
        }
    }
    assert!(cases > 50);
    assert!(t.elapsed() < Duration::from_secs(10), "{:?}", t.elapsed());
}

fn quadrics() {
    for text in ["X0^2 - X1^2", "X0^2 - X1^2 + X2^2", "X0^2 - X1^2 + X2^2 - X3^2"] {
        let nvars = text.matches('X').count();
        let t = Instant::now();
        let r = run(text, nvars, Q);
        assert!(t.elapsed() < Duration::from_secs(1), "{text}: {:?}", t.elapsed());
        let p1 = check(&r, "part1");
        assert_eq!(p1.result, Status::Semistable, "{text}");
        assert!(p1.conditional_on.is_empty());
        let strict = r
            .certificates
            .iter()
            .find(|c| c.claim == hmstab_core::certificate::Claim::NotStable)
            .expect("non-stability certificate");
        assert_eq!(strict.degree_value, "0");
        assert_eq!(verify_with_cli(&serde_json::to_string(strict).unwrap()), 0);
        assert_eq!(r.final_verdict.summary, "strictly semistable");
    }
}

/// Random instances `(F, P = g(e_N), g, alpha)` where `F o g` has order at least `k` at `e_N`.
fn local_bounds_suite() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hits = [[0usize; 4]; 2];
    let mut trials = 0;
    while hits.iter().flatten().any(|&h| h < 500) {
        trials += 1;
        assert!(trials < 200_000, "hypotheses too rare: {hits:?}");
        let fi = trials % 2;
        let field = if fi == 0 { Q } else { Field::Prime(7) };
        let n = *[2usize, 3, 3, 4].choose(&mut rng).unwrap();
        let d = rng.gen_range(2..=5u32);
        let want_off = hits[fi][0] < 500 && rng.gen_bool(0.5);
        let order = if want_off { 0 } else { rng.gen_range(1..=d) };
        let g = random_matrix(&mut rng, n, field);
        let local = random_form(&mut rng, n, d, field, |m| m[n - 1] <= d - order);
        let f = local.apply_linear_change(&g.inverse().unwrap()).unwrap();
        let point = ProjectivePoint::new(g.column(n - 1)).unwrap();
        let info = multiplicity_and_cone(&f, &PointedFrame { point, g: g.clone() }).unwrap();
        let alpha = random_sorted_alpha(&mut rng, n, 6);
        let deg = alpha_degree(&f.apply_linear_change(&g).unwrap(), &alpha).unwrap();
        let b = local_bounds(&alpha, d, info.delta_p).unwrap();
        if info.delta_p == 0 {
            assert!(deg >= b.off_hypersurface, "part 1: {f} {alpha:?}");
            hits[fi][0] += 1;
            continue;
        }
        assert!(deg >= b.multiplicity, "part 2: {f} {alpha:?}");
        hits[fi][1] += 1;
        if n >= 3 && info.is_pure_power == TriState::No {
            assert!(deg >= b.not_hyperplane.unwrap(), "part 3: {f} {alpha:?}");
            hits[fi][2] += 1;
        }
        if n >= 3 && info.is_cone == TriState::No {
            assert!(deg >= b.not_cone.unwrap(), "part 4: {f} {alpha:?}");
            hits[fi][3] += 1;
        }
    }
    println!("  {trials} instances drawn, hypothesis hits {hits:?}");
    assert!(t.elapsed() < Duration::from_secs(60), "{:?}", t.elapsed());
}

fn benoist_suite() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut hypothesis_hits = 0;
    let mut instances = 0;
    while instances < 400 {
        let p = if instances % 2 == 0 { 5 } else { 7 };
        let field = Field::Prime(p);
        let n = rng.gen_range(2..=4usize);
        let d = rng.gen_range(2..=4u32);
        let g = random_matrix(&mut rng, n, field);
        let mut alphas: Vec<WeightVector> = (0..5).map(|_| random_sorted_alpha(&mut rng, n, 6)).collect();
        let f = if instances % 4 < 2 {
            random_form(&mut rng, n, d, field, |_| true)
        } else {
            // Plant the hypothesis: keep only monomials below alpha_u + (d-1) alpha_v in the frame g.
            let alpha = random_sorted_alpha(&mut rng, n, 6);
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u + v >= n {
                continue;
            }
            let a = alpha.as_slice().to_vec();
            let bound = a[u] + (d as i64 - 1) * a[v];
            let below = |m: &[u32]| m.iter().zip(&a).map(|(&e, &x)| e as i64 * x).sum::<i64>() < bound;
            if !exponents(n, d).iter().any(|m| below(m)) {
                continue;
            }
            alphas.insert(0, alpha.clone());
            let local = random_form(&mut rng, n, d, field, below);
            local.apply_linear_change(&g.inverse().unwrap()).unwrap()
        };
        if f.is_zero() {
            continue;
        }
        let mut sing = singular_locus_equations(&f);
        sing.push(f.as_poly().clone());
        let s = projective_dimension_mod_p(&sing, n, p, 20_000).unwrap();
        instances += 1;
        let fg = f.apply_linear_change(&g).unwrap();
        let mut sing_g = singular_locus_equations(&fg);
        sing_g.push(fg.as_poly().clone());
        for alpha in alphas {
            assert!(cor32_check(&f, &g, &alpha, s).unwrap(), "cor32 {f} s={s} {alpha:?}");
            if s <= n as i32 - 3 {
                assert!(cor33_check(&f, &g, &alpha, s).unwrap(), "cor33 {f} s={s} {alpha:?}");
            }
            for u in 0..n {
                for v in 0..n - u {
                    let target = (n - 1 - u - v) as i32;
                    if !benoist_hypothesis(&f, &g, &alpha, u, v).unwrap() {
                        continue;
                    }
                    hypothesis_hits += 1;
                    let z = build_z(&f, &g, &alpha, u, v).unwrap();
                    assert!(
                        divisibility_lemma_check(&f, &g, &alpha, z.u, z.v).unwrap(),
                        "divisibility {f} {alpha:?} u={u} v={v}"
                    );
                    assert!(verify_z_in_sing(&f, &g, &z, p, 1_000_000).unwrap(), "containment {f} {alpha:?}");
                    let zdim = projective_dimension_mod_p(&z.equations(), n, p, 20_000).unwrap();
                    assert!(zdim >= target, "dim Z = {zdim} < {target} for {f} {alpha:?} u={u} v={v}");
                    let mut cut = sing_g.clone();
                    cut.extend(z.linear_eqs.iter().cloned());
                    let cut_dim = projective_dimension_mod_p(&cut, n, p, 20_000).unwrap();
                    assert!(cut_dim >= target, "sing cut {cut_dim} < {target} for {f} {alpha:?}");
                    assert!(s >= target);
                }
            }
        }
    }
    println!("  {instances} forms, {hypothesis_hits} (form, alpha, u, v) cases met the hypothesis");
    assert!(hypothesis_hits > 200, "only {hypothesis_hits} instances met the hypothesis");
    assert!(t.elapsed() < Duration::from_secs(300), "{:?}", t.elapsed());
}

fn lee_suite() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let field = if i % 2 == 0 { Q } else { Field::Prime(7) };
        let n = rng.gen_range(2..=4usize);
        let d = rng.gen_range(1..=4u32);
        let f = random_form(&mut rng, n, d, field, |_| true);
        let g = random_matrix(&mut rng, n, field);
        let alpha = random_sorted_alpha(&mut rng, n, 6);
        let fg = f.apply_linear_change(&g).unwrap();
        if fg.is_zero() {
            continue;
        }
        let (lhs, rhs) = hm_lee_bridge(&f, &g, &alpha).unwrap();
        assert_eq!(lhs, rhs, "{f} {alpha:?}");
    }
    let cusp = parse_affine("X1^2 - X0^3", 2, Q).unwrap();
    let node = parse_affine("X1^2 - X0^2 - X0^3", 2, Q).unwrap();
    assert_eq!(lee_ratio(&cusp).unwrap().value, BigRational::new(5.into(), 6.into()));
    assert_eq!(lee_ratio(&node).unwrap().value, rat(1));
    let mut locals = vec![cusp, node];
    for _ in 0..8 {
        let n = rng.gen_range(2..=3usize);
        let mons: Vec<Vec<u32>> = (1..=4).flat_map(|e| exponents(n, e)).collect();
        let terms: Vec<(Monomial, Scalar)> = (0..4)
            .map(|_| (Monomial(mons.choose(&mut rng).unwrap().clone()), Scalar::from_i64(rng.gen_range(1..=3), Q)))
            .collect();
        locals.push(Poly::from_terms(Q, n, terms));
    }
    for f in &locals {
        let l = lee_ratio(f).unwrap();
        for _ in 0..1000 {
            let w: Vec<BigRational> = (0..f.n_vars()).map(|_| rat(rng.gen_range(1..=20))).collect();
            let m = weighted_multiplicity(f, &w).unwrap();
            assert!(w.iter().sum::<BigRational>() / m >= l.value, "{f}");
        }
    }
    assert!(t.elapsed() < Duration::from_secs(30), "{:?}", t.elapsed());
}

fn canonical(support: &[Vec<u32>], perms: &[Vec<usize>]) -> Vec<Vec<u32>> {
    perms
        .iter()
        .map(|p| {
            let mut s: Vec<Vec<u32>> = support.iter().map(|m| p.iter().map(|&i| m[i]).collect()).collect();
            s.sort();
            s
        })
        .min()
        .unwrap()
}

fn subsets(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, max, cur, out);
            cur.pop();
        }
    }
    rec(0, k, max, &mut cur, &mut out);
    out
}

fn exhaustive_oracle() {
    let t = Instant::now();
    let mut checked = 0;
    for n in 2..=3usize {
        let perms: Vec<Vec<usize>> = if n == 2 {
            vec![vec![0, 1], vec![1, 0]]
        } else {
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        };
        for d in 1..=4u32 {
            let mons = exponents(n, d);
            let mut seen = std::collections::BTreeSet::new();
            for subset in subsets(mons.len(), 6) {
                let support: Vec<Vec<u32>> = subset.iter().map(|&i| mons[i].clone()).collect();
                if !seen.insert(canonical(&support, &perms)) {
                    continue;
                }
                let f = HomogeneousPoly::new(
                    Poly::from_terms(Q, n, support.iter().map(|m| (Monomial(m.clone()), Scalar::one(Q)))),
                    d,
                )
                .unwrap();
                let v = torus_verdict(&f).unwrap();
                let (u, ns) = brute_force(&support, d as i64 * n as i64);
                assert_eq!(v.status, expected_status(u, ns), "support {support:?}");
                if let Some(a) = &v.certificate {
                    let deg = alpha_degree(&f, a).unwrap();
                    assert!(if u { deg < 0 } else { deg == 0 }, "{support:?}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "{checked}");
    assert!(t.elapsed() < Duration::from_secs(300), "{:?}", t.elapsed());
}

fn triple_point_curves() {
    for (text, want) in [
        ("X0^3*X2^3 + X1^3*X2^3 + X0^6 + X1^6", Status::Semistable),
        ("X0^3*X2^4 + X1^3*X2^4 + X0^7 + X1^7", Status::Stable),
    ] {
        let t = Instant::now();
        let r = run(text, 3, Q);
        assert!(t.elapsed() < Duration::from_secs(1), "{text}: {:?}", t.elapsed());
        assert_eq!((r.profile.delta, r.profile.s), (3, 0));
        assert!(r.profile.max_mult_points_complete);
        assert!(r.profile.max_mult_points.iter().all(|p| p.is_cone == TriState::No));
        let p2 = check(&r, "part2");
        assert_eq!(p2.result, want, "{text}");
        assert!(p2.conditional_on.is_empty());
        assert_eq!(check(&r, "part1").result, Status::Inconclusive);
        assert!(r.certificates.is_empty());
        if want == Status::Stable {
            assert_eq!(r.final_verdict.stability, Status::Stable);
        } else {
            assert_eq!(r.final_verdict.semistability, Status::Semistable);
        }
    }
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("smooth Fermat hypersurfaces", smooth_corpus),
        ("plane cubics: node and cusp", plane_cubics),
        ("binary forms up to degree 8", binary_forms),
        ("split quadrics", quadrics),
        ("local lower bounds at a point", local_bounds_suite),
        ("singular-locus dimension from weights", benoist_suite),
        ("weighted multiplicity ratios", lee_suite),
        ("torus verdict vs exhaustive weights", exhaustive_oracle),
        ("curves with an ordinary triple point", triple_point_curves),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, body)) in criteria.iter().enumerate() {
        let label = format!("criterion {}: {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(body));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("{label} ... PASS ({secs:.2}s)"),
            Err(_) => {
                failed += 1;
                println!("{label} ... FAIL ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
