#![allow(dead_code)]

use hmstab_core::{Field, HomogeneousPoly, LinearChange, Monomial, Poly, Scalar};
use proptest::prelude::*;

pub fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7))]
}

/// A nonzero form with small integer coefficients.
pub fn form(n: usize, d: u32, field: Field) -> impl Strategy<Value = HomogeneousPoly> {
    let mons = exponents(n, d);
    let k = mons.len();
    proptest::collection::vec((0..k, -4i64..=4), 1..=k.min(6)).prop_filter_map("zero form", move |terms| {
        let poly = Poly::from_terms(
            field,
            n,
            terms
                .iter()
                .map(|&(i, c)| (Monomial(mons[i].clone()), Scalar::from_i64(c, field))),
        );
        let f = HomogeneousPoly::new(poly, d).ok()?;
        (!f.is_zero()).then_some(f)
    })
}

pub fn any_form() -> impl Strategy<Value = HomogeneousPoly> {
    (2usize..=4, 1u32..=4, field_strategy()).prop_flat_map(|(n, d, field)| form(n, d, field))
}

pub fn matrix(n: usize, field: Field) -> impl Strategy<Value = LinearChange> {
    proptest::collection::vec(-3i64..=3, n * n).prop_filter_map("singular", move |v| {
        let rows: Vec<&[i64]> = v.chunks(n).collect();
        LinearChange::from_ints(field, &rows).ok()
    })
}

/// Zero-sum integer weights, sorted.
pub fn sorted_alpha(n: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-bound..=bound, n - 1).prop_filter_map("out of range", move |mut v| {
        let last = -v.iter().sum::<i64>();
        v.push(last);
        v.sort();
        (v.iter().any(|&x| x != 0) && v.iter().all(|x| x.abs() <= bound * n as i64)).then_some(v)
    })
}

/// Bounded exhaustive search over zero-sum weights: (exists deg < 0, exists nonzero deg <= 0).
pub fn brute_force_alpha(support: &[Vec<u32>], bound: i64) -> (bool, bool) {
    let n = support[0].len();
    let mut unstable = false;
    let mut not_stable = false;
    let mut alpha = vec![-bound; n - 1];
    loop {
        let last = -alpha.iter().sum::<i64>();
        if last.abs() <= bound {
            let mut full = alpha.clone();
            full.push(last);
            if full.iter().any(|&a| a != 0) {
                let deg = support
                    .iter()
                    .map(|m| m.iter().zip(&full).map(|(&e, &a)| e as i64 * a).sum::<i64>())
                    .max()
                    .unwrap();
                unstable |= deg < 0;
                not_stable |= deg <= 0;
            }
        }
        let mut i = 0;
        loop {
            if i == n - 1 {
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
