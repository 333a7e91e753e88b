//! Groebner bases over prime fields (graded reverse lexicographic order) and
//! exact dimensions of projective schemes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::macaulay::monomials_of_degree;
use crate::poly::Poly;
use crate::scalar::{inv_mod, mul_mod, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Key(Vec<u32>);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.0.iter().sum();
        let db: u32 = other.0.iter().sum();
        da.cmp(&db).then_with(|| {
            for i in (0..self.0.len()).rev() {
                if self.0[i] != other.0[i] {
                    return other.0[i].cmp(&self.0[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type ModTerms = BTreeMap<Key, u32>;

fn to_mod(f: &Poly, p: u32) -> Result<ModTerms> {
    let mut out = ModTerms::new();
    for (m, c) in f.terms() {
        let r = match c {
            Scalar::Mod { value, modulus } if *modulus == p => *value,
            Scalar::Mod { .. } => return Err(Error::FieldMismatch("wrong modulus".into())),
            Scalar::Rational(q) => Scalar::from_rational(q, Field::Prime(p))?.residue().expect("residue"),
        };
        if r != 0 {
            out.insert(Key(m.exponents().to_vec()), r);
        }
    }
    Ok(out)
}

fn lead(f: &ModTerms) -> Option<(&Key, u32)> {
    f.iter().next_back().map(|(k, &c)| (k, c))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `f -= c * x^shift * g`.
fn sub_shifted(f: &mut ModTerms, c: u32, shift: &[u32], g: &ModTerms, p: u32) {
    for (k, &v) in g {
        let key = Key(k.0.iter().zip(shift).map(|(a, b)| a + b).collect());
        let t = mul_mod(c, v, p);
        let entry = f.entry(key).or_insert(0);
        *entry = (*entry + p - t) % p;
        if *entry == 0 {
            let key = Key(k.0.iter().zip(shift).map(|(a, b)| a + b).collect());
            f.remove(&key);
        }
    }
}

fn make_monic(f: &mut ModTerms, p: u32) {
    if let Some((_, c)) = lead(f) {
        let inv = inv_mod(c, p);
        for v in f.values_mut() {
            *v = mul_mod(*v, inv, p);
        }
    }
}

/// Reduces the leading term of `f` until it is not divisible by any leading term of `basis` (monic).
fn top_reduce(mut f: ModTerms, basis: &[ModTerms], p: u32) -> ModTerms {
    while let Some((lm, lc)) = lead(&f) {
        let lm = lm.0.clone();
        let Some(g) = basis.iter().find(|g| divides(&lead(g).expect("nonzero").0 .0, &lm)) else {
            break;
        };
        let glm = &lead(g).expect("nonzero").0 .0;
        let shift: Vec<u32> = lm.iter().zip(glm).map(|(a, b)| a - b).collect();
        sub_shifted(&mut f, lc, &shift, g, p);
    }
    f
}

/// Leading monomials of a Groebner basis of the ideal generated by `polys` over `F_p`.
pub fn leading_monomials_mod_p(polys: &[Poly], p: u32, max_pairs: usize) -> Result<Vec<Vec<u32>>> {
    let mut basis: Vec<ModTerms> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for f in polys {
        let r = top_reduce(to_mod(f, p)?, &basis, p);
        if r.is_empty() {
            continue;
        }
        let mut r = r;
        make_monic(&mut r, p);
        let k = basis.len();
        pairs.extend((0..k).map(|i| (i, k)));
        basis.push(r);
    }
    let mut processed = 0;
    while !pairs.is_empty() {
        processed += 1;
        if processed > max_pairs {
            return Err(Error::BudgetExceeded {
                needed: processed as u64,
                budget: max_pairs as u64,
            });
        }
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                let a = &lead(&basis[i]).expect("nonzero").0 .0;
                let b = &lead(&basis[j]).expect("nonzero").0 .0;
                Key(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect())
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        let a = lead(&basis[i]).expect("nonzero").0 .0.clone();
        let b = lead(&basis[j]).expect("nonzero").0 .0.clone();
        if a.iter().zip(&b).all(|(x, y)| *x == 0 || *y == 0) {
            continue;
        }
        let l: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
        let mut s = ModTerms::new();
        let sa: Vec<u32> = l.iter().zip(&a).map(|(x, y)| x - y).collect();
        let sb: Vec<u32> = l.iter().zip(&b).map(|(x, y)| x - y).collect();
        sub_shifted(&mut s, p - 1, &sa, &basis[i], p);
        sub_shifted(&mut s, 1, &sb, &basis[j], p);
        let mut r = top_reduce(s, &basis, p);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r, p);
        let k = basis.len();
        pairs.extend((0..k).map(|i| (i, k)));
        basis.push(r);
    }
    Ok(basis.iter().map(|g| lead(g).expect("nonzero").0 .0.clone()).collect())
}

fn check_vars(polys: &[Poly], n: usize) -> Result<()> {
    if let Some(f) = polys.iter().find(|f| f.n_vars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.n_vars(),
        });
    }
    Ok(())
}

fn dimension_of_leading_ideal(lms: &[Vec<u32>], n: usize) -> i32 {
    let masks: Vec<u32> = lms
        .iter()
        .map(|m| m.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u32, |acc, (i, _)| acc | (1 << i)))
        .collect();
    // Krull dimension of the monomial quotient: largest variable set containing no leading monomial.
    let best = (0u32..1 << n)
        .filter(|s| masks.iter().all(|m| m & !s != 0))
        .map(|s| s.count_ones() as i32)
        .max();
    best.map_or(-1, |k| k - 1)
}

/// Dimension of the projective scheme `V(polys)` in `P^{n-1}` over the algebraic
/// closure of `F_p`; `-1` when empty.
pub fn projective_dimension_mod_p(polys: &[Poly], n: usize, p: u32, max_pairs: usize) -> Result<i32> {
    check_vars(polys, n)?;
    let lms = leading_monomials_mod_p(polys, p, max_pairs)?;
    Ok(dimension_of_leading_ideal(&lms, n))
}

/// Length of `V(polys)` over the algebraic closure of `F_p` when it is finite
/// (an upper bound on its number of geometric points), `None` otherwise.
pub fn finite_scheme_length_mod_p(polys: &[Poly], n: usize, p: u32, max_pairs: usize) -> Result<Option<u64>> {
    check_vars(polys, n)?;
    let lms = leading_monomials_mod_p(polys, p, max_pairs)?;
    match dimension_of_leading_ideal(&lms, n) {
        -1 => return Ok(Some(0)),
        0 => {}
        _ => return Ok(None),
    }
    // Past the sum of the largest exponents the Hilbert function of a
    // one-dimensional monomial quotient is constant.
    let top: u32 = (0..n).map(|i| lms.iter().map(|m| m[i]).max().unwrap_or(0)).sum::<u32>() + 1;
    let count = monomials_of_degree(n, top)
        .iter()
        .filter(|a| !lms.iter().any(|m| divides(m, a)))
        .count();
    Ok(Some(count as u64))
}
