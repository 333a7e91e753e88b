//! Exact emptiness and dimension tests for projective varieties via
//! Macaulay matrices.
//!
//! `V(f_1..f_m)` in `P^{n-1}` is empty iff the ideal contains every form of
//! degree `D = sum of the n largest (d_i - 1), plus 1`. Ranks are taken modulo
//! primes; over the rationals a full rank modulo any prime certifies emptiness,
//! while a rank drop modulo several large primes is only strong evidence.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fp::rank_mod;
use crate::poly::{HomogeneousPoly, Monomial, Poly};
use crate::scalar::{Field, Scalar};

pub const LARGE_PRIMES: [u32; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Default cap on Macaulay matrix cells.
pub const DEFAULT_CELL_BUDGET: u64 = 400_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    /// `certified` is false when the conclusion rests on rank drops modulo sampled primes.
    NonEmpty { certified: bool },
}

impl Emptiness {
    pub fn is_empty(self) -> bool {
        self == Emptiness::Empty
    }
}

pub(crate) fn monomials_of_degree(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = vec![0; n];
    rec(0, deg, &mut cur, &mut out);
    out
}

fn binom(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Emptiness over the algebraic closure of `F_p` for forms already reduced mod `p`.
fn empty_mod_p(polys: &[Poly], n: usize, p: u32, cell_budget: u64) -> Result<bool> {
    let mut fs: Vec<(&Poly, u32)> = Vec::new();
    for f in polys {
        match f.degree() {
            None => continue,
            Some(0) => return Ok(true),
            Some(d) => fs.push((f, d)),
        }
    }
    if fs.len() < n {
        return Ok(false);
    }
    let mut degs: Vec<u32> = fs.iter().map(|x| x.1).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let big_d: u32 = degs.iter().take(n).map(|d| d - 1).sum::<u32>() + 1;
    let ncols = binom(big_d as u64 + n as u64 - 1, n as u64 - 1);
    let nrows: u64 = fs
        .iter()
        .map(|&(_, d)| {
            if d > big_d {
                0
            } else {
                binom((big_d - d) as u64 + n as u64 - 1, n as u64 - 1)
            }
        })
        .sum();
    if nrows < ncols {
        return Ok(false);
    }
    let cells = nrows.saturating_mul(ncols);
    if cells > cell_budget {
        return Err(Error::BudgetExceeded {
            needed: cells,
            budget: cell_budget,
        });
    }
    let cols = monomials_of_degree(n, big_d);
    let index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(nrows as usize);
    for &(f, d) in &fs {
        if d > big_d {
            continue;
        }
        let terms: Vec<(&Monomial, u32)> = f
            .terms()
            .map(|(m, c)| (m, c.residue().expect("reduced form")))
            .collect();
        for shift in monomials_of_degree(n, big_d - d) {
            let mut row = vec![0u32; ncols as usize];
            for (m, c) in &terms {
                let e: Vec<u32> = m.exponents().iter().zip(&shift).map(|(a, b)| a + b).collect();
                row[index[e.as_slice()]] = *c;
            }
            rows.push(row);
        }
    }
    Ok(rank_mod(&mut rows, p) == ncols as usize)
}

fn reduce_all(polys: &[Poly], p: u32) -> Option<Vec<Poly>> {
    polys.iter().map(|f| f.reduce_mod(p).ok()).collect()
}

/// Decides whether the forms have a common zero in projective space over the
/// algebraic closure of their field.
pub fn projectively_empty(polys: &[Poly], n: usize, field: Field, cell_budget: u64) -> Result<Emptiness> {
    match field {
        Field::Prime(p) => Ok(if empty_mod_p(polys, n, p, cell_budget)? {
            Emptiness::Empty
        } else {
            Emptiness::NonEmpty { certified: true }
        }),
        Field::Rational => {
            if polys.iter().filter(|f| !f.is_zero()).count() < n
                && !polys.iter().any(|f| f.degree() == Some(0))
            {
                return Ok(Emptiness::NonEmpty { certified: true });
            }
            for &p in &LARGE_PRIMES {
                let Some(red) = reduce_all(polys, p) else {
                    continue;
                };
                if empty_mod_p(&red, n, p, cell_budget)? {
                    return Ok(Emptiness::Empty);
                }
            }
            Ok(Emptiness::NonEmpty { certified: false })
        }
    }
}

/// Result of [`projective_dimension`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionBound {
    /// Certified: `dim V <= upper` (`-1` means empty).
    pub upper: i32,
    /// True when `upper` is also certified as a lower bound.
    pub exact: bool,
}

fn random_section<R: Rng>(n: usize, k: usize, field: Field, rng: &mut R) -> Vec<Poly> {
    // n forms in k variables: X_i <- sum_j a_ij Y_j
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..k)
                    .map(|_| match field {
                        Field::Rational => Scalar::from_i64(rng.gen_range(-30..=30), field),
                        Field::Prime(p) => Scalar::from_i64(rng.gen_range(0..p as i64), field),
                    })
                    .collect()
            })
            .collect();
        if crate::linear::rank(&rows, field) < k {
            continue;
        }
        return rows
            .iter()
            .map(|r| {
                Poly::from_terms(
                    field,
                    k,
                    r.iter().enumerate().map(|(j, c)| (Monomial::var(j, k), c.clone())),
                )
            })
            .collect();
    }
}

/// Certified upper bound on `dim V(polys)` from random linear sections:
/// `dim V <= t` as soon as some codimension-`(t+1)` section is empty.
pub fn projective_dimension<R: Rng>(
    polys: &[Poly],
    n: usize,
    field: Field,
    trials: usize,
    cell_budget: u64,
    rng: &mut R,
) -> Result<DimensionBound> {
    if projectively_empty(polys, n, field, cell_budget)?.is_empty() {
        return Ok(DimensionBound { upper: -1, exact: true });
    }
    if polys.iter().all(Poly::is_zero) {
        return Ok(DimensionBound {
            upper: n as i32 - 1,
            exact: true,
        });
    }
    for t in 0..n.saturating_sub(1) {
        let k = n - t - 1;
        for _ in 0..trials.max(1) {
            let forms = random_section(n, k, field, rng);
            let pulled: Vec<Poly> = polys
                .iter()
                .map(|f| f.substitute(&forms))
                .collect::<Result<_>>()?;
            if projectively_empty(&pulled, k, field, cell_budget)?.is_empty() {
                // Nonemptiness is only certified over prime fields.
                let exact = t == 0 && matches!(field, Field::Prime(_));
                return Ok(DimensionBound { upper: t as i32, exact });
            }
        }
    }
    Ok(DimensionBound {
        upper: n as i32 - 1,
        exact: false,
    })
}

/// Equations of the singular locus `V(F, dF/dX_i)`; `F` is omitted when the
/// Euler relation already puts it in the ideal of the partials.
pub fn singular_locus_equations(f: &HomogeneousPoly) -> Vec<Poly> {
    let mut eqs: Vec<Poly> = f.gradient().into_iter().map(HomogeneousPoly::into_poly).collect();
    let c = f.field().characteristic();
    if c != 0 && f.degree() % c == 0 {
        eqs.push(f.as_poly().clone());
    }
    eqs
}

/// Equations of `{P : mult_P(F) >= m}`: Hasse derivatives of order `m - 1`,
/// plus all lower orders in small characteristic.
pub fn multiplicity_locus_equations(f: &HomogeneousPoly, m: u32) -> Vec<Poly> {
    if m == 0 {
        return Vec::new();
    }
    let n = f.n_vars();
    let c = f.field().characteristic();
    let all_orders = c != 0 && c <= f.degree();
    let orders: Vec<u32> = if all_orders { (0..m).collect() } else { vec![m - 1] };
    let mut eqs = Vec::new();
    for k in orders {
        for mu in monomials_of_degree(n, k) {
            let h = f.as_poly().hasse_derivative(&mu);
            if !h.is_zero() {
                eqs.push(h);
            }
        }
    }
    eqs
}

/// Certified upper bound on the maximal multiplicity of `F` over the algebraic closure.
pub fn max_multiplicity_bound(f: &HomogeneousPoly, cell_budget: u64) -> Result<u32> {
    f.require_nonzero()?;
    let n = f.n_vars();
    for m in 2..=f.degree() + 1 {
        let eqs = multiplicity_locus_equations(f, m);
        if projectively_empty(&eqs, n, f.field(), cell_budget)?.is_empty() {
            return Ok(m - 1);
        }
    }
    Ok(f.degree())
}
