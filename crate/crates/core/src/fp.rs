//! Fast arithmetic over prime fields: compiled polynomial evaluation,
//! projective point enumeration and matrix rank.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{inv_mod, mul_mod, Scalar};

/// A polynomial reduced to `u32` residues, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub struct ModPoly {
    p: u32,
    terms: Vec<(Vec<u32>, u32)>,
    max_exp: Vec<u32>,
}

impl ModPoly {
    /// Compiles `f`, reducing rational coefficients modulo `p`.
    pub fn new(f: &Poly, p: u32) -> Result<ModPoly> {
        let n = f.n_vars();
        let mut terms = Vec::with_capacity(f.len());
        let mut max_exp = vec![0; n];
        for (m, c) in f.terms() {
            let r = match c {
                Scalar::Mod { value, modulus } if *modulus == p => *value,
                Scalar::Mod { .. } => return Err(Error::FieldMismatch("wrong modulus".into())),
                Scalar::Rational(q) => {
                    let s = Scalar::from_rational(q, crate::scalar::Field::Prime(p))?;
                    s.residue().expect("residue")
                }
            };
            if r == 0 {
                continue;
            }
            for (mx, &e) in max_exp.iter_mut().zip(m.exponents()) {
                *mx = (*mx).max(e);
            }
            terms.push((m.exponents().to_vec(), r));
        }
        Ok(ModPoly { p, terms, max_exp })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let p = self.p;
        // powers[i][e] = x_i^e
        let powers: Vec<Vec<u32>> = x
            .iter()
            .zip(&self.max_exp)
            .map(|(&xi, &top)| {
                let mut v = Vec::with_capacity(top as usize + 1);
                v.push(1 % p);
                for e in 1..=top as usize {
                    v.push(mul_mod(v[e - 1], xi, p));
                }
                v
            })
            .collect();
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, powers[i][e as usize], p);
                    if t == 0 {
                        break;
                    }
                }
            }
            acc += t as u64;
        }
        (acc % p as u64) as u32
    }

    pub fn vanishes_at(&self, x: &[u32]) -> bool {
        self.eval(x) == 0
    }
}

/// Number of points of `P^n(F_p)`, i.e. `(p^(n+1) - 1)/(p - 1)`, saturating.
pub fn projective_count(p: u32, n_coords: usize) -> u64 {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..n_coords {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(p as u64);
    }
    total
}

/// Calls `visit` on every normalized point of `P^{n-1}(F_p)` (first nonzero coordinate 1).
pub fn for_each_projective_point(p: u32, n_coords: usize, mut visit: impl FnMut(&[u32])) {
    let mut x = vec![0u32; n_coords];
    for lead in 0..n_coords {
        for v in x.iter_mut() {
            *v = 0;
        }
        x[lead] = 1;
        let free = n_coords - lead - 1;
        loop {
            visit(&x);
            // odometer over the coordinates after `lead`
            let mut k = 0;
            while k < free {
                let idx = n_coords - 1 - k;
                x[idx] += 1;
                if x[idx] < p {
                    break;
                }
                x[idx] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
}

/// Rank of a dense matrix over `F_p`, destroying the input.
pub fn rank_mod(rows: &mut [Vec<u32>], p: u32) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    let pp = p as u64;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let (top, rest) = rows.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let nf = pp - f as u64;
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                if y != 0 {
                    *x = ((*x as u64 + nf * y as u64) % pp) as u32;
                }
            }
        }
        r += 1;
    }
    r
}
