//! Invertible linear coordinate changes and small dense linear algebra.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::scalar::{Field, Scalar};

/// An invertible square matrix `g`; acts on forms by `X_i <- sum_j g_ij X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    field: Field,
    rows: Vec<Vec<Scalar>>,
}

impl LinearChange {
    pub fn new(field: Field, rows: Vec<Vec<Scalar>>) -> Result<LinearChange> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            if let Some(c) = r.iter().find(|c| c.field() != field) {
                return Err(Error::FieldMismatch(format!(
                    "entry over {} in matrix over {field}",
                    c.field()
                )));
            }
        }
        let g = LinearChange { field, rows };
        if g.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(g)
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Result<LinearChange> {
        LinearChange::new(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_i64(v, field)).collect())
                .collect(),
        )
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: Field, cols: &[Vec<Scalar>]) -> Result<LinearChange> {
        let n = cols.len();
        let rows = (0..n)
            .map(|i| {
                cols.iter()
                    .map(|c| c.get(i).cloned().unwrap_or_else(|| Scalar::zero(field)))
                    .collect()
            })
            .collect();
        if let Some(c) = cols.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.len(),
            });
        }
        LinearChange::new(field, rows)
    }

    pub fn identity(field: Field, n: usize) -> LinearChange {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Scalar::from_i64((i == j) as i64, field))
                    .collect()
            })
            .collect();
        LinearChange { field, rows }
    }

    /// `X_i <- X_{perm[i]}`.
    pub fn permutation(field: Field, perm: &[usize]) -> Result<LinearChange> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let rows = perm
            .iter()
            .map(|&p| {
                (0..n)
                    .map(|j| Scalar::from_i64((j == p) as i64, field))
                    .collect()
            })
            .collect();
        Ok(LinearChange { field, rows })
    }

    /// Identity plus `c` at position `(i, j)`, `i != j`.
    pub fn elementary(field: Field, n: usize, i: usize, j: usize, c: i64) -> LinearChange {
        assert_ne!(i, j);
        let mut g = LinearChange::identity(field, n);
        g.rows[i][j] = Scalar::from_i64(c, field);
        g
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearChange::identity(self.field, self.dim())
    }

    pub fn mul(&self, other: &LinearChange) -> LinearChange {
        assert_eq!(self.dim(), other.dim());
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Scalar::zero(self.field), |acc, k| {
                            acc.add(&self.rows[i][k].mul(&other.rows[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        LinearChange {
            field: self.field,
            rows,
        }
    }

    pub fn apply_to_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Scalar::zero(self.field), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// The forms `(g X)_i` substituted for `X_i`.
    pub fn linear_forms(&self) -> Vec<Poly> {
        let n = self.dim();
        self.rows
            .iter()
            .map(|r| {
                Poly::from_terms(
                    self.field,
                    n,
                    r.iter()
                        .enumerate()
                        .map(|(j, c)| (Monomial::var(j, n), c.clone())),
                )
            })
            .collect()
    }

    pub fn determinant(&self) -> Scalar {
        let (_, det) = row_reduce(self.rows.clone(), self.field);
        det
    }

    pub fn inverse(&self) -> Result<LinearChange> {
        let n = self.dim();
        let mut aug: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| Scalar::from_i64((i == j) as i64, self.field)));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            aug.swap(col, piv);
            let inv = aug[col][col].inv()?;
            for x in aug[col].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..2 * n {
                        let sub = f.mul(&aug[col][c]);
                        aug[r][c] = aug[r][c].sub(&sub);
                    }
                }
            }
        }
        Ok(LinearChange {
            field: self.field,
            rows: aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }
}

impl fmt::Display for LinearChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = r.iter().map(Scalar::to_string).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gaussian elimination to echelon form; returns (rank, determinant when square).
fn row_reduce(mut m: Vec<Vec<Scalar>>, field: Field) -> (usize, Scalar) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut det = Scalar::one(field);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            det = Scalar::zero(field);
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            det = det.neg();
        }
        det = det.mul(&m[rank][col]);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for r in rank + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..ncols {
                let sub = f.mul(&m[rank][c]);
                m[r][c] = m[r][c].sub(&sub);
            }
        }
        rank += 1;
    }
    if nrows != ncols || rank < nrows {
        det = Scalar::zero(field);
    }
    (rank, det)
}

pub fn rank(rows: &[Vec<Scalar>], field: Field) -> usize {
    row_reduce(rows.to_vec(), field).0
}

/// A basis of `{x : M x = 0}` for an `r x n` matrix.
pub fn nullspace(rows: &[Vec<Scalar>], n: usize, field: Field) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..n {
                    let sub = f.mul(&m[r][c]);
                    m[i][c] = m[i][c].sub(&sub);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(field); n];
            v[fc] = Scalar::one(field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = m[row][fc].neg();
            }
            v
        })
        .collect()
}
