//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic, so iteration order (and therefore printing) is canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linear::LinearChange;
use crate::scalar::{Field, Scalar};

/// Exponent vector `m`, standing for `X_0^{m_0} ... X_n^{m_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n_vars: usize) -> Monomial {
        Monomial(vec![0; n_vars])
    }

    pub fn var(i: usize, n_vars: usize) -> Monomial {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Index of the first variable with a positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `n_vars` variables, not necessarily homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    n_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Local (dehomogenized) equations are ordinary polynomials.
pub type AffinePoly = Poly;

impl Poly {
    pub fn zero(field: Field, n_vars: usize) -> Poly {
        Poly {
            field,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, n_vars: usize) -> Poly {
        Poly::monomial(Monomial::one(n_vars), c)
    }

    pub fn var(i: usize, field: Field, n_vars: usize) -> Poly {
        Poly::monomial(Monomial::var(i, n_vars), Scalar::one(field))
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::zero(c.field(), m.0.len());
        p.add_term(m, c);
        p
    }

    /// Sums the given terms, dropping cancellations.
    pub fn from_terms<I>(field: Field, n_vars: usize, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(field, n_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(field: Field, n_vars: usize, terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(
            field,
            n_vars,
            terms
                .iter()
                .map(|(e, c)| (Monomial(e.to_vec()), Scalar::from_i64(*c, field))),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.n_vars);
        debug_assert_eq!(c.field(), self.field);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Total degree of the highest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Least total degree among the terms; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.n_vars))
    }

    /// Sum of the terms of total degree exactly `e`.
    pub fn homogeneous_component(&self, e: u32) -> Poly {
        Poly {
            field: self.field,
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == e)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when no term involves variable `i`.
    pub fn is_free_of(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.0[i] == 0)
    }

    pub fn neg(&self) -> Poly {
        self.map_coefficients(Scalar::neg)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.n_vars);
        }
        self.map_coefficients(|x| x.mul(c))
    }

    fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly {
            field: self.field,
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut out = Poly::zero(self.field, self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Scalar::one(self.field), self.n_vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_compatible(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomial field mismatch");
        assert_eq!(self.n_vars, other.n_vars, "polynomial arity mismatch");
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: point.len(),
            });
        }
        if let Some(c) = point.iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch(format!(
                "point coordinate in {} for polynomial over {}",
                c.field(),
                self.field
            )));
        }
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.n_vars,
            });
        }
        let mut out = Poly::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c.mul_int(e as u64));
        }
        Ok(out)
    }

    /// Hasse derivative `D^(mu)`: `X^a -> prod_i C(a_i, mu_i) X^(a - mu)`.
    /// Unlike iterated formal derivatives it is meaningful in every characteristic.
    pub fn hasse_derivative(&self, mu: &[u32]) -> Poly {
        assert_eq!(mu.len(), self.n_vars);
        let mut out = Poly::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            if !Monomial(mu.to_vec()).divides(m) {
                continue;
            }
            let mut coeff = c.clone();
            for (&a, &k) in m.0.iter().zip(mu) {
                if k > 0 {
                    coeff = coeff.mul(&binomial_scalar(a, k, self.field));
                }
            }
            let rest = Monomial(m.0.iter().zip(mu).map(|(a, k)| a - k).collect());
            out.add_term(rest, coeff);
        }
        out
    }

    /// Substitutes `X_i <- forms[i]`; all forms share a (possibly different) arity.
    pub fn substitute(&self, forms: &[Poly]) -> Result<Poly> {
        if forms.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: forms.len(),
            });
        }
        let Some(target_vars) = forms.first().map(Poly::n_vars) else {
            // Zero variables: the polynomial is a constant.
            return Ok(self.clone());
        };
        let max_exp: Vec<u32> = (0..self.n_vars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        // powers[i][k] = forms[i]^k
        let powers: Vec<Vec<Poly>> = forms
            .iter()
            .zip(&max_exp)
            .map(|(f, &top)| {
                let mut v = Vec::with_capacity(top as usize + 1);
                v.push(Poly::constant(Scalar::one(self.field), target_vars));
                for k in 1..=top as usize {
                    let next = v[k - 1].mul(f);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), target_vars);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Reduces rational coefficients modulo `p`; fails if a denominator vanishes.
    pub fn reduce_mod(&self, p: u32) -> Result<Poly> {
        let field = Field::Prime(p);
        let mut out = Poly::zero(field, self.n_vars);
        for (m, c) in &self.terms {
            let r = match c {
                Scalar::Rational(q) => Scalar::from_rational(q, field)?,
                Scalar::Mod { .. } => {
                    return Err(Error::FieldMismatch("reduction needs rational input".into()))
                }
            };
            out.add_term(m.clone(), r);
        }
        Ok(out)
    }
}

pub(crate) fn binomial_scalar(n: u32, k: u32, field: Field) -> Scalar {
    // Lucas-free exact computation: build the integer, then map into the field.
    let mut acc = num_bigint::BigInt::from(1);
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    Scalar::from_bigint(&acc, field)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = m.degree() == 0;
            if constant {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "X{i}")?;
                } else {
                    write!(f, "X{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Homogeneous polynomial of fixed degree: the equation of a hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    poly: Poly,
    degree: u32,
}

impl HomogeneousPoly {
    pub fn new(poly: Poly, degree: u32) -> Result<HomogeneousPoly> {
        if let Some(found) = poly.support().map(Monomial::degree).find(|&e| e != degree) {
            return Err(Error::MixedDegree {
                expected: degree,
                found,
            });
        }
        Ok(HomogeneousPoly { poly, degree })
    }

    /// Infers the degree from the terms; the zero polynomial is rejected.
    pub fn from_poly(poly: Poly) -> Result<HomogeneousPoly> {
        let d = poly.degree().ok_or(Error::ZeroPolynomial)?;
        HomogeneousPoly::new(poly, d)
    }

    pub fn from_int_terms(field: Field, n_vars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        HomogeneousPoly::from_poly(Poly::from_int_terms(field, n_vars, terms))
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.poly.n_vars
    }

    /// Number of projective coordinates minus one.
    pub fn dim(&self) -> usize {
        self.poly.n_vars - 1
    }

    pub fn field(&self) -> Field {
        self.poly.field
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(())
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.poly.terms()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.poly.support()
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        self.poly.evaluate(point)
    }

    pub fn scale(&self, c: &Scalar) -> HomogeneousPoly {
        HomogeneousPoly {
            poly: self.poly.scale(c),
            degree: self.degree,
        }
    }

    /// `F o g`: substitutes `X_i <- sum_j g_ij X_j`.
    pub fn apply_linear_change(&self, g: &LinearChange) -> Result<HomogeneousPoly> {
        if g.dim() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                found: g.dim(),
            });
        }
        if g.field() != self.field() {
            return Err(Error::FieldMismatch(format!(
                "matrix over {} applied to polynomial over {}",
                g.field(),
                self.field()
            )));
        }
        let poly = self.poly.substitute(&g.linear_forms())?;
        Ok(HomogeneousPoly {
            poly,
            degree: self.degree,
        })
    }

    pub fn partial_derivative(&self, i: usize) -> Result<HomogeneousPoly> {
        Ok(HomogeneousPoly {
            poly: self.poly.derivative(i)?,
            degree: self.degree.saturating_sub(1),
        })
    }

    /// Gradient `(dF/dX_0, ..., dF/dX_N)`.
    pub fn gradient(&self) -> Vec<HomogeneousPoly> {
        (0..self.n_vars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Sets `X_i = 1` and renumbers the remaining variables in order.
    pub fn dehomogenize(&self, i: usize) -> Result<AffinePoly> {
        let n = self.n_vars();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let mut out = Poly::zero(self.field(), n - 1);
        for (m, c) in self.poly.terms() {
            let mut e = m.0.clone();
            e.remove(i);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// The unique `F = sum_i X_i P_i` with `P_i` of degree `d-1` in `X_i..X_N` only:
    /// each monomial goes to the index of its first nonzero exponent.
    pub fn tail_decomposition(&self) -> Vec<HomogeneousPoly> {
        let n = self.n_vars();
        let d1 = self.degree.saturating_sub(1);
        let mut parts: Vec<Poly> = (0..n).map(|_| Poly::zero(self.field(), n)).collect();
        for (m, c) in self.poly.terms() {
            let i = m.first_var().expect("nonconstant monomial in positive degree");
            let mut e = m.clone();
            e.0[i] -= 1;
            parts[i].add_term(e, c.clone());
        }
        parts
            .into_iter()
            .map(|poly| HomogeneousPoly { poly, degree: d1 })
            .collect()
    }

    pub fn mul(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        HomogeneousPoly {
            poly: self.poly.mul(&other.poly),
            degree: self.degree + other.degree,
        }
    }

    pub fn add(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly> {
        if self.degree != other.degree {
            return Err(Error::MixedDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(HomogeneousPoly {
            poly: self.poly.add(&other.poly),
            degree: self.degree,
        })
    }

    pub fn reduce_mod(&self, p: u32) -> Result<HomogeneousPoly> {
        Ok(HomogeneousPoly {
            poly: self.poly.reduce_mod(p)?,
            degree: self.degree,
        })
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    const Q: Field = Field::Rational;

    fn hp(text: &str, n: usize) -> HomogeneousPoly {
        parse_poly(text, n, Q).unwrap()
    }

    #[test]
    fn linear_change_examples() {
        let f = hp("X0^2", 2);
        let swap = LinearChange::permutation(Q, &[1, 0]).unwrap();
        assert_eq!(f.apply_linear_change(&swap).unwrap(), hp("X1^2", 2));

        let f = hp("X0*X1", 2);
        let id = LinearChange::identity(Q, 2);
        assert_eq!(f.apply_linear_change(&id).unwrap(), f);

        let shear = LinearChange::from_ints(Q, &[&[1, 1], &[0, 1]]).unwrap();
        let got = hp("X0^2", 2).apply_linear_change(&shear).unwrap();
        assert_eq!(got, hp("X0^2 + 2*X0*X1 + X1^2", 2));
    }

    #[test]
    fn linear_change_dimension_mismatch() {
        let f = hp("X0^2", 2);
        let g = LinearChange::identity(Q, 3);
        assert!(matches!(
            f.apply_linear_change(&g),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(hp("X0^3", 1).partial_derivative(0).unwrap(), hp("3*X0^2", 1));
        assert_eq!(
            hp("X1^2*X2 - X0^3", 3).partial_derivative(2).unwrap(),
            hp("X1^2", 3)
        );
        let f5 = parse_poly("X0^5", 1, Field::Prime(5)).unwrap();
        assert!(f5.partial_derivative(0).unwrap().is_zero());
        assert!(matches!(
            hp("X0^3", 1).partial_derivative(1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn dehomogenize_examples() {
        let f = hp("X1^2*X2 - X0^3", 3).dehomogenize(2).unwrap();
        assert_eq!(f, Poly::from_int_terms(Q, 2, &[(&[0, 2], 1), (&[3, 0], -1)]));

        let f = hp("X0^4", 2).dehomogenize(0).unwrap();
        assert_eq!(f, Poly::constant(Scalar::one(Q), 1));

        let f = hp("X0*X2 + X1^2", 3).dehomogenize(2).unwrap();
        assert_eq!(f, Poly::from_int_terms(Q, 2, &[(&[1, 0], 1), (&[0, 2], 1)]));
        assert!(hp("X0", 1).dehomogenize(1).is_err());
    }

    #[test]
    fn homogeneous_component_examples() {
        let f = Poly::from_int_terms(Q, 2, &[(&[0, 2], 1), (&[3, 0], -1), (&[2, 0], -1)]);
        assert_eq!(
            f.homogeneous_component(2),
            Poly::from_int_terms(Q, 2, &[(&[0, 2], 1), (&[2, 0], -1)])
        );
        assert!(Poly::from_int_terms(Q, 2, &[(&[0, 2], 1), (&[3, 0], -1)])
            .homogeneous_component(0)
            .is_zero());
        let g = Poly::from_int_terms(Q, 1, &[(&[1], 1), (&[0], 1)]);
        assert_eq!(g.homogeneous_component(1), Poly::var(0, Q, 1));
    }

    #[test]
    fn tail_decomposition_examples() {
        let parts = hp("X0*X1 + X1^2", 2).tail_decomposition();
        assert_eq!(parts[0].as_poly(), &Poly::var(1, Q, 2));
        assert_eq!(parts[1].as_poly(), &Poly::var(1, Q, 2));

        let parts = hp("X0^2", 2).tail_decomposition();
        assert_eq!(parts[0].as_poly(), &Poly::var(0, Q, 2));
        assert!(parts[1].is_zero());

        let parts = hp("X1^2*X2 - X0^3", 3).tail_decomposition();
        assert_eq!(parts[0], hp("-X0^2", 3));
        assert_eq!(parts[1], hp("X1*X2", 3));
        assert!(parts[2].is_zero());
        assert_eq!(parts[2].degree(), 2);
    }

    #[test]
    fn hasse_derivative_in_small_characteristic() {
        // D^(2) X^2 = 1 even in characteristic 2, where the second formal derivative vanishes.
        let f = parse_poly("X0^2", 1, Field::Prime(2)).unwrap();
        let h = f.as_poly().hasse_derivative(&[2]);
        assert_eq!(h, Poly::constant(Scalar::one(Field::Prime(2)), 1));
    }

    #[test]
    fn printer_is_canonical() {
        let f = hp("X2^3 - 2*X0*X1*X2 + 3/4*X0^3", 3);
        assert_eq!(f.to_string(), "3/4*X0^3 - 2*X0*X1*X2 + X2^3");
        assert_eq!(hp("-X0 + X1", 2).to_string(), "-X0 + X1");
    }
}
