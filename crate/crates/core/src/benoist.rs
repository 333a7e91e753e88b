//! Z-schemes from the tail decomposition, the divisibility lemma and the
//! singular-locus inequalities that follow from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{for_each_projective_point, projective_count, ModPoly};
use crate::linear::LinearChange;
use crate::macaulay::singular_locus_equations;
use crate::poly::{HomogeneousPoly, Poly};
use crate::scalar::Field;
use crate::weights::{alpha_degree, WeightVector};

/// `V(X_0, ..., X_{v-1}, P_0, ..., P_{u-1})` for the transformed form `F o g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZScheme {
    pub linear_eqs: Vec<Poly>,
    pub poly_eqs: Vec<Poly>,
    pub alpha: WeightVector,
    pub u: usize,
    pub v: usize,
    pub s: usize,
    /// True when the requested `(u, v)` had `u > v` and was exchanged.
    pub swapped: bool,
}

/// Serialized form with equations in the input grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSchemeRecord {
    pub linear_eqs: Vec<String>,
    pub poly_eqs: Vec<String>,
    pub alpha: WeightVector,
    pub u: usize,
    pub v: usize,
    pub s: usize,
}

impl ZScheme {
    pub fn equations(&self) -> Vec<Poly> {
        self.linear_eqs.iter().chain(&self.poly_eqs).cloned().collect()
    }

    pub fn record(&self) -> ZSchemeRecord {
        ZSchemeRecord {
            linear_eqs: self.linear_eqs.iter().map(ToString::to_string).collect(),
            poly_eqs: self.poly_eqs.iter().map(ToString::to_string).collect(),
            alpha: self.alpha.clone(),
            u: self.u,
            v: self.v,
            s: self.s,
        }
    }
}

fn check_split(f: &HomogeneousPoly, alpha: &WeightVector, u: usize, v: usize) -> Result<usize> {
    alpha.require_sorted()?;
    if alpha.len() != f.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.n_vars(),
            found: alpha.len(),
        });
    }
    let n = f.dim();
    if u + v > n {
        return Err(Error::Precondition(format!("u + v = {} exceeds N = {n}", u + v)));
    }
    Ok(n)
}

/// `deg_alpha(F o g) < alpha_u + (d-1) alpha_v`.
pub fn benoist_hypothesis(
    f: &HomogeneousPoly,
    g: &LinearChange,
    alpha: &WeightVector,
    u: usize,
    v: usize,
) -> Result<bool> {
    check_split(f, alpha, u, v)?;
    let fg = f.apply_linear_change(g)?;
    let a = alpha.as_slice();
    Ok(alpha_degree(&fg, alpha)? < a[u] + (f.degree() as i64 - 1) * a[v])
}

/// Every monomial of every tail part `P_i`, `i >= u`, is divisible by some `X_j` with `j < v`.
pub fn divisibility_lemma_check(
    f: &HomogeneousPoly,
    g: &LinearChange,
    alpha: &WeightVector,
    u: usize,
    v: usize,
) -> Result<bool> {
    check_split(f, alpha, u, v)?;
    let tails = f.apply_linear_change(g)?.tail_decomposition();
    Ok(tails[u..]
        .iter()
        .all(|p| p.support().all(|m| m.exponents()[..v].iter().any(|&e| e > 0))))
}

/// Builds the Z-scheme, exchanging `u` and `v` when `u > v`.
pub fn build_z(f: &HomogeneousPoly, g: &LinearChange, alpha: &WeightVector, u: usize, v: usize) -> Result<ZScheme> {
    let n = check_split(f, alpha, u, v)?;
    let (u2, v2, swapped) = if u > v { (v, u, true) } else { (u, v, false) };
    let fg = f.apply_linear_change(g)?;
    let field = f.field();
    let nv = f.n_vars();
    let tails = fg.tail_decomposition();
    Ok(ZScheme {
        linear_eqs: (0..v2).map(|j| Poly::var(j, field, nv)).collect(),
        poly_eqs: tails[..u2]
            .iter()
            .map(|p| p.as_poly().clone())
            .filter(|p| !p.is_zero())
            .collect(),
        alpha: alpha.clone(),
        u: u2,
        v: v2,
        s: n - u - v,
        swapped,
    })
}

fn reduce_for(f: &HomogeneousPoly, p: u32) -> Result<HomogeneousPoly> {
    match f.field() {
        Field::Prime(q) if q == p => Ok(f.clone()),
        Field::Prime(q) => Err(Error::BadPrimes(format!("form is over F_{q}, not F_{p}"))),
        Field::Rational => {
            let r = f.reduce_mod(p)?;
            if r.is_zero() {
                return Err(Error::BadPrimes(format!("form vanishes mod {p}")));
            }
            Ok(r)
        }
    }
}

/// Checks that every `F_p`-point of `Z` is a singular point of `F o g` (reduced mod `p`).
pub fn verify_z_in_sing(f: &HomogeneousPoly, g: &LinearChange, z: &ZScheme, p: u32, budget: u64) -> Result<bool> {
    let n = f.n_vars();
    let needed = projective_count(p, n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let fg = reduce_for(&f.apply_linear_change(g)?, p)?;
    let z_eqs: Vec<ModPoly> = z.equations().iter().map(|e| ModPoly::new(e, p)).collect::<Result<_>>()?;
    let mut sing: Vec<ModPoly> = singular_locus_equations(&fg)
        .iter()
        .map(|e| ModPoly::new(e, p))
        .collect::<Result<_>>()?;
    sing.push(ModPoly::new(fg.as_poly(), p)?);
    let mut ok = true;
    for_each_projective_point(p, n, |x| {
        if ok && z_eqs.iter().all(|e| e.vanishes_at(x)) && !sing.iter().all(|e| e.vanishes_at(x)) {
            ok = false;
        }
    });
    Ok(ok)
}

fn check_s(f: &HomogeneousPoly, alpha: &WeightVector, s: i32) -> Result<usize> {
    alpha.require_sorted()?;
    if alpha.len() != f.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.n_vars(),
            found: alpha.len(),
        });
    }
    let n = f.dim();
    if s < -1 || s > n as i32 - 1 {
        return Err(Error::Precondition(format!("s = {s} outside [-1, {}]", n as i32 - 1)));
    }
    Ok(n)
}

/// `deg_alpha(F o g) >= alpha_u + (d-1) alpha_v` for every split `u + v = N - s - 1`.
pub fn cor32_check(f: &HomogeneousPoly, g: &LinearChange, alpha: &WeightVector, s: i32) -> Result<bool> {
    let n = check_s(f, alpha, s)?;
    let total = (n as i32 - s - 1) as usize;
    let deg = alpha_degree(&f.apply_linear_change(g)?, alpha)?;
    let a = alpha.as_slice();
    let d = f.degree() as i64;
    Ok((0..=total).all(|u| deg >= a[u] + (d - 1) * a[total - u]))
}

/// `(N - s - 2)/d * deg_alpha(F o g) >= sum_{i=1}^{N-s-2} alpha_i`.
pub fn cor33_check(f: &HomogeneousPoly, g: &LinearChange, alpha: &WeightVector, s: i32) -> Result<bool> {
    let n = check_s(f, alpha, s)?;
    if s > n as i32 - 2 {
        return Err(Error::Precondition(format!("s = {s} exceeds N - 2")));
    }
    let k = (n as i32 - s - 2) as usize;
    let deg = alpha_degree(&f.apply_linear_change(g)?, alpha)?;
    let lhs = BigRational::new(BigInt::from(k as i64 * deg), BigInt::from(f.degree()));
    let rhs: i64 = alpha.as_slice()[1..=k].iter().sum();
    Ok(lhs >= BigRational::from_integer(rhs.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_affine, parse_poly};

    const Q: Field = Field::Rational;

    fn wv(a: &[i64]) -> WeightVector {
        WeightVector::new(a.to_vec()).unwrap()
    }

    #[test]
    fn hypothesis_examples() {
        let id = LinearChange::identity(Q, 3);
        let triple = parse_poly("X0^3", 3, Q).unwrap();
        assert!(benoist_hypothesis(&triple, &id, &wv(&[-2, 1, 1]), 0, 1).unwrap());
        let cusp = parse_poly("X1^2*X2 - X0^3", 3, Q).unwrap();
        assert!(!benoist_hypothesis(&cusp, &id, &wv(&[-2, -1, 3]), 1, 1).unwrap());
        let fermat = parse_poly("X0^3 + X1^3 + X2^3", 3, Q).unwrap();
        for (u, v) in [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)] {
            assert!(!benoist_hypothesis(&fermat, &id, &wv(&[-1, -1, 2]), u, v).unwrap());
        }
        assert_eq!(
            benoist_hypothesis(&fermat, &id, &wv(&[1, -1, 0]), 0, 0),
            Err(Error::UnsortedWeights)
        );
    }

    #[test]
    fn divisibility_examples() {
        let id = LinearChange::identity(Q, 3);
        let triple = parse_poly("X0^3", 3, Q).unwrap();
        assert!(divisibility_lemma_check(&triple, &id, &wv(&[-2, 1, 1]), 0, 1).unwrap());
        let f = parse_poly("X0^2*X1 + X1^2*X2", 3, Q).unwrap();
        let a = wv(&[-3, 1, 2]);
        assert!(!benoist_hypothesis(&f, &id, &a, 0, 1).unwrap());
        assert!(!divisibility_lemma_check(&f, &id, &a, 0, 1).unwrap());
        assert!(!divisibility_lemma_check(&triple, &id, &wv(&[-2, 1, 1]), 0, 0).unwrap());
    }

    #[test]
    fn z_examples() {
        let id = LinearChange::identity(Q, 3);
        let triple = parse_poly("X0^3", 3, Q).unwrap();
        let z = build_z(&triple, &id, &wv(&[-2, 1, 1]), 0, 1).unwrap();
        assert_eq!(z.linear_eqs, vec![Poly::var(0, Q, 3)]);
        assert!(z.poly_eqs.is_empty());
        assert_eq!(z.s, 1);

        let cusp = parse_poly("X1^2*X2 - X0^3", 3, Q).unwrap();
        let z = build_z(&cusp, &id, &wv(&[-2, -1, 3]), 1, 1).unwrap();
        assert_eq!(z.poly_eqs, vec![parse_affine("-X0^2", 3, Q).unwrap()]);

        let swapped = build_z(&triple, &id, &wv(&[-2, 1, 1]), 1, 0).unwrap();
        assert!(swapped.swapped);
        assert_eq!((swapped.u, swapped.v), (0, 1));
        assert_eq!(swapped.equations(), z_eqs_of(&triple, &id, 0, 1));
        assert!(build_z(&triple, &id, &wv(&[-2, 1, 1]), 2, 1).is_err());
    }

    fn z_eqs_of(f: &HomogeneousPoly, g: &LinearChange, u: usize, v: usize) -> Vec<Poly> {
        build_z(f, g, &wv(&[-2, 1, 1]), u, v).unwrap().equations()
    }

    #[test]
    fn containment_examples() {
        let id = LinearChange::identity(Q, 3);
        let triple = parse_poly("X0^3", 3, Q).unwrap();
        let z = build_z(&triple, &id, &wv(&[-2, 1, 1]), 0, 1).unwrap();
        assert!(verify_z_in_sing(&triple, &id, &z, 5, 1_000).unwrap());

        let node = parse_poly("X1^2*X2 - X0^3 - X0^2*X2", 3, Q).unwrap();
        let a = wv(&[-1, 0, 1]);
        assert!(!benoist_hypothesis(&node, &id, &a, 0, 1).unwrap());
        let z = build_z(&node, &id, &a, 0, 1).unwrap();
        assert!(!verify_z_in_sing(&node, &id, &z, 5, 1_000).unwrap());
        assert!(verify_z_in_sing(&node, &id, &z, 5, 10).is_err());
    }

    #[test]
    fn z_dimension_bounds() {
        let id = LinearChange::identity(Q, 3);
        let fermat = parse_poly("X0^3 + X1^3 + X2^3", 3, Q).unwrap();
        for a in [[-1, 0, 1], [-2, 1, 1], [-1, -1, 2], [-5, 2, 3]] {
            assert!(cor32_check(&fermat, &id, &wv(&a), -1).unwrap());
        }
        assert!(cor33_check(&fermat, &id, &wv(&[-1, 0, 1]), -1).unwrap());
        assert!(cor33_check(&fermat, &id, &wv(&[-1, 0, 1]), 0).unwrap());
        assert!(cor33_check(&fermat, &id, &wv(&[-1, 0, 1]), 1).is_err());

        let triple = parse_poly("X0^3", 3, Q).unwrap();
        assert!(cor32_check(&triple, &id, &wv(&[-2, 1, 1]), 1).unwrap());
        // Understating s breaks the inequality.
        assert!(!cor32_check(&triple, &id, &wv(&[-2, 1, 1]), -1).unwrap());
    }
}
