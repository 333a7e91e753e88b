//! Text grammar for polynomials and projective points.
//!
//! A polynomial is a sum of terms `[coeff][*]X<i>^<e>[*X<j>^<e>...]` joined by
//! `+`/`-`, coefficients being integers or `a/b`. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{HomogeneousPoly, Monomial, Poly};
use crate::scalar::{parse_rational, Field, Scalar};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_number(&mut self) -> Result<u32> {
        let n = self.number()?;
        u32::try_from(n).map_err(|_| self.err("number too large"))
    }
}

/// Parses a term list into `(exponents, coefficient)` pairs, keeping the
/// raw degrees so mixed-degree input can be reported before cancellation.
fn parse_terms(text: &str, n_vars: usize) -> Result<Vec<(Vec<u32>, BigRational)>> {
    let mut lx = Lexer::new(text);
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some(b'+') => {
                lx.bump();
            }
            Some(b'-') => {
                lx.bump();
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(format!("expected `+` or `-`, found `{}`", c as char))),
        }
        first = false;
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; n_vars];
        let mut have_factor = false;
        if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
            let num = lx.number()?;
            let mut q = BigRational::from_integer(num);
            if lx.peek() == Some(b'/') {
                lx.bump();
                let den = lx.number()?;
                if den == BigInt::from(0) {
                    return Err(Error::DivisionByZero);
                }
                q /= BigRational::from_integer(den);
            }
            coeff = q;
            have_factor = true;
            if lx.peek() == Some(b'*') {
                lx.bump();
                if !matches!(lx.peek(), Some(b'X') | Some(b'x')) {
                    return Err(lx.err("expected a variable after `*`"));
                }
            }
        }
        while matches!(lx.peek(), Some(b'X') | Some(b'x')) {
            lx.bump();
            if !matches!(lx.src.get(lx.pos), Some(c) if c.is_ascii_digit()) {
                return Err(lx.err("expected a variable index"));
            }
            let idx = lx.small_number()? as usize;
            if idx >= n_vars {
                return Err(Error::VariableOutOfRange { index: idx, n_vars });
            }
            let mut e = 1;
            if lx.peek() == Some(b'^') {
                lx.bump();
                e = lx.small_number()?;
            }
            exps[idx] += e;
            have_factor = true;
            if lx.peek() == Some(b'*') {
                lx.bump();
                if !matches!(lx.peek(), Some(b'X') | Some(b'x')) {
                    return Err(lx.err("expected a variable after `*`"));
                }
            } else {
                break;
            }
        }
        if !have_factor {
            return Err(lx.err("expected a coefficient or variable"));
        }
        if negative {
            coeff = -coeff;
        }
        out.push((exps, coeff));
    }
    Ok(out)
}

fn build(terms: Vec<(Vec<u32>, BigRational)>, field: Field, n_vars: usize) -> Result<Poly> {
    let mut p = Poly::zero(field, n_vars);
    for (e, c) in terms {
        p.add_term(Monomial(e), Scalar::from_rational(&c, field)?);
    }
    Ok(p)
}

/// Parses a homogeneous polynomial in `X0..X{n_vars-1}`.
///
/// Cancellation to zero is allowed; the result then keeps the parsed degree.
pub fn parse_poly(text: &str, n_vars: usize, field: Field) -> Result<HomogeneousPoly> {
    let terms = parse_terms(text, n_vars)?;
    let deg: u32 = terms[0].0.iter().sum();
    if let Some(found) = terms
        .iter()
        .map(|(e, _)| e.iter().sum::<u32>())
        .find(|&e| e != deg)
    {
        return Err(Error::MixedDegree {
            expected: deg,
            found,
        });
    }
    HomogeneousPoly::new(build(terms, field, n_vars)?, deg)
}

/// Parses an arbitrary (not necessarily homogeneous) polynomial.
pub fn parse_affine(text: &str, n_vars: usize, field: Field) -> Result<Poly> {
    build(parse_terms(text, n_vars)?, field, n_vars)
}

/// Parses `[a0:a1:...:aN]`.
pub fn parse_point(text: &str, field: Field) -> Result<Vec<Scalar>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("point must look like [a0:...:aN], got `{t}`"),
        })?;
    let coords = inner
        .split(':')
        .map(|c| Scalar::from_rational(&parse_rational(c)?, field))
        .collect::<Result<Vec<_>>>()?;
    if coords.iter().all(Scalar::is_zero) {
        return Err(Error::Precondition("point has all coordinates zero".into()));
    }
    Ok(coords)
}

pub fn format_point(p: &[Scalar]) -> String {
    let parts: Vec<String> = p.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(":"))
}
