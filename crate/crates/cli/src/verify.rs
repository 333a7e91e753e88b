//! Certificate checker that shares no arithmetic with the analysis library:
//! its own term parser, its own expansion of `F(gX)`, its own determinant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Valid,
    Failed(String),
    Malformed(String),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Valid => 0,
            Outcome::Failed(_) => 1,
            Outcome::Malformed(_) => 2,
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawCertificate {
    field: String,
    nvars: usize,
    poly: String,
    frame: Vec<Vec<String>>,
    alpha: Vec<i64>,
    degree_value: String,
    claim: String,
}

enum Modulus {
    None,
    Prime(BigInt),
}

type Expansion = BTreeMap<Vec<u32>, BigRational>;

fn rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b),
        None => (t, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| format!("bad number `{t}`"))?;
    let den: BigInt = den.trim().parse().map_err(|_| format!("bad number `{t}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{t}`"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_terms(text: &str, n: usize) -> Result<Vec<(Vec<u32>, BigRational)>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut pieces = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    pieces.push(cur);
    let mut out = Vec::new();
    for piece in pieces {
        let (sign, body) = match piece.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
        };
        if body.is_empty() {
            return Err("dangling sign".into());
        }
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; n];
        for factor in body.split('*') {
            if let Some(var) = factor.strip_prefix(['X', 'x']) {
                let (idx, e) = match var.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
                    None => (var, 1),
                };
                let idx: usize = idx.parse().map_err(|_| format!("bad variable `{factor}`"))?;
                if idx >= n {
                    return Err(format!("variable X{idx} out of range"));
                }
                exps[idx] += e;
            } else {
                coeff *= rational(factor)?;
            }
        }
        out.push((exps, coeff * BigRational::from_integer(BigInt::from(sign))));
    }
    Ok(out)
}

fn reduce(q: &BigRational, m: &Modulus) -> Result<BigRational, String> {
    match m {
        Modulus::None => Ok(q.clone()),
        Modulus::Prime(p) => {
            let den = q.denom().mod_floor_pos(p);
            if den.is_zero() {
                return Err("denominator divisible by the characteristic".into());
            }
            let inv = den.modpow(&(p - 2u32), p);
            Ok(BigRational::from_integer((q.numer() * inv).mod_floor_pos(p)))
        }
    }
}

trait ModFloor {
    fn mod_floor_pos(&self, p: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_pos(&self, p: &BigInt) -> BigInt {
        ((self % p) + p) % p
    }
}

fn expand(terms: &[(Vec<u32>, BigRational)], g: &[Vec<BigRational>], m: &Modulus) -> Result<Expansion, String> {
    let n = g.len();
    let mut total = Expansion::new();
    for (exps, c) in terms {
        let mut acc = Expansion::new();
        acc.insert(vec![0; n], c.clone());
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                let mut next = Expansion::new();
                for (mono, coeff) in &acc {
                    for (j, gij) in g[i].iter().enumerate() {
                        if gij.is_zero() {
                            continue;
                        }
                        let mut k = mono.clone();
                        k[j] += 1;
                        let v = reduce(&(coeff * gij), m)?;
                        let slot = next.entry(k).or_insert_with(BigRational::zero);
                        *slot = reduce(&(&*slot + v), m)?;
                    }
                }
                next.retain(|_, v| !v.is_zero());
                acc = next;
            }
        }
        for (mono, coeff) in acc {
            let slot = total.entry(mono).or_insert_with(BigRational::zero);
            *slot = reduce(&(&*slot + coeff), m)?;
        }
    }
    total.retain(|_, v| !v.is_zero());
    Ok(total)
}

fn determinant(mut a: Vec<Vec<BigRational>>, m: &Modulus) -> Result<BigRational, String> {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = reduce(&(det * &a[col][col]), m)?;
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &a[r][c] - &f * &a[col][c];
                a[r][c] = reduce(&v, m)?;
            }
        }
    }
    Ok(det)
}

fn check(raw: RawCertificate) -> Outcome {
    let n = raw.nvars;
    let modulus = match raw.field.trim() {
        "q" | "Q" => Modulus::None,
        other => match other.strip_prefix("fp:").and_then(|p| p.parse::<u64>().ok()) {
            Some(p) if p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0) => Modulus::Prime(BigInt::from(p)),
            _ => return Outcome::Malformed(format!("bad field `{}`", raw.field)),
        },
    };
    if n == 0 || raw.alpha.len() != n || raw.frame.len() != n || raw.frame.iter().any(|r| r.len() != n) {
        return Outcome::Malformed("dimensions of frame, alpha and nvars disagree".into());
    }
    if raw.alpha.iter().map(|&a| a as i128).sum::<i128>() != 0 {
        return Outcome::Malformed("alpha does not sum to zero".into());
    }
    if raw.alpha.iter().all(|&a| a == 0) {
        return Outcome::Malformed("alpha is zero".into());
    }
    let claim_strict = match raw.claim.as_str() {
        "not-semistable" => true,
        "not-stable" => false,
        other => return Outcome::Malformed(format!("unknown claim `{other}`")),
    };
    let parsed = (|| -> Result<_, String> {
        let terms = parse_terms(&raw.poly, n)?;
        let degrees: Vec<u32> = terms.iter().map(|(e, _)| e.iter().sum()).collect();
        if degrees.windows(2).any(|w| w[0] != w[1]) {
            return Err("polynomial is not homogeneous".into());
        }
        let terms = terms
            .into_iter()
            .map(|(e, c)| Ok((e, reduce(&c, &modulus)?)))
            .collect::<Result<Vec<_>, String>>()?;
        let g = raw
            .frame
            .iter()
            .map(|r| r.iter().map(|e| rational(e).and_then(|q| reduce(&q, &modulus))).collect())
            .collect::<Result<Vec<Vec<_>>, String>>()?;
        let claimed = rational(&raw.degree_value)?;
        Ok((terms, g, claimed))
    })();
    let (terms, g, claimed) = match parsed {
        Ok(v) => v,
        Err(e) => return Outcome::Malformed(e),
    };
    match determinant(g.clone(), &modulus) {
        Ok(d) if d.is_zero() => return Outcome::Failed("frame is not invertible".into()),
        Ok(_) => {}
        Err(e) => return Outcome::Malformed(e),
    }
    let composed = match expand(&terms, &g, &modulus) {
        Ok(c) => c,
        Err(e) => return Outcome::Malformed(e),
    };
    if composed.is_empty() {
        return Outcome::Failed("polynomial vanishes identically".into());
    }
    let degree = composed
        .keys()
        .map(|m| m.iter().zip(&raw.alpha).map(|(&e, &a)| e as i128 * a as i128).sum::<i128>())
        .max()
        .expect("nonempty");
    let degree = BigRational::from_integer(BigInt::from(degree));
    if degree != claimed {
        return Outcome::Failed(format!("degree is {degree}, certificate states {claimed}"));
    }
    let holds = if claim_strict { degree.is_negative() } else { !degree.is_positive() };
    if holds {
        Outcome::Valid
    } else {
        Outcome::Failed(format!("degree {degree} does not support the claim `{}`", raw.claim))
    }
}

/// Checks a single certificate object or every certificate inside a report.
pub fn verify_json(text: &str) -> Outcome {
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return Outcome::Malformed(format!("invalid JSON: {e}")),
    };
    let items = match value.get("certificates") {
        Some(serde_json::Value::Array(a)) => a.clone(),
        Some(_) => return Outcome::Malformed("`certificates` is not an array".into()),
        None => vec![value],
    };
    if items.is_empty() {
        return Outcome::Malformed("no certificate found".into());
    }
    let mut worst = Outcome::Valid;
    for item in items {
        let out = match serde_json::from_value::<RawCertificate>(item) {
            Ok(raw) => check(raw),
            Err(e) => Outcome::Malformed(format!("bad certificate: {e}")),
        };
        if out.exit_code() > worst.exit_code() {
            worst = out;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(alpha: &str, deg: &str) -> String {
        format!(
            r#"{{"field":"q","nvars":3,"poly":"X1^2*X2 - X0^3","frame":[["1","0","0"],["0","1","0"],["0","0","1"]],"alpha":{alpha},"degree_value":"{deg}","claim":"not-semistable"}}"#
        )
    }

    #[test]
    fn cusp() {
        assert_eq!(verify_json(&cert("[-1,-2,3]", "-1")), Outcome::Valid);
        assert_eq!(verify_json(&cert("[1,2,-3]", "-1")).exit_code(), 1);
        assert_eq!(verify_json(&cert("[-1,-2,4]", "-1")).exit_code(), 2);
        assert_eq!(verify_json("{").exit_code(), 2);
    }

    #[test]
    fn frames_are_applied_as_substitutions() {
        // X0 -> X0 + X1 turns X0^2 into X0^2 + 2 X0 X1 + X1^2, whose top alpha-degree is 2.
        let c = r#"{"field":"fp:5","nvars":2,"poly":"X0^2","frame":[["1","1"],["0","1"]],"alpha":[-1,1],"degree_value":"2","claim":"not-stable"}"#;
        assert_eq!(verify_json(c).exit_code(), 1);
        let c = r#"{"field":"fp:5","nvars":2,"poly":"X0^2","frame":[["0","1"],["1","0"]],"alpha":[-1,1],"degree_value":"2","claim":"not-stable"}"#;
        assert_eq!(verify_json(c).exit_code(), 1);
        let c = r#"{"field":"fp:5","nvars":2,"poly":"X0^2","frame":[["0","1"],["1","0"]],"alpha":[1,-1],"degree_value":"-2","claim":"not-semistable"}"#;
        assert_eq!(verify_json(c), Outcome::Valid);
        let c = r#"{"field":"fp:5","nvars":2,"poly":"X0^2","frame":[["1","2"],["3","6"]],"alpha":[1,-1],"degree_value":"-2","claim":"not-semistable"}"#;
        assert_eq!(verify_json(c).exit_code(), 1);
    }

    #[test]
    fn rejects_bad_fields() {
        let c = cert("[-1,-2,3]", "-1").replace("\"q\"", "\"fp:4\"");
        assert_eq!(verify_json(&c).exit_code(), 2);
    }
}
