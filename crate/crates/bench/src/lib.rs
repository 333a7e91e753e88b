//! Shared inputs for the benchmarks under `benches/`.

use hmstab_core::{parse_poly, Field, HomogeneousPoly};

/// Named hypersurfaces of increasing difficulty: (name, text, nvars).
pub const FIXTURES: &[(&str, &str, usize)] = &[
    ("cusp", "X1^2*X2 - X0^3", 3),
    ("nodal-cubic", "X1^2*X2 - X0^3 - X0^2*X2", 3),
    ("fermat-quartic", "X0^4 + X1^4 + X2^4", 3),
    ("cayley-cubic", "X0*X1*X2 + X0*X1*X3 + X0*X2*X3 + X1*X2*X3", 4),
    ("triple-point-septic", "X0^3*X2^4 + X1^3*X2^4 + X0^7 + X1^7", 3),
];

pub fn fixture(name: &str) -> HomogeneousPoly {
    let (_, text, n) = FIXTURES.iter().find(|f| f.0 == name).expect("known fixture");
    parse_poly(text, *n, Field::Rational).expect("fixture parses")
}

/// Every monomial of degree `d` in `n` variables with coefficient 1.
pub fn dense_form(n: usize, d: u32, field: Field) -> HomogeneousPoly {
    let terms: Vec<String> = hmstab_core::newton::full_support(n, d)
        .iter()
        .map(|m| {
            let parts: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, e)| format!("X{i}^{e}"))
                .collect();
            parts.join("*")
        })
        .collect();
    parse_poly(&terms.join(" + "), n, field).expect("dense form parses")
}
