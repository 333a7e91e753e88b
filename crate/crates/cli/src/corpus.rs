//! Built-in corpus of hypersurfaces with known GIT behaviour.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hmstab_core::analyze::AnalyzeOptions;
use hmstab_core::criteria::Status;
use hmstab_core::{parse_poly, Field};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub poly: String,
    pub nvars: usize,
    pub field: String,
    pub semistability: Status,
    pub stability: Status,
    /// Where the expectation comes from: `classical: ...` or `derived: ...`.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub entry: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

fn entry(name: &str, poly: &str, nvars: usize, field: &str, ss: Status, st: Status, source: &str) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        poly: poly.into(),
        nvars,
        field: field.into(),
        semistability: ss,
        stability: st,
        source: source.into(),
    }
}

pub fn builtin() -> Vec<CorpusEntry> {
    use Status::*;
    vec![
        entry("binary cubic, distinct roots", "X0^3 + X1^3", 2, "q", Semistable, Stable, "classical: binary forms"),
        entry("binary quartic, two double roots", "X0^2*X1^2", 2, "q", Semistable, NotStable, "classical: binary forms"),
        entry("binary quartic, triple root", "X0^3*X1", 2, "q", NotSemistable, NotStable, "classical: binary forms"),
        entry("binary sextic, triple root", "X0^3*X1^3 + X1^6", 2, "q", Semistable, NotStable, "classical: binary forms"),
        entry("split conic", "X0^2 - X1^2 + X2^2", 3, "q", Semistable, NotStable, "classical: quadrics"),
        entry("split quadric surface", "X0^2 - X1^2 + X2^2 - X3^2", 4, "q", Semistable, NotStable, "classical: quadrics"),
        entry("Fermat plane cubic", "X0^3 + X1^3 + X2^3", 3, "q", Semistable, Stable, "classical: smooth hypersurfaces"),
        entry("nodal plane cubic", "X1^2*X2 - X0^3 - X0^2*X2", 3, "q", Semistable, NotStable, "classical: plane cubics"),
        entry("nodal plane cubic mod 7", "X1^2*X2 - X0^3 - X0^2*X2", 3, "fp:7", Semistable, NotStable, "classical: plane cubics"),
        entry("cuspidal plane cubic", "X1^2*X2 - X0^3", 3, "q", NotSemistable, NotStable, "classical: plane cubics"),
        entry("conic plus secant line", "X0^2*X2 - X1^2*X2 + X0*X2^2", 3, "q", Semistable, NotStable, "classical: plane cubics"),
        entry("conic plus tangent line", "X1^2*X2 - X0*X2^2", 3, "q", NotSemistable, NotStable, "classical: plane cubics"),
        entry("three concurrent lines", "X0^3 - X0*X1^2", 3, "q", NotSemistable, NotStable, "classical: plane cubics"),
        entry("triangle of lines", "X0*X1*X2", 3, "q", Semistable, NotStable, "classical: plane cubics"),
        entry("double line plus line", "X0^2*X2", 3, "q", NotSemistable, NotStable, "classical: plane cubics"),
        entry("Fermat plane quartic", "X0^4 + X1^4 + X2^4", 3, "q", Semistable, Stable, "classical: smooth hypersurfaces"),
        entry("Klein quartic", "X0^3*X1 + X1^3*X2 + X2^3*X0", 3, "q", Semistable, Stable, "classical: smooth hypersurfaces"),
        entry("Fermat cubic surface", "X0^3 + X1^3 + X2^3 + X3^3", 4, "q", Semistable, Stable, "classical: smooth hypersurfaces"),
        entry("sextic with an ordinary triple point", "X0^3*X2^3 + X1^3*X2^3 + X0^6 + X1^6", 3, "q", Semistable, Inconclusive, "derived: tangent-cone criterion, equality case"),
        entry("septic with an ordinary triple point", "X0^3*X2^4 + X1^3*X2^4 + X0^7 + X1^7", 3, "q", Semistable, Stable, "derived: tangent-cone criterion, strict case"),
    ]
}

fn describe(ss: Status, st: Status) -> String {
    format!("{}/{}", ss.as_str(), st.as_str())
}

/// Runs one entry, returning `semistability/stability` or an error string.
pub fn run_entry(e: &CorpusEntry, seed: u64) -> CorpusRow {
    let expected = describe(e.semistability, e.stability);
    let got = (|| -> Result<String, String> {
        let field: Field = e.field.parse().map_err(|x: hmstab_core::Error| x.to_string())?;
        let f = parse_poly(&e.poly, e.nvars, field).map_err(|x| x.to_string())?;
        let opts = AnalyzeOptions { seed, ..AnalyzeOptions::default() };
        let r = hmstab_core::analyze::analyze(&f, &opts).map_err(|x| x.to_string())?;
        Ok(describe(r.final_verdict.semistability, r.final_verdict.stability))
    })()
    .unwrap_or_else(|err| format!("error: {err}"));
    CorpusRow {
        entry: e.name.clone(),
        pass: got == expected,
        expected,
        got,
    }
}

/// Runs every entry whose name contains `filter`; rows keep corpus order.
pub fn run(entries: &[CorpusEntry], filter: Option<&str>, seed: u64) -> Vec<CorpusRow> {
    let selected: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| filter.map_or(true, |f| e.name.contains(f)))
        .collect();
    selected.par_iter().map(|e| run_entry(e, seed)).collect()
}

pub fn render(rows: &[CorpusRow]) -> String {
    let width = rows.iter().map(|r| r.entry.len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<width$}  {:<32}  {:<32}  pass\n", "entry", "expected", "got");
    for r in rows {
        out += &format!(
            "{:<width$}  {:<32}  {:<32}  {}\n",
            r.entry,
            r.expected,
            r.got,
            if r.pass { "yes" } else { "NO" }
        );
    }
    out
}
