//! Deterministic reproduction bundles with pinned golden outputs.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::border::{
    border_subrank_cap, border_witness_check, essential_variable_count, laurent_limit,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::gcd::{normalized_pair, same_projective_pair};
use crate::moduli::{eta_cubic_pair, eta_quartic_pair, sections_through_first_point, ParamForm};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::subrank::{
    border_ratio_within, border_upper_bound, bounds_report, cubic_lower_closed_form,
    generic_upper_bound, hl_condition_max_r, slice_witness_check, slice_witness_for_unit,
    symmetric_subrank, unit_orbit_dimension, Evidence, LevelStatus,
};
use crate::tensor::{unit_tensor_over, LaurentMatrix, SymTensor};

pub const BUNDLES: [&str; 5] = [
    "example-quintic",
    "appendix-cubic",
    "appendix-quartic",
    "prop21",
    "bounds-sweep",
];

/// Golden output of a bundle.
pub fn golden(name: &str) -> Option<&'static str> {
    Some(match name {
        "example-quintic" => include_str!("../golden/example-quintic.txt"),
        "appendix-cubic" => include_str!("../golden/appendix-cubic.txt"),
        "appendix-quartic" => include_str!("../golden/appendix-quartic.txt"),
        "prop21" => include_str!("../golden/prop21.txt"),
        "bounds-sweep" => include_str!("../golden/bounds-sweep.txt"),
        _ => return None,
    })
}

#[derive(Clone, Debug)]
pub struct ReproOutcome {
    pub name: String,
    pub output: String,
    pub golden: String,
    pub matches: bool,
}

impl ReproOutcome {
    /// Line-by-line differences, `-` for golden and `+` for output.
    pub fn diff(&self) -> String {
        let a: Vec<&str> = self.golden.lines().collect();
        let b: Vec<&str> = self.output.lines().collect();
        let mut out = String::new();
        for i in 0..a.len().max(b.len()) {
            match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) if x == y => {}
                (x, y) => {
                    if let Some(x) = x {
                        let _ = writeln!(out, "{:>4} - {x}", i + 1);
                    }
                    if let Some(y) = y {
                        let _ = writeln!(out, "{:>4} + {y}", i + 1);
                    }
                }
            }
        }
        out
    }
}

/// Trailing whitespace stripped per line, line endings unified, one final newline.
pub fn normalize_output(s: &str) -> String {
    let mut out: String = s
        .lines()
        .map(str::trim_end)
        .collect::<Vec<_>>()
        .join("\n")
        .trim_end()
        .to_string();
    out.push('\n');
    out
}

pub fn run_bundle(name: &str) -> Result<String> {
    let raw = match name {
        "example-quintic" => quintic_gap()?,
        "appendix-cubic" => cubic_hyperplane_family()?,
        "appendix-quartic" => quartic_tangent_rows()?,
        "prop21" => unit_orbit_table()?,
        "bounds-sweep" => bounds_table()?,
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown bundle {name:?}; expected one of {}",
                BUNDLES.join(", ")
            )))
        }
    };
    Ok(normalize_output(&raw))
}

pub fn check_bundle(name: &str) -> Result<ReproOutcome> {
    let output = run_bundle(name)?;
    let golden = normalize_output(golden(name).expect("known bundle"));
    Ok(ReproOutcome {
        name: name.to_string(),
        matches: output == golden,
        output,
        golden,
    })
}

fn evidence_kind(e: &Evidence) -> &'static str {
    match e {
        Evidence::CoordinateWitness { .. } => "coordinate witness",
        Evidence::ConsistentBasis { .. } => "consistent basis",
        Evidence::UnitIdeal { .. } => "unit ideal",
        Evidence::EssentialVariables { .. } => "essential variables",
        Evidence::CenterAlgebra { .. } => "center algebra",
        Evidence::SectionWitness { .. } => "section witness",
        Evidence::Monotonicity { .. } => "monotonicity",
        Evidence::ResourceLimit { .. } => "resource limit",
    }
}

fn status_word(s: LevelStatus) -> &'static str {
    match s {
        LevelStatus::Feasible => "feasible",
        LevelStatus::Infeasible => "infeasible",
        LevelStatus::Inconclusive => "inconclusive",
    }
}

/// The quintic `x0^2 x2^3 + x1^5 + x0 x1 x2^3`.
pub fn gap_quintic() -> SymTensor {
    SymTensor::parse(
        "x0^2*x2^3 + x1^5 + x0*x1*x2^3",
        3,
        Some(5),
        &Field::Rational,
    )
    .expect("valid form")
}

/// Curve `[[t^3, 0, t^-3], [0, 1, 0], [0, 0, t^2]]` degenerating [`gap_quintic`].
pub fn gap_curve() -> LaurentMatrix {
    let rows: Vec<Vec<String>> = [["t^3", "0", "t^-3"], ["0", "1", "0"], ["0", "0", "t^2"]]
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
    LaurentMatrix::parse_rows(&rows, &Field::Rational).expect("valid curve")
}

fn quintic_gap() -> Result<String> {
    let f = gap_quintic();
    let g = gap_curve();
    let mut out = String::new();
    writeln!(out, "form: {}", f.form()).unwrap();
    let verdict = symmetric_subrank(&f, None)?;
    for level in &verdict.levels {
        writeln!(
            out,
            "level {}: {} ({})",
            level.r,
            status_word(level.status),
            evidence_kind(&level.evidence)
        )
        .unwrap();
    }
    let value = verdict
        .value()
        .map_or("undecided".to_string(), |v| v.to_string());
    writeln!(out, "symmetric subrank: {value}").unwrap();
    let rows: Vec<String> = g
        .to_strings()
        .iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect();
    writeln!(out, "curve: [{}]", rows.join(", ")).unwrap();
    let limit = laurent_limit(&f, &g)?;
    writeln!(out, "limit: {}", limit.describe()).unwrap();
    if let Some(h) = limit.form() {
        writeln!(
            out,
            "essential variables of limit: {}",
            essential_variable_count(h)?
        )
        .unwrap();
    }
    for r in 1..=3 {
        writeln!(
            out,
            "border witness at r = {r}: {}",
            border_witness_check(&f, &g, r)?
        )
        .unwrap();
    }
    writeln!(out, "border subrank cap: {}", border_subrank_cap(&verdict)).unwrap();
    Ok(out)
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn pair_line(label: &str, p: &(Poly, Poly), names: &[String]) -> String {
    format!(
        "{label}: [{} : {}]\n",
        p.0.fmt_with(names),
        p.1.fmt_with(names)
    )
}

fn cubic_hyperplane_family() -> Result<String> {
    let q = Field::Rational;
    let all = names(&["lam", "x0", "x1", "x2", "x3"]);
    let params = names(&["lam", "a0", "a1", "a2", "a3"]);
    let family = ParamForm::new(
        parse_poly("x1*x2^2 + x3^3 + x4^3 + x0*x2*x3*x4", 5, &q)?,
        1,
        3,
    )?;
    let sections = sections_through_first_point(&family)?;
    let mut section_names = params.clone();
    section_names.extend(names(&["x1", "x2", "x3"]));
    let mut out = String::new();
    writeln!(out, "family: {}", family.poly().fmt_with(&all)).unwrap();
    writeln!(
        out,
        "sections: {}",
        sections.poly().fmt_with(&section_names)
    )
    .unwrap();
    let (a, b) = eta_cubic_pair(&sections)?;
    let (a, b) = normalized_pair(&a, &b)?;
    writeln!(
        out,
        "gcd-normalized pair: {} terms : {} terms",
        a.len(),
        b.len()
    )
    .unwrap();
    let zero = q.zero();
    let restricted = (a.specialize(1, &zero), b.specialize(1, &zero));
    out.push_str(&pair_line("restricted to a0 = 0", &restricted, &params));
    let normalized = normalized_pair(&restricted.0, &restricted.1)?;
    out.push_str(&pair_line("normalized", &normalized, &params));
    let expected = (
        parse_poly("-x3^3*x4^3", 5, &q)?,
        parse_poly("16*x3^6 - 32*x3^3*x4^3 + 16*x4^6", 5, &q)?,
    );
    writeln!(
        out,
        "equals [-(a2*a3)^3 : 2^4*(a2^3 - a3^3)^2]: {}",
        same_projective_pair(&normalized, &expected)
    )
    .unwrap();
    Ok(out)
}

/// Rows `(b1, term)`: `f = x0 x1^3 + term`, curve `K` at `(a0, a1) = (1, b1)`.
pub fn quartic_rows() -> [((i64, i64), &'static str); 3] {
    [
        ((1, 12), "x1^2*x2^2 + x2^4"),
        ((0, 1), "x2^4"),
        ((0, 1), "x1*x2^3"),
    ]
}

fn quartic_tangent_rows() -> Result<String> {
    let q = Field::Rational;
    let params = names(&["a0", "a1", "a2"]);
    let mut out = String::new();
    for ((num, den), term) in quartic_rows() {
        let f = ParamForm::new(parse_poly(&format!("x0*x1^3 + {term}"), 3, &q)?, 0, 4)?;
        let sections = sections_through_first_point(&f)?;
        let (a, b) = eta_quartic_pair(&sections)?;
        let (a, b) = normalized_pair(&a, &b)?;
        let b1 = FieldElem::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)));
        let zero = q.zero();
        let h = normalized_pair(&a.specialize(0, &zero), &b.specialize(0, &zero))?;
        let at_k = |p: &Poly| p.specialize(0, &q.one()).specialize(1, &b1);
        let k = normalized_pair(&at_k(&a), &at_k(&b))?;
        writeln!(out, "row f4 = {term}, b1 = {}", b1).unwrap();
        out.push_str(&pair_line("  pi", &(a, b), &params));
        out.push_str(&pair_line("  pi(H)", &h, &params));
        out.push_str(&pair_line("  pi(K)", &k, &params));
        writeln!(out, "  pi(H) = pi(K): {}", same_projective_pair(&h, &k)).unwrap();
    }
    Ok(out)
}

fn unit_orbit_table() -> Result<String> {
    let mut out = String::new();
    writeln!(out, "orbit dimension of the unit tensor (expected r^2)").unwrap();
    for d in 3..=5u32 {
        let dims = (1..=6)
            .map(|r| unit_orbit_dimension(r, d).map(|v| v.to_string()))
            .collect::<Result<Vec<_>>>()?;
        writeln!(out, "d = {d}: {}", dims.join(" ")).unwrap();
    }
    writeln!(out, "slice witnesses (ceil(r/2) linear forms)").unwrap();
    for (d, field, top) in [(3u32, Field::Rational, 6usize), (4, Field::Prime(17), 4)] {
        for r in 1..=top {
            let forms = slice_witness_for_unit(r, d, &field)?;
            let ok = slice_witness_check(&unit_tensor_over(r, d, &field), &forms)?;
            writeln!(
                out,
                "d = {d}, {field}, r = {r}: {} forms, verified {ok}",
                forms.len()
            )
            .unwrap();
        }
    }
    writeln!(out, "essential variables of the unit tensor").unwrap();
    for d in 3..=5u32 {
        let counts = (1..=6)
            .map(|r| {
                essential_variable_count(&unit_tensor_over(r, d, &Field::Rational))
                    .map(|v| v.to_string())
            })
            .collect::<Result<Vec<_>>>()?;
        writeln!(out, "d = {d}: {}", counts.join(" ")).unwrap();
    }
    Ok(out)
}

fn bounds_table() -> Result<String> {
    let mut out = String::new();
    for d in 3..=5u32 {
        writeln!(out, "d = {d}").unwrap();
        writeln!(
            out,
            "{:>4} {:>6} {:>6} {:>7} {:>3} {:>5}",
            "n", "lower", "upper", "border", "hl", "ratio"
        )
        .unwrap();
        for n in 1..=30u64 {
            let b = bounds_report(n, d)?;
            let (lo, hi) = border_ratio_within(n, d)?;
            writeln!(
                out,
                "{:>4} {:>6} {:>6} {:>7} {:>3} {:>5}",
                n,
                b.generic_lower,
                generic_upper_bound(n, d)?,
                border_upper_bound(n, d)?,
                b.hl_condition_max_r,
                if lo && hi { "ok" } else { "out" }
            )
            .unwrap();
        }
    }
    let mut bracket = true;
    let mut agree = true;
    for n in 1..=1000u64 {
        let closed = cubic_lower_closed_form(n);
        bracket &= closed <= generic_upper_bound(n, 3)? as i64;
        agree &= closed.max(0) as u64 == hl_condition_max_r(n, 3)?;
    }
    writeln!(out, "cubic bracket holds for 1 <= n <= 1000: {bracket}").unwrap();
    writeln!(
        out,
        "cubic closed form matches the scan for 1 <= n <= 1000: {agree}"
    )
    .unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundles_match_golden() {
        for name in BUNDLES {
            let o = check_bundle(name).unwrap();
            assert!(o.matches, "{name}:\n{}", o.diff());
        }
    }

    #[test]
    fn unknown_bundle() {
        assert!(run_bundle("nope").is_err());
        assert!(golden("nope").is_none());
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_output("a  \r\nb\n\n\n"), "a\nb\n");
    }
}
