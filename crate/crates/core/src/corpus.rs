//! The bundled example corpus and its expectation files.

use std::sync::Arc;

use serde_json::Value;

use crate::construct::{build_couple, end_to_end_with};
use crate::group::GroupData;
use crate::hirai::{closed_form_character, is_yb_admissible, thoma_restriction, HiraiParams};
use crate::io::{
    couple_parts_from_json, element_from_json, params_from_json, parse_json, rational_from_json, rmatrix_from_json,
    scalar_from_json,
};
use crate::report::Report;
use crate::rmatrix::{extract_thoma, verify_rmatrix, ThomaParams};
use crate::rng::Lcg64;
use crate::wreath::WreathElement;
use crate::{CycloScalar, Error, Result};

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".json")), include_str!(concat!("../corpus/", $name, ".expect.json")))),*]
    };
}

/// `(name, document, expectation)`.
pub const CORPUS: &[(&str, &str, &str)] = corpus![
    "flip2",
    "pm2",
    "diag_bad",
    "z2_half_half",
    "s3_std",
    "s3_triv_std",
    "z3_eps_mix",
    "q8_h",
    "q8_mixed",
    "z2_mu",
    "bad_order",
    "s3_element",
    "z2_pm_couple",
    "z2_swap_couple",
];

/// Parameter sets of the end-to-end suite.
pub const THEOREM_SETS: &[&str] = &["z2_half_half", "s3_std", "s3_triv_std", "z3_eps_mix", "q8_h"];

pub fn document(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|c| c.0 == name).map(|c| c.1)
}

pub fn corpus_params(name: &str) -> Result<HiraiParams> {
    let text = document(name).ok_or_else(|| Error::Internal(format!("no corpus entry {name}")))?;
    params_from_json(&parse_json(text, name)?, "$")
}

/// Seeded sample of `count` elements with support at most `max_support`.
pub fn sample_elements(data: &GroupData, seed: u64, count: usize, max_support: usize) -> Vec<WreathElement> {
    let mut rng = Lcg64::new(seed);
    (0..count)
        .map(|_| WreathElement::random(data.group.clone(), &mut rng, max_support))
        .collect()
}

fn thoma_from(expect: &Value) -> Result<ThomaParams> {
    let list = |key: &str| -> Result<Vec<_>> {
        let path = format!("$.{key}");
        expect[key]
            .as_array()
            .ok_or_else(|| Error::schema(&path, "expected an array"))?
            .iter()
            .enumerate()
            .map(|(k, x)| rational_from_json(x, &format!("{path}[{k}]")))
            .collect()
    };
    ThomaParams::new(list("alpha")?, list("beta")?)
}

fn expected_characters(
    expect: &Value,
    group: &Arc<crate::group::FiniteGroup>,
) -> Result<Vec<(WreathElement, CycloScalar)>> {
    let Some(list) = expect["characters"].as_array() else {
        return Ok(Vec::new());
    };
    list.iter()
        .enumerate()
        .map(|(k, c)| {
            let path = format!("$.characters[{k}]");
            let g = element_from_json(&c["element"], group.clone(), &format!("{path}.element"))?;
            let v = scalar_from_json(&c["value"], &format!("{path}.value"))?;
            Ok((g, v))
        })
        .collect()
}

fn expect_error(report: &mut Report, name: &str, expect: &Value, got: std::result::Result<(), Error>) {
    let want = expect["error"].as_str().unwrap_or("");
    match got {
        Ok(()) => report.fail(name, format!("expected {want}, but the check passed")),
        Err(e) => report.check(name, e.kind() == want, || format!("expected {want}, got {e}")),
    }
}

fn run_case(report: &mut Report, name: &str, doc: &str, expect: &str) -> Result<()> {
    let v = parse_json(doc, name)?;
    let expect = parse_json(expect, &format!("{name}.expect"))?;
    match expect["kind"].as_str() {
        Some("rmatrix") => {
            let (m, d) = rmatrix_from_json(&v, "$")?;
            let certified = verify_rmatrix(m, d);
            if expect["certified"] == Value::Bool(true) {
                let r = certified?;
                let got = extract_thoma(&r)?;
                let want = thoma_from(&expect)?;
                report.check(name, got == want, || format!("extracted {got}, expected {want}"));
            } else {
                expect_error(report, name, &expect, certified.map(drop));
            }
        }
        Some("params") => {
            let parsed = params_from_json(&v, "$");
            if expect["valid"] == Value::Bool(false) {
                expect_error(report, name, &expect, parsed.map(drop));
                return Ok(());
            }
            let p = parsed?;
            let adm = is_yb_admissible(&p);
            let mut problems = Vec::new();
            if Value::Bool(adm.verdict) != expect["admissible"] {
                problems.push(format!("admissible = {}", adm.verdict));
            }
            if let Some(viol) = expect.get("violations") {
                if serde_json::to_value(&adm.violations).unwrap() != *viol {
                    problems.push(format!("violations = {:?}", adm.violations));
                }
            }
            for (g, want) in expected_characters(&expect, p.group())? {
                let got = closed_form_character(&p, &g)?;
                if got != want {
                    problems.push(format!("closed form at {g} = {got}, expected {want}"));
                }
            }
            if adm.verdict {
                if expect["minimal_d"].as_u64() != adm.minimal_d {
                    problems.push(format!("minimal_d = {:?}", adm.minimal_d));
                }
                let restricted = thoma_restriction(&p);
                let want = thoma_from(&expect)?;
                if restricted != want {
                    problems.push(format!("restriction {restricted}, expected {want}"));
                }
                let (couple, layout) = build_couple(&p, None)?;
                for (g, want) in expected_characters(&expect, p.group())? {
                    let got = couple.character(&g)?;
                    if got != want {
                        problems.push(format!("trace character at {g} = {got}, expected {want}"));
                    }
                }
                let samples = expect["samples"].as_u64().unwrap_or(0) as usize;
                let seed = expect["seed"].as_u64().unwrap_or(0);
                let sample = sample_elements(p.data(), seed, samples, 4);
                let e2e = end_to_end_with(&p, &couple, &layout, &sample)?;
                if !e2e.passed() {
                    problems.push(format!("end-to-end: {e2e:?}"));
                }
            }
            report.check(name, problems.is_empty(), || problems.join("; "));
        }
        Some("element") => {
            let data = GroupData::catalog(expect["group"].as_str().unwrap_or(""))?;
            let g = element_from_json(&v, data.group.clone(), "$")?;
            let dec = g.standard_decomposition();
            let elementary: Vec<(usize, usize)> = serde_json::from_value(expect["elementary"].clone())
                .map_err(|e| Error::schema("$.elementary", e.to_string()))?;
            let cyclic: Vec<(Vec<usize>, usize)> = expect["cyclic"]
                .as_array()
                .map(|a| {
                    a.iter()
                        .map(|c| {
                            let cycle = serde_json::from_value(c["cycle"].clone()).unwrap_or_default();
                            (cycle, c["product"].as_u64().unwrap_or(u64::MAX) as usize)
                        })
                        .collect()
                })
                .unwrap_or_default();
            let got: Vec<(Vec<usize>, usize)> =
                dec.cyclic.iter().map(|c| (c.cycle.clone(), c.product(&data.group))).collect();
            let ok = dec.elementary == elementary && got == cyclic && dec.recompose(&data.group) == g;
            report.check(name, ok, || format!("decomposition {dec:?}"));
        }
        Some("couple") => {
            let certified = couple_parts_from_json(&v, "$")?.certify();
            if expect["certified"] == Value::Bool(true) {
                let c = certified?;
                let mut problems = Vec::new();
                for (g, want) in expected_characters(&expect, c.group())? {
                    let got = c.character(&g)?;
                    if got != want {
                        problems.push(format!("character at {g} = {got}, expected {want}"));
                    }
                }
                report.check(name, problems.is_empty(), || problems.join("; "));
            } else {
                expect_error(report, name, &expect, certified.map(drop));
            }
        }
        other => return Err(Error::schema("$.kind", format!("unknown expectation kind {other:?}"))),
    }
    Ok(())
}

/// Runs every corpus entry against its expectation.
pub fn selftest() -> Report {
    let mut report = Report::new("selftest");
    for (name, doc, expect) in CORPUS {
        report.input(&format!("corpus/{name}.json"), doc.as_bytes());
        if let Err(e) = run_case(&mut report, name, doc, expect) {
            report.fail(name, e.to_string());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes() {
        let r = selftest();
        assert!(r.passed(), "{}", r.to_text(false));
        assert_eq!(r.findings.len(), CORPUS.len());
    }
}
