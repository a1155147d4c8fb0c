//! Golden-example corpus: one JSON case per worked example, each routed to
//! the matching computation and diffed against its expected payload.
//!
//! Expected payloads match actual output by key, recursively for objects.
//! A key `name_includes` instead checks that every listed item occurs in the
//! actual array `name`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::extensions::{duplication_report, parameter_times_ring_ulrich, verify_prop31};
use crate::families::{default_family_n, family_scan, FamilyTemplate};
use crate::field::{FieldSpec, PrimeField, Rationals};
use crate::par;
use crate::presentation::{verify_presentation, PresentationData};
use crate::semigroup::NumericalSemigroup;
use crate::trunc::series_terms;
use crate::ulrich::{default_bound, enumerate_monomial_ulrich, glued_structure, gluing_ulrich_set};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    Classify,
    Ulrich,
    Extension,
    Gluing,
    Presentation,
    Family,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    pub kind: CaseKind,
    pub input: Value,
    pub expected: Value,
    pub paper_anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub id: String,
    pub anchor: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
    pub error: Option<String>,
}

fn malformed(id: &str, reason: impl Into<String>) -> Error {
    Error::MalformedCase {
        id: id.to_string(),
        reason: reason.into(),
    }
}

fn field<'a>(case: &'a CorpusCase, key: &str) -> Result<&'a Value> {
    case.input
        .get(key)
        .ok_or_else(|| malformed(&case.id, format!("input lacks {key:?}")))
}

fn parse<T: for<'de> Deserialize<'de>>(case: &CorpusCase, key: &str) -> Result<T> {
    serde_json::from_value(field(case, key)?.clone())
        .map_err(|e| malformed(&case.id, format!("input {key:?}: {e}")))
}

fn opt<T: for<'de> Deserialize<'de>>(case: &CorpusCase, key: &str) -> Result<Option<T>> {
    match case.input.get(key) {
        None => Ok(None),
        Some(_) => parse(case, key).map(Some),
    }
}

fn semigroup(case: &CorpusCase, key: &str) -> Result<NumericalSemigroup> {
    let gens: Vec<i64> = parse(case, key)?;
    NumericalSemigroup::new(&gens)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Computes the actual payload for a case.
pub fn evaluate(case: &CorpusCase) -> Result<Value> {
    match case.kind {
        CaseKind::Classify => Ok(to_value(&classify(&semigroup(case, "semigroup")?)?)),
        CaseKind::Ulrich => {
            let sets = |h: &NumericalSemigroup, bound: Option<i64>| {
                let e = enumerate_monomial_ulrich(h, bound.unwrap_or_else(|| default_bound(h)));
                json!({ "ideals": e.gen_sets(), "bound": e.bound, "bound_too_small": e.bound_too_small })
            };
            let bound: Option<i64> = opt(case, "bound")?;
            if case.input.get("semigroups").is_some() {
                let all: Vec<Vec<i64>> = parse(case, "semigroups")?;
                let out: Vec<Value> = all
                    .iter()
                    .map(|g| Ok(sets(&NumericalSemigroup::new(g)?, bound)["ideals"].clone()))
                    .collect::<Result<_>>()?;
                Ok(json!({ "sets": out }))
            } else {
                Ok(sets(&semigroup(case, "semigroup")?, bound))
            }
        }
        CaseKind::Extension => {
            let h = semigroup(case, "semigroup")?;
            if let Some(a) = opt::<i64>(case, "parameter")? {
                let alpha: String = opt(case, "alpha")?.unwrap_or_else(|| "0".into());
                let n: i64 = opt(case, "N")?.unwrap_or(3 * h.conductor() + 2 * h.largest_generator() + 4);
                let terms = series_terms(&Rationals, &alpha)?;
                return Ok(to_value(&parameter_times_ring_ulrich(&h, a, &terms, Rationals, n)?));
            }
            let t = semigroup(case, "T")?;
            let mut out = to_value(&duplication_report(&h, &t)?);
            let alphas: Vec<String> = opt(case, "alphas")?.unwrap_or_default();
            if !alphas.is_empty() {
                let n: i64 = parse(case, "N")?;
                let certs: Vec<Value> = alphas
                    .iter()
                    .map(|a| {
                        let terms = series_terms(&Rationals, a)?;
                        let c = verify_prop31(&h, &t, &terms, Rationals, n)?;
                        Ok(json!({ "alpha": a, "holds": c.holds, "len_al_mod_l": c.len_al_mod_l }))
                    })
                    .collect::<Result<_>>()?;
                out["prop31"] = Value::Array(certs);
            }
            Ok(out)
        }
        CaseKind::Gluing => {
            let h1 = semigroup(case, "h1")?;
            let alpha: i64 = parse(case, "alpha")?;
            let set = gluing_ulrich_set(&h1, alpha)?;
            let structure = glued_structure(&h1, alpha)?;
            let mut out = to_value(&set);
            out["structure"] = to_value(&structure);
            Ok(out)
        }
        CaseKind::Presentation => {
            let data: PresentationData = serde_json::from_value(case.input.clone())
                .map_err(|e| malformed(&case.id, e.to_string()))?;
            Ok(to_value(&verify_presentation(&data)?))
        }
        CaseKind::Family => {
            let h = semigroup(case, "semigroup")?;
            let fs: FieldSpec = parse(case, "field")?;
            let template: FamilyTemplate = parse(case, "template")?;
            let samples: usize = opt(case, "samples")?.unwrap_or(20);
            let seed: u64 = opt(case, "seed")?.unwrap_or(0);
            let n = match opt::<i64>(case, "N")? {
                Some(n) => n,
                None => default_family_n(&h, &template)?,
            };
            let scan = match fs {
                FieldSpec::Rationals => family_scan(&h, Rationals, &template, samples, n, seed)?,
                FieldSpec::PrimeField(p) => family_scan(&h, PrimeField::new(p)?, &template, samples, n, seed)?,
            };
            let mut out = to_value(&scan);
            out["all_ulrich"] = json!(scan.all_ulrich());
            out["none_ulrich"] = json!(scan.none_ulrich());
            out["samples"] = json!(scan.entries.len());
            Ok(out)
        }
    }
}

/// Lists differences between `expected` and `actual` under `path`.
pub fn diff(expected: &Value, actual: &Value, path: &str, out: &mut Vec<String>) {
    match expected {
        Value::Object(map) => {
            let Some(act) = actual.as_object() else {
                out.push(format!("{path}: expected an object, got {actual}"));
                return;
            };
            for (k, v) in map {
                if let Some(base) = k.strip_suffix("_includes") {
                    includes(v, act, base, path, out);
                    continue;
                }
                let sub = format!("{path}/{k}");
                match act.get(k) {
                    Some(a) => diff(v, a, &sub, out),
                    None => out.push(format!("{sub}: missing")),
                }
            }
        }
        _ => {
            if expected != actual {
                out.push(format!("{path}: expected {expected}, got {actual}"));
            }
        }
    }
}

fn includes(want: &Value, act: &Map<String, Value>, base: &str, path: &str, out: &mut Vec<String>) {
    let sub = format!("{path}/{base}");
    let (Some(items), Some(have)) = (want.as_array(), act.get(base).and_then(Value::as_array)) else {
        out.push(format!("{sub}: inclusion check needs arrays"));
        return;
    };
    for item in items {
        if !have.contains(item) {
            out.push(format!("{sub}: missing {item}"));
        }
    }
}

pub fn run_case(case: &CorpusCase) -> CaseOutcome {
    let mut mismatches = Vec::new();
    let error = match evaluate(case) {
        Ok(actual) => {
            diff(&case.expected, &actual, "", &mut mismatches);
            None
        }
        Err(e) => Some(e.to_string()),
    };
    CaseOutcome {
        id: case.id.clone(),
        anchor: case.paper_anchor.clone(),
        passed: error.is_none() && mismatches.is_empty(),
        mismatches,
        error,
    }
}

/// Runs cases in parallel; outcomes are ordered by id.
pub fn run_cases(cases: &[CorpusCase]) -> Vec<CaseOutcome> {
    let mut out = par::map(cases, run_case);
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Reads every `*.json` file in `dir` as one case.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusCase>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| malformed(&dir.display().to_string(), e.to_string()))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_file(p)).collect()
}

pub fn load_file(path: &Path) -> Result<CorpusCase> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| malformed(&name, e.to_string()))?;
    let case: CorpusCase = serde_json::from_str(&text).map_err(|e| malformed(&name, e.to_string()))?;
    if case.paper_anchor.trim().is_empty() {
        return Err(malformed(&case.id, "empty anchor"));
    }
    Ok(case)
}
