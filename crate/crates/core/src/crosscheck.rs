//! The corpus-wide theorem suite with per-check reports and minimal failing witnesses.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::basis::{apply_basis_change, Composition};
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::eulerian::{admissible_compositions, volume_polynomials, Algorithm, EulerianEngine, VOLUME_MAX_N};
use crate::invariants::{catenary_via_integrals, g_from_men, men_vector, tutte_via_intersections, MenVector};
use crate::matroid::{CatenaryData, GInvariant, Matroid};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub cases: String,
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<String>,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub checks: Vec<CheckReport>,
    pub corpus: Vec<String>,
    pub max_elements: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<String>,
}

impl CrosscheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const CHECK_NAMES: [&str; 6] = ["five-way-agreement", "gamma-identification", "tutte-equality", "catenary-equality", "g-invariant-biconditional", "basis-change-identity"];

/// `None` on success, otherwise the witness describing the failure.
type Outcome = Option<Value>;

fn error_value(context: &Value, e: Error) -> Value {
    json!({"case": context, "error": e.to_string()})
}

fn error_witness(context: Value, e: Error) -> Outcome {
    Some(error_value(&context, e))
}

/// Every case runs; the earliest failure in corpus order becomes the witness.
fn run_check<T: Sync>(name: &'static str, cases: &[T], timing: bool, f: impl Fn(&T) -> Outcome + Sync) -> CheckReport {
    let start = Instant::now();
    let outcomes: Vec<Outcome> = cases.par_iter().map(&f).collect();
    let witness = outcomes.into_iter().flatten().next();
    CheckReport {
        cases: cases.len().to_string(),
        name,
        passed: witness.is_none(),
        runtime_ms: timing.then(|| start.elapsed().as_millis().to_string()),
        witness,
    }
}

fn five_way(entry: &CorpusEntry) -> Outcome {
    let mut engine = EulerianEngine::new();
    for a in admissible_compositions(&entry.matroid) {
        let mut values = BTreeMap::new();
        for alg in Algorithm::ALL {
            match engine.matroidal(alg, &entry.matroid, &a) {
                Ok(v) => values.insert(alg.name(), v),
                Err(e) => return error_witness(json!({"matroid": entry.name, "a": a.to_string(), "algorithm": alg.name()}), e),
            };
        }
        let first = values.values().next().expect("five algorithms");
        if values.values().any(|v| v != first) {
            let values: BTreeMap<_, _> = values.into_iter().map(|(k, v)| (k, v.to_string())).collect();
            return Some(json!({"matroid": entry.name, "a": a.to_string(), "values": values}));
        }
    }
    None
}

fn gamma_composition(m: &Matroid, l: usize) -> Composition {
    let mut v = vec![0; m.num_elements() - 1];
    if let Some(first) = v.first_mut() {
        *first += l as u32;
    }
    if let Some(last) = v.last_mut() {
        *last += (m.rank() - 1 - l) as u32;
    }
    Composition::new(v)
}

fn gamma(entry: &CorpusEntry) -> Outcome {
    let m = &entry.matroid;
    let mut engine = EulerianEngine::new();
    for l in 0..m.rank() {
        let a = gamma_composition(m, l);
        let context = json!({"matroid": entry.name, "a": a.to_string(), "l": l.to_string()});
        let lhs = match engine.matroidal_closed(m, &a) {
            Ok(v) => v,
            Err(e) => return error_witness(context, e),
        };
        let rhs = match m.gamma(l as i64) {
            Ok(v) => v,
            Err(e) => return error_witness(context, e),
        };
        if lhs != rhs.into() {
            return Some(json!({"case": context, "eulerian": lhs.to_string(), "gamma": rhs.to_string()}));
        }
    }
    None
}

fn tutte(entry: &CorpusEntry) -> Outcome {
    let context = json!({"matroid": entry.name});
    match tutte_via_intersections(&entry.matroid) {
        Ok(t) if t == entry.matroid.tutte() => None,
        Ok(t) => Some(json!({
            "case": context,
            "intersections": t.display_with(&["x", "y"]),
            "rank_expansion": entry.matroid.tutte().display_with(&["x", "y"]),
        })),
        Err(e) => error_witness(context, e),
    }
}

fn catenary_json(c: &CatenaryData) -> Value {
    let map: BTreeMap<String, String> = c
        .counts
        .iter()
        .map(|(k, v)| (k.iter().map(ToString::to_string).collect::<Vec<_>>().join(","), v.to_string()))
        .collect();
    json!(map)
}

fn catenary(entry: &CorpusEntry) -> Outcome {
    let context = json!({"matroid": entry.name});
    let expected = entry.matroid.catenary();
    for (route, computed) in [("integrals", catenary_via_integrals(&entry.matroid)), ("eulerian", g_from_men(&entry.matroid))] {
        match computed {
            Ok(c) if c == expected => {}
            Ok(c) => return Some(json!({"case": context, "route": route, "computed": catenary_json(&c), "flags": catenary_json(&expected)})),
            Err(e) => return error_witness(context, e),
        }
    }
    None
}

fn reversal(m: usize) -> Vec<usize> {
    (0..m).rev().collect()
}

struct Fingerprint<'a> {
    entry: &'a CorpusEntry,
    g: GInvariant,
    men: MenVector,
}

fn biconditional(entries: &[&CorpusEntry], timing: bool) -> CheckReport {
    let start = Instant::now();
    let prints: Vec<std::result::Result<Fingerprint, Value>> = entries
        .par_iter()
        .map(|&entry| {
            let context = json!({"matroid": entry.name});
            let fail = |e| error_value(&context, e);
            let g = entry.matroid.g_invariant().map_err(fail)?;
            let men = men_vector(&entry.matroid).map_err(fail)?;
            let relabeled = entry.matroid.relabel(&reversal(entry.matroid.num_elements())).map_err(fail)?;
            let g_rel = relabeled.g_invariant().map_err(fail)?;
            let men_rel = men_vector(&relabeled).map_err(fail)?;
            if g != g_rel || men != men_rel {
                return Err(json!({"case": context, "relabeled": true, "g_equal": g == g_rel, "men_equal": men == men_rel}));
            }
            Ok(Fingerprint { entry, g, men })
        })
        .collect();
    let mut witness = None;
    let mut ok = Vec::new();
    for p in prints {
        match p {
            Ok(f) => ok.push(f),
            Err(w) => {
                witness.get_or_insert(w);
            }
        }
    }
    let mut pairs = 0usize;
    for (i, p) in ok.iter().enumerate() {
        for q in &ok[i + 1..] {
            let (mp, mq) = (&p.entry.matroid, &q.entry.matroid);
            if (mp.num_elements(), mp.rank()) != (mq.num_elements(), mq.rank()) {
                continue;
            }
            pairs += 1;
            let g_equal = p.g == q.g;
            let men_equal = p.men == q.men;
            if g_equal != men_equal && witness.is_none() {
                witness = Some(json!({"pair": [p.entry.name, q.entry.name], "g_equal": g_equal, "men_equal": men_equal}));
            }
        }
    }
    CheckReport {
        cases: (entries.len() + pairs).to_string(),
        name: CHECK_NAMES[4],
        passed: witness.is_none(),
        runtime_ms: timing.then(|| start.elapsed().as_millis().to_string()),
        witness,
    }
}

fn basis_identity(n: &usize) -> Outcome {
    let context = json!({"n": n.to_string()});
    let (p, q) = match volume_polynomials(*n) {
        Ok(pq) => pq,
        Err(e) => return error_witness(context, e),
    };
    match apply_basis_change(*n, &q) {
        Ok(image) if image == p => None,
        Ok(image) => {
            let names: Vec<String> = (1..=*n).map(|i| format!("x{i}")).collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            Some(json!({"case": context, "image": image.display_with(&names), "p": p.display_with(&names)}))
        }
        Err(e) => error_witness(context, e),
    }
}

/// Runs all six checks over the entries with at most `max_elements` elements.
pub fn run_crosscheck(corpus: &[CorpusEntry], max_elements: usize, timing: bool) -> Result<CrosscheckReport> {
    let start = Instant::now();
    let mut entries: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.matroid.num_elements() <= max_elements).collect();
    entries.sort_by_key(|e| (e.matroid.num_elements(), e.matroid.rank()));
    let loopless: Vec<&CorpusEntry> = entries.iter().copied().filter(|e| e.matroid.rank() >= 1 && e.matroid.is_loopless()).collect();
    let dims: Vec<usize> = (1..=max_elements.saturating_sub(1).min(VOLUME_MAX_N)).collect();
    let checks = vec![
        run_check(CHECK_NAMES[0], &entries, timing, |e| five_way(e)),
        run_check(CHECK_NAMES[1], &loopless, timing, |e| gamma(e)),
        run_check(CHECK_NAMES[2], &loopless, timing, |e| tutte(e)),
        run_check(CHECK_NAMES[3], &loopless, timing, |e| catenary(e)),
        biconditional(&loopless, timing),
        run_check(CHECK_NAMES[5], &dims, timing, basis_identity),
    ];
    Ok(CrosscheckReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
        corpus: entries.iter().map(|e| e.name.clone()).collect(),
        max_elements: max_elements.to_string(),
        runtime_ms: timing.then(|| start.elapsed().as_millis().to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{default_corpus, parse_corpus};

    #[test]
    fn default_corpus_passes_up_to_four_elements() {
        let report = run_crosscheck(&default_corpus(), 4, false).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
        assert!(report.passed);
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn report_is_deterministic_without_timing() {
        let corpus = default_corpus();
        let a = run_crosscheck(&corpus, 3, false).unwrap().to_json();
        let b = run_crosscheck(&corpus, 3, false).unwrap().to_json();
        assert_eq!(a, b);
        assert!(!a.contains("runtime_ms"));
        assert!(run_crosscheck(&corpus, 3, true).unwrap().to_json().contains("runtime_ms"));
    }

    #[test]
    fn earliest_failure_is_the_witness() {
        let cases = [1u32, 2, 3, 4, 5, 6];
        let report = run_check("synthetic", &cases, false, |&c| (c % 2 == 0).then(|| json!({"case": c})));
        assert!(!report.passed);
        assert_eq!(report.witness, Some(json!({"case": 2})));
        assert_eq!(report.cases, "6");
    }

    #[test]
    fn loopy_entries_only_enter_five_way() {
        let corpus = parse_corpus(r#"[{"bases":[[0,1]],"elements":3,"kind":"bases","name":"loopy"}]"#).unwrap();
        let report = run_crosscheck(&corpus, 3, false).unwrap();
        assert!(report.passed);
        assert_eq!(report.checks[0].cases, "1");
        assert_eq!(report.checks[2].cases, "0");
    }
}
