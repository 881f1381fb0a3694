use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

/// Upper bound on failing cases listed per check; the count is always exact.
const MAX_LISTED: usize = 20;

pub type CaseFn = Box<dyn Fn(&mut ChaCha8Rng) -> quatmod::Result<Vec<f64>> + Send + Sync>;

/// One property checked on `cases` independent random inputs. Each case returns one
/// residual per metric and passes when all are finite and at most `threshold`.
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub threshold: f64,
    pub metrics: &'static [&'static str],
    /// Reported but excluded from the pass/fail decision.
    pub informational: bool,
    pub run: CaseFn,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        cases: usize,
        threshold: f64,
        metrics: &'static [&'static str],
        run: impl Fn(&mut ChaCha8Rng) -> quatmod::Result<Vec<f64>> + Send + Sync + 'static,
    ) -> Self {
        Check { name: name.into(), cases, threshold, metrics, informational: false, run: Box::new(run) }
    }

    /// A check whose residuals are 0 (holds) or 1 (fails).
    pub fn exact(
        name: impl Into<String>,
        cases: usize,
        metrics: &'static [&'static str],
        run: impl Fn(&mut ChaCha8Rng) -> quatmod::Result<Vec<bool>> + Send + Sync + 'static,
    ) -> Self {
        Check::new(name, cases, 0.0, metrics, move |rng| {
            Ok(run(rng)?.into_iter().map(|ok| if ok { 0.0 } else { 1.0 }).collect())
        })
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

pub fn stream_id(suite: usize, check: usize, case: usize) -> u64 {
    ((suite as u64) << 48) | ((check as u64) << 32) | case as u64
}

pub fn case_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Default)]
pub struct SuiteTotals {
    pub cases: usize,
    pub failures: usize,
    pub checks: Vec<Value>,
    pub failed_cases: Vec<Value>,
    pub timing_ms: Map<String, Value>,
}

pub fn run_checks(suite: &str, suite_index: usize, checks: &[Check], seed: u64, totals: &mut SuiteTotals) {
    for (ci, check) in checks.iter().enumerate() {
        let start = Instant::now();
        let results: Vec<quatmod::Result<Vec<f64>>> = (0..check.cases)
            .into_par_iter()
            .map(|i| (check.run)(&mut case_rng(seed, stream_id(suite_index, ci, i))))
            .collect();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let mut worst = vec![0.0f64; check.metrics.len()];
        let mut failures = 0;
        let mut listed = 0;
        for (i, r) in results.iter().enumerate() {
            let bad = match r {
                Ok(res) => {
                    for (w, x) in worst.iter_mut().zip(res) {
                        *w = if x.is_nan() || w.is_nan() { f64::NAN } else { w.max(*x) };
                    }
                    res.len() != check.metrics.len() || res.iter().any(|x| !(x.is_finite() && *x <= check.threshold))
                }
                Err(_) => true,
            };
            if !bad {
                continue;
            }
            failures += 1;
            if check.informational || listed >= MAX_LISTED {
                continue;
            }
            listed += 1;
            let mut entry = json!({
                "suite": suite,
                "check": check.name,
                "case": i,
                "inputs": { "seed": seed, "stream": stream_id(suite_index, ci, i) },
            });
            match r {
                Ok(res) => entry["residuals"] = metrics_object(check.metrics, res),
                Err(e) => entry["error"] = json!(e.to_string()),
            }
            totals.failed_cases.push(entry);
        }
        let mut summary = json!({
            "suite": suite,
            "name": check.name,
            "cases": check.cases,
            "failures": failures,
            "threshold": check.threshold,
            "max_residual": metrics_object(check.metrics, &worst),
        });
        if check.informational {
            summary["informational"] = json!(true);
        } else {
            totals.failures += failures;
            totals.cases += check.cases;
        }
        totals.checks.push(summary);
        totals.timing_ms.insert(format!("{suite}/{}", check.name), json!(elapsed));
    }
}

fn metrics_object(names: &[&str], values: &[f64]) -> Value {
    let mut m = Map::new();
    for (n, v) in names.iter().zip(values) {
        m.insert((*n).to_string(), json!(v));
    }
    Value::Object(m)
}
