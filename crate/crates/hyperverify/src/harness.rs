//! Sweep execution and reporting.
//!
//! Instances are enumerated in a deterministic order (integer ranges, then
//! grids, then sampled tuples), evaluated independently (in parallel), and
//! folded into a report in enumeration order, so reports are byte-identical
//! across runs with the same config and seed. Per-instance evaluator errors
//! become skips with a reason: a pole is an excluded instance, not a
//! falsified identity.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    evaluate_sides, validity, IdentityId, IdentityInstance, ParamKind, ParamMap, ParamValue,
    SideValue, Validity,
};
use crate::config::SweepConfig;
use crate::error::Result;
use crate::numeric::NumericSettings;
use crate::rational::Rational;
use crate::sampler::RationalSampler;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub enumerated: u64,
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FailureRecord {
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    /// For series comparisons: index and values of the first differing
    /// coefficient.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_diff_index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_coeff: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SkipRecord {
    pub params: BTreeMap<String, String>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Meta {
    pub tool_version: String,
    pub catalog_version: String,
    /// Set when the sweep enumerated or validated nothing worth checking.
    pub nothing_checked: bool,
}

/// The sweep result. The serialized form is the stable object
/// `{config, totals, failures, skips, meta}`; wall time is carried in memory
/// only so that reports stay byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: SweepConfig,
    pub totals: Totals,
    pub failures: Vec<FailureRecord>,
    pub skips: Vec<SkipRecord>,
    pub meta: Meta,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl VerificationReport {
    /// `failed == 0` is the machine-readable success criterion.
    pub fn success(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn params_to_strings(params: &ParamMap) -> BTreeMap<String, String> {
    params
        .iter()
        .map(|(k, v)| (k.clone(), v.to_string()))
        .collect()
}

/// Deterministic instance enumeration: integer-range combinations (schema
/// order, first parameter slowest), then grid combinations, then sampled
/// tuples.
pub fn enumerate_instances(config: &SweepConfig) -> Result<Vec<ParamMap>> {
    let id = config.identity_id()?;
    let schema = id.schema();

    let mut int_axes: Vec<(&str, Vec<i64>)> = Vec::new();
    let mut grid_axes: Vec<(&str, Vec<Rational>)> = Vec::new();
    for p in schema.params {
        if let Some([lo, hi]) = config.int_ranges.get(p.name) {
            let values: Vec<i64> = (*lo..=*hi).collect();
            int_axes.push((p.name, values));
        } else if let Some(values) = config.rational_grids.get(p.name) {
            grid_axes.push((p.name, values.clone()));
        }
    }

    let sampled_specs = config.sampled_params()?;
    let mut samples: Vec<Vec<(String, Rational)>> = Vec::new();
    if sampled_specs.is_empty() {
        samples.push(Vec::new());
    } else {
        let mut sampler = RationalSampler::new(config.seed);
        let count = config.rationals.as_ref().map_or(1, |s| s.count);
        for _ in 0..count {
            let mut tuple = Vec::new();
            for (name, q, lo, hi) in &sampled_specs {
                tuple.push((name.clone(), sampler.draw(*q, *lo, *hi)?));
            }
            samples.push(tuple);
        }
    }

    // mixed-radix digits, first axis slowest; a zero-length axis makes the
    // whole product empty (e.g. an empty integer range)
    fn digits(mut index: usize, lens: &[usize]) -> Vec<usize> {
        let mut out = vec![0; lens.len()];
        for (slot, len) in out.iter_mut().zip(lens).rev() {
            *slot = index % len;
            index /= len;
        }
        out
    }

    let int_lens: Vec<usize> = int_axes.iter().map(|(_, v)| v.len()).collect();
    let grid_lens: Vec<usize> = grid_axes.iter().map(|(_, v)| v.len()).collect();
    let int_total: usize = int_lens.iter().product();
    let grid_total: usize = grid_lens.iter().product();

    let mut instances = Vec::new();
    for i in 0..int_total {
        let int_digits = digits(i, &int_lens);
        for g in 0..grid_total {
            let grid_digits = digits(g, &grid_lens);
            for sample in &samples {
                let mut params = ParamMap::new();
                for ((name, values), &d) in int_axes.iter().zip(&int_digits) {
                    // integer ranges may cover rational-kind parameters
                    // (integer-valued rationals, e.g. a terminating gamma)
                    let kind = schema.params.iter().find(|p| p.name == *name).unwrap().kind;
                    let value = match kind {
                        ParamKind::Integer => ParamValue::Int(values[d]),
                        ParamKind::Rational => ParamValue::Rat(Rational::from_int(values[d])),
                    };
                    params.insert((*name).to_string(), value);
                }
                for ((name, values), &d) in grid_axes.iter().zip(&grid_digits) {
                    params.insert((*name).to_string(), ParamValue::Rat(values[d].clone()));
                }
                for (name, v) in sample {
                    params.insert(name.clone(), ParamValue::Rat(v.clone()));
                }
                instances.push(params);
            }
        }
    }
    Ok(instances)
}

enum Outcome {
    Passed,
    Failed(FailureRecord),
    Skipped(SkipRecord),
}

enum Comparison {
    Pass,
    Fail {
        lhs: String,
        rhs: String,
        first_diff: Option<(u64, String, String)>,
    },
}

fn compare_sides(lhs: &SideValue, rhs: &SideValue, numeric_tol: &Rational) -> Comparison {
    match (lhs, rhs) {
        (SideValue::Exact(a), SideValue::Exact(b)) => {
            if a == b {
                Comparison::Pass
            } else {
                Comparison::Fail {
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                    first_diff: None,
                }
            }
        }
        (SideValue::Series(a), SideValue::Series(b)) => match a.first_difference(b) {
            None => Comparison::Pass,
            Some((i, x, y)) => Comparison::Fail {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                first_diff: Some((i as u64, x.to_string(), y.to_string())),
            },
        },
        (SideValue::Numeric(a), SideValue::Numeric(b)) => {
            let diff = (a.to_rational() - b.to_rational()).abs();
            if diff <= *numeric_tol {
                Comparison::Pass
            } else {
                Comparison::Fail {
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                    first_diff: None,
                }
            }
        }
        _ => Comparison::Fail {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            first_diff: None,
        },
    }
}

fn evaluate_one(
    id: IdentityId,
    config: &SweepConfig,
    settings: &NumericSettings,
    numeric_tol: &Rational,
    params: &ParamMap,
) -> Outcome {
    let instance = IdentityInstance {
        id,
        params: params.clone(),
        mode: config.mode,
        order: config.order,
        numeric: settings.clone(),
    };
    match validity(&instance) {
        Err(e) => Outcome::Skipped(SkipRecord {
            params: params_to_strings(params),
            reason: format!("parameter error: {e}"),
        }),
        Ok(Validity::Invalid { reason }) => Outcome::Skipped(SkipRecord {
            params: params_to_strings(params),
            reason,
        }),
        Ok(Validity::Valid { .. }) => match evaluate_sides(&instance, config.mutant) {
            Err(e) => Outcome::Skipped(SkipRecord {
                params: params_to_strings(params),
                reason: format!("evaluation error: {e}"),
            }),
            Ok((lhs, rhs)) => match compare_sides(&lhs, &rhs, numeric_tol) {
                Comparison::Pass => Outcome::Passed,
                Comparison::Fail {
                    lhs,
                    rhs,
                    first_diff,
                } => {
                    let (first_diff_index, lhs_coeff, rhs_coeff) = match first_diff {
                        Some((i, a, b)) => (Some(i), Some(a), Some(b)),
                        None => (None, None, None),
                    };
                    Outcome::Failed(FailureRecord {
                        params: params_to_strings(params),
                        lhs,
                        rhs,
                        first_diff_index,
                        lhs_coeff,
                        rhs_coeff,
                    })
                }
            },
        },
    }
}

/// Runs one sweep: enumerate, evaluate (parallel, order-preserving),
/// compare, and fold into a report.
pub fn run_sweep(config: &SweepConfig) -> Result<VerificationReport> {
    config.validate()?;
    let started = Instant::now();
    let id = config.identity_id()?;
    let settings = config.numeric_settings()?;
    let numeric_tol = &settings.target_abs_err * &Rational::from_int(2);
    let instances = enumerate_instances(config)?;

    let outcomes: Vec<Outcome> = instances
        .par_iter()
        .map(|params| evaluate_one(id, config, &settings, &numeric_tol, params))
        .collect();

    let mut totals = Totals {
        enumerated: instances.len() as u64,
        ..Totals::default()
    };
    let mut failures = Vec::new();
    let mut skips = Vec::new();
    for outcome in outcomes {
        match outcome {
            Outcome::Passed => {
                totals.checked += 1;
                totals.passed += 1;
            }
            Outcome::Failed(record) => {
                totals.checked += 1;
                totals.failed += 1;
                failures.push(record);
            }
            Outcome::Skipped(record) => {
                totals.skipped += 1;
                skips.push(record);
            }
        }
    }
    let meta = Meta {
        tool_version: crate::VERSION.to_string(),
        catalog_version: crate::CATALOG_VERSION.to_string(),
        nothing_checked: totals.checked == 0,
    };
    Ok(VerificationReport {
        config: config.clone(),
        totals,
        failures,
        skips,
        meta,
        wall_ms: started.elapsed().as_millis(),
    })
}

/// Greedy counterexample shrinking: steps every integer parameter toward
/// zero and every sampled numerator toward zero while the failure persists.
/// Non-failing inputs are returned unchanged.
pub fn shrink_counterexample(config: &SweepConfig, start: &ParamMap) -> Result<ParamMap> {
    config.validate()?;
    let id = config.identity_id()?;
    let settings = config.numeric_settings()?;
    let numeric_tol = &settings.target_abs_err * &Rational::from_int(2);

    let fails = |params: &ParamMap| -> bool {
        matches!(
            evaluate_one(id, config, &settings, &numeric_tol, params),
            Outcome::Failed(_)
        )
    };

    if !fails(start) {
        return Ok(start.clone());
    }
    let mut current = start.clone();
    loop {
        let mut improved = false;
        let names: Vec<String> = current.keys().cloned().collect();
        for name in names {
            let candidate = match &current[&name] {
                ParamValue::Int(v) if *v != 0 => Some(ParamValue::Int(v - v.signum())),
                ParamValue::Rat(x) => match (x.numer().to_i64(), x.denom().to_i64()) {
                    (Some(p), Some(q)) if p != 0 => {
                        Some(ParamValue::Rat(Rational::new(p - p.signum(), q)))
                    }
                    _ => None,
                },
                _ => None,
            };
            if let Some(value) = candidate {
                let mut next = current.clone();
                next.insert(name.clone(), value);
                if fails(&next) {
                    current = next;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Mutant;
    use crate::config::SweepConfig;

    fn cor1_config(mutant: Option<Mutant>) -> SweepConfig {
        let mut cfg = SweepConfig::from_toml_str(
            r#"
            [sweep]
            identity = "COR1"
            seed = 11
            [sweep.int_ranges]
            m1 = [-2, 2]
            m2 = [-2, 2]
            n = [0, 5]
            [sweep.rationals]
            denominators = [7, 11]
            numerator_bound = 15
            count = 4
        "#,
        )
        .unwrap();
        cfg.mutant = mutant;
        cfg
    }

    #[test]
    fn clean_sweep_passes_and_counts_add_up() {
        let report = run_sweep(&cor1_config(None)).unwrap();
        assert!(report.success());
        assert!(report.totals.checked > 0);
        assert_eq!(
            report.totals.checked + report.totals.skipped,
            report.totals.enumerated
        );
        assert_eq!(report.totals.checked, report.totals.passed);
        assert!(!report.meta.nothing_checked);
        // every skip carries a reason
        assert!(report.skips.iter().all(|s| !s.reason.is_empty()));
    }

    #[test]
    fn corrupted_evaluator_is_detected() {
        let report = run_sweep(&cor1_config(Some(Mutant::Cor1RhsShiftedPochhammer))).unwrap();
        assert!(report.totals.failed > 0);
        assert!(!report.failures.is_empty());
        let f = &report.failures[0];
        assert!(!f.lhs.is_empty() && !f.rhs.is_empty());
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let a = run_sweep(&cor1_config(None)).unwrap().to_json();
        let b = run_sweep(&cor1_config(None)).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn seed_changes_samples_not_the_verdict() {
        let mut cfg = cor1_config(None);
        cfg.seed = 999;
        let a = run_sweep(&cor1_config(None)).unwrap();
        let b = run_sweep(&cfg).unwrap();
        assert_ne!(a.to_json(), b.to_json());
        assert!(a.success() && b.success());
    }

    #[test]
    fn empty_range_yields_empty_report() {
        let mut cfg = cor1_config(None);
        cfg.int_ranges.insert("n".into(), [5, 0]);
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.totals.enumerated, 0);
        assert_eq!(report.totals.checked, 0);
        assert_eq!(report.totals.failed, 0);
        assert!(report.meta.nothing_checked);
        assert!(report.success());
    }

    #[test]
    fn only_invalid_instances_set_the_warning_flag() {
        let cfg = SweepConfig::from_toml_str(
            r#"
            [sweep]
            identity = "THM2"
            seed = 5
            [sweep.int_ranges]
            m1 = [0, 0]
            m2 = [0, 0]
            [sweep.rationals]
            denominators = [7, 11]
            numerator_bound = 10
            count = 3
        "#,
        )
        .unwrap();
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.totals.checked, 0);
        assert!(report.totals.skipped > 0);
        assert!(report.meta.nothing_checked);
        assert!(report.success());
    }

    #[test]
    fn shrinking_reaches_the_hypothesis_boundary() {
        let cfg = cor1_config(Some(Mutant::Cor1RhsShiftedPochhammer));
        let mut start = ParamMap::new();
        start.insert("alpha".into(), ParamValue::Rat(Rational::new(9, 7)));
        start.insert("gamma".into(), ParamValue::Rat(Rational::new(-8, 11)));
        start.insert("m1".into(), ParamValue::Int(3));
        start.insert("m2".into(), ParamValue::Int(2));
        start.insert("n".into(), ParamValue::Int(7));
        let shrunk = shrink_counterexample(&cfg, &start).unwrap();
        let m1 = match shrunk["m1"] {
            ParamValue::Int(v) => v,
            _ => unreachable!(),
        };
        let m2 = match shrunk["m2"] {
            ParamValue::Int(v) => v,
            _ => unreachable!(),
        };
        let n = match shrunk["n"] {
            ParamValue::Int(v) => v,
            _ => unreachable!(),
        };
        // greedy descent ends on the hypothesis boundary for n
        assert_eq!(n, m1.max(m2 - m1).max(0));
        // shrinking a non-failure returns it unchanged
        let clean = cor1_config(None);
        let same = shrink_counterexample(&clean, &start).unwrap();
        assert_eq!(same, start);
    }
}
