//! JSON reports for every subcommand, and their flat CSV rendering.
//!
//! Every report is one object with `config`, `results` and, where the run
//! verifies something, a `checks` map of named booleans. A report passes when
//! all of its checks hold.

use dpqs_core::exact::{
    self, mean_comparisons_asymptotic, mean_swaps_asymptotic, to_f64, AnalysisConstants,
    Constants64, Rational,
};
use dpqs_core::exhaustive::{ExhaustiveReport, PartitionReport};
use dpqs_core::rde::{estimate_moments, toll_second_moments, LimitSampler, MomentEstimate};
use dpqs_core::urn::{check_identities, first_stage_expectations_upto};
use dpqs_core::CostProfile;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::montecarlo::{with_workers, MonteCarloReport, VariantSummary};

/// Tolerances applied by the `tollmoments` and `rde` checks.
pub mod tolerance {
    /// Absolute distance of `2 E[b_i b_j]` from the closed-form constants.
    pub const TOLL_SECOND_MOMENT: f64 = 1e-3;
    /// Absolute size of `E[b_1]`, `E[b_2]`.
    pub const TOLL_MEAN: f64 = 1e-6;
    /// Sampled means must lie within this many standard errors of zero.
    pub const MEAN_STDERRS: f64 = 3.0;
    /// Relative distance of sampled variances from the constants.
    pub const VARIANCE_REL: f64 = 0.05;
    /// Absolute distance of the sampled correlation from the limit.
    pub const CORRELATION_ABS: f64 = 0.05;
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub value: Value,
}

impl Report {
    fn new(config: Value, results: Value, checks: Vec<(&str, bool)>) -> Self {
        let mut obj = Map::new();
        obj.insert("config".into(), config);
        obj.insert("results".into(), results);
        if !checks.is_empty() {
            let passed = checks.iter().all(|c| c.1);
            let map: Map<String, Value> = checks
                .into_iter()
                .map(|(k, v)| (k.to_string(), Value::Bool(v)))
                .collect();
            obj.insert("checks".into(), Value::Object(map));
            obj.insert("passed".into(), Value::Bool(passed));
        }
        Report {
            value: Value::Object(obj),
        }
    }

    /// All checks hold (vacuously true without checks).
    pub fn passed(&self) -> bool {
        self.value
            .get("passed")
            .and_then(Value::as_bool)
            .unwrap_or(true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("report serializes")
    }

    /// `key,value` lines with dotted keys.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        flatten("", &self.value, &mut out);
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push_str(&format!("{prefix},{s}\n")),
        other => out.push_str(&format!("{prefix},{other}\n")),
    }
}

/// Exact value as `{"exact": "p/q", "decimal": f}`.
pub fn rational(r: &Rational) -> Value {
    json!({ "exact": r.to_string(), "decimal": to_f64(r) })
}

pub fn exact_report(n: u64) -> Report {
    let c = AnalysisConstants::compute();
    let c64 = Constants64::from(&c);
    let mut results = json!({
        "mean_comparisons": rational(&exact::mean_comparisons(n)),
        "mean_swaps": rational(&exact::mean_swaps(n)),
        "harmonic": rational(&exact::harmonic(n)),
        "harmonic_alt": rational(&exact::harmonic_alt(n)),
        "constants": {
            "gamma": c.gamma.to_string_digits(40),
            "a_c": c.a_c.to_string_digits(40),
            "a_s": c.a_s.to_string_digits(40),
            "sigma2_c": c.sigma2_c.to_string_digits(40),
            "sigma2_s": c.sigma2_s.to_string_digits(40),
            "sigma2_cs": c.sigma2_cs.to_string_digits(40),
            "corr_limit": c.corr_limit.to_string_digits(40),
        },
    });
    if n >= 2 {
        results["mean_partition_swaps"] =
            rational(&exact::mean_partition_swaps(n).expect("n >= 2"));
        results["mean_splus"] = rational(&exact::mean_splus(n).expect("n >= 2"));
    }
    if n >= 4 {
        results["mean_comparisons_asymptotic"] = json!(mean_comparisons_asymptotic(n, c64.a_c));
        results["mean_swaps_asymptotic"] = json!(mean_swaps_asymptotic(n, c64.a_s));
    }
    Report::new(json!({ "subcommand": "exact", "n": n }), results, vec![])
}

pub fn exhaustive_report(r: &ExhaustiveReport) -> Report {
    let two = exact::int(2);
    Report::new(
        json!({ "subcommand": "exhaustive", "n": r.n }),
        json!({
            "permutations": r.permutations,
            "mean_comparisons": rational(&r.mean_comparisons),
            "mean_half_swaps": rational(&r.mean_half_swaps),
            "mean_swaps": rational(&(&r.mean_half_swaps / &two)),
            "formula_comparisons": rational(&r.formula_comparisons),
            "formula_swaps": rational(&r.formula_swaps),
        }),
        vec![
            ("comparisons_match", r.comparisons_match),
            ("swaps_match", r.swaps_match),
        ],
    )
}

pub fn partition_report(r: &PartitionReport) -> Report {
    Report::new(
        json!({ "subcommand": "partition", "n": r.n }),
        json!({
            "permutations": r.permutations,
            "mean_i1": rational(&r.mean_i1),
            "mean_i2": rational(&r.mean_i2),
            "mean_i3": rational(&r.mean_i3),
            "mean_splus": rational(&r.mean_splus),
            "mean_mplus": rational(&r.mean_mplus),
            "mean_lplus": rational(&r.mean_lplus),
            "mean_t_c": rational(&r.mean_t_c),
            "mean_t_s": rational(&r.mean_t_s),
            "formula_t_s": rational(&r.formula_t_s),
            "formula_splus": rational(&r.formula_splus),
        }),
        vec![
            ("t_s_match", r.t_s_match),
            ("splus_match", r.splus_match),
            ("splus_equals_lplus_minus_mplus", r.splus_balance),
            ("costs_reconcile", r.all_reconciled),
        ],
    )
}

pub fn urn_report(max_step: usize, max_n: usize) -> Report {
    let steps = check_identities(max_step);
    let failing: Vec<usize> = steps
        .iter()
        .filter(|c| !c.all_pass())
        .map(|c| c.step)
        .collect();
    let mut splus_failing = Vec::new();
    let mut balance_failing = Vec::new();
    for e in first_stage_expectations_upto(max_n) {
        if exact::mean_splus(e.n as u64).map_or(true, |m| m != e.splus) {
            splus_failing.push(e.n);
        }
        if &e.lplus - &e.mplus != e.splus {
            balance_failing.push(e.n);
        }
    }
    let check = |f: &dyn Fn(&dpqs_core::urn::StepCheck) -> bool| steps.iter().all(f);
    Report::new(
        json!({ "subcommand": "urn", "max_step": max_step, "max_n": max_n }),
        json!({
            "steps_checked": steps.len(),
            "failing_steps": failing,
            "splus_failing_n": splus_failing,
            "balance_failing_n": balance_failing,
        }),
        vec![
            ("uniform_compositions", check(&|c| c.uniform)),
            ("mass_conserved", check(&|c| c.mass_one)),
            ("prob_l_gt_s", check(&|c| c.l_gt_s)),
            ("prob_large_up_and_l_gt_s", check(&|c| c.large_up)),
            ("prob_small_up_and_l_gt_s", check(&|c| c.small_up)),
            (
                "conditional_probability_half",
                check(&|c| c.conditional_half),
            ),
            (
                "expected_splus_matches_closed_form",
                splus_failing.is_empty(),
            ),
            ("splus_equals_lplus_minus_mplus", balance_failing.is_empty()),
        ],
    )
}

pub fn tollmoments_report(resolution: usize) -> Result<Report, CliError> {
    let m = toll_second_moments(resolution)?;
    let c = Constants64::compute();
    let near = |a: f64, b: f64| (a - b).abs() <= tolerance::TOLL_SECOND_MOMENT;
    Ok(Report::new(
        json!({ "subcommand": "tollmoments", "resolution": resolution }),
        json!({
            "mean_b1": m.mean_b1,
            "mean_b2": m.mean_b2,
            "two_e_b1b1": m.sigma2_c(),
            "two_e_b2b2": m.sigma2_s(),
            "two_e_b1b2": m.sigma2_cs(),
            "corr": m.corr(),
            "sigma2_c": c.sigma2_c,
            "sigma2_s": c.sigma2_s,
            "sigma2_cs": c.sigma2_cs,
            "corr_limit": c.corr_limit,
        }),
        vec![
            ("sigma2_c", near(m.sigma2_c(), c.sigma2_c)),
            ("sigma2_s", near(m.sigma2_s(), c.sigma2_s)),
            ("sigma2_cs", near(m.sigma2_cs(), c.sigma2_cs)),
            ("centered_b1", m.mean_b1.abs() <= tolerance::TOLL_MEAN),
            ("centered_b2", m.mean_b2.abs() <= tolerance::TOLL_MEAN),
        ],
    ))
}

fn moments_json(m: &MomentEstimate) -> Value {
    json!({
        "samples": m.samples,
        "mean_c": m.mean_c,
        "mean_s": m.mean_s,
        "mean_c_stderr": m.mean_c_stderr,
        "mean_s_stderr": m.mean_s_stderr,
        "var_c": m.var_c,
        "var_s": m.var_s,
        "cov": m.cov,
        "corr": m.corr,
        "var_c_stderr": m.var_c_stderr,
        "var_s_stderr": m.var_s_stderr,
        "cov_stderr": m.cov_stderr,
        "corr_stderr": m.corr_stderr,
    })
}

/// Limit-law draws `0..samples`, evaluated on `workers` threads.
pub fn limit_samples(
    sampler: &LimitSampler,
    samples: usize,
    workers: usize,
) -> Vec<dpqs_core::rde::LimitSample> {
    with_workers(workers, || {
        (0..samples as u64)
            .into_par_iter()
            .map(|k| sampler.sample(k))
            .collect()
    })
}

/// Checks of a limit-law moment estimate against the constants.
pub fn limit_checks(m: &MomentEstimate, c: &Constants64) -> Vec<(&'static str, bool)> {
    let rel = |a: f64, b: f64| ((a - b) / b).abs() <= tolerance::VARIANCE_REL;
    vec![
        (
            "mean_c_centered",
            m.mean_c.abs() <= tolerance::MEAN_STDERRS * m.mean_c_stderr,
        ),
        (
            "mean_s_centered",
            m.mean_s.abs() <= tolerance::MEAN_STDERRS * m.mean_s_stderr,
        ),
        ("var_c", rel(m.var_c, c.sigma2_c)),
        ("var_s", rel(m.var_s, c.sigma2_s)),
        (
            "corr",
            m.corr
                .is_some_and(|r| (r - c.corr_limit).abs() <= tolerance::CORRELATION_ABS),
        ),
    ]
}

pub fn rde_report(
    sampler: &LimitSampler,
    samples: usize,
    workers: usize,
) -> Result<Report, CliError> {
    let draws = limit_samples(sampler, samples, workers);
    let m = estimate_moments(&draws)?;
    let c = Constants64::compute();
    Ok(Report::new(
        json!({
            "subcommand": "rde",
            "samples": samples,
            "seed": sampler.seed,
            "depth": sampler.depth,
            "prune_eps": sampler.prune_eps,
        }),
        json!({
            "moments": moments_json(&m),
            "sigma2_c": c.sigma2_c,
            "sigma2_s": c.sigma2_s,
            "corr_limit": c.corr_limit,
        }),
        limit_checks(&m, &c),
    ))
}

fn summary_json(s: &VariantSummary) -> Value {
    let n = s.n as f64;
    let mut v = json!({
        "variant": s.variant.name(),
        "samples": s.samples,
        "mean_comparisons": s.mean_comparisons,
        "mean_swaps": s.mean_swaps,
        "var_comparisons_over_n2": s.scaled.var_c,
        "var_swaps_over_n2": s.scaled.var_s,
        "cov_over_n2": s.scaled.cov,
        "corr": s.scaled.corr,
        "var_comparisons_over_n2_stderr": s.scaled.var_c_stderr,
        "var_swaps_over_n2_stderr": s.scaled.var_s_stderr,
        "cov_over_n2_stderr": s.scaled.cov_stderr,
        "corr_stderr": s.scaled.corr_stderr,
    });
    if let (Some(ec), Some(es)) = (s.exact_mean_comparisons, s.exact_mean_swaps) {
        v["exact_mean_comparisons"] = json!(ec);
        v["exact_mean_swaps"] = json!(es);
        v["mean_comparisons_deviation_over_n"] = json!((s.mean_comparisons - ec) / n);
        v["mean_swaps_deviation_over_n"] = json!((s.mean_swaps - es) / n);
        v["mean_comparisons_stderr_over_n"] = json!(s.scaled.mean_c_stderr);
        v["mean_swaps_stderr_over_n"] = json!(s.scaled.mean_s_stderr);
    }
    v
}

/// Monte Carlo statistics. Finite-size effects make asymptotic comparisons
/// meaningful only for large `n`, so the report carries reference values but
/// no pass/fail checks.
pub fn montecarlo_report(r: &MonteCarloReport) -> Report {
    let c = &r.constants;
    Report::new(
        json!({
            "subcommand": "mc",
            "n": r.config.n,
            "samples": r.config.samples,
            "seed": r.config.seed,
            "variants": r.config.variants.iter().map(|v| v.name()).collect::<Vec<_>>(),
        }),
        json!({
            "variants": r.summaries.iter().map(summary_json).collect::<Vec<_>>(),
            "reference": {
                "sigma2_c": c.sigma2_c,
                "sigma2_s": c.sigma2_s,
                "sigma2_cs": c.sigma2_cs,
                "corr_limit": c.corr_limit,
                "classic_corr": -0.864,
            },
        }),
        vec![],
    )
}

pub fn sort_report(variant: &str, sorted: &[f64], profile: &CostProfile, distinct: bool) -> Report {
    Report::new(
        json!({ "subcommand": "sort", "variant": variant }),
        json!({
            "sorted": sorted,
            "n": sorted.len(),
            "distinct_keys": distinct,
            "comparisons": profile.comparisons,
            "plain_swaps": profile.plain_swaps,
            "rotate3_ops": profile.rotate3_ops,
            "half_swaps": profile.half_swaps(),
        }),
        vec![],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_flattening() {
        let r = Report::new(
            json!({"a": 1}),
            json!({"b": {"c": [true, "x"]}}),
            vec![("ok", true)],
        );
        assert_eq!(
            r.to_csv(),
            "key,value\nchecks.ok,true\nconfig.a,1\npassed,true\nresults.b.c.0,true\nresults.b.c.1,x\n"
        );
        assert!(r.passed());
    }

    #[test]
    fn failing_check_fails_report() {
        let r = Report::new(json!({}), json!({}), vec![("a", true), ("b", false)]);
        assert!(!r.passed());
        let plain = Report::new(json!({}), json!({}), vec![]);
        assert!(plain.passed());
    }

    #[test]
    fn exact_report_at_four() {
        let r = exact_report(4);
        let exact = r.value["results"]["mean_comparisons"]["exact"]
            .as_str()
            .unwrap();
        assert_eq!(exact, exact::mean_comparisons(4).to_string());
    }
}
