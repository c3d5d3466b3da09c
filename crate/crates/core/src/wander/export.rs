use std::fmt::Write;

use serde::Serialize;

use super::{OrbitPairTrace, TrichotomyVerdict};
use crate::scalar::Real;

fn num<T: Real>(x: T) -> String {
    format!("{:e}", x.to_f64().unwrap_or(f64::NAN))
}

/// CSV with columns `n,u_lower,u_exact,u_upper`; `u_exact` is blank for bracketed traces.
pub fn trace_csv<T: Real>(trace: &OrbitPairTrace<T>) -> String {
    let mut out = String::from("n,u_lower,u_exact,u_upper\n");
    for (k, lower) in trace.lower.iter().enumerate() {
        let exact = if trace.is_exact() {
            num(trace.values[k])
        } else {
            String::new()
        };
        let upper = trace.upper[k].map(num).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", trace.start + k, num(*lower), exact, upper);
    }
    out
}

#[derive(Serialize)]
struct VerdictRecord<'a> {
    kind: &'a str,
    limit_estimate: f64,
    isometry_onset: Option<usize>,
    horizon: usize,
    eps_contract: f64,
    eps_flat: f64,
    window: usize,
}

pub fn verdict_json<T: Real>(v: &TrichotomyVerdict<T>) -> String {
    let record = VerdictRecord {
        kind: v.kind.as_str(),
        limit_estimate: v.limit_estimate.to_f64().unwrap_or(f64::NAN),
        isometry_onset: v.isometry_onset,
        horizon: v.horizon,
        eps_contract: v.eps_contract.to_f64().unwrap_or(f64::NAN),
        eps_flat: v.eps_flat.to_f64().unwrap_or(f64::NAN),
        window: v.window,
    };
    serde_json::to_string_pretty(&record).expect("plain record serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wander::{classify, MetricMode};

    #[test]
    fn csv_layout() {
        let mut t = OrbitPairTrace::synthetic(vec![1.0, 0.5]);
        t.upper[1] = None;
        assert_eq!(
            trace_csv(&t),
            "n,u_lower,u_exact,u_upper\n0,1e0,1e0,1e0\n1,5e-1,5e-1,\n"
        );
        t.mode = MetricMode::Bracketed;
        assert!(trace_csv(&t).contains("\n1,5e-1,,\n"));
    }

    #[test]
    fn verdict_record_fields() {
        let v = classify(&OrbitPairTrace::synthetic(vec![0.7; 21]), 1e-6, 1e-12, 10).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&verdict_json(&v)).unwrap();
        assert_eq!(parsed["kind"], "eventually_isometric");
        assert_eq!(parsed["isometry_onset"], 0);
        assert_eq!(parsed["window"], 10);
        assert_eq!(parsed["horizon"], 20);
    }
}
