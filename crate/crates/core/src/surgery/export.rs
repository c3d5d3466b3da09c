use std::fmt::Write;

use serde::Serialize;

use super::InterpolationReport;
use crate::scalar::Real;

/// Note attached to every surgery report.
pub const SURROGATE_NOTE: &str = "K_n come from the interpolation bound K <= 1/C; the annulus map used by the orbit audit is a radial blend surrogate whose dilatation is never used; the tail bound extrapolates a fitted geometric envelope";

fn num<T: Real>(x: T) -> String {
    format!("{:e}", x.to_f64().unwrap_or(f64::NAN))
}

/// One row per annulus: `n,delta0,delta1,C,K`; `K` is blank where `C <= 0`.
pub fn report_csv<T: Real>(report: &InterpolationReport<T>) -> String {
    let mut out = String::from("n,delta0,delta1,C,K\n");
    for r in &report.records {
        let k = r.k.map(num).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{}", r.n, num(r.delta0), num(r.delta1), num(r.c), k);
    }
    out
}

#[derive(Serialize)]
struct Summary<'a> {
    #[serde(rename = "K_infinity_partial")]
    k_infinity_partial: f64,
    tail_bound: Option<f64>,
    certified: bool,
    eta: f64,
    theta_samples: usize,
    certification: &'a str,
    infeasible_at: Option<usize>,
    note: &'a str,
}

pub fn report_json<T: Real>(report: &InterpolationReport<T>) -> String {
    let tail = report.tail_bound.to_f64().filter(|t| t.is_finite());
    let s = Summary {
        k_infinity_partial: report.k_infinity_partial.to_f64().unwrap_or(f64::NAN),
        tail_bound: tail,
        certified: report.certified,
        eta: report.eta.to_f64().unwrap_or(f64::NAN),
        theta_samples: report.theta_samples,
        certification: "heuristic_extrapolated",
        infeasible_at: report.infeasible_at,
        note: SURROGATE_NOTE,
    };
    serde_json::to_string_pretty(&s).expect("plain record serializes")
}
