//! Output shaping: fixed-width tables for humans, deterministic CSV/JSON
//! for machines.
//!
//! Bounds are printed with 15 digits after the decimal point so rows can be
//! diffed directly against published tables. Timings never appear in the
//! CSV/JSON payloads (identical inputs must produce byte-identical machine
//! output); they go to the human table and the stderr manifest only.

use gammacap_core::capacity::{CapacityBounds, SolveRun, StopReason};
use gammacap_core::experiments::{AhlforsReport, AhlforsVerdict, MonotonicityViolation, RatioPoint};

pub fn fmt_bound(x: f64) -> String {
    format!("{x:.15}")
}

/// Header used by the sweep CSV.
pub const SWEEP_CSV_HEADER: &str =
    "r,ratio_lower,ratio_upper,gamma_union_lower,gamma_union_upper,gamma_E_lower,gamma_E_upper,gamma_F_lower,gamma_F_upper";

pub fn capacity_table(run: &SolveRun) -> String {
    let mut out = String::new();
    out.push_str("stage  basis  lower bound            upper bound            time (s)\n");
    for s in &run.stages {
        out.push_str(&format!(
            "{:<6} {:<6} {}      {}      {:.6}\n",
            s.stage,
            s.basis_size,
            fmt_bound(s.lower),
            fmt_bound(s.upper),
            s.elapsed
        ));
    }
    out.push_str(&format!("stop: {}\n", stop_label(&run.stop)));
    if let Some((l, u)) = run.best_bracket() {
        out.push_str(&format!("bracket: [{}, {}] (width {:.3e})\n", fmt_bound(l), fmt_bound(u), u - l));
    }
    out
}

pub fn capacity_csv(run: &SolveRun) -> String {
    let mut out = String::from("stage,basis_size,lower,upper,condition\n");
    for s in &run.stages {
        out.push_str(&format!(
            "{},{},{},{},{:e}\n",
            s.stage,
            s.basis_size,
            fmt_bound(s.lower),
            fmt_bound(s.upper),
            s.condition_estimate
        ));
    }
    out
}

pub fn capacity_json(run: &SolveRun) -> serde_json::Value {
    let stages: Vec<serde_json::Value> = run.stages.iter().map(stage_json).collect();
    let bracket = run.best_bracket().map(|(l, u)| serde_json::json!({"lower": l, "upper": u}));
    serde_json::json!({
        "stages": stages,
        "stop": stop_label(&run.stop),
        "bracket": bracket,
    })
}

fn stage_json(s: &CapacityBounds) -> serde_json::Value {
    serde_json::json!({
        "stage": s.stage,
        "basis_size": s.basis_size,
        "lower": s.lower,
        "upper": s.upper,
        "condition": s.condition_estimate,
    })
}

pub fn stop_label(stop: &StopReason) -> String {
    match stop {
        StopReason::GapTargetMet => "gap-target-met".into(),
        StopReason::MaxStageReached => "max-stage-reached".into(),
        StopReason::IllConditioned { estimate } => format!("ill-conditioned ({estimate:.3e})"),
        StopReason::StageFailed { message } => format!("stage-failed ({message})"),
    }
}

pub fn sweep_csv_row(p: &RatioPoint) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        fmt_bound(p.r),
        fmt_bound(p.ratio_lower),
        fmt_bound(p.ratio_upper),
        fmt_bound(p.union_bounds.0),
        fmt_bound(p.union_bounds.1),
        fmt_bound(p.e_bounds.0),
        fmt_bound(p.e_bounds.1),
        fmt_bound(p.f_bounds.0),
        fmt_bound(p.f_bounds.1)
    )
}

/// Human summary of a sweep: extreme certified values, missing points and
/// the monotonicity report. A certified `ratio_lower > 1` is flagged in
/// capitals; that would be a genuine counterexample candidate, not a
/// numerical artifact.
pub fn sweep_summary(
    points: &[(f64, Option<RatioPoint>)],
    violations: &[MonotonicityViolation],
) -> String {
    let computed: Vec<&RatioPoint> = points.iter().filter_map(|(_, p)| p.as_ref()).collect();
    let missing = points.len() - computed.len();
    let mut out = String::new();
    if computed.is_empty() {
        out.push_str("no points computed\n");
        return out;
    }
    let max_upper = computed.iter().map(|p| p.ratio_upper).fold(f64::MIN, f64::max);
    let max_lower = computed.iter().map(|p| p.ratio_lower).fold(f64::MIN, f64::max);
    let max_gap = computed
        .iter()
        .map(|p| p.ratio_upper - p.ratio_lower)
        .fold(0.0, f64::max);
    out.push_str(&format!("points: {} computed, {} missing\n", computed.len(), missing));
    out.push_str(&format!("max certified ratio upper bound: {}\n", fmt_bound(max_upper)));
    out.push_str(&format!("max certified ratio lower bound: {}\n", fmt_bound(max_lower)));
    out.push_str(&format!("max ratio bracket gap: {max_gap:.6e}\n"));
    if max_lower > 1.0 {
        out.push_str("*** CERTIFIED RATIO ABOVE 1: subadditivity counterexample candidate ***\n");
    }
    if violations.is_empty() {
        out.push_str("monotonicity: no certified increase (consistent with a decreasing ratio)\n");
    } else {
        out.push_str(&format!("monotonicity: {} certified increase(s):\n", violations.len()));
        for v in violations {
            out.push_str(&format!(
                "  r in [{}, {}]: certified increase {:.3e}\n",
                fmt_bound(v.r_from),
                fmt_bound(v.r_to),
                v.certified_increase
            ));
        }
    }
    out
}

/// Debug dump of a trial family as a JSON list of tagged variants.
pub fn basis_json(basis: &gammacap_core::basis::BasisSet) -> serde_json::Value {
    use gammacap_core::basis::BasisFunction;
    let items: Vec<serde_json::Value> = basis
        .functions
        .iter()
        .map(|f| match *f {
            BasisFunction::SimplePole { a } => {
                serde_json::json!({"kind": "simple_pole", "a": [a.re, a.im]})
            }
            BasisFunction::MultiPole { p, order } => {
                serde_json::json!({"kind": "multi_pole", "p": [p.re, p.im], "order": order})
            }
            BasisFunction::CornerPower { corner, base, exponent, power } => serde_json::json!({
                "kind": "corner_power",
                "corner": [corner.re, corner.im],
                "base": [base.re, base.im],
                "exponent": exponent,
                "power": power,
            }),
        })
        .collect();
    serde_json::json!({"stage": basis.stage, "functions": items})
}

pub fn verdict_label(v: AhlforsVerdict) -> &'static str {
    match v {
        AhlforsVerdict::Ahlfors => "consistent-with-ahlfors",
        AhlforsVerdict::NotAhlfors => "not-ahlfors",
        AhlforsVerdict::Inconclusive => "inconclusive",
    }
}

pub fn rational_json(report: &AhlforsReport) -> serde_json::Value {
    let stages: Vec<serde_json::Value> = report
        .stages
        .iter()
        .map(|s| {
            serde_json::json!({
                "degree": s.stage,
                "lower": s.lower,
                "upper": s.upper,
            })
        })
        .collect();
    serde_json::json!({
        "verdict": verdict_label(report.verdict),
        "sum_residues": [report.residue_sum.re, report.residue_sum.im],
        "lower": report.lower,
        "upper": report.upper,
        "tolerance": report.tolerance,
        "stages": stages,
    })
}

pub fn rational_table(report: &AhlforsReport) -> String {
    let mut out = String::new();
    out.push_str("degree  lower bound            upper bound\n");
    for s in &report.stages {
        out.push_str(&format!("{:<7} {}      {}\n", s.stage, fmt_bound(s.lower), fmt_bound(s.upper)));
    }
    out.push_str(&format!(
        "residue sum: {} + {}i\nverdict: {}\n",
        fmt_bound(report.residue_sum.re),
        fmt_bound(report.residue_sum.im),
        verdict_label(report.verdict)
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_print_fifteen_decimals() {
        assert_eq!(fmt_bound(1.875), "1.875000000000000");
        assert_eq!(fmt_bound(0.834_626_841_674_073_2), "0.834626841674073");
    }

    #[test]
    fn csv_header_matches_contract() {
        assert!(SWEEP_CSV_HEADER.starts_with("r,ratio_lower,ratio_upper,gamma_union_lower"));
        assert!(SWEEP_CSV_HEADER.ends_with("gamma_F_upper"));
    }
}
