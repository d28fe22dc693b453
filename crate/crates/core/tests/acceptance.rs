//! End-to-end acceptance criteria. Runs as a plain binary so every criterion prints one
//! `PASS`/`FAIL` line; exits non-zero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use finsler_hardy::cli::{run, RunConfig};
use finsler_hardy::field::{ScalarField, ScaledField};
use finsler_hardy::harness::{
    self, battery, refined_cs_campaign, reverse_identity_check, Evaluator, InequalityReport, Route, SweepParams,
    SweepTable,
};
use finsler_hardy::model::{Measure, ModelSpace, Orientation};
use finsler_hardy::norm::MinkowskiNorm;
use finsler_hardy::quad::QuadratureSpec;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn evaluator(model: &ModelSpace) -> Evaluator {
    Evaluator::new(model, &QuadratureSpec::default())
}

fn sweep(model: &ModelSpace, orientation: Orientation, rellich: bool) -> Result<SweepTable, String> {
    let p = SweepParams::new(0.0, 0.5, 1.0, harness::default_eps()).with_orientation(orientation);
    let ev = evaluator(model);
    if rellich {
        harness::rellich_sharpness_sweep(&ev, &p).map_err(e2s)
    } else {
        harness::hardy_sharpness_sweep(&ev, &p).map_err(e2s)
    }
}

fn check_sweep(t: &SweepTable) -> Result<(), String> {
    ensure(t.monotone, || format!("{} {}: quotients not strictly decreasing", t.theorem, t.orientation))?;
    ensure(t.limit_relative_error <= 0.01, || {
        format!("{} {}: limit {} vs {}", t.theorem, t.orientation, t.limit, t.sharp_constant)
    })?;
    ensure(t.passed, || format!("{} {}: failed checks {:?}", t.theorem, t.orientation, t.checks))
}

fn slack_ok(reports: &[InequalityReport]) -> Result<f64, String> {
    let mut worst = f64::INFINITY;
    for r in reports {
        ensure(r.passed, || {
            format!("{} {}: slack {:e}, tol {:e}, checks {:?}", r.theorem, r.function, r.slack, r.tolerance, r.checks)
        })?;
        worst = worst.min(r.slack / r.scale().max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut limits = Vec::new();
    for measure in [Measure::BusemannHausdorff, Measure::HolmesThompson] {
        let model = ModelSpace::randers_flat(3, 0.5, measure).map_err(e2s)?;
        for o in [Orientation::MinusRadial, Orientation::PlusRadial] {
            let t = sweep(&model, o, false)?;
            check_sweep(&t)?;
            limits.push(t.limit);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("runtime {elapsed:?}"))?;
    Ok(format!("limits {limits:.6?}"))
}

fn ac2() -> Outcome {
    let mut worst: f64 = 0.0;
    for measure in [Measure::BusemannHausdorff, Measure::HolmesThompson] {
        let model = ModelSpace::randers_flat(3, 0.5, measure).map_err(e2s)?;
        let t = sweep(&model, Orientation::MinusRadial, false)?;
        for row in &t.rows {
            let exact = row.j1_exact.ok_or("no closed form for J1")?;
            let rel = (row.j1 - exact).abs() / exact;
            ensure(rel <= 1e-6, || format!("eps {}: J1 {} vs {}", row.eps, row.j1, exact))?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("max rel. error {worst:.2e}"))
}

fn ac3() -> Outcome {
    let mut worst = f64::INFINITY;
    for n in [2, 3, 5] {
        for b in [0.0, 0.3, 0.7] {
            let s = refined_cs_campaign(n, b, 100_000, 7).map_err(e2s)?;
            ensure(s.min_scaled_slack >= -1e-10, || format!("n={n} b={b}: min slack {:e}", s.min_scaled_slack))?;
            ensure(b != 0.0 || s.max_abs_slack <= 1e-12, || format!("n={n}: b=0 slack {:e}", s.max_abs_slack))?;
            ensure(s.colinear_max_error <= 1e-12, || format!("n={n} b={b}: colinear {:e}", s.colinear_max_error))?;
            ensure(s.passed, || format!("n={n} b={b}: {s:?}"))?;
            worst = worst.min(s.min_scaled_slack);
        }
    }
    Ok(format!("min scaled slack {worst:.3e} over 9 x 1e5 pairs"))
}

fn ac4() -> Outcome {
    let mut out = Vec::new();
    for b in [0.3, 0.5, 0.7] {
        let norm = MinkowskiNorm::randers(3, b).map_err(e2s)?;
        let lam = (1.0 + b) / (1.0 - b);
        ensure(norm.reversibility() == lam && norm.uniformity() == lam * lam, || format!("b={b}: closed form"))?;
        let sl = norm.sample_reversibility(200_000, 11);
        let su = norm.sample_uniformity(4_000, 11);
        ensure(sl.relative_error() <= 0.01, || format!("b={b}: lambda {} vs {lam}", sl.estimate))?;
        ensure(su.relative_error() <= 0.01, || format!("b={b}: Lambda {} vs {}", su.estimate, lam * lam))?;
        out.push(format!("b={b}: {:.4}/{:.4}", sl.estimate, su.estimate));
    }
    Ok(out.join(", "))
}

fn ac5() -> Outcome {
    let s = reverse_identity_check(3, 100, 100, 5).map_err(e2s)?;
    ensure(s.max_gradient_error <= 1e-9, || format!("gradient {:e}", s.max_gradient_error))?;
    ensure(s.max_laplacian_error <= 1e-4, || format!("laplacian {:e}", s.max_laplacian_error))?;
    Ok(format!(
        "gradient {:.1e}, laplacian {:.1e}, {} near-critical skipped",
        s.max_gradient_error, s.max_laplacian_error, s.near_critical
    ))
}

fn ac6() -> Outcome {
    let mut worst: f64 = 0.0;
    for measure in [Measure::BusemannHausdorff, Measure::HolmesThompson] {
        let model = ModelSpace::randers_flat(6, 0.5, measure).map_err(e2s)?;
        let ev = evaluator(&model);
        let fields = battery::hardy_battery(&model, 10).map_err(e2s)?;
        for beta in [0.0, 1.0] {
            for u in &fields {
                let r = harness::gbeta_report(&ev, u, beta).map_err(e2s)?;
                let band = harness::GBETA_BAND * r.scale();
                ensure(r.slack.abs() <= band && r.passed, || format!("{}: G = {:e}, band {:e}", r.function, r.slack, band))?;
                worst = worst.max(r.slack.abs() / r.scale());
            }
        }
    }
    Ok(format!("max |G|/sum|terms| {worst:.1e}"))
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let model = ModelSpace::randers_flat(6, 0.5, Measure::BusemannHausdorff).map_err(e2s)?;
    let mut limits = Vec::new();
    for o in [Orientation::MinusRadial, Orientation::PlusRadial] {
        let t = sweep(&model, o, true)?;
        check_sweep(&t)?;
        let fd = t
            .checks
            .iter()
            .find(|c| c.name == "laplacian_closed_form_vs_fd")
            .ok_or("missing FD Laplacian check")?;
        ensure(fd.passed && fd.value <= 1e-4, || format!("FD Laplacian {:e}", fd.value))?;
        limits.push(t.limit);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("runtime {elapsed:?}"))?;
    Ok(format!("limits {limits:.5?}"))
}

fn d_terms_positive(reports: &[InequalityReport]) -> Result<(), String> {
    for r in reports {
        let c = r.checks.iter().find(|c| c.name == "d_remainder_positive").ok_or("missing D check")?;
        ensure(c.passed && c.value > 0.0, || format!("{}: D remainder {:e}", r.function, c.value))?;
    }
    Ok(())
}

fn ac8() -> Outcome {
    let mut worst = f64::INFINITY;
    for n in [4, 6] {
        let model = ModelSpace::hyperbolic(n, -1.0, Measure::BusemannHausdorff).map_err(e2s)?;
        let c = harness::bv_constant(&model).map_err(e2s)?;
        ensure((c - 0.25).abs() < 1e-15, || format!("C = {c}"))?;
        let ev = evaluator(&model);
        let hardy: Vec<_> = battery::hardy_battery(&model, 20)
            .map_err(e2s)?
            .iter()
            .map(|u| harness::hardy_bv_report(&ev, u, 0.0))
            .collect::<Result<_, _>>()
            .map_err(e2s)?;
        let rellich: Vec<_> = battery::rellich_battery(&model, 0.0, 10)
            .map_err(e2s)?
            .iter()
            .map(|u| harness::rellich_bv_report(&ev, u, 0.0))
            .collect::<Result<_, _>>()
            .map_err(e2s)?;
        worst = worst.min(slack_ok(&hardy)?).min(slack_ok(&rellich)?);
        d_terms_positive(&hardy)?;
        d_terms_positive(&rellich)?;
    }
    Ok(format!("min scaled slack {worst:.3e}"))
}

fn ac9() -> Outcome {
    let model = ModelSpace::hyperbolic(3, -1.0, Measure::BusemannHausdorff).map_err(e2s)?;
    let k = harness::poincare_constant(&model).map_err(e2s)?;
    ensure(k == 4.0, || format!("constant {k}"))?;
    let ev = evaluator(&model);
    let reports: Vec<_> = battery::gaussian_battery(&model, 10)
        .map_err(e2s)?
        .iter()
        .map(|u| harness::poincare_report(&ev, u))
        .collect::<Result<_, _>>()
        .map_err(e2s)?;
    Ok(format!("constant 4, min scaled slack {:.3e}", slack_ok(&reports)?))
}

fn ac10() -> Outcome {
    let model = ModelSpace::randers_flat(4, 0.3, Measure::BusemannHausdorff).map_err(e2s)?;
    let ev = evaluator(&model);
    let fields = battery::gaussian_battery(&model, 10).map_err(e2s)?;
    let mut reports = Vec::new();
    for u in &fields {
        let r = harness::uncertainty_report(&ev, u, 0.0).map_err(e2s)?;
        let scaled = ScaledField { factor: 10.0, inner: Arc::new(u.clone()) as Arc<dyn ScalarField> };
        let r10 = harness::uncertainty_report(&ev.clone().with_route(Route::Polar), &scaled, 0.0).map_err(e2s)?;
        ensure(r.slack.signum() == r10.slack.signum() && r10.passed, || {
            format!("{}: slack {:e} vs {:e} under 10u", r.function, r.slack, r10.slack)
        })?;
        reports.push(r);
    }
    Ok(format!("min scaled slack {:.3e}, sign stable under 10u", slack_ok(&reports)?))
}

fn config(command: &str) -> RunConfig {
    let mut c = RunConfig::default();
    c.theorem = Some(command.into());
    c.model.n = if matches!(command, "rellich-sweep" | "gbeta-check") { 6 } else { 3 };
    c.params.count = 4;
    c
}

fn ac11() -> Outcome {
    let mut bytes = 0;
    for command in ["hardy-sweep", "rellich-sweep", "hardy", "gbeta-check", "refined-cs"] {
        let c = config(command);
        let once = |threads: usize| -> Result<String, String> {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(e2s)?;
            pool.install(|| run(command, &c)).map(|o| o.to_json()).map_err(e2s)
        };
        let a = once(4)?;
        let b = once(4)?;
        let serial = once(1)?;
        ensure(a == b, || format!("{command}: rerun differs"))?;
        ensure(a == serial, || format!("{command}: 1 vs 4 threads differ"))?;
        bytes += a.len();
    }
    let dir = tempfile::tempdir().map_err(e2s)?;
    let c = config("hardy-sweep");
    let out = run("hardy-sweep", &c).map_err(e2s)?;
    out.write(&dir.path().join("a")).map_err(e2s)?;
    out.write(&dir.path().join("b")).map_err(e2s)?;
    let read = |s: &str| std::fs::read(dir.path().join(s).join("report.json")).map_err(e2s);
    ensure(read("a")? == read("b")?, || "report.json differs".into())?;
    Ok(format!("5 suites, {bytes} bytes identical across reruns and thread counts"))
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(&str, &str, fn() -> Outcome); 11] = [
        ("AC1", "Randers Hardy sharpness, BH and HT", ac1),
        ("AC2", "exact J1 identity", ac2),
        ("AC3", "refined Cauchy-Schwarz campaign", ac3),
        ("AC4", "asymmetry constants", ac4),
        ("AC5", "reverse-metric identities", ac5),
        ("AC6", "G^beta vanishing", ac6),
        ("AC7", "Rellich sharpness", ac7),
        ("AC8", "Brezis-Vazquez refinements", ac8),
        ("AC9", "Poincare inequality", ac9),
        ("AC10", "uncertainty principle", ac10),
        ("AC11", "determinism", ac11),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        if !args.is_empty() && !args.iter().any(|a| id.eq_ignore_ascii_case(a)) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {id:<5} {title} ({secs:.2}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {id:<5} {title} ({secs:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
