//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use monocst::harness::{
    self, classical_cst_suite, commutativity_suite, cosh_suite, default_corpus, ladder_suite, monogenicity_suite,
    nu_m_gram, planewave_suite, restriction_suite, Check, CheckKind, SuiteOptions,
};
use monocst::signal::QuadratureSpec;
use monocst::slice::{SliceExtension, SliceFunction};

const UNITARITY_TOL: f64 = 1e-6;
const COSH_REL_TOL: f64 = 1e-10;
const COMMUTATIVITY_TOL: f64 = 1e-8;
const SLICE_RESTRICTION_TOL: f64 = 1e-12;
const AXIAL_RESTRICTION_TOL: f64 = 1e-9;
const PLANEWAVE_CLOSED_TOL: f64 = 1e-12;
const PLANEWAVE_QUADRATURE_TOL: f64 = 1e-9;
const ORDER_MIN: f64 = 1.9;
const INTERTWINING_SLICE_TOL: f64 = 1e-8;
const INTERTWINING_LADDER_TOL: f64 = 1e-7;
const LADDER_REL_TOL: f64 = 1e-9;
const CLASSICAL_POINTWISE_TOL: f64 = 1e-9;
const CLASSICAL_RATIO_TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn opts() -> SuiteOptions {
    SuiteOptions { quadrature: QuadratureSpec::default(), tolerance: None, timings: false }
}

fn worst<'a>(checks: impl Iterator<Item = &'a Check>, err: impl Fn(&Check) -> f64) -> (f64, usize) {
    checks.fold((0.0, 0), |(w, n), c| (w.max(err(c)), n + 1))
}

fn ids<'a>(checks: &'a [Check], needle: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
    checks.iter().filter(move |c| c.id.contains(needle))
}

fn unitarity() -> Result<Outcome, monocst::Error> {
    let mut lines = Vec::new();
    let mut pass = true;
    for m in [2, 3, 5] {
        let start = Instant::now();
        let corpus = default_corpus(m)?;
        let evs: Vec<_> = corpus.iter().map(|s| SliceExtension::u_s(&s.signal)).collect();
        let dyns: Vec<&dyn SliceFunction> = evs.iter().map(|e| e as &dyn SliceFunction).collect();
        let gram = nu_m_gram(&dyns, &QuadratureSpec::default())?;
        let mut ratio: f64 = 0.0;
        for (i, a) in corpus.iter().enumerate() {
            for (j, b) in corpus.iter().enumerate() {
                let err = (gram[i][j] - a.signal.l2_inner(&b.signal)?).norm();
                ratio = ratio.max(err / (UNITARITY_TOL * (a.signal.l2_norm() * b.signal.l2_norm()).max(1.0)));
            }
        }
        let elapsed = start.elapsed();
        pass &= ratio <= 1.0 && elapsed <= Duration::from_secs(60);
        lines.push(format!("m={m}: worst err/tol {ratio:.2e}, {:.1}s", elapsed.as_secs_f64()));
    }
    Ok(outcome(pass, lines.join("; ")))
}

fn cosh() -> Result<Outcome, monocst::Error> {
    let r = cosh_suite(&opts())?;
    let (w, n) = worst(r.checks.iter(), |c| c.rel_err);
    Ok(outcome(n == 5 && w <= COSH_REL_TOL, format!("max rel err {w:.2e} over {n} p values")))
}

fn commutativity() -> Result<Outcome, monocst::Error> {
    let mut corpus = Vec::new();
    for m in [2, 3, 4] {
        corpus.extend(default_corpus(m)?);
    }
    let r = commutativity_suite(&corpus, &opts())?;
    let (w, n) = worst(r.checks.iter(), |c| c.abs_err);
    Ok(outcome(n == 18 && w <= COMMUTATIVITY_TOL, format!("max deviation {w:.2e} over {n} signals x 20 points")))
}

fn restriction() -> Result<Outcome, monocst::Error> {
    let r = restriction_suite(&[2, 3, 4], &opts())?;
    let (ws, _) = worst(ids(&r.checks, "/slice"), |c| c.abs_err);
    let (wa, _) = worst(ids(&r.checks, "/axial"), |c| c.abs_err);
    Ok(outcome(
        ws <= SLICE_RESTRICTION_TOL && wa <= AXIAL_RESTRICTION_TOL,
        format!("slice {ws:.2e}, axial {wa:.2e}"),
    ))
}

fn planewave() -> Result<Outcome, monocst::Error> {
    let r = planewave_suite(&[2, 3, 4], &opts())?;
    let closed_ids = ["slice-series", "bessel-real-base", "elementary", "/axis"];
    let (wc, _) = worst(r.checks.iter().filter(|c| closed_ids.iter().any(|k| c.id.contains(k))), |c| c.abs_err);
    let (wq, _) = worst(ids(&r.checks, "sphere-quadrature"), |c| c.abs_err);
    let two_i: Vec<&Check> = ids(&r.checks, "bessel-2i-base").collect();
    let documented = two_i.iter().all(|c| if c.id.starts_with("m2/") { c.kind == CheckKind::Match && c.pass } else { c.kind == CheckKind::Mismatch && c.pass });
    let elementary = ids(&r.checks, "elementary").count() == 2;
    Ok(outcome(
        wc <= PLANEWAVE_CLOSED_TOL && wq <= PLANEWAVE_QUADRATURE_TOL && documented && elementary,
        format!("closed forms {wc:.2e}, sphere quadrature {wq:.2e}, 2i-base recorded as mismatch for m=3,4: {documented}"),
    ))
}

fn monogenicity() -> Result<Outcome, monocst::Error> {
    let mut corpus = default_corpus(2)?;
    corpus.extend(default_corpus(3)?);
    let r = monogenicity_suite(&corpus, &opts())?;
    let orders: Vec<&Check> = r.checks.iter().filter(|c| c.kind == CheckKind::Order).collect();
    let min = orders.iter().map(|c| c.computed.re).fold(f64::INFINITY, f64::min);
    let families = ["slice-cr", "vekua", "dirac"].iter().all(|f| orders.iter().any(|c| c.id.contains(f)));
    let controls = ids(&r.checks, "control").all(|c| c.pass);
    Ok(outcome(
        min >= ORDER_MIN && families && controls,
        format!("min observed order {min:.3} over {} residual families, controls flagged: {controls}", orders.len()),
    ))
}

fn intertwining() -> Result<Outcome, monocst::Error> {
    let r = harness::run_suite("intertwining", &[2, 3], &opts())?;
    let (ws, ns) = worst(ids(&r.checks, "/slice/"), |c| c.abs_err);
    let (wl, nl) = worst(r.checks.iter().filter(|c| c.id.contains("/ladder/deg")), |c| c.abs_err);
    let units = ids(&r.checks, "/ladder/unit").all(|c| c.pass);
    Ok(outcome(
        ns == 8 && ws <= INTERTWINING_SLICE_TOL && nl == 4 && wl <= INTERTWINING_LADDER_TOL && units,
        format!("slice {ws:.2e} ({ns} signal sets), ladder {wl:.2e} ({nl} inputs)"),
    ))
}

fn ladder() -> Result<Outcome, monocst::Error> {
    let r = ladder_suite(&[2, 3, 4, 5, 6], &opts())?;
    let (wc, _) = worst(ids(&r.checks, "/cross"), |c| c.rel_err);
    let (wm, n) = worst(ids(&r.checks, "/measured"), |c| c.rel_err);
    Ok(outcome(
        n == 45 && wc <= LADDER_REL_TOL && wm <= LADDER_REL_TOL,
        format!("cross {wc:.2e}, measured {wm:.2e} over k<=8, m=2..6"),
    ))
}

fn classical() -> Result<Outcome, monocst::Error> {
    let r = classical_cst_suite(&opts())?;
    let (wp, _) = worst(ids(&r.checks, "pointwise/"), |c| c.abs_err);
    let (wr, _) = worst(ids(&r.checks, "norm-ratio/"), |c| c.rel_err);
    Ok(outcome(
        wp <= CLASSICAL_POINTWISE_TOL && wr <= CLASSICAL_RATIO_TOL,
        format!("pointwise {wp:.2e}, norm-ratio spread {wr:.2e}"),
    ))
}

fn determinism() -> Result<Outcome, monocst::Error> {
    let dir = std::env::temp_dir().join(format!("monocst-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let run = |name: &str| {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_monocst"))
            .args(["verify", "--suites", "all", "--m", "2", "--seed", "1234", "--format", "csv", "--out"])
            .arg(&path)
            .output()
            .expect("binary runs")
            .status;
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (ca, a) = run("a.csv");
    let (cb, b) = run("b.csv");
    let _ = std::fs::remove_dir_all(&dir);
    Ok(outcome(
        ca == Some(0) && cb == Some(0) && !a.is_empty() && a == b,
        format!("exit codes {ca:?}/{cb:?}, {} bytes, identical: {}", a.len(), a == b),
    ))
}

type Criterion = (&'static str, fn() -> Result<Outcome, monocst::Error>, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("unitarity of the slice transform", unitarity, Duration::from_secs(180)),
        ("cosh-Gaussian integral", cosh, Duration::from_secs(1)),
        ("two paths to the axial transform", commutativity, Duration::from_secs(120)),
        ("restriction to the real axis", restriction, Duration::from_secs(10)),
        ("plane waves", planewave, Duration::from_secs(30)),
        ("monogenicity orders", monogenicity, Duration::from_secs(60)),
        ("intertwining", intertwining, Duration::from_secs(60)),
        ("coefficient cross-ladder", ladder, Duration::from_secs(30)),
        ("classical base case", classical, Duration::from_secs(10)),
        ("byte-identical reports", determinism, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= *budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} ({name}): {detail} [{:.2}s, budget {}s]",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
