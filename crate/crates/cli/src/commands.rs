use std::fs;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use monocst::grid::{Axis, Grid2};
use monocst::harness::{self, Check, SuiteOptions, VerificationReport};
use monocst::radon::{axial_transform, vekua_residual, AxialFunction, AxialPlaneWave, AxialValue, CkPolynomial};
use monocst::signal::CliffordSignal;
use monocst::slice::{SliceExtension, SliceFunction, SlicePlaneWave, SliceValue};

use crate::config::{Cli, Command, Kind, RunConfig};
use crate::output::{emit, render};
use crate::{EXIT_FAILED, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Library(#[from] monocst::Error),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) if e.is_numeric() => EXIT_NUMERIC,
            CliError::SelfCheck(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Serialize)]
struct SliceRow {
    x0: f64,
    r: f64,
    blade: usize,
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
}

#[derive(Debug, Serialize)]
#[allow(non_snake_case)]
struct AxialRow {
    x0: f64,
    r: f64,
    blade: usize,
    B_re: f64,
    B_im: f64,
    C_re: f64,
    C_im: f64,
}

#[derive(Debug, Serialize)]
struct CheckRow {
    suite: String,
    check: String,
    kind: String,
    claimed: String,
    computed: String,
    abs_err: f64,
    rel_err: f64,
    tol: f64,
    pass: bool,
    seconds: f64,
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

impl From<&Check> for CheckRow {
    fn from(c: &Check) -> Self {
        Self {
            suite: c.suite.clone(),
            check: c.id.clone(),
            kind: serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            claimed: complex_text(c.claimed),
            computed: complex_text(c.computed),
            abs_err: c.abs_err,
            rel_err: c.rel_err,
            tol: c.tolerance,
            pass: c.pass,
            seconds: c.seconds,
        }
    }
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Transform { kind, common } => transform(kind, &RunConfig::from_common(&common)?),
        Command::Planewave { p, kind, common } => planewave(p, kind, &RunConfig::from_common(&common)?),
        Command::Verify { suites, timings, common } => verify(&suites, timings, &RunConfig::from_common(&common)?),
        Command::Ckpoly { j, common } => ckpoly(j, &RunConfig::from_common(&common)?),
        Command::Radon { kmax, common } => radon(kmax, &RunConfig::from_common(&common)?),
    }
}

fn slice_rows<F: SliceFunction>(f: &F, grid: &Grid2) -> Result<Vec<SliceRow>, CliError> {
    let per_node: Vec<monocst::Result<Vec<SliceRow>>> = grid
        .nodes()
        .par_iter()
        .map(|&(x0, r)| {
            let mut parts = f.slice_components(x0, r)?;
            if parts.is_empty() {
                parts.push((0, SliceValue { alpha: Complex64::default(), beta: Complex64::default() }));
            }
            Ok(parts
                .into_iter()
                .map(|(blade, v)| SliceRow {
                    x0,
                    r,
                    blade,
                    alpha_re: v.alpha.re,
                    alpha_im: v.alpha.im,
                    beta_re: v.beta.re,
                    beta_im: v.beta.im,
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_node {
        rows.extend(r?);
    }
    Ok(rows)
}

fn axial_rows<F: AxialFunction>(f: &F, grid: &Grid2) -> Result<Vec<AxialRow>, CliError> {
    let per_node: Vec<monocst::Result<Vec<AxialRow>>> = grid
        .nodes()
        .par_iter()
        .map(|&(x0, r)| {
            let mut parts = f.axial_components(x0, r)?;
            if parts.is_empty() {
                parts.push((0, AxialValue { b: Complex64::default(), c: Complex64::default() }));
            }
            Ok(parts
                .into_iter()
                .map(|(blade, v)| AxialRow { x0, r, blade, B_re: v.b.re, B_im: v.b.im, C_re: v.c.re, C_im: v.c.im })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_node {
        rows.extend(r?);
    }
    Ok(rows)
}

fn load_signal(cfg: &RunConfig) -> Result<CliffordSignal, CliError> {
    let path = cfg.signal.as_ref().ok_or_else(|| CliError::Usage("--signal is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let signal = CliffordSignal::from_json(&text)?;
    if let [m] = cfg.ms.as_slice() {
        if *m != signal.m() {
            return Err(CliError::Usage(format!("--m {m} does not match the signal file (m = {})", signal.m())));
        }
    } else if cfg.ms.len() > 1 {
        return Err(CliError::Usage("transform takes a single --m".into()));
    }
    Ok(signal)
}

fn report_self_check(name: &str, error: f64, tol: f64) -> Result<(), CliError> {
    eprintln!("self-check {name}: error {error:e} (tolerance {tol:e})");
    if error <= tol {
        Ok(())
    } else {
        Err(CliError::SelfCheck(format!("{name}: error {error:e} exceeds {tol:e}")))
    }
}

/// Max |value(x₀, 0) − expected(x₀)| over the grid's x₀ samples.
fn restriction_error(
    cfg: &RunConfig,
    value: impl Fn(f64) -> Result<Vec<(usize, Complex64, Complex64)>, CliError>,
    expected: impl Fn(usize, f64) -> Complex64,
) -> Result<f64, CliError> {
    let mut worst: f64 = 0.0;
    for x0 in cfg.grid.x0.points() {
        for (blade, on_axis, odd) in value(x0)? {
            let scale = expected(blade, x0).norm().max(1.0);
            worst = worst.max((on_axis - expected(blade, x0)).norm() / scale).max(odd.norm() / scale);
        }
    }
    Ok(worst)
}

fn vekua_spot_check<F: AxialFunction>(f: &F, cfg: &RunConfig) -> Result<(), CliError> {
    let centre = 0.5 * (cfg.grid.x0.start + cfg.grid.x0.end);
    let spot = Grid2::new(Axis::new(centre - 0.2, centre + 0.2, 3)?, Axis::new(0.6, 1.0, 3)?);
    let coarse = vekua_residual(f, &spot, 2e-3)?;
    let fine = vekua_residual(f, &spot, 1e-3)?;
    let order = if fine <= 1e-12 { f64::INFINITY } else { (coarse / fine).log2() };
    eprintln!("self-check vekua: residual {fine:e}, observed order {order:.3}");
    if order >= 1.9 {
        Ok(())
    } else {
        Err(CliError::SelfCheck(format!("vekua residual order {order:.3} below 1.9")))
    }
}

fn transform(kind: Kind, cfg: &RunConfig) -> Result<u8, CliError> {
    let signal = load_signal(cfg)?;
    let mut q = cfg.quadrature.clone();
    if let Some(t) = cfg.tolerance {
        q.tolerance = t;
    }
    let heat = signal.heat_evolve();
    let bytes = match kind {
        Kind::Slice => {
            let ev = SliceExtension::u_s(&signal);
            if cfg.self_check {
                let err = restriction_error(
                    cfg,
                    |x0| Ok(ev.slice_components(x0, 0.0)?.into_iter().map(|(b, v)| (b, v.alpha, v.beta)).collect()),
                    |b, x0| heat.eval_blade(b, Complex64::new(x0, 0.0)),
                )?;
                report_self_check("restriction", err, cfg.check_tolerance())?;
            }
            render(&slice_rows(&ev, &cfg.grid)?, cfg.format)?
        }
        Kind::Axial => {
            let ua = axial_transform(&signal, &q)?;
            if cfg.self_check {
                let err = restriction_error(
                    cfg,
                    |x0| Ok(ua.axial_components(x0, 0.0)?.into_iter().map(|(b, v)| (b, v.b, v.c)).collect()),
                    |b, x0| heat.eval_blade(b, Complex64::new(x0, 0.0)),
                )?;
                report_self_check("restriction", err, cfg.check_tolerance())?;
                vekua_spot_check(&ua, cfg)?;
            }
            render(&axial_rows(&ua, &cfg.grid)?, cfg.format)?
        }
    };
    emit(&bytes, cfg.out.as_deref())?;
    Ok(EXIT_OK)
}

fn planewave(p: f64, kind: Kind, cfg: &RunConfig) -> Result<u8, CliError> {
    if !p.is_finite() {
        return Err(CliError::Usage("--p must be finite".into()));
    }
    let m = cfg.single_m(3)?;
    let phase = |x0: f64| Complex64::new(0.0, p * x0).exp();
    let bytes = match kind {
        Kind::Slice => {
            let f = SlicePlaneWave { m, p };
            if cfg.self_check {
                let err = restriction_error(
                    cfg,
                    |x0| Ok(f.slice_components(x0, 0.0)?.into_iter().map(|(b, v)| (b, v.alpha, v.beta)).collect()),
                    |_, x0| phase(x0),
                )?;
                report_self_check("restriction", err, cfg.check_tolerance())?;
            }
            render(&slice_rows(&f, &cfg.grid)?, cfg.format)?
        }
        Kind::Axial => {
            let f = AxialPlaneWave { m, p };
            if cfg.self_check {
                let err = restriction_error(
                    cfg,
                    |x0| Ok(f.axial_components(x0, 0.0)?.into_iter().map(|(b, v)| (b, v.b, v.c)).collect()),
                    |_, x0| phase(x0),
                )?;
                report_self_check("restriction", err, cfg.check_tolerance())?;
                vekua_spot_check(&f, cfg)?;
            }
            render(&axial_rows(&f, &cfg.grid)?, cfg.format)?
        }
    };
    emit(&bytes, cfg.out.as_deref())?;
    Ok(EXIT_OK)
}

fn ckpoly(j: usize, cfg: &RunConfig) -> Result<u8, CliError> {
    let m = cfg.single_m(3)?;
    let poly = CkPolynomial::new(m, j)?;
    if cfg.self_check {
        // on x₀ = 0 the polynomial is (r e₁)^j
        let mut worst: f64 = 0.0;
        for r in cfg.grid.r.points() {
            let v = poly.axial_components(0.0, r)?[0].1;
            let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let (eb, ec) = if j % 2 == 0 { (sign * r.powi(j as i32), 0.0) } else { (0.0, sign * r.powi(j as i32)) };
            let scale = r.powi(j as i32).max(1.0);
            worst = worst.max((v.b.re - eb).abs() / scale).max((v.c.re - ec).abs() / scale);
        }
        report_self_check("restriction", worst, cfg.check_tolerance())?;
    }
    emit(&render(&axial_rows(&poly, &cfg.grid)?, cfg.format)?, cfg.out.as_deref())?;
    Ok(EXIT_OK)
}

fn radon(kmax: usize, cfg: &RunConfig) -> Result<u8, CliError> {
    if kmax > 64 {
        return Err(CliError::Usage(format!("--kmax {kmax} exceeds 64")));
    }
    let m = cfg.single_m(3)?;
    let rows = harness::ladder_rows(m, kmax, &cfg.quadrature)?;
    if cfg.self_check {
        let worst = rows.iter().map(|r| (r.ratio_over_lambda - 1.0).abs()).fold(0.0, f64::max);
        report_self_check("ladder", worst, cfg.check_tolerance())?;
        let opts = SuiteOptions { quadrature: cfg.quadrature.clone(), ..SuiteOptions::default() };
        let restriction = harness::restriction_suite(&[m], &opts)?;
        eprintln!("self-check restriction: error {:e}", restriction.max_error());
        if !restriction.passed() {
            return Err(CliError::SelfCheck(format!("restriction error {:e}", restriction.max_error())));
        }
    }
    emit(&render(&rows, cfg.format)?, cfg.out.as_deref())?;
    Ok(EXIT_OK)
}

fn verify(suites: &str, timings: bool, cfg: &RunConfig) -> Result<u8, CliError> {
    let names: Vec<&str> = if suites.trim() == "all" {
        harness::SUITES.to_vec()
    } else {
        suites.split(',').map(str::trim).collect()
    };
    if let Some(bad) = names.iter().find(|n| !harness::SUITES.contains(n)) {
        return Err(CliError::Usage(format!(
            "unknown suite {bad:?}; expected one of {} or all",
            harness::SUITES.join(", ")
        )));
    }
    let ms = if cfg.ms.is_empty() { vec![2, 3] } else { cfg.ms.clone() };
    let opts = SuiteOptions { quadrature: cfg.quadrature.clone(), tolerance: cfg.tolerance, timings };
    if cfg.self_check {
        let r = harness::restriction_suite(&ms[..1], &SuiteOptions { tolerance: None, ..opts.clone() })?;
        let worst = r.max_error();
        eprintln!("self-check restriction: error {worst:e}");
        if !r.passed() {
            return Err(CliError::SelfCheck(format!("restriction error {worst:e}")));
        }
    }
    let reports = names.iter().map(|n| harness::run_suite(n, &ms, &opts)).collect::<Result<Vec<VerificationReport>, _>>()?;
    let bytes = match cfg.format {
        crate::config::Format::Json => {
            let mut text = harness::report_json(&reports);
            text.push('\n');
            text.into_bytes()
        }
        crate::config::Format::Csv => {
            let rows: Vec<CheckRow> = reports.iter().flat_map(|r| r.checks.iter().map(CheckRow::from)).collect();
            render(&rows, cfg.format)?
        }
    };
    emit(&bytes, cfg.out.as_deref())?;
    for r in &reports {
        let failed = r.failures().count();
        eprintln!("{:<14} {:>4} checks  {}", r.suite, r.checks.len(), if failed == 0 { "PASS".to_string() } else { format!("FAIL ({failed})") });
    }
    Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAILED })
}
