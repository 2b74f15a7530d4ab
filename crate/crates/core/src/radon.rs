//! Dual Radon transform, axial extension M_a = Ř ∘ M_s, the axial transform
//! U_a, Cauchy–Kowalewski polynomials and the axial ladder.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::clifford::{AxialPoint, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::grid::Grid2;
use crate::quadrature::{ComplexKahanSum, GaussLegendre};
use crate::signal::{AxisFunction, CliffordSignal, Envelope, PolySignal, QuadratureSpec};
use crate::slice::{slice_to_multivector, SliceExtension, SliceFunction, SliceValue, UsQuadrature};
use crate::specfun::{bessel_i, coefficient_table, gamma, gegenbauer_homogeneous, CoefficientTable};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Value B + ωC of one blade component of an axial function.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AxialValue {
    pub b: Complex64,
    pub c: Complex64,
}

/// ℂ_m-valued axial function Σ_A (B_A(x₀,r) + ω C_A(x₀,r)) e_A.
pub trait AxialFunction: Sync {
    fn m(&self) -> usize;

    fn axial_components(&self, x0: f64, r: f64) -> Result<Vec<(usize, AxialValue)>>;

    fn evaluate(&self, pt: &AxialPoint) -> Result<Multivector> {
        if pt.m() != self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: pt.m() });
        }
        axial_to_multivector(self.m(), &self.axial_components(pt.x0, pt.r)?, &pt.omega)
    }
}

impl<T: AxialFunction + ?Sized> AxialFunction for &T {
    fn m(&self) -> usize {
        (**self).m()
    }

    fn axial_components(&self, x0: f64, r: f64) -> Result<Vec<(usize, AxialValue)>> {
        (**self).axial_components(x0, r)
    }
}

pub fn axial_to_multivector(m: usize, parts: &[(usize, AxialValue)], omega: &[f64]) -> Result<Multivector> {
    let as_slice: Vec<(usize, SliceValue)> =
        parts.iter().map(|(b, v)| (*b, SliceValue { alpha: v.b, beta: v.c })).collect();
    slice_to_multivector(m, &as_slice, omega)
}

/// Nodes s = cos θ and normalized weights of sin^{m−2}θ dθ on [0, π]: the
/// law of ⟨ω, t⟩ for t uniform on S^{m−1}.
#[derive(Clone, Debug)]
pub struct ThetaRule {
    pub cos: Vec<f64>,
    pub weights: Vec<f64>,
}

impl ThetaRule {
    pub fn new(m: usize, n: usize) -> Self {
        let gl = GaussLegendre::new(n);
        let power = m as i32 - 2;
        let (cos, raw): (Vec<f64>, Vec<f64>) = gl
            .on_interval(0.0, std::f64::consts::PI)
            .map(|(theta, w)| (theta.cos(), w * theta.sin().powi(power)))
            .unzip();
        let total: f64 = raw.iter().sum();
        Self { cos, weights: raw.into_iter().map(|w| w / total).collect() }
    }
}

fn radon_once<S: SliceFunction + ?Sized>(
    f: &S,
    x0: f64,
    r: f64,
    rule: &ThetaRule,
) -> Result<Vec<(usize, AxialValue)>> {
    let mut acc: Vec<(usize, ComplexKahanSum, ComplexKahanSum)> = Vec::new();
    for (&s, &w) in rule.cos.iter().zip(&rule.weights) {
        let parts = f.slice_components(x0, r * s)?;
        if acc.is_empty() {
            acc = parts.iter().map(|(b, _)| (*b, ComplexKahanSum::default(), ComplexKahanSum::default())).collect();
        }
        for ((_, b_acc, c_acc), (_, v)) in acc.iter_mut().zip(&parts) {
            b_acc.add(v.alpha * w);
            c_acc.add(v.beta * (s * w));
        }
    }
    Ok(acc
        .into_iter()
        .map(|(b, bs, cs)| (b, AxialValue { b: bs.value(), c: cs.value() }))
        .collect())
}

fn max_difference(a: &[(usize, AxialValue)], b: &[(usize, AxialValue)]) -> (f64, f64) {
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for ((_, x), (_, y)) in a.iter().zip(b) {
        diff = diff.max((x.b - y.b).norm()).max((x.c - y.c).norm());
        scale = scale.max(y.b.norm()).max(y.c.norm());
    }
    (diff, scale)
}

/// Ř(F) for a slice function F, by the one-dimensional reduction
/// B = ∫ α(x₀, r s) dμ(s), C = ∫ s β(x₀, r s) dμ(s), s = ⟨ω, t⟩.
///
/// Each evaluation runs the θ-rule with n and 2n nodes and fails with
/// [`Error::NonConvergence`] when they disagree beyond the tolerance.
#[derive(Clone, Debug)]
pub struct DualRadon<S> {
    slice: S,
    coarse: Arc<ThetaRule>,
    fine: Arc<ThetaRule>,
    tolerance: f64,
}

impl<S: SliceFunction> DualRadon<S> {
    pub fn new(slice: S, q: &QuadratureSpec) -> Result<Self> {
        q.validate()?;
        let m = slice.m();
        Ok(Self {
            coarse: Arc::new(ThetaRule::new(m, q.n_points)),
            fine: Arc::new(ThetaRule::new(m, 2 * q.n_points)),
            slice,
            tolerance: q.tolerance,
        })
    }

    pub fn slice(&self) -> &S {
        &self.slice
    }
}

impl<S: SliceFunction> AxialFunction for DualRadon<S> {
    fn m(&self) -> usize {
        self.slice.m()
    }

    fn axial_components(&self, x0: f64, r: f64) -> Result<Vec<(usize, AxialValue)>> {
        let coarse = radon_once(&self.slice, x0, r, &self.coarse)?;
        let fine = radon_once(&self.slice, x0, r, &self.fine)?;
        let (diff, scale) = max_difference(&coarse, &fine);
        if diff > self.tolerance * scale.max(1.0) {
            return Err(Error::NonConvergence { difference: diff, tolerance: self.tolerance * scale.max(1.0) });
        }
        Ok(fine)
    }
}

/// Ř(F) at a point.
pub fn dual_radon<S: SliceFunction>(f: &S, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
    DualRadon::new(f, q)?.evaluate(pt)
}

/// Ř(F) by Monte Carlo over t ∈ S^{m−1}, evaluating the full multivector
/// F(x₀ + ⟨x̄, t⟩t). Deterministic for a given seed.
pub fn dual_radon_mc<S: SliceFunction>(f: &S, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
    q.validate()?;
    let m = f.m();
    if pt.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: pt.m() });
    }
    const CHUNK: usize = 4096;
    let chunks = q.mc_samples.div_ceil(CHUNK);
    let xvec = pt.to_paravector().xvec;
    let partial: Vec<Result<Vec<Complex64>>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(q.seed.wrapping_add(chunk as u64));
            let count = CHUNK.min(q.mc_samples - chunk * CHUNK);
            let mut acc = vec![ComplexKahanSum::default(); 1 << m];
            for _ in 0..count {
                let t: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
                let norm = t.iter().map(|x| x * x).sum::<f64>().sqrt();
                let t: Vec<f64> = t.iter().map(|x| x / norm).collect();
                let proj: f64 = t.iter().zip(&xvec).map(|(a, b)| a * b).sum();
                let value = slice_to_multivector(m, &f.slice_components(pt.x0, proj)?, &t)?;
                for (a, v) in acc.iter_mut().zip(value.coeffs()) {
                    a.add(*v);
                }
            }
            Ok(acc.iter().map(|a| a.value()).collect())
        })
        .collect();
    let mut total = vec![ComplexKahanSum::default(); 1 << m];
    for chunk in partial {
        for (t, v) in total.iter_mut().zip(chunk?) {
            t.add(v);
        }
    }
    let n = q.mc_samples.max(1) as f64;
    Multivector::from_coeffs(m, total.iter().map(|t| t.value() / n).collect())
}

/// M_a(h) = Ř(M_s(h)) as an axial evaluator.
pub fn axial_extension<H: AxisFunction>(h: H, q: &QuadratureSpec) -> Result<DualRadon<SliceExtension<H>>> {
    DualRadon::new(SliceExtension(h), q)
}

pub fn m_a<H: AxisFunction>(h: &H, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
    axial_extension(h, q)?.evaluate(pt)
}

/// M_a(h) from ∫ h(x₀ + i⟨x̄,t⟩)(1 − i t̄) dt, reduced to
/// B = ∫ h(x₀ + irs) dμ(s), C = −i ∫ s h(x₀ + irs) dμ(s).
pub fn m_a_axialtoo<H: AxisFunction>(h: &H, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
    q.validate()?;
    let m = h.m();
    if pt.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: pt.m() });
    }
    let rule = ThetaRule::new(m, 2 * q.n_points);
    let mut acc: Vec<(usize, ComplexKahanSum, ComplexKahanSum)> =
        h.blades().into_iter().map(|b| (b, ComplexKahanSum::default(), ComplexKahanSum::default())).collect();
    for (&s, &w) in rule.cos.iter().zip(&rule.weights) {
        let values = h.eval_blades(Complex64::new(pt.x0, pt.r * s));
        for ((_, b_acc, c_acc), (_, v)) in acc.iter_mut().zip(values) {
            b_acc.add(v * w);
            c_acc.add(-I * v * (s * w));
        }
    }
    let parts: Vec<(usize, AxialValue)> =
        acc.into_iter().map(|(b, bs, cs)| (b, AxialValue { b: bs.value(), c: cs.value() })).collect();
    axial_to_multivector(m, &parts, &pt.omega)
}

/// U_a(f) = M_a(e^{Δ/2} f) as an axial evaluator.
pub fn axial_transform(f: &CliffordSignal, q: &QuadratureSpec) -> Result<DualRadon<SliceExtension<CliffordSignal>>> {
    DualRadon::new(SliceExtension::u_s(f), q)
}

pub fn u_a(f: &CliffordSignal, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
    axial_transform(f, q)?.evaluate(pt)
}

/// U_a(f) through Ř applied to the momentum-quadrature evaluation of U_s(f).
pub fn u_a_via_slice_quadrature(f: &CliffordSignal, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
    DualRadon::new(UsQuadrature::new(f, q)?, q)?.evaluate(pt)
}

/// Real factors (b, c) with B = b·e^{ipx₀}, C = i·c·e^{ipx₀} for the axial
/// plane wave at z = p r, from the normalized-moment series
/// b = Σ cnorm[2j] z^{2j}/(2j)!, c = Σ cnorm[2j+2] z^{2j+1}/(2j+1)!.
pub fn axial_plane_wave_factors(m: usize, z: f64) -> (f64, f64) {
    let mf = m as f64;
    let z2 = z * z;
    let mut b = 1.0;
    let mut term = 1.0;
    let mut j = 0.0;
    loop {
        term *= z2 / ((2.0 * j + mf) * (2.0 * j + 2.0));
        b += term;
        j += 1.0;
        if term <= 1e-17 * b {
            break;
        }
    }
    let mut term = z / mf;
    let mut c = term;
    let mut j = 0.0;
    while term.abs() > 1e-17 * c.abs() {
        term *= z2 / ((2.0 * j + 2.0 + mf) * (2.0 * j + 2.0));
        c += term;
        j += 1.0;
    }
    (b, c)
}

/// Axial plane wave M_a(e^{ipx₀}) on the scalar blade.
#[derive(Clone, Copy, Debug)]
pub struct AxialPlaneWave {
    pub m: usize,
    pub p: f64,
}

impl AxialFunction for AxialPlaneWave {
    fn m(&self) -> usize {
        self.m
    }

    fn axial_components(&self, x0: f64, r: f64) -> Result<Vec<(usize, AxialValue)>> {
        let phase = Complex64::new(0.0, self.p * x0).exp();
        let (b, c) = axial_plane_wave_factors(self.m, self.p * r);
        Ok(vec![(0, AxialValue { b: phase * b, c: I * phase * c })])
    }
}

pub fn axial_plane_wave(m: usize, p: f64, pt: &AxialPoint) -> Result<Multivector> {
    AxialPlaneWave { m, p }.evaluate(pt)
}

/// Prefactor base used in the Bessel form of the axial plane wave.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselBase {
    /// (2/(pr))^{m/2−1}
    Real,
    /// (2i/(pr))^{m/2−1}, principal branch
    TwoI,
}

/// Γ(m/2)·base·[I_{m/2−1}(pr) + iω I_{m/2}(pr)]·e^{ipx₀}.
pub fn axial_plane_wave_bessel(m: usize, p: f64, pt: &AxialPoint, base: BesselBase) -> Result<Multivector> {
    let z = p * pt.r;
    let phase = Complex64::new(0.0, p * pt.x0).exp();
    let nu = 0.5 * m as f64 - 1.0;
    let (b, c) = if z.abs() < 1e-6 {
        axial_plane_wave_factors(m, z)
    } else {
        let za = z.abs();
        let pre = gamma(0.5 * m as f64) * (2.0 / za).powf(nu);
        (pre * bessel_i(nu, za)?, z.signum() * pre * bessel_i(nu + 1.0, za)?)
    };
    let rotate = match base {
        BesselBase::Real => Complex64::new(1.0, 0.0),
        BesselBase::TwoI => Complex64::from_polar(1.0, 0.5 * std::f64::consts::PI * nu),
    };
    let parts = [(0, AxialValue { b: rotate * phase * b, c: rotate * I * phase * c })];
    axial_to_multivector(m, &parts, &pt.omega)
}

/// (B, C) of X₀^{(j)} = B + ωC at (x₀, r):
/// B = μ₀^j ρ^j C_j^{(m−1)/2}(x₀/ρ),
/// C = μ₀^j (m−1)/(m+j−1) ρ^{j−1} C_{j−1}^{(m+1)/2}(x₀/ρ)·r, ρ² = x₀² + r².
pub fn ck_axial(j: usize, x0: f64, r: f64, table: &CoefficientTable) -> Result<(f64, f64)> {
    if j > table.max_degree {
        return Err(Error::DegreeOutOfRange { degree: j, max: table.max_degree });
    }
    let mf = table.m as f64;
    let rho_sq = x0 * x0 + r * r;
    let mu = table.mu0[j];
    let b = mu * gegenbauer_homogeneous(j, 0.5 * (mf - 1.0), x0, rho_sq);
    let c = if j == 0 {
        0.0
    } else {
        mu * (mf - 1.0) / (mf + j as f64 - 1.0) * gegenbauer_homogeneous(j - 1, 0.5 * (mf + 1.0), x0, rho_sq) * r
    };
    Ok((b, c))
}

/// X₀^{(j)}(x₀ + x̄).
pub fn ck_polynomial(j: usize, pt: &Paravector, table: &CoefficientTable) -> Result<Multivector> {
    if pt.m() != table.m {
        return Err(Error::DimensionMismatch { expected: table.m, found: pt.m() });
    }
    let (b, c) = ck_axial(j, pt.x0, pt.vector_norm(), table)?;
    // C carries the factor r, so C·ω = (C/r)·x̄ with C/r polynomial.
    let mut mv = Multivector::zero(table.m)?;
    if j > 0 {
        let mf = table.m as f64;
        let rho_sq = pt.x0 * pt.x0 + pt.vector_norm().powi(2);
        let per_r = table.mu0[j] * (mf - 1.0) / (mf + j as f64 - 1.0)
            * gegenbauer_homogeneous(j - 1, 0.5 * (mf + 1.0), pt.x0, rho_sq);
        mv = Multivector::vector(&pt.xvec.iter().map(|x| x * per_r).collect::<Vec<_>>())?;
        debug_assert!((per_r * pt.vector_norm() - c).abs() <= 1e-9 * c.abs().max(1.0));
    }
    *mv.coeff_mut(0) = Complex64::new(b, 0.0);
    Ok(mv)
}

/// X₀^{(j)} as an axial function.
#[derive(Clone, Debug)]
pub struct CkPolynomial {
    pub j: usize,
    pub table: Arc<CoefficientTable>,
}

impl CkPolynomial {
    pub fn new(m: usize, j: usize) -> Result<Self> {
        Ok(Self { j, table: coefficient_table(m, j)? })
    }
}

impl AxialFunction for CkPolynomial {
    fn m(&self) -> usize {
        self.table.m
    }

    fn axial_components(&self, x0: f64, r: f64) -> Result<Vec<(usize, AxialValue)>> {
        let (b, c) = ck_axial(self.j, x0, r, &self.table)?;
        Ok(vec![(0, AxialValue { b: Complex64::new(b, 0.0), c: Complex64::new(c, 0.0) })])
    }
}

/// Σ_i X₀^{(i)} f_i with multivector coefficients f_i (X₀^{(i)} on the left).
#[derive(Clone, Debug, PartialEq)]
pub struct AxialSeries {
    pub m: usize,
    pub coeffs: Vec<Multivector>,
}

impl AxialSeries {
    pub fn new(m: usize, coeffs: Vec<Multivector>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.m() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: bad.m() });
        }
        Multivector::zero(m)?;
        Ok(Self { m, coeffs })
    }

    /// Scalar coefficient sequence.
    pub fn scalar(m: usize, coeffs: &[Complex64]) -> Result<Self> {
        let coeffs = coeffs.iter().map(|&c| Multivector::scalar(m, c)).collect::<Result<Vec<_>>>()?;
        Self::new(m, coeffs)
    }

    pub fn scalar_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.scalar_part()).collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl AxialFunction for AxialSeries {
    fn m(&self) -> usize {
        self.m
    }

    fn axial_components(&self, x0: f64, r: f64) -> Result<Vec<(usize, AxialValue)>> {
        let table = coefficient_table(self.m, self.coeffs.len().max(1) - 1)?;
        let mut out: Vec<(usize, AxialValue)> = (0..1usize << self.m).map(|b| (b, AxialValue::default())).collect();
        for (i, f) in self.coeffs.iter().enumerate() {
            let (b, c) = ck_axial(i, x0, r, &table)?;
            for (blade, v) in f.coeffs().iter().enumerate() {
                if *v != ZERO {
                    out[blade].1.b += v * b;
                    out[blade].1.c += v * c;
                }
            }
        }
        Ok(out)
    }
}

/// f_i = a_i / ξ_i from the Taylor data Σ a_i x₀^i of a polynomial axis function.
pub fn axial_series_from_axis(h: &PolySignal, table: &CoefficientTable) -> Result<AxialSeries> {
    if h.m() != table.m {
        return Err(Error::DimensionMismatch { expected: table.m, found: h.m() });
    }
    let degree = h.degree();
    if degree > table.max_degree {
        return Err(Error::DegreeOutOfRange { degree, max: table.max_degree });
    }
    let mut coeffs = vec![Multivector::zero(table.m)?; degree + 1];
    for (&blade, poly) in h.components() {
        for (i, a) in poly.iter().enumerate() {
            *coeffs[i].coeff_mut(blade) += a / table.xi[i];
        }
    }
    AxialSeries::new(table.m, coeffs)
}

/// Truncated series of U_a(f): Taylor data of e^{Δ/2} f up to `degree`.
pub fn axial_series_of_transform(f: &CliffordSignal, degree: usize) -> Result<AxialSeries> {
    let table = coefficient_table(f.m(), degree)?;
    let mut coeffs = vec![Multivector::zero(f.m())?; degree + 1];
    for (blade, taylor) in f.heat_evolve().taylor(degree) {
        for (i, a) in taylor.iter().enumerate() {
            *coeffs[i].coeff_mut(blade) += a / table.xi[i];
        }
    }
    AxialSeries::new(f.m(), coeffs)
}

/// The creation operator on axial series:
/// out_{2i+1} += (2i+1)/(2i+m)·f_{2i}, out_{2i+2} += f_{2i+1}.
pub fn axial_creation(series: &AxialSeries) -> Result<AxialSeries> {
    let mf = series.m as f64;
    let mut out = vec![Multivector::zero(series.m)?; series.coeffs.len() + 1];
    for (k, f) in series.coeffs.iter().enumerate() {
        let factor = if k % 2 == 0 { (k as f64 + 1.0) / (k as f64 + mf) } else { 1.0 };
        out[k + 1] += &f.scale(Complex64::new(factor, 0.0));
    }
    AxialSeries::new(series.m, out)
}

/// Max over grid nodes and blades of the central-difference residuals of
/// ∂₀B − ∂_rC − (m−1)C/r = 0 and ∂₀C + ∂_rB = 0.
pub fn vekua_residual<F: AxialFunction>(f: &F, grid: &Grid2, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::DegenerateGrid(format!("step must be positive, got {h}")));
    }
    if grid.r.start.min(grid.r.end) <= h {
        return Err(Error::DegenerateGrid("r must exceed the step on the whole grid".into()));
    }
    let m1 = f.m() as f64 - 1.0;
    let inv = 0.5 / h;
    let mut worst: f64 = 0.0;
    for (x0, r) in grid.nodes() {
        let centre = f.axial_components(x0, r)?;
        let xp = f.axial_components(x0 + h, r)?;
        let xm = f.axial_components(x0 - h, r)?;
        let rp = f.axial_components(x0, r + h)?;
        let rm = f.axial_components(x0, r - h)?;
        for k in 0..centre.len() {
            let c = centre[k].1.c;
            let db0 = (xp[k].1.b - xm[k].1.b) * inv;
            let dc0 = (xp[k].1.c - xm[k].1.c) * inv;
            let dbr = (rp[k].1.b - rm[k].1.b) * inv;
            let dcr = (rp[k].1.c - rm[k].1.c) * inv;
            worst = worst.max((db0 - dcr - c * (m1 / r)).norm()).max((dc0 + dbr).norm());
        }
    }
    Ok(worst)
}

/// Axis restriction of an H_a element in packet or polynomial form.
#[derive(Clone, Debug, PartialEq)]
pub enum AxisRestriction {
    Signal(CliffordSignal),
    Polynomial(PolySignal),
}

impl AxisFunction for AxisRestriction {
    fn m(&self) -> usize {
        match self {
            Self::Signal(s) => s.m(),
            Self::Polynomial(p) => p.m(),
        }
    }

    fn blades(&self) -> Vec<usize> {
        match self {
            Self::Signal(s) => s.blades(),
            Self::Polynomial(p) => p.blades(),
        }
    }

    fn eval_blades(&self, z: Complex64) -> Vec<(usize, Complex64)> {
        match self {
            Self::Signal(s) => s.eval_blades(z),
            Self::Polynomial(p) => p.eval_blades(z),
        }
    }

    fn envelopes(&self) -> Option<Vec<Envelope>> {
        match self {
            Self::Signal(s) => s.envelopes(),
            Self::Polynomial(_) => None,
        }
    }
}

/// What is known about an element of H_a beyond its point values.
#[derive(Clone, Debug, PartialEq)]
pub enum AxisData {
    /// F = U_a(f); holds f.
    Transform(CliffordSignal),
    /// F = M_a(g); holds the axis restriction g.
    Extension(AxisRestriction),
    /// Only point values are available.
    Opaque,
}

/// Element of the axial image space, carried with its axis data.
#[derive(Clone, Debug, PartialEq)]
pub struct HaElement {
    pub m: usize,
    pub axis: AxisData,
}

impl HaElement {
    pub fn from_transform(f: &CliffordSignal) -> Self {
        Self { m: f.m(), axis: AxisData::Transform(f.clone()) }
    }

    pub fn from_axis(g: AxisRestriction) -> Self {
        Self { m: g.m(), axis: AxisData::Extension(g) }
    }

    pub fn opaque(m: usize) -> Self {
        Self { m, axis: AxisData::Opaque }
    }

    /// The axis restriction F(x₀, 0).
    pub fn axis_restriction(&self) -> Result<AxisRestriction> {
        match &self.axis {
            AxisData::Transform(f) => Ok(AxisRestriction::Signal(f.heat_evolve())),
            AxisData::Extension(g) => Ok(g.clone()),
            AxisData::Opaque => Err(Error::UnsupportedInput(
                "element carries no axis restriction in packet or polynomial form".into(),
            )),
        }
    }

    pub fn evaluate(&self, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
        m_a(&self.axis_restriction()?, pt, q)
    }
}

/// Ř⁻¹(F) = M_s(F restricted to the axis).
pub fn radon_inverse_on_ha(f: &HaElement) -> Result<SliceExtension<AxisRestriction>> {
    Ok(SliceExtension(f.axis_restriction()?))
}

/// ⟨F, G⟩ on H_a: the dν_m inner product of the slice preimages.
pub fn ha_inner(f: &HaElement, g: &HaElement, q: &QuadratureSpec) -> Result<Complex64> {
    if f.m != g.m {
        return Err(Error::DimensionMismatch { expected: f.m, found: g.m });
    }
    let pf = radon_inverse_on_ha(f)?;
    let pg = radon_inverse_on_ha(g)?;
    for p in [&pf, &pg] {
        if matches!(p.0, AxisRestriction::Polynomial(_)) {
            return Err(Error::UnsupportedInput("inner product needs square-integrable axis data".into()));
        }
    }
    crate::harness::nu_m_inner(&pf, &pg, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::WavePacket;
    use crate::slice::{slice_power, SlicePlaneWave};
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit(v: &[f64]) -> Vec<f64> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter().map(|x| x / n).collect()
    }

    fn random_point(rng: &mut ChaCha8Rng, m: usize) -> AxialPoint {
        let v: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        AxialPoint::new(rng.random_range(-1.5..1.5), rng.random_range(0.05..1.5), unit(&v)).unwrap()
    }

    fn fast_spec() -> QuadratureSpec {
        QuadratureSpec { n_points: 64, ..QuadratureSpec::default() }
    }

    #[test]
    fn radon_of_constants_and_first_power() {
        for m in [2, 3, 5] {
            let q = fast_spec();
            let om = unit(&(1..=m).map(|k| k as f64).collect::<Vec<_>>());
            let pt = AxialPoint::new(0.4, 1.2, om.clone()).unwrap();
            let one = slice_power(m, 0).unwrap();
            assert!((dual_radon(&one, &pt, &q).unwrap().coeff(0) - c(1.0, 0.0)).norm() < 1e-14);
            let got = dual_radon(&slice_power(m, 1).unwrap(), &pt, &q).unwrap();
            let mut expected = Multivector::vector(&om.iter().map(|w| 1.2 * w / m as f64).collect::<Vec<_>>()).unwrap();
            *expected.coeff_mut(0) = c(0.4, 0.0);
            assert!((&got - &expected).norm() < 1e-14, "m={m}");
        }
    }

    #[test]
    fn second_power_extension() {
        for m in [2, 3, 4] {
            let om = unit(&vec![1.0; m]);
            let (x0, r) = (0.6, 0.9);
            let pt = AxialPoint::new(x0, r, om.clone()).unwrap();
            let h = PolySignal::scalar(m, vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
            let got = m_a(&h, &pt, &fast_spec()).unwrap();
            let mf = m as f64;
            let mut expected = Multivector::vector(&om.iter().map(|w| 2.0 * x0 * r * w / mf).collect::<Vec<_>>()).unwrap();
            *expected.coeff_mut(0) = c(x0 * x0 - r * r / mf, 0.0);
            assert!((&got - &expected).norm() < 1e-13);
        }
    }

    #[test]
    fn ladder_identity() {
        let q = fast_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 2..=6 {
            let table = coefficient_table(m, 8).unwrap();
            for k in 0..=8 {
                let pt = random_point(&mut rng, m);
                let radon = dual_radon(&slice_power(m, k).unwrap(), &pt, &q).unwrap();
                let ck = ck_polynomial(k, &pt.to_paravector(), &table).unwrap().scale(c(table.lambda[k], 0.0));
                assert!((&radon - &ck).norm() < 1e-9 * ck.norm().max(1.0), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn ck_examples() {
        let table = coefficient_table(3, 6).unwrap();
        let pt = Paravector::new(0.7, vec![0.2, -0.4, 1.1]);
        assert_eq!(ck_polynomial(0, &pt, &table).unwrap().coeff(0), c(1.0, 0.0));
        let x1 = ck_polynomial(1, &pt, &table).unwrap();
        let mut expected = pt.embed().unwrap();
        *expected.coeff_mut(0) = c(3.0 * 0.7, 0.0);
        assert!((&x1 - &expected).norm() < 1e-14);
        let on_plane = Paravector::new(0.0, vec![0.2, -0.4, 1.1]);
        let xbar = on_plane.embed().unwrap();
        let mut power = Multivector::scalar(3, c(1.0, 0.0)).unwrap();
        for j in 0..=6 {
            let x = ck_polynomial(j, &on_plane, &table).unwrap();
            assert!((&x - &power).norm() < 1e-12 * power.norm().max(1.0), "j={j}");
            power = power.product(&xbar).unwrap();
        }
        assert!(matches!(ck_polynomial(7, &pt, &table), Err(Error::DegreeOutOfRange { .. })));
        // removable singularity at the origin
        let origin = Paravector::new(0.0, vec![0.0; 3]);
        assert_eq!(ck_polynomial(4, &origin, &table).unwrap().norm(), 0.0);
    }

    #[test]
    fn ck_polynomials_are_monogenic() {
        use crate::clifford::{dirac_apply_fd, MvGrid};
        for m in [2, 3] {
            let table = coefficient_table(m, 5).unwrap();
            for j in 0..=5 {
                let origin: Vec<f64> = (0..=m).map(|k| 0.1 + 0.2 * k as f64).collect();
                let res: Vec<f64> = [2e-3, 1e-3]
                    .iter()
                    .map(|&h| {
                        let grid = MvGrid::sample(m, &origin, 3, h, |p| ck_polynomial(j, p, &table)).unwrap();
                        dirac_apply_fd(&grid).unwrap().values[0].norm()
                    })
                    .collect();
                // exact below degree 3, pure O(h²) truncation above
                assert!(res[1] < 1e-11 || (res[0] / res[1]).log2() > 1.95, "m={m} j={j}: {res:?}");
            }
        }
    }

    #[test]
    fn plane_wave_series_m3_elementary() {
        for z in [-2.0f64, -0.3, 1e-7, 0.5, 1.0, 4.0] {
            let (b, cc) = axial_plane_wave_factors(3, z);
            let eb = if z.abs() < 1e-4 { 1.0 + z * z / 6.0 } else { z.sinh() / z };
            let ec = if z.abs() < 1e-4 { z / 3.0 } else { (z.cosh() - z.sinh() / z) / z };
            assert!((b - eb).abs() < 1e-12 * eb.abs().max(1.0), "z={z}");
            assert!((cc - ec).abs() < 1e-12 * ec.abs().max(1.0), "z={z}");
        }
        let pt = AxialPoint::new(0.0, 1.0, vec![1.0, 0.0, 0.0]).unwrap();
        let w = axial_plane_wave(3, 1.0, &pt).unwrap();
        assert!((w.coeff(0) - c(1f64.sinh(), 0.0)).norm() < 1e-14);
        let axis = axial_plane_wave(3, 1.3, &AxialPoint::on_axis(0.4, 3)).unwrap();
        assert!((axis.coeff(0) - c(0.0, 1.3 * 0.4).exp()).norm() < 1e-15);
        assert!((axis.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn plane_wave_bessel_bases() {
        for m in [2, 3, 4, 5] {
            let pt = AxialPoint::new(0.3, 0.9, unit(&vec![1.0; m])).unwrap();
            for p in [-1.7, 0.8, 2.5] {
                let series = axial_plane_wave(m, p, &pt).unwrap();
                let bessel = axial_plane_wave_bessel(m, p, &pt, BesselBase::Real).unwrap();
                assert!((&series - &bessel).norm() < 1e-12 * series.norm(), "m={m} p={p}");
                let two_i = axial_plane_wave_bessel(m, p, &pt, BesselBase::TwoI).unwrap();
                let gap = (&series - &two_i).norm();
                if m == 2 {
                    assert!(gap < 1e-12);
                } else {
                    assert!(gap > 1e-3, "m={m}");
                }
            }
        }
    }

    #[test]
    fn plane_wave_vs_sphere_quadrature() {
        let q = fast_spec();
        for m in [2, 3, 4] {
            let pt = AxialPoint::new(0.3, 0.9, unit(&vec![1.0; m])).unwrap();
            let quad = dual_radon(&SlicePlaneWave { m, p: 1.4 }, &pt, &q).unwrap();
            let series = axial_plane_wave(m, 1.4, &pt).unwrap();
            assert!((&quad - &series).norm() < 1e-9);
        }
    }

    #[test]
    fn monte_carlo_sphere_agrees_with_reduction() {
        let q = QuadratureSpec { mc_samples: 200_000, ..fast_spec() };
        for m in [2, 3] {
            let pt = AxialPoint::new(0.2, 1.1, unit(&vec![1.0; m])).unwrap();
            let mut f = CliffordSignal::zero(m).unwrap();
            f.add_packet(0, WavePacket::gaussian(c(1.0, 0.0), 0.0, 1.0, 0.5).unwrap()).unwrap();
            f.add_packet(0b11, WavePacket::gaussian(c(0.0, 0.5), 0.3, 0.8, 0.0).unwrap()).unwrap();
            let ev = SliceExtension::u_s(&f);
            let reduced = dual_radon(&ev, &pt, &q).unwrap();
            let mc = dual_radon_mc(&ev, &pt, &q).unwrap();
            assert!((&reduced - &mc).norm() < 1e-2 * reduced.norm(), "m={m}");
            assert_eq!(mc, dual_radon_mc(&ev, &pt, &q).unwrap());
        }
    }

    #[test]
    fn axialtoo_matches_reduction() {
        let q = fast_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [2, 3, 4] {
            let mut h = CliffordSignal::zero(m).unwrap();
            h.add_packet(0, WavePacket::new(vec![c(0.4, 0.1), c(0.2, -0.3)], 0.3, 1.2, 0.7).unwrap()).unwrap();
            h.add_packet(0b10, WavePacket::gaussian(c(0.0, 0.8), -0.5, 1.5, -0.4).unwrap()).unwrap();
            for _ in 0..5 {
                let pt = random_point(&mut rng, m);
                let a = m_a(&h, &pt, &q).unwrap();
                let b = m_a_axialtoo(&h, &pt, &q).unwrap();
                assert!((&a - &b).norm() < 1e-8 * a.norm().max(1.0));
            }
        }
    }

    #[test]
    fn axial_restriction() {
        let q = fast_spec();
        let h = CliffordSignal::from_packet(3, 0b101, WavePacket::new(vec![c(1.0, 0.5), c(0.0, 0.3)], 0.2, 0.9, 1.0).unwrap()).unwrap();
        for x0 in [-1.0, 0.0, 0.8] {
            let got = m_a(&h, &AxialPoint::on_axis(x0, 3), &q).unwrap();
            assert!((got.coeff(0b101) - h.eval_blade(0b101, c(x0, 0.0))).norm() < 1e-12);
        }
        let zero = CliffordSignal::zero(3).unwrap();
        let pt = AxialPoint::new(0.1, 0.7, vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(u_a(&zero, &pt, &q).unwrap().norm(), 0.0);
    }

    #[test]
    fn two_paths_of_axial_transform() {
        let q = fast_spec();
        let f = CliffordSignal::from_packet(3, 0, WavePacket::gaussian(c(1.0, 0.0), 0.0, 1.0, 0.0).unwrap()).unwrap();
        let pt = AxialPoint::new(0.5, 1.0, unit(&[1.0, 2.0, 2.0])).unwrap();
        let a = u_a(&f, &pt, &q).unwrap();
        let b = u_a_via_slice_quadrature(&f, &pt, &q).unwrap();
        assert!((&a - &b).norm() < 1e-8);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let q = QuadratureSpec { n_points: 16, ..QuadratureSpec::default() };
        let pt = AxialPoint::new(0.0, 30.0, vec![1.0, 0.0, 0.0]).unwrap();
        let err = dual_radon(&SlicePlaneWave { m: 3, p: 1.0 }, &pt, &q).unwrap_err();
        assert!(err.is_numeric(), "{err}");
    }

    #[test]
    fn series_from_axis() {
        let table = coefficient_table(3, 6).unwrap();
        let x = PolySignal::scalar(3, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let s = axial_series_from_axis(&x, &table).unwrap();
        assert_eq!(s.scalar_coeffs(), vec![c(0.0, 0.0), c(1.0 / 3.0, 0.0)]);
        let one = PolySignal::scalar(3, vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(axial_series_from_axis(&one, &table).unwrap().scalar_coeffs(), vec![c(1.0, 0.0)]);
        let big = PolySignal::scalar(3, vec![c(1.0, 0.0); 8]).unwrap();
        assert!(axial_series_from_axis(&big, &table).is_err());

        let q = fast_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in [2, 3] {
            let table = coefficient_table(m, 6).unwrap();
            let mut h = PolySignal::new(m).unwrap();
            h.set_component(0, (0..=6).map(|k| c(0.3 * k as f64 - 0.5, 0.1 * k as f64)).collect()).unwrap();
            h.set_component(0b11, vec![c(0.2, 0.0), c(0.0, 0.0), c(-0.7, 0.4)]).unwrap();
            let series = axial_series_from_axis(&h, &table).unwrap();
            for x0 in [-0.8, 0.3] {
                let on_axis = series.evaluate(&AxialPoint::on_axis(x0, m)).unwrap();
                assert!((on_axis.coeff(0) - h.eval_blades(c(x0, 0.0))[0].1).norm() < 1e-12);
            }
            for _ in 0..10 {
                let pt = random_point(&mut rng, m);
                let a = series.evaluate(&pt).unwrap();
                let b = m_a(&h, &pt, &q).unwrap();
                assert!((&a - &b).norm() < 1e-9 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn creation_on_series() {
        let one = AxialSeries::scalar(3, &[c(1.0, 0.0)]).unwrap();
        assert_eq!(axial_creation(&one).unwrap().scalar_coeffs(), vec![c(0.0, 0.0), c(1.0 / 3.0, 0.0)]);
        let e1 = AxialSeries::scalar(3, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(
            axial_creation(&e1).unwrap().scalar_coeffs(),
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
    }

    #[test]
    fn creation_ladder_matches_transform() {
        let q = fast_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for m in [2, 3] {
            let f = CliffordSignal::from_packet(
                m,
                0,
                WavePacket::new(vec![c(0.5, 0.0), c(0.2, 0.1), c(-0.3, 0.0), c(0.0, 0.1), c(0.05, 0.0)], 0.0, 1.0, 0.0).unwrap(),
            )
            .unwrap();
            let ladder = axial_creation(&axial_series_of_transform(&f, 70).unwrap()).unwrap();
            let direct = axial_transform(&f.apply_creation(), &q).unwrap();
            for _ in 0..5 {
                let pt = random_point(&mut rng, m);
                let a = ladder.evaluate(&pt).unwrap();
                let b = direct.evaluate(&pt).unwrap();
                assert!((&a - &b).norm() < 1e-7 * b.norm().max(1.0), "m={m}");
            }
        }
    }

    #[test]
    fn vekua_examples() {
        let grid = Grid2::new(crate::grid::Axis::new(-0.5, 0.5, 3).unwrap(), crate::grid::Axis::new(0.5, 1.0, 3).unwrap());
        let pw = AxialPlaneWave { m: 3, p: 1.0 };
        let r1 = vekua_residual(&pw, &grid, 2e-3).unwrap();
        let r2 = vekua_residual(&pw, &grid, 1e-3).unwrap();
        assert!((r1 / r2).log2() >= 1.9, "{r1} {r2}");

        struct Control;
        impl AxialFunction for Control {
            fn m(&self) -> usize {
                3
            }
            fn axial_components(&self, _x0: f64, r: f64) -> Result<Vec<(usize, AxialValue)>> {
                Ok(vec![(0, AxialValue { b: Complex64::new(r, 0.0), c: ZERO })])
            }
        }
        let c1 = vekua_residual(&Control, &grid, 2e-3).unwrap();
        let c2 = vekua_residual(&Control, &grid, 1e-3).unwrap();
        assert!((c1 - 1.0).abs() < 1e-9 && (c2 - 1.0).abs() < 1e-9);

        let x3 = CkPolynomial::new(3, 3).unwrap();
        // cubic: the central-difference error is h²/6 times constant third derivatives
        let r1 = vekua_residual(&x3, &grid, 1e-3).unwrap();
        let r2 = vekua_residual(&x3, &grid, 5e-4).unwrap();
        assert!((r1 / 1e-6 - 6.0).abs() < 1e-4 && (r2 / 2.5e-7 - 6.0).abs() < 1e-3, "X3 residual {r1} {r2}");
        let x2 = CkPolynomial::new(3, 2).unwrap();
        assert!(vekua_residual(&x2, &grid, 1e-3).unwrap() <= 1e-9);
    }

    #[test]
    fn ha_inverse_examples() {
        let q = fast_spec();
        let x = PolySignal::scalar(3, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let inv = radon_inverse_on_ha(&HaElement::from_axis(AxisRestriction::Polynomial(x))).unwrap();
        let pt = AxialPoint::new(0.4, 0.7, vec![0.0, 1.0, 0.0]).unwrap();
        let mut expected = pt.to_paravector().embed().unwrap();
        assert!((&inv.evaluate(&pt).unwrap() - &expected).norm() < 1e-15);
        expected = Multivector::scalar(3, c(1.0, 0.0)).unwrap();
        let one = HaElement::from_axis(AxisRestriction::Polynomial(PolySignal::scalar(3, vec![c(1.0, 0.0)]).unwrap()));
        assert!((&radon_inverse_on_ha(&one).unwrap().evaluate(&pt).unwrap() - &expected).norm() < 1e-15);
        assert!(matches!(radon_inverse_on_ha(&HaElement::opaque(3)), Err(Error::UnsupportedInput(_))));
        assert!(ha_inner(&one, &one, &q).is_err());

        let f = CliffordSignal::from_packet(3, 0, WavePacket::new(vec![c(0.3, 0.2)], 0.4, 1.1, 0.9).unwrap()).unwrap();
        let element = HaElement::from_transform(&f);
        let g = radon_inverse_on_ha(&element).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let pt = random_point(&mut rng, 3);
            let round_trip = dual_radon(&g, &pt, &q).unwrap();
            let direct = u_a(&f, &pt, &q).unwrap();
            assert!((&round_trip - &direct).norm() < 1e-8);
        }
    }
}
