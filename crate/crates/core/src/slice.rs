//! Slice monogenic extension M_s and the slice transform U_s = M_s ∘ e^{Δ/2}.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::clifford::{AxialPoint, Multivector};
use crate::error::{Error, Result};
use crate::grid::Grid2;
use crate::quadrature::{ComplexKahanSum, GaussLegendre};
use crate::signal::{AxisFunction, CliffordSignal, Envelope, PolySignal, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Value α + ωβ of one blade component of a slice function.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SliceValue {
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// ℂ_m-valued slice function, F(x₀ + vω) = Σ_A (α_A(x₀,v) + ω β_A(x₀,v)) e_A
/// with v ∈ ℝ signed (α even, β odd in v).
pub trait SliceFunction: Sync {
    fn m(&self) -> usize;

    fn slice_components(&self, x0: f64, v: f64) -> Result<Vec<(usize, SliceValue)>>;

    /// Envelopes of the axis restriction, when it decays like a Gaussian.
    fn envelopes(&self) -> Option<Vec<Envelope>> {
        None
    }

    fn evaluate(&self, pt: &AxialPoint) -> Result<Multivector> {
        if pt.m() != self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: pt.m() });
        }
        slice_to_multivector(self.m(), &self.slice_components(pt.x0, pt.r)?, &pt.omega)
    }
}

impl<T: SliceFunction + ?Sized> SliceFunction for &T {
    fn m(&self) -> usize {
        (**self).m()
    }

    fn slice_components(&self, x0: f64, v: f64) -> Result<Vec<(usize, SliceValue)>> {
        (**self).slice_components(x0, v)
    }

    fn envelopes(&self) -> Option<Vec<Envelope>> {
        (**self).envelopes()
    }
}

/// Σ_A (α_A e_A + ω·β_A e_A), ω multiplying from the left.
pub fn slice_to_multivector(m: usize, parts: &[(usize, SliceValue)], omega: &[f64]) -> Result<Multivector> {
    let mut alpha = Multivector::zero(m)?;
    let mut beta = Multivector::zero(m)?;
    for (blade, v) in parts {
        *alpha.coeff_mut(*blade) += v.alpha;
        *beta.coeff_mut(*blade) += v.beta;
    }
    alpha += &beta.left_mul_vector(omega)?;
    Ok(alpha)
}

/// M_s(h) for an entire axis function h, by the reflection identity
/// α = ½[h(x₀+iv) + h(x₀−iv)], β = (1/2i)[h(x₀+iv) − h(x₀−iv)].
#[derive(Clone, Debug)]
pub struct SliceExtension<H>(pub H);

impl SliceExtension<CliffordSignal> {
    /// The evaluator of U_s(f) = M_s(e^{Δ/2} f).
    pub fn u_s(f: &CliffordSignal) -> Self {
        Self(f.heat_evolve())
    }
}

impl<H: AxisFunction> SliceFunction for SliceExtension<H> {
    fn m(&self) -> usize {
        self.0.m()
    }

    fn slice_components(&self, x0: f64, v: f64) -> Result<Vec<(usize, SliceValue)>> {
        if v == 0.0 {
            return Ok(self
                .0
                .eval_blades(Complex64::new(x0, 0.0))
                .into_iter()
                .map(|(b, h)| (b, SliceValue { alpha: h, beta: Complex64::new(0.0, 0.0) }))
                .collect());
        }
        let plus = self.0.eval_blades(Complex64::new(x0, v));
        let minus = self.0.eval_blades(Complex64::new(x0, -v));
        Ok(plus
            .into_iter()
            .zip(minus)
            .map(|((b, hp), (_, hm))| {
                (b, SliceValue { alpha: 0.5 * (hp + hm), beta: (hp - hm) / (2.0 * I) })
            })
            .collect())
    }

    fn envelopes(&self) -> Option<Vec<Envelope>> {
        self.0.envelopes()
    }
}

/// M_s(h) at a point.
pub fn slice_extend<H: AxisFunction>(h: &H, pt: &AxialPoint) -> Result<Multivector> {
    SliceExtension(h).evaluate(pt)
}

impl<H: AxisFunction + ?Sized> AxisFunction for &H {
    fn m(&self) -> usize {
        (**self).m()
    }

    fn blades(&self) -> Vec<usize> {
        (**self).blades()
    }

    fn eval_blades(&self, z: Complex64) -> Vec<(usize, Complex64)> {
        (**self).eval_blades(z)
    }

    fn envelopes(&self) -> Option<Vec<Envelope>> {
        (**self).envelopes()
    }
}

/// U_s(f) at a point, in closed form.
pub fn u_s(f: &CliffordSignal, pt: &AxialPoint) -> Result<Multivector> {
    SliceExtension::u_s(f).evaluate(pt)
}

/// Σ_k x̄^k h^{(k)}(x₀)/k! for a polynomial h, summed exactly.
pub fn slice_extend_series(h: &PolySignal, pt: &AxialPoint) -> Result<Multivector> {
    let m = h.m();
    let xvec = pt.to_paravector().xvec;
    let mut out = Multivector::zero(m)?;
    for (&blade, coeffs) in h.components() {
        // Taylor coefficients at x₀: d_k = h^{(k)}(x₀)/k!
        let n = coeffs.len();
        let mut d = coeffs.clone();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let carry = d[k + 1] * pt.x0;
                d[k] += carry;
            }
        }
        let mut power = Multivector::blade(m, blade, Complex64::new(1.0, 0.0))?;
        for dk in d {
            out += &power.scale(dk);
            power = power.left_mul_vector(&xvec)?;
        }
    }
    Ok(out)
}

/// Slice plane wave (cosh(pv) + iω sinh(pv))·e^{ipx₀} on the scalar blade.
#[derive(Clone, Copy, Debug)]
pub struct SlicePlaneWave {
    pub m: usize,
    pub p: f64,
}

impl SliceFunction for SlicePlaneWave {
    fn m(&self) -> usize {
        self.m
    }

    fn slice_components(&self, x0: f64, v: f64) -> Result<Vec<(usize, SliceValue)>> {
        let phase = Complex64::new(0.0, self.p * x0).exp();
        let pv = self.p * v;
        Ok(vec![(0, SliceValue { alpha: phase * pv.cosh(), beta: I * phase * pv.sinh() })])
    }
}

/// e^{ip(x₀+x̄)} summed as a truncated exponential series of multivectors.
pub fn slice_plane_wave_series(m: usize, p: f64, pt: &AxialPoint, terms: usize) -> Result<Multivector> {
    if pt.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: pt.m() });
    }
    let xvec: Vec<f64> = pt.to_paravector().xvec.iter().map(|x| p * x).collect();
    let exponent = Multivector::vector(&xvec)?.scale(I);
    let phase = Complex64::new(0.0, p * pt.x0).exp();
    Ok(exponent.exp_series(terms).scale(phase))
}

/// U_s(f) evaluated by quadrature of
/// (2π)^{−1/2} ∫ e^{−p²/2} e^{ipx₀} (cosh(pv) + iω sinh(pv)) f̃(p) dp.
#[derive(Clone, Debug)]
pub struct UsQuadrature {
    spectrum: CliffordSignal,
    heat: CliffordSignal,
    spec: QuadratureSpec,
    rule: GaussLegendre,
}

impl UsQuadrature {
    pub fn new(f: &CliffordSignal, spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let bound = (-0.5 * spec.p_truncation * spec.p_truncation).exp();
        if bound > spec.tolerance {
            return Err(Error::Truncation { bound, tolerance: spec.tolerance });
        }
        Ok(Self {
            spectrum: f.fourier(),
            heat: f.heat_evolve(),
            spec: spec.clone(),
            rule: GaussLegendre::new(spec.p_nodes),
        })
    }
}

impl SliceFunction for UsQuadrature {
    fn m(&self) -> usize {
        self.spectrum.m()
    }

    fn slice_components(&self, x0: f64, v: f64) -> Result<Vec<(usize, SliceValue)>> {
        let norm = 1.0 / (2.0 * PI).sqrt();
        let mut out = Vec::new();
        for (&blade, packets) in self.spectrum.components() {
            let mut alpha = ComplexKahanSum::default();
            let mut beta = ComplexKahanSum::default();
            for packet in packets {
                // f̃ packet times e^{−p²/2}: Gaussian with precision 1/σ² + 1,
                // shifted by ±v/precision through cosh/sinh.
                let prec = 1.0 / (packet.width * packet.width) + 1.0;
                let centre = packet.center / (packet.width * packet.width) / prec;
                let w = prec.sqrt().recip();
                let half = w * (self.spec.p_truncation + (packet.degree() as f64).sqrt()) + v.abs() * w * w;
                for (p, wt) in self.rule.on_interval(centre - half, centre + half) {
                    let base = packet.eval(Complex64::new(p, 0.0))
                        * Complex64::new(-0.5 * p * p, p * x0).exp()
                        * (wt * norm);
                    let pv = p * v;
                    alpha.add(base * pv.cosh());
                    beta.add(base * I * pv.sinh());
                }
            }
            out.push((blade, SliceValue { alpha: alpha.value(), beta: beta.value() }));
        }
        Ok(out)
    }

    fn envelopes(&self) -> Option<Vec<Envelope>> {
        self.heat.envelopes()
    }
}

/// U_s(f) at a point by momentum quadrature.
pub fn u_s_quadrature(f: &CliffordSignal, pt: &AxialPoint, q: &QuadratureSpec) -> Result<Multivector> {
    UsQuadrature::new(f, q)?.evaluate(pt)
}

/// max over interior grid nodes of |(∂_u + ω∂_v) F| by central differences,
/// where `field(u, v)` returns F(u + vω).
pub fn slice_cr_residual<F>(field: F, omega: &[f64], grid: &Grid2, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<Multivector>,
{
    if !(h > 0.0) {
        return Err(Error::DegenerateGrid(format!("step must be positive, got {h}")));
    }
    if grid.r.start.min(grid.r.end) - h <= 0.0 {
        return Err(Error::DegenerateGrid("v − h must stay positive on the grid".into()));
    }
    let inv = Complex64::new(0.5 / h, 0.0);
    let mut worst: f64 = 0.0;
    for (u, v) in grid.nodes() {
        let du = (&field(u + h, v)? - &field(u - h, v)?).scale(inv);
        let dv = (&field(u, v + h)? - &field(u, v - h)?).scale(inv);
        let res = &du + &dv.left_mul_vector(omega)?;
        worst = worst.max(res.norm());
    }
    Ok(worst)
}

/// max_pt |U_s(creation f) − (x₀+x̄)·U_s(f)| / max(|·|) over the points.
pub fn intertwine_slice_check(f: &CliffordSignal, pts: &[AxialPoint]) -> Result<f64> {
    let lhs_fn = SliceExtension::u_s(&f.apply_creation());
    let rhs_fn = SliceExtension::u_s(f);
    let mut worst: f64 = 0.0;
    for pt in pts {
        let lhs = lhs_fn.evaluate(pt)?;
        let rhs = pt.to_paravector().embed()?.product(&rhs_fn.evaluate(pt)?)?;
        let scale = lhs.norm().max(rhs.norm());
        if scale > 0.0 {
            worst = worst.max((&lhs - &rhs).norm() / scale);
        }
    }
    Ok(worst)
}

/// Slice power (x₀ + x̄)^k as a slice function.
pub fn slice_power(m: usize, k: usize) -> Result<SliceExtension<PolySignal>> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
    coeffs[k] = Complex64::new(1.0, 0.0);
    Ok(SliceExtension(PolySignal::scalar(m, coeffs)?))
}
