//! Analytic model of L²(ℝ) ⊗ ℂ_m.
//!
//! Each blade component is a finite sum of wave packets
//! `P(x)·exp(−(x−a)²/(2s²))·exp(ibx)` with a complex polynomial prefactor.
//! The family is closed under the Fourier transform, heat evolution,
//! multiplication by x and differentiation, and every packet is entire, so
//! evaluation at complex arguments is its analytic continuation.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{blade_from_indices, blade_indices, Multivector};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub(crate) fn poly_eval(poly: &[Complex64], z: Complex64) -> Complex64 {
    poly.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

fn poly_derivative(poly: &[Complex64]) -> Vec<Complex64> {
    poly.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

fn poly_add_assign(target: &mut Vec<Complex64>, other: &[Complex64]) {
    if target.len() < other.len() {
        target.resize(other.len(), ZERO);
    }
    for (t, &o) in target.iter_mut().zip(other) {
        *t += o;
    }
}

/// (c0 + c1·x)·P
fn poly_mul_linear(poly: &[Complex64], c0: Complex64, c1: Complex64) -> Vec<Complex64> {
    let mut out = vec![ZERO; poly.len() + 1];
    for (k, &c) in poly.iter().enumerate() {
        out[k] += c * c0;
        out[k + 1] += c * c1;
    }
    out
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of Q(y) = P(y + c).
fn poly_shift(poly: &[Complex64], c: f64) -> Vec<Complex64> {
    let mut out = poly.to_vec();
    let n = out.len();
    for i in 0..n {
        for k in (i..n.saturating_sub(1)).rev() {
            let carry = out[k + 1] * c;
            out[k] += carry;
        }
    }
    out
}

fn trim(mut poly: Vec<Complex64>) -> Vec<Complex64> {
    while poly.len() > 1 && poly.last().is_some_and(|c| *c == ZERO) {
        poly.pop();
    }
    poly
}

/// `P(x)·exp(−(x−a)²/(2s²))·exp(ibx)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WavePacket {
    pub poly: Vec<Complex64>,
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
}

impl WavePacket {
    pub fn new(poly: Vec<Complex64>, center: f64, width: f64, momentum: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidSignal(format!("packet width must be positive and finite, got {width}")));
        }
        if !center.is_finite() || !momentum.is_finite() {
            return Err(Error::InvalidSignal("packet center and momentum must be finite".into()));
        }
        if poly.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidSignal("packet polynomial coefficients must be finite".into()));
        }
        Ok(Self { poly, center, width, momentum })
    }

    /// amplitude·exp(−(x−a)²/(2s²))·exp(ibx)
    pub fn gaussian(amplitude: Complex64, center: f64, width: f64, momentum: f64) -> Result<Self> {
        Self::new(vec![amplitude], center, width, momentum)
    }

    pub fn degree(&self) -> usize {
        self.poly.len().saturating_sub(1)
    }

    /// Value of the entire extension at z.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if self.poly.is_empty() {
            return ZERO;
        }
        let d = z - self.center;
        let exponent = -d * d / (2.0 * self.width * self.width) + I * self.momentum * z;
        poly_eval(&self.poly, z) * exponent.exp()
    }

    /// Coefficients (c0, c1) of the envelope log-derivative c0 + c1·x.
    fn log_derivative(center: f64, width: f64, momentum: f64) -> (Complex64, Complex64) {
        let inv = 1.0 / (width * width);
        (Complex64::new(center * inv, momentum), re(-inv))
    }

    /// Polynomial of d/dx(P·envelope) for the envelope (a, s, b).
    fn derivative_poly(poly: &[Complex64], center: f64, width: f64, momentum: f64) -> Vec<Complex64> {
        let (c0, c1) = Self::log_derivative(center, width, momentum);
        let mut out = poly_mul_linear(poly, c0, c1);
        poly_add_assign(&mut out, &poly_derivative(poly));
        out
    }

    fn with_poly(&self, poly: Vec<Complex64>) -> Self {
        Self { poly: trim(poly), ..self.clone() }
    }

    pub fn apply_position(&self) -> Self {
        self.with_poly(poly_mul_linear(&self.poly, ZERO, re(1.0)))
    }

    pub fn derivative(&self) -> Self {
        self.with_poly(Self::derivative_poly(&self.poly, self.center, self.width, self.momentum))
    }

    /// Applies P(X) to the packet with polynomial 1 and envelope
    /// (center, width, momentum), where X(Q) = shift·x·Q + factor·d/dx(Q·env)/env.
    /// Horner: P(X)1 = c₀ + X(c₁ + X(c₂ + …)).
    fn horner_operator(
        coeffs: &[Complex64],
        center: f64,
        width: f64,
        momentum: f64,
        shift: Complex64,
        factor: Complex64,
    ) -> Vec<Complex64> {
        let Some((&top, rest)) = coeffs.split_last() else {
            return Vec::new();
        };
        let mut q = vec![top];
        for &c in rest.iter().rev() {
            let mut next = poly_mul_linear(&q, ZERO, shift);
            let d = Self::derivative_poly(&q, center, width, momentum);
            poly_add_assign(&mut next, &d.iter().map(|v| v * factor).collect::<Vec<_>>());
            poly_add_assign(&mut next, &[c]);
            q = next;
        }
        q
    }

    /// Heat evolution e^{Δ/2}: convolution with the unit-time heat kernel.
    ///
    /// The Gaussian maps to width √(s²+1), momentum b·s²/(s²+1) and a complex
    /// amplitude; the polynomial maps through e^{Δ/2} x = (x + d/dx) e^{Δ/2}.
    pub fn heat_evolve(&self) -> Self {
        let s2 = self.width * self.width;
        let big_s = s2 + 1.0;
        let (a, b) = (self.center, self.momentum);
        let new_width = big_s.sqrt();
        let new_momentum = b * s2 / big_s;
        let kappa = (self.width / new_width) * Complex64::new(-b * b * s2 / (2.0 * big_s), a * b / big_s).exp();
        let poly = Self::horner_operator(&self.poly, a, new_width, new_momentum, re(1.0), re(1.0));
        Self {
            poly: trim(poly.into_iter().map(|c| c * kappa).collect()),
            center: a,
            width: new_width,
            momentum: new_momentum,
        }
    }

    /// f̃(p) = (2π)^{−1/2} ∫ e^{−ipx} f(x) dx.
    ///
    /// The Gaussian maps to center b, width 1/s, momentum −a; the polynomial
    /// maps through F(x·f) = i d/dp F(f).
    pub fn fourier(&self) -> Self {
        let (a, s, b) = (self.center, self.width, self.momentum);
        let kappa = s * Complex64::new(0.0, a * b).exp();
        let new_width = 1.0 / s;
        let poly = Self::horner_operator(&self.poly, b, new_width, -a, ZERO, I);
        Self {
            poly: trim(poly.into_iter().map(|c| c * kappa).collect()),
            center: b,
            width: new_width,
            momentum: -a,
        }
    }

    /// ∫ f(x)·conj(g(x)) dx in closed form via complex Gaussian moments.
    pub fn inner(&self, other: &Self) -> Complex64 {
        if self.poly.is_empty() || other.poly.is_empty() {
            return ZERO;
        }
        let (s1, s2) = (self.width * self.width, other.width * other.width);
        let alpha = 0.5 / s1 + 0.5 / s2;
        let beta = Complex64::new(self.center / s1 + other.center / s2, self.momentum - other.momentum);
        let gamma = re(-0.5 * self.center * self.center / s1 - 0.5 * other.center * other.center / s2);
        let c = beta.re / (2.0 * alpha);
        let conj_other: Vec<Complex64> = other.poly.iter().map(|v| v.conj()).collect();
        let q = poly_mul(&poly_shift(&self.poly, c), &poly_shift(&conj_other, c));
        let beta_y = beta - 2.0 * alpha * c;
        let gamma_y = gamma + beta * c - alpha * c * c;
        let mut moments = Vec::with_capacity(q.len());
        moments.push((PI / alpha).sqrt() * (beta_y * beta_y / (4.0 * alpha) + gamma_y).exp());
        for k in 0..q.len().saturating_sub(1) {
            let prev = if k == 0 { ZERO } else { moments[k - 1] * k as f64 };
            moments.push((beta_y * moments[k] + prev) / (2.0 * alpha));
        }
        q.iter().zip(&moments).map(|(a, b)| a * b).sum()
    }

    /// Taylor coefficients t₀..t_n of the packet about x = 0.
    pub fn taylor(&self, n: usize) -> Vec<Complex64> {
        let inv = 1.0 / (self.width * self.width);
        let g1 = Complex64::new(self.center * inv, self.momentum);
        let g2 = re(-0.5 * inv);
        let mut env = Vec::with_capacity(n + 1);
        env.push(re((-0.5 * self.center * self.center * inv).exp()));
        for k in 0..n {
            let prev = if k == 0 { ZERO } else { env[k - 1] * g2 * 2.0 };
            env.push((g1 * env[k] + prev) / (k as f64 + 1.0));
        }
        let mut out = poly_mul(&self.poly, &env);
        out.resize(n + 1, ZERO);
        out
    }
}

/// Integration settings shared by all numeric transforms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Momentum window half-width, in standard deviations of each packet's
    /// Gaussian-damped integrand.
    pub p_truncation: f64,
    /// Nodes per spatial axis (sphere angle, x₀, r).
    pub n_points: usize,
    /// Gauss–Legendre nodes per momentum window.
    pub p_nodes: usize,
    pub tolerance: f64,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            p_truncation: 8.0,
            n_points: 200,
            p_nodes: 400,
            tolerance: 1e-10,
            mc_samples: 1_000_000,
            seed: 0x5eed,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.p_truncation > 0.0) {
            return Err(Error::InvalidSpec(format!("p_truncation must be positive, got {}", self.p_truncation)));
        }
        if self.n_points < 16 {
            return Err(Error::InvalidSpec(format!("n_points must be at least 16, got {}", self.n_points)));
        }
        if self.p_nodes < 16 {
            return Err(Error::InvalidSpec(format!("p_nodes must be at least 16, got {}", self.p_nodes)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidSpec(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }
}

/// Entire ℂ_m-valued function of one variable, given blade by blade.
pub trait AxisFunction: Sync {
    fn m(&self) -> usize;

    /// Blades with (possibly) nonzero components, ascending.
    fn blades(&self) -> Vec<usize>;

    /// (blade, h_A(z)) for every blade in [`AxisFunction::blades`].
    fn eval_blades(&self, z: Complex64) -> Vec<(usize, Complex64)>;

    /// Σ_A h_A(z) e_A.
    fn evaluate(&self, z: Complex64) -> Result<Multivector> {
        let mut mv = Multivector::zero(self.m())?;
        for (blade, v) in self.eval_blades(z) {
            *mv.coeff_mut(blade) += v;
        }
        Ok(mv)
    }

    /// Gaussian envelope summary used to size integration domains;
    /// `None` for functions without decay (polynomials).
    fn envelopes(&self) -> Option<Vec<Envelope>> {
        None
    }
}

/// Shape of one packet: |P(x)e^{…}| behaves like |x|^degree e^{−(x−a)²/(2s²)}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
    pub degree: usize,
}

/// f = Σ_A f_A e_A with each f_A a finite packet sum.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordSignal {
    m: usize,
    components: BTreeMap<usize, Vec<WavePacket>>,
}

impl CliffordSignal {
    pub fn zero(m: usize) -> Result<Self> {
        Multivector::zero(m)?;
        Ok(Self { m, components: BTreeMap::new() })
    }

    /// Single packet on one blade.
    pub fn from_packet(m: usize, blade: usize, packet: WavePacket) -> Result<Self> {
        let mut s = Self::zero(m)?;
        s.add_packet(blade, packet)?;
        Ok(s)
    }

    pub fn add_packet(&mut self, blade: usize, packet: WavePacket) -> Result<()> {
        if blade >= 1 << self.m {
            return Err(Error::InvalidSignal(format!("blade {blade:#b} does not exist for m = {}", self.m)));
        }
        self.components.entry(blade).or_default().push(packet);
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &BTreeMap<usize, Vec<WavePacket>> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|ps| ps.iter().all(|p| p.poly.iter().all(|c| *c == ZERO)))
    }

    pub fn packets(&self) -> impl Iterator<Item = (usize, &WavePacket)> {
        self.components.iter().flat_map(|(&b, ps)| ps.iter().map(move |p| (b, p)))
    }

    fn map_packets<F: Fn(&WavePacket) -> WavePacket>(&self, f: F) -> Self {
        Self {
            m: self.m,
            components: self
                .components
                .iter()
                .map(|(&b, ps)| (b, ps.iter().map(&f).collect()))
                .collect(),
        }
    }

    pub fn fourier(&self) -> Self {
        self.map_packets(WavePacket::fourier)
    }

    pub fn heat_evolve(&self) -> Self {
        self.map_packets(WavePacket::heat_evolve)
    }

    pub fn apply_position(&self) -> Self {
        self.map_packets(WavePacket::apply_position)
    }

    /// p̂ = i d/dx.
    pub fn apply_momentum(&self) -> Self {
        self.map_packets(|p| {
            let d = p.derivative();
            let poly = d.poly.iter().map(|c| c * I).collect();
            d.with_poly(poly)
        })
    }

    /// x̂ + i p̂ = x − d/dx.
    pub fn apply_creation(&self) -> Self {
        self.map_packets(|p| {
            let mut poly = p.apply_position().poly;
            let d = p.derivative().poly;
            poly_add_assign(&mut poly, &d.iter().map(|c| -c).collect::<Vec<_>>());
            p.with_poly(poly)
        })
    }

    /// x + d/dx, the formal adjoint of the creation operator.
    pub fn apply_annihilation(&self) -> Self {
        self.map_packets(|p| {
            let mut poly = p.apply_position().poly;
            poly_add_assign(&mut poly, &p.derivative().poly);
            p.with_poly(poly)
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_packets(|p| p.with_poly(p.poly.iter().map(|c| c * factor).collect()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (b, p) in other.packets() {
            out.add_packet(b, p.clone())?;
        }
        Ok(out)
    }

    /// Σ_A ∫ f_A(x) conj(g_A(x)) dx.
    pub fn l2_inner(&self, other: &Self) -> Result<Complex64> {
        self.same_dim(other)?;
        let mut total = ZERO;
        for (blade, ps) in &self.components {
            if let Some(qs) = other.components.get(blade) {
                for p in ps {
                    for q in qs {
                        total += p.inner(q);
                    }
                }
            }
        }
        Ok(total)
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_inner(self).map(|v| v.re.max(0.0).sqrt()).unwrap_or(0.0)
    }

    pub fn eval_blade(&self, blade: usize, z: Complex64) -> Complex64 {
        self.components
            .get(&blade)
            .map(|ps| ps.iter().map(|p| p.eval(z)).sum())
            .unwrap_or(ZERO)
    }

    /// Taylor coefficients about 0, per blade, up to degree n.
    pub fn taylor(&self, n: usize) -> BTreeMap<usize, Vec<Complex64>> {
        self.components
            .iter()
            .map(|(&b, ps)| {
                let mut acc = vec![ZERO; n + 1];
                for p in ps {
                    for (a, t) in acc.iter_mut().zip(p.taylor(n)) {
                        *a += t;
                    }
                }
                (b, acc)
            })
            .collect()
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: other.m });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SignalFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SignalFile::from(self)).expect("signal serializes")
    }
}

impl AxisFunction for CliffordSignal {
    fn m(&self) -> usize {
        self.m
    }

    fn blades(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    fn eval_blades(&self, z: Complex64) -> Vec<(usize, Complex64)> {
        self.components
            .iter()
            .map(|(&b, ps)| (b, ps.iter().map(|p| p.eval(z)).sum()))
            .collect()
    }

    fn envelopes(&self) -> Option<Vec<Envelope>> {
        Some(
            self.packets()
                .map(|(_, p)| Envelope {
                    center: p.center,
                    width: p.width,
                    momentum: p.momentum,
                    degree: p.degree(),
                })
                .collect(),
        )
    }
}

/// Evaluates Σ_A f_A(z) e_A.
pub fn evaluate(f: &CliffordSignal, z: Complex64) -> Result<Multivector> {
    f.evaluate(z)
}

/// Polynomial ℂ_m-valued function Σ_A P_A(x) e_A.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySignal {
    m: usize,
    components: BTreeMap<usize, Vec<Complex64>>,
}

impl PolySignal {
    pub fn new(m: usize) -> Result<Self> {
        Multivector::zero(m)?;
        Ok(Self { m, components: BTreeMap::new() })
    }

    /// Scalar-blade polynomial with the given coefficients.
    pub fn scalar(m: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let mut s = Self::new(m)?;
        s.set_component(0, coeffs)?;
        Ok(s)
    }

    pub fn set_component(&mut self, blade: usize, coeffs: Vec<Complex64>) -> Result<()> {
        if blade >= 1 << self.m {
            return Err(Error::InvalidSignal(format!("blade {blade:#b} does not exist for m = {}", self.m)));
        }
        self.components.insert(blade, coeffs);
        Ok(())
    }

    pub fn components(&self) -> &BTreeMap<usize, Vec<Complex64>> {
        &self.components
    }

    pub fn degree(&self) -> usize {
        self.components.values().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }
}

impl AxisFunction for PolySignal {
    fn m(&self) -> usize {
        self.m
    }

    fn blades(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    fn eval_blades(&self, z: Complex64) -> Vec<(usize, Complex64)> {
        self.components.iter().map(|(&b, c)| (b, poly_eval(c, z))).collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignalFile {
    m: usize,
    components: Vec<ComponentFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentFile {
    blade: Vec<usize>,
    packets: Vec<PacketFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawPacketFile")]
struct PacketFile {
    poly: Vec<[f64; 2]>,
    center: f64,
    width: f64,
    momentum: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPacketFile {
    poly: Vec<[f64; 2]>,
    center: f64,
    width: f64,
    #[serde(default)]
    momentum: f64,
}

impl TryFrom<RawPacketFile> for PacketFile {
    type Error = String;

    fn try_from(raw: RawPacketFile) -> std::result::Result<Self, String> {
        if !(raw.width > 0.0) {
            return Err(format!("packet width must be positive, got {}", raw.width));
        }
        if raw.poly.is_empty() {
            return Err("packet polynomial must have at least one coefficient".into());
        }
        Ok(Self { poly: raw.poly, center: raw.center, width: raw.width, momentum: raw.momentum })
    }
}

impl TryFrom<SignalFile> for CliffordSignal {
    type Error = Error;

    fn try_from(file: SignalFile) -> Result<Self> {
        let mut signal = CliffordSignal::zero(file.m).map_err(|e| Error::Schema(e.to_string()))?;
        for (i, comp) in file.components.into_iter().enumerate() {
            let blade = blade_from_indices(&comp.blade, file.m)
                .map_err(|e| Error::Schema(format!("components[{i}].blade: {e}")))?;
            for (j, p) in comp.packets.into_iter().enumerate() {
                let poly = p.poly.iter().map(|[a, b]| Complex64::new(*a, *b)).collect();
                let packet = WavePacket::new(poly, p.center, p.width, p.momentum)
                    .map_err(|e| Error::Schema(format!("components[{i}].packets[{j}]: {e}")))?;
                signal.add_packet(blade, packet)?;
            }
        }
        Ok(signal)
    }
}

impl From<&CliffordSignal> for SignalFile {
    fn from(s: &CliffordSignal) -> Self {
        SignalFile {
            m: s.m,
            components: s
                .components
                .iter()
                .map(|(&b, ps)| ComponentFile {
                    blade: blade_indices(b),
                    packets: ps
                        .iter()
                        .map(|p| PacketFile {
                            poly: p.poly.iter().map(|c| [c.re, c.im]).collect(),
                            center: p.center,
                            width: p.width,
                            momentum: p.momentum,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_gaussian() -> WavePacket {
        WavePacket::gaussian(c(1.0, 0.0), 0.0, 1.0, 0.0).unwrap()
    }

    /// Composite Gauss–Legendre over [lo, hi] for oracles.
    fn quad<F: Fn(f64) -> Complex64>(lo: f64, hi: f64, f: F) -> Complex64 {
        let rule = GaussLegendre::new(64);
        let panels = 200;
        let h = (hi - lo) / panels as f64;
        (0..panels)
            .map(|k| rule.integrate_complex(lo + k as f64 * h, lo + (k + 1) as f64 * h, &f))
            .sum()
    }

    fn random_packet() -> impl Strategy<Value = WavePacket> {
        (
            proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..4),
            -1.5..1.5f64,
            0.5..1.6f64,
            -2.0..2.0f64,
        )
            .prop_map(|(poly, a, s, b)| {
                WavePacket::new(poly.into_iter().map(|(x, y)| c(x, y)).collect(), a, s, b).unwrap()
            })
    }

    #[test]
    fn evaluation_examples() {
        let g = unit_gaussian();
        assert!((g.eval(c(0.0, 1.0)) - c(0.5f64.exp(), 0.0)).norm() < 1e-15);
        let xg = g.apply_position();
        let z = c(1.0, 1.0);
        let expected = z * (-z * z / 2.0).exp();
        assert!((xg.eval(z) - expected).norm() < 1e-15);
        assert!((expected - z * c(0.0, -1.0).exp()).norm() < 1e-15);
        let zero = CliffordSignal::zero(3).unwrap();
        assert_eq!(evaluate(&zero, c(0.3, 0.7)).unwrap().norm(), 0.0);
    }

    #[test]
    fn fourier_examples_against_quadrature() {
        let g = unit_gaussian();
        let gt = g.fourier();
        for p in [-1.0, 0.3, 2.0] {
            assert!((gt.eval(c(p, 0.0)) - c((-p * p / 2.0f64).exp(), 0.0)).norm() < 1e-15);
        }
        let shifted = WavePacket::gaussian(c(1.0, 0.0), 0.7, 1.0, 0.0).unwrap();
        let xg = g.apply_position();
        let modulated = WavePacket::new(vec![c(0.2, -0.4), c(0.5, 0.1), c(-0.3, 0.2)], 0.4, 0.8, 1.3).unwrap();
        for packet in [&shifted, &xg, &modulated] {
            let ft = packet.fourier();
            for p in [-1.0, 0.3, 2.0] {
                let oracle = quad(-20.0, 20.0, |x| c(0.0, -p * x).exp() * packet.eval(c(x, 0.0)))
                    / (2.0 * PI).sqrt();
                assert!((ft.eval(c(p, 0.0)) - oracle).norm() < 1e-12, "p={p}");
            }
        }
        // shift theorem and sign convention
        for p in [-1.0, 0.3, 2.0] {
            let expected = c(0.0, -p * 0.7).exp() * (-p * p / 2.0f64).exp();
            assert!((shifted.fourier().eval(c(p, 0.0)) - expected).norm() < 1e-15);
            let expected_x = c(0.0, -p) * (-p * p / 2.0f64).exp();
            assert!((xg.fourier().eval(c(p, 0.0)) - expected_x).norm() < 1e-15);
        }
    }

    #[test]
    fn fourier_twice_reflects() {
        let packet = WavePacket::new(vec![c(0.2, -0.4), c(0.5, 0.1)], 0.4, 0.8, 1.3).unwrap();
        let twice = packet.fourier().fourier();
        for x in [-1.3, 0.0, 0.4, 2.2] {
            assert!((twice.eval(c(x, 0.0)) - packet.eval(c(-x, 0.0))).norm() < 1e-14);
        }
    }

    #[test]
    fn heat_examples() {
        let h = unit_gaussian().heat_evolve();
        for x in [-2.0, 0.0, 0.5, 3.0] {
            let expected = (-x * x / 4.0f64).exp() / 2f64.sqrt();
            assert!((h.eval(c(x, 0.0)) - c(expected, 0.0)).norm() < 1e-15);
        }
        // convolution oracle ∫ρ₁(x−y) f(y) dy for a polynomial, modulated packet
        let packet = WavePacket::new(vec![c(0.2, -0.4), c(0.5, 0.1), c(-0.3, 0.2)], 0.4, 0.8, 1.3).unwrap();
        let evolved = packet.heat_evolve();
        for x in [-1.0, 0.2, 1.7] {
            let oracle = quad(-20.0, 20.0, |y| {
                c((-(x - y) * (x - y) / 2.0).exp() / (2.0 * PI).sqrt(), 0.0) * packet.eval(c(y, 0.0))
            });
            assert!((evolved.eval(c(x, 0.0)) - oracle).norm() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn heat_multiplier_is_gaussian_in_momentum() {
        let packet = WavePacket::new(vec![c(0.2, -0.4), c(0.5, 0.1), c(-0.3, 0.2)], 0.4, 0.8, 1.3).unwrap();
        let lhs = packet.heat_evolve().fourier();
        let rhs = packet.fourier();
        for k in 0..20 {
            let p = -3.0 + 0.3 * k as f64;
            let expected = rhs.eval(c(p, 0.0)) * (-p * p / 2.0f64).exp();
            assert!((lhs.eval(c(p, 0.0)) - expected).norm() < 1e-10);
        }
    }

    #[test]
    fn inner_product_examples() {
        let norm = PI.powf(-0.25);
        let g = WavePacket::gaussian(c(norm, 0.0), 0.0, 1.0, 0.0).unwrap();
        assert!((g.inner(&g) - c(1.0, 0.0)).norm() < 1e-15);
        let plain = unit_gaussian();
        let xg = plain.apply_position();
        assert!(plain.inner(&xg).norm() < 1e-15);
        assert!((xg.inner(&xg) - c(PI.sqrt() / 2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn inner_product_against_quadrature() {
        let p = WavePacket::new(vec![c(0.2, -0.4), c(0.5, 0.1), c(-0.3, 0.2)], 2.4, 0.8, 1.3).unwrap();
        let q = WavePacket::new(vec![c(1.0, 0.3), c(0.0, 0.0), c(0.1, 0.0), c(0.05, -0.02)], 1.5, 1.3, -0.4).unwrap();
        let oracle = quad(-20.0, 25.0, |x| p.eval(c(x, 0.0)) * q.eval(c(x, 0.0)).conj());
        assert!((p.inner(&q) - oracle).norm() < 1e-13);
    }

    #[test]
    fn operators() {
        let g = CliffordSignal::from_packet(2, 0, unit_gaussian()).unwrap();
        let created = g.apply_creation();
        for x in [-1.0, 0.3, 2.0] {
            let expected = 2.0 * x * (-x * x / 2.0f64).exp();
            assert!((created.eval_blade(0, c(x, 0.0)) - c(expected, 0.0)).norm() < 1e-15);
        }
        let zero = CliffordSignal::zero(2).unwrap();
        assert!(zero.apply_position().is_zero());

        // momentum against a finite-difference derivative
        let packet = WavePacket::new(vec![c(0.3, 0.1), c(-0.2, 0.4)], 0.5, 0.9, 1.7).unwrap();
        let f = CliffordSignal::from_packet(2, 0b11, packet).unwrap();
        let mom = f.apply_momentum();
        let h = 1e-5;
        for x in [-0.7, 0.1, 1.2] {
            let fd = (f.eval_blade(0b11, c(x + h, 0.0)) - f.eval_blade(0b11, c(x - h, 0.0))) / (2.0 * h);
            assert!((mom.eval_blade(0b11, c(x, 0.0)) - c(0.0, 1.0) * fd).norm() < 1e-8);
        }
        // creation = position + i·momentum
        let combo = f.apply_position().add(&f.apply_momentum().scale(c(0.0, 1.0))).unwrap();
        for x in [-0.7, 0.1, 1.2] {
            let a = f.apply_creation().eval_blade(0b11, c(x, 0.3));
            let b = combo.eval_blade(0b11, c(x, 0.3));
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn semigroup_width_bookkeeping() {
        let packet = WavePacket::new(vec![c(0.2, -0.4), c(0.5, 0.1)], 0.4, 0.8, 1.3).unwrap();
        let twice = packet.heat_evolve().heat_evolve();
        assert!((twice.width.powi(2) - (packet.width.powi(2) + 2.0)).abs() < 1e-12);
        // time-2 evolution via the momentum multiplier e^{−p²}
        let ft = packet.fourier();
        let twice_ft = twice.fourier();
        for p in [-1.5, 0.0, 0.8] {
            let expected = ft.eval(c(p, 0.0)) * (-p * p).exp();
            assert!((twice_ft.eval(c(p, 0.0)) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn taylor_coefficients_reproduce_values() {
        let packet = WavePacket::new(vec![c(0.2, -0.4), c(0.5, 0.1), c(0.1, 0.1)], 0.4, 0.8, 1.3).unwrap();
        let t = packet.taylor(80);
        for z in [c(0.3, 0.2), c(-0.9, 0.5), c(1.2, -0.4)] {
            assert!((poly_eval(&t, z) - packet.eval(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let text = r#"{"m": 3, "components": [
            {"blade": [], "packets": [{"poly": [[1.0, 0.0]], "center": 0.0, "width": 1.0, "momentum": 0.0}]},
            {"blade": [1, 2], "packets": [{"poly": [[0.5, 0.0], [0.0, 1.0]], "center": 0.3, "width": 0.7, "momentum": 1.5}]}
        ]}"#;
        let s = CliffordSignal::from_json(text).unwrap();
        assert_eq!(s.blades(), vec![0, 0b011]);
        assert_eq!(CliffordSignal::from_json(&s.to_json()).unwrap(), s);

        let bad_width = r#"{"m": 2, "components": [{"blade": [], "packets": [
            {"poly": [[1.0, 0.0]], "center": 0.0, "width": -1.0, "momentum": 0.0}]}]}"#;
        let err = CliffordSignal::from_json(bad_width).unwrap_err().to_string();
        assert!(err.contains("line"), "{err}");
        let bad_blade = r#"{"m": 2, "components": [{"blade": [3], "packets": []}]}"#;
        assert!(CliffordSignal::from_json(bad_blade).is_err());
        let unknown = r#"{"m": 2, "components": [], "extra": 1}"#;
        assert!(CliffordSignal::from_json(unknown).is_err());
    }

    proptest! {
        #[test]
        fn parseval(p in random_packet(), q in random_packet()) {
            let lhs = p.inner(&q);
            let rhs = p.fourier().inner(&q.fourier());
            let scale = (p.inner(&p).re * q.inner(&q).re).sqrt();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * scale.max(1e-300));
        }

        #[test]
        fn creation_adjoint(p in random_packet(), q in random_packet()) {
            let f = CliffordSignal::from_packet(2, 1, p).unwrap();
            let g = CliffordSignal::from_packet(2, 1, q).unwrap();
            let lhs = f.apply_creation().l2_inner(&g).unwrap();
            let rhs = f.l2_inner(&g.apply_annihilation()).unwrap();
            let scale = (f.apply_creation().l2_norm() * g.l2_norm()).max(f.l2_norm() * g.apply_annihilation().l2_norm());
            prop_assert!((lhs - rhs).norm() <= 1e-10 * scale.max(1e-300));
        }

        #[test]
        fn heat_is_linear(p in random_packet(), q in random_packet(), lam in -2.0..2.0f64) {
            let f = CliffordSignal::from_packet(2, 0, p).unwrap();
            let g = CliffordSignal::from_packet(2, 0, q).unwrap();
            let sum = f.add(&g.scale(c(lam, 0.0))).unwrap().heat_evolve();
            let parts = f.heat_evolve().add(&g.heat_evolve().scale(c(lam, 0.0))).unwrap();
            for x in [-1.0, 0.0, 0.7] {
                let z = c(x, 0.4);
                prop_assert!((sum.eval_blade(0, z) - parts.eval_blade(0, z)).norm() < 1e-12);
            }
        }
    }
}
