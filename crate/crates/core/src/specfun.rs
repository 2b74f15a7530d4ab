//! Special functions and coefficient ladders for Cauchy–Kowalewski
//! polynomials: Gamma, Gegenbauer polynomials, modified Bessel functions
//! of the first kind, normalized sphere moments and the μ₀ / ξ / λ tables.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) by the Lanczos approximation (g = 7, 9 terms), with reflection for x < ½.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        ln_gamma_positive(x).exp()
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument");
    if x < 0.5 {
        (PI / (PI * x).sin()).ln() - ln_gamma_positive(1.0 - x)
    } else {
        ln_gamma_positive(x)
    }
}

fn ln_gamma_positive(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Gegenbauer polynomial C_j^ν(y) by the three-term recurrence
/// j·C_j = 2y(j+ν−1)·C_{j−1} − (j+2ν−2)·C_{j−2}.
pub fn gegenbauer(j: usize, nu: f64, y: f64) -> f64 {
    gegenbauer_homogeneous(j, nu, y, 1.0)
}

/// Homogenized Gegenbauer value ρ^j·C_j^ν(t/ρ) with `rho_sq` = ρ².
///
/// This is a polynomial in (t, ρ²), so it stays finite as ρ → 0.
pub fn gegenbauer_homogeneous(j: usize, nu: f64, t: f64, rho_sq: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * nu * t;
    for k in 2..=j {
        let kf = k as f64;
        let next = (2.0 * t * (kf + nu - 1.0) * cur - (kf + 2.0 * nu - 2.0) * rho_sq * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Modified Bessel function of the first kind I_ν(z) for ν ≥ 0, z ≥ 0,
/// by its power series.
pub fn bessel_i(nu: f64, z: f64) -> Result<f64> {
    if !(nu >= 0.0) {
        return Err(Error::Range(format!("bessel_i order must be nonnegative, got {nu}")));
    }
    if !(z >= 0.0) {
        return Err(Error::Range(format!("bessel_i argument must be nonnegative, got {z}")));
    }
    if z > 700.0 {
        return Err(Error::Range(format!("bessel_i argument {z} overflows (limit 700)")));
    }
    if z == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let half = 0.5 * z;
    let quarter_sq = half * half;
    let mut term = (nu * half.ln() - ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= quarter_sq / (k * (k + nu));
        sum += term;
        if term < 1e-17 * sum && k > half {
            break;
        }
    }
    Ok(sum)
}

/// Normalized sphere moment E[cos^{2j}θ] for the uniform probability
/// measure on S^{m−1}: Γ(j+½)Γ(m/2) / (Γ(½)Γ(j+m/2)).
pub fn sphere_moment(m: usize, j: usize) -> f64 {
    let mf = m as f64;
    (0..j).fold(1.0, |acc, i| acc * (2.0 * i as f64 + 1.0) / (2.0 * i as f64 + mf))
}

/// Surface area of the unit sphere S^d ⊂ ℝ^{d+1}: 2π^{(d+1)/2} / Γ((d+1)/2).
pub fn sphere_area(d: usize) -> f64 {
    let half = 0.5 * (d as f64 + 1.0);
    2.0 * PI.powf(half) / gamma(half)
}

/// Vol(S^{m−1}) = 2π^{m/2} / Γ(m/2).
pub fn vol_sphere(m_minus_1: usize) -> f64 {
    sphere_area(m_minus_1)
}

/// Coefficient ladders for the Cauchy–Kowalewski polynomials X₀^{(k)}.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub m: usize,
    pub max_degree: usize,
    /// μ₀^k, k = 0..=max_degree.
    pub mu0: Vec<f64>,
    /// λ_k with Ř((x₀+x̄)^k) = λ_k X₀^{(k)}.
    pub lambda: Vec<f64>,
    /// ξ_k = μ₀^k C_k^{(m−1)/2}(1) = X₀^{(k)}(1, 0).
    pub xi: Vec<f64>,
    /// Normalized even sphere moments; `cnorm[j]` is the degree-2j moment.
    cnorm: Vec<f64>,
}

impl CoefficientTable {
    /// Normalized sphere moment of (even) degree `two_j`.
    pub fn cnorm(&self, two_j: usize) -> f64 {
        assert!(two_j % 2 == 0, "odd sphere moments vanish and are not tabulated");
        self.cnorm[two_j / 2]
    }

    pub fn cnorm_len(&self) -> usize {
        self.cnorm.len()
    }
}

/// Builds the μ₀, λ, ξ and sphere-moment tables for degrees 0..=max_degree.
pub fn ck_coefficients(m: usize, max_degree: usize) -> Result<CoefficientTable> {
    if m < 2 {
        return Err(Error::UnsupportedDimension(m));
    }
    let mf = m as f64;
    let nu_lo = 0.5 * (mf - 1.0);
    let nu_hi = 0.5 * (mf + 1.0);
    let mut mu0 = Vec::with_capacity(max_degree + 1);
    let mut xi = Vec::with_capacity(max_degree + 1);
    let mut lambda = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let j = k / 2;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let mu = if k % 2 == 0 {
            sign / gegenbauer(2 * j, nu_lo, 0.0)
        } else {
            sign * (mf + 2.0 * j as f64) / (mf - 1.0) / gegenbauer(2 * j, nu_hi, 0.0)
        };
        let x = mu * gegenbauer(k, nu_lo, 1.0);
        let lam = match k {
            0 => 1.0,
            _ if k % 2 == 1 => lambda[k - 1] * (k as f64) / (k as f64 - 1.0 + mf),
            _ => lambda[k - 1],
        };
        if !mu.is_finite() || !x.is_finite() || !lam.is_finite() {
            return Err(Error::Range(format!("coefficient overflow at degree {k} for m = {m}")));
        }
        mu0.push(mu);
        xi.push(x);
        lambda.push(lam);
    }
    let cnorm = (0..=max_degree + 1).map(|j| sphere_moment(m, j)).collect();
    Ok(CoefficientTable { m, max_degree, mu0, lambda, xi, cnorm })
}

type TableCache = Mutex<HashMap<(usize, usize), Arc<CoefficientTable>>>;

/// Shared, immutable coefficient table for (m, max_degree), built once.
pub fn coefficient_table(m: usize, max_degree: usize) -> Result<Arc<CoefficientTable>> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("table cache poisoned").get(&(m, max_degree)) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(ck_coefficients(m, max_degree)?);
    cache
        .lock()
        .expect("table cache poisoned")
        .insert((m, max_degree), Arc::clone(&table));
    Ok(table)
}
