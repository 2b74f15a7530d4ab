//! Dense arithmetic in the complex Clifford algebra ℂ_m with e_j² = −1,
//! paravector geometry, and a finite-difference Cauchy–Riemann operator.
//!
//! Blades e_A are indexed by the bitmask of A ⊆ {1..m}: bit j−1 set means
//! e_j occurs in the ascending product. Coefficients are stored densely,
//! 2^m per multivector.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 12;

/// Sign of e_A e_B relative to e_{A xor B}, counting transpositions needed
/// to sort the generators and one factor −1 for every repeated generator.
#[inline]
pub fn blade_product_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Grade of the blade with the given bitmask.
#[inline]
pub fn blade_grade(blade: usize) -> usize {
    blade.count_ones() as usize
}

/// Bitmask for a list of 1-based generator indices, which must be strictly
/// ascending and lie in 1..=m.
pub fn blade_from_indices(indices: &[usize], m: usize) -> Result<usize> {
    let mut mask = 0usize;
    let mut last = 0usize;
    for &j in indices {
        if j == 0 || j > m {
            return Err(Error::Range(format!("generator index {j} not in 1..={m}")));
        }
        if j <= last {
            return Err(Error::Range(format!(
                "generator indices must be strictly ascending, got {indices:?}"
            )));
        }
        last = j;
        mask |= 1 << (j - 1);
    }
    Ok(mask)
}

/// Inverse of [`blade_from_indices`].
pub fn blade_indices(blade: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|j| blade & (1 << j) != 0)
        .map(|j| j + 1)
        .collect()
}

/// Human-readable blade label: `1`, `e1`, `e12`, `e1_10` (underscores once m ≥ 10).
pub fn blade_label(blade: usize) -> String {
    if blade == 0 {
        return "1".to_string();
    }
    let idx = blade_indices(blade);
    let sep = if idx.iter().any(|&j| j >= 10) { "_" } else { "" };
    let parts: Vec<String> = idx.iter().map(|j| j.to_string()).collect();
    format!("e{}", parts.join(sep))
}

fn check_m(m: usize) -> Result<()> {
    if (2..=MAX_GENERATORS).contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(m))
    }
}

/// Element of ℂ_m stored as 2^m complex blade coefficients.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    m: usize,
    coeffs: Vec<Complex64>,
}

impl Multivector {
    pub fn zero(m: usize) -> Result<Self> {
        check_m(m)?;
        Ok(Self {
            m,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << m],
        })
    }

    pub fn scalar(m: usize, value: Complex64) -> Result<Self> {
        let mut mv = Self::zero(m)?;
        mv.coeffs[0] = value;
        Ok(mv)
    }

    /// The blade e_A scaled by `value`.
    pub fn blade(m: usize, blade: usize, value: Complex64) -> Result<Self> {
        let mut mv = Self::zero(m)?;
        if blade >= mv.coeffs.len() {
            return Err(Error::Range(format!("blade {blade:#b} does not exist for m = {m}")));
        }
        mv.coeffs[blade] = value;
        Ok(mv)
    }

    /// The 1-vector Σ x_j e_j.
    pub fn vector(xs: &[f64]) -> Result<Self> {
        let mut mv = Self::zero(xs.len())?;
        for (j, &x) in xs.iter().enumerate() {
            mv.coeffs[1 << j] = Complex64::new(x, 0.0);
        }
        Ok(mv)
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        check_m(m)?;
        if coeffs.len() != 1 << m {
            return Err(Error::Range(format!(
                "expected {} coefficients for m = {m}, got {}",
                1 << m,
                coeffs.len()
            )));
        }
        Ok(Self { m, coeffs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: usize) -> Complex64 {
        self.coeffs[blade]
    }

    pub fn coeff_mut(&mut self, blade: usize) -> &mut Complex64 {
        &mut self.coeffs[blade]
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Keeps only blades of grade `k`.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > self.m {
            return Err(Error::GradeOutOfRange { grade: k, m: self.m });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(blade, &c)| if blade_grade(blade) == k { c } else { Complex64::new(0.0, 0.0) })
            .collect();
        Ok(Self { m: self.m, coeffs })
    }

    /// Σ_A a_A conj(b_A).
    pub fn hermitian_inner(&self, other: &Self) -> Result<Complex64> {
        self.same_dim(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Norm induced by [`Multivector::hermitian_inner`].
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Geometric product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb == Complex64::new(0.0, 0.0) {
                    continue;
                }
                out[a ^ b] += ca * cb * blade_product_sign(a, b);
            }
        }
        Ok(Self { m: self.m, coeffs: out })
    }

    /// Left multiplication by the 1-vector Σ v_j e_j, without building it.
    pub fn left_mul_vector(&self, v: &[f64]) -> Result<Self> {
        if v.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: v.len() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len()];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0.0 {
                continue;
            }
            let gen = 1usize << j;
            for (a, &ca) in self.coeffs.iter().enumerate() {
                out[gen ^ a] += ca * (vj * blade_product_sign(gen, a));
            }
        }
        Ok(Self { m: self.m, coeffs: out })
    }

    /// Truncated exponential series Σ a^k / k!, summed until the term norm
    /// drops below 1e−17 of the running sum (at most `max_terms` terms).
    pub fn exp_series(&self, max_terms: usize) -> Self {
        let mut sum = Self::scalar(self.m, Complex64::new(1.0, 0.0)).expect("valid m");
        let mut term = sum.clone();
        for k in 1..max_terms {
            term = term.product(self).expect("same m").scale(Complex64::new(1.0 / k as f64, 0.0));
            sum += &term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: other.m });
        }
        Ok(())
    }
}

/// Geometric product; dimension mismatch is an error.
pub fn mv_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.product(b)
}

/// Grade projection; see [`Multivector::grade_project`].
pub fn grade_project(a: &Multivector, k: usize) -> Result<Multivector> {
    a.grade_project(k)
}

/// Hermitian inner product on ℂ_m.
pub fn hermitian_inner(a: &Multivector, b: &Multivector) -> Result<Complex64> {
    a.hermitian_inner(b)
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(m={}", self.m)?;
        for (blade, c) in self.coeffs.iter().enumerate() {
            if c.norm() > 0.0 {
                write!(f, ", {}: {}", blade_label(blade), c)?;
            }
        }
        write!(f, ")")
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.m, rhs.m, "multivector dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.m, rhs.m, "multivector dimension mismatch");
        Multivector {
            m: self.m,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Panics on dimension mismatch; use [`mv_product`] for the fallible form.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.product(rhs).expect("multivector dimension mismatch")
    }
}

/// Point x₀ + x̄ of ℝ^{m+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector {
    pub x0: f64,
    pub xvec: Vec<f64>,
}

impl Paravector {
    pub fn new(x0: f64, xvec: Vec<f64>) -> Self {
        Self { x0, xvec }
    }

    pub fn m(&self) -> usize {
        self.xvec.len()
    }

    pub fn vector_norm(&self) -> f64 {
        self.xvec.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Euclidean norm √(x₀² + |x̄|²) in ℝ^{m+1}.
    pub fn norm(&self) -> f64 {
        (self.x0 * self.x0 + self.xvec.iter().map(|x| x * x).sum::<f64>()).sqrt()
    }

    pub fn embed(&self) -> Result<Multivector> {
        let mut mv = Multivector::vector(&self.xvec)?;
        mv.coeffs[0] = Complex64::new(self.x0, 0.0);
        Ok(mv)
    }

    /// Polar form. At x̄ = 0 the direction defaults to e₁ and is never read.
    pub fn to_axial(&self) -> AxialPoint {
        let r = self.vector_norm();
        let omega = if r > 0.0 {
            self.xvec.iter().map(|x| x / r).collect()
        } else {
            let mut e1 = vec![0.0; self.xvec.len()];
            if let Some(first) = e1.first_mut() {
                *first = 1.0;
            }
            e1
        };
        AxialPoint { x0: self.x0, r, omega }
    }
}

/// Polar coordinates (x₀, r, ω) of a paravector, x̄ = rω.
#[derive(Clone, Debug, PartialEq)]
pub struct AxialPoint {
    pub x0: f64,
    pub r: f64,
    pub omega: Vec<f64>,
}

impl AxialPoint {
    pub fn new(x0: f64, r: f64, omega: Vec<f64>) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Range(format!("radius must be finite and nonnegative, got {r}")));
        }
        let len = omega.iter().map(|w| w * w).sum::<f64>().sqrt();
        if (len - 1.0).abs() > 1e-12 {
            return Err(Error::Range(format!("omega must be a unit vector, |omega| = {len}")));
        }
        Ok(Self { x0, r, omega })
    }

    /// Point on the real axis; ω is set to e₁ and never read.
    pub fn on_axis(x0: f64, m: usize) -> Self {
        let mut omega = vec![0.0; m];
        omega[0] = 1.0;
        Self { x0, r: 0.0, omega }
    }

    pub fn m(&self) -> usize {
        self.omega.len()
    }

    pub fn to_paravector(&self) -> Paravector {
        Paravector::new(self.x0, self.omega.iter().map(|w| w * self.r).collect())
    }
}

/// Multivector samples on a uniform (m+1)-dimensional grid with `n` nodes
/// per axis and spacing `h`; axis 0 is x₀ and varies slowest.
#[derive(Clone, Debug)]
pub struct MvGrid {
    pub m: usize,
    pub n: usize,
    pub h: f64,
    pub origin: Vec<f64>,
    pub values: Vec<Multivector>,
}

impl MvGrid {
    /// Samples `field` at origin + h·(i₀, …, i_m).
    pub fn sample<F>(m: usize, origin: &[f64], n: usize, h: f64, field: F) -> Result<Self>
    where
        F: Fn(&Paravector) -> Result<Multivector>,
    {
        check_m(m)?;
        if origin.len() != m + 1 {
            return Err(Error::DimensionMismatch { expected: m + 1, found: origin.len() });
        }
        let dims = m + 1;
        let total = n.checked_pow(dims as u32).ok_or_else(|| Error::GridTooSmall("grid overflow".into()))?;
        let mut values = Vec::with_capacity(total);
        for flat in 0..total {
            let idx = unflatten(flat, n, dims);
            let x0 = origin[0] + h * idx[0] as f64;
            let xvec = (1..dims).map(|k| origin[k] + h * idx[k] as f64).collect();
            values.push(field(&Paravector::new(x0, xvec))?);
        }
        Ok(Self { m, n, h, origin: origin.to_vec(), values })
    }

    fn index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }
}

fn unflatten(mut flat: usize, n: usize, dims: usize) -> Vec<usize> {
    let mut idx = vec![0; dims];
    for k in (0..dims).rev() {
        idx[k] = flat % n;
        flat /= n;
    }
    idx
}

/// Central-difference (∂_{x₀} + Σ e_j ∂_{x_j}) F on the interior nodes of
/// `grid`, with e_j multiplying from the left. The result grid has n − 2
/// nodes per axis.
pub fn dirac_apply_fd(grid: &MvGrid) -> Result<MvGrid> {
    if grid.n < 3 {
        return Err(Error::GridTooSmall(format!("need at least 3 nodes per axis, got {}", grid.n)));
    }
    if !(grid.h > 0.0) {
        return Err(Error::DegenerateGrid(format!("step must be positive, got {}", grid.h)));
    }
    let dims = grid.m + 1;
    let inner = grid.n - 2;
    let total = inner.pow(dims as u32);
    let inv2h = Complex64::new(0.5 / grid.h, 0.0);
    let mut values = Vec::with_capacity(total);
    for flat in 0..total {
        let centre: Vec<usize> = unflatten(flat, inner, dims).into_iter().map(|i| i + 1).collect();
        let mut acc = Multivector::zero(grid.m)?;
        for axis in 0..dims {
            let mut plus = centre.clone();
            let mut minus = centre.clone();
            plus[axis] += 1;
            minus[axis] -= 1;
            let diff = (&grid.values[grid.index(&plus)] - &grid.values[grid.index(&minus)]).scale(inv2h);
            if axis == 0 {
                acc += &diff;
            } else {
                let mut e = vec![0.0; grid.m];
                e[axis - 1] = 1.0;
                acc += &diff.left_mul_vector(&e)?;
            }
        }
        values.push(acc);
    }
    Ok(MvGrid {
        m: grid.m,
        n: inner,
        h: grid.h,
        origin: grid.origin.iter().map(|o| o + grid.h).collect(),
        values,
    })
}
