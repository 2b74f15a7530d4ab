//! Gauss–Legendre and Gauss–Hermite rules and compensated summation.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Nodes and weights of an n-point Gauss–Legendre rule on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped affinely onto [a, b].
    pub fn on_interval(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mut acc = KahanSum::default();
        for (x, w) in self.on_interval(a, b) {
            acc.add(w * f(x));
        }
        acc.value()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        let mut acc = ComplexKahanSum::default();
        for (x, w) in self.on_interval(a, b) {
            acc.add(f(x) * w);
        }
        acc.value()
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Hermite rule for ∫ g(x) e^{−x²} dx.
///
/// `scaled_weights` hold w_i·e^{x_i²}, so that Σ scaled_weights[i]·f(x_i)
/// approximates ∫ f(x) dx directly (weight absorbed).
#[derive(Clone, Debug)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Hermite rule needs at least one node");
        let nf = n as f64;
        // Positive roots of ψ_n: bracket sign changes on a fine scan, then
        // polish by safeguarded Newton. The scan step is well below the
        // minimal root spacing ~ π/√(2n+1).
        let upper = (2.0 * nf + 1.0).sqrt() + 1.0;
        let step = 0.05 * PI / (2.0 * nf + 1.0).sqrt();
        let mut positive = Vec::with_capacity(n / 2);
        let mut a = if n % 2 == 1 { step * 0.5 } else { 0.0 };
        let mut fa = hermite_functions(n, a).0;
        while a < upper {
            let b = a + step;
            let fb = hermite_functions(n, b).0;
            if fa == 0.0 {
                positive.push(a);
            } else if fa.signum() != fb.signum() {
                positive.push(polish_root(n, a, b));
            }
            a = b;
            fa = fb;
        }
        debug_assert_eq!(positive.len(), n / 2, "Gauss-Hermite root count");
        let mut roots: Vec<f64> = positive.iter().map(|z| -z).collect();
        if n % 2 == 1 {
            roots.push(0.0);
        }
        roots.extend(positive.iter().copied());
        roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
        let mut weights = Vec::with_capacity(n);
        let mut scaled = Vec::with_capacity(n);
        for &z in &roots {
            let (_, psi_nm1, ln_scale) = hermite_functions(n, z);
            let sw = (-nf.ln() - 2.0 * (psi_nm1.abs().ln() + ln_scale)).exp();
            scaled.push(sw);
            weights.push(sw * (-z * z).exp());
        }
        Self { nodes: roots, weights, scaled_weights: scaled }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫_ℝ f(x) dx with nodes x = centre + scale·t.
    pub fn integrate_real_line<F: FnMut(f64) -> f64>(&self, centre: f64, scale: f64, mut f: F) -> f64 {
        let mut acc = KahanSum::default();
        for (&t, &sw) in self.nodes.iter().zip(&self.scaled_weights) {
            acc.add(scale * sw * f(centre + scale * t));
        }
        acc.value()
    }
}

/// Orthonormal Hermite functions ψ_n(x) and ψ_{n−1}(x) as rescaled values
/// plus a common log scale: ψ_k = value·e^{ln_scale}. Rescaling keeps the
/// recurrence from underflowing for large |x|.
fn hermite_functions(n: usize, x: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    let mut ln_scale = -0.25 * PI.ln() - 0.5 * x * x;
    for j in 1..=n {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * p - ((jf - 1.0) / jf).sqrt() * p_prev;
        p_prev = p;
        p = next;
        let big = p.abs().max(p_prev.abs());
        if big > 1e100 {
            p /= big;
            p_prev /= big;
            ln_scale += big.ln();
        }
    }
    (p, p_prev, ln_scale)
}

/// Newton on the Hermite polynomial (step p_n / (√(2n) p_{n−1})), falling
/// back to bisection whenever the step leaves the bracket.
fn polish_root(n: usize, mut lo: f64, mut hi: f64) -> f64 {
    let slope = (2.0 * n as f64).sqrt();
    let f_lo = hermite_functions(n, lo).0.signum();
    let mut z = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (pn, pm, _) = hermite_functions(n, z);
        if pn == 0.0 {
            return z;
        }
        if pn.signum() == f_lo {
            lo = z;
        } else {
            hi = z;
        }
        let newton = z - pn / (slope * pm);
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - z).abs() <= 1e-15 * z.abs().max(1.0) {
            return next;
        }
        z = next;
    }
    z
}

/// Neumaier compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexKahanSum {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexKahanSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Compensated sum of a complex sequence, in iteration order.
pub fn kahan_sum_complex<I: IntoIterator<Item = Complex64>>(items: I) -> Complex64 {
    let mut acc = ComplexKahanSum::default();
    for z in items {
        acc.add(z);
    }
    acc.value()
}
