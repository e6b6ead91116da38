//! Helpers shared by the integration tests: an independent Gauss–Legendre
//! quadrature, a fixed-step RK4 reference integrator, and finite-difference
//! stencils. These deliberately share no code with the library so they can
//! serve as oracles for it.

#![allow(dead_code)]

use num_complex::Complex64;

/// Nodes and weights of `n`-point Gauss–Legendre quadrature on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-based starting guess for the i-th positive root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n(x) and its derivative by the three-term recurrence
            let (mut p_prev, mut p) = (1.0, x);
            for k in 1..n {
                let kf = k as f64;
                let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
                p_prev = p;
                p = p_next;
            }
            let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // final recurrence pass for the converged node
        let (mut p_prev, mut p) = (1.0, x);
        for k in 1..n {
            let kf = k as f64;
            let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
            p_prev = p;
            p = p_next;
        }
        let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// ∫ₐᵇ f dx by composite Gauss–Legendre: `panels` equal panels, `order`
/// nodes each.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let mut panel = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            panel += w * f(mid + half * x);
        }
        total += panel * half;
    }
    total
}

/// Complex-valued variant of [`integrate`].
pub fn integrate_complex(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> Complex64 {
    let re = integrate(|x| f(x).re, a, b, panels, order);
    let im = integrate(|x| f(x).im, a, b, panels, order);
    Complex64::new(re, im)
}

/// Classical fixed-step RK4 for a 2-state system, used as a reference
/// integrator independent of the library's adaptive machinery.
pub fn rk4_2(
    f: impl Fn(f64, [f64; 2]) -> [f64; 2],
    t0: f64,
    y0: [f64; 2],
    t1: f64,
    steps: usize,
) -> [f64; 2] {
    let h = (t1 - t0) / steps as f64;
    let mut t = t0;
    let mut y = y0;
    let add = |a: [f64; 2], b: [f64; 2], s: f64| [a[0] + s * b[0], a[1] + s * b[1]];
    for _ in 0..steps {
        let k1 = f(t, y);
        let k2 = f(t + 0.5 * h, add(y, k1, 0.5 * h));
        let k3 = f(t + 0.5 * h, add(y, k2, 0.5 * h));
        let k4 = f(t + h, add(y, k3, h));
        y = [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ];
        t += h;
    }
    y
}

/// Five-point fourth-order central first derivative.
pub fn fd_first(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
}

/// Complex-valued variant of [`fd_first`].
pub fn fd_first_complex(f: impl Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
}
