//! Wave functions of the evolving oscillator: Hermite polynomials, the
//! mode functions Φₙ(x,t), the accumulated phases αₙ(t), the full
//! solutions Ψₙ(x,t) = e^{iαₙ}Φₙ, the closed-form static solution, and
//! grid-based expectation values (including energy and the quadratic
//! invariant).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ermakov::EPSolution;
use crate::profiles::OscillatorConstants;
use crate::quad;
use crate::sum::pairwise_sum;

/// Highest mode order accepted by the Hermite routines.
pub const MAX_ORDER: u32 = 200;

/// A uniform spatial grid with at least 16 samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpatialGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub count: usize,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, count: usize) -> Result<Self> {
        let grid = Self { x_min, x_max, count };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::Parameter(format!(
                "grid needs finite x_max > x_min, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.count < 16 {
            return Err(Error::Parameter(format!(
                "grid needs at least 16 samples, got {}",
                self.count
            )));
        }
        Ok(())
    }

    /// Symmetric default grid for mode `n`: half-width 10·√ħ·ρ_max·√(n+1)
    /// with 2048 samples, wide enough that the breathing Gaussian stays
    /// ≥ 8σ inside it.
    pub fn auto(n: u32, hbar: f64, rho_max: f64) -> Result<Self> {
        if !(hbar > 0.0 && rho_max > 0.0) {
            return Err(Error::Parameter(format!(
                "grid construction needs positive hbar and rho, got {hbar} and {rho_max}"
            )));
        }
        let half = 10.0 * hbar.sqrt() * rho_max * ((n + 1) as f64).sqrt();
        Self::new(-half, half, 2048)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + self.spacing() * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.point(i))
    }
}

/// A sampled complex wave function at one instant.
#[derive(Clone, Debug)]
pub struct WaveField {
    pub grid: SpatialGrid,
    pub n: u32,
    pub t: f64,
    pub values: Vec<Complex64>,
}

impl WaveField {
    /// Discrete L² norm squared, ∫|ψ|²dx by the rectangle rule (which for a
    /// smooth function decaying inside the grid converges spectrally).
    pub fn norm_sq(&self) -> f64 {
        let terms: Vec<f64> = self.values.iter().map(|v| v.norm_sqr()).collect();
        pairwise_sum(&terms) * self.grid.spacing()
    }
}

/// Physicists' Hermite polynomial Hₙ(z) by the three-term recurrence
/// H_{k+1} = 2zH_k − 2kH_{k−1}.
pub fn hermite(n: u32, z: f64) -> Result<f64> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("Hermite order {n} exceeds the {MAX_ORDER} cap")));
    }
    let (mut prev, mut cur) = (1.0, 2.0 * z);
    if n == 0 {
        return Ok(1.0);
    }
    for k in 1..n {
        (prev, cur) = (cur, 2.0 * z * cur - 2.0 * k as f64 * prev);
    }
    Ok(cur)
}

/// The L²-normalized Hermite function hₙ(z) = Hₙ(z)e^{−z²/2}/√(2ⁿn!√π),
/// evaluated by its own recurrence h_{k+1} = z√(2/(k+1))h_k − √(k/(k+1))h_{k−1}.
/// Every intermediate is itself a normalized function value, so nothing
/// overflows even when Hₙ alone would.
fn hermite_function(n: u32, z: f64) -> f64 {
    let h0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * z * z).exp();
    if n == 0 {
        return h0;
    }
    let (mut prev, mut cur) = (h0, z * 2.0f64.sqrt() * h0);
    for k in 1..n {
        let kf = k as f64;
        let next = z * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        (prev, cur) = (cur, next);
    }
    cur
}

fn phi_value(n: u32, x: f64, rho: f64, rhodot: f64, c: &OscillatorConstants) -> Complex64 {
    let scale = c.hbar.sqrt() * rho;
    // (πħρ²)^{−1/4}(2ⁿn!)^{−1/2}Hₙ(x/(√ħρ))e^{−x²/(2ħρ²)} written through
    // the normalized Hermite function: scale^{−1/2}·hₙ(x/scale).
    let magnitude = hermite_function(n, x / scale) / scale.sqrt();
    let phase = c.m0 * rhodot * x * x / (2.0 * c.hbar * rho);
    magnitude * Complex64::new(0.0, phase).exp()
}

/// The mode function Φₙ(x,t) = (2ⁿn!)^{−1/2}Φ₀Hₙ(x/(√ħρ)) with
/// Φ₀ = (πħρ²)^{−1/4}exp{(im₀/2ħ)[ρ̇/ρ + i/(m₀ρ²)]x²}.
pub fn phi_n(n: u32, x: f64, ep: &EPSolution, t: f64) -> Result<Complex64> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("mode order {n} exceeds the {MAX_ORDER} cap")));
    }
    let (rho, rhodot) = ep.eval(t)?;
    Ok(phi_value(n, x, rho, rhodot, &ep.constants))
}

/// The accumulated phase αₙ(t) = −(n+½)∫₀ᵗ dt′/(m₀ρ(t′)²), evaluated by
/// adaptive quadrature on the solution's dense output to absolute accuracy
/// 1e−10. Independent of ħ.
pub fn alpha_n(n: u32, ep: &EPSolution, t: f64) -> Result<f64> {
    let (t0, t1) = ep.span();
    if !(t >= 0.0 && t >= t0 && t <= t1) {
        return Err(Error::Span { t, t0: t0.max(0.0), t1 });
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let m0 = ep.constants.m0;
    let integral = quad::adaptive(
        |s| match ep.eval(s) {
            Ok((rho, _)) => 1.0 / (m0 * rho * rho),
            Err(_) => f64::NAN,
        },
        0.0,
        t,
        1e-11,
    )?;
    Ok(-(n as f64 + 0.5) * integral)
}

/// The full wave function Ψₙ(x,t) = e^{iαₙ(t)}Φₙ(x,t) sampled on `grid`.
pub fn psi_n(n: u32, grid: &SpatialGrid, ep: &EPSolution, t: f64) -> Result<WaveField> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("mode order {n} exceeds the {MAX_ORDER} cap")));
    }
    grid.validate()?;
    let (rho, rhodot) = ep.eval(t)?;
    let alpha = alpha_n(n, ep, t)?;
    let phase = Complex64::new(0.0, alpha).exp();
    let values = grid
        .points()
        .map(|x| phase * phi_value(n, x, rho, rhodot, &ep.constants))
        .collect();
    Ok(WaveField { grid: *grid, n, t, values })
}

/// The static-oscillator solution
/// Ψₙ⁽⁰⁾(x,t) = (m₀ω₀/πħ)^{1/4}(2ⁿn!)^{−1/2}Hₙ(√(m₀ω₀/ħ)x)
///              e^{−m₀ω₀x²/(2ħ)}e^{−i(n+½)ω₀t},
/// the reference every time-dependent result must reduce to at constant
/// frequency.
pub fn psi_n_static(
    n: u32,
    grid: &SpatialGrid,
    t: f64,
    constants: &OscillatorConstants,
) -> Result<WaveField> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("mode order {n} exceeds the {MAX_ORDER} cap")));
    }
    grid.validate()?;
    constants.validate()?;
    let scale = (constants.m0 * constants.omega0 / constants.hbar).sqrt();
    let phase = Complex64::new(0.0, -(n as f64 + 0.5) * constants.omega0 * t).exp();
    let values = grid
        .points()
        .map(|x| phase * scale.sqrt() * hermite_function(n, scale * x))
        .collect();
    Ok(WaveField { grid: *grid, n, t, values })
}

/// Observables available to `expectation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    Identity,
    X,
    X2,
    P,
    P2,
    /// Instantaneous Hamiltonian p²/2m₀ + m₀ω(t)²x²/2 at the ket's time.
    Hamiltonian,
    /// The quadratic invariant ½[(x/ρ)² + (ρp − m₀ρ̇x)²] at the ket's time.
    Invariant,
}

/// Matrix element ⟨a|Ô|b⟩ on the shared grid, by pairwise-summed rectangle
/// quadrature; p and p² act through 4th-order finite differences with
/// one-sided closures at the edges (where the amplitudes are negligible by
/// grid construction).
pub fn expectation(
    a: &WaveField,
    b: &WaveField,
    observable: Observable,
    ep: &EPSolution,
) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::Usage(format!(
            "expectation requires matching grids, got {:?} and {:?}",
            a.grid, b.grid
        )));
    }
    let grid = &a.grid;
    let dx = grid.spacing();
    let c = &ep.constants;
    let hbar = c.hbar;
    let m0 = c.m0;

    let acted: Vec<Complex64> = match observable {
        Observable::Identity => b.values.clone(),
        Observable::X => {
            b.values.iter().enumerate().map(|(i, &v)| grid.point(i) * v).collect()
        }
        Observable::X2 => b
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let x = grid.point(i);
                x * x * v
            })
            .collect(),
        Observable::P => {
            let d1 = derivative(&b.values, dx);
            d1.into_iter().map(|d| Complex64::new(0.0, -hbar) * d).collect()
        }
        Observable::P2 => {
            let d2 = second_derivative(&b.values, dx);
            d2.into_iter().map(|d| -hbar * hbar * d).collect()
        }
        Observable::Hamiltonian => {
            let w = ep.profile.omega_at(b.t)?;
            let d2 = second_derivative(&b.values, dx);
            b.values
                .iter()
                .zip(d2)
                .enumerate()
                .map(|(i, (&v, d))| {
                    let x = grid.point(i);
                    -hbar * hbar / (2.0 * m0) * d + 0.5 * m0 * w * w * x * x * v
                })
                .collect()
        }
        Observable::Invariant => {
            let (rho, rhodot) = ep.eval(b.t)?;
            let d1 = derivative(&b.values, dx);
            let d2 = second_derivative(&b.values, dx);
            // ½[(ρ⁻² + m₀²ρ̇²)x²b − ħ²ρ²b″ + iħm₀ρρ̇(2xb′ + b)]
            let quad_coeff = 1.0 / (rho * rho) + m0 * m0 * rhodot * rhodot;
            let cross = Complex64::new(0.0, hbar * m0 * rho * rhodot);
            b.values
                .iter()
                .zip(d1.iter().zip(d2.iter()))
                .enumerate()
                .map(|(i, (&v, (&dv, &ddv)))| {
                    let x = grid.point(i);
                    0.5 * (quad_coeff * x * x * v - hbar * hbar * rho * rho * ddv
                        + cross * (2.0 * x * dv + v))
                })
                .collect()
        }
    };
    let terms: Vec<Complex64> =
        a.values.iter().zip(&acted).map(|(av, &bv)| av.conj() * bv).collect();
    Ok(pairwise_sum(&terms) * dx)
}

/// 4th-order first derivative on a uniform grid; one-sided stencils close
/// the two points at each edge.
fn derivative(f: &[Complex64], dx: f64) -> Vec<Complex64> {
    let n = f.len();
    assert!(n >= 6, "derivative stencils need at least 6 samples");
    let s = 1.0 / (12.0 * dx);
    let mut out = Vec::with_capacity(n);
    out.push(s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]));
    out.push(s * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]));
    for i in 2..n - 2 {
        out.push(s * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]));
    }
    out.push(
        s * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]),
    );
    out.push(
        s * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
            + 3.0 * f[n - 5]),
    );
    out
}

/// 4th-order second derivative on a uniform grid with one-sided closures.
fn second_derivative(f: &[Complex64], dx: f64) -> Vec<Complex64> {
    let n = f.len();
    assert!(n >= 6, "derivative stencils need at least 6 samples");
    let s = 1.0 / (12.0 * dx * dx);
    let mut out = Vec::with_capacity(n);
    out.push(
        s * (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4]
            - 10.0 * f[5]),
    );
    out.push(
        s * (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]),
    );
    for i in 2..n - 2 {
        out.push(s * (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]));
    }
    out.push(
        s * (10.0 * f[n - 1] - 15.0 * f[n - 2] - 4.0 * f[n - 3] + 14.0 * f[n - 4]
            - 6.0 * f[n - 5]
            + f[n - 6]),
    );
    out.push(
        s * (45.0 * f[n - 1] - 154.0 * f[n - 2] + 214.0 * f[n - 3] - 156.0 * f[n - 4]
            + 61.0 * f[n - 5]
            - 10.0 * f[n - 6]),
    );
    out
}
