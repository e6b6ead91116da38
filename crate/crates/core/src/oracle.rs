//! An independent check on everything else: direct Crank–Nicolson
//! integration of iħ∂ψ/∂t = [−ħ²/(2m₀)∂²ₓ + ½m₀ω(t)²x²]ψ on a finite grid.
//! This module sees only the frequency profile — never the auxiliary
//! amplitude or anything derived from it — so agreement with the analytic
//! pipeline is meaningful evidence, not circularity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::profiles::{FrequencyProfile, OscillatorConstants};
use crate::sum::pairwise_sum;
use crate::wavefunction::{SpatialGrid, WaveField};

/// Settings for one propagation run.
#[derive(Clone, Debug)]
pub struct PropagationConfig {
    pub grid: SpatialGrid,
    pub dt: f64,
    pub t_end: f64,
    pub profile: FrequencyProfile,
    pub constants: OscillatorConstants,
}

const MAX_STEPS: usize = 5_000_000;

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.profile.validate()?;
        self.constants.validate()?;
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::Parameter(format!(
                "propagation needs t_end > 0, got {}",
                self.t_end
            )));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Parameter(format!("propagation needs dt > 0, got {}", self.dt)));
        }
        // Resolve the fastest oscillation: dt no larger than 0.01/max ω.
        let mut w_max = 0.0f64;
        for i in 0..=2048 {
            let t = self.t_end * i as f64 / 2048.0;
            w_max = w_max.max(self.profile.omega_at(t)?);
        }
        if self.dt > 0.01 / w_max {
            return Err(Error::Parameter(format!(
                "dt = {} too coarse for max omega = {w_max}; need dt <= {}",
                self.dt,
                0.01 / w_max
            )));
        }
        let steps = (self.t_end / self.dt).round();
        if steps as usize > MAX_STEPS {
            return Err(Error::Parameter(format!(
                "propagation would need {steps} steps (cap {MAX_STEPS})"
            )));
        }
        Ok(())
    }
}

/// Propagate `initial` to `t_end` and return the state there.
pub fn propagate(initial: &WaveField, config: &PropagationConfig) -> Result<WaveField> {
    let mut fields = propagate_snapshots(initial, config, &[config.t_end])?;
    Ok(fields.pop().expect("one snapshot was requested"))
}

/// Propagate and capture the state at each requested time, snapped to the
/// nearest step boundary of the effective step dt_eff = t_end/round(t_end/dt).
/// Snapshots are returned in the order requested, each carrying the actual
/// (snapped) time.
pub fn propagate_snapshots(
    initial: &WaveField,
    config: &PropagationConfig,
    times: &[f64],
) -> Result<Vec<WaveField>> {
    config.validate()?;
    if initial.grid != config.grid {
        return Err(Error::Usage(
            "initial state and propagation config use different grids".into(),
        ));
    }
    let norm = norm_sq(initial);
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::Parameter(format!(
            "initial state must be normalized, got |psi|^2 = {norm}"
        )));
    }
    let peak = initial.values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let edge = initial.values[0].norm().max(initial.values[initial.values.len() - 1].norm());
    if edge > 1e-6 * peak {
        return Err(Error::Parameter(format!(
            "grid too narrow: edge amplitude {edge:e} vs peak {peak:e}"
        )));
    }

    let n_steps = ((config.t_end / config.dt).round() as usize).max(1);
    let dt = config.t_end / n_steps as f64;
    let mut capture_at: Vec<(usize, usize)> = Vec::with_capacity(times.len());
    for (slot, &t) in times.iter().enumerate() {
        if !(t >= 0.0 && t <= config.t_end + 1e-9 * config.t_end) {
            return Err(Error::Span { t, t0: 0.0, t1: config.t_end });
        }
        let idx = ((t / dt).round() as usize).min(n_steps);
        capture_at.push((idx, slot));
    }
    capture_at.sort_unstable();

    let grid = config.grid;
    let count = grid.count;
    let dx = grid.spacing();
    let hbar = config.constants.hbar;
    let m0 = config.constants.m0;
    let kinetic = hbar * hbar / (2.0 * m0 * dx * dx);

    let mut psi = initial.values.clone();
    let mut out: Vec<Option<WaveField>> = (0..times.len()).map(|_| None).collect();
    let mut pending = capture_at.into_iter().peekable();
    let store = |step: usize,
                     psi: &[Complex64],
                     pending: &mut std::iter::Peekable<std::vec::IntoIter<(usize, usize)>>,
                     out: &mut Vec<Option<WaveField>>| {
        while let Some(&(idx, slot)) = pending.peek() {
            if idx != step {
                break;
            }
            out[slot] = Some(WaveField {
                grid,
                n: initial.n,
                t: step as f64 * dt,
                values: psi.to_vec(),
            });
            pending.next();
        }
    };
    store(0, &psi, &mut pending, &mut out);

    // Scratch space reused across steps; fixed iteration order keeps runs
    // bitwise reproducible.
    let mut diag_a = vec![Complex64::new(0.0, 0.0); count];
    let mut rhs = vec![Complex64::new(0.0, 0.0); count];
    let mut c_prime = vec![Complex64::new(0.0, 0.0); count];
    let mut norm_terms = vec![0.0f64; count];
    let mut prev_norm = norm;

    for step in 0..n_steps {
        let t_mid = (step as f64 + 0.5) * dt;
        let w = config.profile.omega_at(t_mid)?;
        let half = 0.5 * dt / hbar;
        // H = kinetic tridiagonal + V(x) diagonal; A = 1 + i·half·H.
        let off = Complex64::new(0.0, half * (-kinetic));
        for i in 0..count {
            let x = grid.point(i);
            let h_diag = 2.0 * kinetic + 0.5 * m0 * w * w * x * x;
            diag_a[i] = Complex64::new(1.0, half * h_diag);
            // rhs = (1 − i·half·H)ψ with Dirichlet ends (ψ outside = 0).
            let mut acc = Complex64::new(1.0, -half * h_diag) * psi[i];
            if i > 0 {
                acc -= off * psi[i - 1];
            }
            if i + 1 < count {
                acc -= off * psi[i + 1];
            }
            rhs[i] = acc;
        }
        thomas_symmetric(&diag_a, off, &mut rhs, &mut c_prime)?;
        psi.copy_from_slice(&rhs);

        for (slot, v) in norm_terms.iter_mut().zip(&psi) {
            *slot = v.norm_sqr();
        }
        let new_norm = pairwise_sum(&norm_terms) * dx;
        if (new_norm / prev_norm - 1.0).abs() > 1e-12 {
            return Err(Error::Numeric(format!(
                "norm drifted by {:e} in one step at t = {}",
                new_norm / prev_norm - 1.0,
                (step + 1) as f64 * dt
            )));
        }
        prev_norm = new_norm;
        store(step + 1, &psi, &mut pending, &mut out);
    }

    Ok(out
        .into_iter()
        .map(|f| f.expect("every requested time maps to a step index"))
        .collect())
}

/// Solve (tridiagonal symmetric A)·x = d in place, with `diag` the main
/// diagonal and a constant off-diagonal `off`; `d` holds the solution on
/// return. Thomas algorithm; the matrix here is strictly diagonally
/// dominant, so no pivoting is needed.
fn thomas_symmetric(
    diag: &[Complex64],
    off: Complex64,
    d: &mut [Complex64],
    c_prime: &mut [Complex64],
) -> Result<()> {
    let n = diag.len();
    let mut beta = diag[0];
    if beta.norm_sqr() == 0.0 || !beta.is_finite() {
        return Err(Error::Numeric("tridiagonal pivot vanished".into()));
    }
    c_prime[0] = off / beta;
    d[0] /= beta;
    for i in 1..n {
        beta = diag[i] - off * c_prime[i - 1];
        if beta.norm_sqr() == 0.0 || !beta.is_finite() {
            return Err(Error::Numeric(format!("tridiagonal pivot vanished at row {i}")));
        }
        c_prime[i] = off / beta;
        d[i] = (d[i] - off * d[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        let next = d[i + 1];
        d[i] -= c_prime[i] * next;
    }
    Ok(())
}

fn norm_sq(field: &WaveField) -> f64 {
    let terms: Vec<f64> = field.values.iter().map(|v| v.norm_sqr()).collect();
    pairwise_sum(&terms) * field.grid.spacing()
}

/// Discrete inner product ⟨a|b⟩ = Σ conj(a)·b·dx on the shared grid.
pub fn overlap(a: &WaveField, b: &WaveField) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::Usage("overlap requires matching grids".into()));
    }
    let terms: Vec<Complex64> =
        a.values.iter().zip(&b.values).map(|(av, &bv)| av.conj() * bv).collect();
    Ok(pairwise_sum(&terms) * a.grid.spacing())
}
