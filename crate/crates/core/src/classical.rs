//! The classical mode equation k̈ + ω(t)²k = 0: fundamental solution pairs,
//! the parametric-resonance swing envelope, and the complex mode amplitude
//! ρ(t)e^{−iγ(t)}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ermakov::EPSolution;
use crate::ode::{Dopri5, Trajectory};
use crate::profiles::FrequencyProfile;
use crate::quad;

/// Fundamental pair u, v of the mode equation with u(t₀)=1, u̇(t₀)=0 and
/// v(t₀)=0, v̇(t₀)=1, so the Wronskian u v̇ − v u̇ is 1.
#[derive(Clone, Debug)]
pub struct ModePair {
    traj: Trajectory<4>, // [u, u', v, v']
    wronskian0: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct ModeState {
    pub u: f64,
    pub udot: f64,
    pub v: f64,
    pub vdot: f64,
}

impl ModePair {
    pub fn span(&self) -> (f64, f64) {
        self.traj.span()
    }

    pub fn eval(&self, t: f64) -> Result<ModeState> {
        let [u, udot, v, vdot] = self.traj.eval(t)?;
        Ok(ModeState { u, udot, v, vdot })
    }

    /// Wronskian fixed at construction (1 for the standard initial
    /// conditions).
    pub fn wronskian0(&self) -> f64 {
        self.wronskian0
    }
}

/// Integrate both fundamental solutions over `[t0, t1]` with local error
/// `tol`. Both ride in one system so they share the accepted step sequence.
pub fn solve_homogeneous(
    profile: &FrequencyProfile,
    t0: f64,
    t1: f64,
    tol: f64,
) -> Result<ModePair> {
    profile.validate()?;
    let (d0, d1) = profile.domain();
    if t0 < d0 || t1 > d1 {
        return Err(Error::Domain(format!(
            "integration span [{t0}, {t1}] outside profile domain [{d0}, {d1}]"
        )));
    }
    let f = |t: f64, y: &[f64; 4]| {
        let w2 = profile.omega_sq_at(t).unwrap_or(f64::NAN);
        [y[1], -w2 * y[0], y[3], -w2 * y[2]]
    };
    let omega_max = profile.max_omega_on(t0, t1)?;
    let traj = Dopri5::dense_output_quality(tol, t1 - t0, omega_max)?
        .solve(f, t0, t1, [1.0, 0.0, 0.0, 1.0], &profile.breakpoints())?;
    Ok(ModePair { traj, wronskian0: 1.0 })
}

/// u(t)v̇(t) − v(t)u̇(t) at `t`.
pub fn wronskian(pair: &ModePair, t: f64) -> Result<f64> {
    let s = pair.eval(t)?;
    Ok(s.u * s.vdot - s.v * s.udot)
}

/// Parametric-resonance swing solution
/// Θ(t) = Θ₀⁽¹⁾e^{st}cos[(Ω₀+ε/2)t] + Θ₀⁽²⁾e^{−st}sin[(Ω₀+ε/2)t],
/// valid while the growth exponent s = ½√((hΩ₀/2)² − ε²) is real.
#[derive(Clone, Copy, Debug)]
pub struct SwingSolution {
    pub theta0_1: f64,
    pub theta0_2: f64,
    pub s: f64,
    pub omega0: f64,
    pub h: f64,
    pub eps: f64,
}

impl SwingSolution {
    pub fn new(theta0_1: f64, theta0_2: f64, omega0: f64, h: f64, eps: f64) -> Result<Self> {
        if !(omega0 > 0.0 && h > 0.0) {
            return Err(Error::Parameter(format!(
                "require Omega0 > 0 and h > 0, got Omega0 = {omega0}, h = {h}"
            )));
        }
        let half_width = h * omega0 / 2.0;
        if !(eps.abs() < half_width) {
            return Err(Error::Parameter(format!(
                "detuning |eps| = {} not inside the resonance tongue (< {half_width}); \
                 the growth exponent would be imaginary",
                eps.abs()
            )));
        }
        let s = 0.5 * (half_width * half_width - eps * eps).sqrt();
        Ok(Self { theta0_1, theta0_2, s, omega0, h, eps })
    }
}

pub fn swing_theta(sol: &SwingSolution, t: f64) -> f64 {
    let phase = (sol.omega0 + sol.eps / 2.0) * t;
    sol.theta0_1 * (sol.s * t).exp() * phase.cos()
        + sol.theta0_2 * (-sol.s * t).exp() * phase.sin()
}

/// Complex mode amplitude k(t) = ρ(t)e^{−iγ(t)}, with γ(0) = 0 and γ fixed
/// by the normalization k k̇* − k* k̇ = i/m₀, i.e. γ̇ = 1/(2m₀ρ²).
/// ħ is taken as 1 here: the polar decomposition is only dimensionally
/// consistent under that convention.
pub fn complex_mode(ep: &EPSolution, t: f64) -> Result<Complex64> {
    let (t0, t1) = ep.span();
    if t < t0 || t > t1 {
        return Err(Error::Span { t, t0, t1 });
    }
    let m0 = ep.constants.m0;
    let (rho, _) = ep.eval(t)?;
    let gamma = if t == 0.0 {
        0.0
    } else {
        quad::adaptive(
            |s| match ep.eval(s) {
                Ok((r, _)) => 1.0 / (2.0 * m0 * r * r),
                Err(_) => f64::NAN,
            },
            0.0,
            t,
            1e-12,
        )?
    };
    if !gamma.is_finite() {
        return Err(Error::Numeric("phase quadrature produced a non-finite value".into()));
    }
    Ok(rho * Complex64::new(0.0, -gamma).exp())
}
