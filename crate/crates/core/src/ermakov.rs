//! The auxiliary amplitude ρ(t): solutions of ρ̈ + ω(t)²ρ = 1/(m₀²ρ³) by
//! direct nonlinear integration, by composition from a fundamental mode pair,
//! and by closed forms for the sudden-jump and periodically modulated
//! profiles.

use std::cell::Cell;
use std::f64::consts::PI;

use crate::classical::{self, ModePair};
use crate::error::{Error, Result};
use crate::mathieu::{mathieu_even, mathieu_odd, MathieuParams};
use crate::ode::{Dopri5, Trajectory};
use crate::profiles::{FrequencyProfile, OscillatorConstants};

/// How an `EPSolution` was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EPMethod {
    Direct,
    Pinney,
    ClosedForm,
}

impl EPMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::Pinney => "pinney",
            Self::ClosedForm => "closed_form",
        }
    }
}

/// Composition constants (A, B, C) building ρ = √(Au² + Bv² + 2Cuv) from a
/// fundamental pair; they must satisfy AB − C² = 1/(m₀²W²).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PinneyConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PinneyConstants {
    /// Constants reproducing ρ(t₀) = ρ₀, ρ̇(t₀) = ρ̇₀ over a pair with the
    /// standard initial conditions (u=1, u̇=0, v=0, v̇=1, Wronskian W).
    pub fn from_initial(rho0: f64, rhodot0: f64, m0: f64, wronskian: f64) -> Result<Self> {
        if !(rho0 > 0.0) {
            return Err(Error::Parameter(format!("rho0 must be positive, got {rho0}")));
        }
        if wronskian == 0.0 {
            return Err(Error::Parameter("Wronskian must be nonzero".into()));
        }
        let a = rho0 * rho0;
        let c = rho0 * rhodot0;
        let b = (1.0 / (m0 * m0 * wronskian * wronskian) + c * c) / a;
        Ok(Self { a, b, c })
    }

    fn check(&self, m0: f64, wronskian: f64) -> Result<()> {
        let target = 1.0 / (m0 * m0 * wronskian * wronskian);
        let det = self.a * self.b - self.c * self.c;
        if ((det - target) / target).abs() > 1e-12 {
            return Err(Error::Constants(format!(
                "AB - C^2 = {det} but 1/(m0 W)^2 = {target}; the composition would not solve the equation"
            )));
        }
        Ok(())
    }
}

/// ρ₀ = 1/√(m₀ω₀), the static fixed point of the auxiliary equation.
pub fn rho_static(constants: &OscillatorConstants) -> f64 {
    1.0 / (constants.m0 * constants.omega0).sqrt()
}

/// Compose (ρ, ρ̇) at `t` from a fundamental pair and constants satisfying
/// the Wronskian constraint.
pub fn pinney_compose(
    pair: &ModePair,
    k: &PinneyConstants,
    constants: &OscillatorConstants,
    t: f64,
) -> Result<(f64, f64)> {
    k.check(constants.m0, pair.wronskian0())?;
    let s = pair.eval(t)?;
    let radicand = k.a * s.u * s.u + k.b * s.v * s.v + 2.0 * k.c * s.u * s.v;
    if !(radicand > 0.0) {
        return Err(Error::Domain(format!(
            "composition radicand {radicand} is not positive at t = {t}"
        )));
    }
    let rho = radicand.sqrt();
    let rhodot =
        (k.a * s.u * s.udot + k.b * s.v * s.vdot + k.c * (s.u * s.vdot + s.udot * s.v)) / rho;
    Ok((rho, rhodot))
}

/// Closed form for the frequency jump ω₀ → ω₁ at t = 0 with the oscillator
/// initially in its static configuration:
/// ρ² = ω₀sin²(ω₁t)/(m₀ω₁²) + cos²(ω₁t)/(m₀ω₀), valid for t ≥ 0.
pub fn rho_sudden_jump(t: f64, omega0: f64, omega1: f64, m0: f64) -> Result<(f64, f64)> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("closed form holds for t >= 0, got t = {t}")));
    }
    let (sin, cos) = (omega1 * t).sin_cos();
    let rho_sq = omega0 * sin * sin / (m0 * omega1 * omega1) + cos * cos / (m0 * omega0);
    let rho = rho_sq.sqrt();
    // d(ρ²)/dt = sin(2ω₁t)(ω₀² − ω₁²)/(m₀ω₀ω₁)
    let drho_sq = 2.0 * sin * cos * (omega0 * omega0 - omega1 * omega1) / (m0 * omega0 * omega1);
    Ok((rho, 0.5 * drho_sq / rho))
}

/// Closed form for the periodically modulated trap, built from the
/// fundamental even/odd solutions M_C, M_S of the associated equation
/// y″ + (a − 2q cos 2x)y = 0 with a = βω₀²τ²/(π²(β+γ)),
/// q = −γω₀²τ²/(2π²(β+γ)), x = πt/τ:
/// ρ² = M_C(x)²/(m₀ω₀) + ω₀τ²M_S(x)²/(π²m₀).
/// With fundamental normalization the usual denominators M_C(0)² and
/// (dM_S/dx)(0)² are exactly 1, so any normalization convention would give
/// the same value.
pub fn rho_paul_trap(t: f64, profile: &FrequencyProfile, m0: f64) -> Result<(f64, f64)> {
    let FrequencyProfile::PaulTrap { omega0, beta, gamma, tau } = *profile else {
        return Err(Error::Usage("rho_paul_trap requires a paul_trap profile".into()));
    };
    profile.validate()?;
    let denom = PI * PI * (beta + gamma);
    let wt2 = omega0 * omega0 * tau * tau;
    let params = MathieuParams::new(beta * wt2 / denom, -gamma * wt2 / (2.0 * denom))?;
    let x = PI * t / tau;
    let (mc, dmc) = mathieu_even(params, x)?;
    let (ms, dms) = mathieu_odd(params, x)?;
    let ca = 1.0 / (m0 * omega0);
    let cb = omega0 * tau * tau / (PI * PI * m0);
    let rho_sq = ca * mc * mc + cb * ms * ms;
    let rho = rho_sq.sqrt();
    // chain rule: d/dt = (π/τ) d/dx
    let drho_sq = (PI / tau) * 2.0 * (ca * mc * dmc + cb * ms * dms);
    Ok((rho, 0.5 * drho_sq / rho))
}

#[derive(Clone, Debug)]
enum Repr {
    Direct(Trajectory<2>),
    Pinney { pair: ModePair, k: PinneyConstants },
    StaticForm { rho0: f64 },
    SuddenJumpForm { omega0: f64, omega1: f64 },
    PaulTrapForm,
}

/// A solution ρ(t), ρ̇(t) of the auxiliary equation, queryable at any time
/// in its span.
#[derive(Clone, Debug)]
pub struct EPSolution {
    pub constants: OscillatorConstants,
    pub profile: FrequencyProfile,
    method: EPMethod,
    repr: Repr,
    t0: f64,
    t1: f64,
}

impl EPSolution {
    pub fn method(&self) -> EPMethod {
        self.method
    }

    pub fn span(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    /// (ρ, ρ̇) at `t`.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        match &self.repr {
            Repr::Direct(traj) => {
                let [rho, rhodot] = traj.eval(t)?;
                Ok((rho, rhodot))
            }
            Repr::Pinney { pair, k } => pinney_compose(pair, k, &self.constants, t),
            Repr::StaticForm { rho0 } => {
                self.check_span(t)?;
                Ok((*rho0, 0.0))
            }
            Repr::SuddenJumpForm { omega0, omega1 } => {
                self.check_span(t)?;
                rho_sudden_jump(t, *omega0, *omega1, self.constants.m0)
            }
            Repr::PaulTrapForm => {
                self.check_span(t)?;
                rho_paul_trap(t, &self.profile, self.constants.m0)
            }
        }
    }

    pub fn rho(&self, t: f64) -> Result<f64> {
        Ok(self.eval(t)?.0)
    }

    fn check_span(&self, t: f64) -> Result<()> {
        if t >= self.t0 && t <= self.t1 {
            Ok(())
        } else {
            Err(Error::Span { t, t0: self.t0, t1: self.t1 })
        }
    }

    /// The default initial state (ρ(0) = 1/√(m₀ω_init), ρ̇(0) = 0): the
    /// oscillator starts in the static configuration of the frequency it had
    /// going into t = 0. For the sudden jump that is the pre-jump ω₀ — the
    /// state cannot anticipate the switch — even though ω(0) itself already
    /// reads ω₁; every other profile is continuous, so ω(0) is used.
    pub fn default_init(profile: &FrequencyProfile, constants: &OscillatorConstants) -> Result<(f64, f64)> {
        let w_init = match profile {
            FrequencyProfile::SuddenJump { omega0, .. } => *omega0,
            _ => profile.omega_at(0.0)?,
        };
        Ok((1.0 / (constants.m0 * w_init).sqrt(), 0.0))
    }
}

/// Integrate the auxiliary equation directly from t = 0 to `t1`.
pub fn solve_ep(
    profile: &FrequencyProfile,
    constants: &OscillatorConstants,
    rho_init: (f64, f64),
    t1: f64,
    tol: f64,
) -> Result<EPSolution> {
    profile.validate()?;
    constants.validate()?;
    let (rho0, rhodot0) = rho_init;
    if !(rho0 > 0.0) {
        return Err(Error::Parameter(format!("initial rho must be positive, got {rho0}")));
    }
    let (d0, d1) = profile.domain();
    if 0.0 < d0 || t1 > d1 {
        return Err(Error::Domain(format!(
            "integration span [0, {t1}] outside profile domain [{d0}, {d1}]"
        )));
    }
    let m0 = constants.m0;
    let m0_sq = m0 * m0;
    // Track how close the amplitude came to collapse so a step-size
    // breakdown can be reported as the singularity it is.
    let rho_min = Cell::new(f64::INFINITY);
    let f = |t: f64, y: &[f64; 2]| {
        let rho = y[0];
        rho_min.set(rho_min.get().min(rho));
        if rho <= 0.0 {
            return [f64::NAN, f64::NAN];
        }
        let w2 = profile.omega_sq_at(t).unwrap_or(f64::NAN);
        [y[1], 1.0 / (m0_sq * rho * rho * rho) - w2 * rho]
    };
    let omega_max = profile.max_omega_on(0.0, t1)?;
    let solved = Dopri5::dense_output_quality(tol, t1, omega_max)?
        .solve(f, 0.0, t1, [rho0, rhodot0], &profile.breakpoints());
    match solved {
        Ok(traj) => Ok(EPSolution {
            constants: *constants,
            profile: profile.clone(),
            method: EPMethod::Direct,
            repr: Repr::Direct(traj),
            t0: 0.0,
            t1,
        }),
        Err(Error::Convergence(msg)) if rho_min.get() < 0.05 * rho0 => Err(Error::Singularity(
            format!("amplitude collapsed toward zero (min rho = {:e}): {msg}", rho_min.get()),
        )),
        Err(e) => Err(e),
    }
}

/// Solve by integrating the fundamental pair and composing.
pub fn solve_ep_pinney(
    profile: &FrequencyProfile,
    constants: &OscillatorConstants,
    rho_init: (f64, f64),
    t1: f64,
    tol: f64,
) -> Result<EPSolution> {
    constants.validate()?;
    let (rho0, rhodot0) = rho_init;
    let pair = classical::solve_homogeneous(profile, 0.0, t1, tol)?;
    let k = PinneyConstants::from_initial(rho0, rhodot0, constants.m0, pair.wronskian0())?;
    Ok(EPSolution {
        constants: *constants,
        profile: profile.clone(),
        method: EPMethod::Pinney,
        repr: Repr::Pinney { pair, k },
        t0: 0.0,
        t1,
    })
}

/// Closed-form solution with the default initial state. Available for the
/// constant, sudden-jump, and periodically modulated profiles.
pub fn closed_form(
    profile: &FrequencyProfile,
    constants: &OscillatorConstants,
) -> Result<EPSolution> {
    profile.validate()?;
    constants.validate()?;
    let (t0, t1, repr) = match profile {
        FrequencyProfile::Constant { omega0 } => (
            f64::NEG_INFINITY,
            f64::INFINITY,
            Repr::StaticForm { rho0: 1.0 / (constants.m0 * omega0).sqrt() },
        ),
        FrequencyProfile::SuddenJump { omega0, omega1 } => {
            (0.0, f64::INFINITY, Repr::SuddenJumpForm { omega0: *omega0, omega1: *omega1 })
        }
        FrequencyProfile::PaulTrap { .. } => (f64::NEG_INFINITY, f64::INFINITY, Repr::PaulTrapForm),
        _ => {
            return Err(Error::Usage(format!(
                "no closed form is available for this profile: {profile:?}"
            )))
        }
    };
    Ok(EPSolution {
        constants: *constants,
        profile: profile.clone(),
        method: EPMethod::ClosedForm,
        repr,
        t0,
        t1,
    })
}

/// Coefficients (η₁, η₂, η₃) of the quadratic invariant written as
/// η₁x² + η₂p² + 2η₃·(xp+px)/2, with η₂ = ρ², η₃ = −m₀ρρ̇ and
/// η₁ = m₀²ρ̇² + 1/ρ² (the second derivative eliminated via the equation of
/// motion). Their determinant η₁η₂ − η₃² is identically 1.
pub fn invariant_coefficients(ep: &EPSolution, t: f64) -> Result<(f64, f64, f64)> {
    let (rho, rhodot) = ep.eval(t)?;
    let m0 = ep.constants.m0;
    let eta2 = rho * rho;
    let eta3 = -m0 * rho * rhodot;
    let eta1 = m0 * m0 * rhodot * rhodot + 1.0 / (rho * rho);
    Ok((eta1, eta2, eta3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn consts(m0: f64, omega0: f64) -> OscillatorConstants {
        OscillatorConstants { m0, hbar: 1.0, omega0 }
    }

    #[test]
    fn static_amplitude_values() {
        assert_relative_eq!(rho_static(&consts(1.0, 1.0)), 1.0);
        assert_relative_eq!(rho_static(&consts(1.0, 4.0)), 0.5);
        assert_relative_eq!(rho_static(&consts(2.0, 8.0)), 0.25);
    }

    #[test]
    fn sudden_jump_starts_static() {
        let (rho, rhodot) = rho_sudden_jump(0.0, 1.0, 2.0, 1.0).unwrap();
        assert_relative_eq!(rho, 1.0);
        assert_eq!(rhodot, 0.0);
        let (rho, _) = rho_sudden_jump(0.0, 4.0, 0.5, 3.0).unwrap();
        assert_relative_eq!(rho, 1.0 / (3.0f64 * 4.0).sqrt());
    }

    #[test]
    fn sudden_jump_without_jump_is_constant() {
        for &t in &[0.0, 0.3, 1.7, 9.0] {
            let (rho, rhodot) = rho_sudden_jump(t, 2.0, 2.0, 1.0).unwrap();
            assert_relative_eq!(rho, 1.0 / 2.0f64.sqrt(), max_relative = 1e-15);
            assert!(rhodot.abs() < 1e-15);
        }
    }

    #[test]
    fn sudden_jump_rejects_negative_time() {
        assert!(matches!(rho_sudden_jump(-0.1, 1.0, 2.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn pinney_constants_satisfy_constraint() {
        let k = PinneyConstants::from_initial(0.7, -0.3, 2.0, 1.0).unwrap();
        let det = k.a * k.b - k.c * k.c;
        assert_relative_eq!(det, 0.25, max_relative = 1e-14);
    }

    #[test]
    fn bad_pinney_constants_are_rejected() {
        let profile = FrequencyProfile::Constant { omega0: 1.0 };
        let pair = classical::solve_homogeneous(&profile, 0.0, 1.0, 1e-10).unwrap();
        let k = PinneyConstants { a: 1.0, b: 1.0, c: 0.5 };
        let err = pinney_compose(&pair, &k, &consts(1.0, 1.0), 0.5).unwrap_err();
        assert!(matches!(err, Error::Constants(_)));
    }

    #[test]
    fn closed_form_constant_profile_is_static() {
        let profile = FrequencyProfile::Constant { omega0: 3.0 };
        let ep = closed_form(&profile, &consts(1.0, 3.0)).unwrap();
        assert_eq!(ep.method(), EPMethod::ClosedForm);
        for &t in &[-4.0, 0.0, 11.5] {
            let (rho, rhodot) = ep.eval(t).unwrap();
            assert_relative_eq!(rho, 1.0 / 3.0f64.sqrt());
            assert_eq!(rhodot, 0.0);
        }
    }

    #[test]
    fn invariant_determinant_is_one() {
        let profile = FrequencyProfile::SuddenJump { omega0: 1.0, omega1: 2.0 };
        let c = consts(1.0, 1.0);
        let ep = closed_form(&profile, &c).unwrap();
        for &t in &[0.0, 0.4, 1.3, 7.9] {
            let (e1, e2, e3) = invariant_coefficients(&ep, t).unwrap();
            assert_relative_eq!(e1 * e2 - e3 * e3, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn direct_solver_survives_amplitude_bounce() {
        // Strong inward velocity drives rho toward the 1/rho^3 wall; for a
        // constant frequency E = rhodot^2/2 + omega^2 rho^2/2 + 1/(2 m0^2 rho^2)
        // is exactly conserved, which probes the integrator through the bounce.
        let profile = FrequencyProfile::Constant { omega0: 1.0 };
        let c = consts(1.0, 1.0);
        let energy = |rho: f64, rhodot: f64| {
            0.5 * rhodot * rhodot + 0.5 * rho * rho + 0.5 / (rho * rho)
        };
        let ep = solve_ep(&profile, &c, (1.0, -5.0), 3.0, 1e-12).unwrap();
        let e0 = energy(1.0, -5.0);
        for i in 0..=30 {
            let t = 3.0 * i as f64 / 30.0;
            let (rho, rhodot) = ep.eval(t).unwrap();
            assert!(rho > 0.0);
            assert_relative_eq!(energy(rho, rhodot), e0, max_relative = 1e-8);
        }
    }
}
