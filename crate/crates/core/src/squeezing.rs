//! Squeezing parameter and phase of the evolving state, the variances they
//! generate, and the ground-state transition/persistence/excitation
//! probabilities, including the sudden-jump closed forms.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::ermakov::EPSolution;
use crate::profiles::OscillatorConstants;

/// Squeezing data of the evolving state at one instant. `phi` is `None`
/// exactly when `r` vanishes (below 1e-12): the phase of an unsqueezed state
/// carries no information, and reporting a silent 0 would be misleading.
#[derive(Clone, Copy, Debug)]
pub struct SqueezingState {
    /// Squeezing parameter r ≥ 0.
    pub r: f64,
    /// Squeezing phase in [0, π], or `None` when the state is unsqueezed.
    pub phi: Option<f64>,
    /// The auxiliary λ = cosh²r ≥ 1.
    pub lambda: f64,
    /// Instantaneous frequency ω(t).
    pub omega: f64,
    /// The time this state was sampled at.
    pub t: f64,
}

/// Squeezing parameter, phase and λ at time `t` of the state attached to an
/// auxiliary-amplitude solution.
///
/// λ = (m₀²ρ̇² + ρ⁻² + m₀²ω²ρ² + 2m₀ω)/(4m₀ω) and r = cosh⁻¹√λ. The code
/// evaluates λ − 1 = [m₀²ρ̇² + (1/ρ − m₀ωρ)²]/(4m₀ω) instead, which is
/// algebraically identical but immune to the cancellation that would
/// otherwise wash out small r; r is then sinh⁻¹√(λ−1).
pub fn squeeze_state(ep: &EPSolution, t: f64) -> Result<SqueezingState> {
    let (rho, rhodot) = ep.eval(t)?;
    let omega = ep.profile.omega_at(t)?;
    let m0 = ep.constants.m0;
    let diff = 1.0 / rho - m0 * omega * rho;
    let lambda_m1 = (m0 * m0 * rhodot * rhodot + diff * diff) / (4.0 * m0 * omega);
    let lambda = 1.0 + lambda_m1;
    let r = lambda_m1.sqrt().asinh();
    let phi = if r < 1e-12 {
        None
    } else {
        // cos φ = (1 + m₀ωρ² − 2λ)/(2 sinh r cosh r); the denominator is
        // 2√(λ(λ−1)).
        let num = 1.0 + m0 * omega * rho * rho - 2.0 * lambda;
        let den = 2.0 * (lambda * lambda_m1).sqrt();
        let arg = num / den;
        if arg.abs() > 1.0 + 1e-9 {
            return Err(Error::Inconsistent(format!(
                "cos(phi) argument {arg} at t = {t} lies outside [-1, 1] by more than 1e-9; \
                 the (rho, rhodot, omega) triple does not describe a physical state"
            )));
        }
        Some(arg.clamp(-1.0, 1.0).acos())
    };
    Ok(SqueezingState { r, phi, lambda, omega, t })
}

/// Time-independent squeezing parameter after an instantaneous frequency
/// jump ω₀ → ω₁ from the ground state: cosh⁻¹[(ω₀+ω₁)/(2√(ω₀ω₁))], which
/// simplifies to |ln(ω₁/ω₀)|/2.
pub fn sudden_jump_r(omega0: f64, omega1: f64) -> Result<f64> {
    check_frequencies(omega0, omega1)?;
    Ok(0.5 * (omega1 / omega0).ln().abs())
}

/// Ground-state persistence probability after a jump ω₀ → ω₁:
/// 2√(ω₀ω₁)/(ω₀+ω₁). Symmetric in its arguments and time-independent.
pub fn sudden_jump_persistence(omega0: f64, omega1: f64) -> Result<f64> {
    check_frequencies(omega0, omega1)?;
    Ok(2.0 * (omega0 * omega1).sqrt() / (omega0 + omega1))
}

fn check_frequencies(omega0: f64, omega1: f64) -> Result<()> {
    if !(omega0 > 0.0 && omega0.is_finite() && omega1 > 0.0 && omega1.is_finite()) {
        return Err(Error::Parameter(format!(
            "frequencies must be positive and finite, got {omega0} and {omega1}"
        )));
    }
    Ok(())
}

fn cross_term(state: &SqueezingState) -> f64 {
    match state.phi {
        Some(phi) => 2.0 * state.r.sinh() * state.r.cosh() * phi.cos(),
        // r = 0 forces sinh r = 0; make that explicit instead of relying on a
        // phantom phase.
        None => 0.0,
    }
}

/// Position variance σ²ₓ of the n-th state:
/// {cosh²r + 2 sinh r cosh r cos φ + sinh²r}·(n+½)·ħ/(m₀ω).
pub fn variance_x(n: u32, state: &SqueezingState, constants: &OscillatorConstants) -> f64 {
    let (sh, ch) = (state.r.sinh(), state.r.cosh());
    let envelope = ch * ch + sh * sh + cross_term(state);
    envelope * (n as f64 + 0.5) * constants.hbar / (constants.m0 * state.omega)
}

/// Momentum variance σ²ₚ of the n-th state:
/// {cosh²r − 2 sinh r cosh r cos φ + sinh²r}·(n+½)·ħm₀ω.
pub fn variance_p(n: u32, state: &SqueezingState, constants: &OscillatorConstants) -> f64 {
    let (sh, ch) = (state.r.sinh(), state.r.cosh());
    let envelope = ch * ch + sh * sh - cross_term(state);
    envelope * (n as f64 + 0.5) * constants.hbar * constants.m0 * state.omega
}

/// Probability that a ground state with squeezing r is found in level ν of
/// the instantaneous oscillator: ν!·tanh^ν r/(2^ν·((ν/2)!)²·cosh r). Only
/// even ν are reachable; odd ν is a domain error rather than a silent zero.
pub fn transition_prob(nu: u32, r: f64) -> Result<f64> {
    if !nu.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "only even levels are reachable from the ground state, got nu = {nu}"
        )));
    }
    if !(r >= 0.0) {
        return Err(Error::Parameter(format!("squeezing parameter must be >= 0, got {r}")));
    }
    if nu == 0 {
        return Ok(1.0 / r.cosh());
    }
    let t = r.tanh();
    if t == 0.0 {
        return Ok(0.0);
    }
    if nu <= 40 {
        // Factorials up to 40! stay inside f64 range (~8e47).
        let half = nu / 2;
        let ratio = factorial(nu) / (factorial(half) * factorial(half));
        Ok(ratio * (t / 2.0).powi(nu as i32) / r.cosh())
    } else {
        let nu_f = nu as f64;
        let half_f = (nu / 2) as f64;
        let log_p = ln_gamma(nu_f + 1.0) - 2.0 * ln_gamma(half_f + 1.0)
            + nu_f * (t.ln() - std::f64::consts::LN_2)
            - r.cosh().ln();
        Ok(log_p.exp())
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Probability of remaining in the ground state: 1/cosh r.
pub fn persistence_prob(r: f64) -> f64 {
    1.0 / r.cosh()
}

/// Probability of excitation out of the ground state: 1 − 1/cosh r.
pub fn excitation_prob(r: f64) -> f64 {
    1.0 - persistence_prob(r)
}

/// Energy expectation value of the n-th state:
/// ⟨H⟩ = ħ(n+½)/(2m₀)·[ρ⁻² + m₀²ρ̇² + m₀²ω²ρ²].
pub fn mean_energy(n: u32, ep: &EPSolution, t: f64) -> Result<f64> {
    let (rho, rhodot) = ep.eval(t)?;
    let omega = ep.profile.omega_at(t)?;
    let m0 = ep.constants.m0;
    let bracket =
        1.0 / (rho * rho) + m0 * m0 * (rhodot * rhodot + omega * omega * rho * rho);
    Ok(ep.constants.hbar * (n as f64 + 0.5) / (2.0 * m0) * bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ermakov::closed_form;
    use crate::profiles::FrequencyProfile;
    use approx::assert_relative_eq;

    #[test]
    fn static_state_is_unsqueezed() {
        let profile = FrequencyProfile::Constant { omega0: 1.3 };
        let constants = OscillatorConstants { m0: 1.0, hbar: 1.0, omega0: 1.3 };
        let ep = closed_form(&profile, &constants).unwrap();
        let state = squeeze_state(&ep, 2.0).unwrap();
        assert_eq!(state.r, 0.0);
        assert!(state.phi.is_none());
        assert_eq!(state.lambda, 1.0);
        assert_relative_eq!(variance_x(0, &state, &constants), 0.5 / 1.3, max_relative = 1e-15);
        assert_relative_eq!(variance_p(0, &state, &constants), 0.5 * 1.3, max_relative = 1e-15);
    }

    #[test]
    fn sudden_jump_r_closed_values() {
        assert_eq!(sudden_jump_r(3.0, 3.0).unwrap(), 0.0);
        assert_relative_eq!(
            sudden_jump_r(1.0, 2.0).unwrap(),
            0.5 * std::f64::consts::LN_2,
            max_relative = 1e-15
        );
        // cosh⁻¹(5/4) = ln 2 for a fourfold jump.
        assert_relative_eq!(
            sudden_jump_r(1.0, 4.0).unwrap(),
            std::f64::consts::LN_2,
            max_relative = 1e-15
        );
        // |ln(ω1/ω0)|/2 agrees with the cosh form.
        let r = sudden_jump_r(2.0, 5.0).unwrap();
        assert_relative_eq!(r.cosh(), 7.0 / (2.0 * 10.0f64.sqrt()), max_relative = 1e-15);
    }

    #[test]
    fn persistence_closed_values() {
        assert_eq!(sudden_jump_persistence(2.0, 2.0).unwrap(), 1.0);
        assert_relative_eq!(
            sudden_jump_persistence(1.0, 2.0).unwrap(),
            2.0 * 2.0f64.sqrt() / 3.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            sudden_jump_persistence(1.0, 100.0).unwrap(),
            20.0 / 101.0,
            max_relative = 1e-15
        );
        assert_eq!(
            sudden_jump_persistence(1.0, 7.3).unwrap(),
            sudden_jump_persistence(7.3, 1.0).unwrap()
        );
    }

    #[test]
    fn transition_probabilities_small_nu() {
        assert_eq!(transition_prob(0, 0.0).unwrap(), 1.0);
        assert_eq!(transition_prob(2, 0.0).unwrap(), 0.0);
        let r = 0.9f64;
        assert_relative_eq!(transition_prob(0, r).unwrap(), 1.0 / r.cosh());
        assert_relative_eq!(
            transition_prob(2, r).unwrap(),
            r.tanh().powi(2) / (2.0 * r.cosh()),
            max_relative = 1e-14
        );
        assert!(matches!(transition_prob(3, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn transition_prob_log_path_matches_direct() {
        // nu = 40 sits on the direct side; evaluate nu = 42 both ways.
        let r = 2.0f64;
        let direct = {
            let t: f64 = r.tanh();
            let ratio = factorial(42) / (factorial(21) * factorial(21));
            ratio * (t / 2.0).powi(42) / r.cosh()
        };
        assert_relative_eq!(transition_prob(42, r).unwrap(), direct, max_relative = 1e-12);
    }

    #[test]
    fn persistence_and_excitation_sum_to_one_exactly() {
        for &r in &[0.0, 0.1, 0.5, 1.0, 2.0, 5.0] {
            assert_eq!(persistence_prob(r) + excitation_prob(r), 1.0);
        }
    }

    #[test]
    fn phi_zero_gives_exponential_variances() {
        // A synthetic state with phi = 0 must reshape the variances by
        // exactly e^{±2r}.
        let constants = OscillatorConstants { m0: 1.0, hbar: 1.0, omega0: 1.0 };
        let r = 0.8f64;
        let state = SqueezingState {
            r,
            phi: Some(0.0),
            lambda: r.cosh() * r.cosh(),
            omega: 1.0,
            t: 0.0,
        };
        assert_relative_eq!(
            variance_x(0, &state, &constants),
            0.5 * (2.0 * r).exp(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            variance_p(0, &state, &constants),
            0.5 * (-2.0 * r).exp(),
            max_relative = 1e-14
        );
    }
}
