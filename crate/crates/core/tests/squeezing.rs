//! Squeezing parameter/phase, variances, uncertainty products, and the
//! ground-state transition probabilities, including the sudden-jump closed
//! forms.

use proptest::prelude::*;
use tdho_core::ermakov::{closed_form, solve_ep};
use tdho_core::profiles::{FrequencyProfile, OscillatorConstants};
use tdho_core::squeezing::{
    excitation_prob, persistence_prob, squeeze_state, sudden_jump_persistence, sudden_jump_r,
    transition_prob, variance_p, variance_x,
};
use tdho_core::Error;

const PI: f64 = std::f64::consts::PI;

fn c1() -> OscillatorConstants {
    OscillatorConstants { m0: 1.0, hbar: 1.0, omega0: 1.0 }
}

fn jump() -> FrequencyProfile {
    FrequencyProfile::SuddenJump { omega0: 1.0, omega1: 2.0 }
}

fn paul() -> FrequencyProfile {
    FrequencyProfile::PaulTrap { omega0: 1.0, beta: 1.0, gamma: 0.5, tau: 3.0 }
}

#[test]
fn static_state_is_unsqueezed() {
    let ep = closed_form(&FrequencyProfile::Constant { omega0: 1.0 }, &c1()).unwrap();
    for t in [0.0, 1.3, 8.0] {
        let s = squeeze_state(&ep, t).unwrap();
        assert_eq!(s.r, 0.0);
        assert_eq!(s.lambda, 1.0);
        assert!(s.phi.is_none(), "phase must be undefined at r = 0");
    }
    // a trap starting in its static configuration is momentarily unsqueezed
    let ep = solve_ep(&paul(), &c1(), (1.0, 0.0), 1.0, 1e-10).unwrap();
    let s = squeeze_state(&ep, 0.0).unwrap();
    assert!(s.r < 1e-12);
    assert!(s.phi.is_none());
}

#[test]
fn sudden_jump_squeezing_is_constant_ln2_over_2() {
    let expect = 0.5 * 2.0f64.ln();
    let ep = solve_ep(&jump(), &c1(), (1.0, 0.0), 10.0, 1e-10).unwrap();
    for i in 0..=40 {
        let t = 0.05 + 9.9 * i as f64 / 40.0;
        let s = squeeze_state(&ep, t).unwrap();
        assert!((s.r - expect).abs() < 1e-9, "t = {t}: r = {}", s.r);
        assert!((s.lambda - 9.0 / 8.0).abs() < 1e-9, "λ = cosh²r = 9/8");
    }
    assert!((sudden_jump_r(1.0, 2.0).unwrap() - expect).abs() < 1e-15);
}

#[test]
fn sudden_jump_phase_rotates_from_zero() {
    let ep = closed_form(&jump(), &c1()).unwrap();
    // at t = 0⁺: ρ = ρ₀, ρ̇ = 0 under ω₁ gives cos φ = 1
    let s = squeeze_state(&ep, 0.0).unwrap();
    assert!(s.phi.unwrap() < 1e-6);
    // ω₁t = π/4 makes the cos φ numerator vanish: φ = π/2
    let s = squeeze_state(&ep, PI / 8.0).unwrap();
    assert!((s.phi.unwrap() - PI / 2.0).abs() < 1e-9);
}

#[test]
fn sudden_jump_r_closed_values() {
    assert_eq!(sudden_jump_r(3.0, 3.0).unwrap(), 0.0);
    assert!((sudden_jump_r(1.0, 2.0).unwrap() - 0.5 * 2.0f64.ln()).abs() < 1e-16);
    // cosh⁻¹(5/4) = ln 2
    assert!((sudden_jump_r(1.0, 4.0).unwrap() - 2.0f64.ln()).abs() < 1e-16);
    // the parameter only depends on the ratio, both ways
    assert_eq!(sudden_jump_r(2.0, 1.0).unwrap(), sudden_jump_r(1.0, 2.0).unwrap());
    assert!(sudden_jump_r(0.0, 1.0).is_err());
}

#[test]
fn variances_recover_static_oscillator() {
    let c = OscillatorConstants { m0: 2.0, hbar: 1.0, omega0: 3.0 };
    let ep = closed_form(&FrequencyProfile::Constant { omega0: 3.0 }, &c).unwrap();
    let s = squeeze_state(&ep, 2.0).unwrap();
    for n in [0u32, 3] {
        let want_x = (n as f64 + 0.5) * c.hbar / (c.m0 * c.omega0);
        let want_p = (n as f64 + 0.5) * c.hbar * c.m0 * c.omega0;
        assert!((variance_x(n, &s, &c) - want_x).abs() < 1e-12 * want_x);
        assert!((variance_p(n, &s, &c) - want_p).abs() < 1e-12 * want_p);
        // the product then saturates at ħ²(n+½)²
        let prod = variance_x(n, &s, &c) * variance_p(n, &s, &c);
        let floor = (c.hbar * (n as f64 + 0.5)).powi(2);
        assert!((prod - floor).abs() < 1e-12 * floor);
    }
}

#[test]
fn jump_variance_at_switch_time_reflects_phi_zero() {
    // at t = 0⁺, φ = 0, so σ²ₓ = e^{2r}(n+½)ħ/(m₀ω₁); with e^{2r} = ω₁/ω₀
    // this equals the pre-jump value (n+½)ħ/(m₀ω₀) = (n+½)ħρ(0)²
    let ep = closed_form(&jump(), &c1()).unwrap();
    let s = squeeze_state(&ep, 0.0).unwrap();
    let n = 0u32;
    let sx = variance_x(n, &s, &c1());
    assert!((sx - 0.5).abs() < 1e-12);
    let e2r = (2.0 * s.r).exp();
    assert!((e2r - 2.0).abs() < 1e-9);
    let sp = variance_p(n, &s, &c1());
    assert!((sp - 0.5).abs() < 1e-9); // e^{-2r}(n+½)ħm₀ω₁ = ½·½·1·2

}

#[test]
fn variances_match_amplitude_identities() {
    // σ²ₓ = (n+½)ħρ² and σ²ₚ = (n+½)ħ[ρ⁻² + m₀²ρ̇²] for states built from
    // any EP solution, at two values of ħ to keep the symbol honest
    for hbar in [1.0, 2.0] {
        for (profile, t_end) in [(jump(), 10.0), (paul(), 15.0)] {
            let c = OscillatorConstants { m0: 1.0, hbar, omega0: 1.0 };
            let ep = solve_ep(&profile, &c, (1.0, 0.0), t_end, 1e-10).unwrap();
            for n in [0u32, 2] {
                let nf = n as f64 + 0.5;
                for i in 0..=60 {
                    let t = t_end * i as f64 / 60.0;
                    let (rho, rhodot) = ep.eval(t).unwrap();
                    let s = squeeze_state(&ep, t).unwrap();
                    let want_x = nf * hbar * rho * rho;
                    let want_p = nf * hbar * (1.0 / (rho * rho) + rhodot * rhodot);
                    let got_x = variance_x(n, &s, &c);
                    let got_p = variance_p(n, &s, &c);
                    assert!((got_x - want_x).abs() < 1e-9 * want_x, "t = {t}, ħ = {hbar}");
                    assert!((got_p - want_p).abs() < 1e-9 * want_p, "t = {t}, ħ = {hbar}");
                }
            }
        }
    }
}

#[test]
fn uncertainty_product_is_bounded_below() {
    for hbar in [1.0, 2.0] {
        let c = OscillatorConstants { m0: 1.0, hbar, omega0: 1.0 };
        for (profile, t_end) in [(jump(), 10.0), (paul(), 15.0)] {
            let ep = solve_ep(&profile, &c, (1.0, 0.0), t_end, 1e-10).unwrap();
            for n in [0u32, 1, 4] {
                let floor = hbar * hbar * (n as f64 + 0.5) * (n as f64 + 0.5);
                for i in 0..=80 {
                    let t = t_end * i as f64 / 80.0;
                    let s = squeeze_state(&ep, t).unwrap();
                    assert!(s.lambda >= 1.0);
                    let prod = variance_x(n, &s, &c) * variance_p(n, &s, &c);
                    assert!(prod >= floor - 1e-12, "t = {t}: {prod} < {floor}");
                }
            }
        }
    }
}

#[test]
fn transition_probabilities_closed_values() {
    // ν = 0 is the persistence probability 1/cosh r
    for r in [0.0, 0.3, 1.7] {
        assert!((transition_prob(0, r).unwrap() - 1.0 / r.cosh()).abs() < 1e-15);
    }
    assert_eq!(transition_prob(0, 0.0).unwrap(), 1.0);
    assert_eq!(transition_prob(2, 0.0).unwrap(), 0.0);
    assert_eq!(transition_prob(4, 0.0).unwrap(), 0.0);
    // ν = 2: 2!·tanh²r/(2²·1!²·cosh r)
    let r = 0.8f64;
    let want = r.tanh() * r.tanh() / (2.0 * r.cosh());
    assert!((transition_prob(2, r).unwrap() - want).abs() < 1e-15);

    assert!(matches!(transition_prob(3, 0.5), Err(Error::Domain(_))));
    assert!(matches!(transition_prob(1, 0.0), Err(Error::Domain(_))));
    assert!(transition_prob(2, -0.1).is_err());
}

#[test]
fn transition_probabilities_sum_to_one() {
    for r in [0.1, 0.5, 1.0, 2.0] {
        let mut sum = 0.0;
        let mut nu = 0;
        loop {
            let p = transition_prob(nu, r).unwrap();
            sum += p;
            if (nu > 0 && p < 1e-14) || nu > 2000 {
                break;
            }
            nu += 2;
        }
        assert!((sum - 1.0).abs() < 1e-10, "r = {r}: sum = {sum}");
    }
}

#[test]
fn persistence_and_excitation_split() {
    assert_eq!(persistence_prob(0.0), 1.0);
    assert_eq!(excitation_prob(0.0), 0.0);
    // r = ln 2 → cosh r = 5/4 → P_p = 0.8
    assert!((persistence_prob(2.0f64.ln()) - 0.8).abs() < 1e-15);
    for r in [0.0, 0.2, 1.0, 3.5] {
        let (p, e) = (persistence_prob(r), excitation_prob(r));
        assert_eq!(p + e, 1.0, "exact complement by construction");
        assert!((0.0..=1.0).contains(&p));
    }
}

#[test]
fn sudden_jump_persistence_closed_values() {
    assert_eq!(sudden_jump_persistence(3.0, 3.0).unwrap(), 1.0);
    let want = 2.0 * 2.0f64.sqrt() / 3.0;
    assert!((sudden_jump_persistence(1.0, 2.0).unwrap() - want).abs() < 1e-15);
    assert!((want - 0.9428090415820634).abs() < 1e-15);
    assert!((sudden_jump_persistence(1.0, 100.0).unwrap() - 20.0 / 101.0).abs() < 1e-15);
    // the quadrupled spring constant: P_p = 2·√4/(1+4) = 0.8 = 1/cosh(ln 2)
    assert!((sudden_jump_persistence(1.0, 4.0).unwrap() - 0.8).abs() < 1e-15);
}

#[test]
fn jump_state_reproduces_both_closed_forms() {
    // squeeze_state on the numeric solution must reproduce sudden_jump_r,
    // and feeding that r to persistence_prob must reproduce
    // sudden_jump_persistence — the full closed-form triangle
    let ep = solve_ep(&jump(), &c1(), (1.0, 0.0), 10.0, 1e-10).unwrap();
    let r_cf = sudden_jump_r(1.0, 2.0).unwrap();
    let p_cf = sudden_jump_persistence(1.0, 2.0).unwrap();
    for t in [0.3, 1.0, 2.7, 5.0, 9.5] {
        let s = squeeze_state(&ep, t).unwrap();
        assert!((s.r - r_cf).abs() < 1e-9);
        assert!((persistence_prob(s.r) - p_cf).abs() < 1e-9);
    }
}

proptest! {
    #[test]
    fn persistence_is_symmetric_and_bounded(w0 in 0.01..50.0f64, w1 in 0.01..50.0f64) {
        let a = sudden_jump_persistence(w0, w1).unwrap();
        let b = sudden_jump_persistence(w1, w0).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a > 0.0 && a <= 1.0);
        // consistency with the squeezing parameter: P_p = 1/cosh r
        let r = sudden_jump_r(w0, w1).unwrap();
        prop_assert!((a - 1.0 / r.cosh()).abs() < 1e-14);
    }

    #[test]
    fn transition_tail_is_positive_and_decreasing_eventually(
        r in 0.05..2.5f64,
        nu_half in 1u32..40,
    ) {
        let nu = 2 * nu_half;
        let p = transition_prob(nu, r).unwrap();
        prop_assert!((0.0..1.0).contains(&p));
        // the even-ν sequence decays monotonically beyond its first term
        let p_next = transition_prob(nu + 2, r).unwrap();
        prop_assert!(p_next < p || p == 0.0);
    }
}
