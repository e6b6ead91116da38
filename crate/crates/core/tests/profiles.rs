//! Frequency-profile behavior: closed values, switching, periodicity, the
//! square/root consistency contract, and the JSON wire format.

use proptest::prelude::*;
use tdho_core::profiles::{FrequencyProfile, OscillatorConstants};
use tdho_core::Error;

#[test]
fn paul_trap_closed_values() {
    let p = FrequencyProfile::PaulTrap { omega0: 1.0, beta: 1.0, gamma: 0.5, tau: 3.0 };
    assert_eq!(p.omega_at(0.0).unwrap(), 1.0);

    // cos(π) = -1 turns the radicand into (β-γ)/(β+γ)
    let p = FrequencyProfile::PaulTrap { omega0: 1.0, beta: 1.0, gamma: 0.5, tau: 1.0 };
    assert!((p.omega_at(0.5).unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);

    // cos(π/2) = 0
    let p = FrequencyProfile::PaulTrap { omega0: 2.0, beta: 1.0, gamma: 0.5, tau: 1.0 };
    assert!((p.omega_sq_at(0.25).unwrap() - 8.0 / 3.0).abs() < 1e-15);
}

#[test]
fn sudden_jump_switches_exactly_at_zero() {
    let p = FrequencyProfile::SuddenJump { omega0: 1.0, omega1: 2.0 };
    assert_eq!(p.omega_at(-0.1).unwrap(), 1.0);
    assert_eq!(p.omega_at(-1e-300).unwrap(), 1.0);
    assert_eq!(p.omega_at(0.0).unwrap(), 2.0);
    assert_eq!(p.omega_at(7.3).unwrap(), 2.0);
}

#[test]
fn square_accessor_closed_values() {
    let p = FrequencyProfile::Constant { omega0: 3.0 };
    assert_eq!(p.omega_sq_at(-17.0).unwrap(), 9.0);
    let p = FrequencyProfile::ParametricResonance { omega0: 1.0, h: 0.1, eps: 0.0 };
    assert!((p.omega_sq_at(0.0).unwrap() - 1.1).abs() < 1e-15);
}

#[test]
fn paul_trap_periodicity_is_bit_exact() {
    let p = FrequencyProfile::PaulTrap { omega0: 1.3, beta: 1.0, gamma: 0.5, tau: 3.0 };
    for k in 0..4096u32 {
        // dyadic times: t + τ and t + 256τ are exact float sums, so the
        // comparison isolates the reduction itself
        let t = f64::from(k) / 1024.0;
        let w = p.omega_at(t).unwrap();
        assert_eq!(w.to_bits(), p.omega_at(t + 3.0).unwrap().to_bits(), "t = {t}");
        assert_eq!(w.to_bits(), p.omega_at(t + 768.0).unwrap().to_bits(), "t = {t}");
    }
}

#[test]
fn tabulated_hits_knots_and_rejects_outside() {
    let samples = vec![(0.0, 1.0), (1.0, 2.0), (2.5, 0.7), (4.0, 1.4)];
    let p = FrequencyProfile::Tabulated { samples: samples.clone() };
    p.validate().unwrap();
    for &(t, w) in &samples {
        assert_eq!(p.omega_at(t).unwrap(), w);
    }
    assert!(matches!(p.omega_at(-0.01), Err(Error::Domain(_))));
    assert!(matches!(p.omega_at(4.01), Err(Error::Domain(_))));
    assert_eq!(p.domain(), (0.0, 4.0));
}

#[test]
fn validation_rejects_bad_parameters() {
    let bad = [
        FrequencyProfile::Constant { omega0: 0.0 },
        FrequencyProfile::SuddenJump { omega0: 1.0, omega1: -2.0 },
        FrequencyProfile::PaulTrap { omega0: 1.0, beta: 0.5, gamma: 0.5, tau: 3.0 },
        FrequencyProfile::PaulTrap { omega0: 1.0, beta: 1.0, gamma: 0.0, tau: 3.0 },
        FrequencyProfile::ParametricResonance { omega0: 1.0, h: 0.0, eps: 0.0 },
        FrequencyProfile::ParametricResonance { omega0: 1.0, h: 0.1, eps: 0.05 },
        FrequencyProfile::Tabulated { samples: vec![(0.0, 1.0), (0.0, 2.0)] },
        FrequencyProfile::Tabulated { samples: vec![(0.0, 1.0), (1.0, 0.0)] },
        FrequencyProfile::Tabulated { samples: vec![(0.0, 1.0)] },
    ];
    for p in bad {
        assert!(matches!(p.validate(), Err(Error::Parameter(_))), "{p:?}");
    }
    OscillatorConstants::new(1.0, 0.0, 1.0).unwrap_err();
    OscillatorConstants::new(-1.0, 1.0, 1.0).unwrap_err();
}

#[test]
fn json_kind_discriminator_and_aliases() {
    let p: FrequencyProfile =
        serde_json::from_str(r#"{"kind":"paul_trap","omega0":1.0,"beta":1.0,"gamma":0.5,"tau":3.0}"#)
            .unwrap();
    assert_eq!(p, FrequencyProfile::PaulTrap { omega0: 1.0, beta: 1.0, gamma: 0.5, tau: 3.0 });

    // PascalCase kinds are accepted on input
    let p: FrequencyProfile =
        serde_json::from_str(r#"{"kind":"SuddenJump","omega0":1.0,"omega1":2.0}"#).unwrap();
    assert_eq!(p, FrequencyProfile::SuddenJump { omega0: 1.0, omega1: 2.0 });

    // the parametric profile spells its reference frequency with a capital
    let p: FrequencyProfile =
        serde_json::from_str(r#"{"kind":"parametric_resonance","Omega0":1.0,"h":0.1,"eps":0.0}"#)
            .unwrap();
    assert_eq!(p, FrequencyProfile::ParametricResonance { omega0: 1.0, h: 0.1, eps: 0.0 });

    assert!(serde_json::from_str::<FrequencyProfile>(r#"{"kind":"ramp","rate":1.0}"#).is_err());

    let c: OscillatorConstants = serde_json::from_str(r#"{"m0":2.0}"#).unwrap();
    assert_eq!((c.m0, c.hbar, c.omega0), (2.0, 1.0, 1.0));
    assert!(serde_json::from_str::<OscillatorConstants>(r#"{"mass":2.0}"#).is_err());

    // round trip through the serialized form
    let p = FrequencyProfile::Tabulated { samples: vec![(0.0, 1.0), (1.0, 2.0)] };
    let back: FrequencyProfile = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
    assert_eq!(p, back);
}

fn any_profile_and_time() -> impl Strategy<Value = (FrequencyProfile, f64)> {
    let constant = (0.1..10.0f64).prop_map(|omega0| FrequencyProfile::Constant { omega0 });
    let jump = (0.1..10.0f64, 0.1..10.0f64)
        .prop_map(|(omega0, omega1)| FrequencyProfile::SuddenJump { omega0, omega1 });
    let paul = (0.1..5.0f64, 0.1..3.0f64, 0.01..0.99f64, 0.5..10.0f64).prop_map(
        |(omega0, beta, ratio, tau)| FrequencyProfile::PaulTrap {
            omega0,
            beta,
            gamma: beta * ratio,
            tau,
        },
    );
    let parametric = (0.1..5.0f64, 0.01..0.5f64, -0.9..0.9f64).prop_map(|(omega0, h, e)| {
        FrequencyProfile::ParametricResonance { omega0, h, eps: e * h * omega0 / 2.0 }
    });
    let tabulated = proptest::collection::vec(0.1..5.0f64, 4..12).prop_map(|ws| {
        let samples = ws
            .into_iter()
            .enumerate()
            .map(|(i, w)| (-5.0 + 2.5 * i as f64, w))
            .collect();
        FrequencyProfile::Tabulated { samples }
    });
    prop_oneof![constant, jump, paul, parametric, tabulated]
        .prop_flat_map(|p| {
            let (d0, d1) = p.domain();
            let lo = d0.max(-20.0);
            let hi = d1.min(20.0);
            (Just(p), lo..hi)
        })
}

proptest! {
    #[test]
    fn omega_sq_is_square_of_omega_to_one_ulp((profile, t) in any_profile_and_time()) {
        let w = profile.omega_at(t).unwrap();
        let w2 = profile.omega_sq_at(t).unwrap();
        let ulp = f64::from_bits(w2.to_bits() + 1) - w2;
        prop_assert!((w * w - w2).abs() <= ulp, "w={w}, w2={w2}");
    }

    #[test]
    fn omega_stays_positive_on_domain((profile, t) in any_profile_and_time()) {
        prop_assert!(profile.omega_at(t).unwrap() > 0.0);
    }

    #[test]
    fn tabulated_interpolant_respects_sample_range(
        ws in proptest::collection::vec(0.2..4.0f64, 3..9),
        frac in 0.0..1.0f64,
    ) {
        let samples: Vec<(f64, f64)> =
            ws.iter().enumerate().map(|(i, &w)| (i as f64, w)).collect();
        let p = FrequencyProfile::Tabulated { samples };
        let (d0, d1) = p.domain();
        let t = d0 + frac * (d1 - d0);
        let w = p.omega_at(t).unwrap();
        let lo = ws.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ws.iter().cloned().fold(0.0f64, f64::max);
        // monotone-cubic interpolation never overshoots the data range
        prop_assert!(w >= lo - 1e-12 && w <= hi + 1e-12, "w={w} outside [{lo}, {hi}]");
    }
}
