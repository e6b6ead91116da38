//! The validation suite: nine numbered checks covering closed-form values,
//! static reduction, invariant constancy, method agreement, the independent
//! propagator, probability completeness, uncertainty structure, figure
//! regeneration, and the periodic mode functions. The `validate` subcommand
//! and the acceptance test target both run exactly these.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tdho_core::ermakov::{closed_form, solve_ep, solve_ep_pinney, EPSolution};
use tdho_core::mathieu::{mathieu_even, mathieu_odd, MathieuParams};
use tdho_core::oracle::{overlap, propagate_snapshots, PropagationConfig};
use tdho_core::profiles::{FrequencyProfile, OscillatorConstants};
use tdho_core::squeezing::{
    excitation_prob, persistence_prob, squeeze_state, sudden_jump_persistence, transition_prob,
    variance_p, variance_x,
};
use tdho_core::wavefunction::{
    alpha_n, expectation, psi_n, psi_n_static, Observable, SpatialGrid,
};

use crate::commands::{figure_table, figure_trap, FigureId};

const PI: f64 = std::f64::consts::PI;
const PERSISTENCE: f64 = 0.9428090415820634; // 2√2/3

/// Which subset of the suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Skip the propagator cross-validation (the only slow check).
    Fast,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub seconds: f64,
    pub details: String,
}

impl CheckResult {
    /// One human-readable report line.
    pub fn line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        format!(
            "check {} {status} ({:.2} s) {} — {}",
            self.id, self.seconds, self.name, self.details
        )
    }
}

#[derive(Serialize)]
pub struct Report {
    pub level: Level,
    pub ok: bool,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckResult>,
}

type Check = fn() -> Result<String, String>;

const CHECKS: [(u8, &str, bool, Check); 9] = [
    (1, "sudden-jump persistence probability", false, check_persistence),
    (2, "static-profile reduction", false, check_static_reduction),
    (3, "invariant expectation constancy", false, check_invariant_constancy),
    (4, "amplitude method agreement", false, check_method_triangle),
    (5, "independent propagator cross-validation", true, check_oracle),
    (6, "transition probability completeness", false, check_probability_completeness),
    (7, "uncertainty and squeezing structure", false, check_uncertainty_structure),
    (8, "figure data regeneration", false, check_figures),
    (9, "periodic mode functions", false, check_mathieu),
];

/// Run one check by id, regardless of level. Panics on an unknown id.
pub fn run_check(id: u8) -> CheckResult {
    let (id, name, _, f) =
        CHECKS.iter().find(|(i, ..)| *i == id).expect("check ids run 1..=9");
    execute(*id, name, f)
}

/// Run the whole suite at the given level.
pub fn run_all(level: Level) -> Report {
    let mut checks = Vec::with_capacity(CHECKS.len());
    for (id, name, needs_propagator, f) in CHECKS {
        if needs_propagator && level == Level::Fast {
            checks.push(CheckResult {
                id,
                name,
                status: Status::Skip,
                seconds: 0.0,
                details: "skipped at --level fast".into(),
            });
            continue;
        }
        checks.push(execute(id, name, &f));
    }
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    let skipped = checks.iter().filter(|c| c.status == Status::Skip).count();
    Report { level, ok: failed == 0, passed, failed, skipped, checks }
}

fn execute(id: u8, name: &'static str, f: &Check) -> CheckResult {
    let start = Instant::now();
    let mut result = match f() {
        Ok(details) => CheckResult {
            id,
            name,
            status: Status::Pass,
            seconds: 0.0,
            details,
        },
        Err(details) => CheckResult {
            id,
            name,
            status: Status::Fail,
            seconds: 0.0,
            details,
        },
    };
    result.seconds = start.elapsed().as_secs_f64();
    // Test hook: TDHO_BREAK_CHECK=<id> forces that check to report failure
    // so the failure path (exit code 1) can be exercised end to end.
    if std::env::var("TDHO_BREAK_CHECK").ok().as_deref() == Some(&id.to_string()) {
        result.status = Status::Fail;
        result.details = format!("failure injected via TDHO_BREAK_CHECK; real result: {result:?}");
    }
    result
}

fn unit() -> OscillatorConstants {
    OscillatorConstants { m0: 1.0, hbar: 1.0, omega0: 1.0 }
}

fn jump() -> FrequencyProfile {
    FrequencyProfile::SuddenJump { omega0: 1.0, omega1: 2.0 }
}

fn core<T>(r: tdho_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("unexpected numeric failure: {e}"))
}

/// Largest amplitude over the solved span, for grid sizing.
fn rho_max(ep: &EPSolution) -> Result<f64, String> {
    let (t0, t1) = ep.span();
    let mut worst = 0.0f64;
    for i in 0..=400 {
        worst = worst.max(core(ep.eval(t0 + (t1 - t0) * i as f64 / 400.0))?.0);
    }
    Ok(worst)
}

// --- check 1 ---------------------------------------------------------------

fn check_persistence() -> Result<String, String> {
    let closed = core(sudden_jump_persistence(1.0, 2.0))?;
    let exact = 2.0 * 2.0f64.sqrt() / 3.0;
    if (closed - exact).abs() > 1e-12 || (closed - PERSISTENCE).abs() > 1e-12 {
        return Err(format!("closed form {closed:.16} is not 2√2/3 = {PERSISTENCE:.16}"));
    }
    // numeric path: solve the auxiliary equation, extract the squeezing
    // parameter, map it to the persistence probability
    let ep = core(solve_ep(&jump(), &unit(), (1.0, 0.0), 10.0, 1e-10))?;
    let mut worst = 0.0f64;
    for k in 1..=20 {
        let t = 0.5 * k as f64;
        let r = core(squeeze_state(&ep, t))?.r;
        worst = worst.max((persistence_prob(r) - exact).abs());
    }
    if worst > 1e-6 {
        return Err(format!("numeric path deviates by {worst:.3e} (> 1e-6)"));
    }
    // energy ħω₀/2 cannot be measured after the jump: the smallest level of
    // the doubled-frequency trap is already ħω₁/2 = ħω₀
    let min_level = 2.0 * 0.5;
    if min_level <= 0.5 {
        return Err("post-jump spectrum unexpectedly reaches below ħω₀/2".into());
    }
    Ok(format!(
        "closed form = {closed:.16}; numeric worst deviation {worst:.1e}; \
         lowest post-jump level {min_level}ħω₀ > ħω₀/2"
    ))
}

// --- check 2 ---------------------------------------------------------------

fn check_static_reduction() -> Result<String, String> {
    // closed form at a non-unit frequency: identically unsqueezed
    let c13 = OscillatorConstants { m0: 1.0, hbar: 1.0, omega0: 1.3 };
    let cf = core(closed_form(&FrequencyProfile::Constant { omega0: 1.3 }, &c13))?;
    for k in 0..=20 {
        let s = core(squeeze_state(&cf, 0.5 * k as f64))?;
        if s.r > 1e-10 {
            return Err(format!("closed static form has r = {:e} at t = {}", s.r, s.t));
        }
    }
    let mut worst_r = 0.0f64;
    let mut worst_alpha = 0.0f64;
    for omega0 in [1.0f64, 2.0] {
        let c = OscillatorConstants { m0: 1.0, hbar: 1.0, omega0 };
        let profile = FrequencyProfile::Constant { omega0 };
        let init = (1.0 / omega0.sqrt(), 0.0);
        let ep = core(solve_ep(&profile, &c, init, 10.0, 1e-10))?;
        for k in 1..=40 {
            let t = 0.25 * k as f64;
            let s = core(squeeze_state(&ep, t))?;
            worst_r = worst_r.max(s.r);
            if omega0 == 1.0 && s.phi.is_some() {
                // the fixed point is exact in floating point here, so the
                // phase must be reported as undefined
                return Err(format!("phase defined at r = {} (t = {t})", s.r));
            }
        }
        for n in 0..=5u32 {
            for k in 1..=5 {
                let t = 2.0 * k as f64;
                let alpha = core(alpha_n(n, &ep, t))?;
                worst_alpha = worst_alpha.max((alpha + (n as f64 + 0.5) * omega0 * t).abs());
            }
        }
    }
    if worst_r > 1e-10 {
        return Err(format!("static r deviates by {worst_r:.3e} (> 1e-10)"));
    }
    if worst_alpha > 1e-9 {
        return Err(format!("phase deviates from -(n+1/2)ω₀t by {worst_alpha:.3e} (> 1e-9)"));
    }
    // full wave functions against the closed static solution, two ħ values
    let mut worst_psi = 0.0f64;
    for hbar in [1.0f64, 2.0] {
        let c = OscillatorConstants { m0: 1.0, hbar, omega0: 1.0 };
        let ep = core(solve_ep(&FrequencyProfile::Constant { omega0: 1.0 }, &c, (1.0, 0.0), 10.0, 1e-10))?;
        for n in 0..=5u32 {
            let sigma = ((n as f64 + 0.5) * hbar).sqrt();
            let grid = core(SpatialGrid::new(-8.0 * sigma, 8.0 * sigma, 1024))?;
            for t in [1.0, 7.3] {
                let dynamic = core(psi_n(n, &grid, &ep, t))?;
                let fixed = core(psi_n_static(n, &grid, t, &c))?;
                let peak = fixed.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
                let diff = dynamic
                    .values
                    .iter()
                    .zip(&fixed.values)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                worst_psi = worst_psi.max(diff / peak);
            }
        }
    }
    if worst_psi > 1e-10 {
        return Err(format!("wave functions deviate by {worst_psi:.3e} of peak (> 1e-10)"));
    }
    Ok(format!(
        "worst r {worst_r:.1e}, phase undefined at the exact fixed point, \
         worst phase deviation {worst_alpha:.1e}, worst wave-function deviation {worst_psi:.1e} of peak"
    ))
}

// --- check 3 ---------------------------------------------------------------

fn check_invariant_constancy() -> Result<String, String> {
    let cases: [(&str, FrequencyProfile, f64); 3] = [
        ("constant", FrequencyProfile::Constant { omega0: 1.0 }, 10.0),
        ("jump", jump(), 10.0),
        ("trap", figure_trap(), 15.0),
    ];
    let mut worst = 0.0f64;
    for (name, profile, t_end) in cases {
        let ep = core(solve_ep(&profile, &unit(), (1.0, 0.0), t_end, 1e-10))?;
        let rmax = rho_max(&ep)?;
        for n in [0u32, 1, 3] {
            // 8192 samples keep the 4th-order stencil error near 1e-8 even
            // for n = 3; the default 2048-point grid would sit at ~1.6e-5
            let half = 10.0 * rmax * ((n + 1) as f64).sqrt();
            let grid = core(SpatialGrid::new(-half, half, 8192))?;
            let want = n as f64 + 0.5;
            for k in 1..=10 {
                let t = t_end * k as f64 / 10.0;
                let field = core(psi_n(n, &grid, &ep, t))?;
                let value = core(expectation(&field, &field, Observable::Invariant, &ep))?;
                let dev = (value.re - want).abs().max(value.im.abs());
                worst = worst.max(dev);
                if dev > 1e-6 {
                    return Err(format!(
                        "⟨invariant⟩ = {value} instead of {want} ({name}, n = {n}, t = {t})"
                    ));
                }
            }
        }
    }
    Ok(format!(
        "ħ(n+1/2) reproduced at 10 checkpoints × three profiles × n ∈ {{0,1,3}}; \
         worst deviation {worst:.1e} (bound 1e-6)"
    ))
}

// --- check 4 ---------------------------------------------------------------

fn check_method_triangle() -> Result<String, String> {
    let mut worst = 0.0f64;
    for (name, profile, t_end) in
        [("jump", jump(), 10.0), ("trap", figure_trap(), 15.0)]
    {
        let direct = core(solve_ep(&profile, &unit(), (1.0, 0.0), t_end, 1e-10))?;
        let pinney = core(solve_ep_pinney(&profile, &unit(), (1.0, 0.0), t_end, 1e-10))?;
        let closed = core(closed_form(&profile, &unit()))?;
        for i in 0..=600 {
            let t = t_end * i as f64 / 600.0;
            let a = core(direct.eval(t))?.0;
            let b = core(pinney.eval(t))?.0;
            let c = core(closed.eval(t))?.0;
            let spread = (a - b).abs().max((a - c).abs()).max((b - c).abs()) / a;
            worst = worst.max(spread);
            if spread > 1e-6 {
                return Err(format!(
                    "methods disagree by {spread:.3e} relative at t = {t} ({name})"
                ));
            }
        }
    }
    Ok(format!(
        "direct, mode-composed, and closed-form amplitudes agree; \
         worst relative spread {worst:.1e} (bound 1e-6)"
    ))
}

// --- check 5 ---------------------------------------------------------------

fn check_oracle() -> Result<String, String> {
    let profiles = [
        ("constant", FrequencyProfile::Constant { omega0: 1.0 }),
        ("jump", jump()),
        ("trap", figure_trap()),
    ];
    let t_end = 5.0;
    let checkpoints = [1.0, 2.0, 3.0, 4.0, 5.0];
    let mut summary = Vec::new();
    for (name, profile) in &profiles {
        let ep = core(solve_ep(profile, &unit(), (1.0, 0.0), t_end, 1e-10))?;
        let half = 10.0 * rho_max(&ep)?;
        let mut w_max = 0.0f64;
        for i in 0..=2048 {
            w_max = w_max.max(core(profile.omega_at(t_end * i as f64 / 2048.0))?);
        }
        let dt0 = 0.9 * 0.01 / w_max;
        let mut deficits = Vec::new();
        for (count, divide) in [(1024usize, 1.0), (2047, 2.0)] {
            let grid = core(SpatialGrid::new(-half, half, count))?;
            let initial = core(psi_n(0, &grid, &ep, 0.0))?;
            let config = PropagationConfig {
                grid,
                dt: dt0 / divide,
                t_end,
                profile: profile.clone(),
                constants: unit(),
            };
            let snaps = core(propagate_snapshots(&initial, &config, &checkpoints))?;
            let mut worst = 0.0f64;
            for snap in &snaps {
                let lr = core(psi_n(0, &grid, &ep, snap.t))?;
                let fidelity = core(overlap(&lr, snap))?.norm();
                if fidelity < 0.999 {
                    return Err(format!(
                        "|⟨ψ_grid|Ψ₀⟩| = {fidelity} < 0.999 ({name}, N = {count}, t = {})",
                        snap.t
                    ));
                }
                worst = worst.max(1.0 - fidelity);
            }
            deficits.push(worst);
            if *name == "jump" && count == 1024 {
                // the grid propagation must reproduce the closed persistence
                // probability, and time-independently so
                let post = OscillatorConstants { m0: 1.0, hbar: 1.0, omega0: 2.0 };
                let ground = core(psi_n_static(0, &grid, 0.0, &post))?;
                for snap in &snaps {
                    let p = core(overlap(&ground, snap))?.norm_sqr();
                    if (p - PERSISTENCE).abs() > 1e-3 {
                        return Err(format!(
                            "ground overlap² = {p} vs {PERSISTENCE} at t = {}",
                            snap.t
                        ));
                    }
                }
            }
        }
        if deficits[1] >= deficits[0] {
            return Err(format!(
                "no monotone improvement under refinement: {:.3e} -> {:.3e} ({name})",
                deficits[0], deficits[1]
            ));
        }
        summary.push(format!("{name} {:.1e}->{:.1e}", deficits[0], deficits[1]));
    }
    Ok(format!(
        "fidelity ≥ 0.999 at 5 checkpoints per profile; deficits shrink under \
         dt,dx halving ({}); jump ground overlap² within 1e-3 of 2√2/3",
        summary.join(", ")
    ))
}

// --- check 6 ---------------------------------------------------------------

fn check_probability_completeness() -> Result<String, String> {
    let mut worst = 0.0f64;
    for r in [0.1f64, 0.5, 1.0, 2.0] {
        let mut sum = 0.0;
        let mut nu = 0;
        loop {
            let p = core(transition_prob(nu, r))?;
            sum += p;
            if (nu > 0 && p < 1e-14) || nu > 2000 {
                break;
            }
            nu += 2;
        }
        worst = worst.max((sum - 1.0).abs());
        if (sum - 1.0).abs() > 1e-10 {
            return Err(format!("Σ P(0→ν) = {sum} at r = {r} (off by > 1e-10)"));
        }
    }
    for k in 0..=30 {
        let r = 0.1 * k as f64;
        if persistence_prob(r) + excitation_prob(r) != 1.0 {
            return Err(format!("persistence + excitation ≠ 1 exactly at r = {r}"));
        }
    }
    Ok(format!(
        "even-transition sums reach 1 within {worst:.1e} (bound 1e-10) for \
         r ∈ {{0.1, 0.5, 1, 2}}; persistence + excitation = 1 exactly"
    ))
}

// --- check 7 ---------------------------------------------------------------

fn check_uncertainty_structure() -> Result<String, String> {
    let mut worst_floor = f64::INFINITY;
    let mut worst_ident = 0.0f64;
    for hbar in [1.0f64, 2.0] {
        let c = OscillatorConstants { m0: 1.0, hbar, omega0: 1.0 };
        for (profile, t_end) in [(jump(), 10.0), (figure_trap(), 15.0)] {
            let ep = core(solve_ep(&profile, &c, (1.0, 0.0), t_end, 1e-10))?;
            for n in [0u32, 1, 4] {
                let floor = (hbar * (n as f64 + 0.5)).powi(2);
                for i in 0..=80 {
                    let t = t_end * i as f64 / 80.0;
                    let s = core(squeeze_state(&ep, t))?;
                    let product = variance_x(n, &s, &c) * variance_p(n, &s, &c);
                    worst_floor = worst_floor.min(product - floor);
                    if product < floor - 1e-12 {
                        return Err(format!(
                            "σ²ₓσ²ₚ = {product} < {floor} at t = {t} (n = {n}, ħ = {hbar})"
                        ));
                    }
                    let (rho, _) = core(ep.eval(t))?;
                    let ident = (variance_x(n, &s, &c) / ((n as f64 + 0.5) * hbar * rho * rho)
                        - 1.0)
                        .abs();
                    worst_ident = worst_ident.max(ident);
                    if ident > 1e-9 {
                        return Err(format!(
                            "σ²ₓ ≠ (n+1/2)ħρ² by {ident:.3e} relative at t = {t}"
                        ));
                    }
                }
            }
        }
    }
    // at zero squeezing phase the normalized variances are e^{±2r}
    let cf = core(closed_form(&jump(), &unit()))?;
    let s = core(squeeze_state(&cf, 0.0))?;
    let e2r = (2.0 * s.r).exp();
    for n in [0u32, 3] {
        let scale = n as f64 + 0.5;
        let nx = variance_x(n, &s, &unit()) * s.omega / scale;
        let np = variance_p(n, &s, &unit()) / (s.omega * scale);
        if (nx - e2r).abs() > 1e-9 || (np - 1.0 / e2r).abs() > 1e-9 {
            return Err(format!(
                "variances at zero phase are {nx}/{np} instead of e^(±2r) = {e2r}/{}",
                1.0 / e2r
            ));
        }
    }
    Ok(format!(
        "product stays ≥ ħ²(n+1/2)² (smallest head-room {worst_floor:.1e}); \
         σ²ₓ = (n+1/2)ħρ² within {worst_ident:.1e}; zero-phase variances match e^(±2r)"
    ))
}

// --- check 8 ---------------------------------------------------------------

fn check_figures() -> Result<String, String> {
    let fig1 = figure_table(FigureId::Fig1).map_err(|e| e.to_string())?;
    let ratios = fig1.column("omega_ratio");
    let persist = fig1.column("p_persist");
    let at = |x: f64| -> Result<f64, String> {
        ratios
            .iter()
            .position(|&v| v == x)
            .map(|i| persist[i])
            .ok_or_else(|| format!("no row at ratio {x}"))
    };
    if (at(2.0)? - 0.94281).abs() > 1e-5 {
        return Err(format!("persistence at ratio 2 is {}, expected 0.94281", at(2.0)?));
    }
    if at(1.0)? != 1.0 {
        return Err(format!("persistence at ratio 1 is {}, expected exactly 1", at(1.0)?));
    }
    let fig2 = figure_table(FigureId::Fig2).map_err(|e| e.to_string())?;
    let r = fig2.column("r");
    if r[0].abs() > 1e-12 {
        return Err(format!("squeezing at t = 0 is {} (> 1e-12)", r[0]));
    }
    let r_max = r.iter().fold(0.0f64, |a, &v| a.max(v));
    if !(r_max > 0.0 && r_max < 2.0) {
        return Err(format!("squeezing curve not a bounded oscillation (max {r_max})"));
    }
    let fig4a = figure_table(FigureId::Fig4a).map_err(|e| e.to_string())?;
    let fig4b = figure_table(FigureId::Fig4b).map_err(|e| e.to_string())?;
    let pp = fig4a.column("p_persist");
    let pe = fig4b.column("p_excite");
    for (i, (a, b)) in pp.iter().zip(&pe).enumerate() {
        if (a + b - 1.0).abs() > 1e-12 {
            return Err(format!("row {i}: persistence + excitation = {} ≠ 1", a + b));
        }
    }
    let argmax = |v: &[f64]| {
        v.iter().enumerate().fold((0usize, f64::MIN), |best, (i, &x)| {
            if x > best.1 {
                (i, x)
            } else {
                best
            }
        })
    };
    let (i_r, _) = argmax(&r);
    let (i_e, _) = argmax(&pe);
    if i_r.abs_diff(i_e) > 1 {
        return Err(format!(
            "excitation probability peaks at sample {i_e} but squeezing at {i_r}"
        ));
    }
    Ok(format!(
        "spot values reproduced (ratio 2 → {:.5}, ratio 1 → 1, r(0) = {:.1e}); \
         probability rows sum to 1; excitation peaks with squeezing (samples {i_e}/{i_r})",
        at(2.0)?,
        r[0]
    ))
}

// --- check 9 ---------------------------------------------------------------

fn check_mathieu() -> Result<String, String> {
    // parameters of the published trap figure, then random ones
    let (beta, gamma, tau, w0) = (1.0f64, 0.5, 3.0, 1.0);
    let denom = PI * PI * (beta + gamma);
    let mut pairs = vec![(beta * w0 * w0 * tau * tau / denom, -gamma * w0 * w0 * tau * tau / (2.0 * denom))];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10 {
        pairs.push((rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)));
    }
    let mut worst = 0.0f64;
    let mut fewest = usize::MAX;
    for (a, q) in pairs {
        let params = core(MathieuParams::new(a, q))?;
        let mut checked = 0usize;
        for i in 0..=200 {
            let x = 20.0 * i as f64 / 200.0;
            let (even, d_even) = core(mathieu_even(params, x))?;
            let (odd, d_odd) = core(mathieu_odd(params, x))?;
            let magnitude =
                even.abs().max(d_even.abs()).max(odd.abs()).max(d_odd.abs());
            if magnitude > 1e3 {
                // past this size the Wronskian subtraction cancels more than
                // the bound can see; the identity is checked while the
                // solutions remain representable
                break;
            }
            checked += 1;
            let dev = (even * d_odd - odd * d_even - 1.0).abs();
            worst = worst.max(dev);
            if dev > 1e-9 {
                return Err(format!(
                    "Wronskian off by {dev:.3e} at x = {x} (a = {a}, q = {q})"
                ));
            }
        }
        fewest = fewest.min(checked);
        if checked < 5 {
            return Err(format!("only {checked} checkable points for a = {a}, q = {q}"));
        }
    }
    // zero coupling must reduce to plain trigonometry
    let params = core(MathieuParams::new(2.25, 0.0))?;
    let mut worst_trig = 0.0f64;
    for i in 0..=100 {
        let x = 10.0 * i as f64 / 100.0;
        let (even, _) = core(mathieu_even(params, x))?;
        let (odd, _) = core(mathieu_odd(params, x))?;
        worst_trig = worst_trig
            .max((even - (1.5 * x).cos()).abs())
            .max((odd - (1.5 * x).sin() / 1.5).abs());
        if worst_trig > 1e-10 {
            return Err(format!("q = 0 does not reduce to cos/sin (off by {worst_trig:.3e})"));
        }
    }
    Ok(format!(
        "Wronskian = 1 within {worst:.1e} for the trap parameters and 10 random pairs \
         (≥ {fewest} points each); q = 0 reduces to trigonometry within {worst_trig:.1e}"
    ))
}
