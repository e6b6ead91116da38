//! Implementations of the data-producing subcommands. Each returns the
//! path(s) written so the caller can report them.

use std::path::{Path, PathBuf};

use tdho_core::ermakov::{closed_form, solve_ep, solve_ep_pinney, EPSolution};
use tdho_core::profiles::{FrequencyProfile, OscillatorConstants};
use tdho_core::squeezing::{
    excitation_prob, persistence_prob, squeeze_state, sudden_jump_persistence, transition_prob,
    variance_p, variance_x,
};
use tdho_core::wavefunction::{alpha_n, psi_n, SpatialGrid};

use crate::config::{Method, RunConfig};
use crate::csvout::Table;
use crate::error::Result;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Figure parameters used throughout the published data set.
pub fn figure_trap() -> FrequencyProfile {
    FrequencyProfile::PaulTrap { omega0: 1.0, beta: 1.0, gamma: 0.5, tau: 3.0 }
}

/// Build the auxiliary-amplitude solution selected by the config.
pub fn build_solution(cfg: &RunConfig) -> Result<EPSolution> {
    let init = EPSolution::default_init(&cfg.profile, &cfg.constants)?;
    let ep = match cfg.method {
        Method::Direct => solve_ep(&cfg.profile, &cfg.constants, init, cfg.t_end, cfg.tol)?,
        Method::Pinney => {
            solve_ep_pinney(&cfg.profile, &cfg.constants, init, cfg.t_end, cfg.tol)?
        }
        Method::Closed => closed_form(&cfg.profile, &cfg.constants)?,
    };
    Ok(ep)
}

fn base_meta(table: &mut Table, cfg: &RunConfig, command: &str) {
    table.meta("version", VERSION);
    table.meta("command", command);
    table.meta("profile", serde_json::to_string(&cfg.profile).expect("profile serializes"));
    table.meta(
        "constants",
        serde_json::to_string(&cfg.constants).expect("constants serialize"),
    );
    table.meta("method", cfg.method.as_str());
}

fn out_path(cfg: &RunConfig, out_dir: &Path, default_name: &str) -> PathBuf {
    out_dir.join(cfg.output.as_deref().unwrap_or(default_name))
}

/// Amplitude series: t, ρ, ρ̇.
pub fn cmd_rho(cfg: &RunConfig, out_dir: &Path) -> Result<PathBuf> {
    let ep = build_solution(cfg)?;
    let mut table = Table::new(vec!["t", "rho", "rhodot"]);
    base_meta(&mut table, cfg, "rho");
    for t in cfg.times() {
        let (rho, rhodot) = ep.eval(t)?;
        table.push(vec![Some(t), Some(rho), Some(rhodot)]);
    }
    let path = out_path(cfg, out_dir, "rho.csv");
    table.write(&path)?;
    Ok(path)
}

/// Squeezing series: t, r, φ (empty where undefined), λ.
pub fn cmd_squeeze(cfg: &RunConfig, out_dir: &Path) -> Result<PathBuf> {
    let ep = build_solution(cfg)?;
    let mut table = Table::new(vec!["t", "r", "phi", "lambda"]);
    base_meta(&mut table, cfg, "squeeze");
    for t in cfg.times() {
        let s = squeeze_state(&ep, t)?;
        table.push(vec![Some(t), Some(s.r), s.phi, Some(s.lambda)]);
    }
    let path = out_path(cfg, out_dir, "squeeze.csv");
    table.write(&path)?;
    Ok(path)
}

/// Variance series for level n: t, σ²ₓ, σ²ₚ, their product.
pub fn cmd_variances(cfg: &RunConfig, out_dir: &Path) -> Result<PathBuf> {
    let ep = build_solution(cfg)?;
    let mut table = Table::new(vec!["t", "var_x", "var_p", "product"]);
    base_meta(&mut table, cfg, "variances");
    table.meta("n", cfg.n.to_string());
    for t in cfg.times() {
        let s = squeeze_state(&ep, t)?;
        let vx = variance_x(cfg.n, &s, &cfg.constants);
        let vp = variance_p(cfg.n, &s, &cfg.constants);
        table.push(vec![Some(t), Some(vx), Some(vp), Some(vx * vp)]);
    }
    let path = out_path(cfg, out_dir, "variances.csv");
    table.write(&path)?;
    Ok(path)
}

/// Probability series: persistence, excitation, and the even transition
/// probabilities up to nu_max.
pub fn cmd_probabilities(cfg: &RunConfig, out_dir: &Path) -> Result<PathBuf> {
    let ep = build_solution(cfg)?;
    let orders: Vec<u32> = (0..=cfg.nu_max).step_by(2).collect();
    let mut columns: Vec<String> =
        ["t", "r", "p_persist", "p_excite"].map(String::from).to_vec();
    columns.extend(orders.iter().map(|nu| format!("p{nu}")));
    let mut table = Table::new(columns);
    base_meta(&mut table, cfg, "probabilities");
    table.meta("nu_max", cfg.nu_max.to_string());
    for t in cfg.times() {
        let s = squeeze_state(&ep, t)?;
        let mut row = vec![
            Some(t),
            Some(s.r),
            Some(persistence_prob(s.r)),
            Some(excitation_prob(s.r)),
        ];
        for &nu in &orders {
            row.push(Some(transition_prob(nu, s.r)?));
        }
        table.push(row);
    }
    let path = out_path(cfg, out_dir, "probabilities.csv");
    table.write(&path)?;
    Ok(path)
}

/// Wave function of level n at one instant: x, Re Ψ, Im Ψ, |Ψ|².
pub fn cmd_wavefunction(cfg: &RunConfig, out_dir: &Path) -> Result<PathBuf> {
    let ep = build_solution(cfg)?;
    let time = cfg.time.unwrap_or(cfg.t_end);
    let grid = match cfg.grid {
        Some(grid) => grid,
        None => {
            let rho_max = (0..=400)
                .map(|i| ep.rho(cfg.t_end * i as f64 / 400.0))
                .collect::<tdho_core::Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0f64, f64::max);
            SpatialGrid::auto(cfg.n, cfg.constants.hbar, rho_max)?
        }
    };
    let field = psi_n(cfg.n, &grid, &ep, time)?;
    let (rho, rhodot) = ep.eval(time)?;
    let mut table = Table::new(vec!["x", "re", "im", "abs2"]);
    base_meta(&mut table, cfg, "wavefunction");
    table.meta("n", cfg.n.to_string());
    table.meta("time", format!("{time}"));
    table.meta("rho", format!("{rho}"));
    table.meta("rhodot", format!("{rhodot}"));
    table.meta("alpha", format!("{}", alpha_n(cfg.n, &ep, time)?));
    for (i, v) in field.values.iter().enumerate() {
        table.push(vec![Some(grid.point(i)), Some(v.re), Some(v.im), Some(v.norm_sqr())]);
    }
    let path = out_path(cfg, out_dir, "wavefunction.csv");
    table.write(&path)?;
    Ok(path)
}

/// Identifiers of the published figures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4a,
        FigureId::Fig4b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
        }
    }
}

/// Data behind one figure, kept in memory so the validation suite can check
/// the exact rows the figures command writes.
pub fn figure_table(which: FigureId) -> Result<Table> {
    let constants = OscillatorConstants::default();
    let mut table;
    match which {
        FigureId::Fig1 => {
            // log-sampled ratio axis; the caption gives no numeric range, so
            // [0.01, 10] is recorded in the header, with the two exactly
            // representable reference points appended
            let mut ratios: Vec<f64> =
                (0..400).map(|i| 10f64.powf(-2.0 + 3.0 * i as f64 / 399.0)).collect();
            ratios.push(1.0);
            ratios.push(2.0);
            ratios.sort_by(f64::total_cmp);
            ratios.dedup();
            table = Table::new(vec!["omega_ratio", "p_persist"]);
            table.meta("version", VERSION);
            table.meta("figure", "fig1");
            table.meta(
                "description",
                "ground-state persistence probability after a sudden frequency jump",
            );
            table.meta(
                "profile",
                r#"{"kind":"sudden_jump","omega0":1.0,"omega1":omega_ratio}"#,
            );
            table.meta(
                "constants",
                serde_json::to_string(&constants).expect("constants serialize"),
            );
            table.meta("axis", "omega_ratio logarithmic in [0.01, 10] plus exact 1 and 2");
            for ratio in ratios {
                table.push(vec![Some(ratio), Some(sudden_jump_persistence(1.0, ratio)?)]);
            }
        }
        _ => {
            let profile = figure_trap();
            let tau = 3.0;
            let ep = closed_form(&profile, &constants)?;
            let (columns, name, description): (Vec<&'static str>, &str, &str) = match which {
                FigureId::Fig2 => {
                    (vec!["t_over_tau", "r"], "fig2", "squeezing parameter in the periodic trap")
                }
                FigureId::Fig3a => (
                    vec!["t_over_tau", "var_x_norm"],
                    "fig3a",
                    "position variance over its static value",
                ),
                FigureId::Fig3b => (
                    vec!["t_over_tau", "var_p_norm"],
                    "fig3b",
                    "momentum variance over its static value",
                ),
                FigureId::Fig4a => (
                    vec!["t_over_tau", "p_persist"],
                    "fig4a",
                    "ground-state persistence probability in the periodic trap",
                ),
                FigureId::Fig4b => (
                    vec!["t_over_tau", "p_excite"],
                    "fig4b",
                    "excitation probability in the periodic trap",
                ),
                FigureId::Fig1 => unreachable!(),
            };
            table = Table::new(columns);
            table.meta("version", VERSION);
            table.meta("figure", name);
            table.meta("description", description);
            table.meta("profile", serde_json::to_string(&profile).expect("profile serializes"));
            table.meta(
                "constants",
                serde_json::to_string(&constants).expect("constants serialize"),
            );
            table.meta("method", "closed");
            // static references for the normalized variances at n = 0
            let var_x0 = 0.5 * constants.hbar / (constants.m0 * constants.omega0);
            let var_p0 = 0.5 * constants.hbar * constants.m0 * constants.omega0;
            for i in 0..=500 {
                let x = 5.0 * i as f64 / 500.0;
                let t = x * tau;
                let s = squeeze_state(&ep, t)?;
                let value = match which {
                    FigureId::Fig2 => s.r,
                    FigureId::Fig3a => variance_x(0, &s, &constants) / var_x0,
                    FigureId::Fig3b => variance_p(0, &s, &constants) / var_p0,
                    FigureId::Fig4a => persistence_prob(s.r),
                    FigureId::Fig4b => excitation_prob(s.r),
                    FigureId::Fig1 => unreachable!(),
                };
                table.push(vec![Some(x), Some(value)]);
            }
        }
    }
    Ok(table)
}

/// Write the requested figure (or all six) into `out_dir`.
pub fn cmd_figures(which: Option<FigureId>, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let ids: Vec<FigureId> = match which {
        Some(id) => vec![id],
        None => FigureId::ALL.to_vec(),
    };
    let mut written = Vec::new();
    for id in ids {
        let table = figure_table(id)?;
        let path = out_dir.join(format!("{}.csv", id.as_str()));
        table.write(&path)?;
        written.push(path);
    }
    Ok(written)
}
