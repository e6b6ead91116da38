//! Frequency profiles ω(t) driving the oscillator, constructible from JSON
//! with a `kind` discriminator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oscillator constants: mass m₀, action quantum ħ, and the reference
/// angular frequency ω₀ that static formulas are anchored to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorConstants {
    #[serde(default = "one")]
    pub m0: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub omega0: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for OscillatorConstants {
    fn default() -> Self {
        Self { m0: 1.0, hbar: 1.0, omega0: 1.0 }
    }
}

impl OscillatorConstants {
    pub fn new(m0: f64, hbar: f64, omega0: f64) -> Result<Self> {
        let c = Self { m0, hbar, omega0 };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("m0", self.m0), ("hbar", self.hbar), ("omega0", self.omega0)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("{name} must be strictly positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Time dependence of the angular frequency.
///
/// All variants keep ω(t) > 0 on their domain. `SuddenJump` switches from
/// `omega0` to `omega1` at t = 0, with ω(0) = `omega1`. `PaulTrap` is the
/// periodic modulation ω(t) = ω₀ √((β + γ cos(2πt/τ))/(β + γ)); its phase is
/// reduced modulo τ before evaluation so the periodicity is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrequencyProfile {
    #[serde(alias = "Constant")]
    Constant { omega0: f64 },
    #[serde(alias = "SuddenJump")]
    SuddenJump { omega0: f64, omega1: f64 },
    #[serde(alias = "PaulTrap")]
    PaulTrap { omega0: f64, beta: f64, gamma: f64, tau: f64 },
    #[serde(alias = "ParametricResonance")]
    ParametricResonance {
        #[serde(rename = "Omega0")]
        omega0: f64,
        h: f64,
        eps: f64,
    },
    #[serde(alias = "Tabulated")]
    Tabulated { samples: Vec<(f64, f64)> },
}

impl FrequencyProfile {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must be strictly positive, got {v}")))
            }
        };
        match self {
            Self::Constant { omega0 } => positive("omega0", *omega0),
            Self::SuddenJump { omega0, omega1 } => {
                positive("omega0", *omega0)?;
                positive("omega1", *omega1)
            }
            Self::PaulTrap { omega0, beta, gamma, tau } => {
                positive("omega0", *omega0)?;
                positive("gamma", *gamma)?;
                positive("tau", *tau)?;
                if !(beta > gamma) {
                    return Err(Error::Parameter(format!(
                        "require beta > gamma > 0 so that omega stays real, got beta = {beta}, gamma = {gamma}"
                    )));
                }
                Ok(())
            }
            Self::ParametricResonance { omega0, h, eps } => {
                positive("Omega0", *omega0)?;
                if !(*h > 0.0 && *h < 1.0) {
                    return Err(Error::Parameter(format!(
                        "modulation depth h must lie in (0, 1), got {h}"
                    )));
                }
                if !(eps.abs() < h * omega0 / 2.0) {
                    return Err(Error::Parameter(format!(
                        "detuning eps must satisfy |eps| < h*Omega0/2, got {eps}"
                    )));
                }
                Ok(())
            }
            Self::Tabulated { samples } => {
                if samples.len() < 2 {
                    return Err(Error::Parameter("tabulated profile needs at least 2 samples".into()));
                }
                for w in samples.windows(2) {
                    if !(w[1].0 > w[0].0) {
                        return Err(Error::Parameter(format!(
                            "tabulated times must be strictly increasing ({} then {})",
                            w[0].0, w[1].0
                        )));
                    }
                }
                for &(t, w) in samples {
                    if !t.is_finite() || !(w > 0.0 && w.is_finite()) {
                        return Err(Error::Parameter(format!(
                            "tabulated sample ({t}, {w}) must be finite with omega > 0"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// ω(t).
    pub fn omega_at(&self, t: f64) -> Result<f64> {
        match self {
            Self::Constant { omega0 } => Ok(*omega0),
            Self::SuddenJump { omega0, omega1 } => Ok(if t < 0.0 { *omega0 } else { *omega1 }),
            // Deriving ω from the root-free ω² keeps the two accessors
            // consistent to the last bit modulo one sqrt/square round trip.
            Self::PaulTrap { .. } | Self::ParametricResonance { .. } => {
                Ok(self.omega_sq_at(t)?.sqrt())
            }
            Self::Tabulated { samples } => pchip_eval(samples, t),
        }
    }

    /// ω(t)², computed without the square root where the profile is defined
    /// through its square.
    pub fn omega_sq_at(&self, t: f64) -> Result<f64> {
        match self {
            Self::Constant { omega0 } => Ok(omega0 * omega0),
            Self::SuddenJump { omega0, omega1 } => {
                let w = if t < 0.0 { *omega0 } else { *omega1 };
                Ok(w * w)
            }
            Self::PaulTrap { omega0, beta, gamma, tau } => {
                // reduce the phase first: exact periodicity, and no precision
                // loss in cos for large t
                let phase = t.rem_euclid(*tau);
                let c = (2.0 * std::f64::consts::PI * (phase / tau)).cos();
                Ok(omega0 * omega0 * ((beta + gamma * c) / (beta + gamma)))
            }
            Self::ParametricResonance { omega0, h, eps } => {
                Ok(omega0 * omega0 * (1.0 + h * ((2.0 * omega0 + eps) * t).cos()))
            }
            Self::Tabulated { samples } => {
                let w = pchip_eval(samples, t)?;
                Ok(w * w)
            }
        }
    }

    /// First and last valid time for `Tabulated`; unbounded otherwise.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Self::Tabulated { samples } => (samples[0].0, samples[samples.len() - 1].0),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Times where ω(t) is not smooth; integrators must not step across them.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Self::SuddenJump { .. } => vec![0.0],
            // the monotone cubic is C¹ but not C² at the knots
            Self::Tabulated { samples } => {
                samples[1..samples.len() - 1].iter().map(|&(t, _)| t).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Largest ω over `[t0, t1]`, estimated from a dense uniform sweep. Used
    /// to pick integrator step caps; the sweep resolution (513 points) is far
    /// finer than the oscillation scale of every supported profile.
    pub fn max_omega_on(&self, t0: f64, t1: f64) -> Result<f64> {
        let mut w_max = self.omega_at(t0)?;
        for i in 1..=512 {
            let t = t0 + (t1 - t0) * (i as f64 / 512.0);
            w_max = w_max.max(self.omega_at(t)?);
        }
        Ok(w_max)
    }
}

/// Monotone cubic (Fritsch–Carlson) interpolation: C¹, no overshoot beyond
/// the data range, so positive samples give a positive interpolant.
fn pchip_eval(samples: &[(f64, f64)], t: f64) -> Result<f64> {
    let n = samples.len();
    let (t0, t1) = (samples[0].0, samples[n - 1].0);
    if !(t >= t0 && t <= t1) {
        return Err(Error::Domain(format!(
            "time {t} outside tabulated domain [{t0}, {t1}]"
        )));
    }
    // interval index: last knot with knot_time <= t (clamped for t == t1)
    let k = samples.partition_point(|&(ti, _)| ti <= t).saturating_sub(1).min(n - 2);

    // secant slopes
    let d = |i: usize| {
        let (ta, wa) = samples[i];
        let (tb, wb) = samples[i + 1];
        (wb - wa) / (tb - ta)
    };
    // tangent at knot i (Fritsch–Carlson limited)
    let tangent = |i: usize| -> f64 {
        let m = if i == 0 {
            d(0)
        } else if i == n - 1 {
            d(n - 2)
        } else {
            let (dl, dr) = (d(i - 1), d(i));
            if dl * dr <= 0.0 {
                0.0
            } else {
                0.5 * (dl + dr)
            }
        };
        // clamp into the monotonicity region of the adjacent secants
        let mut m = m;
        if i > 0 {
            let dl = d(i - 1);
            if dl == 0.0 {
                m = 0.0;
            } else if (m / dl).abs() > 3.0 && m * dl > 0.0 {
                m = 3.0 * dl;
            }
        }
        if i < n - 1 {
            let dr = d(i);
            if dr == 0.0 {
                m = 0.0;
            } else if (m / dr).abs() > 3.0 && m * dr > 0.0 {
                m = 3.0 * dr;
            }
        }
        m
    };

    let (ta, wa) = samples[k];
    let (tb, wb) = samples[k + 1];
    let h = tb - ta;
    let (ma, mb) = (tangent(k), tangent(k + 1));
    let s = (t - ta) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    Ok(h00 * wa + h10 * h * ma + h01 * wb + h11 * h * mb)
}
