//! Fundamental even/odd solutions of the Mathieu equation
//! y″ + (a − 2q·cos 2x)y = 0, normalized by their initial conditions:
//! even (1, 0), odd (0, 1).
//!
//! The solutions come from high-accuracy adaptive integration of the ODE —
//! not from characteristic-value expansions — and are cached per (a, q) so
//! repeated evaluations along a trajectory cost one integration.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use crate::error::{Error, Result};
use crate::ode::{Dopri5, Trajectory};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MathieuParams {
    pub a: f64,
    pub q: f64,
}

impl MathieuParams {
    pub fn new(a: f64, q: f64) -> Result<Self> {
        if !a.is_finite() || !q.is_finite() {
            return Err(Error::Parameter(format!("Mathieu parameters must be finite, got a = {a}, q = {q}")));
        }
        Ok(Self { a, q })
    }
}

struct Table {
    span: f64,
    traj: Trajectory<4>, // [even, even', odd, odd']
}

// keyed by the bit patterns of (a, q)
type TableCache = Mutex<HashMap<(u64, u64), Arc<Table>>>;

static CACHE: LazyLock<TableCache> = LazyLock::new(|| Mutex::new(HashMap::new()));

const BASE_SPAN: f64 = 20.0;

fn integrate(a: f64, q: f64, span: f64) -> Result<Table> {
    let f = move |x: f64, y: &[f64; 4]| {
        let c = a - 2.0 * q * (2.0 * x).cos();
        [y[1], -c * y[0], y[3], -c * y[2]]
    };
    let traj = Dopri5 { rtol: 1e-12, atol: 1e-14, ..Dopri5::default() }
        .solve(f, 0.0, span, [1.0, 0.0, 0.0, 1.0], &[])?;
    Ok(Table { span, traj })
}

fn table_for(params: MathieuParams, x_abs: f64) -> Result<Arc<Table>> {
    let key = (params.a.to_bits(), params.q.to_bits());
    let mut cache = CACHE.lock().unwrap();
    if let Some(t) = cache.get(&key) {
        if x_abs <= t.span {
            return Ok(Arc::clone(t));
        }
    }
    let span = BASE_SPAN.max(1.25 * x_abs);
    let t = Arc::new(integrate(params.a, params.q, span)?);
    cache.insert(key, Arc::clone(&t));
    Ok(t)
}

fn eval(params: MathieuParams, x: f64) -> Result<[f64; 4]> {
    if !x.is_finite() {
        return Err(Error::Parameter(format!("Mathieu argument must be finite, got {x}")));
    }
    let t = table_for(params, x.abs())?;
    t.traj.eval(x.abs())
}

/// Even fundamental solution and its derivative at `x`: y(0) = 1, y′(0) = 0.
pub fn mathieu_even(params: MathieuParams, x: f64) -> Result<(f64, f64)> {
    let [c, cd, _, _] = eval(params, x)?;
    // even function: value symmetric, derivative antisymmetric
    Ok((c, if x < 0.0 { -cd } else { cd }))
}

/// Odd fundamental solution and its derivative at `x`: y(0) = 0, y′(0) = 1.
pub fn mathieu_odd(params: MathieuParams, x: f64) -> Result<(f64, f64)> {
    let [_, _, s, sd] = eval(params, x)?;
    Ok((if x < 0.0 { -s } else { s }, sd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_conditions_are_exact() {
        let p = MathieuParams::new(1.3, -0.7).unwrap();
        assert_eq!(mathieu_even(p, 0.0).unwrap(), (1.0, 0.0));
        assert_eq!(mathieu_odd(p, 0.0).unwrap(), (0.0, 1.0));
    }

    #[test]
    fn q_zero_reduces_to_trig() {
        let a = 2.5f64;
        let p = MathieuParams::new(a, 0.0).unwrap();
        let sa = a.sqrt();
        for &x in &[0.1, 1.0, 5.0, 12.0, 19.5, -3.0] {
            let (c, cd) = mathieu_even(p, x).unwrap();
            assert!((c - (sa * x).cos()).abs() < 1e-10, "even at {x}");
            assert!((cd + sa * (sa * x).sin()).abs() < 1e-10, "even' at {x}");
            let (s, sd) = mathieu_odd(p, x).unwrap();
            assert!((s - (sa * x).sin() / sa).abs() < 1e-10, "odd at {x}");
            assert!((sd - (sa * x).cos()).abs() < 1e-10, "odd' at {x}");
        }
    }

    #[test]
    fn a_and_q_zero_is_constant_one() {
        let p = MathieuParams::new(0.0, 0.0).unwrap();
        for &x in &[0.0, 2.0, 17.0] {
            let (c, cd) = mathieu_even(p, x).unwrap();
            assert!((c - 1.0).abs() < 1e-12);
            assert!(cd.abs() < 1e-12);
        }
    }

    #[test]
    fn parity() {
        let p = MathieuParams::new(0.61, -0.15).unwrap();
        for &x in &[0.3, 1.7, 6.0, 14.2] {
            let (cp, cdp) = mathieu_even(p, x).unwrap();
            let (cm, cdm) = mathieu_even(p, -x).unwrap();
            assert_eq!(cp, cm);
            assert_eq!(cdp, -cdm);
            let (sp, sdp) = mathieu_odd(p, x).unwrap();
            let (sm, sdm) = mathieu_odd(p, -x).unwrap();
            assert_eq!(sp, -sm);
            assert_eq!(sdp, sdm);
        }
    }

    #[test]
    fn span_extends_on_demand() {
        let p = MathieuParams::new(0.31, 0.07).unwrap();
        let (c20, _) = mathieu_even(p, 19.9).unwrap();
        let (c30, _) = mathieu_even(p, 30.0).unwrap();
        assert!(c20.is_finite() && c30.is_finite());
        // earlier arguments still work after the extension
        let (c20b, _) = mathieu_even(p, 19.9).unwrap();
        assert!((c20 - c20b).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_finite_input() {
        assert!(MathieuParams::new(f64::NAN, 0.0).is_err());
        let p = MathieuParams::new(1.0, 0.5).unwrap();
        assert!(mathieu_even(p, f64::INFINITY).is_err());
    }
}
