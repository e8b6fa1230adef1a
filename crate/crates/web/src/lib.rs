//! Browser bindings. Each export takes plain numbers and strings and
//! returns a JSON string, so the page needs no generated glue beyond
//! wasm-bindgen's own.

use cosmofate::classifier::classify;
use cosmofate::dust_oracle::{dust_scan as scan, linspace, Branch};
use cosmofate::dynamics::Sign;
use cosmofate::eos::{log_grid, Eos};
use cosmofate::{integrate, CosmoParams, EosModel, IntegrationConfig, State, Trajectory};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Upper bound on points sent to the page per trajectory leg.
const MAX_POINTS: usize = 2000;

#[derive(Serialize)]
struct Series {
    t: Vec<f64>,
    a: Vec<f64>,
    adot: Vec<f64>,
    rho: Vec<f64>,
}

impl Series {
    fn push_leg(&mut self, traj: &Trajectory) {
        let stride = traj.samples.len().div_ceil(MAX_POINTS).max(1);
        let last = traj.samples.len() - 1;
        for (i, s) in traj.samples.iter().enumerate() {
            if i % stride == 0 || i == last {
                self.t.push(s.t);
                self.a.push(s.state.a);
                self.adot.push(s.state.adot);
                self.rho.push(s.state.rho);
            }
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Integrates both ways from `t = 0` over `[-span, span]` and classifies the
/// initial state.
pub fn simulate_json(eos: &str, lambda: f64, a0: f64, adot0: f64, rho0: f64, span: f64) -> Result<String, String> {
    if !(span > 0.0 && span.is_finite()) {
        return Err("time span must be positive".into());
    }
    let params = CosmoParams::natural(lambda).map_err(err)?;
    let model = EosModel::parse(eos, 1.0).map_err(err)?;
    let s0 = State::new(a0, adot0, rho0).map_err(err)?;
    let cfg = IntegrationConfig::default();
    let back = integrate(&params, &model, s0, (0.0, -span), &cfg).map_err(err)?;
    let fwd = integrate(&params, &model, s0, (0.0, span), &cfg).map_err(err)?;
    let mut series = Series {
        t: Vec::new(),
        a: Vec::new(),
        adot: Vec::new(),
        rho: Vec::new(),
    };
    series.push_leg(&back);
    // The shared initial sample is the last backward and first forward one.
    series.t.pop();
    series.a.pop();
    series.adot.pop();
    series.rho.pop();
    series.push_leg(&fwd);
    let report = classify(&params, &model, s0).map_err(err)?;
    let out = serde_json::json!({
        "series": series,
        "report": report.to_json(),
        "past_end": back.termination,
        "future_end": fwd.termination,
    });
    Ok(out.to_string())
}

pub fn dust_scan_json(lo: f64, hi: f64, n: usize, expanding: bool) -> Result<String, String> {
    if n == 0 || n > 10_000 {
        return Err("grid size must be between 1 and 10000".into());
    }
    let sign = if expanding { Sign::Positive } else { Sign::Negative };
    let rows = scan(&linspace(lo, hi, n), &[Branch::Low, Branch::High], sign).map_err(err)?;
    serde_json::to_string(&rows).map_err(err)
}

#[derive(Serialize)]
struct EosCurve {
    rho: Vec<f64>,
    pressure: Vec<f64>,
    /// `P / (c² rho)`
    w: Vec<f64>,
    /// `dP/drho / c²`
    sound_speed2: Vec<f64>,
}

/// Samples `P(rho)` on a log grid spanning `decades` around the model's
/// reference density.
pub fn eos_curve_json(eos: &str, decades: f64, n: usize) -> Result<String, String> {
    if !(decades > 0.0 && decades <= 24.0) || !(2..=5000).contains(&n) {
        return Err("need 0 < decades <= 24 and 2 <= n <= 5000".into());
    }
    let model = EosModel::parse(eos, 1.0).map_err(err)?;
    let r = model.reference_density();
    let half = 10f64.powf(decades / 2.0);
    let rho = log_grid(r / half, r * half, n);
    let mut curve = EosCurve {
        rho: Vec::with_capacity(n),
        pressure: Vec::with_capacity(n),
        w: Vec::with_capacity(n),
        sound_speed2: Vec::with_capacity(n),
    };
    for x in rho {
        let p = model.pressure(x).map_err(err)?;
        curve.rho.push(x);
        curve.pressure.push(p);
        curve.w.push(p / x);
        curve.sound_speed2.push(model.dp_drho(x).map_err(err)?);
    }
    serde_json::to_string(&curve).map_err(err)
}

#[wasm_bindgen]
pub fn simulate(eos: &str, lambda: f64, a0: f64, adot0: f64, rho0: f64, span: f64) -> Result<String, JsValue> {
    simulate_json(eos, lambda, a0, adot0, rho0, span).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dust_scan(lo: f64, hi: f64, n: usize, expanding: bool) -> Result<String, JsValue> {
    dust_scan_json(lo, hi, n, expanding).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eos_curve(eos: &str, decades: f64, n: usize) -> Result<String, JsValue> {
    eos_curve_json(eos, decades, n).map_err(|e| JsValue::from_str(&e))
}
