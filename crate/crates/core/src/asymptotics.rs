//! Fits of integrated trajectories against the leading-order asymptotic
//! laws near a Big Bang, in the de Sitter regime, and near the static
//! solution.

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::{json, Value};

use crate::dynamics::CosmoParams;
use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::fit::{fit_power_law_singularity, linear_fit, Side};
use crate::integrator::{Direction, EventKind, Sample, Termination, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    BigbangPowerlaw,
    LatetimeExponential,
    StaticApproach,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub regime: Regime,
    /// Which quantity was fitted: `"a"`, `"rho"` or `"abar_minus_a"`.
    pub quantity: &'static str,
    /// Power-law exponent or exponential rate (rates are magnitudes).
    pub fitted: f64,
    pub target: f64,
    pub rel_err: f64,
    pub prefactor: f64,
    pub prefactor_target: Option<f64>,
    pub prefactor_rel_err: Option<f64>,
    /// Fitted singular time for power-law regimes.
    pub t_star: Option<f64>,
    pub window: (f64, f64),
    pub samples_used: usize,
    /// RMS residual of the log fit.
    pub rms: f64,
}

fn rel(fitted: f64, target: f64) -> f64 {
    (fitted - target).abs() / target.abs()
}

impl AsymptoticFit {
    pub fn to_json(&self) -> Value {
        json!({
            "regime": self.regime,
            "quantity": self.quantity,
            "fitted": self.fitted,
            "target": self.target,
            "rel_err": self.rel_err,
            "prefactor": self.prefactor,
            "prefactor_target": self.prefactor_target,
            "prefactor_rel_err": self.prefactor_rel_err,
            "t_star": self.t_star,
            "window": [self.window.0, self.window.1],
        })
    }
}

/// Power-law fits of `a` and `rho` over the Big-Bang (or Big-Crunch) tail,
/// the stretch with `a < 100 · a_min_stop`, resampled from dense output at
/// geometrically spaced distances from the stop time.
///
/// Targets: `a ∝ |t − t*|^(2/(3Γ))` with prefactor `(6πΓ²G ρ₁)^(1/(3Γ))`,
/// where `ρ₁ = ρ a^(3Γ)`, and `ρ ≈ |t − t*|^(−2) / (6πΓ²G)`.
pub fn fit_bigbang<E: Eos + ?Sized>(
    traj: &Trajectory,
    model: &E,
    gamma: f64,
    params: &CosmoParams,
) -> Result<(AsymptoticFit, AsymptoticFit)> {
    if !(gamma > 0.0) {
        return Err(Error::domain(format!("Γ must be positive, got {gamma}")));
    }
    if !traj.singular_approach() {
        return Err(Error::insufficient("trajectory does not approach a singularity"));
    }
    let side = match traj.direction {
        Direction::Backward => Side::Before,
        Direction::Forward => Side::After,
    };
    let limit = 100.0 * traj.a_min_stop;
    let end = traj.end_sample();
    let inside = || Error::insufficient("run starts inside the Big-Bang window");
    let samples = &traj.samples;
    let (s_lo, s_hi) = match traj.direction {
        Direction::Forward => {
            let j = samples.iter().rposition(|s| s.state.a >= limit).ok_or_else(inside)?;
            (samples[j], *samples.get(j + 1).ok_or_else(inside)?)
        }
        Direction::Backward => {
            let j = samples.iter().position(|s| s.state.a >= limit).ok_or_else(inside)?;
            (*samples.get(j.wrapping_sub(1)).ok_or_else(inside)?, samples[j])
        }
    };
    let t_start = crate::roots::brent(
        |t| traj.interpolate(model, t).map(|s| s.a - limit).unwrap_or(f64::NAN),
        s_lo.t,
        s_hi.t,
        0.0,
        1e-14,
        200,
    )?;
    let span = t_start - end.t;
    let t: Vec<f64> = (0..RESAMPLE)
        .map(|i| end.t + span * 1e-4f64.powf(i as f64 / (RESAMPLE - 1) as f64))
        .collect();
    let states = t
        .iter()
        .map(|&ti| traj.interpolate(model, ti))
        .collect::<Result<Vec<_>>>()?;
    let a: Vec<f64> = states.iter().map(|s| s.a).collect();
    let rho: Vec<f64> = states.iter().map(|s| s.rho).collect();
    let window = if span > 0.0 { (end.t, t_start) } else { (t_start, end.t) };
    let deepest = states[RESAMPLE - 1];

    let a_fit = fit_power_law_singularity(&t, &a, side)?;
    let rho_fit = fit_power_law_singularity(&t, &rho, side)?;

    let g6 = 6.0 * PI * gamma * gamma * params.g;
    let rho1 = deepest.rho * deepest.a.powf(3.0 * gamma);
    let a_pref_target = (g6 * rho1).powf(1.0 / (3.0 * gamma));
    let a_target = 2.0 / (3.0 * gamma);
    let rho_pref_target = 1.0 / g6;

    Ok((
        AsymptoticFit {
            regime: Regime::BigbangPowerlaw,
            quantity: "a",
            fitted: a_fit.exponent,
            target: a_target,
            rel_err: rel(a_fit.exponent, a_target),
            prefactor: a_fit.prefactor,
            prefactor_target: Some(a_pref_target),
            prefactor_rel_err: Some(rel(a_fit.prefactor, a_pref_target)),
            t_star: Some(a_fit.t_star),
            window,
            samples_used: RESAMPLE,
            rms: a_fit.rms,
        },
        AsymptoticFit {
            regime: Regime::BigbangPowerlaw,
            quantity: "rho",
            fitted: rho_fit.exponent,
            target: -2.0,
            rel_err: rel(rho_fit.exponent, -2.0),
            prefactor: rho_fit.prefactor,
            prefactor_target: Some(rho_pref_target),
            prefactor_rel_err: Some(rel(rho_fit.prefactor, rho_pref_target)),
            t_star: Some(rho_fit.t_star),
            window,
            samples_used: RESAMPLE,
            rms: rho_fit.rms,
        },
    ))
}

/// Points per dense resampling of a fit window.
const RESAMPLE: usize = 200;

fn resample<E: Eos + ?Sized>(
    traj: &Trajectory,
    model: &E,
    lo: f64,
    hi: f64,
) -> Result<Vec<crate::dynamics::State>> {
    (0..RESAMPLE)
        .map(|i| traj.interpolate(model, lo + (hi - lo) * i as f64 / (RESAMPLE - 1) as f64))
        .collect()
}

/// Exponential fits of `a` and `rho` over the last two e-folds of a forward
/// run that escaped to `a_max_stop`.
///
/// The expansion target is `c√(Λ/3)`. The density target is
/// `3c√(Λ/3)(1 + P/(c²ρ))` at the end of the window, which is `3c√(Λ/3)`
/// for any model that is pressureless or polytropic at low density.
pub fn fit_latetime<E: Eos + ?Sized>(
    traj: &Trajectory,
    model: &E,
    params: &CosmoParams,
) -> Result<(AsymptoticFit, AsymptoticFit)> {
    if !(params.lambda > 0.0) {
        return Err(Error::domain("late-time fit needs Λ > 0"));
    }
    if traj.direction != Direction::Forward || traj.termination != Termination::Stopped(EventKind::AMax) {
        return Err(Error::insufficient("late-time fit needs a forward run that reached a_max_stop"));
    }
    let end = traj.samples[traj.samples.len() - 1];
    let a0 = traj.initial.a;
    if (end.state.a / (10.0 * a0)).ln() < 3.0 {
        return Err(Error::insufficient("fewer than 3 e-folds beyond 10·a0"));
    }
    let a_start = end.state.a * (-2.0f64).exp();
    let start = traj
        .samples
        .iter()
        .rposition(|s| s.state.a <= a_start)
        .ok_or_else(|| Error::insufficient("late-time window start not found"))?;
    // Locate the exact window start on the dense output.
    let s_lo = traj.samples[start];
    let s_hi = traj.samples[start + 1];
    let t_lo = crate::roots::brent(
        |t| traj.interpolate(model, t).map(|s| s.a - a_start).unwrap_or(f64::NAN),
        s_lo.t,
        s_hi.t,
        0.0,
        1e-14,
        200,
    )?;
    let t_hi = end.t;
    let states = resample(traj, model, t_lo, t_hi)?;
    let t: Vec<f64> = (0..RESAMPLE)
        .map(|i| t_lo + (t_hi - t_lo) * i as f64 / (RESAMPLE - 1) as f64)
        .collect();
    let ln_a: Vec<f64> = states.iter().map(|s| s.a.ln()).collect();
    let ln_rho: Vec<f64> = states.iter().map(|s| s.rho.ln()).collect();
    let fa = linear_fit(&t, &ln_a)?;
    let fr = linear_fit(&t, &ln_rho)?;

    let h = params.de_sitter_rate();
    let c2 = params.c * params.c;
    let rho_end = end.state.rho;
    let rho_target = 3.0 * h * (1.0 + model.pressure(rho_end)? / (c2 * rho_end));
    let window = (t_lo, t_hi);
    Ok((
        AsymptoticFit {
            regime: Regime::LatetimeExponential,
            quantity: "a",
            fitted: fa.slope,
            target: h,
            rel_err: rel(fa.slope, h),
            prefactor: fa.intercept.exp(),
            prefactor_target: None,
            prefactor_rel_err: None,
            t_star: None,
            window,
            samples_used: RESAMPLE,
            rms: fa.rms,
        },
        AsymptoticFit {
            regime: Regime::LatetimeExponential,
            quantity: "rho",
            fitted: -fr.slope,
            target: rho_target,
            rel_err: rel(-fr.slope, rho_target),
            prefactor: fr.intercept.exp(),
            prefactor_target: None,
            prefactor_rel_err: None,
            t_star: None,
            window,
            samples_used: RESAMPLE,
            rms: fr.rms,
        },
    ))
}

/// Exponential fit of `|ā − a|` where a dust trajectory approaches the
/// static radius `ā = (4πG ρ₁ / (c²Λ))^(1/3)`, with `ρ₁ = ρa³`.
///
/// The window is the stretch between the initial time and the closest
/// approach to `ā` on which `1e-6 ≤ |ā − a|/ā ≤ 1e-3`. The target rate is
/// `c√Λ`.
pub fn fit_static_approach<E: Eos + ?Sized>(
    traj: &Trajectory,
    model: &E,
    params: &CosmoParams,
) -> Result<AsymptoticFit> {
    if !(params.lambda > 0.0) {
        return Err(Error::domain("static approach needs Λ > 0"));
    }
    let rho1 = traj.samples[0].flat_a3;
    let a_bar = (4.0 * PI * params.g * rho1 / (params.c * params.c * params.lambda)).cbrt();
    let dev = |s: &Sample| (s.state.a - a_bar).abs() / a_bar;

    let closest = traj
        .samples
        .iter()
        .enumerate()
        .min_by(|x, y| dev(x.1).total_cmp(&dev(y.1)))
        .map(|(i, _)| i)
        .expect("nonempty trajectory");
    let max_dev = traj.samples.iter().map(dev).fold(0.0, f64::max);
    if max_dev < 1e-12 {
        return Err(Error::insufficient("no decay: trajectory sits at the static radius"));
    }
    let stretch: Vec<&Sample> = match traj.direction {
        Direction::Forward => traj.samples[..=closest].iter().collect(),
        Direction::Backward => traj.samples[closest..].iter().collect(),
    };
    let inside: Vec<f64> = stretch
        .iter()
        .filter(|s| (1e-6..=1e-3).contains(&dev(s)))
        .map(|s| s.t)
        .collect();
    if inside.len() < 2 {
        return Err(Error::insufficient("trajectory does not approach the static radius"));
    }
    let t_lo = inside[0];
    let t_hi = inside[inside.len() - 1];
    if params.static_rate() * (t_hi - t_lo) < 1.0 {
        return Err(Error::insufficient("static-approach window shorter than one e-fold"));
    }
    let states = resample(traj, model, t_lo, t_hi)?;
    let t: Vec<f64> = (0..RESAMPLE)
        .map(|i| t_lo + (t_hi - t_lo) * i as f64 / (RESAMPLE - 1) as f64)
        .collect();
    let y: Vec<f64> = states.iter().map(|s| ((s.a - a_bar).abs() / a_bar).ln()).collect();
    let line = linear_fit(&t, &y)?;
    let target = params.static_rate();
    let fitted = line.slope.abs();
    Ok(AsymptoticFit {
        regime: Regime::StaticApproach,
        quantity: "abar_minus_a",
        fitted,
        target,
        rel_err: rel(fitted, target),
        prefactor: line.intercept.exp() * a_bar,
        prefactor_target: None,
        prefactor_rel_err: None,
        t_star: None,
        window: (t_lo, t_hi),
        samples_used: RESAMPLE,
        rms: line.rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::State;
    use crate::eos::EosModel;
    use crate::integrator::{integrate, IntegrationConfig};

    #[test]
    fn bigbang_needs_singular_run() {
        let p = CosmoParams::natural(1.0).unwrap();
        let m = EosModel::dust(1.0).unwrap();
        let s0 = State::new(1.0, 0.5, 0.2).unwrap();
        let tr = integrate(&p, &m, s0, (0.0, 1.0), &IntegrationConfig::default()).unwrap();
        assert!(fit_bigbang(&tr, &m, 1.0, &p).is_err());
        assert!(fit_latetime(&tr, &m, &p).is_err());
    }

    #[test]
    fn equilibrium_has_no_decay() {
        let p = CosmoParams::natural(1.0).unwrap();
        let m = EosModel::dust(1.0).unwrap();
        let s0 = State::new(1.0, 0.0, p.static_dust_density()).unwrap();
        let tr = integrate(&p, &m, s0, (0.0, 5.0), &IntegrationConfig::default()).unwrap();
        assert!(matches!(fit_static_approach(&tr, &m, &p), Err(Error::InsufficientData(_))));
    }
}
