//! Qualitative fate of a universe from its initial data.
//!
//! Sufficient conditions decide a label whenever they apply; everything else
//! is settled by integrating both ways until a stop event. Contracting
//! initial data are handled by classifying the time-reflected state.

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::{json, Value};

use crate::dynamics::{self, condition_flags, first_integral, ConditionFlags, CosmoParams, Sign, State, ZeroBand};
use crate::eos::{Eos, EosKind, EosModel};
use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::integrator::{
    estimate_singular_time, integrate, EventKind, IntegrationConfig, Termination, TimeDirection, Trajectory,
};
use crate::roots::invert_increasing;
use crate::scenario::{FutureFate, PastFate, Scenario, Shape};

/// Why a label was assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// `4πG(rho + 3P/c²) >= c²Λ` with `adot > 0` forces a Big Bang.
    BigBangCondition,
    /// `K <= 0` with `adot > 0` forces a Big Bang.
    OpenPast,
    /// `4πG(rho + 3P/c²) <= c²Λ` with `adot > 0` forces eternal expansion.
    ExpansionCondition,
    /// `K <= 0` with `adot > 0` forces eternal expansion.
    OpenFuture,
    /// The orbit lies on the level set of the static solution.
    Separatrix,
    StaticEquilibrium,
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PastSide {
    pub label: PastFate,
    /// Start of the existence interval; `-inf` when unbounded, `None` when
    /// unresolved.
    pub t_minus: Option<f64>,
    pub uncertainty: Option<f64>,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FutureSide {
    pub label: FutureFate,
    pub t_plus: Option<f64>,
    pub uncertainty: Option<f64>,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    #[serde(rename = "K")]
    pub k: f64,
    pub flags: ConditionFlags,
    pub scenario: Scenario,
    pub past: PastSide,
    pub future: FutureSide,
    /// The labels were derived from the reflected state `(a, -adot, rho)`.
    pub time_reflected: bool,
}

/// Encodes a time as a JSON number, or `"inf"`/`"-inf"`, or `null`.
pub fn time_json(t: Option<f64>) -> Value {
    match t {
        Some(t) if t == f64::INFINITY => json!("inf"),
        Some(t) if t == f64::NEG_INFINITY => json!("-inf"),
        Some(t) if t.is_finite() => json!(t),
        _ => Value::Null,
    }
}

impl ScenarioReport {
    pub fn composite(&self) -> String {
        self.scenario.composite()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "K": self.k,
            "flags": {
                "cond8": self.flags.big_bang_condition(),
                "condEx": self.flags.expansion_condition(),
                "condEsc": self.flags.escape_condition(),
                "adot0_sign": self.flags.adot_sign.as_i8(),
            },
            "past": {
                "label": self.past.label,
                "t_minus": time_json(self.past.t_minus),
                "uncertainty": self.past.uncertainty,
                "evidence": self.past.evidence,
            },
            "future": {
                "label": self.future.label,
                "t_plus": time_json(self.future.t_plus),
                "uncertainty": self.future.uncertainty,
                "evidence": self.future.evidence,
            },
            "composite": self.composite(),
            "time_reflected": self.time_reflected,
        })
    }

    fn reflected(self) -> ScenarioReport {
        let neg = |t: Option<f64>| t.map(|t| -t);
        ScenarioReport {
            k: self.k,
            flags: ConditionFlags {
                adot: -self.flags.adot,
                adot_sign: match self.flags.adot_sign {
                    Sign::Positive => Sign::Negative,
                    Sign::Negative => Sign::Positive,
                    Sign::Zero => Sign::Zero,
                },
                ..self.flags
            },
            scenario: self.scenario.reflected(),
            past: PastSide {
                label: self.future.label.reflected(),
                t_minus: neg(self.future.t_plus),
                uncertainty: self.future.uncertainty,
                evidence: self.future.evidence,
            },
            future: FutureSide {
                label: self.past.label.reflected(),
                t_plus: neg(self.past.t_minus),
                uncertainty: self.past.uncertainty,
                evidence: self.past.evidence,
            },
            time_reflected: !self.time_reflected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyConfig {
    pub integration: IntegrationConfig,
    /// Integration horizon in units of `1/(c√Λ)`; unbounded when Λ = 0.
    pub horizon: f64,
    pub band: ZeroBand,
    /// Tolerance on `|K − K_static|` for the separatrix test, relative to
    /// the size of the terms that make up `K`.
    pub separatrix_tol: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            integration: IntegrationConfig::default(),
            horizon: 80.0,
            band: ZeroBand::default(),
            separatrix_tol: 1e-13,
        }
    }
}

/// The static solution sharing the orbit's conserved `rho_flat a³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StaticPoint {
    pub a: f64,
    pub rho: f64,
    #[serde(rename = "K")]
    pub k: f64,
}

/// Density at which `4πG(rho + 3P/c²) = c²Λ`, if Λ > 0.
pub fn static_density<E: Eos + ?Sized>(params: &CosmoParams, model: &E) -> Result<f64> {
    if !(params.lambda > 0.0) {
        return Err(Error::domain("a static solution needs Λ > 0"));
    }
    let c2 = params.c * params.c;
    let target = c2 * params.lambda;
    let dust_guess = params.static_dust_density();
    invert_increasing(
        |rho| {
            let p = model.pressure(rho).unwrap_or(f64::NAN);
            4.0 * PI * params.g * (rho + 3.0 * p / c2)
        },
        target,
        0.5 * dust_guess,
        dust_guess,
        1e-14,
    )
}

pub fn static_point<E: Eos + ?Sized>(params: &CosmoParams, model: &E, s: &State) -> Result<StaticPoint> {
    let rho = static_density(params, model)?;
    let m = model.rho_flat(s.rho)? * s.a.powi(3);
    let a = (m / model.rho_flat(rho)?).cbrt();
    let k = dynamics::friedmann_potential(params, rho) * a * a / (params.c * params.c);
    Ok(StaticPoint { a, rho, k })
}

enum LegOutcome {
    Singular,
    Escaped,
    Plateau,
    Unresolved,
}

fn leg_outcome(traj: &Trajectory) -> LegOutcome {
    match traj.termination {
        Termination::Stopped(EventKind::AMin) | Termination::Stopped(EventKind::RhoMax) => LegOutcome::Singular,
        Termination::SingularApproach => LegOutcome::Singular,
        Termination::Stopped(EventKind::AMax) => LegOutcome::Escaped,
        Termination::ReachedEnd => {
            let s = traj.end_sample().state;
            let rate = traj.params.static_rate();
            if rate > 0.0 && s.adot.abs() / (s.a * rate) < 1e-9 {
                LegOutcome::Plateau
            } else {
                LegOutcome::Unresolved
            }
        }
        _ => LegOutcome::Unresolved,
    }
}

struct Legs {
    backward: Trajectory,
    forward: Trajectory,
}

fn run_legs<E: Eos + ?Sized>(params: &CosmoParams, model: &E, s0: State, cfg: &ClassifyConfig) -> Result<Legs> {
    let horizon = if params.lambda > 0.0 {
        cfg.horizon / params.static_rate()
    } else {
        f64::INFINITY
    };
    Ok(Legs {
        backward: integrate(params, model, s0, (0.0, -horizon), &cfg.integration)?,
        forward: integrate(params, model, s0, (0.0, horizon), &cfg.integration)?,
    })
}

fn singular_time(traj: &Trajectory, dir: TimeDirection) -> (Option<f64>, Option<f64>) {
    match estimate_singular_time(traj, dir) {
        Ok(est) => (Some(est.t_star), Some(est.uncertainty)),
        // Too few tail samples to extrapolate: fall back to the stop time.
        Err(_) => {
            let end = traj.end_sample();
            (Some(end.t), None)
        }
    }
}

/// Classifies initial data `s0` given at `t = 0`.
pub fn classify<E: Eos + ?Sized>(params: &CosmoParams, model: &E, s0: State) -> Result<ScenarioReport> {
    classify_with(params, model, s0, &ClassifyConfig::default())
}

pub fn classify_with<E: Eos + ?Sized>(
    params: &CosmoParams,
    model: &E,
    s0: State,
    cfg: &ClassifyConfig,
) -> Result<ScenarioReport> {
    s0.validate()?;
    let flags = condition_flags(params, model, &s0, cfg.band)?;
    if flags.adot_sign == Sign::Negative {
        let report = classify_nonnegative(params, model, s0.reflected(), cfg)?;
        return Ok(report.reflected());
    }
    classify_nonnegative(params, model, s0, cfg)
}

fn classify_nonnegative<E: Eos + ?Sized>(
    params: &CosmoParams,
    model: &E,
    s0: State,
    cfg: &ClassifyConfig,
) -> Result<ScenarioReport> {
    let flags = condition_flags(params, model, &s0, cfg.band)?;
    let k = first_integral(params, &s0).k;

    if flags.is_static() {
        return Ok(ScenarioReport {
            k,
            flags,
            scenario: Scenario::STATIC,
            past: PastSide {
                label: PastFate::Static,
                t_minus: Some(f64::NEG_INFINITY),
                uncertainty: None,
                evidence: Evidence::StaticEquilibrium,
            },
            future: FutureSide {
                label: FutureFate::Static,
                t_plus: Some(f64::INFINITY),
                uncertainty: None,
                evidence: Evidence::StaticEquilibrium,
            },
            time_reflected: false,
        });
    }

    // Orbits on the static level set approach the static solution on one side.
    let separatrix = if params.lambda > 0.0 && flags.adot_sign == Sign::Positive {
        let sp = static_point(params, model, &s0)?;
        let scale = dynamics::friedmann_potential(params, s0.rho) * s0.a * s0.a / (params.c * params.c);
        ((k - sp.k).abs() <= cfg.separatrix_tol * scale.max(sp.k)).then_some(sp)
    } else {
        None
    };

    let legs = run_legs(params, model, s0, cfg)?;
    let expanding = flags.adot_sign == Sign::Positive;

    let mut past = match leg_outcome(&legs.backward) {
        LegOutcome::Singular => {
            let (t, u) = singular_time(&legs.backward, TimeDirection::Past);
            PastSide {
                label: PastFate::BigBang,
                t_minus: t,
                uncertainty: u,
                evidence: Evidence::Numerical,
            }
        }
        LegOutcome::Escaped => PastSide {
            label: PastFate::EternalContraction,
            t_minus: Some(f64::NEG_INFINITY),
            uncertainty: None,
            evidence: Evidence::Numerical,
        },
        LegOutcome::Plateau => PastSide {
            label: PastFate::Steady,
            t_minus: Some(f64::NEG_INFINITY),
            uncertainty: None,
            evidence: Evidence::Numerical,
        },
        LegOutcome::Unresolved => PastSide {
            label: PastFate::Unknown,
            t_minus: None,
            uncertainty: None,
            evidence: Evidence::Numerical,
        },
    };
    let mut future = match leg_outcome(&legs.forward) {
        LegOutcome::Singular => {
            let (t, u) = singular_time(&legs.forward, TimeDirection::Future);
            FutureSide {
                label: FutureFate::BigCrunch,
                t_plus: t,
                uncertainty: u,
                evidence: Evidence::Numerical,
            }
        }
        LegOutcome::Escaped => FutureSide {
            label: FutureFate::EternalExpansion,
            t_plus: Some(f64::INFINITY),
            uncertainty: None,
            evidence: Evidence::Numerical,
        },
        LegOutcome::Plateau => FutureSide {
            label: FutureFate::Steady,
            t_plus: Some(f64::INFINITY),
            uncertainty: None,
            evidence: Evidence::Numerical,
        },
        LegOutcome::Unresolved => FutureSide {
            label: FutureFate::Unknown,
            t_plus: None,
            uncertainty: None,
            evidence: Evidence::Numerical,
        },
    };

    if expanding {
        if flags.big_bang_condition() || flags.escape_condition() {
            past.label = PastFate::BigBang;
            past.evidence = if flags.big_bang_condition() {
                Evidence::BigBangCondition
            } else {
                Evidence::OpenPast
            };
            if past.t_minus.map_or(true, f64::is_infinite) {
                past.t_minus = None;
            }
        }
        if flags.expansion_condition() || flags.escape_condition() {
            future.label = FutureFate::EternalExpansion;
            future.t_plus = Some(f64::INFINITY);
            future.uncertainty = None;
            future.evidence = if flags.expansion_condition() {
                Evidence::ExpansionCondition
            } else {
                Evidence::OpenFuture
            };
        }
        if let Some(sp) = separatrix {
            if s0.a < sp.a {
                future = FutureSide {
                    label: FutureFate::Steady,
                    t_plus: Some(f64::INFINITY),
                    uncertainty: None,
                    evidence: Evidence::Separatrix,
                };
            } else {
                past = PastSide {
                    label: PastFate::Steady,
                    t_minus: Some(f64::NEG_INFINITY),
                    uncertainty: None,
                    evidence: Evidence::Separatrix,
                };
            }
        }
    }

    let shape = if !expanding {
        if flags.past_crit_sign == Sign::Negative {
            Shape::Bounce
        } else {
            Shape::Recollapse
        }
    } else if separatrix.is_some() {
        Shape::Expanding
    } else if legs.forward.events_of(EventKind::AdotZero).next().is_some() {
        Shape::Recollapse
    } else if legs.backward.events_of(EventKind::AdotZero).next().is_some() {
        Shape::Bounce
    } else {
        Shape::Expanding
    };

    Ok(ScenarioReport {
        k,
        flags,
        scenario: Scenario::new(past.label, shape, future.label),
        past,
        future,
        time_reflected: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityProbe {
    pub epsilon: f64,
    /// Fitted e-folding rate of `|a − ā|`; `None` when `epsilon = 0`.
    pub growth_rate: Option<f64>,
    pub target: f64,
    pub rel_err: Option<f64>,
    pub window: Option<(f64, f64)>,
    /// Largest `|a − ā| / ā` over the run.
    pub max_deviation: f64,
    pub future: FutureFate,
}

/// Kicks the static dust universe (`ā = 1`) with `adot0 = epsilon` and fits
/// the growth of `|a − ā|` while it is small.
pub fn stability_probe(params: &CosmoParams, model: &EosModel, epsilon: f64) -> Result<StabilityProbe> {
    if model.kind() != EosKind::Dust {
        return Err(Error::domain("stability probe needs the dust model"));
    }
    if !(params.lambda > 0.0) {
        return Err(Error::domain("stability probe needs Λ > 0"));
    }
    if !epsilon.is_finite() {
        return Err(Error::domain("epsilon must be finite"));
    }
    let a_bar = 1.0;
    let rate = params.static_rate();
    let s0 = State::new(a_bar, epsilon, params.static_dust_density())?;
    let cfg = IntegrationConfig::default();

    if epsilon == 0.0 {
        let traj = integrate(params, model, s0, (0.0, 10.0 / rate), &cfg)?;
        let dev = traj
            .samples
            .iter()
            .map(|s| (s.state.a - a_bar).abs() / a_bar)
            .fold(0.0, f64::max);
        return Ok(StabilityProbe {
            epsilon,
            growth_rate: None,
            target: rate,
            rel_err: None,
            window: None,
            max_deviation: dev,
            future: FutureFate::Static,
        });
    }

    let traj = integrate(params, model, s0, (0.0, 80.0 / rate), &cfg)?;
    let future = match leg_outcome(&traj) {
        LegOutcome::Singular => FutureFate::BigCrunch,
        LegOutcome::Escaped => FutureFate::EternalExpansion,
        _ => FutureFate::Unknown,
    };
    let max_deviation = traj
        .samples
        .iter()
        .map(|s| (s.state.a - a_bar).abs() / a_bar)
        .fold(0.0, f64::max);

    // Linear regime: 1e-6 <= |a − ā|/ā <= 1e-3, after the transient λt >= 3.
    let in_window = |s: &crate::integrator::Sample| {
        let x = (s.state.a - a_bar).abs() / a_bar;
        rate * s.t >= 3.0 && (1e-6..=1e-3).contains(&x)
    };
    let first = traj.samples.iter().position(in_window);
    let last = traj.samples.iter().rposition(in_window);
    let (lo, hi) = match (first, last) {
        (Some(i), Some(j)) if j > i => (traj.samples[i].t, traj.samples[j].t),
        _ => {
            return Err(Error::insufficient(
                "perturbation leaves the linear regime before the fit window; reduce epsilon",
            ))
        }
    };
    if rate * (hi - lo) < 1.0 {
        return Err(Error::insufficient("linear-regime window shorter than one e-fold"));
    }
    let n = 200;
    let mut ts = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let t = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let s = traj.interpolate(model, t)?;
        ts.push(t);
        ys.push(((s.a - a_bar).abs() / a_bar).ln());
    }
    let line = linear_fit(&ts, &ys)?;
    Ok(StabilityProbe {
        epsilon,
        growth_rate: Some(line.slope),
        target: rate,
        rel_err: Some((line.slope - rate).abs() / rate),
        window: Some((lo, hi)),
        max_deviation,
        future,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FateScanRow {
    pub adot0: f64,
    pub scenario: Scenario,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FateScan {
    pub rows: Vec<FateScanRow>,
    /// `4πG(rho0 + 3P/c²) > c²Λ`.
    pub supercritical: bool,
    /// Future fates change at most once along increasing `adot0`.
    pub monotone: bool,
    /// Supercritical: the smallest positive `adot0` recollapses.
    /// Subcritical: the negative `adot0` closest to zero bounces.
    pub near_critical_ok: bool,
}

/// Classifies `(a0, adot0, rho0)` for each `adot0` in the grid.
pub fn fate_boundary_scan<E: Eos + ?Sized>(
    params: &CosmoParams,
    model: &E,
    a0: f64,
    rho0: f64,
    adot0_grid: &[f64],
) -> Result<FateScan> {
    if adot0_grid.len() < 10 {
        return Err(Error::domain("fate scan needs at least 10 grid values"));
    }
    if !(adot0_grid.iter().any(|&v| v > 0.0) && adot0_grid.iter().any(|&v| v < 0.0)) {
        return Err(Error::domain("fate scan grid must span both signs of adot0"));
    }
    let mut grid = adot0_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let classify_one = |adot0: f64| -> Result<FateScanRow> {
        let s = State::new(a0, adot0, rho0)?;
        Ok(FateScanRow {
            adot0,
            scenario: classify(params, model, s)?.scenario,
        })
    };
    #[cfg(feature = "parallel")]
    let rows: Result<Vec<FateScanRow>> = {
        use rayon::prelude::*;
        grid.par_iter().map(|&v| classify_one(v)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<FateScanRow>> = grid.iter().map(|&v| classify_one(v)).collect();
    let rows = rows?;

    let probe = State::new(a0, 0.0, rho0)?;
    let flags = condition_flags(params, model, &probe, ZeroBand::default())?;
    let supercritical = flags.past_crit_sign == Sign::Positive;
    let changes = rows
        .windows(2)
        .filter(|w| w[0].scenario.future != w[1].scenario.future)
        .count();
    let near_critical_ok = if supercritical {
        rows.iter()
            .find(|r| r.adot0 > 0.0)
            .map_or(false, |r| r.scenario.shape == Shape::Recollapse)
    } else {
        rows.iter()
            .rev()
            .find(|r| r.adot0 < 0.0)
            .map_or(false, |r| r.scenario.future == FutureFate::EternalExpansion)
    };
    Ok(FateScan {
        rows,
        supercritical,
        monotone: changes <= 1,
        near_critical_ok,
    })
}
