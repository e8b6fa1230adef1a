//! Adaptive Dormand–Prince 5(4) integration of the reduced system with
//! dense output and event location.
//!
//! Backward runs are never integrated with negative steps: the initial state
//! is time-reflected to `(a, -adot, rho)`, integrated forward, and the result
//! is mapped back through `t -> t0 - tau`, `adot -> -adot`.

use serde::Serialize;

use crate::dynamics::{self, first_integral, CosmoParams, State};
use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::fit::{fit_power_law_singularity, linear_fit, Side};
use crate::roots::brent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Integrate `(a, adot, rho)`.
    Direct,
    /// Integrate `(a, adot)` and recover `rho` from `rho_flat a³ = const`.
    Constrained,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub rel_tol: f64,
    /// Absolute tolerance on `adot`, in units of its initial magnitude, so
    /// that results do not depend on the choice of units. `a` and `rho` are
    /// controlled by `rel_tol` alone.
    pub abs_tol: f64,
    /// Stop when `a` falls to this value. Defaults to `1e-6 · a0`.
    pub a_min_stop: Option<f64>,
    /// Stop when `a` grows to this value. Defaults to `1e6 · a0`.
    pub a_max_stop: Option<f64>,
    /// Stop when `rho` grows to this value. Defaults to no limit.
    pub rho_max_stop: Option<f64>,
    pub mode: Mode,
    pub max_steps: usize,
    pub max_step: Option<f64>,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            a_min_stop: None,
            a_max_stop: None,
            rho_max_stop: None,
            mode: Mode::Constrained,
            max_steps: 500_000,
            max_step: None,
        }
    }
}

impl IntegrationConfig {
    pub fn direct() -> Self {
        IntegrationConfig {
            mode: Mode::Direct,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::domain(format!("rel_tol must lie in (0, 1e-3], got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::domain("abs_tol must be non-negative"));
        }
        for (name, v) in [
            ("a_min_stop", self.a_min_stop),
            ("a_max_stop", self.a_max_stop),
            ("rho_max_stop", self.rho_max_stop),
        ] {
            if let Some(v) = v {
                if !(v > 0.0) {
                    return Err(Error::domain(format!("{name} must be positive, got {v}")));
                }
            }
        }
        if self.max_steps == 0 {
            return Err(Error::domain("max_steps must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    AdotZero,
    AMin,
    AMax,
    RhoMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Event {
    pub t: f64,
    pub kind: EventKind,
    pub state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub state: State,
    pub pressure: f64,
    /// Friedmann quantity `adot² − (8πG/3 rho + c²Λ/3) a²`.
    pub x: f64,
    /// `rho_flat · a³`.
    pub flat_a3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "event")]
pub enum Termination {
    /// Reached the requested end time.
    ReachedEnd,
    /// Halted by a stop event.
    Stopped(EventKind),
    /// Step size underflowed while `a -> 0` or `rho -> inf`.
    SingularApproach,
    MaxSteps,
}

#[derive(Debug, Clone, Copy)]
struct DenseSegment {
    tau: f64,
    h: f64,
    coef: [[f64; 3]; 5],
}

impl DenseSegment {
    fn eval(&self, theta: f64) -> [f64; 3] {
        let [r1, r2, r3, r4, r5] = self.coef;
        let t1 = 1.0 - theta;
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = r1[i] + theta * (r2[i] + t1 * (r3[i] + theta * (r4[i] + t1 * r5[i])));
        }
        out
    }
}

/// Result of [`integrate`]. Samples and events are stored in chronological
/// order regardless of the integration direction.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub events: Vec<Event>,
    pub termination: Termination,
    pub direction: Direction,
    pub mode: Mode,
    pub t0: f64,
    pub initial: State,
    pub params: CosmoParams,
    pub a_min_stop: f64,
    pub a_max_stop: f64,
    pub rho_max_stop: f64,
    dense: Vec<DenseSegment>,
    flat_a3_const: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `true` when the run ended by approaching `a -> 0`.
    pub fn singular_approach(&self) -> bool {
        matches!(
            self.termination,
            Termination::Stopped(EventKind::AMin)
                | Termination::Stopped(EventKind::RhoMax)
                | Termination::SingularApproach
        )
    }

    /// Sample at the far end of the run (the last one integrated).
    pub fn end_sample(&self) -> &Sample {
        match self.direction {
            Direction::Forward => self.samples.last().expect("nonempty trajectory"),
            Direction::Backward => self.samples.first().expect("nonempty trajectory"),
        }
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn span(&self) -> (f64, f64) {
        (self.samples[0].t, self.samples[self.samples.len() - 1].t)
    }

    /// Max of `|X(t) − X(t0)| / max(1, |X(t0)|)` over the samples.
    pub fn max_x_drift(&self) -> f64 {
        let x0 = first_integral(&self.params, &self.initial).x;
        let scale = x0.abs().max(1.0);
        self.samples
            .iter()
            .map(|s| (s.x - x0).abs() / scale)
            .fold(0.0, f64::max)
    }

    /// Max relative drift of `rho_flat a³` over the samples.
    pub fn max_flat_drift(&self) -> f64 {
        let f0 = self.flat_a3_const;
        self.samples
            .iter()
            .map(|s| ((s.flat_a3 - f0) / f0).abs())
            .fold(0.0, f64::max)
    }

    /// Dense-output state at time `t` inside the integrated span.
    pub fn interpolate<E: Eos + ?Sized>(&self, model: &E, t: f64) -> Result<State> {
        let (lo, hi) = self.span();
        if !(t >= lo && t <= hi) {
            return Err(Error::domain(format!("t = {t} outside trajectory span [{lo}, {hi}]")));
        }
        let tau = match self.direction {
            Direction::Forward => t - self.t0,
            Direction::Backward => self.t0 - t,
        };
        let idx = self
            .dense
            .partition_point(|seg| seg.tau + seg.h < tau)
            .min(self.dense.len().saturating_sub(1));
        let seg = self
            .dense
            .get(idx)
            .ok_or_else(|| Error::insufficient("trajectory has no dense output"))?;
        let theta = ((tau - seg.tau) / seg.h).clamp(0.0, 1.0);
        let y = seg.eval(theta);
        let sign = match self.direction {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        };
        let rho = match self.mode {
            Mode::Direct => y[2],
            Mode::Constrained => model.rho_from_flat(self.flat_a3_const / y[0].powi(3))?,
        };
        Ok(State {
            a: y[0],
            adot: sign * y[1],
            rho,
        })
    }

    pub fn events_of(&self, kind: EventKind) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(move |e| e.kind == kind)
    }
}

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

type Vec3 = [f64; 3];

/// Autonomous right-hand side in reflected time `tau`; component 2 is unused
/// in constrained mode.
struct System<'a, E: Eos + ?Sized> {
    params: &'a CosmoParams,
    model: &'a E,
    mode: Mode,
    flat_a3: f64,
}

impl<E: Eos + ?Sized> System<'_, E> {
    fn dim(&self) -> usize {
        match self.mode {
            Mode::Direct => 3,
            Mode::Constrained => 2,
        }
    }

    fn state(&self, y: &Vec3) -> Result<State> {
        let rho = match self.mode {
            Mode::Direct => y[2],
            Mode::Constrained => {
                if !(y[0] > 0.0) {
                    return Err(Error::domain("scale factor left the domain"));
                }
                self.model.rho_from_flat(self.flat_a3 / y[0].powi(3))?
            }
        };
        let s = State {
            a: y[0],
            adot: y[1],
            rho,
        };
        s.validate()?;
        Ok(s)
    }

    fn deriv(&self, y: &Vec3) -> Result<Vec3> {
        let s = self.state(y)?;
        let r = dynamics::rhs(self.params, self.model, &s)?;
        Ok(match self.mode {
            Mode::Direct => [r.da, r.dadot, r.drho],
            Mode::Constrained => [r.da, r.dadot, 0.0],
        })
    }
}

fn axpy(y: &Vec3, h: f64, terms: &[(f64, &Vec3)]) -> Vec3 {
    let mut out = *y;
    for i in 0..3 {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

struct StepResult {
    y1: Vec3,
    k7: Vec3,
    err: f64,
    coef: [[f64; 3]; 5],
}

fn dopri_step<E: Eos + ?Sized>(
    sys: &System<'_, E>,
    y: &Vec3,
    k1: &Vec3,
    h: f64,
    scale: &Vec3,
    rtol: f64,
    atol: f64,
) -> Result<StepResult> {
    let k2 = sys.deriv(&axpy(y, h, &[(A21, k1)]))?;
    let k3 = sys.deriv(&axpy(y, h, &[(A31, k1), (A32, &k2)]))?;
    let k4 = sys.deriv(&axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = sys.deriv(&axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
    let k6 = sys.deriv(&axpy(
        y,
        h,
        &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
    ))?;
    let y1 = axpy(
        y,
        h,
        &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
    );
    let k7 = sys.deriv(&y1)?;
    let n = sys.dim();
    let mut sum = 0.0;
    for i in 0..n {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let sc = atol * scale[i] + rtol * y[i].abs().max(y1[i].abs());
        sum += (e / sc).powi(2);
    }
    let err = (sum / n as f64).sqrt();
    let mut coef = [[0.0; 3]; 5];
    for i in 0..3 {
        let dy = y1[i] - y[i];
        let bspl = h * k1[i] - dy;
        coef[0][i] = y[i];
        coef[1][i] = dy;
        coef[2][i] = bspl;
        coef[3][i] = dy - h * k7[i] - bspl;
        coef[4][i] = h
            * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
    }
    Ok(StepResult { y1, k7, err, coef })
}

#[derive(Debug, Clone, Copy)]
struct StopLevels {
    a_min: f64,
    a_max: f64,
    rho_max: f64,
}

/// Integrates from `s0` at `t_span.0` towards `t_span.1`, which may be
/// earlier (backward run) or infinite (run until a stop event).
pub fn integrate<E: Eos + ?Sized>(
    params: &CosmoParams,
    model: &E,
    s0: State,
    t_span: (f64, f64),
    cfg: &IntegrationConfig,
) -> Result<Trajectory> {
    s0.validate()?;
    cfg.validate()?;
    let (t0, t1) = t_span;
    if !t0.is_finite() || t1.is_nan() {
        return Err(Error::domain("t0 must be finite and t1 not NaN"));
    }
    let direction = if t1 >= t0 {
        Direction::Forward
    } else {
        Direction::Backward
    };
    let tau_end = (t1 - t0).abs();
    let sign = match direction {
        Direction::Forward => 1.0,
        Direction::Backward => -1.0,
    };
    let levels = StopLevels {
        a_min: cfg.a_min_stop.unwrap_or(1e-6 * s0.a),
        a_max: cfg.a_max_stop.unwrap_or(1e6 * s0.a),
        rho_max: cfg.rho_max_stop.unwrap_or(f64::INFINITY),
    };
    if s0.a <= levels.a_min || s0.a >= levels.a_max || s0.rho >= levels.rho_max {
        return Err(Error::domain("initial state lies outside the stop thresholds"));
    }

    let flat_a3 = model.rho_flat(s0.rho)? * s0.a.powi(3);
    let sys = System {
        params,
        model,
        mode: cfg.mode,
        flat_a3,
    };
    let start = s0.reflected_if(direction == Direction::Backward);
    let y0: Vec3 = [start.a, start.adot, start.rho];
    let potential = dynamics::friedmann_potential(params, s0.rho);
    // `a` and `rho` stay positive, so only `adot` needs an absolute floor.
    let scale: Vec3 = [0.0, s0.adot.abs().max(s0.a * potential.sqrt()), 0.0];

    let make_sample = |tau: f64, y: &Vec3| -> Result<Sample> {
        let mut state = sys.state(y)?;
        state.adot *= sign;
        let pressure = model.pressure(state.rho)?;
        Ok(Sample {
            t: t0 + sign * tau,
            state,
            pressure,
            x: first_integral(params, &state).x,
            flat_a3: model.rho_flat(state.rho)? * state.a.powi(3),
        })
    };

    let mut samples = vec![make_sample(0.0, &y0)?];
    let mut events = Vec::new();
    let mut dense = Vec::new();
    let mut tau = 0.0;
    let mut tau_c = 0.0;
    let mut y = y0;
    let mut k1 = sys.deriv(&y)?;

    // Initial step from the local time scale of the state.
    let mut h = {
        let mut d0: f64 = 0.0;
        let mut d1: f64 = 0.0;
        for i in 0..sys.dim() {
            let sc = cfg.abs_tol * scale[i] + cfg.rel_tol * y[i].abs();
            d0 = d0.max((y[i] / sc).abs());
            d1 = d1.max((k1[i] / sc).abs());
        }
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h0 * cfg.rel_tol.powf(0.2)
    };
    if let Some(m) = cfg.max_step {
        h = h.min(m);
    }
    if h.is_finite() && tau_end.is_finite() {
        h = h.min(tau_end);
    }
    let h_initial = h;

    let mut steps = 0usize;
    let termination = loop {
        if tau >= tau_end {
            break Termination::ReachedEnd;
        }
        if steps >= cfg.max_steps {
            break Termination::MaxSteps;
        }
        let mut h_try = h.min(tau_end - tau);
        if let Some(m) = cfg.max_step {
            h_try = h_try.min(m);
        }
        let final_step = h_try == tau_end - tau;
        // The system is autonomous, so the step only has to resolve the
        // local time scale; the absolute time may lose resolution near a
        // singularity without harming the state.
        let local = (0..sys.dim())
            .filter(|&i| y[i] != 0.0 && k1[i] != 0.0)
            .map(|i| (y[i] / k1[i]).abs())
            .fold(f64::INFINITY, f64::min);
        let floor = 10.0 * f64::EPSILON * if local.is_finite() { local } else { h_initial };
        if h_try < floor && !final_step {
            let last = samples.last().map(|s: &Sample| s.state).unwrap_or(s0);
            if last.a < 1e-3 * s0.a || last.rho > 1e3 * s0.rho {
                break Termination::SingularApproach;
            }
            return Err(Error::DomainExit {
                t: t0 + sign * tau,
                last,
                reason: "step size underflow".into(),
            });
        }
        let step = match dopri_step(&sys, &y, &k1, h_try, &scale, cfg.rel_tol, cfg.abs_tol) {
            Ok(step) if step.err.is_finite() => step,
            _ => {
                h = 0.25 * h_try;
                continue;
            }
        };
        if step.err > 1.0 {
            h = h_try * (0.9 * step.err.powf(-0.2)).max(0.2);
            continue;
        }
        steps += 1;
        let seg = DenseSegment {
            tau,
            h: h_try,
            coef: step.coef,
        };
        let found = locate_events(&sys, &seg, &y, &step.y1, levels)?;
        let mut stop = None;
        for (theta, kind) in found {
            let yt = if theta >= 1.0 { step.y1 } else { seg.eval(theta) };
            let sample = make_sample(tau + theta * h_try, &yt)?;
            events.push(Event {
                t: sample.t,
                kind,
                state: sample.state,
            });
            if kind != EventKind::AdotZero {
                stop = Some((kind, sample, theta));
                break;
            }
        }
        dense.push(seg);
        if let Some((kind, sample, theta)) = stop {
            if let Some(last) = dense.last_mut() {
                last.h = theta * h_try;
                last.coef = rescale_segment(&seg, theta);
            }
            samples.push(sample);
            break Termination::Stopped(kind);
        }
        // Compensated sum keeps tau accurate across very small steps.
        let inc = h_try - tau_c;
        let next = tau + inc;
        tau_c = (next - tau) - inc;
        tau = next;
        if final_step {
            tau = tau_end;
            tau_c = 0.0;
        }
        y = step.y1;
        k1 = step.k7;
        samples.push(make_sample(tau, &y)?);
        let factor = if step.err == 0.0 {
            5.0
        } else {
            (0.9 * step.err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = h_try * factor;
    };

    if direction == Direction::Backward {
        samples.reverse();
        events.reverse();
    }

    Ok(Trajectory {
        samples,
        events,
        termination,
        direction,
        mode: cfg.mode,
        t0,
        initial: s0,
        params: *params,
        a_min_stop: levels.a_min,
        a_max_stop: levels.a_max,
        rho_max_stop: levels.rho_max,
        dense,
        flat_a3_const: flat_a3,
    })
}

/// Dense coefficients of the sub-segment `[0, theta]` expressed on its own
/// unit interval, so a truncated final step interpolates consistently.
fn rescale_segment(seg: &DenseSegment, theta: f64) -> [[f64; 3]; 5] {
    // Re-fit the quartic through five points of the original interpolant.
    let nodes = [0.0, 0.25, 0.5, 0.75, 1.0];
    let vals: Vec<Vec3> = nodes.iter().map(|&s| seg.eval(s * theta)).collect();
    // Solve for coefficients of p(s) = r1 + s(r2 + (1-s)(r3 + s(r4 + (1-s) r5))).
    let mut out = [[0.0; 3]; 5];
    for i in 0..3 {
        let r1 = vals[0][i];
        let r2 = vals[4][i] - r1;
        // Remaining unknowns r3, r4, r5 from the interior nodes.
        let mut m = [[0.0; 3]; 3];
        let mut rhs = [0.0; 3];
        for (row, &s) in nodes[1..4].iter().enumerate() {
            let w = s * (1.0 - s);
            m[row] = [w, w * s, w * s * (1.0 - s)];
            rhs[row] = vals[row + 1][i] - r1 - s * r2;
        }
        let sol = solve3(m, rhs);
        out[0][i] = r1;
        out[1][i] = r2;
        out[2][i] = sol[0];
        out[3][i] = sol[1];
        out[4][i] = sol[2];
    }
    out
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> [f64; 3] {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    let mut out = [0.0; 3];
    for (col, o) in out.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = b[row];
        }
        *o = det(&mc) / d;
    }
    out
}

fn locate_events<E: Eos + ?Sized>(
    sys: &System<'_, E>,
    seg: &DenseSegment,
    y0: &Vec3,
    y1: &Vec3,
    levels: StopLevels,
) -> Result<Vec<(f64, EventKind)>> {
    let rho_at = |y: &Vec3| -> f64 { sys.state(y).map(|s| s.rho).unwrap_or(f64::INFINITY) };
    let mut out: Vec<(f64, EventKind)> = Vec::new();

    let mut find = |g: &dyn Fn(&Vec3) -> f64, kind: EventKind, g1: f64| -> Result<()> {
        if g1 == 0.0 {
            out.push((1.0, kind));
            return Ok(());
        }
        let theta = brent(|th| g(&seg.eval(th)), 0.0, 1.0, 1e-15, 0.0, 200).or_else(|_| {
            // The interpolant may miss a crossing both endpoints agree on.
            brent(|th| g(&seg.eval(th)), 0.0, 1.0 - 1e-12, 1e-15, 0.0, 200)
        })?;
        out.push((theta, kind));
        Ok(())
    };

    let adot0 = y0[1];
    let adot1 = y1[1];
    if adot0 != 0.0 && adot0 * adot1 <= 0.0 {
        find(&|y: &Vec3| y[1], EventKind::AdotZero, adot1)?;
    }
    if y0[0] > levels.a_min && y1[0] <= levels.a_min {
        find(&|y: &Vec3| y[0] - levels.a_min, EventKind::AMin, y1[0] - levels.a_min)?;
    }
    if y0[0] < levels.a_max && y1[0] >= levels.a_max {
        find(&|y: &Vec3| y[0] - levels.a_max, EventKind::AMax, y1[0] - levels.a_max)?;
    }
    if levels.rho_max.is_finite() {
        let (r0, r1) = (rho_at(y0), rho_at(y1));
        if r0 < levels.rho_max && r1 >= levels.rho_max {
            find(&|y: &Vec3| rho_at(y) - levels.rho_max, EventKind::RhoMax, r1 - levels.rho_max)?;
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

/// Past or future end of the existence interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeDirection {
    Past,
    Future,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularTimeEstimate {
    pub t_star: f64,
    pub direction: TimeDirection,
    pub method: &'static str,
    pub exponent: f64,
    pub prefactor: f64,
    pub uncertainty: f64,
    pub samples_used: usize,
}

/// Minimum number of near-singular samples for [`estimate_singular_time`].
pub const MIN_SINGULAR_SAMPLES: usize = 20;

/// Extrapolates the singular time from the tail `a < 10 · a_min_stop` by
/// fitting `a ≈ C |t − t_star|^p`.
pub fn estimate_singular_time(traj: &Trajectory, direction: TimeDirection) -> Result<SingularTimeEstimate> {
    let expected = match direction {
        TimeDirection::Past => Direction::Backward,
        TimeDirection::Future => Direction::Forward,
    };
    if traj.direction != expected || !traj.singular_approach() {
        return Err(Error::insufficient(format!(
            "trajectory does not approach a singularity in the {direction:?} direction"
        )));
    }
    let threshold = 10.0 * traj.a_min_stop;
    let tail: Vec<&Sample> = traj.samples.iter().filter(|s| s.state.a < threshold).collect();
    if tail.len() < MIN_SINGULAR_SAMPLES {
        return Err(Error::insufficient(format!(
            "{} samples below 10·a_min_stop, need {MIN_SINGULAR_SAMPLES}",
            tail.len()
        )));
    }
    let side = match direction {
        TimeDirection::Past => Side::Before,
        TimeDirection::Future => Side::After,
    };
    let t: Vec<f64> = tail.iter().map(|s| s.t).collect();
    let a: Vec<f64> = tail.iter().map(|s| s.state.a).collect();
    let mut distinct = t.clone();
    distinct.dedup();
    if distinct.len() < MIN_SINGULAR_SAMPLES {
        return state_space_estimate(&tail, direction);
    }
    let full = match fit_power_law_singularity(&t, &a, side) {
        Ok(fit) => fit,
        Err(_) => return state_space_estimate(&tail, direction),
    };
    // Half of the window closest to the singularity.
    let half = tail.len() / 2;
    let (th, ah) = match direction {
        TimeDirection::Past => (&t[..half.max(4)], &a[..half.max(4)]),
        TimeDirection::Future => (&t[t.len() - half.max(4)..], &a[a.len() - half.max(4)..]),
    };
    let near = fit_power_law_singularity(th, ah, side)?;
    Ok(SingularTimeEstimate {
        t_star: full.t_star,
        direction,
        method: "power-law extrapolation",
        exponent: full.exponent,
        prefactor: full.prefactor,
        uncertainty: (full.t_star - near.t_star).abs(),
        samples_used: tail.len(),
    })
}

/// Extrapolation from `(a, adot)` alone, for tails too short to resolve in
/// absolute time. With `a ∝ |t − t*|^p`, `adot ∝ a^(1 − 1/p)` and
/// `t* = t − p a / adot`.
fn state_space_estimate(tail: &[&Sample], direction: TimeDirection) -> Result<SingularTimeEstimate> {
    let ln_a: Vec<f64> = tail.iter().map(|s| s.state.a.ln()).collect();
    let ln_v: Vec<f64> = tail.iter().map(|s| s.state.adot.abs().ln()).collect();
    let fit = linear_fit(&ln_a, &ln_v)?;
    let p = 1.0 / (1.0 - fit.slope);
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::numeric("singular-time exponent", fit.slope));
    }
    let at = |s: &Sample| s.t - p * s.state.a / s.state.adot;
    let deepest = match direction {
        TimeDirection::Past => tail[0],
        TimeDirection::Future => tail[tail.len() - 1],
    };
    let middle = tail[tail.len() / 2];
    let t_star = at(deepest);
    Ok(SingularTimeEstimate {
        t_star,
        direction,
        method: "state-space extrapolation",
        exponent: p,
        prefactor: deepest.state.a / (p * deepest.state.a / deepest.state.adot).abs().powf(p),
        uncertainty: (t_star - at(middle)).abs(),
        samples_used: tail.len(),
    })
}

/// Sup-norm relative deviation of `a(t)` between direct and constrained runs,
/// evaluated on the constrained run's sample times.
pub fn cross_check_modes<E: Eos + ?Sized>(
    params: &CosmoParams,
    model: &E,
    s0: State,
    t_span: (f64, f64),
    cfg: &IntegrationConfig,
) -> Result<f64> {
    let direct = integrate(params, model, s0, t_span, &IntegrationConfig { mode: Mode::Direct, ..*cfg })?;
    let constrained = integrate(
        params,
        model,
        s0,
        t_span,
        &IntegrationConfig {
            mode: Mode::Constrained,
            ..*cfg
        },
    )?;
    let (lo, hi) = direct.span();
    let mut worst: f64 = 0.0;
    for s in &constrained.samples {
        if s.t < lo || s.t > hi {
            continue;
        }
        let d = direct.interpolate(model, s.t)?;
        worst = worst.max(((d.a - s.state.a) / s.state.a).abs());
    }
    Ok(worst)
}

impl State {
    fn reflected_if(&self, flip: bool) -> State {
        if flip {
            self.reflected()
        } else {
            *self
        }
    }
}
