use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use cosmofate::asymptotics::{fit_bigbang, fit_latetime, fit_static_approach, AsymptoticFit};
use cosmofate::classifier::{classify as classify_state, stability_probe};
use cosmofate::dust_oracle::{dust_scan as scan, linspace, Branch};
use cosmofate::dynamics::Sign;
use cosmofate::eos::{check_a0_a1_a2, log_grid, Eos, EosKind};
use cosmofate::io::{write_dust_scan_csv, write_plot_columns, write_trajectory_csv, PlotQuantity};
use cosmofate::{integrate, CosmoParams, EosModel, IntegrationConfig, Mode, State, Trajectory};
use serde_json::{json, Value};

use crate::output::{emit, write_atomic};
use crate::{
    BranchArg, ClassifyArgs, DustScanArgs, EosCheckArgs, FitArgs, Format, InitialArgs, IntegrationArgs, ModeArg,
    ModelArgs, ParamArgs, Preset, RegimeArg, SignArg, SimulateArgs, StabilityArgs,
};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Model(cosmofate::Error),
    Io(PathBuf, io::Error),
}

impl Failure {
    /// 64 usage, 2 domain, 3 numeric, 74 I/O.
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Model(cosmofate::Error::Parse(_)) => 64,
            Failure::Model(e) if e.is_domain() => 2,
            Failure::Model(_) => 3,
            Failure::Io(..) => 74,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage: {msg}"),
            Failure::Model(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<cosmofate::Error> for Failure {
    fn from(e: cosmofate::Error) -> Self {
        Failure::Model(e)
    }
}

type Outcome = Result<(), Failure>;

fn io_at(path: Option<&Path>) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(path.map(Path::to_path_buf).unwrap_or_else(|| "<stdout>".into()), e)
}

fn params_of(args: &ParamArgs) -> Result<CosmoParams, Failure> {
    let (c, g) = match args.preset {
        Some(Preset::Natural) => (1.0, 1.0),
        None => (args.c, args.g),
    };
    Ok(CosmoParams::new(c, g, args.lambda)?)
}

fn model_of(args: &ModelArgs) -> Result<(CosmoParams, EosModel), Failure> {
    let params = params_of(&args.params)?;
    let model = EosModel::parse(&args.eos, params.c)?;
    Ok((params, model))
}

fn state_of(args: &InitialArgs) -> Result<State, Failure> {
    Ok(State::new(args.a0, args.adot0, args.rho0)?)
}

fn config_of(args: &IntegrationArgs) -> Result<IntegrationConfig, Failure> {
    let cfg = IntegrationConfig {
        rel_tol: args.rel_tol,
        abs_tol: args.abs_tol,
        a_min_stop: args.a_min_stop,
        a_max_stop: args.a_max_stop,
        rho_max_stop: args.rho_max_stop,
        mode: match args.mode {
            ModeArg::Direct => Mode::Direct,
            ModeArg::Constrained => Mode::Constrained,
        },
        max_steps: args.max_steps,
        max_step: None,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn write_json(path: Option<&Path>, value: &Value) -> Outcome {
    emit(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)
    })
    .map_err(io_at(path))
}

fn trajectory_json(traj: &Trajectory, model: &EosModel) -> Value {
    json!({
        "eos": model.to_string(),
        "params": traj.params,
        "direction": traj.direction,
        "mode": traj.mode,
        "termination": traj.termination,
        "events": traj.events,
        "samples": traj.samples,
    })
}

fn plot_path(prefix: &Path, what: PlotQuantity) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(format!("_{}.dat", what.suffix()));
    PathBuf::from(name)
}

pub fn simulate(args: &SimulateArgs) -> Outcome {
    let (params, model) = model_of(&args.model)?;
    let s0 = state_of(&args.initial)?;
    let cfg = config_of(&args.integration)?;
    let traj = integrate(&params, &model, s0, (args.t0, args.t1), &cfg)?;
    let out = args.out.as_deref();
    match args.format {
        Format::Csv => emit(out, |w| write_trajectory_csv(&traj, w)).map_err(io_at(out))?,
        Format::Json => write_json(out, &trajectory_json(&traj, &model))?,
    }
    if let Some(prefix) = &args.plot_data {
        for what in PlotQuantity::ALL {
            let path = plot_path(prefix, what);
            write_atomic(&path, |w| write_plot_columns(&traj, what, w)).map_err(io_at(Some(&path)))?;
        }
    }
    Ok(())
}

pub fn classify(args: &ClassifyArgs) -> Outcome {
    let (params, model) = model_of(&args.model)?;
    let s0 = state_of(&args.initial)?;
    let report = classify_state(&params, &model, s0)?;
    write_json(args.out.as_deref(), &report.to_json())
}

/// Parses `lo:hi:n`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("grid '{spec}' is not of the form lo:hi:n"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !(lo.is_finite() && hi.is_finite()) {
        return Err(bad());
    }
    Ok(linspace(lo, hi, n))
}

pub fn dust_scan(args: &DustScanArgs) -> Outcome {
    let alphas = parse_grid(&args.alpha)?;
    let branches: &[Branch] = match args.branch {
        BranchArg::Low => &[Branch::Low],
        BranchArg::High => &[Branch::High],
        BranchArg::Both => &[Branch::Low, Branch::High],
    };
    let sign = match args.sign {
        SignArg::Positive => Sign::Positive,
        SignArg::Negative => Sign::Negative,
    };
    let rows = scan(&alphas, branches, sign)?;
    let out = args.out.as_deref();
    match args.format {
        Format::Csv => emit(out, |w| write_dust_scan_csv(&rows, w)).map_err(io_at(out)),
        Format::Json => write_json(out, &json!(rows)),
    }
}

pub fn eos_check(args: &EosCheckArgs) -> Outcome {
    let model = EosModel::parse(&args.eos, args.c)?;
    if args.points < 2 || !(args.rho_min > 0.0 && args.rho_max > args.rho_min) {
        return Err(Failure::Usage("need 0 < rho-min < rho-max and at least 2 points".into()));
    }
    let r = model.reference_density();
    let grid = log_grid(args.rho_min * r, args.rho_max * r, args.points);
    let report = check_a0_a1_a2(&model, &grid)?;
    write_json(args.out.as_deref(), &json!(report))
}

/// Effective adiabatic index where the density diverges.
fn high_density_gamma(kind: EosKind) -> f64 {
    match kind {
        EosKind::Dust => 1.0,
        EosKind::GammaLaw { gamma } => gamma,
        EosKind::PolytropicTail { .. } | EosKind::NeutronFermi { .. } => 4.0 / 3.0,
    }
}

fn fits_json(fits: &[AsymptoticFit]) -> Value {
    Value::Array(fits.iter().map(AsymptoticFit::to_json).collect())
}

pub fn fit(args: &FitArgs) -> Outcome {
    let (params, model) = model_of(&args.model)?;
    let s0 = state_of(&args.initial)?;
    let cfg = config_of(&args.integration)?;
    let fits = match args.regime {
        RegimeArg::Bigbang => {
            let traj = integrate(&params, &model, s0, (0.0, f64::NEG_INFINITY), &cfg)?;
            let (a, rho) = fit_bigbang(&traj, &model, high_density_gamma(model.kind()), &params)?;
            vec![a, rho]
        }
        RegimeArg::Latetime => {
            let traj = integrate(&params, &model, s0, (0.0, f64::INFINITY), &cfg)?;
            let (a, rho) = fit_latetime(&traj, &model, &params)?;
            vec![a, rho]
        }
        RegimeArg::Static => {
            if !(params.lambda > 0.0) {
                return Err(Failure::Model(cosmofate::Error::Domain("static regime needs Λ > 0".into())));
            }
            let t1 = args.horizon / params.static_rate();
            let traj = integrate(&params, &model, s0, (0.0, t1), &cfg)?;
            vec![fit_static_approach(&traj, &model, &params)?]
        }
    };
    write_json(args.out.as_deref(), &fits_json(&fits))
}

pub fn stability(args: &StabilityArgs) -> Outcome {
    let params = params_of(&args.params)?;
    let model = EosModel::dust(params.c)?;
    let probe = stability_probe(&params, &model, args.epsilon)?;
    write_json(args.out.as_deref(), &json!(probe))
}
