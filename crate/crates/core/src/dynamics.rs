//! The reduced first-order system for `(a, da/dt, rho)`, the Friedmann
//! first integral, and the sign conditions that decide past and future fates.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::eos::Eos;
use crate::error::{Error, Result};

/// Physical constants. Λ may be zero; everything else must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CosmoParams {
    pub c: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub lambda: f64,
}

impl CosmoParams {
    pub fn new(c: f64, g: f64, lambda: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("c must be positive, got {c}")));
        }
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::domain(format!("G must be positive, got {g}")));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!("Λ must be non-negative, got {lambda}")));
        }
        Ok(CosmoParams { c, g, lambda })
    }

    /// `c = G = 1` with the given Λ.
    pub fn natural(lambda: f64) -> Result<Self> {
        Self::new(1.0, 1.0, lambda)
    }

    /// `c √Λ`, the e-folding rate of perturbations of the static universe.
    pub fn static_rate(&self) -> f64 {
        self.c * self.lambda.sqrt()
    }

    /// `c √(Λ/3)`, the de Sitter expansion rate.
    pub fn de_sitter_rate(&self) -> f64 {
        self.c * (self.lambda / 3.0).sqrt()
    }

    /// Density of the static dust universe, `c²Λ / (4πG)`.
    pub fn static_dust_density(&self) -> f64 {
        self.c * self.c * self.lambda / (4.0 * PI * self.g)
    }
}

/// Instantaneous state; physical states have `a > 0` and `rho > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub a: f64,
    pub adot: f64,
    pub rho: f64,
}

impl State {
    pub fn new(a: f64, adot: f64, rho: f64) -> Result<Self> {
        let s = State { a, adot, rho };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::domain(format!("scale factor must be positive, got {}", self.a)));
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(Error::domain(format!("density must be positive, got {}", self.rho)));
        }
        if !self.adot.is_finite() {
            return Err(Error::domain("expansion rate must be finite"));
        }
        Ok(())
    }

    /// The time-reflected state `(a, -adot, rho)`.
    pub fn reflected(&self) -> State {
        State {
            adot: -self.adot,
            ..*self
        }
    }
}

/// Time derivative of a [`State`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateRate {
    pub da: f64,
    pub dadot: f64,
    pub drho: f64,
}

/// `(da/dt)² − (8πG/3 rho + c²Λ/3) a²` and the curvature constant `K = −X/c²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstIntegral {
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "K")]
    pub k: f64,
}

/// `d²a/dt²` divided by `a`.
fn acceleration_factor(params: &CosmoParams, rho: f64, p: f64) -> f64 {
    let c2 = params.c * params.c;
    -4.0 * PI * params.g / 3.0 * (rho + 3.0 * p / c2) + c2 * params.lambda / 3.0
}

pub fn rhs<E: Eos + ?Sized>(params: &CosmoParams, model: &E, s: &State) -> Result<StateRate> {
    s.validate()?;
    let p = model.pressure(s.rho)?;
    let c2 = params.c * params.c;
    Ok(StateRate {
        da: s.adot,
        dadot: acceleration_factor(params, s.rho, p) * s.a,
        drho: -3.0 * (s.rho + p / c2) * s.adot / s.a,
    })
}

/// `8πG/3 rho + c²Λ/3`
pub(crate) fn friedmann_potential(params: &CosmoParams, rho: f64) -> f64 {
    8.0 * PI * params.g / 3.0 * rho + params.c * params.c * params.lambda / 3.0
}

pub fn first_integral(params: &CosmoParams, s: &State) -> FirstIntegral {
    let x = s.adot * s.adot - friedmann_potential(params, s.rho) * s.a * s.a;
    FirstIntegral {
        x,
        k: -x / (params.c * params.c),
    }
}

pub fn friedmann_k<E: Eos + ?Sized>(params: &CosmoParams, _model: &E, s: &State) -> Result<f64> {
    s.validate()?;
    let c2 = params.c * params.c;
    Ok((friedmann_potential(params, s.rho) * s.a * s.a - s.adot * s.adot) / c2)
}

/// Zero-band widths, relative to the natural scale of each quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroBand {
    pub rel: f64,
}

impl Default for ZeroBand {
    fn default() -> Self {
        ZeroBand { rel: 1e-12 }
    }
}

/// Sign of a quantity, with a tolerance band around zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: f64, band: f64) -> Sign {
        if value.abs() <= band {
            Sign::Zero
        } else if value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionFlags {
    /// `4πG(rho + 3P/c²) − c²Λ`; `>= 0` means `d²a/dt² <= 0`.
    pub past_crit: f64,
    pub past_crit_sign: Sign,
    #[serde(rename = "K")]
    pub k: f64,
    pub k_sign: Sign,
    pub adot: f64,
    pub adot_sign: Sign,
}

impl ConditionFlags {
    /// Big-Bang condition `4πG(rho + 3P/c²) >= c²Λ`.
    pub fn big_bang_condition(&self) -> bool {
        self.past_crit_sign != Sign::Negative
    }

    /// Expansion condition `4πG(rho + 3P/c²) <= c²Λ`.
    pub fn expansion_condition(&self) -> bool {
        self.past_crit_sign != Sign::Positive
    }

    /// Escape condition `K <= 0`.
    pub fn escape_condition(&self) -> bool {
        self.k_sign != Sign::Positive
    }

    /// `adot = 0` and `4πG(rho + 3P/c²) = c²Λ`.
    pub fn is_static(&self) -> bool {
        self.adot_sign == Sign::Zero && self.past_crit_sign == Sign::Zero
    }
}

pub fn condition_flags<E: Eos + ?Sized>(
    params: &CosmoParams,
    model: &E,
    s: &State,
    band: ZeroBand,
) -> Result<ConditionFlags> {
    s.validate()?;
    let c2 = params.c * params.c;
    let p = model.pressure(s.rho)?;
    let gravity = 4.0 * PI * params.g * (s.rho + 3.0 * p / c2);
    let vacuum = c2 * params.lambda;
    let past_crit = gravity - vacuum;
    let crit_scale = if vacuum > 0.0 { vacuum } else { gravity };

    let potential = friedmann_potential(params, s.rho) * s.a * s.a;
    let k = (potential - s.adot * s.adot) / c2;

    Ok(ConditionFlags {
        past_crit,
        past_crit_sign: Sign::of(past_crit, band.rel * crit_scale),
        k,
        k_sign: Sign::of(k, band.rel * potential / c2),
        adot: s.adot,
        adot_sign: Sign::of(s.adot, band.rel * potential.sqrt()),
    })
}

/// Modified total mass `(4π/3) a³ K^(−3/2) rho_flat`, constant along solutions.
pub fn flat_mass<E: Eos + ?Sized>(_params: &CosmoParams, model: &E, s: &State, k: f64) -> Result<f64> {
    s.validate()?;
    if !(k > 0.0) {
        return Err(Error::domain(format!("modified mass needs K > 0, got {k}")));
    }
    Ok(4.0 * PI / 3.0 * s.a.powi(3) * k.powf(-1.5) * model.rho_flat(s.rho)?)
}

/// Unmodified total mass `(4π/3) a³ K^(−3/2) rho`.
pub fn total_mass(s: &State, k: f64) -> Result<f64> {
    s.validate()?;
    if !(k > 0.0) {
        return Err(Error::domain(format!("total mass needs K > 0, got {k}")));
    }
    Ok(4.0 * PI / 3.0 * s.a.powi(3) * k.powf(-1.5) * s.rho)
}
