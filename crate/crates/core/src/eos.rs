//! Barotropic equations of state `P(rho)` and the effective conserved
//! density `rho_flat = exp ∫ drho / (rho + P/c²)`.
//!
//! Every model satisfies, for all `rho > 0`:
//! `P >= 0`, `0 <= dP/drho < c²`, and `P -> 0` as `rho -> 0`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadTolerance};
use crate::roots::invert_increasing;

/// Interface consumed by the dynamics, integrator and classifier.
pub trait Eos: Send + Sync {
    /// Speed of light the model was built with.
    fn c(&self) -> f64;
    fn pressure(&self, rho: f64) -> Result<f64>;
    fn dp_drho(&self, rho: f64) -> Result<f64>;
    fn rho_flat(&self, rho: f64) -> Result<f64>;
    fn rho_from_flat(&self, rho_flat: f64) -> Result<f64>;
    /// Density scale of the model (anchor of `rho_flat` when it is not
    /// anchored at zero density).
    fn reference_density(&self) -> f64 {
        1.0
    }
    /// `true` when `P = O(rho^gamma)`, `gamma > 1`, near zero density, so
    /// that `rho_flat / rho -> 1` as `rho -> 0`.
    fn polytropic_at_low_density(&self) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EosKind {
    /// `P = 0`.
    Dust,
    /// `P = (gamma - 1) c² rho`, `1 <= gamma < 2`.
    GammaLaw { gamma: f64 },
    /// `P ≈ coef · rho^gamma` at low density, stiffening to `P ≈ c² rho / 3`
    /// at high density: `P = (c²/3) rho u / (1 + u)` with
    /// `u = 3 coef rho^(gamma-1) / c²`.
    PolytropicTail { gamma: f64, coef: f64 },
    /// Degenerate relativistic Fermi gas with amplitude `A`:
    /// `P = A c⁵ ∫₀^ζ q⁴/√(1+q²) dq`, `rho = 3 A c³ ∫₀^ζ q² √(1+q²) dq`.
    NeutronFermi { amplitude: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EosModel {
    kind: EosKind,
    c: f64,
}

/// Dimensionless Fermi momentum of the neutron model.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct FermiParam(f64);

impl FermiParam {
    pub fn new(zeta: f64) -> Result<Self> {
        if zeta >= 0.0 && zeta.is_finite() {
            Ok(FermiParam(zeta))
        } else {
            Err(Error::domain(format!("Fermi parameter must be >= 0, got {zeta}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

const FERMI_QUAD: QuadTolerance = QuadTolerance {
    abs: 0.0,
    rel: 1e-13,
    max_intervals: 400,
};

/// `∫₀^ζ q² √(1+q²) dq`
fn fermi_density_integral(zeta: f64) -> Result<f64> {
    Ok(integrate(|q| q * q * (1.0 + q * q).sqrt(), 0.0, zeta, FERMI_QUAD)?.value)
}

/// `∫₀^ζ q⁴ / √(1+q²) dq`
fn fermi_pressure_integral(zeta: f64) -> Result<f64> {
    Ok(integrate(|q| q.powi(4) / (1.0 + q * q).sqrt(), 0.0, zeta, FERMI_QUAD)?.value)
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("density must be positive and finite, got {rho}")))
    }
}

impl EosModel {
    pub fn dust(c: f64) -> Result<Self> {
        Self::new(EosKind::Dust, c)
    }

    pub fn gamma_law(gamma: f64, c: f64) -> Result<Self> {
        Self::new(EosKind::GammaLaw { gamma }, c)
    }

    pub fn polytropic_tail(gamma: f64, coef: f64, c: f64) -> Result<Self> {
        Self::new(EosKind::PolytropicTail { gamma, coef }, c)
    }

    pub fn neutron_fermi(amplitude: f64, c: f64) -> Result<Self> {
        Self::new(EosKind::NeutronFermi { amplitude }, c)
    }

    pub fn new(kind: EosKind, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("c must be positive, got {c}")));
        }
        match kind {
            EosKind::Dust => {}
            EosKind::GammaLaw { gamma } => {
                if !(1.0..2.0).contains(&gamma) {
                    return Err(Error::domain(format!("gamma-law index must satisfy 1 <= Γ < 2, got {gamma}")));
                }
            }
            EosKind::PolytropicTail { gamma, coef } => {
                // dP/drho <= (c²/3)(1 + (gamma-1)/4) < c² requires gamma < 9.
                if !(gamma > 1.0 && gamma < 9.0) {
                    return Err(Error::domain(format!("polytropic index must satisfy 1 < γ < 9, got {gamma}")));
                }
                if !(coef > 0.0 && coef.is_finite()) {
                    return Err(Error::domain(format!("polytropic coefficient must be positive, got {coef}")));
                }
            }
            EosKind::NeutronFermi { amplitude } => {
                if !(amplitude > 0.0 && amplitude.is_finite()) {
                    return Err(Error::domain(format!("Fermi amplitude must be positive, got {amplitude}")));
                }
            }
        }
        Ok(EosModel { kind, c })
    }

    /// Parses `dust`, `gamma:<Γ>`, `poly:<γ>:<coef>` or `neutron:<A>`.
    pub fn parse(spec: &str, c: f64) -> Result<Self> {
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let num = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number '{s}' in EOS spec '{spec}'")))
        };
        match parts.as_slice() {
            ["dust"] => Self::dust(c),
            ["gamma", g] => Self::gamma_law(num(g)?, c),
            ["poly", g, k] => Self::polytropic_tail(num(g)?, num(k)?, c),
            ["neutron", a] => Self::neutron_fermi(num(a)?, c),
            _ => Err(Error::Parse(format!(
                "unknown EOS spec '{spec}' (expected dust, gamma:<Γ>, poly:<γ>:<coef>, neutron:<A>)"
            ))),
        }
    }

    pub fn kind(&self) -> EosKind {
        self.kind
    }

    /// Same model with a different speed of light.
    pub fn with_c(&self, c: f64) -> Result<Self> {
        Self::new(self.kind, c)
    }

    fn poly_u(&self, gamma: f64, coef: f64, rho: f64) -> f64 {
        3.0 * coef * rho.powf(gamma - 1.0) / (self.c * self.c)
    }

    fn neutron_scale(&self, amplitude: f64) -> f64 {
        amplitude * self.c.powi(3)
    }

    /// `rho(ζ)` for the neutron model.
    pub fn fermi_density(&self, zeta: FermiParam) -> Result<f64> {
        match self.kind {
            EosKind::NeutronFermi { amplitude } => {
                Ok(3.0 * self.neutron_scale(amplitude) * fermi_density_integral(zeta.0)?)
            }
            _ => Err(Error::domain("fermi_density requires the neutron model")),
        }
    }

    /// `P(ζ)` for the neutron model.
    pub fn fermi_pressure(&self, zeta: FermiParam) -> Result<f64> {
        match self.kind {
            EosKind::NeutronFermi { amplitude } => {
                Ok(amplitude * self.c.powi(5) * fermi_pressure_integral(zeta.0)?)
            }
            _ => Err(Error::domain("fermi_pressure requires the neutron model")),
        }
    }

    /// Inverts `rho(ζ)` by safeguarded Newton iteration.
    pub fn fermi_param(&self, rho: f64) -> Result<FermiParam> {
        check_rho(rho)?;
        let amplitude = match self.kind {
            EosKind::NeutronFermi { amplitude } => amplitude,
            _ => return Err(Error::domain("fermi_param requires the neutron model")),
        };
        let scale = 3.0 * self.neutron_scale(amplitude);
        let u = rho / self.neutron_scale(amplitude);
        let mut zeta = if u < 1.0 { u.cbrt() } else { (0.75 * u).powf(0.25) };
        let (mut lo, mut hi) = (0.0, 2.0 * zeta + 1.0);
        let mut residual = f64::INFINITY;
        for _ in 0..100 {
            let f = scale * fermi_density_integral(zeta)? - rho;
            residual = f / rho;
            if residual.abs() < 1e-15 {
                return Ok(FermiParam(zeta));
            }
            if f > 0.0 {
                hi = zeta;
            } else {
                lo = zeta;
            }
            let df = scale * zeta * zeta * (1.0 + zeta * zeta).sqrt();
            let mut next = zeta - f / df;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = 0.5 * (lo + hi);
            }
            if (next - zeta).abs() <= 1e-15 * zeta {
                return Ok(FermiParam(next));
            }
            zeta = next;
        }
        Err(Error::numeric("Fermi parameter inversion did not converge", residual))
    }
}

impl Eos for EosModel {
    fn c(&self) -> f64 {
        self.c
    }

    fn pressure(&self, rho: f64) -> Result<f64> {
        check_rho(rho)?;
        let c2 = self.c * self.c;
        Ok(match self.kind {
            EosKind::Dust => 0.0,
            EosKind::GammaLaw { gamma } => (gamma - 1.0) * c2 * rho,
            EosKind::PolytropicTail { gamma, coef } => {
                let u = self.poly_u(gamma, coef, rho);
                c2 * rho * u / (3.0 * (1.0 + u))
            }
            EosKind::NeutronFermi { .. } => self.fermi_pressure(self.fermi_param(rho)?)?,
        })
    }

    fn dp_drho(&self, rho: f64) -> Result<f64> {
        check_rho(rho)?;
        let c2 = self.c * self.c;
        Ok(match self.kind {
            EosKind::Dust => 0.0,
            EosKind::GammaLaw { gamma } => (gamma - 1.0) * c2,
            EosKind::PolytropicTail { gamma, coef } => {
                let u = self.poly_u(gamma, coef, rho);
                c2 / 3.0 * (u / (1.0 + u) + (gamma - 1.0) * u / ((1.0 + u) * (1.0 + u)))
            }
            EosKind::NeutronFermi { .. } => {
                // (dP/dζ)/(drho/dζ) = c² ζ⁴/√(1+ζ²) / (3 ζ² √(1+ζ²))
                let z = self.fermi_param(rho)?.0;
                c2 * z * z / (3.0 * (1.0 + z * z))
            }
        })
    }

    fn rho_flat(&self, rho: f64) -> Result<f64> {
        check_rho(rho)?;
        Ok(match self.kind {
            EosKind::Dust => rho,
            // anchored at rho = 1
            EosKind::GammaLaw { gamma } => rho.powf(1.0 / gamma),
            EosKind::PolytropicTail { gamma, coef } => {
                let u = self.poly_u(gamma, coef, rho);
                rho * (-(4.0 / 3.0 * u).ln_1p() / (4.0 * (gamma - 1.0))).exp()
            }
            EosKind::NeutronFermi { amplitude } => {
                // rho + P/c² = A c³ ζ³ √(1+ζ²), hence d ln rho_flat = 3 dζ/ζ.
                let z = self.fermi_param(rho)?.0;
                self.neutron_scale(amplitude) * z * z * z
            }
        })
    }

    fn rho_from_flat(&self, value: f64) -> Result<f64> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::domain(format!(
                "effective density must be positive and finite, got {value}"
            )));
        }
        match self.kind {
            EosKind::Dust => Ok(value),
            EosKind::GammaLaw { gamma } => Ok(value.powf(gamma)),
            EosKind::PolytropicTail { .. } => {
                // rho_flat <= rho, and rho_flat/rho -> 1 at low density.
                let guess = value;
                let rho = invert_increasing(
                    |r| self.rho_flat(r).unwrap_or(f64::NAN),
                    value,
                    guess * 0.5,
                    guess * 2.0,
                    1e-13,
                )?;
                Ok(rho)
            }
            EosKind::NeutronFermi { amplitude } => {
                let z = (value / self.neutron_scale(amplitude)).cbrt();
                self.fermi_density(FermiParam(z))
            }
        }
    }

    fn reference_density(&self) -> f64 {
        match self.kind {
            EosKind::Dust | EosKind::GammaLaw { .. } => 1.0,
            EosKind::PolytropicTail { gamma, coef } => {
                (self.c * self.c / (3.0 * coef)).powf(1.0 / (gamma - 1.0))
            }
            EosKind::NeutronFermi { amplitude } => self.neutron_scale(amplitude),
        }
    }

    fn polytropic_at_low_density(&self) -> bool {
        !matches!(self.kind, EosKind::GammaLaw { gamma } if gamma > 1.0)
    }
}

impl fmt::Display for EosModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EosKind::Dust => write!(f, "dust"),
            EosKind::GammaLaw { gamma } => write!(f, "gamma:{gamma}"),
            EosKind::PolytropicTail { gamma, coef } => write!(f, "poly:{gamma}:{coef}"),
            EosKind::NeutronFermi { amplitude } => write!(f, "neutron:{amplitude}"),
        }
    }
}

/// Result of [`check_a0_a1_a2`].
#[derive(Debug, Clone, Serialize)]
pub struct EosCheckReport {
    pub model: String,
    pub rho_min: f64,
    pub rho_max: f64,
    pub decades: f64,
    /// `P >= 0` and `0 <= dP/drho < c²` at every grid point.
    pub a0_pointwise: bool,
    /// Grid points where the pointwise conditions fail.
    pub a0_violations: Vec<f64>,
    /// Pressure decreases towards the low end of the grid.
    pub a0_vanishes_at_zero: bool,
    /// `P ≡ 0` on the grid.
    pub degenerate: bool,
    /// `1 + P/(c² rho)` at the high end, extrapolated when the remainder
    /// decays as a power law.
    pub gamma_high: Option<f64>,
    /// Fitted remainder exponent of `P/(c² rho)` at the high end.
    pub sigma_high: Option<f64>,
    pub a1_holds: Option<bool>,
    /// Local log-log slope of `P` at the low end.
    pub gamma_low: Option<f64>,
    pub a2_holds: bool,
}

/// Checks the admissibility conditions on a density grid spanning at least
/// six decades and measures the high-density index Γ, its remainder
/// exponent σ, and the low-density polytropic index γ.
pub fn check_a0_a1_a2(model: &EosModel, rho_grid: &[f64]) -> Result<EosCheckReport> {
    let mut grid: Vec<f64> = rho_grid.to_vec();
    if grid.len() < 3 {
        return Err(Error::insufficient("EOS check needs at least three grid points"));
    }
    for &r in &grid {
        check_rho(r)?;
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let (rho_min, rho_max) = (grid[0], grid[grid.len() - 1]);
    let decades = (rho_max / rho_min).log10();
    if decades < 6.0 - 1e-9 {
        return Err(Error::domain(format!("EOS check grid must span 6 decades, spans {decades:.2}")));
    }
    let c2 = model.c * model.c;
    let mut pressures = Vec::with_capacity(grid.len());
    let mut violations = Vec::new();
    for &r in &grid {
        let p = model.pressure(r)?;
        let dp = model.dp_drho(r)?;
        if !(p >= 0.0 && dp >= 0.0 && dp < c2) {
            violations.push(r);
        }
        pressures.push(p);
    }
    let degenerate = pressures.iter().all(|&p| p == 0.0);
    let n = grid.len();

    let (gamma_high, sigma_high) = if degenerate {
        (None, None)
    } else {
        let w: Vec<f64> = (n - 3..n).map(|i| pressures[i] / (c2 * grid[i])).collect();
        let x: Vec<f64> = (n - 3..n).map(|i| grid[i].ln()).collect();
        let s1 = (w[1] - w[0]) / (x[1] - x[0]);
        let s2 = (w[2] - w[1]) / (x[2] - x[1]);
        let (m1, m2) = (0.5 * (x[0] + x[1]), 0.5 * (x[1] + x[2]));
        let flat = s2.abs() <= 1e-13 * w[2].abs().max(f64::MIN_POSITIVE);
        if !flat && s1 * s2 > 0.0 && s2.abs() < s1.abs() {
            let sigma = -(s2 / s1).ln() / (m2 - m1);
            let s_top = s2 * (-sigma * (x[2] - m2)).exp();
            (Some(1.0 + w[2] + s_top / sigma), Some(sigma))
        } else {
            (Some(1.0 + w[2]), None)
        }
    };
    let a1_holds = gamma_high.map(|g| (1.0..2.0).contains(&g));

    let gamma_low = if degenerate || pressures[0] <= 0.0 || pressures[1] <= 0.0 {
        None
    } else {
        Some((pressures[1] / pressures[0]).ln() / (grid[1] / grid[0]).ln())
    };
    let a2_holds = match gamma_low {
        None => degenerate,
        Some(g) => g > 1.0 + 1e-6,
    };
    let a0_vanishes_at_zero = degenerate || gamma_low.is_some_and(|g| g > 0.0);

    Ok(EosCheckReport {
        model: model.to_string(),
        rho_min,
        rho_max,
        decades,
        a0_pointwise: violations.is_empty(),
        a0_violations: violations,
        a0_vanishes_at_zero,
        degenerate,
        gamma_high,
        sigma_high,
        a1_holds,
        gamma_low,
        a2_holds,
    })
}

/// `n` log-spaced densities on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
