//! Closed-form analysis of pressureless universes with positive curvature.
//!
//! With `a = √(K/Λ) ξ` the Friedmann equation becomes
//! `(dξ/dt)² = c²Λ f_α(ξ) / (3ξ)`, where `f_α(ξ) = ξ³ − 3ξ + 2α` and
//! `α = (4πGρ₁/c²) √(Λ/K³)` with `ρ₁ = ρ a³`. Elapsed time is therefore
//! `c √(Λ/3) (t − t₀) = ∫ √(ξ / f_α(ξ)) dξ`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dynamics::{first_integral, CosmoParams, Sign, State};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_sqrt_endpoints, QuadTolerance};
use crate::scenario::{FutureFate, PastFate, Scenario, Shape};

/// `|α − 1|` below which the double-root case is assumed.
pub const ALPHA_ONE_BAND: f64 = 1e-12;

const TIME_QUAD: QuadTolerance = QuadTolerance {
    abs: 0.0,
    rel: 1e-13,
    max_intervals: 2000,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DustCase {
    /// `α < 1`, `0 < ξ ≤ ξ₁`.
    Case0_0,
    /// `α < 1`, `ξ ≥ ξ₂`.
    Case0_1,
    /// `α = 1`, `ξ > 1`.
    Case1_0,
    /// `α = 1`, `0 < ξ < 1`.
    Case1_1,
    /// `α > 1`.
    Case2,
}

impl DustCase {
    pub fn name(self) -> &'static str {
        match self {
            DustCase::Case0_0 => "Case0_0",
            DustCase::Case0_1 => "Case0_1",
            DustCase::Case1_0 => "Case1_0",
            DustCase::Case1_1 => "Case1_1",
            DustCase::Case2 => "Case2",
        }
    }
}

/// Which positivity interval of `f_α` the solution lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Small universes, `ξ` below the smaller root (or below 1).
    Low,
    /// Large universes, `ξ` above the larger root (or above 1).
    High,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Low => "low",
            Branch::High => "high",
        }
    }
}

pub fn f_alpha(alpha: f64, xi: f64) -> f64 {
    xi * xi * xi - 3.0 * xi + 2.0 * alpha
}

/// Positive roots of `f_α` in increasing order: two for `α < 1`, the double
/// root `[1, 1]` at `α = 1`, none for `α > 1`.
pub fn cubic_roots(alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!("α must be positive and finite, got {alpha}")));
    }
    if (alpha - 1.0).abs() <= ALPHA_ONE_BAND {
        return Ok(vec![1.0, 1.0]);
    }
    if alpha > 1.0 {
        return Ok(Vec::new());
    }
    // ξ = 2 cos φ turns f_α = 0 into cos 3φ = −α.
    let theta = (-alpha).acos();
    let polish = |mut x: f64| {
        for _ in 0..3 {
            let f = f_alpha(alpha, x);
            let df = 3.0 * x * x - 3.0;
            if df == 0.0 || f == 0.0 {
                break;
            }
            x -= f / df;
        }
        x
    };
    let xi2 = polish(2.0 * (theta / 3.0).cos());
    let xi1 = polish(2.0 * ((theta - 2.0 * PI) / 3.0).cos());
    Ok(vec![xi1, xi2])
}

fn alpha_is_one(alpha: f64) -> bool {
    (alpha - 1.0).abs() <= ALPHA_ONE_BAND
}

/// `α = (4πGρ₁/c²) √(Λ/K³)`.
pub fn alpha_of(params: &CosmoParams, rho1: f64, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::domain(format!("the dust case analysis needs K > 0, got {k}")));
    }
    if !(rho1 > 0.0) {
        return Err(Error::domain(format!("ρ₁ must be positive, got {rho1}")));
    }
    if !(params.lambda > 0.0) {
        return Err(Error::domain("the dust case analysis needs Λ > 0"));
    }
    Ok(4.0 * PI * params.g * rho1 / (params.c * params.c) * (params.lambda / (k * k * k)).sqrt())
}

pub fn case_of(alpha: f64, branch: Branch) -> Result<DustCase> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!("α must be positive and finite, got {alpha}")));
    }
    Ok(if alpha_is_one(alpha) {
        match branch {
            Branch::Low => DustCase::Case1_1,
            Branch::High => DustCase::Case1_0,
        }
    } else if alpha < 1.0 {
        match branch {
            Branch::Low => DustCase::Case0_0,
            Branch::High => DustCase::Case0_1,
        }
    } else {
        DustCase::Case2
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DustSetup {
    pub rho1: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub alpha: f64,
    pub roots: Vec<f64>,
}

impl DustSetup {
    pub fn new(params: &CosmoParams, rho1: f64, k: f64) -> Result<Self> {
        let alpha = alpha_of(params, rho1, k)?;
        Ok(DustSetup {
            rho1,
            k,
            alpha,
            roots: cubic_roots(alpha)?,
        })
    }

    /// Reads `ρ₁ = ρa³` and `K` off a dust state.
    pub fn from_state(params: &CosmoParams, s: &State) -> Result<Self> {
        s.validate()?;
        let k = first_integral(params, s).k;
        Self::new(params, s.rho * s.a.powi(3), k)
    }

    /// Length scale `√(K/Λ)` relating `a` and `ξ`.
    pub fn length(&self, params: &CosmoParams) -> f64 {
        (self.k / params.lambda).sqrt()
    }

    pub fn xi_of(&self, params: &CosmoParams, a: f64) -> f64 {
        a / self.length(params)
    }

    pub fn branch_of(&self, xi: f64) -> Branch {
        match self.roots.first() {
            Some(&xi1) if xi <= xi1 => Branch::Low,
            Some(_) => Branch::High,
            None if xi < 1.0 => Branch::Low,
            None => Branch::High,
        }
    }

    pub fn case(&self, branch: Branch) -> Result<DustCase> {
        case_of(self.alpha, branch)
    }

    /// The dust state at `ξ` with the given sign of `adot`. Fails where
    /// `f_α(ξ) < 0`.
    pub fn state_at(&self, params: &CosmoParams, xi: f64, adot_sign: Sign) -> Result<State> {
        if !(xi > 0.0) {
            return Err(Error::domain(format!("ξ must be positive, got {xi}")));
        }
        let f = self.f_factored(xi);
        if f < 0.0 {
            return Err(Error::domain(format!("f_α({xi}) < 0: no real motion there")));
        }
        let a = xi * self.length(params);
        let speed = params.c * (self.k * f / (3.0 * xi)).sqrt();
        let adot = match adot_sign {
            Sign::Positive => speed,
            Sign::Negative => -speed,
            Sign::Zero => 0.0,
        };
        State::new(a, adot, self.rho1 / a.powi(3))
    }

    /// `f_α` in factored form, which keeps relative accuracy near the roots.
    pub fn f_factored(&self, xi: f64) -> f64 {
        match self.roots.as_slice() {
            [r1, r2] => (xi - r1) * (xi - r2) * (xi + r1 + r2),
            _ => f_alpha(self.alpha, xi),
        }
    }
}

/// `c √(Λ/3) (t_to − t_from)` for a solution moving from `xi_from` to
/// `xi_to` with `ξ` increasing (negate for a contracting solution). Both
/// endpoints must lie in one closed positivity interval of `f_α`.
pub fn dust_time_integral(alpha: f64, xi_from: f64, xi_to: f64) -> Result<f64> {
    let roots = cubic_roots(alpha)?;
    if !(xi_from >= 0.0 && xi_to >= 0.0 && xi_from.is_finite() && xi_to.is_finite()) {
        return Err(Error::domain("ξ endpoints must be finite and non-negative"));
    }
    if xi_from == xi_to {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if xi_from < xi_to {
        (xi_from, xi_to, 1.0)
    } else {
        (xi_to, xi_from, -1.0)
    };
    let f: Box<dyn Fn(f64) -> f64> = match roots.as_slice() {
        _ if alpha_is_one(alpha) => {
            if lo <= 1.0 && hi >= 1.0 {
                return Err(Error::domain("interval reaches the double root ξ = 1"));
            }
            Box::new(|x: f64| (x - 1.0) * (x - 1.0) * (x + 2.0))
        }
        &[r1, r2] => {
            let low_ok = hi <= r1;
            let high_ok = lo >= r2;
            if !(low_ok || high_ok) {
                return Err(Error::domain(format!(
                    "interval [{lo}, {hi}] straddles a root of f_α ({r1}, {r2})"
                )));
            }
            Box::new(move |x: f64| ((x - r1) * (x - r2) * (x + r1 + r2)).abs())
        }
        _ => Box::new(move |x: f64| f_alpha(alpha, x)),
    };
    let integrand = |x: f64| {
        let fx = f(x);
        if fx > 0.0 {
            (x / fx).sqrt()
        } else {
            0.0
        }
    };
    let r = integrate_sqrt_endpoints(integrand, lo, hi, TIME_QUAD)?;
    Ok(sign * r.value)
}

/// Antiderivative of `√(ξ/f₁(ξ))` in terms of `x = √(ξ/(ξ+2))`, valid on
/// either side of `ξ = 1` (`x = 1/√3`).
pub fn alpha_one_antiderivative(xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi.is_finite()) || xi == 1.0 {
        return Err(Error::domain(format!("ξ must be positive, finite and ≠ 1, got {xi}")));
    }
    let x = (xi / (xi + 2.0)).sqrt();
    let s3 = 3f64.sqrt();
    let tail = ((1.0 + x) / (1.0 - x)).ln();
    if xi > 1.0 {
        Ok(((s3 * x - 1.0) / (s3 * x + 1.0)).ln() / s3 + tail)
    } else {
        // √((ξ−1)²) = 1 − ξ below the double root
        Ok(-(((1.0 - s3 * x) / (1.0 + s3 * x)).ln() / s3 + tail))
    }
}

/// Closed-form elapsed time for `α = 1`, matching [`dust_time_integral`].
pub fn alpha_one_time_integral(xi_from: f64, xi_to: f64) -> Result<f64> {
    if (xi_from < 1.0) != (xi_to < 1.0) {
        return Err(Error::domain("interval reaches the double root ξ = 1"));
    }
    Ok(alpha_one_antiderivative(xi_to)? - alpha_one_antiderivative(xi_from)?)
}

/// The scenario of a dust universe by case and direction of motion.
///
/// `adot_sign = Zero` means the state sits on a root of `f_α`: a turning
/// point for `α < 1` and the static universe for `α = 1`.
pub fn classify_alpha(alpha: f64, branch: Branch, adot_sign: Sign) -> Result<Scenario> {
    let case = case_of(alpha, branch)?;
    use FutureFate as F;
    use PastFate as P;
    let expanding = match case {
        DustCase::Case0_0 => {
            return Ok(Scenario::new(P::BigBang, Shape::Recollapse, F::BigCrunch));
        }
        DustCase::Case0_1 => {
            return Ok(Scenario::new(P::EternalContraction, Shape::Bounce, F::EternalExpansion));
        }
        DustCase::Case1_0 if adot_sign == Sign::Zero => return Ok(Scenario::STATIC),
        DustCase::Case1_1 if adot_sign == Sign::Zero => return Ok(Scenario::STATIC),
        DustCase::Case2 if adot_sign == Sign::Zero => {
            return Err(Error::domain("adot cannot vanish when α > 1"));
        }
        DustCase::Case1_0 => Scenario::new(P::Steady, Shape::Expanding, F::EternalExpansion),
        DustCase::Case1_1 => Scenario::new(P::BigBang, Shape::Expanding, F::Steady),
        DustCase::Case2 => Scenario::new(P::BigBang, Shape::Expanding, F::EternalExpansion),
    };
    Ok(match adot_sign {
        Sign::Negative => expanding.reflected(),
        _ => expanding,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoastingPoint {
    /// Time of the coasting point measured from the Big Bang.
    pub t_m: f64,
    pub adot_min: f64,
    pub a_m: f64,
}

/// Coasting point of an `α > 1` universe, where `d²a/dt² = 0` and `adot`
/// is minimal.
pub fn lemaitre_coasting(params: &CosmoParams, setup: &DustSetup) -> Result<CoastingPoint> {
    if !(setup.alpha > 1.0) || alpha_is_one(setup.alpha) {
        return Err(Error::domain(format!("coasting point needs α > 1, got {}", setup.alpha)));
    }
    let xi_m = setup.alpha.cbrt();
    let a_m = xi_m * setup.length(params);
    let adot_min = params.c * (setup.k * (xi_m * xi_m - 1.0)).sqrt();
    let t_m = dust_time_integral(setup.alpha, 0.0, xi_m)? / params.de_sitter_rate();
    Ok(CoastingPoint { t_m, adot_min, a_m })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DustScanRow {
    pub alpha: f64,
    pub branch: Branch,
    pub case: DustCase,
    pub xi1: Option<f64>,
    pub xi2: Option<f64>,
    pub scenario: Scenario,
}

/// One row per `(α, branch)` pair; `Case2` appears once per requested branch.
pub fn dust_scan(alphas: &[f64], branches: &[Branch], adot_sign: Sign) -> Result<Vec<DustScanRow>> {
    let mut rows = Vec::with_capacity(alphas.len() * branches.len());
    for &alpha in alphas {
        let roots = cubic_roots(alpha)?;
        for &branch in branches {
            rows.push(DustScanRow {
                alpha,
                branch,
                case: case_of(alpha, branch)?,
                xi1: roots.first().copied(),
                xi2: roots.get(1).copied(),
                scenario: classify_alpha(alpha, branch, adot_sign)?,
            });
        }
    }
    Ok(rows)
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_bracket_one() {
        for &alpha in &[0.01, 0.3, 0.5, 0.9, 0.999] {
            let r = cubic_roots(alpha).unwrap();
            assert_eq!(r.len(), 2);
            assert!(0.0 < r[0] && r[0] < 1.0 && 1.0 < r[1]);
            for x in r {
                assert!(f_alpha(alpha, x).abs() < 1e-13);
            }
        }
        assert!(cubic_roots(2.0).unwrap().is_empty());
        assert_eq!(cubic_roots(1.0).unwrap(), vec![1.0, 1.0]);
        assert!(cubic_roots(0.0).is_err());
    }

    #[test]
    fn alpha_scales_linearly_in_rho1() {
        let p = CosmoParams::natural(1.0).unwrap();
        let a1 = alpha_of(&p, 0.3, 0.7).unwrap();
        let a2 = alpha_of(&p, 0.6, 0.7).unwrap();
        assert!((a2 / a1 - 2.0).abs() < 1e-15);
        assert!((alpha_of(&p, 1.0 / (4.0 * PI), 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(alpha_of(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn straddling_interval_rejected() {
        let r = cubic_roots(0.5).unwrap();
        assert!(dust_time_integral(0.5, 0.5 * r[0], 0.5 * (r[0] + r[1])).is_err());
        assert!(dust_time_integral(1.0, 0.5, 1.5).is_err());
    }

    #[test]
    fn time_integral_is_additive() {
        let whole = dust_time_integral(2.0, 0.1, 3.0).unwrap();
        let parts = dust_time_integral(2.0, 0.1, 1.2).unwrap() + dust_time_integral(2.0, 1.2, 3.0).unwrap();
        assert!((whole - parts).abs() < 1e-13 * whole);
        assert_eq!(dust_time_integral(2.0, 3.0, 0.1).unwrap(), -whole);
    }

    #[test]
    fn scenario_table() {
        let s = |a, b, sign| classify_alpha(a, b, sign).unwrap().composite();
        assert_eq!(s(0.5, Branch::Low, Sign::Positive), "BB ↗↘ BC");
        assert_eq!(s(0.5, Branch::High, Sign::Negative), "EC ↘↗ EE");
        assert_eq!(s(1.0, Branch::High, Sign::Positive), "AS ↗ EE");
        assert_eq!(s(1.0, Branch::High, Sign::Negative), "EC ↘ AS");
        assert_eq!(s(1.0, Branch::Low, Sign::Positive), "BB ↗ AS");
        assert_eq!(s(1.0, Branch::Low, Sign::Negative), "AS ↘ BC");
        assert_eq!(s(2.0, Branch::Low, Sign::Positive), "BB ↗ EE");
        assert_eq!(s(2.0, Branch::High, Sign::Negative), "EC ↘ BC");
        assert!(classify_alpha(2.0, Branch::Low, Sign::Zero).is_err());
        assert_eq!(s(1.0, Branch::Low, Sign::Zero), "STATIC");
    }

    #[test]
    fn coasting_point_matches_static_radius() {
        let p = CosmoParams::natural(1.0).unwrap();
        let setup = DustSetup::new(&p, 2.0 / (4.0 * PI), 1.0).unwrap();
        assert!((setup.alpha - 2.0).abs() < 1e-15);
        let cp = lemaitre_coasting(&p, &setup).unwrap();
        let expected = (4.0 * PI * setup.rho1 / p.lambda).cbrt();
        assert!((cp.a_m / expected - 1.0).abs() < 1e-14);
        assert!(cp.adot_min > 0.0 && cp.t_m > 0.0);
    }

    #[test]
    fn alpha_one_closed_form_is_positive_on_both_sides() {
        for (lo, hi) in [(0.1, 0.5), (0.6, 0.95), (1.2, 4.0)] {
            let closed = alpha_one_time_integral(lo, hi).unwrap();
            let quad = dust_time_integral(1.0, lo, hi).unwrap();
            assert!(closed > 0.0);
            assert!((closed - quad).abs() < 1e-11 * closed);
        }
    }
}
