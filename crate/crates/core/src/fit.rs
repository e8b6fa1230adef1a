//! Least-squares helpers shared by the singular-time estimator and the
//! asymptotic fits.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub rms: f64,
}

/// Ordinary least squares `y ≈ intercept + slope·x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LineFit> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return Err(Error::insufficient("linear fit needs at least two points"));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    if sxx == 0.0 {
        return Err(Error::insufficient("linear fit abscissae are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| (yi - intercept - slope * xi).powi(2))
        .sum();
    Ok(LineFit {
        slope,
        intercept,
        rms: (sse / nf).sqrt(),
    })
}

/// Which side of the data the singular time lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `t_star` precedes every sample: `y ≈ C (t − t_star)^p`.
    Before,
    /// `t_star` follows every sample: `y ≈ C (t_star − t)^p`.
    After,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub t_star: f64,
    pub exponent: f64,
    pub prefactor: f64,
    /// RMS residual of `ln y`.
    pub rms: f64,
}

fn fit_at(t: &[f64], y_log: &[f64], t_star: f64, side: Side) -> Option<LineFit> {
    let x: Vec<f64> = t
        .iter()
        .map(|&ti| match side {
            Side::Before => ti - t_star,
            Side::After => t_star - ti,
        })
        .map(f64::ln)
        .collect();
    if x.iter().any(|v| !v.is_finite()) {
        return None;
    }
    linear_fit(&x, y_log).ok()
}

/// Fits `y ≈ C |t − t_star|^p` with `t_star` beyond the data on `side`.
///
/// For fixed `t_star` the problem is linear in `(ln C, p)`, so the residual
/// is minimised over `ln(distance from the nearest sample)` alone: a coarse
/// log-spaced scan followed by golden-section refinement.
pub fn fit_power_law_singularity(t: &[f64], y: &[f64], side: Side) -> Result<PowerLawFit> {
    if t.len() < 4 || t.len() != y.len() {
        return Err(Error::insufficient("power-law fit needs at least four samples"));
    }
    if y.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::domain("power-law fit needs positive ordinates"));
    }
    let y_log: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let (t_lo, t_hi) = t
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let span = t_hi - t_lo;
    if !(span > 0.0) {
        return Err(Error::insufficient("power-law fit needs distinct sample times"));
    }
    let edge = match side {
        Side::Before => t_lo,
        Side::After => t_hi,
    };
    let t_star_of = |log_gap: f64| match side {
        Side::Before => edge - log_gap.exp(),
        Side::After => edge + log_gap.exp(),
    };
    let cost = |log_gap: f64| -> f64 {
        fit_at(t, &y_log, t_star_of(log_gap), side)
            .map(|f| f.rms)
            .unwrap_or(f64::INFINITY)
    };

    let gap_floor = (span * 1e-12).max(edge.abs() * 4.0 * f64::EPSILON).max(f64::MIN_POSITIVE);
    let (lo, hi) = (gap_floor.ln(), (span * 1e4).ln());
    let n_scan = 400;
    let mut best = (f64::INFINITY, lo);
    for i in 0..=n_scan {
        let g = lo + (hi - lo) * i as f64 / n_scan as f64;
        let c = cost(g);
        if c < best.0 {
            best = (c, g);
        }
    }
    let step = (hi - lo) / n_scan as f64;
    let (mut a, mut b) = (best.1 - step, best.1 + step);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (cost(x1), cost(x2));
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = cost(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = cost(x2);
        }
    }
    let g = 0.5 * (a + b);
    let t_star = t_star_of(g);
    let line = fit_at(t, &y_log, t_star, side)
        .ok_or_else(|| Error::numeric("power-law fit degenerate at optimum", f64::NAN))?;
    Ok(PowerLawFit {
        t_star,
        exponent: line.slope,
        prefactor: line.intercept.exp(),
        rms: line.rms,
    })
}

/// Power-law fit with the singular time held fixed.
pub fn fit_power_law_fixed(t: &[f64], y: &[f64], t_star: f64, side: Side) -> Result<PowerLawFit> {
    if y.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::domain("power-law fit needs positive ordinates"));
    }
    let y_log: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let line = fit_at(t, &y_log, t_star, side)
        .ok_or_else(|| Error::domain("singular time inside the sample range"))?;
    Ok(PowerLawFit {
        t_star,
        exponent: line.slope,
        prefactor: line.intercept.exp(),
        rms: line.rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_fit_exact() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 - 0.5 * v).collect();
        let f = linear_fit(&x, &y).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-15);
        assert!((f.intercept - 2.0).abs() < 1e-15);
        assert!(f.rms < 1e-15);
    }

    #[test]
    fn recovers_synthetic_power_law_before() {
        let t_star = -0.731;
        let t: Vec<f64> = (0..40).map(|i| t_star + 1e-6 * 1.3f64.powi(i)).collect();
        let y: Vec<f64> = t.iter().map(|&ti| 2.5 * (ti - t_star).powf(2.0 / 3.0)).collect();
        let f = fit_power_law_singularity(&t, &y, Side::Before).unwrap();
        assert!((f.t_star - t_star).abs() < 1e-12, "{}", f.t_star);
        assert!((f.exponent - 2.0 / 3.0).abs() < 1e-9);
        assert!((f.prefactor / 2.5 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn recovers_synthetic_power_law_after() {
        let t_star = 4.2;
        let t: Vec<f64> = (0..30).rev().map(|i| t_star - 1e-5 * 1.4f64.powi(i)).collect();
        let y: Vec<f64> = t.iter().map(|&ti| 0.1 * (t_star - ti).powf(-2.0)).collect();
        let f = fit_power_law_singularity(&t, &y, Side::After).unwrap();
        assert!((f.t_star - t_star).abs() < 1e-11);
        assert!((f.exponent + 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_short_input() {
        assert!(fit_power_law_singularity(&[0.0, 1.0], &[1.0, 2.0], Side::Before).is_err());
    }
}
