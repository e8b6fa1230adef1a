//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket `[a, b]`.
///
/// Terminates when the bracket width falls below `xtol_rel * |x| + xtol_abs`.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    xtol_abs: f64,
    xtol_rel: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::domain(format!(
            "root not bracketed: f({a}) = {fa}, f({b}) = {fb}"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * (xtol_abs + xtol_rel * b.abs());
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::numeric("Brent iteration limit reached", fb.abs()))
}

/// Solves `g(x) = target` for a strictly increasing `g` on `(0, inf)`,
/// working in `ln x`. The bracket `[x_lo, x_hi]` is widened geometrically
/// until it encloses the solution or leaves `[1e-300, 1e300]`.
pub fn invert_increasing<F: FnMut(f64) -> f64>(
    mut g: F,
    target: f64,
    x_lo: f64,
    x_hi: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(target.is_finite()) {
        return Err(Error::domain("inversion target must be finite"));
    }
    // Work in u = ln x throughout so the bracket checks see exactly the
    // values Brent will evaluate.
    let (mut u_lo, mut u_hi) = (x_lo.ln(), x_hi.ln());
    let step = 1e3f64.ln();
    let mut expansions = 0;
    while g(u_lo.exp()) > target {
        u_lo -= step;
        expansions += 1;
        if u_lo.exp() < 1e-300 || expansions > 200 {
            return Err(Error::domain(format!("value {target} below achievable image")));
        }
    }
    while g(u_hi.exp()) < target {
        u_hi += step;
        expansions += 1;
        if u_hi.exp() > 1e300 || expansions > 200 {
            return Err(Error::domain(format!("value {target} above achievable image")));
        }
    }
    let u = brent(|u| g(u.exp()) - target, u_lo, u_hi, rel_tol * 1e-2, 0.0, 200)?;
    Ok(u.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| x * x * x - 2.0, 0.0, 2.0, 1e-15, 0.0, 100).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(matches!(
            brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0, 100),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn invert_widens_bracket() {
        let x = invert_increasing(|x| x.powf(0.75), 1e5, 1.0, 2.0, 1e-13).unwrap();
        assert!((x / 1e5f64.powf(4.0 / 3.0) - 1.0).abs() < 1e-12);
    }
}
