//! Adaptive Gauss–Kronrod quadrature (7-point Gauss / 15-point Kronrod pair)
//! with global bisection of the worst interval.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadTolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for QuadTolerance {
    fn default() -> Self {
        QuadTolerance {
            abs: 0.0,
            rel: 1e-13,
            max_intervals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Segment {
        lo,
        hi,
        value,
        error,
    }
}

/// Integrates `f` over `[a, b]`. `b < a` yields the negated integral.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: QuadTolerance) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("quadrature limits must be finite"));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let first = kronrod15(&f, a, b);
    let mut evaluations = 15;
    if !first.value.is_finite() {
        return Err(Error::numeric("non-finite integrand", f64::NAN));
    }
    let mut segments = vec![first];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
            });
        }
        if segments.len() >= tol.max_intervals {
            return Err(Error::numeric(
                format!("quadrature did not converge in {} intervals", tol.max_intervals),
                error,
            ));
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.lo + seg.hi);
        if mid == seg.lo || mid == seg.hi {
            // Interval cannot be split further; accept what we have.
            let value: f64 = segments.iter().map(|s| s.value).sum::<f64>() + seg.value;
            let error: f64 = segments.iter().map(|s| s.error).sum::<f64>() + seg.error;
            return Err(Error::numeric("quadrature interval underflow", error.max(value.abs() * f64::EPSILON)));
        }
        let left = kronrod15(&f, seg.lo, mid);
        let right = kronrod15(&f, mid, seg.hi);
        evaluations += 30;
        if !(left.value.is_finite() && right.value.is_finite()) {
            return Err(Error::numeric("non-finite integrand", f64::NAN));
        }
        segments.push(left);
        segments.push(right);
    }
}

/// Integrates over `[lo, hi]` (with `lo < hi`) after removing possible
/// inverse-square-root endpoint singularities: each half of the interval is
/// mapped through `x = endpoint ± s²`, so `dx = 2s ds` cancels a `1/sqrt`
/// blow-up at the endpoint.
pub fn integrate_sqrt_endpoints<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: QuadTolerance,
) -> Result<QuadResult> {
    if !(lo < hi) {
        return Err(Error::domain("integrate_sqrt_endpoints requires lo < hi"));
    }
    let mid = 0.5 * (lo + hi);
    let span = (mid - lo).sqrt();
    let lower = integrate(|s| 2.0 * s * f(lo + s * s), 0.0, span, tol)?;
    let upper = integrate(|s| 2.0 * s * f(hi - s * s), 0.0, (hi - mid).sqrt(), tol)?;
    Ok(QuadResult {
        value: lower.value + upper.value,
        error: lower.error + upper.error,
        evaluations: lower.evaluations + upper.evaluations,
    })
}
