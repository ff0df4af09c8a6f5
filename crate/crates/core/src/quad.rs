//! Adaptive Gauss–Kronrod (7, 15) quadrature for complex-valued integrands.

use num_complex::Complex64;

use crate::error::{CoreError, Result};

#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-13, rel: 1e-11, max_intervals: 4000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

/// One 15-point Kronrod panel with the embedded 7-point Gauss error estimate.
pub fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let err = ((kron - gauss) * h).norm();
    (kron * h, err)
}

/// ∫ₐᵇ f by global adaptive bisection of the panel with the largest error.
pub fn integrate<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if b < a {
        let e = integrate(f, b, a, tol)?;
        return Ok(Estimate { value: -e.value, ..e });
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    let mut evaluations = 15;
    loop {
        if err <= tol.abs.max(tol.rel * total.norm()) {
            return Ok(Estimate { value: total, error: err, evaluations });
        }
        if panels.len() >= tol.max_intervals {
            return Err(CoreError::NonConvergence { what: "adaptive quadrature", estimate: err });
        }
        let (i, _) = panels.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).expect("at least one panel");
        let (lo, hi, pv, pe) = panels.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(CoreError::NonConvergence { what: "adaptive quadrature", estimate: err });
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evaluations += 30;
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
        if panels.len() % 64 == 0 {
            total = panels.iter().map(|p| p.2).sum();
            err = panels.iter().map(|p| p.3).sum();
        }
    }
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<(f64, f64)> {
    let e = integrate(|x| Complex64::new(f(x), 0.0), a, b, tol)?;
    Ok((e.value.re, e.error))
}
