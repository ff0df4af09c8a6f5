use std::f64::consts::PI;

use crate::SpecFunError;

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Taylor coefficients of 1/Γ(1+x) about x = 0.
#[allow(clippy::excessive_precision)]
const RGAMMA_TAYLOR: [f64; 25] = [
    1.0,
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -1.250_493_482_142_670_657e-6,
    1.133_027_231_981_695_882e-6,
    -2.056_338_416_977_607_104e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_511e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783e-14,
    -5.348_122_539_423_017_982e-15,
    1.226_778_628_238_260_790e-15,
];

/// sin(πx), exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    let (y, sign) = if r >= 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let y = if y > 0.5 { 1.0 - y } else { y };
    sign * (PI * y).sin()
}

/// cos(πx), exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    let (y, sign) = if r >= 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    if y == 0.5 {
        return 0.0;
    }
    if y < 0.5 {
        sign * (PI * y).cos()
    } else {
        -sign * (PI * (1.0 - y)).cos()
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(x: f64) -> f64 {
    let xm = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (xm + i as f64);
    }
    a
}

fn gamma_right(x: f64) -> f64 {
    let t = x - 0.5 + LANCZOS_G;
    let half = t.powf(0.5 * (x - 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(x)
}

fn ln_gamma_right(x: f64) -> f64 {
    let t = x - 0.5 + LANCZOS_G;
    0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// Γ(x) for real x.
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::NonFinite { re: x, im: 0.0 });
    }
    if is_pole(x) {
        return Err(SpecFunError::Pole(x));
    }
    if x < 0.5 {
        let g = gamma(1.0 - x)?;
        return Ok(PI / (sin_pi(x) * g));
    }
    if x > 171.6 {
        return Err(SpecFunError::Overflow { nu: x, x });
    }
    if x == x.floor() {
        return Ok((2..x as u32).fold(1.0, |acc, n| acc * n as f64));
    }
    Ok(gamma_right(x))
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64), SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::NonFinite { re: x, im: 0.0 });
    }
    if is_pole(x) {
        return Err(SpecFunError::Pole(x));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let (lg, sg) = ln_gamma_signed(1.0 - x)?;
        return Ok((PI.ln() - s.abs().ln() - lg, s.signum() * sg));
    }
    Ok((ln_gamma_right(x), 1.0))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if x <= 0.0 {
        return Err(SpecFunError::Pole(x));
    }
    ln_gamma_signed(x).map(|(v, _)| v)
}

/// 1/Γ(x), zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_pole(x) {
        return 0.0;
    }
    if (-0.5..=0.5).contains(&(x - 1.0)) {
        return rgamma_near_one(x - 1.0);
    }
    match ln_gamma_signed(x) {
        Ok((lg, sg)) => sg * (-lg).exp(),
        Err(_) => 0.0,
    }
}

/// 1/Γ(1+e) from its Taylor series, |e| ≤ 1/2.
pub(crate) fn rgamma_near_one(e: f64) -> f64 {
    RGAMMA_TAYLOR.iter().rev().fold(0.0, |acc, c| acc * e + c)
}

/// The Temme auxiliaries for |mu| ≤ 1/2:
/// gam1 = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ), gam2 = (1/Γ(1−μ) + 1/Γ(1+μ))/2,
/// plus 1/Γ(1+μ) and 1/Γ(1−μ).
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let m2 = mu * mu;
    let mut even = 0.0;
    let mut odd = 0.0;
    for k in (0..RGAMMA_TAYLOR.len()).rev() {
        if k % 2 == 0 {
            even = even * m2 + RGAMMA_TAYLOR[k];
        } else {
            odd = odd * m2 + RGAMMA_TAYLOR[k];
        }
    }
    let gam1 = -odd;
    let gam2 = even;
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}
