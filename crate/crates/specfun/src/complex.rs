//! Non-negative real order, complex argument.
//!
//! The lower half plane is reached by conjugation and the left half plane by
//! the rotation z → z e^{iπ}. In the closed first quadrant: the real axis uses
//! the Temme/Steed path, the imaginary axis uses I and K, small |z| uses the
//! ascending series for J with H^{(1)} from K_ν(−iz), and large |z| uses the Hankel expansion with forward recurrence in the order.
//! The switch sits at |z| = 12 for Im z < 2 and at |z| = 14 above.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::gamma::{cos_pi, ln_gamma_signed, sin_pi, temme_gammas};
use crate::{real, SpecFunError};

const SERIES_RADIUS: f64 = 12.0;
const SERIES_RADIUS_OFF_AXIS: f64 = 14.0;
const NEAR_AXIS_IM: f64 = 2.0;
const INTEGER_BAND: f64 = 1e-6;
const RICHARDSON: [f64; 4] = [8.0 / 5.0, -4.0 / 5.0, 8.0 / 35.0, -1.0 / 35.0];
const FPMIN: f64 = 1e-300;
const I: C = C::new(0.0, 1.0);

#[derive(Debug, Clone, Copy)]
pub(crate) struct Cyl {
    pub j: C,
    pub y: C,
    pub h1: C,
    pub h2: C,
}

impl Cyl {
    fn conj(self) -> Self {
        Cyl { j: self.j.conj(), y: self.y.conj(), h1: self.h2.conj(), h2: self.h1.conj() }
    }

    fn finite(self, nu: f64, z: C) -> Result<Self, SpecFunError> {
        let ok = [self.j, self.y, self.h1, self.h2].iter().all(|v| v.re.is_finite() && v.im.is_finite());
        if ok {
            Ok(self)
        } else {
            Err(SpecFunError::Overflow { nu, x: z.norm() })
        }
    }
}

/// Replace a negative zero imaginary part by +0 so that arg z ∈ (−π, π].
pub(crate) fn canonical(z: C) -> C {
    if z.im == 0.0 {
        C::new(z.re, 0.0)
    } else {
        z
    }
}

pub(crate) fn unit_pi(nu: f64) -> C {
    C::new(cos_pi(nu), sin_pi(nu))
}

/// J, Y, H^{(1)}, H^{(2)} for ν ≥ 0 and z ≠ 0.
pub(crate) fn cylinder(nu: f64, z: C) -> Result<Cyl, SpecFunError> {
    let z = canonical(z);
    if z.im < 0.0 {
        return cylinder(nu, z.conj()).map(Cyl::conj);
    }
    if z.re < 0.0 {
        let r = cylinder(nu, canonical(-z))?;
        let e = unit_pi(nu);
        let j = e * r.j;
        let h1 = -e.conj() * r.h2;
        let y = -I * (h1 - j);
        return Cyl { j, y, h1, h2: 2.0 * j - h1 }.finite(nu, z);
    }
    if z.im == 0.0 {
        let c = real::jy(nu, z.re)?;
        let (j, y) = (C::new(c.j, 0.0), C::new(c.y, 0.0));
        return Ok(Cyl { j, y, h1: C::new(c.j, c.y), h2: C::new(c.j, -c.y) });
    }
    if z.re == 0.0 {
        return imaginary_axis(nu, z.im);
    }
    let radius = if z.im < NEAR_AXIS_IM { SERIES_RADIUS } else { SERIES_RADIUS_OFF_AXIS };
    if z.norm() >= radius {
        large(nu, z)
    } else {
        small(nu, z)
    }
}

fn imaginary_axis(nu: f64, x: f64) -> Result<Cyl, SpecFunError> {
    let m = real::ik_scaled(nu, x)?;
    let half = unit_pi(0.5 * nu);
    let j = half * (m.i * x.exp());
    let h1 = -I * (2.0 / PI) * half.conj() * (m.k * (-x).exp());
    let y = -I * (h1 - j);
    Cyl { j, y, h1, h2: 2.0 * j - h1 }.finite(nu, C::new(0.0, x))
}

fn small(nu: f64, z: C) -> Result<Cyl, SpecFunError> {
    let j = series_j(nu, z)?;
    let h1 = hankel1_via_k(nu, z)?;
    let y = -I * (h1 - j);
    Cyl { j, y, h1, h2: 2.0 * j - h1 }.finite(nu, z)
}

fn large(nu: f64, z: C) -> Result<Cyl, SpecFunError> {
    let (h1, h2, h1_next) = hankel_recurred(nu, z);
    if nu <= z.norm() {
        let j = 0.5 * (h1 + h2);
        let y = (h1 - h2) / (2.0 * I);
        return Cyl { j, y, h1, h2 }.finite(nu, z);
    }
    let f = cf1_ratio(nu, z)?;
    let h1p = nu / z * h1 - h1_next;
    let j = 2.0 * I / (PI * z * (h1p - f * h1));
    let y = -I * (h1 - j);
    Cyl { j, y, h1, h2: 2.0 * j - h1 }.finite(nu, z)
}

/// Ascending series for J_v(z), principal branch. v must not be a negative integer.
pub(crate) fn series_j(v: f64, z: C) -> Result<C, SpecFunError> {
    let half = z * 0.5;
    let ln_half = C::new(half.norm().ln(), half.arg());
    let (lg, sg) = ln_gamma_signed(v + 1.0)?;
    let t0 = sg * (v * ln_half - lg).exp();
    let q = -half * half;
    let mut sum = t0;
    let mut t = t0;
    let hn = half.norm();
    for j in 1..1000 {
        let fj = j as f64;
        t *= q / (fj * (v + fj));
        sum += t;
        if t.norm() <= 1e-17 * sum.norm() && fj > hn {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NoConvergence("ascending series"))
}

fn y_plain(v: f64, z: C, jv: C) -> Result<C, SpecFunError> {
    let jm = series_j(-v, z)?;
    Ok((jv * cos_pi(v) - jm) / sin_pi(v))
}

/// Base step of the integer-order limit. Rounding noise in the series grows
/// with |z| and favours a wider stencil there.
fn fd_step(z: C) -> f64 {
    if z.norm() < 6.0 {
        0.01
    } else {
        0.04
    }
}

/// Y by the connection formula; inside the integer band by a Richardson-
/// extrapolated symmetric difference of the connection formula around n,
/// eliminating the h², h⁴ and h⁶ terms.
fn y_connection(nu: f64, z: C, jnu: C) -> Result<C, SpecFunError> {
    let n = nu.round();
    if (nu - n).abs() >= INTEGER_BAND {
        return y_plain(nu, z, jnu);
    }
    let at = |v: f64| -> Result<C, SpecFunError> { y_plain(v, z, series_j(v, z)?) };
    let mut mid = C::new(0.0, 0.0);
    let mut slope = C::new(0.0, 0.0);
    for (i, w) in RICHARDSON.into_iter().enumerate() {
        let h = fd_step(z) * (i + 1) as f64;
        let (p, m) = (at(n + h)?, at(n - h)?);
        mid += w * 0.5 * (p + m);
        slope += w * (p - m) / (2.0 * h);
    }
    Ok(mid + (nu - n) * slope)
}

/// (K_ν(w) e^w, K_{ν+1}(w) e^w) for ν ≥ 0 and Re w ≥ 0, w ≠ 0: Temme's
/// series for |w| < 2, Steed's second continued fraction otherwise, then
/// forward recurrence from the order in [−1/2, 1/2).
pub(crate) fn k_scaled(nu: f64, w: C) -> Result<(C, C), SpecFunError> {
    let nl = (nu + 0.5).floor();
    let xmu = nu - nl;
    let xi = 1.0 / w;
    let xi2 = 2.0 * xi;
    let (mut kmu, mut k1) = if w.norm() < 2.0 {
        let x2 = 0.5 * w;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < 1e-300 { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.norm() < 1e-300 { C::new(1.0, 0.0) } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = C::new(1.0, 0.0);
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut done = false;
        for i in 1..10_000 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu * xmu);
            c *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.norm() < 1e-17 * sum.norm() {
                done = true;
                break;
            }
        }
        if !done {
            return Err(SpecFunError::NoConvergence("Temme series for K"));
        }
        let ew = w.exp();
        (sum * ew, sum1 * xi2 * ew)
    } else {
        let mut b = 2.0 * (1.0 + w);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = C::new(0.0, 0.0);
        let mut q2 = C::new(1.0, 0.0);
        let a1 = 0.25 - xmu * xmu;
        let mut q = C::new(a1, 0.0);
        let mut c = C::new(a1, 0.0);
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut done = false;
        for i in 1..100_000 {
            let fi = i as f64;
            a -= 2.0 * fi;
            c = -a * c / (fi + 1.0);
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).norm() < 1e-17 {
                done = true;
                break;
            }
        }
        if !done {
            return Err(SpecFunError::NoConvergence("Steed continued fraction for K"));
        }
        h *= a1;
        let kmu = (PI / (2.0 * w)).sqrt() / s;
        (kmu, kmu * (xmu + w + 0.5 - h) * xi)
    };
    for i in 1..=(nl as usize) {
        let next = (xmu + i as f64) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = next;
    }
    Ok((kmu, k1))
}

/// H^{(1)}_ν(z) = (2/iπ) e^{−iπν/2} K_ν(−iz) for Im z ≥ 0.
fn hankel1_via_k(nu: f64, z: C) -> Result<C, SpecFunError> {
    let w = -I * z;
    let (k, _) = k_scaled(nu, w)?;
    Ok(-I * (2.0 / PI) * unit_pi(0.5 * nu).conj() * k * (-w).exp())
}

/// Hankel expansion at order ν₀ ∈ [0, 2), Re z ≥ 0.
fn hankel_asymptotic(nu: f64, z: C) -> (C, C) {
    let mu4 = 4.0 * nu * nu;
    let zi = 1.0 / z;
    let mut t = C::new(1.0, 0.0);
    let mut ik = C::new(1.0, 0.0);
    let mut s1 = t;
    let mut s2 = t;
    let mut prev = f64::INFINITY;
    for k in 1..400 {
        let odd = (2 * k - 1) as f64;
        t *= (mu4 - odd * odd) / (8.0 * k as f64) * zi;
        ik *= I;
        let tn = t.norm();
        if tn > prev {
            break;
        }
        s1 += ik * t;
        s2 += ik.conj() * t;
        if tn < 1e-17 {
            break;
        }
        prev = tn;
    }
    let omega = z - (0.5 * nu + 0.25) * PI;
    let pref = (2.0 / (PI * z)).sqrt();
    (pref * (I * omega).exp() * s1, pref * (-I * omega).exp() * s2)
}

/// (H^{(1)}_ν, H^{(2)}_ν, H^{(1)}_{ν+1}) by forward recurrence from the
/// fractional part of ν.
fn hankel_recurred(nu: f64, z: C) -> (C, C, C) {
    let n = nu.floor();
    let nu0 = nu - n;
    let (mut a1, mut a2) = hankel_asymptotic(nu0, z);
    let (mut b1, mut b2) = hankel_asymptotic(nu0 + 1.0, z);
    for k in 1..=(n as usize) {
        let c = 2.0 * (nu0 + k as f64) / z;
        let n1 = c * b1 - a1;
        let n2 = c * b2 - a2;
        a1 = b1;
        a2 = b2;
        b1 = n1;
        b2 = n2;
    }
    (a1, a2, b1)
}

/// J'_ν/J_ν from the first continued fraction.
fn cf1_ratio(nu: f64, z: C) -> Result<C, SpecFunError> {
    let zi = 1.0 / z;
    let tiny = C::new(FPMIN, 0.0);
    let mut h = nu * zi;
    if h.norm() < FPMIN {
        h = tiny;
    }
    let mut b = 2.0 * nu * zi;
    let mut d = C::new(0.0, 0.0);
    let mut c = h;
    for _ in 0..10_000_000 {
        b += 2.0 * zi;
        d = b - d;
        if d.norm() < FPMIN {
            d = tiny;
        }
        c = b - 1.0 / c;
        if c.norm() < FPMIN {
            c = tiny;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 2e-16 {
            return Ok(h);
        }
    }
    Err(SpecFunError::NoConvergence("complex J continued fraction"))
}

/// J + iY through the series region regardless of where z lies; used to
/// cross-check the dedicated imaginary-axis route.
pub(crate) fn hankel1_series_route(nu: f64, z: C) -> Result<C, SpecFunError> {
    let z = canonical(z);
    let j = series_j(nu, z)?;
    let y = y_connection(nu, z, j)?;
    Ok(j + I * y)
}

/// (H^{(1)}, H^{(2)}) from the Hankel expansion and recurrence; exposed for
/// the overlap consistency check at the switchover radius.
pub(crate) fn hankel_large_route(nu: f64, z: C) -> (C, C) {
    let (h1, h2, _) = hankel_recurred(nu, canonical(z));
    (h1, h2)
}
