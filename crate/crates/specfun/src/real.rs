//! Real order ν ≥ 0 and real argument x > 0: Temme's series below x = 2,
//! Steed's continued fractions above, with CF1 supplying the order ratio.

use std::f64::consts::PI;

use crate::gamma::temme_gammas;
use crate::SpecFunError;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 10_000_000;
const XMIN: f64 = 2.0;
const RESCALE: f64 = 1e250;

/// J, Y and their derivatives at real order and argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealCylinder {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

/// I, K and their derivatives. In the scaled form I and I' carry a factor
/// e^{−x} and K, K' carry e^{x}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealModified {
    pub i: f64,
    pub k: f64,
    pub ip: f64,
    pub kp: f64,
}

fn no_conv(what: &'static str) -> SpecFunError {
    SpecFunError::NoConvergence(what)
}

pub(crate) fn jy(nu: f64, x: f64) -> Result<RealCylinder, SpecFunError> {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let nl = if x < XMIN { (nu + 0.5) as usize } else { (nu - x + 1.5).max(0.0) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν/J_ν
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(no_conv("J continued fraction"));
    }

    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            rjl1 /= RESCALE;
            rjp1 /= RESCALE;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(no_conv("Temme series for Y"));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            let fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            let den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            let temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(no_conv("Hankel continued fraction"));
        }
        let gam = (p - f) / q;
        rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let y = rymu;
    let yp = nu * xi * rymu - ry1;
    if !y.is_finite() || !yp.is_finite() {
        return Err(SpecFunError::Overflow { nu, x });
    }
    Ok(RealCylinder { j, y, jp, yp })
}

/// Scaled modified Bessel functions: e^{−x}I_ν, e^{x}K_ν and derivatives.
pub(crate) fn ik_scaled(nu: f64, x: f64) -> Result<RealModified, SpecFunError> {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1: I'_ν/I_ν
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(no_conv("I continued fraction"));
    }

    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let mut ril1 = ril;
    let mut rip1 = ripl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if ril.abs() > RESCALE {
            ril /= RESCALE;
            ripl /= RESCALE;
            ril1 /= RESCALE;
            rip1 /= RESCALE;
        }
    }
    let f = ripl / ril;

    let (mut rkmu, mut rk1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(no_conv("Temme series for K"));
        }
        let ex = x.exp();
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(no_conv("K continued fraction"));
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }

    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    let i = rimu * ril1 / ril;
    let ip = rimu * rip1 / ril;
    for n in 1..=nl {
        let rktemp = (xmu + n as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    let k = rkmu;
    let kp = nu * xi * rkmu - rk1;
    if !k.is_finite() || !kp.is_finite() {
        return Err(SpecFunError::Overflow { nu, x });
    }
    Ok(RealModified { i, k, ip, kp })
}

pub(crate) fn ik(nu: f64, x: f64) -> Result<RealModified, SpecFunError> {
    let s = ik_scaled(nu, x)?;
    let ex = x.exp();
    let emx = (-x).exp();
    let out = RealModified { i: s.i * ex, k: s.k * emx, ip: s.ip * ex, kp: s.kp * emx };
    if !out.i.is_finite() || !out.ip.is_finite() {
        return Err(SpecFunError::Overflow { nu, x });
    }
    Ok(out)
}
