//! Cylinder functions of real order ν > −1 and gamma functions.
//!
//! Orders in (−1, 0) are reduced to positive orders through the connection
//! formulas. Complex arguments use the principal branch, arg z ∈ (−π, π].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod complex;
mod gamma;
mod real;

use num_complex::Complex64;

pub use gamma::{cos_pi, gamma, ln_gamma, ln_gamma_signed, rgamma, sin_pi, EULER_GAMMA};
pub use real::{RealCylinder, RealModified};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("order {0} is outside (-1, inf)")]
    Order(f64),
    #[error("argument {re} + {im}i is not finite")]
    NonFinite { re: f64, im: f64 },
    #[error("function is singular at z = 0")]
    Singular,
    #[error("argument must be positive, got {0}")]
    NonPositive(f64),
    #[error("arg z = {0} is off the sheet 0 < arg z <= pi")]
    Sheet(f64),
    #[error("gamma function pole at {0}")]
    Pole(f64),
    #[error("overflow at order {nu}, |z| = {x}")]
    Overflow { nu: f64, x: f64 },
    #[error("no convergence in {0}")]
    NoConvergence(&'static str),
}

/// A validated cylinder-function order, ν > −1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CylinderOrder(f64);

impl CylinderOrder {
    pub fn new(nu: f64) -> Result<Self, SpecFunError> {
        if nu.is_finite() && nu > -1.0 {
            Ok(Self(nu))
        } else {
            Err(SpecFunError::Order(nu))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A finite complex argument with its principal argument stored, so that
/// fractional powers are single valued.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg {
    z: Complex64,
    arg: f64,
}

impl ComplexArg {
    pub fn new(z: Complex64) -> Result<Self, SpecFunError> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(SpecFunError::NonFinite { re: z.re, im: z.im });
        }
        let z = complex::canonical(z);
        Ok(Self { z, arg: z.arg() })
    }

    /// Restricts to the resolvent sheet 0 < arg z ≤ π.
    pub fn on_resolvent_sheet(z: Complex64) -> Result<Self, SpecFunError> {
        let a = Self::new(z)?;
        if a.z == Complex64::new(0.0, 0.0) || a.arg <= 0.0 {
            return Err(SpecFunError::Sheet(a.arg));
        }
        Ok(a)
    }

    pub fn value(&self) -> Complex64 {
        self.z
    }

    pub fn arg(&self) -> f64 {
        self.arg
    }

    pub fn is_zero(&self) -> bool {
        self.z.re == 0.0 && self.z.im == 0.0
    }

    /// z^p with the stored argument.
    pub fn powf(&self, p: f64) -> Complex64 {
        if self.is_zero() {
            return if p == 0.0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
        }
        Complex64::from_polar(self.z.norm().powf(p), p * self.arg)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.z.norm().ln(), self.arg)
    }
}

/// J, Y and their derivatives at complex argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cylinder {
    pub j: Complex64,
    pub y: Complex64,
    pub jp: Complex64,
    pub yp: Complex64,
}

impl Cylinder {
    pub fn h1(&self) -> Complex64 {
        self.j + Complex64::i() * self.y
    }

    pub fn h1p(&self) -> Complex64 {
        self.jp + Complex64::i() * self.yp
    }

    pub fn h2(&self) -> Complex64 {
        self.j - Complex64::i() * self.y
    }

    pub fn h2p(&self) -> Complex64 {
        self.jp - Complex64::i() * self.yp
    }
}

fn validate(nu: f64, z: Complex64) -> Result<(f64, ComplexArg), SpecFunError> {
    let order = CylinderOrder::new(nu)?;
    let arg = ComplexArg::new(z)?;
    Ok((order.value(), arg))
}

fn eval(nu: f64, z: Complex64) -> Result<complex::Cyl, SpecFunError> {
    if nu >= 0.0 {
        return complex::cylinder(nu, z);
    }
    let a = -nu;
    let r = complex::cylinder(a, z)?;
    let (c, s) = (gamma::cos_pi(a), gamma::sin_pi(a));
    let e = complex::unit_pi(a);
    Ok(complex::Cyl { j: c * r.j - s * r.y, y: s * r.j + c * r.y, h1: e * r.h1, h2: e.conj() * r.h2 })
}

/// J_ν(z).
pub fn bessel_j(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let (nu, arg) = validate(nu, z)?;
    if arg.is_zero() {
        return if nu == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else if nu > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(SpecFunError::Singular)
        };
    }
    eval(nu, arg.value()).map(|r| r.j)
}

/// Y_ν(z).
pub fn bessel_y(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let (nu, arg) = validate(nu, z)?;
    if arg.is_zero() {
        return Err(SpecFunError::Singular);
    }
    eval(nu, arg.value()).map(|r| r.y)
}

/// H^{(1)}_ν(z). On the positive imaginary axis this is computed from K_ν.
pub fn hankel1(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let (nu, arg) = validate(nu, z)?;
    if arg.is_zero() {
        return Err(SpecFunError::Singular);
    }
    eval(nu, arg.value()).map(|r| r.h1)
}

/// H^{(2)}_ν(z).
pub fn hankel2(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let (nu, arg) = validate(nu, z)?;
    if arg.is_zero() {
        return Err(SpecFunError::Singular);
    }
    eval(nu, arg.value()).map(|r| r.h2)
}

/// J, Y and their z-derivatives, using C'_ν = (ν/z)C_ν − C_{ν+1}.
pub fn bessel_jy(nu: f64, z: Complex64) -> Result<Cylinder, SpecFunError> {
    let (nu, arg) = validate(nu, z)?;
    if arg.is_zero() {
        return Err(SpecFunError::Singular);
    }
    let z = arg.value();
    if z.im == 0.0 && z.re > 0.0 {
        let c = bessel_jy_real(nu, z.re)?;
        return Ok(Cylinder { j: c.j.into(), y: c.y.into(), jp: c.jp.into(), yp: c.yp.into() });
    }
    let r0 = eval(nu, z)?;
    let r1 = eval(nu + 1.0, z)?;
    let q = nu / z;
    Ok(Cylinder { j: r0.j, y: r0.y, jp: q * r0.j - r1.j, yp: q * r0.y - r1.y })
}

/// (H^{(1)}_ν(z), d/dz H^{(1)}_ν(z)).
pub fn hankel1_deriv(nu: f64, z: Complex64) -> Result<(Complex64, Complex64), SpecFunError> {
    let (nu, arg) = validate(nu, z)?;
    if arg.is_zero() {
        return Err(SpecFunError::Singular);
    }
    let z = arg.value();
    if z.im == 0.0 && z.re > 0.0 {
        let c = bessel_jy_real(nu, z.re)?;
        return Ok((Complex64::new(c.j, c.y), Complex64::new(c.jp, c.yp)));
    }
    let h0 = eval(nu, z)?.h1;
    let h1 = eval(nu + 1.0, z)?.h1;
    Ok((h0, nu / z * h0 - h1))
}

/// J, Y, J', Y' at real order ν > −1 and real x > 0.
pub fn bessel_jy_real(nu: f64, x: f64) -> Result<RealCylinder, SpecFunError> {
    let nu = CylinderOrder::new(nu)?.value();
    if !x.is_finite() {
        return Err(SpecFunError::NonFinite { re: x, im: 0.0 });
    }
    if x <= 0.0 {
        return Err(SpecFunError::NonPositive(x));
    }
    if nu >= 0.0 {
        return real::jy(nu, x);
    }
    let a = -nu;
    let r = real::jy(a, x)?;
    let (c, s) = (gamma::cos_pi(a), gamma::sin_pi(a));
    Ok(RealCylinder { j: c * r.j - s * r.y, y: s * r.j + c * r.y, jp: c * r.jp - s * r.yp, yp: s * r.jp + c * r.yp })
}

fn ik_any(nu: f64, x: f64, scaled: bool) -> Result<RealModified, SpecFunError> {
    let nu = CylinderOrder::new(nu)?.value();
    if !x.is_finite() {
        return Err(SpecFunError::NonFinite { re: x, im: 0.0 });
    }
    if x <= 0.0 {
        return Err(SpecFunError::NonPositive(x));
    }
    let f = if scaled { real::ik_scaled } else { real::ik };
    if nu >= 0.0 {
        return f(nu, x);
    }
    let a = -nu;
    let r = f(a, x)?;
    // I_{−a} = I_a + (2/π) sin(πa) K_a; in scaled form K carries e^{2x} relative to I.
    let w = 2.0 / std::f64::consts::PI * gamma::sin_pi(a) * if scaled { (-2.0 * x).exp() } else { 1.0 };
    Ok(RealModified { i: r.i + w * r.k, k: r.k, ip: r.ip + w * r.kp, kp: r.kp })
}

/// (I_ν(x), K_ν(x)) for ν > −1, x > 0.
pub fn bessel_i_k(nu: f64, x: f64) -> Result<(f64, f64), SpecFunError> {
    ik_any(nu, x, false).map(|m| (m.i, m.k))
}

/// I, K and derivatives.
pub fn bessel_ik(nu: f64, x: f64) -> Result<RealModified, SpecFunError> {
    ik_any(nu, x, false)
}

/// e^{−x}I, e^{x}K and correspondingly scaled derivatives.
pub fn bessel_ik_scaled(nu: f64, x: f64) -> Result<RealModified, SpecFunError> {
    ik_any(nu, x, true)
}

/// The entire function J_ν(z)/(z/2)^ν, equal to 1/Γ(ν+1) at z = 0.
pub fn bessel_j_reduced(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let (nu, arg) = validate(nu, z)?;
    let z = arg.value();
    if z.norm() <= 1.0 {
        let q = -0.25 * z * z;
        let mut t = Complex64::new(rgamma(nu + 1.0), 0.0);
        let mut sum = t;
        for j in 1..200 {
            let fj = j as f64;
            t *= q / (fj * (nu + fj));
            sum += t;
            if t.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        return Ok(sum);
    }
    if z.re == 0.0 && z.im > 0.0 {
        let y = z.im;
        let (i, _) = bessel_i_k(nu, y)?;
        return Ok(Complex64::new(i / (0.5 * y).powf(nu), 0.0));
    }
    let j = eval(nu, z)?.j;
    Ok(j / ComplexArg::new(0.5 * z)?.powf(nu))
}

/// Diagnostic alternative routes, kept public for cross-validation.
pub mod routes {
    use super::*;

    /// H^{(1)}_ν(z) as J + iY from the ascending series and the connection
    /// formula, for ν ≥ 0 and |z| < 14, whatever the location of z.
    pub fn hankel1_via_jy(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
        let (nu, arg) = validate(nu, z)?;
        if nu < 0.0 {
            return Err(SpecFunError::Order(nu));
        }
        if arg.is_zero() {
            return Err(SpecFunError::Singular);
        }
        complex::hankel1_series_route(nu, arg.value())
    }

    /// (H^{(1)}_ν, H^{(2)}_ν) from the large-argument expansion and forward
    /// recurrence, for ν ≥ 0 and Re z ≥ 0.
    pub fn hankel_via_asymptotic(nu: f64, z: Complex64) -> Result<(Complex64, Complex64), SpecFunError> {
        let (nu, arg) = validate(nu, z)?;
        if nu < 0.0 {
            return Err(SpecFunError::Order(nu));
        }
        if arg.value().re < 0.0 || arg.is_zero() {
            return Err(SpecFunError::Sheet(arg.arg()));
        }
        Ok(complex::hankel_large_route(nu, arg.value()))
    }

    /// J_ν(z) from the ascending series alone, ν ≥ 0.
    pub fn bessel_j_series(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
        let (nu, arg) = validate(nu, z)?;
        if nu < 0.0 {
            return Err(SpecFunError::Order(nu));
        }
        complex::series_j(nu, arg.value())
    }
}
