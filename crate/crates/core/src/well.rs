//! Closed-form square well V = −V0 on r < d.
//!
//! With Λ_ν(z) = J_ν(z)/(z/2)^ν, which depends on z² only, the Jost function is
//!
//! F(k, μ) = √π (kd/2)^{μ−1/2} [χ₀⁺(d; k, μ) Λ_{μ−1}(qd) − (kd/2) χ₀⁺(d; k, μ−1) Λ_μ(qd)],
//!
//! q² = k² + V0, so no branch of q has to be chosen. On the imaginary axis
//! k = iκ it is evaluated from I and K only:
//!
//! F(iκ, μ) = 2 (κd/2)^μ [K_μ(κd) Λ_{μ−1}(qd) + (κd/2) K_{μ−1}(κd) Λ_μ(qd)].

use std::f64::consts::PI;

use anyon_specfun::{bessel_ik_scaled, bessel_j_reduced, bessel_jy_real, hankel1, rgamma, ComplexArg};
use num_complex::Complex64;

use crate::error::{domain, CoreError, Result};
use crate::jost::{self, free_jost, free_regular, JostProvider, PhaseShiftCurve, Trajectory, KAPPA_FLOOR};

type C = Complex64;

const I: C = C::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParams {
    v0: f64,
    d: f64,
}

impl WellParams {
    pub fn new(v0: f64, d: f64) -> Result<Self> {
        if !(v0 > 0.0 && v0.is_finite() && d > 0.0 && d.is_finite()) {
            return domain(format!("square well needs V0 > 0 and d > 0, got V0={v0}, d={d}"));
        }
        Ok(WellParams { v0, d })
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Inner momentum q = √(k² + V0), continuous from √V0 at k = 0.
    pub fn q(&self, k: C) -> C {
        let q2 = k * k + self.v0;
        if q2.im == 0.0 && q2.re < 0.0 {
            C::new(0.0, (-q2.re).sqrt())
        } else {
            q2.sqrt()
        }
    }

    pub fn potential(&self) -> jost::RadialPotential {
        jost::RadialPotential::SquareWell { v0: self.v0, d: self.d }
    }
}

fn check(k: C, mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu.is_finite()) {
        return domain(format!("order mu must be positive, got {mu}"));
    }
    if !(k.re.is_finite() && k.im.is_finite()) || k == C::new(0.0, 0.0) || k.im < 0.0 {
        return Err(CoreError::Sheet { re: k.re, im: k.im });
    }
    Ok(())
}

/// Closed-form Jost function on the closed upper half plane.
pub fn jost_function_analytic(w: &WellParams, k: C, mu: f64) -> Result<C> {
    check(k, mu)?;
    let d = w.d;
    let qd = w.q(k) * d;
    let half = 0.5 * k * d;
    let pw = ComplexArg::new(half)?.powf(mu - 0.5) * PI.sqrt();
    let (chi_mu, _) = free_jost(k, mu, d)?;
    let (chi_m1, _) = free_jost(k, mu - 1.0, d)?;
    let l_m1 = bessel_j_reduced(mu - 1.0, qd)?;
    let l_mu = bessel_j_reduced(mu, qd)?;
    Ok(pw * (chi_mu * l_m1 - half * chi_m1 * l_mu))
}

/// Λ_ν(√(q²) d) for real q², using I_ν when q² < 0.
fn lambda_real(nu: f64, q2: f64, d: f64) -> Result<(f64, f64)> {
    // returns (mantissa, exponent) with Λ = mantissa·e^{exponent}
    if q2 > 0.0 {
        let z = q2.sqrt() * d;
        return Ok((bessel_j_reduced(nu, C::new(z, 0.0))?.re, 0.0));
    }
    if q2 == 0.0 {
        return Ok((rgamma(nu + 1.0), 0.0));
    }
    let y = (-q2).sqrt() * d;
    let m = bessel_ik_scaled(nu, y)?;
    Ok((m.i / (0.5 * y).powf(nu), y))
}

/// F(iκ, μ) from real modified Bessel functions only.
pub fn jost_function_imaginary(w: &WellParams, kappa: f64, mu: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return domain("imaginary-axis Jost function needs kappa > 0");
    }
    check(C::new(0.0, kappa), mu)?;
    let x = kappa * w.d;
    let q2 = w.v0 - kappa * kappa;
    let k_mu = bessel_ik_scaled(mu, x)?.k;
    let k_m1 = bessel_ik_scaled(mu - 1.0, x)?.k;
    let (l_m1, e1) = lambda_real(mu - 1.0, q2, w.d)?;
    let (l_mu, e2) = lambda_real(mu, q2, w.d)?;
    debug_assert_eq!(e1, e2);
    let scale = (e1 - x).exp();
    Ok(2.0 * (0.5 * x).powf(mu) * scale * (k_mu * l_m1 + 0.5 * x * k_m1 * l_mu))
}

/// W(χ₀⁺, φ_inside)(d)/k with φ_inside = (k/q)^{μ+1/2} φ₀(r; q, μ).
pub fn jost_function_matching(w: &WellParams, k: C, mu: f64) -> Result<C> {
    check(k, mu)?;
    let q = w.q(k);
    let (x, xp) = free_jost(k, mu, w.d)?;
    let (p, pp) = free_regular(q, mu, w.d)?;
    let ratio = ComplexArg::new(0.5 * k * w.d)?.powf(mu + 0.5) / ComplexArg::new(0.5 * q * w.d)?.powf(mu + 0.5);
    Ok(ratio * (x * pp - xp * p) / k)
}

/// (J_{μ−1}(x), Y_{μ−1}(x)) for μ ≥ 0, with C_{−1} = −C_1.
fn jy_lower(mu: f64, x: f64) -> Result<(f64, f64)> {
    if mu == 0.0 {
        let c = bessel_jy_real(1.0, x)?;
        return Ok((-c.j, -c.y));
    }
    let c = bessel_jy_real(mu - 1.0, x)?;
    Ok((c.j, c.y))
}

/// Numerator and denominator of tan δ. The real-axis routes also accept
/// μ = 0, the bosonic s-wave.
fn tan_parts(w: &WellParams, k: f64, mu: f64) -> Result<(f64, f64, f64, f64)> {
    if !(k > 0.0 && k.is_finite()) {
        return domain("phase shift needs real k > 0");
    }
    if !(mu >= 0.0 && mu.is_finite()) {
        return domain(format!("order mu must be non-negative, got {mu}"));
    }
    let q = (k * k + w.v0).sqrt();
    let (kd, qd) = (k * w.d, q * w.d);
    let a = bessel_jy_real(mu, kd)?;
    let (bj, by) = jy_lower(mu, kd)?;
    let jq_mu = bessel_jy_real(mu, qd)?.j;
    let jq_m1 = jy_lower(mu, qd)?.0;
    let num = q * a.j * jq_m1 - k * bj * jq_mu;
    let den = q * a.y * jq_m1 - k * by * jq_mu;
    Ok((num, den, q, k))
}

/// δ(k, μ) modulo 2π from tan δ = N/D, in (−π, π]: −arg F = −atan2(N, −D).
pub fn phase_shift(w: &WellParams, k: f64, mu: f64) -> Result<f64> {
    let (num, den, _, _) = tan_parts(w, k, mu)?;
    Ok(-num.atan2(-den))
}

/// Continuously unwrapped δ on an increasing grid, δ(k_max) ∈ (−π/2, π/2].
pub fn phase_shift_curve(w: &WellParams, mu: f64, k_grid: &[f64]) -> Result<PhaseShiftCurve> {
    if k_grid.len() < 2 || k_grid.windows(2).any(|p| !(p[1] > p[0])) {
        return domain("phase-shift grid must be increasing with two points");
    }
    let raw: Vec<f64> = k_grid.iter().map(|&k| phase_shift(w, k, mu)).collect::<Result<_>>()?;
    jost::unwrap_phases(mu, k_grid, &raw, 2.0 * PI)
}

/// f(k, μ) = −2N/((N + iD)√(πik)).
pub fn partial_amplitude(w: &WellParams, k: f64, mu: f64) -> Result<C> {
    let (num, den, _, _) = tan_parts(w, k, mu)?;
    let root = (PI * I * k).sqrt();
    Ok(-2.0 * num / (C::new(num, den) * root))
}

/// Same amplitude from the Hankel-function denominator of the closed form.
pub fn partial_amplitude_hankel(w: &WellParams, k: f64, mu: f64) -> Result<C> {
    let (num, _, q, _) = tan_parts(w, k, mu)?;
    let (kd, qd) = (C::new(k * w.d, 0.0), C::new(q * w.d, 0.0));
    let jq_mu = bessel_jy_real(mu, qd.re)?.j;
    let jq_m1 = jy_lower(mu, qd.re)?.0;
    let h_lower = if mu == 0.0 { -hankel1(1.0, kd)? } else { hankel1(mu - 1.0, kd)? };
    let den = q * hankel1(mu, kd)? * jq_m1 - k * h_lower * jq_mu;
    Ok(-2.0 / (PI * I * k).sqrt() * num / den)
}

impl JostProvider for WellParams {
    fn jost(&self, k: C, mu: f64) -> Result<C> {
        jost_function_analytic(self, k, mu)
    }

    fn jost_imaginary(&self, kappa: f64, mu: f64) -> Result<f64> {
        jost_function_imaginary(self, kappa, mu)
    }

    fn kappa_max(&self) -> f64 {
        self.v0.max(1.0).sqrt() * 10.0
    }
}

/// Regge trajectories from the closed form, seeded at `mu_grid[0]`.
pub fn regge_roots(w: &WellParams, mu_grid: &[f64]) -> Result<Vec<Trajectory>> {
    jost::regge_trace(w, mu_grid, None, KAPPA_FLOOR)
}
