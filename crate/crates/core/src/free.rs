//! Free two-anyon structures: channels, improper eigenfunctions, the free
//! resolvent and propagator kernels, and Aharonov–Bohm scattering.

use std::f64::consts::{FRAC_PI_2, PI};

use anyon_specfun::{bessel_j, cos_pi, hankel1, sin_pi, SpecFunError};
use num_complex::Complex64;

use crate::error::{domain, CoreError, Result};
use crate::quad::{integrate, Estimate, Tolerance};

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Angular-momentum channel m at statistics parameter α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnyonChannel {
    alpha: f64,
    m: i32,
}

impl AnyonChannel {
    pub fn new(alpha: f64, m: i32) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(AnyonChannel { alpha, m })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Effective order μ = |2m + α|.
    pub fn mu(&self) -> f64 {
        (2.0 * self.m as f64 + self.alpha).abs()
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        domain(format!("statistics parameter {alpha} outside [0, 1]"))
    }
}

/// φ_{α;m,E}(r, θ) = e^{2imθ} J_μ(√E r)/√(2π).
pub fn eigenfunction(channel: AnyonChannel, energy: f64, r: f64, theta: f64) -> Result<C> {
    if !(energy >= 0.0) || !(r >= 0.0) {
        return domain("eigenfunction needs E >= 0 and r >= 0");
    }
    let j = bessel_j(channel.mu(), C::new(energy.sqrt() * r, 0.0))?;
    Ok(C::from_polar(1.0, 2.0 * channel.m as f64 * theta) * j / (2.0 * PI).sqrt())
}

/// Momentum k = √z on the sheet Im k > 0; z must avoid [0, ∞).
pub fn resolvent_momentum(z: C) -> Result<C> {
    if !(z.re.is_finite() && z.im.is_finite()) || (z.im == 0.0 && z.re >= 0.0) {
        return Err(CoreError::Sheet { re: z.re, im: z.im });
    }
    let k = if z.im == 0.0 { C::new(0.0, (-z.re).sqrt()) } else { z.sqrt() };
    Ok(if k.im < 0.0 { -k } else { k })
}

/// A truncated channel sum with its tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSum {
    pub value: C,
    pub tail: f64,
    pub m_max: u32,
    pub converged: bool,
}

/// Default tolerance on channel-sum tails.
pub const KERNEL_TAIL_TOL: f64 = 1e-10;

/// One resolvent channel term (i/2) e^{2imΘ} J_μ(k r_<) H^{(1)}_μ(k r_>).
pub fn resolvent_channel_term(channel: AnyonChannel, k: C, r: f64, theta: f64, rp: f64, thetap: f64) -> Result<C> {
    let (lo, hi) = if r <= rp { (r, rp) } else { (rp, r) };
    let mu = channel.mu();
    let phase = C::from_polar(1.0, 2.0 * channel.m as f64 * (theta - thetap));
    let j = bessel_j(mu, k * lo)?;
    if j == C::new(0.0, 0.0) {
        return Ok(j);
    }
    let h = hankel1(mu, k * hi)?;
    Ok(0.5 * I * phase * j * h)
}

/// Free resolvent kernel ⟨r,θ|(H₀(α) − z)⁻¹|r′,θ′⟩ summed over |m| ≤ m_max.
///
/// The tail is bounded with the large-order law |J_μ(x)H_μ(y)| ≈ (x/y)^μ/(πμ),
/// summed geometrically over the omitted channels, and never below the last
/// computed terms continued the same way.
pub fn free_resolvent_kernel(alpha: f64, z: C, r: f64, theta: f64, rp: f64, thetap: f64, m_max: u32) -> Result<ChannelSum> {
    check_alpha(alpha)?;
    if !(r > 0.0 && rp > 0.0) {
        return domain("resolvent kernel needs r, r' > 0");
    }
    let k = resolvent_momentum(z)?;
    let mut value = C::new(0.0, 0.0);
    let mut last = 0.0_f64;
    let mut done = 0;
    'orders: for n in 0..=m_max {
        let mut shell = C::new(0.0, 0.0);
        let mut size = 0.0;
        for m in if n == 0 { vec![0] } else { vec![n as i32, -(n as i32)] } {
            let ch = AnyonChannel::new(alpha, m)?;
            match resolvent_channel_term(ch, k, r, theta, rp, thetap) {
                Ok(t) => {
                    shell += t;
                    size += t.norm();
                }
                // H_μ overflows before the product J_μ H_μ does; stop at the last full shell
                Err(CoreError::SpecFun(SpecFunError::Overflow { .. })) if n > 0 => break 'orders,
                Err(e) => return Err(e),
            }
        }
        value += shell;
        last = size;
        done = n;
    }
    let m_max = done;
    let q = r.min(rp) / r.max(rp);
    let tail = if q >= 1.0 {
        f64::INFINITY
    } else {
        let mut est = 0.0;
        for sign in [1.0, -1.0] {
            let mu = (2.0 * (m_max as f64 + 1.0) * sign + alpha).abs();
            est += q.powf(mu) / (2.0 * PI * mu);
        }
        let geo = q * q / (1.0 - q * q);
        (est / (1.0 - q * q)).max(last * geo)
    };
    Ok(ChannelSum { value, tail, m_max, converged: tail <= KERNEL_TAIL_TOL * value.norm().max(1e-300) || tail <= KERNEL_TAIL_TOL })
}

/// Arguments of the time-evolution kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorPoint {
    pub r: f64,
    pub rprime: f64,
    pub theta: f64,
    pub thetaprime: f64,
    pub t: f64,
}

impl PropagatorPoint {
    pub fn new(r: f64, rprime: f64, theta: f64, thetaprime: f64, t: f64) -> Result<Self> {
        if !(r > 0.0 && rprime > 0.0) {
            return domain("propagator needs r, r' > 0");
        }
        if !(t != 0.0 && t.is_finite()) {
            return domain("propagator needs a finite nonzero time");
        }
        if !((0.0..PI).contains(&theta) && (0.0..PI).contains(&thetaprime)) {
            return domain("polar angles must lie in [0, pi)");
        }
        Ok(PropagatorPoint { r, rprime, theta, thetaprime, t })
    }

    /// ρ = r r′/(2t).
    pub fn rho(&self) -> f64 {
        self.r * self.rprime / (2.0 * self.t)
    }

    /// χ = θ − θ′.
    pub fn chi(&self) -> f64 {
        self.theta - self.thetaprime
    }

    fn gaussian(&self) -> C {
        C::from_polar(1.0, (self.r * self.r + self.rprime * self.rprime) / (4.0 * self.t))
    }
}

/// Regular part K_{α,0} of the propagator.
pub fn propagator_regular(alpha: f64, p: &PropagatorPoint) -> Result<C> {
    check_alpha(alpha)?;
    let chi = p.chi();
    if chi == 0.0 {
        return domain("propagator is undefined at coincident angles");
    }
    let sg = chi.signum();
    let pre = 1.0 / (2.0 * PI * I * p.t) * p.gaussian();
    let gauge = C::from_polar(1.0, alpha * (chi - FRAC_PI_2 * sg));
    Ok(pre * gauge * (-alpha * FRAC_PI_2 * sg + p.rho() * chi.cos()).cos())
}

/// Statistics part K̂_α of the propagator, with the error estimate of I_α.
pub fn propagator_statistical(alpha: f64, p: &PropagatorPoint) -> Result<Estimate> {
    check_alpha(alpha)?;
    let s = sin_pi(alpha);
    if s == 0.0 {
        return Ok(Estimate { value: C::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let integral = oscillatory_integral(alpha, p.rho(), p.chi())?;
    let pre = I / (2.0 * PI * p.t) * (s / PI) * p.gaussian();
    Ok(Estimate { value: pre * integral.value, error: pre.norm() * integral.error, evaluations: integral.evaluations })
}

/// Full kernel ⟨r,θ|e^{−itH₀(α)}|r′,θ′⟩ = K_{α,0} + K̂_α.
pub fn propagator_kernel(alpha: f64, p: &PropagatorPoint) -> Result<C> {
    Ok(propagator_regular(alpha, p)? + propagator_statistical(alpha, p)?.value)
}

/// Half-width of the central quadrature window.
pub fn central_half_width(alpha: f64) -> f64 {
    4.0_f64.max(4.0 / alpha.max(1.0 - alpha))
}

/// I_α(ρ, χ) = ∫ e^{iρ cosh y} e^{−αy}/(1 − e^{−2y−2iχ}) dy over the real line.
///
/// The integrand is integrated on [−L, L]; beyond, the tails are moved to
/// Im y = ±sgn(ρ)·π/2 where e^{iρ cosh y} becomes e^{−|ρ| sinh|u|}. The poles
/// y = −iχ − iπn sit on the imaginary axis and are never crossed, so L may
/// shrink to asinh(100/|ρ|) (at least 1) once |ρ| is large. At ρ = 0 the
/// tails are summed as geometric series.
pub fn oscillatory_integral(alpha: f64, rho: f64, chi: f64) -> Result<Estimate> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("oscillatory integral needs 0 < alpha < 1, got {alpha}"));
    }
    if !rho.is_finite() || !(chi > -PI && chi < PI) {
        return domain("oscillatory integral needs finite rho and chi in (-pi, pi)");
    }
    if chi == 0.0 {
        return domain("oscillatory integral is singular at chi = 0");
    }
    let w = C::from_polar(1.0, -2.0 * chi);
    let g = |y: C| (I * rho * y.cosh()).exp() * (-alpha * y).exp() / (1.0 - w * (-2.0 * y).exp());
    let mut l = central_half_width(alpha);
    if rho != 0.0 {
        l = l.min((100.0 / rho.abs()).asinh().max(1.0));
    }
    let mut tol = Tolerance { abs: 1e-13, rel: 1e-11, max_intervals: 20_000 };
    let mut parts = vec![integrate(|y| g(C::new(y, 0.0)), -l, l, tol)?];
    tol.abs = tol.abs.max(tol.rel * parts[0].value.norm());
    if rho == 0.0 {
        let mut tails = C::new(0.0, 0.0);
        let mut wn = C::new(1.0, 0.0);
        for n in 0..200 {
            let nu = alpha + 2.0 * n as f64;
            let t = wn * (-nu * l).exp() / nu;
            tails += t;
            if n > 0 {
                let nu_left = 2.0 * n as f64 - alpha;
                tails -= wn.conj() * (-nu_left * l).exp() / nu_left;
            }
            if t.norm() < 1e-18 {
                break;
            }
            wn *= w;
        }
        parts.push(Estimate { value: tails, error: 0.0, evaluations: 0 });
    } else {
        let s = rho.signum();
        let beta = s * FRAC_PI_2;
        let u_max = l + 1.0 + (60.0 / rho.abs()).asinh();
        // right connector L → L + iβ and tail L + iβ → ∞ + iβ
        parts.push(integrate(|v| I * g(C::new(l, v)), 0.0, beta, tol)?);
        parts.push(integrate(|u| g(C::new(u, beta)), l, u_max, tol)?);
        // left tail −∞ − iβ → −L − iβ and connector −L − iβ → −L
        parts.push(integrate(|u| g(C::new(u, -beta)), -u_max, -l, tol)?);
        let left = integrate(|v| I * g(C::new(-l, v)), 0.0, -beta, tol)?;
        parts.push(Estimate { value: -left.value, ..left });
    }
    Ok(Estimate {
        value: parts.iter().map(|p| p.value).sum(),
        error: parts.iter().map(|p| p.error).sum(),
        evaluations: parts.iter().map(|p| p.evaluations).sum(),
    })
}

/// Channel S-matrix eigenvalue of Aharonov–Bohm scattering.
pub fn ab_phase(channel: AnyonChannel) -> C {
    let a = channel.alpha;
    let s = if 2.0 * channel.m as f64 + a >= 0.0 { 1.0 } else { -1.0 };
    C::new(cos_pi(a), s * sin_pi(a))
}

/// Aharonov–Bohm amplitude split into its regular part and the coefficient
/// of δ(Θ); the two are never added.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ABAmplitude {
    pub regular_part: C,
    pub forward_delta_coefficient: C,
    pub k: f64,
    pub theta: f64,
}

fn check_angle(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return domain("angle must be finite");
    }
    let q = theta / PI;
    if (q - q.round()).abs() < 1e-14 {
        return Err(CoreError::Forward);
    }
    Ok(())
}

/// (π/(ik))^{1/2} on the principal branch.
pub fn amplitude_prefactor(k: f64) -> C {
    (C::new(PI / k, 0.0) / I).sqrt()
}

pub fn ab_amplitude(alpha: f64, k: f64, theta: f64) -> Result<ABAmplitude> {
    check_alpha(alpha)?;
    if !(k > 0.0) {
        return domain("momentum must be positive");
    }
    check_angle(theta)?;
    let pre = amplitude_prefactor(k);
    let regular = pre * 2.0 * (sin_pi(alpha) / (2.0 * PI * I)) * (1.0 + I / theta.tan());
    Ok(ABAmplitude { regular_part: regular, forward_delta_coefficient: pre * 2.0 * (cos_pi(alpha) - 1.0), k, theta })
}

/// dσ_AB/dθ = sin²(πα)/(πk)·(1 + cot²θ).
pub fn ab_cross_section(alpha: f64, k: f64, theta: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(k > 0.0) {
        return domain("momentum must be positive");
    }
    check_angle(theta)?;
    let s = sin_pi(alpha);
    let cot = 1.0 / theta.tan();
    Ok(s * s / (PI * k) * (1.0 + cot * cot))
}
