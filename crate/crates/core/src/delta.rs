//! Contact (δ) interaction in the lowest channel μ = α, as the family of
//! self-adjoint extensions h(s) of the free radial operator.
//!
//! Everything is driven by the extension coefficient
//!
//! A(k, α; s) = (π/2) [X(k) + cot πα − i]⁻¹,
//! X(k) = (k/2)^{−2α} (2sα − 1) Γ(1+α) / (Γ(1−α) sin πα),
//!
//! and the real function a(k) = X(k) + cot πα, with e^{2iδ} = (a + i)/(a − i).
//! At α = 0 the bracket becomes (2/π)(ln(k/2i) + γ + s). Both s = +∞ and
//! s = −∞ select the Friedrichs extension, where A ≡ 0.

use std::f64::consts::PI;

use anyon_specfun::{bessel_ik_scaled, bessel_j, hankel1, ln_gamma, sin_pi, ComplexArg, EULER_GAMMA};
use num_complex::Complex64;

use crate::error::{domain, CoreError, Result};
use crate::free::amplitude_prefactor;

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Below this α the logarithmic (bosonic) form of the bracket is used.
pub const BOSONIC_CROSSOVER: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactExtension {
    alpha: f64,
    s: f64,
}

impl ContactExtension {
    pub fn new(alpha: f64, s: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return domain(format!("statistics parameter must lie in [0, 1), got {alpha}"));
        }
        if s.is_nan() {
            return domain("extension parameter s must not be NaN");
        }
        Ok(ContactExtension { alpha, s })
    }

    /// The Friedrichs extension (no contact term).
    pub fn friedrichs(alpha: f64) -> Result<Self> {
        Self::new(alpha, f64::INFINITY)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn is_free(&self) -> bool {
        self.s.is_infinite()
    }

    fn bosonic(&self) -> bool {
        self.alpha < BOSONIC_CROSSOVER
    }

    /// Number of bound states, (1 − sgn(2αs − 1))/2 rounded down to {0, 1}.
    pub fn bound_state_count(&self) -> u32 {
        if self.is_free() {
            0
        } else if self.bosonic() {
            1
        } else {
            u32::from(1.0 - 2.0 * self.alpha * self.s > 0.0)
        }
    }
}

fn sheet(k: C) -> Result<ComplexArg> {
    if !(k.re.is_finite() && k.im.is_finite()) || k.im < 0.0 || (k.re == 0.0 && k.im == 0.0) {
        return Err(CoreError::Sheet { re: k.re, im: k.im });
    }
    Ok(ComplexArg::new(k)?)
}

/// e^z − 1 without cancellation for small z.
fn expm1(z: C) -> C {
    let h = (0.5 * z.im).sin();
    C::new(z.re.exp_m1() * z.im.cos() - 2.0 * h * h, z.re.exp() * z.im.sin())
}

/// ln Γ(1+α) − ln Γ(1−α).
fn ln_gamma_ratio(alpha: f64) -> Result<f64> {
    Ok(ln_gamma(1.0 + alpha)? - ln_gamma(1.0 - alpha)?)
}

/// a(k) = X(k) + cot πα for α above the crossover, written as
/// [cos πα − (k/2)^{−2α} g + 2sα (k/2)^{−2α} g]/sin πα with g the Γ ratio,
/// so that the two 1/(πα) poles never cancel numerically.
fn a_generic(alpha: f64, s: f64, k: &ComplexArg) -> Result<C> {
    let ln_half = k.ln() - 2f64.ln();
    let e = -2.0 * alpha * ln_half + ln_gamma_ratio(alpha)?;
    let pg = e.exp();
    let half = sin_pi(0.5 * alpha);
    let cos_m1 = -2.0 * half * half;
    let num = cos_m1 - expm1(e) + 2.0 * s * alpha * pg;
    Ok(num / sin_pi(alpha))
}

/// a(k) at α = 0: (2/π)(ln(k/2) + γ + s).
fn a_bosonic(s: f64, k: &ComplexArg) -> C {
    (2.0 / PI) * (k.ln() - 2f64.ln() + EULER_GAMMA + s)
}

/// The continuous function a(k, α; s) = (π/2)/A + i, real for real k.
/// Infinite for the Friedrichs extension.
pub fn a_function(ext: &ContactExtension, k: C) -> Result<C> {
    let k = sheet(k)?;
    if ext.is_free() {
        return Ok(C::new(f64::INFINITY, 0.0));
    }
    if ext.bosonic() {
        Ok(a_bosonic(ext.s, &k))
    } else {
        a_generic(ext.alpha, ext.s, &k)
    }
}

/// A(k, α; s) for Im k ≥ 0, k ≠ 0 (real k as the boundary value from above).
pub fn coefficient_a(ext: &ContactExtension, k: C) -> Result<C> {
    if ext.is_free() {
        sheet(k)?;
        return Ok(C::new(0.0, 0.0));
    }
    let a = a_function(ext, k)?;
    Ok((PI / 2.0) / (a - I))
}

/// Resolvent kernel of h(s) at energy k² in the channel μ = α.
pub fn resolvent_kernel(ext: &ContactExtension, k: C, r: f64, rp: f64) -> Result<C> {
    if !(r > 0.0 && rp > 0.0 && r.is_finite() && rp.is_finite()) {
        return domain("radii must be positive");
    }
    let big_a = coefficient_a(ext, k)?;
    let alpha = ext.alpha;
    let (lo, hi) = if r <= rp { (r, rp) } else { (rp, r) };
    let root = (r * rp).sqrt();
    let h_hi = hankel1(alpha, k * hi)?;
    let free = 0.5 * PI * I * root * bessel_j(alpha, k * lo)? * h_hi;
    if big_a == C::new(0.0, 0.0) {
        return Ok(free);
    }
    Ok(free - big_a * root * hankel1(alpha, k * lo)? * h_hi)
}

/// Bound state of h(s); at most one exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactBoundState {
    pub exists: bool,
    /// |k_b|, zero when there is no bound state.
    pub kappa: f64,
    alpha: f64,
    norm: f64,
}

impl ContactBoundState {
    pub fn k_b(&self) -> Option<C> {
        self.exists.then(|| C::new(0.0, self.kappa))
    }

    pub fn energy(&self) -> Option<f64> {
        self.exists.then(|| -self.kappa * self.kappa)
    }

    /// ψ_b(r) = (2 sin πα/(πα))^{1/2} √(r|E_b|) K_α(|k_b| r), unit norm on (0, ∞).
    pub fn wavefunction(&self, r: f64) -> Result<f64> {
        if !self.exists {
            return domain("no bound state");
        }
        if !(r > 0.0) {
            return domain("radius must be positive");
        }
        let x = self.kappa * r;
        let ks = bessel_ik_scaled(self.alpha, x)?.k;
        Ok(self.norm * r.sqrt() * self.kappa * ks * (-x).exp())
    }
}

pub fn bound_state(ext: &ContactExtension) -> ContactBoundState {
    let alpha = ext.alpha;
    let none = ContactBoundState { exists: false, kappa: 0.0, alpha, norm: 0.0 };
    if ext.bound_state_count() == 0 {
        return none;
    }
    let (kappa, sinc) = if ext.bosonic() {
        (2.0 * (-EULER_GAMMA - ext.s).exp(), 1.0)
    } else {
        let Ok(lg) = ln_gamma_ratio(alpha) else { return none };
        let ln_c = lg + (1.0 - 2.0 * alpha * ext.s).ln();
        (2.0 * (ln_c / (2.0 * alpha)).exp(), sin_pi(alpha) / (PI * alpha))
    };
    ContactBoundState { exists: kappa > 0.0 && kappa.is_finite(), kappa, alpha, norm: (2.0 * sinc).sqrt() }
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return domain("momentum must be positive and finite");
    }
    Ok(())
}

/// δ(k) = arg(a + i) on the branch (0, π); zero for the Friedrichs extension.
pub fn phase_shift(ext: &ContactExtension, k: f64) -> Result<f64> {
    check_k(k)?;
    if ext.is_free() {
        return Ok(0.0);
    }
    let a = a_function(ext, C::new(k, 0.0))?.re;
    Ok(1f64.atan2(a))
}

/// 1 + (4i/π) A.
pub fn s_matrix(ext: &ContactExtension, k: f64) -> Result<C> {
    check_k(k)?;
    Ok(1.0 + (4.0 * I / PI) * coefficient_a(ext, C::new(k, 0.0))?)
}

/// f(k, α; s) = (4i/π) A/√(πik).
pub fn partial_amplitude(ext: &ContactExtension, k: f64) -> Result<C> {
    check_k(k)?;
    let big_a = coefficient_a(ext, C::new(k, 0.0))?;
    Ok((4.0 * I / PI) * big_a * amplitude_prefactor(k) / PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactLevinson {
    pub delta_zero: f64,
    pub delta_infinity: f64,
    /// δ(0⁺) − δ(∞).
    pub lhs: f64,
    pub n: u32,
    /// (n − lhs/π) mod 1; `None` where δ is k-independent and carries no
    /// information (Friedrichs extension, 2αs = 1).
    pub alpha_hat: Option<f64>,
    /// Momenta at which the endpoint values were evaluated.
    pub k_low: f64,
    pub k_high: f64,
}

fn alpha_hat(n: u32, lhs: f64) -> f64 {
    let x = (n as f64 - lhs / PI).rem_euclid(1.0);
    if 1.0 - x < 1e-12 {
        0.0
    } else {
        x
    }
}

/// Momentum where |(k/2)^{−2α}| equals `target`, clamped to the finite range.
fn momentum_for_power(alpha: f64, target: f64) -> f64 {
    let ln_k = 2f64.ln() - target.ln() / (2.0 * alpha);
    ln_k.clamp(-700.0, 700.0).exp()
}

/// Evaluates δ at momenta deep in both asymptotic regions and forms the
/// relation δ(0⁺) − δ(∞) = π(n − α).
pub fn levinson_relation(ext: &ContactExtension) -> Result<ContactLevinson> {
    let n = ext.bound_state_count();
    let alpha = ext.alpha;
    if ext.bosonic() && !ext.is_free() {
        // a = (2/π)(ln(k/2) + γ + s) reaches its limits only logarithmically,
        // beyond the floating-point range of k, so the limits of a are used.
        let delta_zero = 1f64.atan2(f64::NEG_INFINITY);
        let delta_infinity = 1f64.atan2(f64::INFINITY);
        let lhs = delta_zero - delta_infinity;
        return Ok(ContactLevinson {
            delta_zero,
            delta_infinity,
            lhs,
            n,
            alpha_hat: Some(alpha_hat(n, lhs)),
            k_low: 0.0,
            k_high: f64::INFINITY,
        });
    }
    let (k_low, k_high) = if ext.is_free() {
        (1e-300, 1e300)
    } else {
        let c = ((2.0 * ext.s * alpha - 1.0) * ln_gamma_ratio(alpha)?.exp() / sin_pi(alpha)).abs();
        let cot = sin_pi(0.5 - alpha) / sin_pi(alpha);
        let big = 1e13 * (1.0 + cot.abs());
        if c == 0.0 {
            // δ ≡ πα for 2αs = 1
            (1.0, 1.0)
        } else {
            (momentum_for_power(alpha, big / c), momentum_for_power(alpha, 1e-13 / c))
        }
    };
    let delta_zero = phase_shift(ext, k_low)?;
    let delta_infinity = phase_shift(ext, k_high)?;
    let lhs = delta_zero - delta_infinity;
    let constant = ext.is_free() || (!ext.bosonic() && 2.0 * alpha * ext.s == 1.0);
    let alpha_hat = (!constant).then(|| alpha_hat(n, lhs));
    Ok(ContactLevinson { delta_zero, delta_infinity, lhs, n, alpha_hat, k_low, k_high })
}
