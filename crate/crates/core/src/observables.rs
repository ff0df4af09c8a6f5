//! Scattering amplitudes and differential cross-sections.
//!
//! The total amplitude splits into the statistical part f_AB and the
//! dynamical part
//!
//! f_α(Θ) = Σ_m e^{−iπμ} f(k, μ) e^{2imΘ},   μ = |2m + α|,
//!
//! with f(k, μ) = (e^{2iδ} − 1)/√(πik). Away from the forward direction
//! dσ/dθ = |f_α + f_AB|².

use std::f64::consts::PI;

use anyon_specfun::{cos_pi, sin_pi};
use num_complex::Complex64;

use crate::delta::{self, ContactExtension};
use crate::error::{domain, CoreError, Result};
use crate::free::{ab_amplitude, amplitude_prefactor, AnyonChannel};
use crate::jost::{jost_function, NumericJost};
use crate::well::{self, WellParams};

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Per-channel phase shifts δ(k, μ); only δ mod π matters here.
pub trait PhaseProvider: Sync {
    fn phase(&self, k: f64, mu: f64) -> Result<f64>;

    /// f(k, μ) = (e^{2iδ} − 1)/√(πik).
    fn amplitude(&self, k: f64, mu: f64) -> Result<C> {
        let d = self.phase(k, mu)?;
        Ok((C::from_polar(1.0, 2.0 * d) - 1.0) * amplitude_prefactor(k) / PI)
    }
}

/// No interaction beyond the statistics.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoScattering;

impl PhaseProvider for NoScattering {
    fn phase(&self, _k: f64, _mu: f64) -> Result<f64> {
        Ok(0.0)
    }

    fn amplitude(&self, _k: f64, _mu: f64) -> Result<C> {
        Ok(C::new(0.0, 0.0))
    }
}

impl PhaseProvider for WellParams {
    fn phase(&self, k: f64, mu: f64) -> Result<f64> {
        well::phase_shift(self, k, mu)
    }

    fn amplitude(&self, k: f64, mu: f64) -> Result<C> {
        well::partial_amplitude(self, k, mu)
    }
}

impl PhaseProvider for NumericJost {
    fn phase(&self, k: f64, mu: f64) -> Result<f64> {
        Ok(-jost_function(&self.potential, C::new(k, 0.0), mu)?.f.arg())
    }
}

/// The contact interaction acts in the μ = α channel only.
impl PhaseProvider for ContactExtension {
    fn phase(&self, k: f64, mu: f64) -> Result<f64> {
        if mu == self.alpha() {
            delta::phase_shift(self, k)
        } else {
            Ok(0.0)
        }
    }

    fn amplitude(&self, k: f64, mu: f64) -> Result<C> {
        if mu == self.alpha() {
            delta::partial_amplitude(self, k)
        } else {
            Ok(C::new(0.0, 0.0))
        }
    }
}

/// How many channels to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelTruncation {
    /// Fixed |m| ≤ m_max; `None` grows m_max until the tail is below `tol`.
    pub m_max: Option<u32>,
    pub tol: f64,
    /// Upper limit for the adaptive search.
    pub cap: u32,
}

impl Default for ChannelTruncation {
    fn default() -> Self {
        ChannelTruncation { m_max: None, tol: 1e-8, cap: 64 }
    }
}

impl ChannelTruncation {
    pub fn fixed(m_max: u32) -> Self {
        ChannelTruncation { m_max: Some(m_max), ..Self::default() }
    }
}

/// The Θ-independent channel coefficients c_m = e^{−iπμ} f(k, μ).
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelAmplitudes {
    pub alpha: f64,
    pub k: f64,
    pub m_max: u32,
    /// (m, c_m) for |m| ≤ m_max.
    pub coefficients: Vec<(i32, C)>,
    /// Bound on Σ_{|m|>m_max} |c_m|.
    pub tail: f64,
}

impl ChannelAmplitudes {
    /// f_α(Θ).
    pub fn at(&self, theta: f64) -> C {
        self.coefficients.iter().map(|&(m, c)| c * C::from_polar(1.0, 2.0 * m as f64 * theta)).sum()
    }
}

/// Geometric extrapolation of |c| along one branch of channels, using the
/// larger of the last two ratios. Low channels can be enhanced by the
/// interaction, so a single ratio taken there may understate the fall-off
/// rate of the (k·range)^{2μ} regime.
fn branch_tail(moduli: &[f64]) -> f64 {
    let n = moduli.len();
    let last = moduli[n - 1];
    if last == 0.0 {
        return 0.0;
    }
    if n < 2 {
        return f64::INFINITY;
    }
    let mut ratio = last / moduli[n - 2];
    if n >= 3 && moduli[n - 3] > 0.0 {
        ratio = ratio.max(moduli[n - 2] / moduli[n - 3]);
    }
    if !(ratio < 1.0) {
        return f64::INFINITY;
    }
    last * ratio / (1.0 - ratio)
}

fn channel_coefficient<P: PhaseProvider + ?Sized>(p: &P, alpha: f64, k: f64, m: i32) -> Result<C> {
    let mu = AnyonChannel::new(alpha, m)?.mu();
    let f = p.amplitude(k, mu)?;
    Ok(C::new(cos_pi(mu), -sin_pi(mu)) * f)
}

pub fn channel_amplitudes<P: PhaseProvider + ?Sized>(
    alpha: f64,
    k: f64,
    provider: &P,
    trunc: ChannelTruncation,
) -> Result<ChannelAmplitudes> {
    AnyonChannel::new(alpha, 0)?;
    if !(k > 0.0 && k.is_finite()) {
        return domain("momentum must be positive and finite");
    }
    let limit = trunc.m_max.unwrap_or(trunc.cap);
    let mut coefficients = vec![(0, channel_coefficient(provider, alpha, k, 0)?)];
    let mut up_moduli = vec![coefficients[0].1.norm()];
    let mut down_moduli = up_moduli.clone();
    let mut tail = f64::INFINITY;
    let mut n = 0u32;
    while n < limit {
        n += 1;
        let up = channel_coefficient(provider, alpha, k, n as i32)?;
        let down = channel_coefficient(provider, alpha, k, -(n as i32))?;
        coefficients.push((n as i32, up));
        coefficients.push((-(n as i32), down));
        up_moduli.push(up.norm());
        down_moduli.push(down.norm());
        tail = branch_tail(&up_moduli) + branch_tail(&down_moduli);
        if trunc.m_max.is_none() && n >= 2 && tail < trunc.tol {
            break;
        }
    }
    if n == 0 {
        tail = if coefficients[0].1.norm() == 0.0 { 0.0 } else { f64::INFINITY };
    }
    if tail > trunc.tol {
        return Err(CoreError::Truncation { tail, tol: trunc.tol });
    }
    coefficients.sort_by_key(|&(m, _)| m);
    Ok(ChannelAmplitudes { alpha, k, m_max: n, coefficients, tail })
}

/// f_α(k, Θ).
pub fn scattering_amplitude<P: PhaseProvider + ?Sized>(
    alpha: f64,
    k: f64,
    theta: f64,
    provider: &P,
    trunc: ChannelTruncation,
) -> Result<C> {
    Ok(channel_amplitudes(alpha, k, provider, trunc)?.at(theta))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossSectionTable {
    pub alpha: f64,
    pub k: f64,
    pub theta: Vec<f64>,
    pub dsigma: Vec<f64>,
    pub f_alpha: Vec<C>,
    pub f_ab: Vec<C>,
    pub m_max: u32,
    /// Amplitude truncation bound Σ_{|m|>m_max} |c_m|.
    pub tail_estimate: f64,
    /// Bound on the change of dσ/dθ from the omitted channels.
    pub dsigma_tail: f64,
}

impl CrossSectionTable {
    pub fn energy(&self) -> f64 {
        self.k * self.k
    }
}

/// dσ/dθ = |f_α + f_AB|² on a grid avoiding the forward and backward directions.
pub fn differential_cross_section<P: PhaseProvider + ?Sized>(
    alpha: f64,
    k: f64,
    theta_grid: &[f64],
    provider: &P,
    trunc: ChannelTruncation,
) -> Result<CrossSectionTable> {
    let ch = channel_amplitudes(alpha, k, provider, trunc)?;
    let mut table = CrossSectionTable {
        alpha,
        k,
        theta: theta_grid.to_vec(),
        dsigma: Vec::with_capacity(theta_grid.len()),
        f_alpha: Vec::with_capacity(theta_grid.len()),
        f_ab: Vec::with_capacity(theta_grid.len()),
        m_max: ch.m_max,
        tail_estimate: ch.tail,
        dsigma_tail: 0.0,
    };
    for &theta in theta_grid {
        let fab = ab_amplitude(alpha, k, theta)?.regular_part;
        let fa = ch.at(theta);
        let total = (fa + fab).norm();
        table.dsigma.push((fa + fab).norm_sqr());
        table.f_alpha.push(fa);
        table.f_ab.push(fab);
        table.dsigma_tail = table.dsigma_tail.max(ch.tail * (2.0 * total + ch.tail));
    }
    Ok(table)
}

/// (1/sin²πα) dσ/dθ for the contact interaction, from
/// (1/(πk))|sin πα (cot θ − i) + e^{−iπα}(4i/π)A|².
pub fn normalized_contact_cross_section(ext: &ContactExtension, k: f64, theta_grid: &[f64]) -> Result<CrossSectionTable> {
    let alpha = ext.alpha();
    if alpha == 0.0 {
        return domain("the normalized cross-section needs 0 < alpha < 1");
    }
    if !(k > 0.0 && k.is_finite()) {
        return domain("momentum must be positive and finite");
    }
    let s = sin_pi(alpha);
    let big_a = delta::coefficient_a(ext, C::new(k, 0.0))?;
    let phase = C::new(cos_pi(alpha), -sin_pi(alpha));
    let contact = phase * (4.0 * I / PI) * big_a;
    let root = (PI * I * k).sqrt();
    let mut table = CrossSectionTable {
        alpha,
        k,
        theta: theta_grid.to_vec(),
        dsigma: Vec::with_capacity(theta_grid.len()),
        f_alpha: Vec::with_capacity(theta_grid.len()),
        f_ab: Vec::with_capacity(theta_grid.len()),
        m_max: 0,
        tail_estimate: 0.0,
        dsigma_tail: 0.0,
    };
    for &theta in theta_grid {
        ab_amplitude(alpha, k, theta)?;
        let ab = s * (1.0 / theta.tan() - I);
        table.dsigma.push((ab + contact).norm_sqr() / (PI * k * s * s));
        table.f_alpha.push(contact / root);
        table.f_ab.push(ab / root);
    }
    Ok(table)
}

/// Default angular grid: `n` points on [0.01π, 0.99π].
pub fn default_theta_grid(n: usize) -> Vec<f64> {
    let (a, b) = (0.01 * PI, 0.99 * PI);
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1).max(1) as f64).collect()
}
