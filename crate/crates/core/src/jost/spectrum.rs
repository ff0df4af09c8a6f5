use std::f64::consts::PI;

use num_complex::Complex64;

use super::potential::RadialPotential;
use super::solve::{jost_function_with, SolverSettings};
use crate::error::{domain, CoreError, Result};
use crate::roots::brent;

type C = Complex64;

/// Anything that can evaluate F(k, μ) on the closed upper half plane.
pub trait JostProvider: Sync {
    fn jost(&self, k: C, mu: f64) -> Result<C>;

    /// F(iκ, μ), real for a real potential.
    fn jost_imaginary(&self, kappa: f64, mu: f64) -> Result<f64> {
        Ok(self.jost(C::new(0.0, kappa), mu)?.re)
    }

    /// Upper end of the default bound-state scan.
    fn kappa_max(&self) -> f64;

    /// Largest momentum of the default phase-shift grid.
    fn k_max(&self) -> f64 {
        100.0 * self.kappa_max()
    }
}

/// The ODE-based Jost function of a potential.
#[derive(Debug, Clone)]
pub struct NumericJost {
    pub potential: RadialPotential,
    pub settings: SolverSettings,
}

impl NumericJost {
    pub fn new(potential: RadialPotential) -> Self {
        NumericJost { potential, settings: SolverSettings::default() }
    }
}

/// Depth scale used for default momentum ranges.
pub fn depth_scale(pot: &RadialPotential) -> f64 {
    match pot {
        RadialPotential::Zero => 0.0,
        RadialPotential::SquareWell { v0, .. } | RadialPotential::Exponential { v0, .. } => v0.abs(),
        RadialPotential::Tabulated { v, .. } => v.iter().fold(0.0, |m, x| m.max(x.abs())),
    }
}

impl JostProvider for NumericJost {
    fn jost(&self, k: C, mu: f64) -> Result<C> {
        jost_function_with(&self.potential, k, mu, &self.settings).map(|e| e.f)
    }

    fn kappa_max(&self) -> f64 {
        depth_scale(&self.potential).max(1.0).sqrt() * 10.0
    }
}

/// Continuously unwrapped phase shift on a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseShiftCurve {
    pub mu: f64,
    pub k_grid: Vec<f64>,
    pub delta: Vec<f64>,
    pub delta_at_zero: f64,
    pub delta_at_infinity: f64,
}

/// δ(k) = −arg F(k, μ), unwrapped from the top of the grid downwards with
/// δ(k_max) ∈ (−π/2, π/2].
pub fn phase_shift_curve<P: JostProvider + ?Sized>(p: &P, mu: f64, k_grid: &[f64]) -> Result<PhaseShiftCurve> {
    if k_grid.len() < 2 || k_grid.iter().any(|&k| !(k > 0.0)) || k_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("phase-shift grid must be increasing, positive and have two points");
    }
    let raw: Vec<f64> = k_grid.iter().map(|&k| p.jost(C::new(k, 0.0), mu).map(|f| -f.arg())).collect::<Result<_>>()?;
    unwrap_phases(mu, k_grid, &raw, 2.0 * PI)
}

/// Unwraps phases known modulo `period` from the largest momentum down.
pub fn unwrap_phases(mu: f64, k_grid: &[f64], raw: &[f64], period: f64) -> Result<PhaseShiftCurve> {
    let n = raw.len();
    let mut delta = vec![0.0; n];
    let top = raw[n - 1] - period * (raw[n - 1] / period).round();
    if !(top > -PI / 2.0 && top <= PI / 2.0) {
        return Err(CoreError::UnwrapAmbiguity { k: k_grid[n - 1] });
    }
    delta[n - 1] = top;
    for i in (0..n - 1).rev() {
        let d = raw[i] - delta[i + 1];
        let v = raw[i] - period * (d / period).round();
        if (v - delta[i + 1]).abs() > PI / 2.0 {
            return Err(CoreError::UnwrapAmbiguity { k: k_grid[i] });
        }
        delta[i] = v;
    }
    // δ − δ(0) ~ k^{min(2μ, 2)} and δ ~ 1/k at the ends
    let e0 = (2.0 * mu).min(2.0);
    let (k1, k2) = (k_grid[0], k_grid[1]);
    let (a, b) = (k1.powf(e0), k2.powf(e0));
    let delta_at_zero = (delta[0] * b - delta[1] * a) / (b - a);
    let (k1, k2) = (k_grid[n - 2], k_grid[n - 1]);
    let delta_at_infinity = (delta[n - 1] * k2 - delta[n - 2] * k1) / (k2 - k1);
    Ok(PhaseShiftCurve { mu, k_grid: k_grid.to_vec(), delta, delta_at_zero, delta_at_infinity })
}

/// Logarithmic grid with `per_decade` points per decade.
pub fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let n = ((decades * per_decade as f64).ceil() as usize).max(1);
    (0..=n).map(|i| lo * (hi / lo).powf(i as f64 / n as f64)).collect()
}

/// Result of a bound-state scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundStateScan {
    /// Bound momenta κ_b, deepest first.
    pub kappas: Vec<f64>,
    /// Scan points where F(iκ) has a local extremum close to zero without a
    /// sign change, so a pair of roots may share one bracket.
    pub warnings: Vec<f64>,
}

pub const SCAN_PER_DECADE: usize = 400;
pub const KAPPA_FLOOR: f64 = 1e-8;

/// Sign changes of κ ↦ F(iκ, μ) on a log scan of [lo, hi], refined by Brent.
pub fn bound_states<P: JostProvider + ?Sized>(p: &P, mu: f64, lo: f64, hi: f64) -> Result<BoundStateScan> {
    if !(lo > 0.0 && hi > lo) {
        return domain("bound-state range must satisfy 0 < lo < hi");
    }
    let grid = log_grid(lo, hi, SCAN_PER_DECADE);
    let vals: Vec<f64> = grid.iter().map(|&x| p.jost_imaginary(x, mu)).collect::<Result<_>>()?;
    let scale = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut kappas = Vec::new();
    let mut warnings = Vec::new();
    for i in 0..grid.len() - 1 {
        let (fa, fb) = (vals[i], vals[i + 1]);
        if fa == 0.0 {
            kappas.push(grid[i]);
            continue;
        }
        if fa.signum() != fb.signum() && fb != 0.0 {
            let mut err = None;
            let root = brent(
                |x| match p.jost_imaginary(x, mu) {
                    Ok(v) => v,
                    Err(e) => {
                        err.get_or_insert(e);
                        f64::NAN
                    }
                },
                grid[i],
                grid[i + 1],
                1e-12,
                0.0,
            );
            if let Some(e) = err {
                return Err(e);
            }
            kappas.push(root?);
        } else if i > 0 {
            let (fp, f0) = (vals[i - 1], fa);
            let extremum = (f0 - fp) * (fb - f0) < 0.0;
            if extremum && fp.signum() == f0.signum() && f0.abs() < 1e-3 * scale && f0.abs() < fp.abs().min(fb.abs()) {
                warnings.push(grid[i]);
            }
        }
    }
    kappas.sort_by(|a, b| b.total_cmp(a));
    Ok(BoundStateScan { kappas, warnings })
}

/// Default bound-state scan over (κ_floor, κ_max].
pub fn bound_states_default<P: JostProvider + ?Sized>(p: &P, mu: f64) -> Result<BoundStateScan> {
    bound_states(p, mu, KAPPA_FLOOR, p.kappa_max())
}

/// Settings of the Levinson check.
#[derive(Debug, Clone, Copy)]
pub struct LevinsonSettings {
    pub k_min: f64,
    /// Defaults to the provider's k_max when `None`.
    pub k_max: Option<f64>,
    pub per_decade: usize,
    pub resonance_tol: f64,
    pub kappa_floor: f64,
}

impl Default for LevinsonSettings {
    fn default() -> Self {
        LevinsonSettings { k_min: 1e-6, k_max: None, per_decade: 40, resonance_tol: 1e-6, kappa_floor: KAPPA_FLOOR }
    }
}

/// Both sides of Levinson's theorem for one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct LevinsonRecord {
    pub mu: f64,
    /// δ(0⁺) − δ(∞).
    pub lhs: f64,
    /// π·n_μ, or π·(n_μ + μ) at a zero-energy resonance with μ < 1.
    pub rhs: f64,
    pub n_bound: usize,
    pub resonance: bool,
    /// (lhs/π − n_μ) mod 1 on the resonance branch with μ < 1.
    pub alpha_hat: Option<f64>,
    pub curve: PhaseShiftCurve,
}

pub fn levinson_check<P: JostProvider + ?Sized>(p: &P, mu: f64, st: &LevinsonSettings) -> Result<LevinsonRecord> {
    if !(mu > 0.0) {
        return domain("Levinson check needs mu > 0");
    }
    let k_max = st.k_max.unwrap_or_else(|| p.k_max());
    let grid = log_grid(st.k_min, k_max, st.per_decade);
    let curve = phase_shift_curve(p, mu, &grid)?;
    let n_bound = bound_states(p, mu, st.kappa_floor, p.kappa_max())?.kappas.len();
    let k_ref = grid[grid.partition_point(|&k| k < 1.0).min(grid.len() - 1)];
    let f_min = p.jost(C::new(grid[0], 0.0), mu)?.norm();
    let f_ref = p.jost(C::new(k_ref, 0.0), mu)?.norm();
    let ratio = f_min / f_ref;
    if ratio > st.resonance_tol / 10.0 && ratio < st.resonance_tol * 10.0 {
        return Err(CoreError::InconclusiveResonance { ratio });
    }
    let resonance = ratio <= st.resonance_tol / 10.0;
    if resonance && mu.fract() == 0.0 {
        return domain("the resonance branch is not defined at integer mu");
    }
    let lhs = curve.delta_at_zero - curve.delta_at_infinity;
    let n = n_bound as f64;
    let (rhs, alpha_hat) = if resonance && mu < 1.0 { (PI * (n + mu), Some((lhs / PI - n).rem_euclid(1.0))) } else { (PI * n, None) };
    Ok(LevinsonRecord { mu, lhs, rhs, n_bound, resonance, alpha_hat, curve })
}

/// One Regge trajectory κ_b(μ).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub id: usize,
    pub points: Vec<(f64, f64)>,
    /// μ where κ_b reaches zero, if it happened inside the grid.
    pub termination: Option<f64>,
    /// Set when the corrector lost the root.
    pub truncated: bool,
}

/// Follows each bound state of `mu_grid[0]` in μ. A trajectory ends when κ_b
/// falls below `kappa_floor`; the end point is the root of
/// μ ↦ F(iκ_floor, μ) between the last two grid values.
pub fn regge_trace<P: JostProvider + ?Sized>(p: &P, mu_grid: &[f64], seeds: Option<&[f64]>, kappa_floor: f64) -> Result<Vec<Trajectory>> {
    if mu_grid.is_empty() || mu_grid.windows(2).any(|w| !(w[1] > w[0])) || !(mu_grid[0] > 0.0) {
        return domain("mu grid must be positive and strictly increasing");
    }
    let mut seeds: Vec<f64> = match seeds {
        Some(s) => s.to_vec(),
        None => bound_states(p, mu_grid[0], kappa_floor, p.kappa_max())?.kappas,
    };
    seeds.sort_by(f64::total_cmp);
    let mut out: Vec<Trajectory> = seeds
        .iter()
        .enumerate()
        .map(|(i, &k)| Trajectory { id: i + 1, points: vec![(mu_grid[0], k)], termination: None, truncated: false })
        .collect();
    for &mu in &mu_grid[1..] {
        let active: Vec<usize> = (0..out.len()).filter(|&t| out[t].termination.is_none() && !out[t].truncated).collect();
        let last: Vec<f64> = active.iter().map(|&t| out[t].points.last().unwrap().1).collect();
        for (a, &t) in active.iter().enumerate() {
            // neighbours bound the search window so roots never swap
            let lo_bound = if a > 0 { 0.5 * (last[a - 1] + last[a]) } else { kappa_floor };
            let hi_bound = if a + 1 < last.len() { 0.5 * (last[a] + last[a + 1]) } else { p.kappa_max() };
            let g = |x: f64| p.jost_imaginary(x, mu);
            let pts = &out[t].points;
            let prev = pts[pts.len() - 1];
            let pred = if pts.len() >= 2 {
                let q = pts[pts.len() - 2];
                prev.1 + (prev.1 - q.1) * (mu - prev.0) / (prev.0 - q.0)
            } else {
                prev.1
            };
            let pred = pred.clamp(lo_bound.max(0.5 * prev.1).max(kappa_floor), hi_bound);
            match bracket(&g, pred, lo_bound, hi_bound)? {
                Some((a_, b_)) => {
                    let mut err = None;
                    let root = brent(
                        |x| {
                            g(x).unwrap_or_else(|e| {
                                err.get_or_insert(e);
                                f64::NAN
                            })
                        },
                        a_,
                        b_,
                        1e-12,
                        0.0,
                    );
                    if let Some(e) = err {
                        return Err(e);
                    }
                    let root = root?;
                    if root < kappa_floor {
                        out[t].termination = Some(termination(p, prev.0, mu, kappa_floor)?);
                    } else {
                        out[t].points.push((mu, root));
                    }
                }
                None => {
                    // no root above the floor: it left through κ = 0 if F(iκ_floor) flipped sign
                    let before = p.jost_imaginary(kappa_floor, prev.0)?;
                    let after = p.jost_imaginary(kappa_floor, mu)?;
                    if a == 0 && before.signum() != after.signum() {
                        out[t].termination = Some(termination(p, prev.0, mu, kappa_floor)?);
                    } else {
                        out[t].truncated = true;
                        return Err(CoreError::LostRoot { mu });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn termination<P: JostProvider + ?Sized>(p: &P, mu_a: f64, mu_b: f64, kappa_floor: f64) -> Result<f64> {
    let mut err = None;
    let r = brent(
        |m| {
            p.jost_imaginary(kappa_floor, m).unwrap_or_else(|e| {
                err.get_or_insert(e);
                f64::NAN
            })
        },
        mu_a,
        mu_b,
        1e-12,
        1e-13,
    );
    if let Some(e) = err {
        return Err(e);
    }
    r
}

/// Expands geometrically around `x0` inside [lo, hi] until g changes sign.
fn bracket(g: &impl Fn(f64) -> Result<f64>, x0: f64, lo: f64, hi: f64) -> Result<Option<(f64, f64)>> {
    let g0 = g(x0)?;
    if g0 == 0.0 {
        return Ok(Some((x0, x0)));
    }
    let mut h = 0.01;
    let (mut left, mut right) = (x0, x0);
    let (mut gl, mut gr) = (g0, g0);
    while left > lo || right < hi {
        if right < hi {
            let x = (x0 * (1.0 + h)).min(hi);
            let gx = g(x)?;
            if gx.signum() != gr.signum() || gx == 0.0 {
                return Ok(Some((right, x)));
            }
            right = x;
            gr = gx;
        }
        if left > lo {
            let x = (x0 * (1.0 - h).max(0.0)).max(lo);
            let gx = g(x)?;
            if gx.signum() != gl.signum() || gx == 0.0 {
                return Ok(Some((x, left)));
            }
            left = x;
            gl = gx;
        }
        h *= 1.6;
    }
    Ok(None)
}
