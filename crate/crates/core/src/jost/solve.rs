use std::f64::consts::PI;

use anyon_specfun::{bessel_j_reduced, hankel1_deriv, rgamma, ComplexArg};
use num_complex::Complex64;

use super::potential::RadialPotential;
use crate::error::{domain, CoreError, Result};
use crate::ode::Dopri;

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Integration and matching settings.
#[derive(Debug, Clone, Copy)]
pub struct SolverSettings {
    pub ode: Dopri,
    /// Number of matching radii spread over [R/2, R].
    pub matching_points: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings { ode: Dopri { rtol: 1e-11, atol: 1e-300, joint_scale: true, ..Dopri::default() }, matching_points: 5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Regular,
    JostPlus,
}

/// A radial solution sampled on an increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub kind: SolutionKind,
    pub k: C,
    pub mu: f64,
    pub grid: Vec<f64>,
    pub values: Vec<C>,
    pub derivatives: Vec<C>,
}

/// Jost function value with its matching diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostEvaluation {
    pub f: C,
    pub k: C,
    pub mu: f64,
    /// max_j |W(χ⁺, φ)(r_j)/k − F| over the matching radii.
    pub wronskian_residual: f64,
    /// Standard deviation of W(χ⁺, φ)(r_j)/k over the matching radii.
    pub wronskian_spread: f64,
    /// 1 + (1/k)∫ χ₀⁺ V φ dr, available for finite-support potentials.
    pub integral_route: Option<C>,
}

fn check_args(k: C, mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu.is_finite()) {
        return domain(format!("order mu must be positive, got {mu}"));
    }
    if !(k.re.is_finite() && k.im.is_finite()) || k == C::new(0.0, 0.0) || k.im < 0.0 {
        return Err(CoreError::Sheet { re: k.re, im: k.im });
    }
    Ok(())
}

/// Start radius of the outward integration.
pub fn start_radius(k: C) -> f64 {
    1e-4_f64.min(1e-3 / k.norm())
}

/// (φ₀, φ₀′) with φ₀ = √(πkr/2) J_μ(kr) = √π (kr/2)^{μ+1/2} Λ_μ(kr).
pub fn free_regular(k: C, mu: f64, r: f64) -> Result<(C, C)> {
    let z = k * r;
    let pw = ComplexArg::new(0.5 * z)?.powf(mu + 0.5) * PI.sqrt();
    let l0 = bessel_j_reduced(mu, z)?;
    let l1 = bessel_j_reduced(mu + 1.0, z)?;
    Ok((pw * l0, pw * ((mu + 0.5) / r * l0 - k * 0.5 * z * l1)))
}

/// (χ₀⁺, χ₀⁺′) with χ₀⁺ = i√(πkr/2) H⁽¹⁾_μ(kr).
pub fn free_jost(k: C, mu: f64, r: f64) -> Result<(C, C)> {
    let z = k * r;
    let (h, hp) = hankel1_deriv(mu, z)?;
    let s = I * (0.5 * PI * z).sqrt();
    let chi = s * h;
    Ok((chi, chi / (2.0 * r) + s * k * hp))
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Liouville,
    Plain,
}

struct Outward {
    states: Vec<(C, C)>,
    integral: C,
}

/// Integrates the regular solution from r₀ to the last output. Near the
/// origin the variable w = u/r^{μ+1/2} is used, normalised to w(0) = 1.
fn outward(pot: &RadialPotential, k: C, mu: f64, outputs: &[f64], with_integral: bool, st: &SolverSettings) -> Result<Outward> {
    let r0 = start_radius(k);
    let r_end = *outputs.last().expect("at least one output");
    if outputs[0] < r0 || outputs.windows(2).any(|w| w[1] < w[0]) {
        return domain("regular-solution grid must be increasing and start at or beyond r0");
    }
    let p = mu + 0.5;
    let cent = (mu - 0.5) * (mu + 0.5);
    let k2 = k * k;
    let s = k.norm().max(1.0);
    let r_sw = (0.5 / (k.norm() + 1.0)).min(r_end);
    let mut cuts = vec![r0];
    cuts.extend(pot.breakpoints().into_iter().filter(|&b| b > r0 && b < r_end));
    if r_sw > r0 {
        cuts.push(r_sw);
    }
    cuts.push(r_end);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let norm = PI.sqrt() * rgamma(mu + 1.0) * ComplexArg::new(0.5 * k)?.powf(p);
    let first_end = cuts.get(1).copied().unwrap_or(r_end);
    let v0 = pot.value_within(r0, 0.0, first_end);
    let c = (v0 - k2) / (4.0 * (mu + 1.0));
    let mut y = [C::new(1.0, 0.0) + c * r0 * r0, 2.0 * c * r0, C::new(0.0, 0.0)];
    if with_integral {
        y[2] = v0 * k * r0 * r0 / (4.0 * mu) / norm;
    }
    let mut mode = Mode::Liouville;
    let to_u = |mode: Mode, r: f64, y: &[C; 3]| -> (C, C) {
        match mode {
            Mode::Liouville => {
                let rp = r.powf(p);
                (norm * rp * y[0], norm * (p * rp / r * y[0] + rp * y[1]))
            }
            Mode::Plain => (norm * y[0], norm * s * y[1]),
        }
    };
    let mut states = Vec::with_capacity(outputs.len());
    let mut next = 0;
    while next < outputs.len() && outputs[next] == r0 {
        states.push(to_u(mode, r0, &y));
        next += 1;
    }
    for seg in cuts.windows(2) {
        let (lo, hi) = (seg[0], seg[1]);
        if mode == Mode::Liouville && lo >= r_sw {
            let (u, up) = to_u(mode, lo, &y);
            y = [u / norm, up / (norm * s), y[2]];
            mode = Mode::Plain;
        }
        let start = next;
        while next < outputs.len() && outputs[next] <= hi {
            next += 1;
        }
        let outs = &outputs[start..next];
        let rhs = |r: f64, y: &[C; 3]| -> [C; 3] {
            let v = pot.value_within(r, lo, hi);
            let src = if with_integral && v != 0.0 {
                let (chi, _) = free_jost(k, mu, r).unwrap_or((C::new(f64::NAN, 0.0), C::new(0.0, 0.0)));
                chi * v
            } else {
                C::new(0.0, 0.0)
            };
            match mode {
                Mode::Liouville => [y[1], (v - k2) * y[0] - 2.0 * p / r * y[1], src * r.powf(p) * y[0]],
                Mode::Plain => [s * y[1], (cent / (r * r) + v - k2) * y[0] / s, src * y[0]],
            }
        };
        let (yend, ys) = st.ode.solve(rhs, lo, y, hi, outs)?;
        for (r, yo) in outs.iter().zip(&ys) {
            states.push(to_u(mode, *r, yo));
        }
        y = yend;
    }
    if states.iter().any(|(u, up)| !(u.is_finite() && up.is_finite())) || !y[2].is_finite() {
        return Err(CoreError::StepFailure { r: r_end });
    }
    Ok(Outward { states, integral: norm * y[2] })
}

/// Integrates the Jost solution inward from `r_start`, where it equals χ₀⁺.
fn inward(pot: &RadialPotential, k: C, mu: f64, r_start: f64, outputs_desc: &[f64], st: &SolverSettings) -> Result<Vec<(C, C)>> {
    let r_end = *outputs_desc.last().expect("at least one output");
    let cent = (mu - 0.5) * (mu + 0.5);
    let k2 = k * k;
    let s = k.norm().max(1.0);
    let mut cuts = vec![r_start];
    let mut inner: Vec<f64> = pot.breakpoints().into_iter().filter(|&b| b < r_start && b > r_end).collect();
    inner.sort_by(|a, b| b.total_cmp(a));
    cuts.extend(inner);
    cuts.push(r_end);
    cuts.dedup();
    let (chi, chip) = free_jost(k, mu, r_start)?;
    let mut y = [chi, chip / s];
    let mut states = Vec::with_capacity(outputs_desc.len());
    let mut next = 0;
    while next < outputs_desc.len() && outputs_desc[next] >= r_start {
        states.push((y[0], s * y[1]));
        next += 1;
    }
    for seg in cuts.windows(2) {
        let (hi, lo) = (seg[0], seg[1]);
        let start = next;
        while next < outputs_desc.len() && outputs_desc[next] >= lo {
            next += 1;
        }
        let outs = &outputs_desc[start..next];
        let rhs = |r: f64, y: &[C; 2]| -> [C; 2] {
            let v = pot.value_within(r, lo, hi);
            [s * y[1], (cent / (r * r) + v - k2) * y[0] / s]
        };
        let (yend, ys) = st.ode.solve(rhs, hi, y, lo, outs)?;
        states.extend(ys.iter().map(|yo| (yo[0], s * yo[1])));
        y = yend;
    }
    if states.iter().any(|(u, up)| !(u.is_finite() && up.is_finite())) {
        return Err(CoreError::StepFailure { r: r_end });
    }
    Ok(states)
}

/// Regular solution φ on a default grid over [r₀, r_max].
pub fn regular_solution(pot: &RadialPotential, k: C, mu: f64, r_max: f64) -> Result<RadialSolution> {
    regular_solution_on(pot, k, mu, &default_grid(start_radius(k), r_max, 400), &SolverSettings::default())
}

/// Regular solution on a caller-supplied increasing grid.
pub fn regular_solution_on(pot: &RadialPotential, k: C, mu: f64, grid: &[f64], st: &SolverSettings) -> Result<RadialSolution> {
    check_args(k, mu)?;
    if grid.is_empty() {
        return Err(CoreError::MatchingEmpty);
    }
    let out = outward(pot, k, mu, grid, false, st)?;
    Ok(RadialSolution {
        kind: SolutionKind::Regular,
        k,
        mu,
        grid: grid.to_vec(),
        values: out.states.iter().map(|s| s.0).collect(),
        derivatives: out.states.iter().map(|s| s.1).collect(),
    })
}

/// Jost solution χ⁺ on [r_min, R], R the potential cutoff.
pub fn jost_solution(pot: &RadialPotential, k: C, mu: f64, r_min: f64) -> Result<RadialSolution> {
    let big_r = pot.cutoff(k.norm()).max(r_min);
    jost_solution_on(pot, k, mu, &default_grid(r_min, big_r, 400), &SolverSettings::default())
}

/// Jost solution on a caller-supplied increasing grid; beyond the cutoff it
/// is the free solution.
pub fn jost_solution_on(pot: &RadialPotential, k: C, mu: f64, grid: &[f64], st: &SolverSettings) -> Result<RadialSolution> {
    check_args(k, mu)?;
    if grid.is_empty() || !(grid[0] > 0.0) {
        return domain("Jost-solution grid must be non-empty and positive");
    }
    let big_r = pot.cutoff(k.norm());
    let inside: Vec<f64> = grid.iter().rev().copied().filter(|&r| r < big_r).collect();
    let mut values = Vec::with_capacity(grid.len());
    let mut derivatives = Vec::with_capacity(grid.len());
    let states = if inside.is_empty() { Vec::new() } else { inward(pot, k, mu, big_r, &inside, st)? };
    for (r, (v, d)) in inside.iter().rev().zip(states.iter().rev()) {
        debug_assert!(*r < big_r);
        values.push(*v);
        derivatives.push(*d);
    }
    for &r in grid.iter().filter(|&&r| r >= big_r) {
        let (v, d) = free_jost(k, mu, r)?;
        values.push(v);
        derivatives.push(d);
    }
    Ok(RadialSolution { kind: SolutionKind::JostPlus, k, mu, grid: grid.to_vec(), values, derivatives })
}

fn default_grid(r0: f64, r_max: f64, n: usize) -> Vec<f64> {
    if !(r_max > r0) {
        return vec![r0];
    }
    // a logarithmic quarter resolves the origin, the rest is linear
    let knee = (0.05 * r_max).max(r0);
    let nl = n / 4;
    let mut g: Vec<f64> = (0..nl).map(|i| r0 * (knee / r0).powf(i as f64 / nl as f64)).collect();
    let nr = n - nl;
    g.extend((0..nr).map(|i| knee + (r_max - knee) * i as f64 / (nr - 1) as f64));
    g.dedup_by(|b, a| *b <= *a);
    g
}

/// Matching radii R/2 … R.
pub fn matching_radii(pot: &RadialPotential, k: C, n: usize) -> Vec<f64> {
    let big_r = pot.cutoff(k.norm());
    let n = n.max(2);
    (0..n).map(|j| 0.5 * big_r * (1.0 + j as f64 / (n - 1) as f64)).collect()
}

fn evaluate(pot: &RadialPotential, k: C, mu: f64, with_integral: bool, st: &SolverSettings) -> Result<JostEvaluation> {
    check_args(k, mu)?;
    let radii = matching_radii(pot, k, st.matching_points);
    if radii[0] <= start_radius(k) {
        return Err(CoreError::MatchingEmpty);
    }
    let big_r = radii[radii.len() - 1];
    let with_integral = with_integral && pot.has_finite_support();
    let out = outward(pot, k, mu, &radii, with_integral, st)?;
    let desc: Vec<f64> = radii.iter().rev().copied().collect();
    let mut jost = inward(pot, k, mu, big_r, &desc, st)?;
    jost.reverse();
    let fs: Vec<C> = out.states.iter().zip(&jost).map(|(&(u, up), &(x, xp))| (x * up - xp * u) / k).collect();
    let n = fs.len() as f64;
    let f = fs.iter().sum::<C>() / n;
    let wronskian_residual = fs.iter().map(|g| (g - f).norm()).fold(0.0, f64::max);
    let wronskian_spread = (fs.iter().map(|g| (g - f).norm_sqr()).sum::<f64>() / n).sqrt();
    Ok(JostEvaluation { f, k, mu, wronskian_residual, wronskian_spread, integral_route: with_integral.then(|| 1.0 + out.integral / k) })
}

/// F(k, μ) = W(χ⁺, φ)/k from several matching radii, with the integral
/// representation as a second route when V has finite support.
pub fn jost_function(pot: &RadialPotential, k: C, mu: f64) -> Result<JostEvaluation> {
    evaluate(pot, k, mu, true, &SolverSettings::default())
}

/// F(k, μ) without the integral-representation route.
pub fn jost_function_with(pot: &RadialPotential, k: C, mu: f64, st: &SolverSettings) -> Result<JostEvaluation> {
    evaluate(pot, k, mu, false, st)
}
