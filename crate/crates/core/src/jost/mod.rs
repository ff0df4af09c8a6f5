//! Regular and Jost solutions of the radial equation
//! u″ = [(μ² − 1/4)/r² + V(r) − k²] u at continuous order μ > 0, the Jost
//! function F(k, μ) = W(χ⁺, φ)/k, phase shifts, bound states, Levinson's
//! theorem and Regge trajectories.
//!
//! Normalisations: φ ~ (√π/Γ(μ+1))(kr/2)^{μ+1/2} as r → 0 and
//! χ⁺ ~ e^{i(kr − πμ/2 + π/4)} as r → ∞, so that V ≡ 0 gives F ≡ 1 and
//! δ = −arg F.

mod potential;
mod solve;
mod spectrum;

pub use potential::{RadialPotential, TAIL_TOL};
pub use solve::{
    free_jost, free_regular, jost_function, jost_function_with, jost_solution, jost_solution_on, matching_radii, regular_solution,
    regular_solution_on, start_radius, JostEvaluation, RadialSolution, SolutionKind, SolverSettings,
};
pub use spectrum::{
    bound_states, bound_states_default, depth_scale, levinson_check, log_grid, phase_shift_curve, regge_trace, unwrap_phases,
    BoundStateScan, JostProvider, LevinsonRecord, LevinsonSettings, NumericJost, PhaseShiftCurve, Trajectory, KAPPA_FLOOR, SCAN_PER_DECADE,
};
