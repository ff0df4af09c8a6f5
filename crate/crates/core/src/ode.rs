//! Dormand–Prince 5(4) integrator for small complex systems.

use num_complex::Complex64;

use crate::error::{CoreError, Result};

type C = Complex64;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = B1 - 5179.0 / 57600.0;
const E3: f64 = B3 - 7571.0 / 16695.0;
const E4: f64 = B4 - 393.0 / 640.0;
const E5: f64 = B5 + 92097.0 / 339200.0;
const E6: f64 = B6 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy)]
pub struct Dopri {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Scale every component's error by the largest component instead of its own size.
    pub joint_scale: bool,
}

impl Default for Dopri {
    fn default() -> Self {
        Dopri { rtol: 1e-11, atol: 1e-14, max_steps: 2_000_000, joint_scale: false }
    }
}

fn axpy<const N: usize>(y: &[C; N], terms: &[(f64, &[C; N])], h: f64) -> [C; N] {
    let mut out = *y;
    for (c, k) in terms {
        if *c == 0.0 {
            continue;
        }
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

impl Dopri {
    /// Integrates y' = f(x, y) from x0 to x1 (either direction) and returns
    /// the state at x1 together with the states at the requested output
    /// points, which must lie between x0 and x1 in the direction of travel.
    pub fn solve<const N: usize, F>(&self, mut f: F, x0: f64, y0: [C; N], x1: f64, outputs: &[f64]) -> Result<([C; N], Vec<[C; N]>)>
    where
        F: FnMut(f64, &[C; N]) -> [C; N],
    {
        let dir = if x1 >= x0 { 1.0 } else { -1.0 };
        let span = (x1 - x0).abs();
        let mut out = Vec::with_capacity(outputs.len());
        let mut next_out = 0;
        let mut x = x0;
        let mut y = y0;
        while next_out < outputs.len() && (outputs[next_out] - x0) * dir <= 0.0 {
            out.push(y);
            next_out += 1;
        }
        if span == 0.0 {
            return Ok((y, out));
        }
        let mut k1 = f(x, &y);
        let mut h = self.initial_step(&y, &k1, span);
        let mut last_ratio: f64 = 1e-4;
        for _ in 0..self.max_steps {
            let target = if next_out < outputs.len() { outputs[next_out] } else { x1 };
            let remaining = (target - x) * dir;
            let mut hit = false;
            if h >= remaining {
                h = remaining;
                hit = true;
            }
            let s = dir * h;
            let k2 = f(x + C2 * s, &axpy(&y, &[(A21, &k1)], s));
            let k3 = f(x + C3 * s, &axpy(&y, &[(A31, &k1), (A32, &k2)], s));
            let k4 = f(x + C4 * s, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], s));
            let k5 = f(x + C5 * s, &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], s));
            let k6 = f(x + s, &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], s));
            let ynew = axpy(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], s);
            let k7 = f(x + s, &ynew);
            let joint = if self.joint_scale { (0..N).map(|i| y[i].norm().max(ynew[i].norm())).fold(0.0, f64::max) } else { 0.0 };
            let mut acc = 0.0;
            for i in 0..N {
                let e = s * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let own = if self.joint_scale { joint } else { y[i].norm().max(ynew[i].norm()) };
                let sc = self.atol + self.rtol * own;
                acc += (e.norm() / sc).powi(2);
            }
            let ratio = (acc / N as f64).sqrt();
            if !ratio.is_finite() {
                h *= 0.1;
                if h < 1e-15 * span {
                    return Err(CoreError::StepFailure { r: x });
                }
                continue;
            }
            if ratio <= 1.0 {
                x = if hit { target } else { x + s };
                y = ynew;
                k1 = k7;
                if hit {
                    if next_out < outputs.len() {
                        out.push(y);
                        next_out += 1;
                        while next_out < outputs.len() && outputs[next_out] == x {
                            out.push(y);
                            next_out += 1;
                        }
                    } else {
                        return Ok((y, out));
                    }
                }
                // Gustafsson PI control
                let fac = 0.9 * ratio.max(1e-10).powf(-0.7 / 5.0) * last_ratio.powf(0.4 / 5.0);
                last_ratio = ratio.max(1e-4);
                h *= fac.clamp(0.2, 5.0);
            } else {
                h *= (0.9 * ratio.powf(-0.2)).clamp(0.1, 0.9);
            }
            if h < 1e-15 * span.max(x.abs()) {
                return Err(CoreError::StepFailure { r: x });
            }
        }
        Err(CoreError::StepFailure { r: x })
    }

    fn initial_step<const N: usize>(&self, y: &[C; N], f0: &[C; N], span: f64) -> f64 {
        let mut d0: f64 = 0.0;
        let mut d1: f64 = 0.0;
        for i in 0..N {
            let sc = self.atol + self.rtol * y[i].norm();
            d0 = d0.max(y[i].norm() / sc);
            d1 = d1.max(f0[i].norm() / sc);
        }
        let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h.min(span).max(1e-12 * span)
    }
}
