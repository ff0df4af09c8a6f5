use std::fmt;
use std::path::Path;

use crate::error::{domain, CoreError, Result};
use crate::quad::{integrate_real, Tolerance};

/// Tail threshold used to place the outer edge of an infinite-range potential.
pub const TAIL_TOL: f64 = 1e-12;

/// A spherically symmetric potential V(r).
#[derive(Debug, Clone, PartialEq)]
pub enum RadialPotential {
    Zero,
    /// V = −v0 for r < d, zero outside.
    SquareWell {
        v0: f64,
        d: f64,
    },
    /// V = −v0 e^{−r/range}.
    Exponential {
        v0: f64,
        range: f64,
    },
    /// Linear interpolation of samples, constant below the first radius and
    /// zero beyond the last.
    Tabulated {
        r: Vec<f64>,
        v: Vec<f64>,
    },
}

impl RadialPotential {
    pub fn square_well(v0: f64, d: f64) -> Result<Self> {
        if !(v0.is_finite() && v0 >= 0.0 && d.is_finite() && d > 0.0) {
            return domain(format!("square well needs V0 >= 0 and d > 0, got V0={v0}, d={d}"));
        }
        Ok(RadialPotential::SquareWell { v0, d })
    }

    pub fn exponential(v0: f64, range: f64) -> Result<Self> {
        if !(v0.is_finite() && range.is_finite() && range > 0.0) {
            return domain("exponential potential needs finite V0 and range > 0");
        }
        Ok(RadialPotential::Exponential { v0, range })
    }

    pub fn tabulated(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 2 {
            return domain("tabulated potential needs at least two (r, V) samples");
        }
        if !(r[0] > 0.0) {
            return domain("tabulated potential must start at r > 0");
        }
        if r.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("tabulated radii must be strictly increasing");
        }
        if r.iter().chain(&v).any(|x| !x.is_finite()) {
            return domain("tabulated potential contains non-finite values");
        }
        Ok(RadialPotential::Tabulated { r, v })
    }

    /// Parses two whitespace- or comma-separated columns; '#' starts a comment line.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut r = Vec::new();
        let mut v = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
            if cols.len() != 2 {
                return domain(format!("line {}: expected two columns", n + 1));
            }
            let parse = |s: &str| s.parse::<f64>().map_err(|_| CoreError::Domain(format!("line {}: bad number '{s}'", n + 1)));
            r.push(parse(cols[0])?);
            v.push(parse(cols[1])?);
        }
        Self::tabulated(r, v)
    }

    pub fn read_table(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CoreError::Domain(format!("{}: {e}", path.display())))?;
        Self::parse_table(&text)
    }

    pub fn value(&self, r: f64) -> f64 {
        match self {
            RadialPotential::Zero => 0.0,
            RadialPotential::SquareWell { v0, d } => {
                if r < *d {
                    -v0
                } else {
                    0.0
                }
            }
            RadialPotential::Exponential { v0, range } => -v0 * (-r / range).exp(),
            RadialPotential::Tabulated { r: rs, v } => {
                if r <= rs[0] {
                    return v[0];
                }
                if r > rs[rs.len() - 1] {
                    return 0.0;
                }
                let i = rs.partition_point(|&x| x < r).max(1);
                let t = (r - rs[i - 1]) / (rs[i] - rs[i - 1]);
                v[i - 1] + t * (v[i] - v[i - 1])
            }
        }
    }

    /// V(r) as seen from inside the interval [lo, hi], so that jumps at the
    /// interval ends take the interior value.
    pub fn value_within(&self, r: f64, lo: f64, hi: f64) -> f64 {
        self.value(r.clamp(lo.next_up(), hi.next_down().max(lo.next_up())))
    }

    /// Radii where V or V′ is discontinuous.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            RadialPotential::SquareWell { d, .. } => vec![*d],
            RadialPotential::Tabulated { r, .. } => r.clone(),
            _ => Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RadialPotential::Zero => true,
            RadialPotential::SquareWell { v0, .. } | RadialPotential::Exponential { v0, .. } => *v0 == 0.0,
            RadialPotential::Tabulated { v, .. } => v.iter().all(|&x| x == 0.0),
        }
    }

    /// True when V vanishes identically beyond some radius.
    pub fn has_finite_support(&self) -> bool {
        !matches!(self, RadialPotential::Exponential { .. })
    }

    /// ∫_R^∞ r|V| dr.
    pub fn tail_moment(&self, big_r: f64) -> f64 {
        match self {
            RadialPotential::Exponential { v0, range } => v0.abs() * range * (big_r + range) * (-big_r / range).exp(),
            _ => {
                let end = self.support_end();
                if big_r >= end {
                    0.0
                } else {
                    self.moment(big_r, end, |r| r)
                }
            }
        }
    }

    fn support_end(&self) -> f64 {
        match self {
            RadialPotential::Zero => 0.0,
            RadialPotential::SquareWell { d, .. } => *d,
            RadialPotential::Tabulated { r, .. } => r[r.len() - 1],
            RadialPotential::Exponential { .. } => f64::INFINITY,
        }
    }

    /// Outer radius beyond which the potential is dropped: the edge of the
    /// support, or where ∫_R^∞ r|V| dr < TAIL_TOL·|k|.
    pub fn cutoff(&self, k_abs: f64) -> f64 {
        match self {
            RadialPotential::Zero => 1.0,
            RadialPotential::Exponential { range, .. } => {
                let target = TAIL_TOL * k_abs.max(1e-6);
                let mut r = *range;
                while self.tail_moment(r) > target {
                    r *= 1.25;
                }
                r
            }
            _ if self.is_zero() => self.support_end().max(1.0),
            _ => self.support_end(),
        }
    }

    /// Integrability certificates (I₁, I₂) = (∫ r|V|, ∫ r(1+r)|V|).
    pub fn integrability(&self) -> (f64, f64) {
        match self {
            RadialPotential::Zero => (0.0, 0.0),
            RadialPotential::SquareWell { v0, d } => {
                let i1 = v0.abs() * d * d / 2.0;
                (i1, i1 + v0.abs() * d.powi(3) / 3.0)
            }
            RadialPotential::Exponential { v0, range } => {
                let i1 = v0.abs() * range * range;
                (i1, i1 + 2.0 * v0.abs() * range.powi(3))
            }
            RadialPotential::Tabulated { r, .. } => {
                let end = r[r.len() - 1];
                let i1 = self.moment(0.0, end, |x| x);
                (i1, i1 + self.moment(0.0, end, |x| x * x))
            }
        }
    }

    fn moment(&self, a: f64, b: f64, w: impl Fn(f64) -> f64) -> f64 {
        let mut cuts: Vec<f64> =
            std::iter::once(a).chain(self.breakpoints().into_iter().filter(|&x| x > a && x < b)).chain(std::iter::once(b)).collect();
        cuts.dedup();
        cuts.windows(2)
            .map(|s| {
                let (lo, hi) = (s[0], s[1]);
                integrate_real(|x| w(x) * self.value_within(x, lo, hi).abs(), lo, hi, Tolerance::default())
                    .map(|(v, _)| v)
                    .unwrap_or(f64::NAN)
            })
            .sum()
    }
}

impl fmt::Display for RadialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialPotential::Zero => write!(f, "zero"),
            RadialPotential::SquareWell { v0, d } => write!(f, "square-well V0={v0} d={d}"),
            RadialPotential::Exponential { v0, range } => write!(f, "exponential V0={v0} range={range}"),
            RadialPotential::Tabulated { r, .. } => {
                write!(f, "tabulated {} samples on [{}, {}]", r.len(), r[0], r[r.len() - 1])
            }
        }
    }
}
