use std::f64::consts::PI;
use std::str::FromStr;

/// Parses a real number. Accepts `inf`, `-inf` and multiples of π written as
/// `pi`, `0.25pi` or `-2*pi`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let v = match t.strip_suffix("pi") {
        Some(c) => {
            let c = c.strip_suffix('*').unwrap_or(c);
            let coef = match c {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => c.parse::<f64>().map_err(|_| format!("'{t}' is not a number"))?,
            };
            coef * PI
        }
        None => t.parse::<f64>().map_err(|_| format!("'{t}' is not a number"))?,
    };
    if v.is_nan() {
        return Err(format!("'{t}' is not a number"));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// A sampling grid given either as `start:stop:count[:log]` or as an explicit
/// comma-separated list.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Range { start: f64, stop: f64, count: usize, spacing: Spacing },
    List(Vec<f64>),
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if !s.contains(':') {
            let values = s.split(',').map(parse_number).collect::<Result<Vec<_>, _>>()?;
            return Ok(Grid::List(values));
        }
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("grid '{s}' must look like start:stop:count[:log|:lin]"));
        }
        let start = parse_number(parts[0])?;
        let stop = parse_number(parts[1])?;
        let count: usize = parts[2].trim().parse().map_err(|_| format!("grid count '{}' is not a whole number", parts[2]))?;
        let spacing = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => return Err(format!("unknown grid spacing '{other}'")),
        };
        if count < 2 {
            return Err(format!("grid '{s}' needs at least two points"));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(format!("grid '{s}' needs finite start < stop"));
        }
        if spacing == Spacing::Log && !(start > 0.0) {
            return Err(format!("log grid '{s}' needs a positive start"));
        }
        Ok(Grid::Range { start, stop, count, spacing })
    }
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::List(v) => v.clone(),
            Grid::Range { start, stop, count, spacing } => {
                let n = (*count - 1) as f64;
                match spacing {
                    Spacing::Linear => (0..*count).map(|i| start + (stop - start) * i as f64 / n).collect(),
                    Spacing::Log => {
                        let (a, b) = (start.ln(), stop.ln());
                        let mut v: Vec<f64> = (0..*count).map(|i| (a + (b - a) * i as f64 / n).exp()).collect();
                        v[0] = *start;
                        v[*count - 1] = *stop;
                        v
                    }
                }
            }
        }
    }

    /// Values that must all be finite, for grids of angles and momenta.
    pub fn finite_values(&self, name: &str) -> Result<Vec<f64>, String> {
        let v = self.values();
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(format!("{name} grid must be non-empty and finite"));
        }
        Ok(v)
    }

    /// Values of a grid that must be strictly positive.
    pub fn positive_values(&self, name: &str) -> Result<Vec<f64>, String> {
        let v = self.finite_values(name)?;
        if v.iter().any(|&x| !(x > 0.0)) {
            return Err(format!("{name} grid must be positive"));
        }
        Ok(v)
    }
}
