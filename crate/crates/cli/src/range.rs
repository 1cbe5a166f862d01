//! Numeric grids given as `start:stop:step`, a comma list, or one value.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    text: String,
    values: Vec<f64>,
}

impl Grid {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

// grid points are rounded so 0.1 + 2 * 0.1 prints as 0.3
fn tidy(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn number(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

impl FromStr for Grid {
    type Err = String;

    /// `start:stop:step` includes `start` and every `start + k * step` below
    /// `stop + step / 2`, so `stop` itself is included when it lies on the grid.
    fn from_str(s: &str) -> Result<Self, String> {
        let values = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [start, stop, step] = parts[..] else {
                return Err(format!("range '{s}' must be start:stop:step"));
            };
            let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
            if step <= 0.0 {
                return Err(format!("range step must be positive, got {step}"));
            }
            if stop < start {
                return Err(format!("range stop {stop} is below start {start}"));
            }
            let end = stop + step / 2.0;
            let mut v = Vec::new();
            let mut k = 0u32;
            loop {
                let x = start + f64::from(k) * step;
                if x >= end {
                    break;
                }
                v.push(tidy(x));
                k += 1;
                if k > 1_000_000 {
                    return Err(format!("range '{s}' has too many points"));
                }
            }
            v
        } else {
            s.split(',').map(number).collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err("empty grid".into());
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("grid '{s}' must be increasing"));
        }
        Ok(Grid { text: s.to_string(), values })
    }
}
