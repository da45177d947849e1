//! Sampling w_{s,(0,0,k)} on a square grid for contour plots, and the
//! far-field wavefront check on such a grid.

use crate::diffops::Helicity;
use crate::eigenmodes::{eval_w, eval_w_reduced};
use crate::error::{Error, Result};
use crate::field::Point3;
use num_complex::Complex64 as C64;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Xz,
    Xy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Re,
    Im,
    Abs,
    Phase,
}

impl FromStr for Plane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xz" => Ok(Plane::Xz),
            "xy" => Ok(Plane::Xy),
            _ => Err(Error::ConfigError(format!("unknown plane '{s}' (expected xz or xy)"))),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "re" => Ok(Quantity::Re),
            "im" => Ok(Quantity::Im),
            "abs" => Ok(Quantity::Abs),
            "phase" => Ok(Quantity::Phase),
            _ => Err(Error::ConfigError(format!("unknown quantity '{s}' (expected re, im, abs or phase)"))),
        }
    }
}

/// Values on an n×n grid; `None` marks cells where the quantity is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    /// Node coordinates, shared by both axes.
    pub coords: Vec<f64>,
    /// values[i·n + j] belongs to (coords[i], coords[j]).
    pub values: Vec<Option<f64>>,
}

impl Grid {
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.n() + j]
    }

    /// CSV text with header `x,coord2,value`, one row per cell.
    pub fn to_csv(&self) -> String {
        let n = self.n();
        let mut out = String::with_capacity(60 * n * n + 20);
        out.push_str("x,coord2,value\n");
        for i in 0..n {
            for j in 0..n {
                let _ = write!(out, "{:.16e},{:.16e},", self.coords[i], self.coords[j]);
                if let Some(v) = self.get(i, j) {
                    let _ = write!(out, "{v:.16e}");
                }
                out.push('\n');
            }
        }
        out
    }
}

fn cell(s: Helicity, k: f64, p: Point3, quantity: Quantity) -> Option<f64> {
    let value = match quantity {
        // the modulus does not need the azimuthal phase, so it is defined on the axis
        Quantity::Abs => return eval_w_reduced(s, k, p).ok().map(|w| w.norm()),
        _ => eval_w(s, k, p).ok()?,
    };
    let v = match quantity {
        Quantity::Re => value.re,
        Quantity::Im => value.im,
        Quantity::Phase if value == C64::new(0.0, 0.0) => return None,
        Quantity::Phase => value.arg(),
        Quantity::Abs => unreachable!(),
    };
    v.is_finite().then_some(v)
}

/// Samples the chosen quantity of w_{s,(0,0,k)} on [−extent, extent]².
pub fn sample_grid(s: Helicity, k: f64, plane: Plane, extent: f64, n: usize, quantity: Quantity) -> Result<Grid> {
    if n < 16 {
        return Err(Error::ConfigError(format!("grid needs n >= 16, got {n}")));
    }
    if !(extent > 0.0 && extent.is_finite()) {
        return Err(Error::ConfigError(format!("grid extent must be positive, got {extent}")));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::DomainError(format!("wave number must be positive, got {k}")));
    }
    if s.two_s() < 0 {
        return Err(Error::DomainError("w is implemented for s >= 0".into()));
    }
    let coords: Vec<f64> = (0..n).map(|i| -extent + 2.0 * extent * i as f64 / (n - 1) as f64).collect();
    let mut values = Vec::with_capacity(n * n);
    for &a in &coords {
        for &b in &coords {
            let p = match plane {
                Plane::Xz => Point3::new(a, 0.0, b),
                Plane::Xy => Point3::new(a, b, 0.0),
            };
            values.push(cell(s, k, p, quantity));
        }
    }
    Ok(Grid { coords, values })
}

/// Samples the grid and writes it as CSV to `path`.
pub fn emit_grid(
    s: Helicity,
    k: f64,
    plane: Plane,
    extent: f64,
    n: usize,
    quantity: Quantity,
    path: &Path,
) -> Result<Grid> {
    let grid = sample_grid(s, k, plane, extent, n, quantity)?;
    std::fs::write(path, grid.to_csv()).map_err(|e| Error::IoError(format!("{}: {e}", path.display())))?;
    Ok(grid)
}

/// Parses CSV produced by [`Grid::to_csv`].
pub fn parse_csv(text: &str) -> Result<Grid> {
    let mut lines = text.split('\n');
    if lines.next() != Some("x,coord2,value") {
        return Err(Error::ConfigError("grid CSV must start with the header x,coord2,value".into()));
    }
    let mut xs = Vec::new();
    let mut values = Vec::new();
    let parse = |t: &str| t.parse::<f64>().map_err(|e| Error::ConfigError(format!("bad number '{t}': {e}")));
    for line in lines.filter(|l| !l.is_empty()) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(Error::ConfigError(format!("expected 3 columns in '{line}'")));
        }
        let x = parse(cols[0])?;
        if xs.last() != Some(&x) {
            xs.push(x);
        }
        values.push(if cols[2].is_empty() { None } else { Some(parse(cols[2])?) });
    }
    let n = xs.len();
    if n * n != values.len() {
        return Err(Error::ConfigError(format!("{} rows do not form a square grid", values.len())));
    }
    Ok(Grid { coords: xs, values })
}

/// Positions of local maxima of column `i` on coord2 > z_min, refined by parabolic interpolation.
fn column_maxima(grid: &Grid, i: usize, z_min: f64) -> Vec<f64> {
    let n = grid.n();
    let h = grid.coords[1] - grid.coords[0];
    let mut out = Vec::new();
    for j in 1..n - 1 {
        if grid.coords[j] <= z_min {
            continue;
        }
        let (Some(a), Some(b), Some(c)) = (grid.get(i, j - 1), grid.get(i, j), grid.get(i, j + 1)) else {
            continue;
        };
        if b > a && b >= c {
            let den = a - 2.0 * b + c;
            let shift = if den != 0.0 { 0.5 * (a - c) / den } else { 0.0 };
            out.push(grid.coords[j] + shift * h);
        }
    }
    out
}

/// Worst displacement, in wavelengths 2π/k, of the far-field |w| crests of an
/// xz abs grid from constant-z lines, over columns with |x| ≤ `half_width` and
/// crests with r > `r_min`.
pub fn wavefront_deviation(grid: &Grid, k: f64, r_min: f64, half_width: f64) -> Result<f64> {
    let n = grid.n();
    let centre = (0..n)
        .min_by(|&a, &b| grid.coords[a].abs().total_cmp(&grid.coords[b].abs()))
        .ok_or_else(|| Error::DomainError("empty grid".into()))?;
    let reference = column_maxima(grid, centre, r_min);
    if reference.len() < 2 {
        return Err(Error::DomainError(format!(
            "only {} far-field crests found on the axis column; enlarge the extent",
            reference.len()
        )));
    }
    let wavelength = 2.0 * std::f64::consts::PI / k;
    let mut worst = 0.0f64;
    for i in 0..n {
        let x = grid.coords[i];
        if x.abs() > half_width {
            continue;
        }
        let crests: Vec<f64> = column_maxima(grid, i, 0.0).into_iter().filter(|z| x.hypot(*z) > r_min).collect();
        for &z0 in &reference {
            if x.hypot(z0) <= r_min {
                continue;
            }
            let d = crests
                .iter()
                .map(|z| (z - z0).abs())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(d / wavelength);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let g = sample_grid(Helicity::HALF, 1.0, Plane::Xz, 2.0, 17, Quantity::Phase).unwrap();
        let text = g.to_csv();
        assert!(text.starts_with("x,coord2,value\n"));
        assert_eq!(text.lines().count(), 17 * 17 + 1);
        let back = parse_csv(&text).unwrap();
        assert_eq!(back, g);
        // the x = 0 column lies on the z axis, where the phase of w_{1/2} is undefined
        assert!((0..17).all(|j| g.get(8, j).is_none()));
        assert!(g.get(3, 4).is_some());
    }

    #[test]
    fn rejects_small_grids() {
        assert!(matches!(
            sample_grid(Helicity::ZERO, 1.0, Plane::Xy, 1.0, 8, Quantity::Re),
            Err(Error::ConfigError(_))
        ));
    }
}
