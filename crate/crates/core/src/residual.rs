//! Residual bookkeeping shared by all identity checks.

use num_complex::Complex64 as C64;
use serde::Serialize;

/// Result of comparing two sides of an identity over a point set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub max_residual: f64,
    pub n_points: usize,
}

impl Residual {
    pub fn new(max_residual: f64, n_points: usize) -> Self {
        Self { max_residual, n_points }
    }

    /// Combines two residuals; NaN residuals poison the result.
    pub fn merge(self, o: Residual) -> Residual {
        let m = if self.max_residual.is_nan() || o.max_residual.is_nan() {
            f64::NAN
        } else {
            self.max_residual.max(o.max_residual)
        };
        Residual::new(m, self.n_points + o.n_points)
    }
}

/// Accumulates ‖lhs − rhs‖∞ against a reference scale ‖·‖∞.
#[derive(Debug, Clone, Copy, Default)]
pub struct RelativeNorm {
    diff: f64,
    scale: f64,
    count: usize,
    poisoned: bool,
}

impl RelativeNorm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one comparison; `scale` entries enlarge the denominator.
    pub fn push(&mut self, lhs: C64, rhs: C64, scale: &[C64]) {
        let d = (lhs - rhs).norm();
        if !d.is_finite() {
            self.poisoned = true;
        }
        self.diff = self.diff.max(d);
        for s in scale {
            self.scale = self.scale.max(s.norm());
        }
        self.scale = self.scale.max(rhs.norm());
    }

    pub fn next_point(&mut self) {
        self.count += 1;
    }

    pub fn relative(&self) -> Residual {
        let r = if self.poisoned {
            f64::NAN
        } else if self.scale > 0.0 {
            self.diff / self.scale
        } else {
            self.diff
        };
        Residual::new(r, self.count)
    }

    pub fn absolute(&self) -> Residual {
        Residual::new(if self.poisoned { f64::NAN } else { self.diff }, self.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_norm() {
        let mut n = RelativeNorm::new();
        n.push(C64::new(1.0, 0.0), C64::new(1.001, 0.0), &[]);
        n.next_point();
        n.push(C64::new(10.0, 0.0), C64::new(10.0, 0.0), &[]);
        n.next_point();
        let r = n.relative();
        assert_eq!(r.n_points, 2);
        assert!((r.max_residual - 1e-4).abs() < 1e-12);
        let mut p = RelativeNorm::new();
        p.push(C64::new(f64::NAN, 0.0), C64::new(0.0, 0.0), &[]);
        assert!(p.relative().max_residual.is_nan());
        assert!(Residual::new(1.0, 1).merge(p.relative()).max_residual.is_nan());
    }
}
