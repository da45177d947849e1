//! Bessel functions of the first kind for integer and half-integer order.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Largest supported |2ν|.
pub const MAX_TWO_NU: i64 = 100;

/// Bessel order ν stored as the integer 2ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BesselOrder {
    two_nu: i64,
}

impl BesselOrder {
    pub fn from_two_nu(two_nu: i64) -> Result<Self> {
        if two_nu.abs() > MAX_TWO_NU {
            return Err(Error::UnsupportedOrder(two_nu));
        }
        Ok(Self { two_nu })
    }

    /// Builds an order from a real ν; fails unless 2ν is an integer.
    pub fn from_nu(nu: f64) -> Result<Self> {
        let t = 2.0 * nu;
        if !t.is_finite() || (t - t.round()).abs() > 1e-12 {
            return Err(Error::UnsupportedOrder(if t.is_finite() { t.round() as i64 } else { i64::MAX }));
        }
        Self::from_two_nu(t.round() as i64)
    }

    pub fn integer(n: i64) -> Result<Self> {
        Self::from_two_nu(2 * n)
    }

    pub fn two_nu(self) -> i64 {
        self.two_nu
    }

    pub fn nu(self) -> f64 {
        self.two_nu as f64 / 2.0
    }

    pub fn is_half_integer(self) -> bool {
        self.two_nu % 2 != 0
    }
}

/// J_ν(x) for x ≥ 0.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::DomainError(format!("bessel_j requires x >= 0, got {x}")));
    }
    if order.is_half_integer() {
        half_integer(order.two_nu, x)
    } else {
        let n = order.two_nu / 2;
        let v = integer_order(n.unsigned_abs() as usize, x);
        Ok(if n < 0 && n % 2 != 0 { -v } else { v })
    }
}

/// Convenience wrapper for a real order with 2ν integral.
pub fn bessel_j_nu(nu: f64, x: f64) -> Result<f64> {
    bessel_j(BesselOrder::from_nu(nu)?, x)
}

fn integer_order(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if x <= 4.0 || x * x <= 4.0 * (nf + 1.0) {
        series(n, x)
    } else if x >= hankel_threshold(nf) {
        hankel(nf, x)
    } else {
        miller(n, x)
    }
}

fn hankel_threshold(nu: f64) -> f64 {
    (0.6 * nu * nu).max(25.0)
}

fn series(n: usize, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= h / k as f64;
    }
    let q = -h * h;
    let mut term = lead;
    let mut sum = lead;
    for m in 1..500 {
        term *= q / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// cos and sin of (2ν+1)π/4 for integral 2ν.
fn quarter_turn(two_nu: i64) -> (f64, f64) {
    match (two_nu + 1).rem_euclid(8) {
        0 => (1.0, 0.0),
        1 => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        2 => (0.0, 1.0),
        3 => (-FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        4 => (-1.0, 0.0),
        5 => (-FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        6 => (0.0, -1.0),
        _ => (FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
    }
}

fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() > term.abs() && odd * odd > mu {
            break;
        }
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let (c0, s0) = quarter_turn((2.0 * nu).round() as i64);
    let (s, c) = x.sin_cos();
    let cos_chi = c * c0 + s * s0;
    let sin_chi = s * c0 - c * s0;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

fn start_index(m: f64) -> usize {
    let base = m + 12.0 * m.cbrt() + 20.0;
    let n = base.ceil() as usize;
    n + n % 2
}

fn miller(n: usize, x: f64) -> f64 {
    let top = start_index((n as f64).max(x));
    let mut jp1 = 0.0f64;
    let mut j = 1e-300f64;
    let mut sum = 0.0f64;
    let mut target = 0.0f64;
    for k in (1..=top).rev() {
        let jm1 = 2.0 * k as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        let idx = k - 1;
        if idx == n {
            target = j;
        }
        if idx % 2 == 0 && idx > 0 {
            sum += 2.0 * j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            sum *= 1e-250;
            target *= 1e-250;
        }
    }
    sum += j;
    target / sum
}

fn half_integer(two_nu: i64, x: f64) -> Result<f64> {
    if x == 0.0 {
        if two_nu > 0 {
            return Ok(0.0);
        }
        return Err(Error::DomainError(format!(
            "J of order {}/2 is unbounded at x = 0",
            two_nu
        )));
    }
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = x.sin_cos();
    let jp = amp * s;
    let jm = amp * c;
    if two_nu == 1 {
        return Ok(jp);
    }
    if two_nu == -1 {
        return Ok(jm);
    }
    if two_nu < 0 {
        // downward in order from ν = -1/2
        let steps = ((-two_nu - 1) / 2) as usize;
        let mut hi = jp;
        let mut cur = jm;
        let mut nu = -0.5;
        for _ in 0..steps {
            let next = 2.0 * nu / x * cur - hi;
            hi = cur;
            cur = next;
            nu -= 1.0;
        }
        return Ok(cur);
    }
    let nu = two_nu as f64 / 2.0;
    if nu <= x {
        let mut lo = jm;
        let mut cur = jp;
        let mut v = 0.5;
        while v < nu - 0.25 {
            let next = 2.0 * v / x * cur - lo;
            lo = cur;
            cur = next;
            v += 1.0;
        }
        return Ok(cur);
    }
    // Miller recurrence normalised against the closed forms at ν = ±1/2
    let top = start_index(nu.max(x)) as f64 + 0.5;
    let mut hi = 0.0f64;
    let mut cur = 1e-300f64;
    let mut v = top;
    let mut target = 0.0f64;
    let mut at_half = 0.0f64;
    loop {
        let next = 2.0 * v / x * cur - hi;
        hi = cur;
        cur = next;
        v -= 1.0;
        if (v - nu).abs() < 0.25 {
            target = cur;
        }
        if (v - 0.5).abs() < 0.25 {
            at_half = cur;
        }
        if (v + 0.5).abs() < 0.25 {
            break;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            hi *= 1e-250;
            target *= 1e-250;
            at_half *= 1e-250;
        }
    }
    let m = at_half.abs().max(cur.abs());
    let (a, b) = (at_half / m, cur / m);
    let scale = (jp * a + jm * b) / (a * a + b * b);
    Ok(target / m * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(two_nu: i64, x: f64) -> f64 {
        bessel_j(BesselOrder::from_two_nu(two_nu).unwrap(), x).unwrap()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(j(0, 0.0), 1.0);
        assert!(j(1, PI).abs() < 1e-15);
        assert_eq!(j(4, 0.0), 0.0);
    }

    #[test]
    fn known_values() {
        assert!((j(2, 0.1) - 0.049_937_526_036_242_00).abs() < 1e-16);
        assert!(j(0, 2.404_825_557_695_773).abs() < 1e-12);
        assert!((j(0, 10.0) - (-0.245_935_764_451_348_3)).abs() < 1e-14);
        assert!((j(4, 30.0) - 0.078_451_246_073_265_35).abs() < 1e-14);
    }

    #[test]
    fn branch_boundaries_agree() {
        for &two_nu in &[0i64, 2, 6, 20] {
            let n = (two_nu / 2) as usize;
            for &x in &[4.5, 9.0, 15.0, 26.0, 40.0] {
                let a = miller(n, x);
                if x >= hankel_threshold(n as f64) {
                    let b = hankel(n as f64, x);
                    assert!((a - b).abs() < 2e-13, "n={n} x={x} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn half_integer_paths_agree() {
        let x = 3.0;
        let direct = ((2.0 / (PI * x)).sqrt()) * (x.sin() / x - x.cos());
        assert!((j(3, x) - direct).abs() < 1e-15);
        let jm3 = (2.0 / (PI * x)).sqrt() * (-x.cos() / x - x.sin());
        assert!((j(-3, x) - jm3).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(bessel_j_nu(0.3, 1.0), Err(Error::UnsupportedOrder(_))));
        assert!(matches!(bessel_j_nu(1.0, -1.0), Err(Error::DomainError(_))));
        assert!(matches!(bessel_j_nu(-0.5, 0.0), Err(Error::DomainError(_))));
        assert!(matches!(BesselOrder::from_two_nu(102), Err(Error::UnsupportedOrder(102))));
    }
}
