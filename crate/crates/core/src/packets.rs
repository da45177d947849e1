//! Gaussian test fields and seeded point sets used by the check suites.

use crate::field::{DecayClass, Point3, ScalarField, SingularSet};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Polynomial factor of a parity-odd packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OddKind {
    X,
    Y,
    Z,
    Xyz,
}

impl OddKind {
    pub const ALL: [OddKind; 4] = [OddKind::X, OddKind::Y, OddKind::Z, OddKind::Xyz];

    pub fn name(self) -> &'static str {
        match self {
            OddKind::X => "x",
            OddKind::Y => "y",
            OddKind::Z => "z",
            OddKind::Xyz => "xyz",
        }
    }

    fn factor(self, p: Point3) -> f64 {
        match self {
            OddKind::X => p.x,
            OddKind::Y => p.y,
            OddKind::Z => p.z,
            OddKind::Xyz => p.x * p.y * p.z,
        }
    }
}

fn envelope(d: Point3, sigma: f64) -> f64 {
    (-0.5 * d.dot(d) / (sigma * sigma)).exp()
}

fn reach(center: Point3, sigma: f64) -> DecayClass {
    DecayClass::Gaussian { radius: center.norm() + 10.0 * sigma }
}

/// e^{−|r−c|²/2σ²}.
pub fn gaussian(center: Point3, sigma: f64) -> ScalarField {
    ScalarField::new(SingularSet::None, reach(center, sigma), move |p| C64::new(envelope(p - center, sigma), 0.0))
}

/// (1 + i·slope·z)·e^{−|r−c|²/2σ²}, a complex packet without symmetry.
pub fn chirped(center: Point3, sigma: f64, slope: f64) -> ScalarField {
    ScalarField::new(SingularSet::None, reach(center, sigma), move |p| {
        C64::new(1.0, slope * p.z) * envelope(p - center, sigma)
    })
}

/// (1 + x/2 − 3iy/10 + xz/5)·e^{−|r−c|²/2σ²}.
pub fn gauss_poly(center: Point3, sigma: f64) -> ScalarField {
    ScalarField::new(SingularSet::None, reach(center, sigma), move |p| {
        C64::new(1.0 + 0.5 * p.x + 0.2 * p.x * p.z, -0.3 * p.y) * envelope(p - center, sigma)
    })
}

/// {x, y, z, xyz}·e^{−r²/2σ²}.
pub fn odd_packet(kind: OddKind, sigma: f64) -> ScalarField {
    ScalarField::new(SingularSet::None, reach(Point3::ORIGIN, sigma), move |p| {
        C64::new(kind.factor(p) * envelope(p, sigma), 0.0)
    })
}

/// g(r−c) − g(r+c) + i x (g(r−c')+g(r+c'))/5 with unit-width Gaussians g: odd, complex, off-centre.
pub fn odd_mixed() -> ScalarField {
    let c = Point3::new(0.4, -0.3, 0.5);
    let c2 = Point3::new(-0.2, 0.5, 0.3);
    ScalarField::new(SingularSet::None, reach(c, 1.0), move |p| {
        let a = envelope(p - c, 1.0) - envelope(p + c, 1.0);
        let b = p.x * (envelope(p - c2, 1.0) + envelope(p + c2, 1.0));
        C64::new(a, 0.2 * b)
    })
}

/// e^{−r}(1 − 2r/3): radial, even, with ∫√r f dr = 0.
pub fn zero_moment_radial() -> ScalarField {
    ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 45.0 }, |p| {
        let r = p.norm();
        C64::new((-r).exp() * (1.0 - 2.0 * r / 3.0), 0.0)
    })
}

/// Seeded generator for a named check.
pub fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// `n` points with |r| uniform in [r_min, r_max] and |cos θ| ≤ 0.95.
pub fn off_axis_points<R: Rng>(rng: &mut R, n: usize, r_min: f64, r_max: f64) -> Vec<Point3> {
    (0..n)
        .map(|_| {
            let r = rng.gen_range(r_min..=r_max);
            let c: f64 = rng.gen_range(-0.95..=0.95);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - c * c).sqrt();
            Point3::new(r * s * phi.cos(), r * s * phi.sin(), r * c)
        })
        .collect()
}

/// Uniformly distributed unit vectors.
pub fn unit_vectors<R: Rng>(rng: &mut R, n: usize) -> Vec<Point3> {
    (0..n)
        .map(|_| {
            let c: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - c * c).max(0.0).sqrt();
            Point3::new(s * phi.cos(), s * phi.sin(), c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_fields_are_odd() {
        let p = Point3::new(0.3, -0.7, 1.1);
        for kind in OddKind::ALL {
            let f = odd_packet(kind, 1.0);
            assert!((f.eval(p) + f.eval(-p)).norm() < 1e-15);
        }
        let g = odd_mixed();
        assert!((g.eval(p) + g.eval(-p)).norm() < 1e-15);
    }

    #[test]
    fn points_are_reproducible() {
        let a = off_axis_points(&mut rng_for(7, "a"), 5, 0.3, 10.0);
        let b = off_axis_points(&mut rng_for(7, "a"), 5, 0.3, 10.0);
        assert_eq!(a, b);
        for p in a {
            assert!(p.norm() >= 0.3 - 1e-12 && p.norm() <= 10.0 + 1e-12);
            assert!(p.rho() > 0.3 * p.norm());
        }
    }
}
