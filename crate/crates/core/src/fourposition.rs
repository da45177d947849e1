//! The time component r⁰ of the position operator, its boost partner K̄ and
//! the commutation checks tying them to the spatial coordinates.

use crate::diffops::{partial, FdScheme};
use crate::error::Result;
use crate::field::{DecayClass, Point3, ScalarField, SingularSet};
use crate::quadrature::gauss_legendre;
use crate::raytransforms::{apply_g_conj_at, apply_u_with, apply_v_with, apply_z_weighted_at, Direction, QuadratureSpec, Sign};
use crate::residual::{RelativeNorm, Residual};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const I: C64 = C64::new(0.0, 1.0);

/// Which of the two equivalent factorisations is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// r⁰ = i r G'₊, K̄ = K (−i G'₊).
    Left,
    /// r⁰ = i G'₋ r, K̄ = (−i G'₋) K.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PositionSpec {
    pub quad: QuadratureSpec,
    pub scheme: FdScheme,
}

fn nan() -> C64 {
    C64::new(f64::NAN, f64::NAN)
}

fn nonlocal_decay(f: &ScalarField) -> DecayClass {
    DecayClass::PowerLaw { exponent: 1.5, scale: f.decay.length_scale().max(1.0) }
}

fn nonlocal<F>(f: &ScalarField, op: F) -> ScalarField
where
    F: Fn(&ScalarField, Point3) -> Result<C64> + Send + Sync + 'static,
{
    let g = f.clone();
    let sing = match f.singular_set {
        SingularSet::None | SingularSet::Origin => SingularSet::Origin,
        _ => SingularSet::FullZAxis,
    };
    ScalarField::new(sing, nonlocal_decay(f), move |p| op(&g, p).unwrap_or_else(|_| nan()))
}

/// −i G'± f with G' = r^{-1/2} G r^{1/2}; the + sign gives UV†, the − sign VU†.
pub fn apply_mixing(sign: Sign, f: &ScalarField, spec: PositionSpec) -> ScalarField {
    nonlocal(f, move |g, p| Ok(-I * apply_g_conj_at(sign, g, p, &spec.quad)?.value))
}

pub fn r0_at(side: Side, f: &ScalarField, p: Point3, spec: &PositionSpec) -> Result<C64> {
    match side {
        Side::Left => Ok(I * p.norm() * apply_g_conj_at(Sign::Plus, f, p, &spec.quad)?.value),
        Side::Right => {
            let rf = f.times_radius_pow(1.0);
            Ok(I * apply_g_conj_at(Sign::Minus, &rf, p, &spec.quad)?.value)
        }
    }
}

pub fn apply_r0_with(side: Side, f: &ScalarField, spec: PositionSpec) -> ScalarField {
    match side {
        Side::Left => nonlocal(f, move |g, p| r0_at(Side::Left, g, p, &spec)),
        Side::Right => {
            let rf = f.times_radius_pow(1.0);
            let mut out = nonlocal(&rf, move |g, p| Ok(I * apply_g_conj_at(Sign::Minus, g, p, &spec.quad)?.value));
            out.decay = nonlocal_decay(f);
            out
        }
    }
}

pub fn apply_r0(side: Side, f: &ScalarField) -> ScalarField {
    apply_r0_with(side, f, PositionSpec::default())
}

/// Helicity-zero boost component K^a f = −i r ∂_a f.
pub fn boost_component(f: &ScalarField, a: usize, scheme: FdScheme) -> ScalarField {
    let g = f.clone();
    ScalarField::new(f.singular_set, f.decay, move |p| -I * p.norm() * partial(&g, p, a, scheme))
}

/// Component a of K̄ applied to f in the chosen factorisation.
pub fn kbar_component(side: Side, f: &ScalarField, a: usize, spec: PositionSpec) -> ScalarField {
    match side {
        Side::Left => boost_component(&apply_mixing(Sign::Plus, f, spec), a, spec.scheme),
        Side::Right => apply_mixing(Sign::Minus, &boost_component(f, a, spec.scheme), spec),
    }
}

/// max over a direction grid of |Z₊(√r f)| at unit radius.
pub fn boundary_residual(f: &ScalarField, n_dirs: usize, spec: &PositionSpec) -> Result<Residual> {
    let n = n_dirs.max(2);
    let (xs, _) = gauss_legendre(n);
    let mut worst = 0.0f64;
    let mut count = 0;
    for &c in &xs {
        let st = (1.0 - c * c).max(0.0).sqrt();
        for j in 0..2 * n {
            let phi = PI * (j as f64 + 0.5) / n as f64;
            let d = Point3::new(st * phi.cos(), st * phi.sin(), c);
            let z = apply_z_weighted_at(Sign::Plus, f, 0.5, d, &spec.quad)?.value.norm();
            worst = if z.is_nan() || worst.is_nan() { f64::NAN } else { worst.max(z) };
            count += 1;
        }
    }
    Ok(Residual::new(worst, count))
}

fn compare<L, R>(pts: &[Point3], mut lhs: L, mut rhs: R) -> Residual
where
    L: FnMut(Point3) -> Vec<C64>,
    R: FnMut(Point3) -> Vec<C64>,
{
    let mut norm = RelativeNorm::new();
    for &p in pts {
        let l = lhs(p);
        let r = rhs(p);
        for (a, b) in l.iter().zip(&r) {
            norm.push(*a, *b, &[*a]);
        }
        norm.next_point();
    }
    norm.relative()
}

/// Agreement of the two factorisations of K̄.
pub fn check_kbar_forms(f: &ScalarField, pts: &[Point3], spec: PositionSpec) -> Residual {
    let left: Vec<ScalarField> = (0..3).map(|a| kbar_component(Side::Left, f, a, spec)).collect();
    let right: Vec<ScalarField> = (0..3).map(|a| kbar_component(Side::Right, f, a, spec)).collect();
    compare(pts, |p| left.iter().map(|g| g.eval(p)).collect(), |p| right.iter().map(|g| g.eval(p)).collect())
}

/// [K̄^a, x^b] f = i δ^{ab} r⁰ f for all a, b.
pub fn check_boost_position(f: &ScalarField, pts: &[Point3], spec: PositionSpec) -> Residual {
    let kf: Vec<ScalarField> = (0..3).map(|a| kbar_component(Side::Right, f, a, spec)).collect();
    let kxf: Vec<Vec<ScalarField>> = (0..3)
        .map(|a| (0..3).map(|b| kbar_component(Side::Right, &f.times_coordinate(b), a, spec)).collect())
        .collect();
    let r0f = apply_r0_with(Side::Left, f, spec);
    compare(
        pts,
        |p| {
            let mut out = Vec::with_capacity(9);
            let k: Vec<C64> = kf.iter().map(|g| g.eval(p)).collect();
            for a in 0..3 {
                for b in 0..3 {
                    out.push(kxf[a][b].eval(p) - p.component(b) * k[a]);
                }
            }
            out
        },
        |p| {
            let r0 = r0f.eval(p);
            (0..9).map(|i| if i % 4 == 0 { I * r0 } else { C64::new(0.0, 0.0) }).collect()
        },
    )
}

/// [K̄^a, r⁰] f = i x^a f.
pub fn check_kbar_r0(f: &ScalarField, pts: &[Point3], spec: PositionSpec) -> Residual {
    let r0f = apply_r0_with(Side::Left, f, spec);
    let k_r0: Vec<ScalarField> = (0..3).map(|a| kbar_component(Side::Right, &r0f, a, spec)).collect();
    let kf: Vec<ScalarField> = (0..3).map(|a| kbar_component(Side::Right, f, a, spec)).collect();
    let r0_k: Vec<ScalarField> = kf.iter().map(|g| apply_r0_with(Side::Left, g, spec)).collect();
    compare(
        pts,
        |p| (0..3).map(|a| k_r0[a].eval(p) - r0_k[a].eval(p)).collect(),
        |p| {
            let v = f.eval(p);
            (0..3).map(|a| I * p.component(a) * v).collect()
        },
    )
}

/// r⁰(r⁰ f) = r² f with the inner factor in form `inner` and the outer
/// factor in the left form.
pub fn check_r0_squared(f: &ScalarField, pts: &[Point3], inner: Side, spec: PositionSpec) -> Residual {
    let once = apply_r0_with(inner, f, spec);
    let twice = apply_r0_with(Side::Left, &once, spec);
    compare(pts, |p| vec![twice.eval(p)], |p| vec![f.eval(p) * p.dot(p)])
}

/// [r⁰, x^b] f = 0, measured against the size of r⁰(x^b f).
pub fn check_r0_commutes(f: &ScalarField, pts: &[Point3], spec: PositionSpec) -> Residual {
    let r0f = apply_r0_with(Side::Left, f, spec);
    let r0x: Vec<ScalarField> = (0..3).map(|b| apply_r0_with(Side::Left, &f.times_coordinate(b), spec)).collect();
    let mut norm = RelativeNorm::new();
    for &p in pts {
        let base = r0f.eval(p);
        for (b, g) in r0x.iter().enumerate() {
            let lhs = g.eval(p);
            norm.push(lhs - p.component(b) * base, C64::new(0.0, 0.0), &[lhs]);
        }
        norm.next_point();
    }
    norm.relative()
}

/// (VU†)(UV†) f = −G'₋ G'₊ f = f.
pub fn check_sandwich(f: &ScalarField, pts: &[Point3], spec: PositionSpec) -> Residual {
    let inner = apply_mixing(Sign::Plus, f, spec);
    let outer = apply_mixing(Sign::Minus, &inner, spec);
    compare(pts, |p| vec![outer.eval(p)], |p| vec![f.eval(p)])
}

/// Left and right forms of r⁰ agree.
pub fn check_r0_forms(f: &ScalarField, pts: &[Point3], spec: PositionSpec) -> Residual {
    let l = apply_r0_with(Side::Left, f, spec);
    let r = apply_r0_with(Side::Right, f, spec);
    compare(pts, |p| vec![l.eval(p)], |p| vec![r.eval(p)])
}

/// V f = (VU†) U f on decaying fields.
pub fn check_mixing(f: &ScalarField, pts: &[Point3], spec: PositionSpec) -> Residual {
    let vf = apply_v_with(f, spec.quad);
    let uf = apply_u_with(Direction::Forward, f, spec.quad);
    let mixed = apply_mixing(Sign::Minus, &uf, spec);
    compare(pts, |p| vec![mixed.eval(p)], |p| vec![vf.eval(p)])
}
