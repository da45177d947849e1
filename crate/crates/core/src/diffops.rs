//! Local Poincaré generators a^λ, K, J for helicity s, applied by finite differences.

use crate::error::{Error, Result};
use crate::field::{Point3, ScalarField, SingularSet};
use crate::quadrature::fd_weights;
use crate::residual::{RelativeNorm, Residual};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::fmt;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Helicity s stored as 2s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Helicity {
    two_s: i64,
}

impl Helicity {
    pub const ZERO: Helicity = Helicity { two_s: 0 };
    pub const HALF: Helicity = Helicity { two_s: 1 };
    pub const ONE: Helicity = Helicity { two_s: 2 };

    pub fn from_two_s(two_s: i64) -> Result<Self> {
        if two_s.abs() > 4 {
            return Err(Error::ConfigError(format!("helicity 2s = {two_s} outside [-4, 4]")));
        }
        Ok(Self { two_s })
    }

    pub fn two_s(self) -> i64 {
        self.two_s
    }

    pub fn s(self) -> f64 {
        self.two_s as f64 / 2.0
    }

    pub fn is_zero(self) -> bool {
        self.two_s == 0
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_s % 2 == 0 {
            write!(f, "{}", self.two_s / 2)
        } else {
            write!(f, "{}/2", self.two_s)
        }
    }
}

/// The frame vector W = (x/(r−z), y/(r−z), −1), ε₃ and r − z.
#[derive(Debug, Clone, Copy)]
pub struct HelicityFrame {
    pub w: [f64; 3],
    pub r_minus_z: f64,
}

impl HelicityFrame {
    pub const EPS3: [f64; 3] = [0.0, 0.0, 1.0];

    pub fn at(p: Point3) -> Result<Self> {
        if SingularSet::PositiveZAxis.contains(p) {
            return Err(Error::AxisSingularity { x: p.x, y: p.y, z: p.z });
        }
        Ok(Self::unchecked(p))
    }

    fn unchecked(p: Point3) -> Self {
        let rmz = 2.0 * p.parabolic().mu;
        Self { w: [p.x / rmz, p.y / rmz, -1.0], r_minus_z: rmz }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeneratorId {
    A0,
    A1,
    A2,
    A3,
    K1,
    K2,
    K3,
    J1,
    J2,
    J3,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 10] = [
        GeneratorId::A0,
        GeneratorId::A1,
        GeneratorId::A2,
        GeneratorId::A3,
        GeneratorId::K1,
        GeneratorId::K2,
        GeneratorId::K3,
        GeneratorId::J1,
        GeneratorId::J2,
        GeneratorId::J3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorId::A0 => "a0",
            GeneratorId::A1 => "a1",
            GeneratorId::A2 => "a2",
            GeneratorId::A3 => "a3",
            GeneratorId::K1 => "K1",
            GeneratorId::K2 => "K2",
            GeneratorId::K3 => "K3",
            GeneratorId::J1 => "J1",
            GeneratorId::J2 => "J2",
            GeneratorId::J3 => "J3",
        }
    }

    pub fn translation(lambda: usize) -> GeneratorId {
        [GeneratorId::A0, GeneratorId::A1, GeneratorId::A2, GeneratorId::A3][lambda]
    }

    fn needs_hessian(self) -> bool {
        matches!(self, GeneratorId::A0 | GeneratorId::A1 | GeneratorId::A2 | GeneratorId::A3)
    }

    fn tensor(self) -> Tensor {
        match self {
            GeneratorId::A0 => Tensor::Translation(0),
            GeneratorId::A1 => Tensor::Translation(1),
            GeneratorId::A2 => Tensor::Translation(2),
            GeneratorId::A3 => Tensor::Translation(3),
            GeneratorId::K1 => Tensor::Lorentz(1, 0),
            GeneratorId::K2 => Tensor::Lorentz(2, 0),
            GeneratorId::K3 => Tensor::Lorentz(3, 0),
            GeneratorId::J1 => Tensor::Lorentz(2, 3),
            GeneratorId::J2 => Tensor::Lorentz(3, 1),
            GeneratorId::J3 => Tensor::Lorentz(1, 2),
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy)]
enum Tensor {
    Translation(usize),
    Lorentz(usize, usize),
}

const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

fn eta(a: usize, b: usize) -> f64 {
    if a == b {
        ETA[a]
    } else {
        0.0
    }
}

/// J^{λμ} as ± a named generator.
fn lorentz_name(l: usize, m: usize) -> Option<(f64, GeneratorId)> {
    if l == m {
        return None;
    }
    GeneratorId::ALL[4..].iter().find_map(|&g| match g.tensor() {
        Tensor::Lorentz(a, b) if (a, b) == (l, m) => Some((1.0, g)),
        Tensor::Lorentz(a, b) if (a, b) == (m, l) => Some((-1.0, g)),
        _ => None,
    })
}

/// Right-hand side of [A, B] as a linear combination of generators.
pub fn expected_commutator(a: GeneratorId, b: GeneratorId) -> Vec<(C64, GeneratorId)> {
    let mut out: Vec<(C64, GeneratorId)> = Vec::new();
    let mut add = |c: C64, g: GeneratorId| {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        if let Some(e) = out.iter_mut().find(|e| e.1 == g) {
            e.0 += c;
        } else {
            out.push((c, g));
        }
    };
    match (a.tensor(), b.tensor()) {
        (Tensor::Translation(_), Tensor::Translation(_)) => {}
        (Tensor::Lorentz(l, m), Tensor::Translation(nu)) => {
            add(I * eta(m, nu), GeneratorId::translation(l));
            add(-I * eta(l, nu), GeneratorId::translation(m));
        }
        (Tensor::Translation(_), Tensor::Lorentz(..)) => {
            for (c, g) in expected_commutator(b, a) {
                add(-c, g);
            }
        }
        (Tensor::Lorentz(l, m), Tensor::Lorentz(n, r)) => {
            for (c, (p, q)) in [(eta(l, r), (m, n)), (eta(m, n), (l, r)), (-eta(l, n), (m, r)), (-eta(m, r), (l, n))] {
                if c == 0.0 {
                    continue;
                }
                if let Some((sign, g)) = lorentz_name(p, q) {
                    add(I * (c * sign), g);
                }
            }
        }
    }
    out.retain(|e| e.0.norm() > 0.0);
    out
}

/// All 45 unordered generator pairs in table order.
pub fn commutator_pairs() -> Vec<(GeneratorId, GeneratorId)> {
    let mut v = Vec::with_capacity(45);
    for (i, &a) in GeneratorId::ALL.iter().enumerate() {
        for &b in &GeneratorId::ALL[i + 1..] {
            v.push((a, b));
        }
    }
    v
}

/// Central differences of even `order` with step rel_step·max(1, r), optional Richardson level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    pub rel_step: f64,
    pub order: usize,
    pub richardson: bool,
}

impl Default for FdScheme {
    fn default() -> Self {
        Self { rel_step: 5e-2, order: 8, richardson: true }
    }
}

impl FdScheme {
    /// Step at `p`, kept below 1/(2·order) of the distance to the positive z axis when `singular`.
    pub fn step(&self, p: Point3, singular: bool) -> f64 {
        let h = self.rel_step * p.norm().max(1.0);
        if !singular {
            return h;
        }
        let d = if p.z >= 0.0 { p.rho() } else { p.norm() };
        h.min(d / (2.0 * self.order as f64))
    }
}

/// Value, gradient and (optionally) Hessian of a field at a point.
#[derive(Debug, Clone, Copy)]
pub struct Jet {
    pub value: C64,
    pub grad: [C64; 3],
    pub hess: [[C64; 3]; 3],
}

impl Jet {
    pub fn laplacian(&self) -> C64 {
        self.hess[0][0] + self.hess[1][1] + self.hess[2][2]
    }
}

struct Stencil {
    offsets: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl Stencil {
    fn new(order: usize) -> Self {
        let n = (order / 2).max(1) as i64;
        let offsets: Vec<f64> = (-n..=n).filter(|&k| k != 0).map(|k| k as f64).collect();
        let mut x = vec![0.0];
        x.extend(&offsets);
        let w = fd_weights(&x, 2);
        Self { offsets, d1: w[1][1..].to_vec(), d2: w[2].clone() }
    }
}

fn shift(p: Point3, i: usize, d: f64) -> Point3 {
    let mut a = p.to_array();
    a[i] += d;
    Point3::from_array(a)
}

fn shift2(p: Point3, i: usize, di: f64, j: usize, dj: f64) -> Point3 {
    let mut a = p.to_array();
    a[i] += di;
    a[j] += dj;
    Point3::from_array(a)
}

fn raw_jet(f: &ScalarField, p: Point3, h: f64, hessian: bool, f0: C64, st: &Stencil) -> ([C64; 3], [[C64; 3]; 3]) {
    let mut grad = [C64::new(0.0, 0.0); 3];
    let mut hess = [[C64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        let mut g = C64::new(0.0, 0.0);
        let mut d2 = st.d2[0] * f0;
        for (k, &o) in st.offsets.iter().enumerate() {
            let v = f.eval(shift(p, i, o * h));
            g += st.d1[k] * v;
            d2 += st.d2[k + 1] * v;
        }
        grad[i] = g / h;
        hess[i][i] = d2 / (h * h);
    }
    if hessian {
        for i in 0..3 {
            for j in i + 1..3 {
                let mut m = C64::new(0.0, 0.0);
                for (a, &oa) in st.offsets.iter().enumerate() {
                    for (b, &ob) in st.offsets.iter().enumerate() {
                        m += st.d1[a] * st.d1[b] * f.eval(shift2(p, i, oa * h, j, ob * h));
                    }
                }
                let v = m / (h * h);
                hess[i][j] = v;
                hess[j][i] = v;
            }
        }
    }
    (grad, hess)
}

/// Finite-difference jet of `f` at `p` with step `h`.
pub fn jet_with_step(f: &ScalarField, p: Point3, hessian: bool, scheme: FdScheme, h: f64) -> Jet {
    let st = Stencil::new(scheme.order);
    let f0 = f.eval(p);
    let (mut grad, mut hess) = raw_jet(f, p, h, hessian, f0, &st);
    if scheme.richardson {
        let c = 2f64.powi(scheme.order as i32);
        let (g2, h2) = raw_jet(f, p, 0.5 * h, hessian, f0, &st);
        for i in 0..3 {
            grad[i] = (c * g2[i] - grad[i]) / (c - 1.0);
            for j in 0..3 {
                hess[i][j] = (c * h2[i][j] - hess[i][j]) / (c - 1.0);
            }
        }
    }
    Jet { value: f0, grad, hess }
}

/// ∂f/∂x_axis at `p` from the scheme's one-dimensional stencil.
pub fn partial(f: &ScalarField, p: Point3, axis: usize, scheme: FdScheme) -> C64 {
    let singular = !matches!(f.singular_set, SingularSet::None | SingularSet::Origin);
    let h = scheme.step(p, singular);
    let st = Stencil::new(scheme.order);
    let d = |h: f64| st.offsets.iter().zip(&st.d1).map(|(o, w)| f.eval(shift(p, axis, o * h)) * *w).sum::<C64>() / h;
    if scheme.richardson {
        let c = 2f64.powi(scheme.order as i32);
        (d(0.5 * h) * c - d(h)) / (c - 1.0)
    } else {
        d(h)
    }
}

/// Finite-difference jet of `f` at `p`.
pub fn jet(f: &ScalarField, p: Point3, hessian: bool, scheme: FdScheme) -> Jet {
    let singular = !matches!(f.singular_set, SingularSet::None | SingularSet::Origin);
    jet_with_step(f, p, hessian, scheme, scheme.step(p, singular))
}

fn apply_at_jet(g: GeneratorId, s: Helicity, p: Point3, j: &Jet) -> C64 {
    let x = p.to_array();
    let r = p.norm();
    let sv = s.s();
    let frame = (!s.is_zero()).then(|| HelicityFrame::unchecked(p));
    match g {
        GeneratorId::A0 => {
            let mut out = -r * j.laplacian();
            if let Some(fr) = frame {
                let dphi = x[0] * j.grad[1] - x[1] * j.grad[0];
                out += 2.0 * sv * I / fr.r_minus_z * dphi + 2.0 * sv * sv / fr.r_minus_z * j.value;
            }
            out
        }
        GeneratorId::A1 | GeneratorId::A2 | GeneratorId::A3 => {
            let i = g as usize - GeneratorId::A1 as usize;
            let radial: C64 = (0..3).map(|k| x[k] * j.hess[k][i]).sum();
            let mut out = -2.0 * (j.grad[i] + radial) + x[i] * j.laplacian();
            if let Some(fr) = frame {
                let w = fr.w;
                let cross = match i {
                    0 => w[1] * j.grad[2] - w[2] * j.grad[1],
                    1 => w[2] * j.grad[0] - w[0] * j.grad[2],
                    _ => w[0] * j.grad[1] - w[1] * j.grad[0],
                };
                out += -2.0 * I * sv * cross;
                if i == 2 {
                    out -= 2.0 * sv * sv / fr.r_minus_z * j.value;
                }
            }
            out
        }
        GeneratorId::K1 | GeneratorId::K2 | GeneratorId::K3 => {
            let i = g as usize - GeneratorId::K1 as usize;
            let mut out = -I * r * j.grad[i];
            if let Some(fr) = frame {
                let rh = [x[0] / r, x[1] / r, x[2] / r];
                let w = fr.w;
                let c = [rh[1] * w[2] - rh[2] * w[1], rh[2] * w[0] - rh[0] * w[2], rh[0] * w[1] - rh[1] * w[0]];
                out -= sv * c[i] * j.value;
            }
            out
        }
        GeneratorId::J1 | GeneratorId::J2 | GeneratorId::J3 => {
            let i = g as usize - GeneratorId::J1 as usize;
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            let mut out = -I * (x[a] * j.grad[b] - x[b] * j.grad[a]);
            if let Some(fr) = frame {
                out += sv * fr.w[i] * j.value;
            }
            out
        }
    }
}

/// Generator `g` applied to `f` at a single point.
pub fn generator_at(g: GeneratorId, s: Helicity, f: &ScalarField, p: Point3, scheme: FdScheme) -> Result<C64> {
    if !s.is_zero() {
        HelicityFrame::at(p)?;
    }
    let j = jet(f, p, g.needs_hessian(), scheme);
    Ok(apply_at_jet(g, s, p, &j))
}

/// Lazily evaluated image of `f` under generator `g`.
pub fn apply_generator_with(g: GeneratorId, s: Helicity, f: &ScalarField, scheme: FdScheme) -> ScalarField {
    let inner = f.clone();
    let singular = if s.is_zero() { f.singular_set } else { f.singular_set.union(SingularSet::PositiveZAxis) };
    ScalarField::new(singular, f.decay, move |p| {
        let j = jet(&inner, p, g.needs_hessian(), scheme);
        apply_at_jet(g, s, p, &j)
    })
}

pub fn apply_generator(g: GeneratorId, s: Helicity, f: &ScalarField) -> ScalarField {
    apply_generator_with(g, s, f, FdScheme::default())
}

/// a⁰_s f = −r∇²f + 2s(i/(r−z))∂_φ f + 2s²f/(r−z).
pub fn apply_a0(s: Helicity, f: &ScalarField) -> ScalarField {
    apply_generator(GeneratorId::A0, s, f)
}

/// a_s f = −2(1 + r∂_r)∇f + r∇²f − 2is(W×∇)f − 2s²ε₃f/(r−z).
pub fn apply_a_vec(s: Helicity, f: &ScalarField) -> [ScalarField; 3] {
    [GeneratorId::A1, GeneratorId::A2, GeneratorId::A3].map(|g| apply_generator(g, s, f))
}

/// K_s f = −ir∇f − s(r̂×W)f.
pub fn apply_boost(s: Helicity, f: &ScalarField) -> [ScalarField; 3] {
    [GeneratorId::K1, GeneratorId::K2, GeneratorId::K3].map(|g| apply_generator(g, s, f))
}

/// J_s f = −ir×∇f + sWf.
pub fn apply_rotation(s: Helicity, f: &ScalarField) -> [ScalarField; 3] {
    [GeneratorId::J1, GeneratorId::J2, GeneratorId::J3].map(|g| apply_generator(g, s, f))
}

fn check_points(s: Helicity, pts: &[Point3]) -> Result<()> {
    if !s.is_zero() {
        for &p in pts {
            HelicityFrame::at(p)?;
        }
    }
    Ok(())
}

/// Relative residual of [A, B]f against the algebra's prediction.
pub fn check_commutator(
    a: GeneratorId,
    b: GeneratorId,
    s: Helicity,
    f: &ScalarField,
    pts: &[Point3],
) -> Result<Residual> {
    check_commutator_with(a, b, s, f, pts, FdScheme::default())
}

pub fn check_commutator_with(
    a: GeneratorId,
    b: GeneratorId,
    s: Helicity,
    f: &ScalarField,
    pts: &[Point3],
    scheme: FdScheme,
) -> Result<Residual> {
    check_points(s, pts)?;
    let fa = apply_generator_with(a, s, f, scheme);
    let fb = apply_generator_with(b, s, f, scheme);
    let ab = apply_generator_with(a, s, &fb, scheme);
    let ba = apply_generator_with(b, s, &fa, scheme);
    let rhs_terms = expected_commutator(a, b);
    let rhs_fields: Vec<(C64, ScalarField)> =
        rhs_terms.iter().map(|&(c, g)| (c, apply_generator_with(g, s, f, scheme))).collect();
    let mut norm = RelativeNorm::new();
    for &p in pts {
        let (x, y) = (ab.eval(p), ba.eval(p));
        let rhs: C64 = rhs_fields.iter().map(|(c, g)| c * g.eval(p)).sum();
        norm.push(x - y, rhs, &[x, y]);
        norm.next_point();
    }
    Ok(norm.relative())
}

/// ‖a^λu − k^λu‖∞ / ‖k^λu‖∞ over all four components and points.
pub fn eigen_residual(s: Helicity, f: &ScalarField, k: Point3, pts: &[Point3]) -> Result<Residual> {
    check_points(s, pts)?;
    let kl = [k.norm(), k.x, k.y, k.z];
    let scheme = FdScheme::default();
    let mut norm = RelativeNorm::new();
    for &p in pts {
        let j = jet(f, p, true, scheme);
        for (lambda, &kv) in kl.iter().enumerate() {
            let lhs = apply_at_jet(GeneratorId::translation(lambda), s, p, &j);
            norm.push(lhs, kv * j.value, &[]);
        }
        norm.next_point();
    }
    Ok(norm.relative())
}

/// Probability current i[ψ*∇ψ − (∇ψ*)ψ] = −2 Im(ψ*∇ψ).
pub fn current(f: &ScalarField) -> [ScalarField; 3] {
    let scheme = FdScheme::default();
    [0usize, 1, 2].map(|i| {
        let inner = f.clone();
        ScalarField::new(f.singular_set, f.decay, move |p| {
            let j = jet(&inner, p, false, scheme);
            C64::new(-2.0 * (j.value.conj() * j.grad[i]).im, 0.0)
        })
    })
}

/// max over points of |∇·j| by finite differences of the current.
pub fn continuity_residual(f: &ScalarField, pts: &[Point3]) -> Result<Residual> {
    let j = current(f);
    let scheme = FdScheme::default();
    let mut norm = RelativeNorm::new();
    for &p in pts {
        if f.singular_set.contains(p) {
            return Err(Error::AxisSingularity { x: p.x, y: p.y, z: p.z });
        }
        let div: C64 = (0..3).map(|i| jet(&j[i], p, false, scheme).grad[i]).sum();
        norm.push(div, C64::new(0.0, 0.0), &[]);
        norm.next_point();
    }
    Ok(norm.absolute())
}

/// Current of helicity `s`: −2 Im(ψ*∇ψ) + 2A|ψ|² with A = s(−y, x, 0)/(r(r−z)).
pub fn helicity_current(s: Helicity, f: &ScalarField) -> [ScalarField; 3] {
    let scheme = FdScheme::default();
    let sv = s.s();
    [0usize, 1, 2].map(|i| {
        let inner = f.clone();
        ScalarField::new(f.singular_set, f.decay, move |p| {
            let j = jet(&inner, p, false, scheme);
            let a = match i {
                0 => -p.y,
                1 => p.x,
                _ => 0.0,
            };
            let monopole = if sv == 0.0 { 0.0 } else { sv * a / (p.norm() * (p.norm() - p.z)) };
            C64::new(-2.0 * (j.value.conj() * j.grad[i]).im + 2.0 * monopole * j.value.norm_sqr(), 0.0)
        })
    })
}

/// max over points of |∇·j| for the helicity-`s` current.
pub fn helicity_continuity_residual(s: Helicity, f: &ScalarField, pts: &[Point3]) -> Result<Residual> {
    check_points(s, pts)?;
    let j = helicity_current(s, f);
    let scheme = FdScheme::default();
    let mut norm = RelativeNorm::new();
    for &p in pts {
        let div: C64 = (0..3).map(|i| jet(&j[i], p, false, scheme).grad[i]).sum();
        norm.push(div, C64::new(0.0, 0.0), &[]);
        norm.next_point();
    }
    Ok(norm.absolute())
}

/// Relative residual of (a⁰a⁰ − a·a)f = 0.
pub fn null_residual(s: Helicity, f: &ScalarField, pts: &[Point3]) -> Result<Residual> {
    check_points(s, pts)?;
    let a: Vec<ScalarField> = (0..4).map(|l| apply_generator(GeneratorId::translation(l), s, f)).collect();
    let aa: Vec<ScalarField> = (0..4).map(|l| apply_generator(GeneratorId::translation(l), s, &a[l])).collect();
    let mut norm = RelativeNorm::new();
    for &p in pts {
        let v: Vec<C64> = aa.iter().map(|g| g.eval(p)).collect();
        let lhs = v[0];
        let rhs = v[1] + v[2] + v[3];
        norm.push(lhs, rhs, &[lhs]);
        norm.next_point();
    }
    Ok(norm.relative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DecayClass;

    fn gaussian() -> ScalarField {
        ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 9.0 }, |p| {
            C64::new((-0.5 * p.dot(p)).exp(), 0.0)
        })
    }

    #[test]
    fn table_has_45_pairs() {
        assert_eq!(commutator_pairs().len(), 45);
        assert!(expected_commutator(GeneratorId::A1, GeneratorId::A2).is_empty());
        assert_eq!(expected_commutator(GeneratorId::J3, GeneratorId::A1), vec![(I, GeneratorId::A2)]);
        assert_eq!(expected_commutator(GeneratorId::K1, GeneratorId::A1), vec![(I, GeneratorId::A0)]);
        assert_eq!(expected_commutator(GeneratorId::J1, GeneratorId::J2), vec![(I, GeneratorId::J3)]);
        assert_eq!(expected_commutator(GeneratorId::K1, GeneratorId::K2), vec![(-I, GeneratorId::J3)]);
    }

    #[test]
    fn laplacian_of_gaussian() {
        let f = gaussian();
        let a0 = apply_a0(Helicity::ZERO, &f);
        let p = Point3::new(0.4, -0.8, 0.3);
        let r = p.norm();
        let want = -r * (r * r - 3.0) * (-0.5 * r * r).exp();
        assert!((a0.eval(p).re - want).abs() < 1e-9);
    }

    #[test]
    fn boost_of_gaussian() {
        let f = gaussian();
        let p = Point3::new(0.4, -0.8, 0.3);
        let k = apply_boost(Helicity::ZERO, &f);
        let r = p.norm();
        for i in 0..3 {
            let want = I * r * p.component(i) * f.eval(p);
            assert!((k[i].eval(p) - want).norm() < 1e-10);
        }
    }

    #[test]
    fn rotation_annihilates_radial() {
        let f = gaussian();
        let p = Point3::new(0.9, 0.1, -0.5);
        for g in apply_rotation(Helicity::ZERO, &f) {
            assert!(g.eval(p).norm() < 1e-10);
        }
    }

    #[test]
    fn rotation_of_azimuthal_mode() {
        let f = ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 9.0 }, |p| {
            let z = C64::new(p.x, p.y);
            z * z * (-p.dot(p)).exp()
        });
        let p = Point3::new(0.3, 0.5, 0.2);
        let j3 = apply_rotation(Helicity::ZERO, &f)[2].eval(p);
        assert!((j3 - 2.0 * f.eval(p)).norm() < 1e-10);
    }

    #[test]
    fn axis_is_refused() {
        let f = gaussian();
        let on_axis = Point3::new(0.0, 0.0, 2.0);
        assert!(matches!(
            generator_at(GeneratorId::A0, Helicity::HALF, &f, on_axis, FdScheme::default()),
            Err(Error::AxisSingularity { .. })
        ));
        assert!(generator_at(GeneratorId::A0, Helicity::ZERO, &f, on_axis, FdScheme::default()).is_ok());
    }

    #[test]
    fn sample_commutators() {
        let f = ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 9.0 }, |p| {
            C64::new(p.x * (-p.dot(p)).exp(), 0.0)
        });
        let pts = [Point3::new(0.7, 0.2, -0.4), Point3::new(-0.3, 0.6, 0.5)];
        let r = check_commutator(GeneratorId::J3, GeneratorId::A1, Helicity::ZERO, &f, &pts).unwrap();
        assert!(r.max_residual < 1e-6, "{r:?}");
        let g = gaussian();
        let r = check_commutator(GeneratorId::K1, GeneratorId::A1, Helicity::ZERO, &g, &pts).unwrap();
        assert!(r.max_residual < 1e-6, "{r:?}");
        let r = check_commutator(GeneratorId::A1, GeneratorId::A2, Helicity::HALF, &g, &pts).unwrap();
        assert!(r.max_residual < 1e-7, "{r:?}");
    }
}
