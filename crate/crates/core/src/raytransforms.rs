//! Fourier and Hilbert transforms along rays through the origin and the
//! nonlocal operators U, V, G±, Z± assembled from them.

use crate::error::{Error, Result};
use crate::field::{DecayClass, Point3, RayProfile, ScalarField, SingularSet};
use crate::quadrature::{adaptive, adaptive_sqrt_start, adaptive_to_infinity, by_parts_tail, fd_weights, gk21, Estimate, Tolerance};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Cosine,
    Sine,
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HilbertParity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Quadrature settings shared by all ray transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Truncation point of the dimensionless oscillatory variable.
    pub u_max: f64,
    /// Number of fixed panels on [0, u_max] for the Bessel-class path.
    pub panels: usize,
    /// Integration-by-parts terms for the tail beyond the truncation.
    pub tail_terms: usize,
    /// Half-width of the excised principal-value window, relative to r.
    pub pv_gap: f64,
    pub tol: Tolerance,
    /// An estimate fails when its error exceeds fail_rel·|value| + fail_abs.
    pub fail_rel: f64,
    pub fail_abs: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            u_max: 200.0,
            panels: 512,
            tail_terms: 4,
            pv_gap: 1e-4,
            tol: Tolerance { abs: 1e-13, rel: 1e-10, max_intervals: 200 },
            fail_rel: 1e-4,
            fail_abs: 1e-9,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.u_max >= 50.0) || self.panels < 64 || !(self.pv_gap > 0.0 && self.pv_gap <= 1e-3) {
            return Err(Error::ConfigError(format!("invalid quadrature spec {self:?}")));
        }
        Ok(())
    }

    fn check(&self, est: Estimate, what: &str) -> Result<Estimate> {
        let v = est.value;
        if !v.re.is_finite() || !v.im.is_finite() || !est.error.is_finite() {
            return Err(Error::QuadratureFailure { what: what.into(), estimate: f64::INFINITY });
        }
        if est.error > self.fail_rel * v.norm() + self.fail_abs {
            return Err(Error::QuadratureFailure { what: what.into(), estimate: est.error });
        }
        Ok(est)
    }
}

#[derive(Debug, Clone, Copy)]
enum Extent {
    Finite(f64),
    Infinite(f64),
    Bessel(f64),
}

impl Extent {
    fn of(d: DecayClass) -> Extent {
        match d {
            DecayClass::Gaussian { radius } => Extent::Finite(radius),
            DecayClass::PowerLaw { scale, .. } => Extent::Infinite(scale.max(1e-3)),
            DecayClass::OscillatoryBessel { k } => Extent::Bessel(k),
        }
    }

    fn feature(self) -> f64 {
        match self {
            Extent::Finite(r) => r / 8.0,
            Extent::Infinite(s) => s,
            Extent::Bessel(k) => 1.0 / k,
        }
    }
}

fn push_geometric(b: &mut Vec<f64>, lo: f64, hi: f64, feature: f64) {
    let mut t = feature / 64.0;
    while t < hi {
        if t > lo {
            b.push(t);
        }
        t *= 2.0;
    }
}

fn sorted_breaks(mut b: Vec<f64>) -> Vec<f64> {
    b.retain(|t| t.is_finite());
    b.sort_by(f64::total_cmp);
    b.dedup_by(|a, c| (*a - *c).abs() <= 1e-14 * a.abs().max(1e-300));
    b
}

fn integrate_breaks<F: FnMut(f64) -> C64 + ?Sized>(f: &mut F, b: &[f64], sqrt_start: bool, tol: &Tolerance) -> Estimate {
    let mut total = Estimate::zero();
    for (i, w) in b.windows(2).enumerate() {
        if w[1] <= w[0] {
            continue;
        }
        total = total
            + if i == 0 && sqrt_start && w[0] == 0.0 {
                adaptive_sqrt_start(f, w[1], tol)
            } else {
                adaptive(f, w[0], w[1], tol)
            };
    }
    total
}

/// ∫₀^∞ e^{iωu} h(u) du with geometric refinement below `feature`,
/// half-period panels up to `upper` and an optional by-parts tail.
fn osc_half_line<F: FnMut(f64) -> C64>(
    h: &mut F,
    omega: f64,
    feature: f64,
    upper: f64,
    tail: bool,
    sqrt_start: bool,
    spec: &QuadratureSpec,
) -> Estimate {
    if upper <= 0.0 {
        return Estimate::zero();
    }
    let width = if omega != 0.0 { PI / omega.abs() } else { upper };
    let mut g = |t: f64| h(t) * C64::from_polar(1.0, omega * t);
    let first = width.min(upper);
    let mut b = vec![0.0, first];
    push_geometric(&mut b, 0.0, first, feature.min(first));
    let b = sorted_breaks(b);
    let mut total = integrate_breaks(&mut g, &b, sqrt_start, &spec.tol);
    let n = ((upper - first) / width).ceil().max(0.0) as usize;
    let step = if n > 0 { (upper - first) / n as f64 } else { 0.0 };
    let panel_tol = Tolerance { max_intervals: 50, ..spec.tol };
    for j in 0..n {
        let a = first + step * j as f64;
        let e = if j + 1 == n { upper } else { a + step };
        total = total + adaptive(&mut g, a, e, &panel_tol);
    }
    if tail && omega != 0.0 {
        total = total + by_parts_tail(h, omega, upper, spec.tail_terms);
    }
    total
}

fn deriv1<F: FnMut(f64) -> C64 + ?Sized>(p: &mut F, t: f64, h: f64) -> C64 {
    let offsets: Vec<f64> = (-4..=4).map(|j| j as f64).collect();
    let w = fd_weights(&offsets, 1);
    offsets.iter().zip(&w[1]).map(|(j, c)| p(t + h * j) * *c).sum::<C64>() / h
}

/// ∫₀^∞ p(t) dt.
fn plain_half_line<F: FnMut(f64) -> C64>(p: &mut F, ext: Extent, sqrt_start: bool, spec: &QuadratureSpec) -> Result<Estimate> {
    let feature = ext.feature();
    match ext {
        Extent::Finite(r) => {
            let mut b = vec![0.0, r];
            push_geometric(&mut b, 0.0, r, feature);
            Ok(integrate_breaks(p, &sorted_breaks(b), sqrt_start, &spec.tol))
        }
        Extent::Infinite(s) => {
            let t0 = 4.0 * s;
            let mut b = vec![0.0, t0];
            push_geometric(&mut b, 0.0, t0, feature);
            Ok(integrate_breaks(p, &sorted_breaks(b), sqrt_start, &spec.tol) + adaptive_to_infinity(p, t0, &spec.tol))
        }
        Extent::Bessel(_) => Err(bessel_unsupported("plain ray integral")),
    }
}

/// PV ∫₀^∞ p(t)/(t − ρ) dt by subtraction on [0, 2ρ] with a symmetric
/// excision of half-width pv_gap·ρ around the pole.
fn pv_half_line<F: FnMut(f64) -> C64>(p: &mut F, rho: f64, ext: Extent, sqrt_start: bool, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(rho > 0.0) {
        return Err(Error::DomainError("principal value needs r > 0".into()));
    }
    let delta = spec.pv_gap * rho;
    let p0 = p(rho);
    let d1 = deriv1(p, rho, 1e-3 * rho);
    let feature = ext.feature();
    let (end, tail) = match ext {
        Extent::Finite(r) => (r.max(2.0 * rho), false),
        Extent::Infinite(s) => ((4.0 * s).max(2.0 * rho), true),
        Extent::Bessel(_) => return Err(bessel_unsupported("principal value")),
    };
    let mut b = vec![0.0, rho - delta, rho + delta, 2.0 * rho, end, rho * 0.5, rho * 1.5];
    push_geometric(&mut b, 0.0, end, feature);
    let b = sorted_breaks(b);
    let mut near = |t: f64| {
        if t < 2.0 * rho {
            (p(t) - p0) / (t - rho)
        } else {
            p(t) / (t - rho)
        }
    };
    let mut total = Estimate::new(2.0 * delta * d1, 0.0);
    for (i, w) in b.windows(2).enumerate() {
        if w[1] <= w[0] || (w[0] >= rho - delta && w[1] <= rho + delta) {
            continue;
        }
        total = total
            + if i == 0 && sqrt_start && w[0] == 0.0 {
                adaptive_sqrt_start(&mut near, w[1], &spec.tol)
            } else {
                adaptive(&mut near, w[0], w[1], &spec.tol)
            };
    }
    if tail {
        let mut far = |t: f64| p(t) / (t - rho);
        total = total + adaptive_to_infinity(&mut far, end, &spec.tol);
    }
    Ok(total)
}

/// ∫₀^∞ p(t)/(t + ρ) dt.
fn stieltjes_half_line<F: FnMut(f64) -> C64>(p: &mut F, rho: f64, ext: Extent, sqrt_start: bool, spec: &QuadratureSpec) -> Result<Estimate> {
    let mut g = |t: f64| p(t) / (t + rho);
    let feature = ext.feature();
    let (end, tail) = match ext {
        Extent::Finite(r) => (r, false),
        Extent::Infinite(s) => ((4.0 * s).max(rho), true),
        Extent::Bessel(_) => return Err(bessel_unsupported("Stieltjes integral")),
    };
    let mut b = vec![0.0, end, rho];
    push_geometric(&mut b, 0.0, end, feature.min(rho.max(1e-12)));
    let b: Vec<f64> = sorted_breaks(b).into_iter().filter(|t| *t <= end).collect();
    let mut total = integrate_breaks(&mut g, &b, sqrt_start, &spec.tol);
    if tail {
        total = total + adaptive_to_infinity(&mut g, end, &spec.tol);
    }
    Ok(total)
}

fn bessel_unsupported(what: &str) -> Error {
    Error::DomainError(format!("{what} of a non-decaying Bessel-class field is not supported"))
}

/// ∫₀^∞ e^{iωt} p(t) dt for a profile of the given decay class.
fn fourier_exp(p: &RayProfile, omega: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let ext = Extent::of(p.decay);
    let mut h = |t: f64| p.at(t);
    if omega == 0.0 {
        return plain_half_line(&mut h, ext, false, spec);
    }
    let w = omega.abs();
    match ext {
        Extent::Finite(r) => Ok(osc_half_line(&mut h, omega, ext.feature(), r, false, false, spec)),
        Extent::Infinite(s) => {
            let upper = (spec.u_max / w).max(8.0 * s);
            Ok(osc_half_line(&mut h, omega, ext.feature(), upper, true, false, spec))
        }
        Extent::Bessel(k) => {
            let upper = (spec.u_max / w).max(400.0 / k);
            Ok(osc_half_line(&mut h, omega, ext.feature(), upper, true, false, spec))
        }
    }
}

fn fourier_plain(kind: TransformKind, p: &RayProfile, r: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let ip = fourier_exp(p, r, spec)?;
    let im = if r == 0.0 { ip } else { fourier_exp(p, -r, spec)? };
    let e = match kind {
        TransformKind::Cosine => (ip + im).scale(C64::new(0.5, 0.0)),
        TransformKind::Sine => (ip - im).scale(C64::new(0.0, -0.5)),
        TransformKind::Plus => ip,
        TransformKind::Minus => im,
    };
    Ok(e.scale(C64::new(SQRT_2_OVER_PI, 0.0)))
}

/// One-sided Fourier transform of a profile at r ≥ 0, restricted to t ≥ 0.
/// In generalized mode the integrand is replaced by its derivative and
/// surface terms at infinity are discarded; the term from t = 0 is kept.
pub fn fourier_at(kind: TransformKind, p: &RayProfile, r: f64, generalized: bool, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(r >= 0.0) {
        return Err(Error::DomainError(format!("transform variable must be non-negative, got {r}")));
    }
    if !generalized {
        return spec.check(fourier_plain(kind, p, r, spec)?, "Fourier ray transform");
    }
    if r == 0.0 {
        return Err(Error::DomainError("generalized transform needs r > 0".into()));
    }
    let step = 1e-3 * p.decay.length_scale().min(1.0);
    let q = p.clone();
    let dp = RayProfile::from_fn(p.decay, move |t| {
        let mut f = |u: f64| q.at(u);
        deriv1(&mut f, t, step)
    });
    let boundary = C64::new(SQRT_2_OVER_PI / r, 0.0) * p.at(0.0);
    let est = match kind {
        TransformKind::Cosine => fourier_plain(TransformKind::Sine, &dp, r, spec)?.scale(C64::new(-1.0 / r, 0.0)),
        TransformKind::Sine => {
            let e = fourier_plain(TransformKind::Cosine, &dp, r, spec)?.scale(C64::new(1.0 / r, 0.0));
            Estimate::new(e.value + boundary, e.error)
        }
        TransformKind::Plus | TransformKind::Minus => {
            let sgn = if kind == TransformKind::Plus { 1.0 } else { -1.0 };
            let e = fourier_plain(kind, &dp, r, spec)?.scale(I * (sgn / r));
            Estimate::new(e.value + boundary * I * sgn, e.error)
        }
    };
    spec.check(est, "generalized Fourier ray transform")
}

/// Even or odd Hilbert transform of a profile at r > 0.
pub fn hilbert_at(parity: HilbertParity, p: &RayProfile, r: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let ext = Extent::of(p.decay);
    let mut h = |t: f64| p.at(t);
    let pv = pv_half_line(&mut h, r, ext, false, spec)?;
    let mut h2 = |t: f64| p.at(t);
    let st = stieltjes_half_line(&mut h2, r, ext, false, spec)?;
    let e = match parity {
        HilbertParity::Even => pv - st,
        HilbertParity::Odd => pv + st,
    };
    spec.check(e.scale(C64::new(1.0 / PI, 0.0)), "Hilbert ray transform")
}

fn output_decay(d: DecayClass, exponent: f64) -> DecayClass {
    match d {
        DecayClass::OscillatoryBessel { .. } => d,
        _ => DecayClass::PowerLaw { exponent, scale: d.length_scale().max(1.0) },
    }
}

/// The transformed profile r ↦ T[t ↦ p(sign(r)·t)](|r|); NaN where the
/// quadrature fails.
pub fn fourier_ray(kind: TransformKind, p: &RayProfile, generalized: bool, spec: QuadratureSpec) -> RayProfile {
    let q = p.clone();
    let neg = p.reversed();
    RayProfile::from_fn(output_decay(p.decay, 1.0), move |u| {
        let src = if u < 0.0 { &neg } else { &q };
        fourier_at(kind, src, u.abs(), generalized, &spec).map(|e| e.value).unwrap_or(C64::new(f64::NAN, f64::NAN))
    })
}

pub fn hilbert_ray(parity: HilbertParity, p: &RayProfile, spec: QuadratureSpec) -> RayProfile {
    let q = p.clone();
    let neg = p.reversed();
    RayProfile::from_fn(output_decay(p.decay, 1.0), move |u| {
        let src = if u < 0.0 { &neg } else { &q };
        hilbert_at(parity, src, u.abs(), &spec).map(|e| e.value).unwrap_or(C64::new(f64::NAN, f64::NAN))
    })
}

fn ray_split(p: Point3) -> Result<(f64, Point3)> {
    let rho = p.norm();
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::DomainError("ray operators are undefined at the origin".into()));
    }
    Ok((rho, p.scale(1.0 / rho)))
}

fn nan() -> C64 {
    C64::new(f64::NAN, f64::NAN)
}

fn lift<F>(f: &ScalarField, singular: SingularSet, decay: DecayClass, op: F) -> ScalarField
where
    F: Fn(&ScalarField, Point3) -> Result<Estimate> + Send + Sync + 'static,
{
    let g = f.clone();
    ScalarField::new(singular, decay, move |p| op(&g, p).map(|e| e.value).unwrap_or_else(|_| nan()))
}

fn ray_singular(f: &ScalarField) -> SingularSet {
    match f.singular_set {
        SingularSet::None | SingularSet::Origin => SingularSet::Origin,
        _ => SingularSet::FullZAxis,
    }
}

/// ∫₀^∞ e^{iωu} √u f(±uρ r̂) du for decaying fields.
fn forward_block(f: &ScalarField, rho: f64, dir: Point3, omega: f64, spec: &QuadratureSpec) -> Estimate {
    let ext = Extent::of(f.decay);
    let mut h = |u: f64| f.eval(dir.scale(u * rho)) * u.sqrt();
    match ext {
        Extent::Finite(r) => osc_half_line(&mut h, omega, ext.feature() / rho, r / rho, false, true, spec),
        _ => {
            let upper = spec.u_max.max(50.0 * ext.feature() / rho).min(50.0 * spec.u_max);
            osc_half_line(&mut h, omega, ext.feature() / rho, upper, true, true, spec)
        }
    }
}

/// Fixed-mesh I(ρ) = ∫₀^∞ u^{-1/2}[e^{-iu} f(uρr̂) + σ e^{iu} f(−uρr̂)] du with
/// the panel layout chosen once for the whole finite-difference stencil.
struct BesselMesh {
    upper: f64,
    first: f64,
    width: f64,
    n: usize,
}

impl BesselMesh {
    fn new(k: f64, rho: f64, spec: &QuadratureSpec) -> Self {
        let width = spec.u_max / spec.panels as f64;
        let upper = spec.u_max.max(400.0 * k * rho);
        let n = ((upper - width) / width).ceil() as usize;
        Self { upper, first: width, width: (upper - width) / n as f64, n }
    }

    fn integral(&self, f: &ScalarField, rho: f64, dir: Point3, sigma: f64, spec: &QuadratureSpec) -> Estimate {
        let h = |u: f64| {
            C64::from_polar(1.0, -u) * f.eval(dir.scale(u * rho)) + C64::from_polar(sigma, u) * f.eval(dir.scale(-u * rho))
        };
        let mut first = |v: f64| {
            let u = v * v;
            let e = C64::from_polar(1.0, -u) * f.eval(dir.scale(u * rho))
                + C64::from_polar(sigma, u) * f.eval(dir.scale(-u * rho));
            e * 2.0
        };
        let mut total = gk21(&mut first, 0.0, self.first.sqrt());
        for j in 0..self.n {
            let a = self.first + self.width * j as f64;
            total = total + gk21(&mut |u: f64| h(u) / u.sqrt(), a, a + self.width);
        }
        let mut ap = |u: f64| f.eval(dir.scale(u * rho)) / u.sqrt();
        let mut am = |u: f64| f.eval(dir.scale(-u * rho)) / u.sqrt() * sigma;
        total = total + by_parts_tail(&mut ap, -1.0, self.upper, spec.tail_terms) + by_parts_tail(&mut am, 1.0, self.upper, spec.tail_terms);
        total
    }
}

fn bessel_forward(f: &ScalarField, rho: f64, dir: Point3, k: f64, sigma: f64, spec: &QuadratureSpec) -> Estimate {
    let mesh = BesselMesh::new(k, rho, spec);
    let h = 2e-3 * rho;
    let offsets: Vec<f64> = (-4..=4).map(|j| j as f64).collect();
    let vals: Vec<Estimate> = offsets.iter().map(|j| mesh.integral(f, rho + h * j, dir, sigma, spec)).collect();
    let w9 = fd_weights(&offsets, 1);
    let w5 = fd_weights(&offsets[2..7], 1);
    let slope: C64 = vals.iter().zip(&w9[1]).map(|(e, c)| e.value * *c).sum::<C64>() / h;
    let slope5: C64 = vals[2..7].iter().zip(&w5[1]).map(|(e, c)| e.value * *c).sum::<C64>() / h;
    let centre = vals[4];
    let err = 1.5 * centre.error + rho * (slope - slope5).norm();
    let v = centre.value * 0.5 + slope * rho;
    Estimate::new(v * (-I * FRAC_1_SQRT_2PI), err * FRAC_1_SQRT_2PI)
}

const SERIES_TERMS: usize = 9;
const SERIES_RADIUS: f64 = 400.0;

/// Small-r expansion Σₙ rⁿ Γ(n+3/2)/n! dₙ [i^{-(n+3/2)} + σ(−1)ⁿ(−i)^{-(n+3/2)}] / √(2π),
/// with dₙ the n-th derivative of t ↦ f(t r̂) at t = 0.
fn forward_series(f: &ScalarField, rho: f64, dir: Point3, sigma: f64, radius: f64) -> Estimate {
    let h = radius / 120.0;
    let offsets: Vec<f64> = (-8..=8).map(|j| j as f64).collect();
    let vals: Vec<C64> = offsets.iter().map(|j| f.eval(dir.scale(h * j))).collect();
    let w = fd_weights(&offsets, SERIES_TERMS);
    let mut total = C64::new(0.0, 0.0);
    let mut last = 0.0;
    let mut fact = 1.0;
    for n in 0..=SERIES_TERMS {
        if n > 0 {
            fact *= n as f64;
        }
        let d: C64 = vals.iter().zip(&w[n]).map(|(v, c)| v * *c).sum::<C64>() / h.powi(n as i32);
        let nu = n as f64 + 1.5;
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
        let phase = C64::from_polar(1.0, -0.5 * PI * nu) + C64::from_polar(sigma * parity, 0.5 * PI * nu);
        let term = d * phase * (rho.powi(n as i32) * libm::tgamma(nu) / fact);
        if n < SERIES_TERMS {
            total += term;
        } else {
            last = term.norm();
        }
    }
    Estimate::new(total * FRAC_1_SQRT_2PI, last * FRAC_1_SQRT_2PI)
}

/// (Vf)(p) for V and (Uf)(p) for U: σ = −1 selects V, σ = +1 selects U.
fn forward_at(f: &ScalarField, p: Point3, sigma: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let (rho, dir) = ray_split(p)?;
    if let DecayClass::OscillatoryBessel { k } = f.decay {
        let e = bessel_forward(f, rho, dir, k, -sigma, spec);
        return spec.check(e, "Bessel-class forward transform");
    }
    if let DecayClass::Gaussian { radius } = f.decay {
        if rho < radius / SERIES_RADIUS {
            return spec.check(forward_series(f, rho, dir, sigma, radius), "small-r forward series");
        }
    }
    let a = forward_block(f, rho, dir, -1.0, spec);
    let b = forward_block(f, rho, -dir, 1.0, spec);
    let e = (a + b.scale(C64::new(sigma, 0.0))).scale(C64::new(FRAC_1_SQRT_2PI, 0.0));
    spec.check(e, "forward ray transform")
}

/// ∫₀^∞ e^{iωw} w^{-3/2} g(±ρ r̂ / w) dw.
fn inverse_block(g: &ScalarField, rho: f64, dir: Point3, omega: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let ext = Extent::of(g.decay);
    let feature = match ext {
        Extent::Finite(r) => rho / r,
        Extent::Infinite(s) => rho / s,
        Extent::Bessel(_) => return Err(bessel_unsupported("inverse transform")),
    };
    let mut h = |w: f64| g.eval(dir.scale(rho / w)) * w.powf(-1.5);
    Ok(osc_half_line(&mut h, omega, feature.min(1.0), spec.u_max, true, true, spec))
}

fn inverse_at(g: &ScalarField, p: Point3, sigma: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let (rho, dir) = ray_split(p)?;
    let a = inverse_block(g, rho, dir, 1.0, spec)?;
    let b = inverse_block(g, rho, -dir, -1.0, spec)?;
    let e = (a + b.scale(C64::new(sigma, 0.0))).scale(C64::new(FRAC_1_SQRT_2PI, 0.0));
    spec.check(e, "inverse ray transform")
}

pub fn apply_v_at(f: &ScalarField, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    forward_at(f, p, -1.0, spec)
}

pub fn apply_vinv_at(g: &ScalarField, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    inverse_at(g, p, -1.0, spec)
}

pub fn apply_u_at(direction: Direction, f: &ScalarField, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    match direction {
        Direction::Forward => forward_at(f, p, 1.0, spec),
        Direction::Inverse => inverse_at(f, p, 1.0, spec),
    }
}

pub fn apply_v_with(f: &ScalarField, spec: QuadratureSpec) -> ScalarField {
    lift(f, ray_singular(f), output_decay(f.decay, 1.5), move |g, p| apply_v_at(g, p, &spec))
}

pub fn apply_v(f: &ScalarField) -> ScalarField {
    apply_v_with(f, QuadratureSpec::default())
}

pub fn apply_vinv_with(g: &ScalarField, spec: QuadratureSpec) -> ScalarField {
    lift(g, ray_singular(g), output_decay(g.decay, 1.5), move |h, p| apply_vinv_at(h, p, &spec))
}

pub fn apply_vinv(g: &ScalarField) -> ScalarField {
    apply_vinv_with(g, QuadratureSpec::default())
}

pub fn apply_u_with(direction: Direction, f: &ScalarField, spec: QuadratureSpec) -> ScalarField {
    lift(f, ray_singular(f), output_decay(f.decay, 1.5), move |g, p| apply_u_at(direction, g, p, &spec))
}

pub fn apply_u(direction: Direction, f: &ScalarField) -> ScalarField {
    apply_u_with(direction, f, QuadratureSpec::default())
}

/// (r^{-a} G± r^{a} f)(p) with weight exponent a ∈ {0, ½}:
/// G±f(r) = (1/π)[PV∫₀^∞ f(ur)/(u−1) du ∓ ∫₀^∞ f(−ur)/(u+1) du].
pub fn apply_g_weighted_at(sign: Sign, f: &ScalarField, weight: f64, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    let (rho, dir) = ray_split(p)?;
    let ext = Extent::of(f.decay);
    let sq = weight != 0.0;
    let mut qp = |t: f64| f.eval(dir.scale(t)) * t.powf(weight);
    let pv = pv_half_line(&mut qp, rho, ext, sq, spec)?;
    let mut qm = |t: f64| f.eval(dir.scale(-t)) * t.powf(weight);
    let st = stieltjes_half_line(&mut qm, rho, ext, sq, spec)?;
    let e = (pv - st.scale(C64::new(sign.value(), 0.0))).scale(C64::new(rho.powf(-weight) / PI, 0.0));
    spec.check(e, "G transform")
}

pub fn apply_g_at(sign: Sign, f: &ScalarField, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    apply_g_weighted_at(sign, f, 0.0, p, spec)
}

/// G± conjugated by √r, the form entering the position operator.
pub fn apply_g_conj_at(sign: Sign, f: &ScalarField, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    apply_g_weighted_at(sign, f, 0.5, p, spec)
}

pub fn apply_g_with(sign: Sign, f: &ScalarField, spec: QuadratureSpec) -> ScalarField {
    lift(f, ray_singular(f), output_decay(f.decay, 1.0), move |g, p| apply_g_at(sign, g, p, &spec))
}

pub fn apply_g(sign: Sign, f: &ScalarField) -> ScalarField {
    apply_g_with(sign, f, QuadratureSpec::default())
}

pub fn apply_g_conj_with(sign: Sign, f: &ScalarField, spec: QuadratureSpec) -> ScalarField {
    lift(f, ray_singular(f), output_decay(f.decay, 1.5), move |g, p| apply_g_conj_at(sign, g, p, &spec))
}

pub fn apply_g_conj(sign: Sign, f: &ScalarField) -> ScalarField {
    apply_g_conj_with(sign, f, QuadratureSpec::default())
}

/// (r^{-a} Z± r^{a} f)(p) with Z±f(r) = (1/π)∫₀^∞ [f(ur) ± f(−ur)] du.
pub fn apply_z_weighted_at(sign: Sign, f: &ScalarField, weight: f64, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    let (rho, dir) = ray_split(p)?;
    let ext = Extent::of(f.decay);
    let s = sign.value();
    let mut q = |t: f64| (f.eval(dir.scale(t)) + f.eval(dir.scale(-t)) * s) * t.powf(weight);
    let e = plain_half_line(&mut q, ext, weight != 0.0, spec)?;
    spec.check(e.scale(C64::new(rho.powf(-weight) / (PI * rho), 0.0)), "Z transform")
}

pub fn apply_z_at(sign: Sign, f: &ScalarField, p: Point3, spec: &QuadratureSpec) -> Result<Estimate> {
    apply_z_weighted_at(sign, f, 0.0, p, spec)
}

pub fn apply_z_with(sign: Sign, f: &ScalarField, spec: QuadratureSpec) -> ScalarField {
    lift(f, ray_singular(f), output_decay(f.decay, 1.0), move |g, p| apply_z_at(sign, g, p, &spec))
}

pub fn apply_z(sign: Sign, f: &ScalarField) -> ScalarField {
    apply_z_with(sign, f, QuadratureSpec::default())
}

/// The inversion N: f(r) ↦ f(r/|r|²)/|r|².
pub fn inversion_profile(p: &RayProfile, decay: DecayClass) -> RayProfile {
    let q = p.clone();
    RayProfile::from_fn(decay, move |t| {
        if t == 0.0 {
            C64::new(0.0, 0.0)
        } else {
            q.at(1.0 / t) / (t * t)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss_profile() -> RayProfile {
        RayProfile::from_fn(DecayClass::Gaussian { radius: 12.0 }, |t| C64::new((-0.5 * t * t).exp(), 0.0))
    }

    #[test]
    fn cosine_of_gaussian() {
        let spec = QuadratureSpec::default();
        for r in [0.0, 0.7, 2.0] {
            let v = fourier_at(TransformKind::Cosine, &gauss_profile(), r, false, &spec).unwrap().value;
            assert!((v.re - (-0.5 * r * r).exp()).abs() < 1e-10, "{r} {v}");
        }
    }

    #[test]
    fn small_radius_series_matches_quadrature() {
        let spec = QuadratureSpec::default();
        let c = Point3::new(0.5, 0.3, 0.8);
        let f = ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 13.0 }, move |p| {
            let d = p - c;
            C64::new(1.0, 0.1 * p.z) * (-0.5 * d.dot(d)).exp()
        });
        let dir = Point3::new(0.3, -0.4, 0.5).unit().unwrap();
        for sigma in [-1.0, 1.0] {
            for rho in [13.0 / 400.0, 0.02] {
                let a = forward_series(&f, rho, dir, sigma, 13.0).value;
                let a_b = forward_block(&f, rho, dir, -1.0, &spec);
                let b_b = forward_block(&f, rho, -dir, 1.0, &spec);
                let b = (a_b + b_b.scale(C64::new(sigma, 0.0))).value * FRAC_1_SQRT_2PI;
                assert!((a - b).norm() < 1e-9 * b.norm().max(1e-3), "{sigma} {rho} {a} {b}");
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        let spec = QuadratureSpec::default();
        let lor = RayProfile::from_fn(DecayClass::PowerLaw { exponent: 2.0, scale: 1.0 }, |t| C64::new(1.0 / (1.0 + t * t), 0.0));
        let odd = RayProfile::from_fn(DecayClass::PowerLaw { exponent: 1.0, scale: 1.0 }, |t| C64::new(t / (1.0 + t * t), 0.0));
        for r in [0.3, 1.0, 2.5] {
            let he = hilbert_at(HilbertParity::Even, &lor, r, &spec).unwrap().value.re;
            assert!((he + r / (1.0 + r * r)).abs() < 1e-9, "{r} {he}");
            let ho = hilbert_at(HilbertParity::Odd, &odd, r, &spec).unwrap().value.re;
            assert!((ho - 1.0 / (1.0 + r * r)).abs() < 1e-9, "{r} {ho}");
        }
    }
}
