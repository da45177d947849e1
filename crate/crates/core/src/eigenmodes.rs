//! Eigenfunctions u_{s,k}, transformed waves w_{s,k}, the 1/r inner product
//! and smeared orthogonality of wave packets.

use crate::diffops::Helicity;
use crate::error::{Error, Result};
use crate::field::{DecayClass, ParabolicCoords, Point3, ScalarField, SingularSet, AXIS_TUBE};
use crate::quadrature::{self, fd_weights, gauss_legendre_on, Estimate, Tolerance};
use crate::specfun::{bessel_j, BesselOrder};
use num_complex::Complex64 as C64;
use std::f64::consts::{PI, SQRT_2};


/// Helicity and wave vector of an eigenfunction; k⁰ = |k|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveMode {
    pub s: Helicity,
    pub k: Point3,
}

impl WaveMode {
    pub fn new(s: Helicity, k: Point3) -> Result<Self> {
        let n = k.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::DomainError("wave vector must be non-zero and finite".into()));
        }
        Ok(Self { s, k })
    }

    pub fn along_z(s: Helicity, k: f64) -> Result<Self> {
        Self::new(s, Point3::new(0.0, 0.0, k))
    }

    pub fn k0(&self) -> f64 {
        self.k.norm()
    }

    pub fn four_vector(&self) -> [f64; 4] {
        [self.k0(), self.k.x, self.k.y, self.k.z]
    }
}

/// Half-angle data of a unit vector: cos(θ/2) and e^{iφ} sin(θ/2).
fn half_angles(n: Point3) -> (f64, C64) {
    let c = (0.5 * (1.0 + n.z).max(0.0)).sqrt();
    let es = if c > 1e-8 {
        C64::new(n.x, n.y) / (2.0 * c)
    } else {
        let phase = n.azimuth_phase().unwrap_or(C64::new(1.0, 0.0));
        phase * (0.5 * (1.0 - n.z).max(0.0)).sqrt()
    };
    (c, es)
}

/// The angular phase e^{if(r̂, k̂)}; e^{iφ} is taken as 1 on the z axis.
pub fn phase_factor(rhat: Point3, khat: Point3) -> Result<C64> {
    let (r, k) = match (rhat.unit(), khat.unit()) {
        (Some(r), Some(k)) => (r, k),
        _ => return Err(Error::DomainError("phase factor needs non-zero directions".into())),
    };
    let sum = r + k;
    let q = sum.norm();
    if q < 1e-12 {
        return Err(Error::DomainError("phase factor is singular for antiparallel r and k".into()));
    }
    let (ck, ek) = half_angles(k);
    let cr = (0.5 * (1.0 + r.z).max(0.0)).sqrt();
    let sr = (0.5 * (1.0 - r.z).max(0.0)).sqrt();
    let ephi = r.azimuth_phase().unwrap_or(C64::new(1.0, 0.0));
    let bracket = ephi * (cr * ck) + ek * sr;
    Ok(bracket * (2.0 / q))
}

fn mode_phase(mode: &WaveMode, p: Point3, r: f64) -> C64 {
    // e^{if} = [ (x+iy) cos(θ_k/2) / (2√(μ r)) + e^{iφ_k} sin(θ_k/2) √(μ/r) ] · 2/|r̂+k̂|
    let khat = mode.k.scale(1.0 / mode.k0());
    let (ck, ek) = half_angles(khat);
    let mu = p.parabolic().mu;
    let q = (p.scale(1.0 / r) + khat).norm();
    let bracket = C64::new(p.x, p.y) * (ck / (2.0 * (mu * r).sqrt())) + ek * (mu / r).sqrt();
    bracket * (2.0 / q)
}

/// u_{s,k}(r) = (1/4π) e^{2isf} J_{2s}(√(2kr + 2k·r)).
pub fn eval_u(mode: &WaveMode, p: Point3) -> Result<C64> {
    let r = p.norm();
    let k0 = mode.k0();
    let arg2 = if r > 0.0 {
        let khat = mode.k.scale(1.0 / k0);
        let q = (p.scale(1.0 / r) + khat).norm();
        k0 * r * q * q
    } else {
        0.0
    };
    let order = BesselOrder::integer(mode.s.two_s())?;
    let j = bessel_j(order, arg2.max(0.0).sqrt())?;
    if mode.s.is_zero() {
        return Ok(C64::new(j / (4.0 * PI), 0.0));
    }
    if p.z > 0.0 && p.rho() < AXIS_TUBE * r {
        return Err(Error::DomainError(format!(
            "u with s = {} is undefined on the positive z axis at ({}, {}, {})",
            mode.s, p.x, p.y, p.z
        )));
    }
    if j == 0.0 || r == 0.0 || p.rho() == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let ph = mode_phase(mode, p, r);
    Ok(ph.powi(mode.s.two_s() as i32) * (j / (4.0 * PI)))
}

/// u_{s,k} as a field; evaluation errors become NaN.
pub fn u_field(mode: WaveMode) -> ScalarField {
    let sing = if mode.s.is_zero() { SingularSet::None } else { SingularSet::PositiveZAxis };
    ScalarField::new(sing, DecayClass::OscillatoryBessel { k: mode.k0() }, move |p| {
        eval_u(&mode, p).unwrap_or(C64::new(f64::NAN, f64::NAN))
    })
}

fn check_w_args(s: Helicity, k: f64) -> Result<()> {
    if s.two_s() < 0 {
        return Err(Error::DomainError("w is implemented for s >= 0".into()));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::DomainError(format!("w needs k > 0, got {k}")));
    }
    Ok(())
}

fn jnu(two_nu: i64, x: f64) -> Result<f64> {
    bessel_j(BesselOrder::from_two_nu(two_nu)?, x)
}

/// One braced term of w: e^{±i(1−2s)π/4} e^{±iy} {(2s−1)J_s(y) − 2y(J_{s−1}(y) ± iJ_s(y))}, y = kρ/2.
fn w_brace(s: Helicity, y: f64, sign: f64) -> Result<C64> {
    let ts = s.two_s();
    let sv = s.s();
    let js = jnu(ts, y)?;
    let lower = if y == 0.0 { 0.0 } else { 2.0 * y * jnu(ts - 2, y)? };
    let inner = C64::new((2.0 * sv - 1.0) * js - lower, -sign * 2.0 * y * js);
    let phase = C64::from_polar(1.0, sign * ((1.0 - 2.0 * sv) * PI / 4.0 + y));
    Ok(phase * inner)
}

fn parity_phase(s: Helicity) -> C64 {
    if s.two_s() % 2 == 0 {
        C64::new(1.0, 0.0)
    } else {
        C64::new(-1.0, 0.0)
    }
}

/// w_{s,(0,0,k)} without the azimuthal factor e^{2isφ}; defined on the axis.
pub fn eval_w_reduced(s: Helicity, k: f64, p: Point3) -> Result<C64> {
    check_w_args(s, k)?;
    let ParabolicCoords { lam, mu } = p.parabolic();
    let a = w_brace(s, 0.5 * k * lam, 1.0)?;
    let b = w_brace(s, 0.5 * k * mu, -1.0)?;
    Ok((a - parity_phase(s) * b) / (8.0 * PI * SQRT_2))
}

fn azimuthal_factor(s: Helicity, p: Point3) -> Result<C64> {
    if s.is_zero() {
        return Ok(C64::new(1.0, 0.0));
    }
    let e = p.azimuth_phase().ok_or_else(|| {
        Error::DomainError(format!("phase of w with s = {s} is undefined on the z axis"))
    })?;
    Ok(e.powi(s.two_s() as i32))
}

/// The transformed eigenfunction w_{s,(0,0,k)}(r).
pub fn eval_w(s: Helicity, k: f64, p: Point3) -> Result<C64> {
    let red = eval_w_reduced(s, k, p)?;
    if red == C64::new(0.0, 0.0) {
        return Ok(red);
    }
    Ok(azimuthal_factor(s, p)? * red)
}

/// Closed form of w for s = 1/2:
/// −e^{iφ}/(8π^{3/2}) [√(k(r+z)) e^{ik(r+z)/2} + √(k(r−z)) e^{−ik(r−z)/2}].
pub fn eval_w_half(k: f64, p: Point3) -> Result<C64> {
    check_w_args(Helicity::HALF, k)?;
    let ParabolicCoords { lam, mu } = p.parabolic();
    let v = C64::from_polar((2.0 * k * lam).sqrt(), k * lam) + C64::from_polar((2.0 * k * mu).sqrt(), -k * mu);
    let red = -v / (8.0 * PI.powf(1.5));
    Ok(azimuthal_factor(Helicity::HALF, p)? * red)
}

/// w through the derivative form −e^{2isφ}/(4π√2)·(√ρ∂_ρ√ρ){brace} along the ray through `p`.
pub fn eval_w_derivative_form(s: Helicity, k: f64, p: Point3) -> Result<C64> {
    check_w_args(s, k)?;
    let rho = p.norm();
    if rho == 0.0 {
        return Err(Error::DomainError("derivative form needs r > 0".into()));
    }
    let dir = p.scale(1.0 / rho);
    let brace = |t: f64| -> Result<C64> {
        let q = dir.scale(t).parabolic();
        let a = C64::from_polar(1.0, (1.0 - 2.0 * s.s()) * PI / 4.0 + 0.5 * k * q.lam) * jnu(s.two_s(), 0.5 * k * q.lam)?;
        let b = C64::from_polar(1.0, -(1.0 - 2.0 * s.s()) * PI / 4.0 - 0.5 * k * q.mu) * jnu(s.two_s(), 0.5 * k * q.mu)?;
        Ok((a - parity_phase(s) * b) * t.sqrt())
    };
    let h = 0.01 * rho.min(1.0);
    let offsets: Vec<f64> = (-4..=4).map(|j| j as f64).collect();
    let w = fd_weights(&offsets, 1);
    let mut d = C64::new(0.0, 0.0);
    for (o, c) in offsets.iter().zip(&w[1]) {
        d += *c * brace(rho + o * h)?;
    }
    d /= h;
    Ok(-azimuthal_factor(s, p)? * rho.sqrt() * d / (4.0 * PI * SQRT_2))
}

/// w_{s,(0,0,k)} as a field; evaluation errors become NaN.
pub fn w_field(s: Helicity, k: f64) -> ScalarField {
    let sing = if s.is_zero() { SingularSet::None } else { SingularSet::FullZAxis };
    ScalarField::new(sing, DecayClass::OscillatoryBessel { k }, move |p| {
        eval_w(s, k, p).unwrap_or(C64::new(f64::NAN, f64::NAN))
    })
}

/// Least-squares slope of the unwrapped phase of w_{1/2,(0,0,k)} on z ∈ [z0, z1] along +z.
pub fn phase_slope_on_axis(k: f64, z0: f64, z1: f64, n: usize) -> Result<f64> {
    if n < 2 || !(z1 > z0) || z0 < 0.0 {
        return Err(Error::DomainError("phase slope needs n >= 2 and 0 <= z0 < z1".into()));
    }
    let mut zs = Vec::with_capacity(n);
    let mut ph = Vec::with_capacity(n);
    let mut prev = None;
    let mut offset = 0.0;
    for j in 0..n {
        let z = z0 + (z1 - z0) * j as f64 / (n - 1) as f64;
        let w = eval_w_reduced(Helicity::HALF, k, Point3::new(0.0, 0.0, z))?;
        let mut a = w.arg() + offset;
        if let Some(pa) = prev {
            while a - pa > PI {
                a -= 2.0 * PI;
                offset -= 2.0 * PI;
            }
            while a - pa < -PI {
                a += 2.0 * PI;
                offset += 2.0 * PI;
            }
        }
        prev = Some(a);
        zs.push(z);
        ph.push(a);
    }
    let m = n as f64;
    let zm = zs.iter().sum::<f64>() / m;
    let pm = ph.iter().sum::<f64>() / m;
    let num: f64 = zs.iter().zip(&ph).map(|(z, p)| (z - zm) * (p - pm)).sum();
    let den: f64 = zs.iter().map(|z| (z - zm) * (z - zm)).sum();
    Ok(num / den)
}

/// Angular and radial resolution of the 1/r inner product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProductSpec {
    pub n_cos: usize,
    pub n_phi: usize,
    pub tol: Tolerance,
}

impl Default for InnerProductSpec {
    fn default() -> Self {
        Self { n_cos: 24, n_phi: 32, tol: Tolerance { abs: 1e-14, rel: 1e-10, max_intervals: 200 } }
    }
}

/// ∫₀^∞ h(t) dt with the strategy selected by `decay`.
pub fn radial_integral<F: FnMut(f64) -> C64>(mut h: F, decay: DecayClass, tol: &Tolerance) -> Result<Estimate> {
    match decay {
        DecayClass::Gaussian { radius } => {
            let breaks: Vec<f64> = [0.0, 0.125, 0.25, 0.5, 0.75, 1.0].iter().map(|c| c * radius).collect();
            Ok(quadrature::piecewise(&mut h, &breaks, false, tol))
        }
        DecayClass::PowerLaw { exponent, scale } => {
            if exponent <= 1.0 {
                return Err(Error::QuadratureFailure {
                    what: format!("radial integrand decaying like t^-{exponent} is not integrable"),
                    estimate: f64::INFINITY,
                });
            }
            let breaks = [0.0, 0.25 * scale, scale];
            let head = quadrature::piecewise(&mut h, &breaks, false, tol);
            Ok(head + quadrature::adaptive_to_infinity(&mut h, scale, tol))
        }
        DecayClass::OscillatoryBessel { .. } => Err(Error::QuadratureFailure {
            what: "unsmeared Bessel-type fields are not square integrable".into(),
            estimate: f64::INFINITY,
        }),
    }
}

/// ⟨f|g⟩ = ∫ f* g (1/r) d³r.
pub fn inner_product(f: &ScalarField, g: &ScalarField) -> Result<Estimate> {
    inner_product_with(f, g, &InnerProductSpec::default())
}

pub fn inner_product_with(f: &ScalarField, g: &ScalarField, spec: &InnerProductSpec) -> Result<Estimate> {
    let decay = match (f.decay, g.decay) {
        (DecayClass::PowerLaw { exponent: a, scale: s }, DecayClass::PowerLaw { exponent: b, scale: t }) => {
            DecayClass::PowerLaw { exponent: a + b - 1.0, scale: s.max(t) }
        }
        (DecayClass::PowerLaw { scale, .. }, DecayClass::Gaussian { radius })
        | (DecayClass::Gaussian { radius }, DecayClass::PowerLaw { scale, .. }) => {
            DecayClass::Gaussian { radius: radius.max(scale) }
        }
        (a, b) => a.combine(b),
    };
    let (cs, cw) = gauss_legendre_on(spec.n_cos, -1.0, 1.0);
    let dphi = 2.0 * PI / spec.n_phi as f64;
    let mut total = Estimate::zero();
    for (c, wc) in cs.iter().zip(&cw) {
        let sn = (1.0 - c * c).max(0.0).sqrt();
        for j in 0..spec.n_phi {
            let phi = (j as f64 + 0.5) * dphi;
            let dir = Point3::new(sn * phi.cos(), sn * phi.sin(), *c);
            let est = radial_integral(
                |t| {
                    let p = dir.scale(t);
                    f.eval(p).conj() * g.eval(p) * t
                },
                decay,
                &spec.tol,
            )?;
            total = total + est.scale(C64::new(wc * dphi, 0.0));
        }
    }
    if !total.value.is_finite() {
        return Err(Error::QuadratureFailure { what: "inner product is not finite".into(), estimate: f64::NAN });
    }
    Ok(total)
}

/// Resolution of the smeared-orthogonality computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapSpec {
    /// Gauss–Legendre nodes per parabolic coordinate.
    pub n_plane: usize,
    /// Extent of the parabolic coordinates a, b with x = ab, z = (a² − b²)/2.
    pub extent: f64,
    /// Gauss–Legendre nodes in |k| and in the polar angle of k.
    pub n_k: usize,
    pub n_alpha: usize,
}

impl Default for OverlapSpec {
    fn default() -> Self {
        Self { n_plane: 60, extent: 24.0, n_k: 60, n_alpha: 60 }
    }
}

/// Normalised Gaussian k-space profile (2πσ²)^{-3/4} exp(−|k−c|²/(4σ²)).
pub fn packet_amplitude(k: Point3, center: Point3, width: f64) -> f64 {
    let d = k - center;
    (2.0 * PI * width * width).powf(-0.75) * (-d.dot(d) / (4.0 * width * width)).exp()
}

/// ∫ d³k g₁(k) g₂(k)/|k| for Gaussian profiles, in closed form.
pub fn packet_overlap_analytic(center1: Point3, center2: Point3, width: f64) -> f64 {
    let d = center1 - center2;
    let m = (center1 + center2).scale(0.5);
    let mn = m.norm();
    let shape = (-d.dot(d) / (8.0 * width * width)).exp();
    if mn < 1e-12 {
        return shape * (2.0 / PI).sqrt() / width;
    }
    shape * libm::erf(mn / (SQRT_2 * width)) / mn
}

/// Packet φ(r) = ∫ d³k g(k) u_{0,k}(r)/|k| on the half plane y = 0, for a centre on the z axis.
struct AxialPacket {
    k: Vec<f64>,
    cos_a: Vec<f64>,
    sin_a: Vec<f64>,
    weight: Vec<f64>,
}

impl AxialPacket {
    fn new(cz: f64, width: f64, spec: &OverlapSpec) -> Self {
        let reach = 9.0 * SQRT_2 * width;
        let c = cz.abs();
        let (klo, khi, amax) = if c > reach {
            (c - reach, c + reach, (12.0 * SQRT_2 * width / (c - reach).max(0.2 * c)).min(PI))
        } else {
            (0.0, c + reach, PI)
        };
        let (ks, wk) = gauss_legendre_on(spec.n_k, klo, khi);
        let (als, wa) = gauss_legendre_on(spec.n_alpha, 0.0, amax);
        let mut out = Self { k: vec![], cos_a: vec![], sin_a: vec![], weight: vec![] };
        let axis = if cz < 0.0 { -1.0 } else { 1.0 };
        for (k, wk) in ks.iter().zip(&wk) {
            for (a, wa) in als.iter().zip(&wa) {
                let (sa, ca) = a.sin_cos();
                let kv = Point3::new(k * sa, 0.0, axis * k * ca);
                let g = packet_amplitude(kv, Point3::new(0.0, 0.0, cz), width);
                out.k.push(*k);
                out.cos_a.push(axis * ca);
                out.sin_a.push(sa);
                // the azimuth of k is integrated analytically: 2π J₀(a)J₀(b) over 4π
                out.weight.push(wk * wa * g * k * sa * 0.5);
            }
        }
        out
    }

    fn eval(&self, x: f64, z: f64) -> Result<f64> {
        let r = x.hypot(z);
        let j0 = BesselOrder::integer(0)?;
        let mut sum = 0.0;
        for i in 0..self.k.len() {
            let a = 2.0 * self.k[i] * (r + z * self.cos_a[i]);
            let b = (2.0 * self.k[i] * x * self.sin_a[i]).abs();
            let sp = (a + b).max(0.0).sqrt();
            let sm = (a - b).max(0.0).sqrt();
            sum += self.weight[i] * bessel_j(j0, 0.5 * (sp + sm))? * bessel_j(j0, 0.5 * (sp - sm))?;
        }
        Ok(sum)
    }
}

/// ⟨φ₁|φ₂⟩ for Gaussian k-space packets of helicity 0 whose centres lie on one line through the origin.
pub fn packet_overlap(s: Helicity, center1: Point3, center2: Point3, width: f64) -> Result<C64> {
    packet_overlap_with(s, center1, center2, width, &OverlapSpec::default())
}

pub fn packet_overlap_with(
    s: Helicity,
    center1: Point3,
    center2: Point3,
    width: f64,
    spec: &OverlapSpec,
) -> Result<C64> {
    if !s.is_zero() {
        return Err(Error::DomainError("packet overlap is implemented for s = 0".into()));
    }
    if !(width > 0.0) {
        return Err(Error::DomainError("packet width must be positive".into()));
    }
    let axis = center1.unit().or_else(|| center2.unit()).unwrap_or(Point3::new(0.0, 0.0, 1.0));
    let off = |c: Point3| (c - axis.scale(c.dot(axis))).norm();
    if off(center1) > 1e-12 * (1.0 + center1.norm()) || off(center2) > 1e-12 * (1.0 + center2.norm()) {
        return Err(Error::DomainError("packet overlap needs centres on a common line through the origin".into()));
    }
    // the overlap is rotation invariant, so the common line is taken as the z axis
    let p1 = AxialPacket::new(center1.dot(axis), width, spec);
    let p2 = AxialPacket::new(center2.dot(axis), width, spec);
    let same = center1 == center2;
    let (t, wt) = gauss_legendre_on(spec.n_plane, 0.0, spec.extent);
    let mut total = 0.0;
    for (a, wa) in t.iter().zip(&wt) {
        for (b, wb) in t.iter().zip(&wt) {
            let x = a * b;
            let z = 0.5 * (a * a - b * b);
            let v1 = p1.eval(x, z)?;
            let v2 = if same { v1 } else { p2.eval(x, z)? };
            total += wa * wb * 4.0 * a * b * v1 * v2;
        }
    }
    Ok(C64::new(PI * total, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_examples() {
        let m = WaveMode::along_z(Helicity::ZERO, 1.0).unwrap();
        let v = eval_u(&m, Point3::ORIGIN).unwrap();
        assert!((v.re - 1.0 / (4.0 * PI)).abs() < 1e-15);
        let j0 = 2.404_825_557_695_773f64;
        // 2kr + 2kz = j0² with z = 0
        let p = Point3::new(0.5 * j0 * j0, 0.0, 0.0);
        assert!(eval_u(&m, p).unwrap().norm() < 1e-12);
        let h = WaveMode::along_z(Helicity::HALF, 1.0).unwrap();
        assert_eq!(eval_u(&h, Point3::new(0.0, 0.0, -3.0)).unwrap(), C64::new(0.0, 0.0));
        assert!(eval_u(&h, Point3::new(0.0, 0.0, 3.0)).is_err());
    }

    #[test]
    fn phase_factor_examples() {
        let z = Point3::new(0.0, 0.0, 1.0);
        let r = Point3::new(0.3, -0.4, 0.2).unit().unwrap();
        let e = phase_factor(r, z).unwrap();
        assert!((e - r.azimuth_phase().unwrap()).norm() < 1e-12);
        let k = Point3::new(0.6, 0.0, 0.8);
        let ek = phase_factor(k, k).unwrap();
        assert!((ek - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(phase_factor(-k, k).is_err());
    }

    #[test]
    fn mode_phase_matches_phase_factor() {
        let m = WaveMode::new(Helicity::HALF, Point3::new(0.3, -0.5, 0.4)).unwrap();
        let p = Point3::new(1.2, 0.7, -0.9);
        let a = mode_phase(&m, p, p.norm());
        let b = phase_factor(p, m.k).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn w_examples() {
        let w0 = eval_w(Helicity::ZERO, 1.0, Point3::ORIGIN).unwrap();
        assert!((w0 - C64::new(0.0, -1.0 / (8.0 * PI))).norm() < 1e-15);
        let a = eval_w_reduced(Helicity::HALF, 1.0, Point3::new(0.0, 0.0, 2.0)).unwrap();
        assert!((a.norm() - 2.0 / (8.0 * PI.powf(1.5))).abs() < 1e-14);
        assert_eq!(eval_w(Helicity::ONE, 1.0, Point3::ORIGIN).unwrap(), C64::new(0.0, 0.0));
        assert!(eval_w_reduced(Helicity::ONE, 1.0, Point3::ORIGIN).unwrap().norm() < 1e-15);
        assert!(eval_w(Helicity::HALF, 1.0, Point3::new(0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn half_paths_agree() {
        for p in [Point3::new(0.8, 0.3, 0.5), Point3::new(-2.0, 1.0, -7.0), Point3::new(30.0, -4.0, 11.0)] {
            for k in [0.5, 1.0, 2.0] {
                let a = eval_w(Helicity::HALF, k, p).unwrap();
                let b = eval_w_half(k, p).unwrap();
                assert!((a - b).norm() <= 1e-12 * b.norm(), "{p:?} {k}");
            }
        }
    }

    #[test]
    fn derivative_form_agrees() {
        for s in [Helicity::ZERO, Helicity::HALF, Helicity::ONE] {
            let p = Point3::new(0.9, -0.4, 0.6);
            let a = eval_w(s, 1.0, p).unwrap();
            let b = eval_w_derivative_form(s, 1.0, p).unwrap();
            assert!((a - b).norm() < 1e-9 * a.norm().max(1e-3), "s={s} {a} {b}");
        }
    }

    #[test]
    fn phase_slope() {
        for k in [0.5, 1.0, 2.0] {
            let m = phase_slope_on_axis(k, 1.0, 30.0, 400).unwrap();
            assert!((m - k).abs() < 1e-6);
        }
    }

    #[test]
    fn gaussian_norm() {
        let f = ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 9.0 }, |p| {
            C64::new((-0.5 * p.dot(p)).exp(), 0.0)
        });
        let v = inner_product(&f, &f).unwrap();
        assert!((v.value.re - 2.0 * PI).abs() < 1e-10);
        let g = f.times_coordinate(2);
        assert!(inner_product(&f, &g).unwrap().value.norm() < 1e-10);
    }
}
