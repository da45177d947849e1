//! Complex scalar fields on R³, ray sampling, parity and inversion.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Radius of the exclusion tube around the z axis, relative to max(1, r).
pub const AXIS_TUBE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn component(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    pub fn axis(i: usize) -> Self {
        let mut a = [0.0; 3];
        a[i] = 1.0;
        Self::from_array(a)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn scale(self, c: f64) -> Point3 {
        Point3::new(self.x * c, self.y * c, self.z * c)
    }

    pub fn unit(self) -> Option<Point3> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    /// Distance from the z axis.
    pub fn rho(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Polar angle θ ∈ [0, π].
    pub fn theta(self) -> f64 {
        self.rho().atan2(self.z)
    }

    /// e^{iφ} = (x + iy)/√(x² + y²); undefined on the z axis.
    pub fn azimuth_phase(self) -> Option<C64> {
        let rho = self.rho();
        (rho > 0.0).then(|| C64::new(self.x / rho, self.y / rho))
    }

    /// Parabolic coordinates λ = (r+z)/2, μ = (r−z)/2.
    pub fn parabolic(self) -> ParabolicCoords {
        let r = self.norm();
        let rho2 = self.x * self.x + self.y * self.y;
        // the smaller of r ± z is recomputed from ρ² to avoid cancellation
        let (lam, mu) = if self.z >= 0.0 {
            let l = 0.5 * (r + self.z);
            (l, if l > 0.0 { rho2 / (4.0 * l) } else { 0.0 })
        } else {
            let m = 0.5 * (r - self.z);
            (if m > 0.0 { rho2 / (4.0 * m) } else { 0.0 }, m)
        };
        ParabolicCoords { lam, mu }
    }

    /// Whether the point lies within the exclusion tube of the z axis.
    pub fn near_z_axis(self) -> bool {
        self.rho() < AXIS_TUBE * self.norm().max(1.0)
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, c: f64) -> Point3 {
        self.scale(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicCoords {
    pub lam: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularSet {
    None,
    Origin,
    PositiveZAxis,
    NegativeZAxis,
    FullZAxis,
}

impl SingularSet {
    pub fn mirrored(self) -> Self {
        match self {
            SingularSet::PositiveZAxis => SingularSet::NegativeZAxis,
            SingularSet::NegativeZAxis => SingularSet::PositiveZAxis,
            s => s,
        }
    }

    pub fn union(self, o: SingularSet) -> SingularSet {
        use SingularSet::*;
        match (self, o) {
            (None, s) | (s, None) => s,
            (Origin, s) | (s, Origin) => s,
            (a, b) if a == b => a,
            _ => FullZAxis,
        }
    }

    /// Whether `p` lies in the exclusion region of this set.
    pub fn contains(self, p: Point3) -> bool {
        match self {
            SingularSet::None => false,
            SingularSet::Origin => p.norm() == 0.0,
            SingularSet::PositiveZAxis => p.near_z_axis() && p.z >= 0.0,
            SingularSet::NegativeZAxis => p.near_z_axis() && p.z <= 0.0,
            SingularSet::FullZAxis => p.near_z_axis(),
        }
    }
}

/// How a field behaves at large distance; selects quadrature strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// Negligible (below ~1e-16 of its peak) beyond `radius`.
    Gaussian { radius: f64 },
    /// Behaves like |r|^(-exponent) beyond `scale`.
    PowerLaw { exponent: f64, scale: f64 },
    /// Bessel-type eigenfunction profile with wave number `k`.
    OscillatoryBessel { k: f64 },
}

impl DecayClass {
    /// Decay class of a sum or product of two fields.
    pub fn combine(self, o: DecayClass) -> DecayClass {
        use DecayClass::*;
        match (self, o) {
            (OscillatoryBessel { k: a }, OscillatoryBessel { k: b }) => OscillatoryBessel { k: a.max(b) },
            (OscillatoryBessel { k }, _) | (_, OscillatoryBessel { k }) => OscillatoryBessel { k },
            (PowerLaw { exponent: a, scale: s }, PowerLaw { exponent: b, scale: t }) => {
                PowerLaw { exponent: a.min(b), scale: s.max(t) }
            }
            (PowerLaw { exponent, scale }, Gaussian { radius }) | (Gaussian { radius }, PowerLaw { exponent, scale }) => {
                PowerLaw { exponent, scale: scale.max(radius) }
            }
            (Gaussian { radius: a }, Gaussian { radius: b }) => Gaussian { radius: a.max(b) },
        }
    }

    /// A length beyond which the field is in its asymptotic regime.
    pub fn length_scale(self) -> f64 {
        match self {
            DecayClass::Gaussian { radius } => radius,
            DecayClass::PowerLaw { scale, .. } => scale,
            DecayClass::OscillatoryBessel { k } => 1.0 / k,
        }
    }
}

type EvalFn = dyn Fn(Point3) -> C64 + Send + Sync;

/// An immutable complex field on R³ with its singular set and decay class.
#[derive(Clone)]
pub struct ScalarField {
    eval: Arc<EvalFn>,
    pub singular_set: SingularSet,
    pub decay: DecayClass,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("singular_set", &self.singular_set)
            .field("decay", &self.decay)
            .finish_non_exhaustive()
    }
}

impl ScalarField {
    pub fn new<F>(singular_set: SingularSet, decay: DecayClass, f: F) -> Self
    where
        F: Fn(Point3) -> C64 + Send + Sync + 'static,
    {
        Self { eval: Arc::new(f), singular_set, decay }
    }

    /// Raw evaluation; callers keep away from the singular set.
    pub fn eval(&self, p: Point3) -> C64 {
        (self.eval)(p)
    }

    /// Evaluation that refuses points inside the singular set.
    pub fn try_eval(&self, p: Point3) -> Result<C64> {
        if self.singular_set.contains(p) {
            return Err(Error::AxisSingularity { x: p.x, y: p.y, z: p.z });
        }
        Ok(self.eval(p))
    }

    pub fn with_decay(mut self, decay: DecayClass) -> Self {
        self.decay = decay;
        self
    }

    pub fn with_singular_set(mut self, s: SingularSet) -> Self {
        self.singular_set = s;
        self
    }

    /// Pointwise map of values, keeping metadata.
    pub fn map<G>(&self, g: G) -> ScalarField
    where
        G: Fn(Point3, C64) -> C64 + Send + Sync + 'static,
    {
        let f = self.clone();
        ScalarField::new(self.singular_set, self.decay, move |p| g(p, f.eval(p)))
    }

    pub fn scaled(&self, c: C64) -> ScalarField {
        self.map(move |_, v| v * c)
    }

    /// Multiplication by a real function of position that grows at most like |r|^power.
    pub fn times<G>(&self, power: f64, g: G) -> ScalarField
    where
        G: Fn(Point3) -> f64 + Send + Sync + 'static,
    {
        let out = self.map(move |p, v| v * g(p));
        let decay = match self.decay {
            DecayClass::PowerLaw { exponent, scale } => DecayClass::PowerLaw { exponent: exponent - power, scale },
            d => d,
        };
        out.with_decay(decay)
    }

    /// Multiplication by the Cartesian coordinate x_i.
    pub fn times_coordinate(&self, i: usize) -> ScalarField {
        self.times(1.0, move |p| p.component(i))
    }

    /// Multiplication by |r|^power.
    pub fn times_radius_pow(&self, power: f64) -> ScalarField {
        self.times(power, move |p| p.norm().powf(power))
    }

    pub fn add(&self, o: &ScalarField) -> ScalarField {
        let (a, b) = (self.clone(), o.clone());
        ScalarField::new(
            self.singular_set.union(o.singular_set),
            self.decay.combine(o.decay),
            move |p| a.eval(p) + b.eval(p),
        )
    }

    pub fn sub(&self, o: &ScalarField) -> ScalarField {
        self.add(&o.scaled(C64::new(-1.0, 0.0)))
    }

    /// Linear combination Σ cᵢ fᵢ.
    pub fn combination(terms: &[(C64, ScalarField)]) -> ScalarField {
        let mut it = terms.iter();
        let (c0, f0) = it.next().expect("empty combination");
        it.fold(f0.scaled(*c0), |acc, (c, f)| acc.add(&f.scaled(*c)))
    }

    /// The field restricted to the line through the origin along `direction`.
    pub fn sample_ray(&self, direction: Point3) -> Result<RayProfile> {
        RayProfile::new(self.clone(), direction)
    }
}

/// Parity: (Pf)(r) = f(−r).
pub fn parity(f: &ScalarField) -> ScalarField {
    let g = f.clone();
    ScalarField::new(f.singular_set.mirrored(), f.decay, move |p| g.eval(-p))
}

/// Inversion: (Nf)(r, θ, φ) = f(1/r, θ, φ) / r².
pub fn inversion(f: &ScalarField) -> ScalarField {
    let g = f.clone();
    let decay = match f.decay {
        DecayClass::Gaussian { .. } => DecayClass::PowerLaw { exponent: 2.0, scale: 1.0 },
        d => d,
    };
    ScalarField::new(SingularSet::Origin.union(f.singular_set), decay, move |p| {
        let r2 = p.dot(p);
        g.eval(p.scale(1.0 / r2)) / r2
    })
}

/// Pointwise inversion with the r = 0 check.
pub fn inversion_at(f: &ScalarField, p: Point3) -> Result<C64> {
    let r2 = p.dot(p);
    if r2 == 0.0 {
        return Err(Error::DomainError("inversion is undefined at the origin".into()));
    }
    Ok(f.eval(p.scale(1.0 / r2)) / r2)
}

type ProfileFn = dyn Fn(f64) -> C64 + Send + Sync;

/// A complex function on the line u·direction, −∞ < u < ∞.
#[derive(Clone)]
pub struct RayProfile {
    pub direction: Point3,
    pub decay: DecayClass,
    eval: Arc<ProfileFn>,
}

impl fmt::Debug for RayProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RayProfile")
            .field("direction", &self.direction)
            .field("decay", &self.decay)
            .finish_non_exhaustive()
    }
}

impl RayProfile {
    /// The restriction u ↦ f(u·direction) of a field.
    pub fn new(field: ScalarField, direction: Point3) -> Result<Self> {
        let d = direction
            .unit()
            .ok_or_else(|| Error::DomainError("ray direction must be non-zero".into()))?;
        let hits = match field.singular_set {
            SingularSet::None | SingularSet::Origin => false,
            SingularSet::PositiveZAxis | SingularSet::NegativeZAxis | SingularSet::FullZAxis => d.near_z_axis(),
        };
        if hits {
            return Err(Error::AxisSingularity { x: d.x, y: d.y, z: d.z });
        }
        let decay = field.decay;
        Ok(Self { direction: d, decay, eval: Arc::new(move |u| field.eval(d.scale(u))) })
    }

    /// A profile given directly as a function of the signed coordinate.
    pub fn from_fn<F>(decay: DecayClass, f: F) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        Self { direction: Point3::new(0.0, 0.0, 1.0), decay, eval: Arc::new(f) }
    }

    pub fn at(&self, u: f64) -> C64 {
        (self.eval)(u)
    }

    pub fn decay(&self) -> DecayClass {
        self.decay
    }

    pub fn with_decay(mut self, decay: DecayClass) -> Self {
        self.decay = decay;
        self
    }

    /// The mirrored profile u ↦ p(−u).
    pub fn reversed(&self) -> RayProfile {
        let p = self.clone();
        Self { direction: -self.direction, decay: self.decay, eval: Arc::new(move |u| p.at(-u)) }
    }
}
