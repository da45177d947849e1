//! Registered identity checks, tolerance profiles and the JSON report.

use crate::diffops::{
    apply_generator, check_commutator, commutator_pairs, continuity_residual, eigen_residual, helicity_continuity_residual, null_residual,
    FdScheme, GeneratorId, Helicity,
};
use crate::eigenmodes::{
    eval_u, eval_w, eval_w_derivative_form, eval_w_half, eval_w_reduced, inner_product, inner_product_with,
    packet_overlap, packet_overlap_analytic, phase_factor, phase_slope_on_axis, u_field, InnerProductSpec, WaveMode,
};
use crate::error::{Error, Result};
use crate::field::{inversion, parity, DecayClass, Point3, RayProfile, ScalarField, SingularSet};
use crate::fourposition::{
    apply_r0_with, boundary_residual, boost_component, check_boost_position, check_kbar_forms, check_kbar_r0,
    check_mixing, check_r0_commutes, check_r0_forms, check_r0_squared, check_sandwich, PositionSpec, Side,
};
use crate::grid::{sample_grid, wavefront_deviation, Plane, Quantity};
use crate::packets::{
    chirped, gauss_poly, gaussian, odd_mixed, odd_packet, off_axis_points, rng_for, unit_vectors, zero_moment_radial,
    OddKind,
};
use crate::raytransforms::{
    apply_g_at, apply_u_with, apply_v_at, apply_v_with, apply_vinv_with, apply_z_at, fourier_at, fourier_ray,
    hilbert_at, inversion_profile, Direction, HilbertParity, QuadratureSpec, Sign, TransformKind,
};
use crate::residual::{RelativeNorm, Residual};
use crate::specfun::{bessel_j, bessel_j_nu, BesselOrder};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

/// Registered suite names; `all` selects every one of them.
pub const SUITES: [&str; 12] = [
    "specfun",
    "fields",
    "eigen",
    "algebra",
    "continuity",
    "transforms",
    "unitarity",
    "fourier",
    "modes",
    "overlap",
    "position",
    "grid",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Strict,
    Default,
    Fast,
}

impl Profile {
    pub fn tolerance_factor(self) -> f64 {
        match self {
            Profile::Strict => 1.0,
            Profile::Default => 3.0,
            Profile::Fast => 10.0,
        }
    }

    /// Point count for a check whose full count is `n`.
    pub fn points(self, n: usize) -> usize {
        match self {
            Profile::Fast => n.div_ceil(4).max(1),
            _ => n,
        }
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Profile::Strict),
            "default" => Ok(Profile::Default),
            "fast" => Ok(Profile::Fast),
            _ => Err(Error::ConfigError(format!("unknown profile '{s}' (valid: strict, default, fast)"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Strict => "strict",
            Profile::Default => "default",
            Profile::Fast => "fast",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub profile: Profile,
    pub seed: u64,
    /// Where the JSON report goes; `None` keeps it in memory only.
    pub output_path: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suites: &[&str], profile: Profile, seed: u64) -> Self {
        Self { suites: suites.iter().map(|s| s.to_string()).collect(), profile, seed, output_path: None }
    }

    /// The selected suites in registry order, with `all` expanded.
    pub fn resolve(&self) -> Result<Vec<&'static str>> {
        if self.suites.is_empty() {
            return Err(Error::ConfigError(format!("no suite selected; valid names: all, {}", SUITES.join(", "))));
        }
        for s in &self.suites {
            if s != "all" && !SUITES.contains(&s.as_str()) {
                return Err(Error::ConfigError(format!(
                    "unknown suite '{s}'; valid names: all, {}",
                    SUITES.join(", ")
                )));
            }
        }
        let all = self.suites.iter().any(|s| s == "all");
        Ok(SUITES.iter().copied().filter(|n| all || self.suites.iter().any(|s| s == n)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub paper_ref: String,
    /// NaN (serialized as null) when the check raised an error.
    pub max_residual: f64,
    pub tolerance: f64,
    pub n_points: usize,
    pub wall_time_ms: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub profile: Profile,
    pub seed: u64,
    pub suites: Vec<String>,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Per-check context: profile, and a generator seeded from the run seed and the check name.
pub struct Ctx {
    pub profile: Profile,
    rng: Mutex<ChaCha8Rng>,
}

impl Ctx {
    fn new(profile: Profile, seed: u64, name: &str) -> Self {
        Self { profile, rng: Mutex::new(rng_for(seed, name)) }
    }

    pub fn n(&self, full: usize) -> usize {
        self.profile.points(full)
    }

    /// Off-axis points with |r| ∈ [r_min, r_max]; `full` is the strict count.
    pub fn points(&self, full: usize, r_min: f64, r_max: f64) -> Vec<Point3> {
        off_axis_points(&mut *self.rng.lock().unwrap(), self.n(full), r_min, r_max)
    }

    pub fn units(&self, full: usize) -> Vec<Point3> {
        unit_vectors(&mut *self.rng.lock().unwrap(), self.n(full))
    }

    pub fn uniform(&self, lo: f64, hi: f64) -> f64 {
        self.rng.lock().unwrap().gen_range(lo..hi)
    }
}

type Runner = Box<dyn Fn(&Ctx) -> Result<Residual> + Send + Sync>;

struct Check {
    suite: &'static str,
    name: String,
    paper_ref: &'static str,
    tolerance: f64,
    run: Runner,
}

struct Registry(Vec<Check>);

impl Registry {
    fn add<F>(&mut self, suite: &'static str, name: impl Into<String>, paper_ref: &'static str, tolerance: f64, run: F)
    where
        F: Fn(&Ctx) -> Result<Residual> + Send + Sync + 'static,
    {
        self.0.push(Check { suite, name: name.into(), paper_ref, tolerance, run: Box::new(run) });
    }
}

mod refs {
    pub const BESSEL: &str = r#"Eq (8), "which may be proved by direct differentiation" (J_0 eigenfunction); Eq (24b) uses J_s, J_{s−1}"#;
    pub const BESSEL_ORDER: &str = r#"order 2s in Eq (15), orders s and s−1 in Eq (24b), "The eigenfunctions of a_s^λ are""#;
    pub const PARITY: &str = r#"Eq (17)/(A3), "parity P, inversion N, and Fourier transform""#;
    pub const INVERSION: &str = r#"Eq (18)/(A4), "parity P, inversion N, and Fourier transform""#;
    pub const SAMPLE_RAY: &str = r#"Eq (21d), "essentially a Fourier transform of""#;
    pub const SCHWARTZ: &str = r#"Eqs (8), (15), (16); "The eigenfunctions of a_s^λ are""#;
    pub const EIGEN0: &str = r#"Eq (8), "which may be proved by direct differentiation""#;
    pub const EIGEN_S: &str = r#"Eq (15), "The eigenfunctions of a_s^λ are""#;
    pub const NULL: &str = r#"Eq (4) and Eq (12), "satisfy the the Poincaré group algebra""#;
    pub const ALGEBRA: &str = r#"Eq (6), "obey the necessary Poincaré group commutation properties""#;
    pub const CONTINUITY: &str = r#"statement after Eq (7), "is conserved provided that""#;
    pub const V_S0: &str = r#"Eq (22), "waves which have velocity c""#;
    pub const V_HALF: &str = r#"Eq (25), "a unidirectional wave proceeding""#;
    pub const W_24B: &str = r#"Eq (24b), "where λ = (r+z)/2, μ = (r−z)/2""#;
    pub const V_OP: &str = r#"Eqs (21a)–(21e)/(A14), "The operators V , V⁻¹ are"; regularized form (21e), "integrate by parts while discarding""#;
    pub const VINV: &str = r#"Eq (20b), "The V⁻¹ operator can be simplified to""#;
    pub const U_OP: &str = r#"Eq (26), "define the operators U""#;
    pub const EQ29: &str = r#"Eq (29), anchored by Eq (27) "only act on the r""#;
    pub const EQ30: &str = r#"Eq (30), "The relation (30) means that""#;
    pub const UNITARY: &str = r#"Eq (7) + (A13), "which is Lorentz-invariant"; "V V⁻¹ = 1""#;
    pub const INNER: &str = r#"Eq (7), "which is Lorentz-invariant""#;
    pub const ADJOINT: &str = r#"Eq (A7), "with the adjoint properties""#;
    pub const FOURIER: &str = r#"Eq (19)/(A5); generalized form Eq (A9), "generalized cosine (sine) transform""#;
    pub const ROUNDTRIP: &str = r#"Eq (A8), "can be shown by a change of variables""#;
    pub const HILBERT: &str = r#"Eq (33)/(A11), "Hilbert transforms of even, odd functions""#;
    pub const A10: &str = r#"Eq (A10), "do not commute but combine as follows""#;
    pub const A12: &str = r#"Eq (A12)/(32), "We need the further identities""#;
    pub const EQ34: &str = r#"Eq (34), "and also we note that""#;
    pub const PHASE: &str = r#"Eq (A1), "we give Derrick's formula""#;
    pub const AXIS_PHASE: &str = r#"Eq (A2), "in the particular case when""#;
    pub const EVAL_U: &str = r#"Eqs (8), (15), (16); "The eigenfunctions of a_s^λ are""#;
    pub const W_ORIGIN: &str = r#"§3, "zero at the origin except""#;
    pub const GROWTH: &str = r#"§3 after Eq (24b), "of order √r""#;
    pub const OVERLAP: &str = r#"Eq (9), "The orthogonality and completeness relations are""#;
    pub const BOUNDARY: &str = r#"Eq (45), "automatically satisfied if ψ(r) is odd""#;
    pub const BOUNDARY_CTX: &str = r#"Eq (45) context, "a boundary condition on the wavefunction""#;
    pub const R0_FORMS: &str = r#"Eq (46) boxed, "two equivalent forms for r⁰""#;
    pub const NULL_VECTOR: &str = r#"Eq (49), "r^λ is a null 4-vector""#;
    pub const COMMUTE: &str = r#"final §5 identity, "components of r^λ commute""#;
    pub const EQ44: &str = r#"Eq (44), "for the last line we put"; Eq (39), "must satisfy both of the following""#;
    pub const EQ47: &str = r#"Eq (47), "which is the required result""#;
    pub const KBAR: &str = r#"Eq (38), "the transformed boost operator"; factorization via Eq (35)/(36), "We can simplify the""#;
    pub const MIXING: &str = r#"Eq (35)/(36), "We can simplify the""#;
    pub const SANDWICH: &str = r#"Eq (48), "we have used the identity""#;
    pub const EQ41: &str = r#"Eq (41), "yields the operator identity""#;
    pub const EQ43: &str = r#"Eq (43), "with similar methods to the above""#;
    pub const Z_OP: &str = r#"Eq (42), anchored by Eq (45) context "a boundary condition on the wavefunction""#;
    pub const GRID: &str = r#"§3 after Eq (24b), "the planar nature of the wave fronts""#;
}

const KS: [Point3; 2] = [Point3::new(0.0, 0.0, 1.0), Point3::new(0.6, 0.0, 0.8)];
const HELICITIES: [Helicity; 3] = [Helicity::ZERO, Helicity::HALF, Helicity::ONE];

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Relative residual of lhs = rhs over points; the closure returns one or more (lhs, rhs) pairs per point.
fn relative<F>(pts: &[Point3], mut f: F) -> Result<Residual>
where
    F: FnMut(Point3) -> Result<Vec<(C64, C64)>>,
{
    let mut norm = RelativeNorm::new();
    for &p in pts {
        for (l, r) in f(p)? {
            norm.push(l, r, &[l]);
        }
        norm.next_point();
    }
    Ok(norm.relative())
}

fn absolute(value: C64, expected: C64) -> Residual {
    let d = (value - expected).norm();
    Residual::new(if d.is_finite() { d } else { f64::NAN }, 1)
}

fn finite(v: C64, what: &str) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::QuadratureFailure { what: what.into(), estimate: f64::INFINITY })
    }
}

fn order(two_nu: i64) -> BesselOrder {
    BesselOrder::from_two_nu(two_nu).expect("supported order")
}

fn register_specfun(r: &mut Registry) {
    r.add("specfun", "J_0 at its first zero", refs::BESSEL, 1e-12, |_| {
        Ok(absolute(c(bessel_j(order(0), 2.404825557695773)?), c(0.0)))
    });
    r.add("specfun", "J_1(0.1) against the series value", refs::BESSEL, 1e-12, |_| {
        let v = bessel_j(order(2), 0.1)?;
        let want = 0.049_937_526_036_242_000_3;
        Ok(Residual::new((v - want).abs() / want, 1))
    });
    r.add("specfun", "J_1/2 closed form", refs::BESSEL, 1e-12, |ctx| {
        let n = ctx.n(200);
        let mut worst = 0.0f64;
        for i in 0..n {
            let x = 1e-3 * (5e4f64).powf(i as f64 / (n.max(2) - 1) as f64);
            let want = (2.0 / (PI * x)).sqrt() * x.sin();
            let got = bessel_j(order(1), x)?;
            worst = worst.max((got - want).abs() / want.abs().max(1e-3 * (2.0 / (PI * x)).sqrt()));
        }
        Ok(Residual::new(worst, n))
    });
    r.add("specfun", "three-term recurrence", refs::BESSEL, 1e-10, |ctx| {
        let nus = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 0.5, 1.5];
        let n = ctx.n(200);
        let mut worst = 0.0f64;
        for i in 0..n {
            let nu = nus[i % nus.len()];
            let x = ctx.uniform(0.1, 100.0);
            let jm = bessel_j_nu(nu - 1.0, x)?;
            let jp = bessel_j_nu(nu + 1.0, x)?;
            let j = bessel_j_nu(nu, x)?;
            worst = worst.max((jm + jp - 2.0 * nu / x * j).abs() / j.abs().max(1.0));
        }
        Ok(Residual::new(worst, n))
    });
    r.add("specfun", "parity in integer order", refs::BESSEL_ORDER, 0.0, |ctx| {
        let n = ctx.n(100);
        let mut worst = 0.0f64;
        for i in 0..n {
            let m = (i % 6) as i64;
            let x = ctx.uniform(0.0, 60.0);
            let a = bessel_j(order(-2 * m), x)?;
            let b = if m % 2 == 0 { 1.0 } else { -1.0 } * bessel_j(order(2 * m), x)?;
            worst = worst.max((a - b).abs());
        }
        Ok(Residual::new(worst, n))
    });
}

fn register_fields(r: &mut Registry) {
    r.add("fields", "parity is an involution", refs::PARITY, 1e-14, |ctx| {
        let f = chirped(Point3::new(0.3, -0.4, 0.2), 1.1, 0.3);
        let pp = parity(&parity(&f));
        let pts = ctx.points(100, 0.1, 5.0);
        relative(&pts, |p| Ok(vec![(pp.eval(p), f.eval(p))]))
    });
    r.add("fields", "inversion is an involution", refs::INVERSION, 1e-14, |ctx| {
        let f = chirped(Point3::new(0.3, -0.4, 0.2), 1.1, 0.3);
        let nn = inversion(&inversion(&f));
        let pts = ctx.points(100, 0.1, 5.0);
        relative(&pts, |p| Ok(vec![(nn.eval(p), f.eval(p))]))
    });
    r.add("fields", "inversion of e^-r at r = 2", refs::INVERSION, 1e-14, |_| {
        let f = ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 40.0 }, |p| c((-p.norm()).exp()));
        let v = inversion(&f).eval(Point3::new(0.0, 2.0, 0.0));
        Ok(relative_one(v, c(0.25 * (-0.5f64).exp())))
    });
    r.add("fields", "ray profile of u_0 along z", refs::SAMPLE_RAY, 1e-14, |ctx| {
        let mode = WaveMode::along_z(Helicity::ZERO, 1.0)?;
        let prof = u_field(mode).sample_ray(Point3::new(0.0, 0.0, 1.0))?;
        let n = ctx.n(40);
        let mut norm = RelativeNorm::new();
        for i in 0..n {
            let u = -5.0 + 10.0 * i as f64 / (n.max(2) - 1) as f64;
            let want = bessel_j(order(0), (2.0 * u.abs() + 2.0 * u).sqrt())? / (4.0 * PI);
            norm.push(prof.at(u), c(want), &[]);
            norm.next_point();
        }
        Ok(norm.relative())
    });
    r.add("fields", "kr + k.r is non-negative", refs::SCHWARTZ, 1e-15, |ctx| {
        let ks = ctx.units(200);
        let pts = ctx.points(200, 0.0, 10.0);
        let mut worst = 0.0f64;
        for (k, p) in ks.iter().zip(&pts) {
            let kv = k.scale(3.0);
            let arg = 2.0 * kv.norm() * p.norm() + 2.0 * kv.dot(*p);
            worst = worst.max(-arg / (2.0 * kv.norm() * p.norm()).max(f64::MIN_POSITIVE));
        }
        Ok(Residual::new(worst, pts.len()))
    });
}

fn relative_one(v: C64, want: C64) -> Residual {
    let mut n = RelativeNorm::new();
    n.push(v, want, &[]);
    n.next_point();
    n.relative()
}

fn k_label(k: Point3) -> String {
    format!("({},{},{})", k.x, k.y, k.z)
}

fn register_eigen(r: &mut Registry) {
    for s in HELICITIES {
        for k in KS {
            let rf = if s.is_zero() { refs::EIGEN0 } else { refs::EIGEN_S };
            r.add("eigen", format!("eigenvalue equations s={s} k={}", k_label(k)), rf, 1e-6, move |ctx| {
                let f = u_field(WaveMode::new(s, k)?);
                eigen_residual(s, &f, k, &ctx.points(30, 0.3, 10.0))
            });
        }
        r.add("eigen", format!("null generator s={s}"), refs::NULL, 1e-5, move |ctx| {
            let a = u_field(WaveMode::new(s, KS[0])?);
            let b = u_field(WaveMode::new(s, Point3::new(0.3, -0.2, 0.5))?);
            let f = a.add(&b.scaled(C64::new(0.6, 0.2)));
            null_residual(s, &f, &ctx.points(6, 0.5, 4.0))
        });
    }
}

fn register_algebra(r: &mut Registry) {
    for (a, b) in commutator_pairs() {
        r.add("algebra", format!("[{},{}]", a.name(), b.name()), refs::ALGEBRA, 1e-6, move |ctx| {
            let f = gauss_poly(Point3::new(0.3, -0.2, 0.4), 1.2);
            let pts = ctx.points(4, 0.3, 3.0);
            let mut total: Option<Residual> = None;
            for s in HELICITIES {
                let res = check_commutator(a, b, s, &f, &pts)?;
                total = Some(match total {
                    None => res,
                    Some(t) => t.merge(res),
                });
            }
            Ok(total.expect("three helicities"))
        });
    }
}

fn register_continuity(r: &mut Registry) {
    for s in [Helicity::ZERO, Helicity::HALF] {
        for k in KS {
            r.add("continuity", format!("current conservation s={s} k={}", k_label(k)), refs::CONTINUITY, 1e-5, move |ctx| {
                helicity_continuity_residual(s, &u_field(WaveMode::new(s, k)?), &ctx.points(20, 0.3, 10.0))
            });
        }
    }
    r.add("continuity", "plain current conservation s=1/2 k=(0,0,1)", refs::CONTINUITY, 1e-5, |ctx| {
        continuity_residual(&u_field(WaveMode::along_z(Helicity::HALF, 1.0)?), &ctx.points(20, 0.3, 10.0))
    });
    r.add("continuity", "real field carries no current", refs::CONTINUITY, 1e-12, |ctx| {
        continuity_residual(&gaussian(Point3::new(0.2, 0.1, -0.3), 1.0), &ctx.points(20, 0.3, 4.0))
    });
}

fn transform_packet() -> ScalarField {
    chirped(Point3::new(0.5, 0.3, 0.8), 1.0, 0.1)
}

fn register_transforms(r: &mut Registry) {
    let quad = QuadratureSpec::default();
    for s in HELICITIES {
        let rf = match s.two_s() {
            0 => refs::V_S0,
            1 => refs::V_HALF,
            _ => refs::W_24B,
        };
        r.add("transforms", format!("V u_s = w_s for s={s}"), rf, 1e-4, move |ctx| {
            let u = u_field(WaveMode::along_z(s, 1.0)?);
            relative(&ctx.points(20, 0.3, 10.0), |p| Ok(vec![(apply_v_at(&u, p, &quad)?.value, eval_w(s, 1.0, p)?)]))
        });
        r.add("transforms", format!("derivative form of w agrees with the closed form, s={s}"), refs::W_24B, 1e-6, move |ctx| {
            relative(&ctx.points(20, 0.3, 10.0), |p| Ok(vec![(eval_w_derivative_form(s, 1.0, p)?, eval_w(s, 1.0, p)?)]))
        });
    }
    r.add("transforms", "w_1/2 general and specialised paths", refs::V_HALF, 1e-12, |ctx| {
        relative(&ctx.points(50, 0.1, 20.0), |p| Ok(vec![(eval_w(Helicity::HALF, 1.3, p)?, eval_w_half(1.3, p)?)]))
    });
    r.add("transforms", "U^-1 U = 1 on a Gaussian packet", refs::U_OP, 1e-5, move |ctx| {
        let f = transform_packet();
        let back = apply_u_with(Direction::Inverse, &apply_u_with(Direction::Forward, &f, quad), quad);
        relative(&ctx.points(4, 0.3, 3.0), |p| Ok(vec![(finite(back.eval(p), "U^-1 U")?, f.eval(p))]))
    });
    r.add("transforms", "V^-1 is linear", refs::VINV, 1e-10, move |ctx| {
        let g1 = transform_packet();
        let g2 = gaussian(Point3::new(-0.4, 0.2, 0.1), 0.8);
        let alpha = C64::new(0.7, -1.3);
        let lhs = apply_vinv_with(&g1.scaled(alpha).add(&g2), quad);
        let (a, b) = (apply_vinv_with(&g1, quad), apply_vinv_with(&g2, quad));
        relative(&ctx.points(4, 0.3, 3.0), |p| Ok(vec![(finite(lhs.eval(p), "V^-1")?, alpha * a.eval(p) + b.eval(p))]))
    });
    r.add("transforms", "V commutes with parity", refs::V_OP, 1e-12, move |ctx| {
        let f = transform_packet();
        let vp = apply_v_with(&parity(&f), quad);
        let v = apply_v_with(&f, quad);
        relative(&ctx.points(4, 0.3, 3.0), |p| Ok(vec![(finite(vp.eval(p), "V P")?, v.eval(-p))]))
    });
    r.add("transforms", "V K3 f = K3 U f", refs::EQ29, 1e-4, move |ctx| {
        let f = transform_packet();
        let scheme = FdScheme::default();
        let lhs = apply_v_with(&boost_component(&f, 2, scheme), quad);
        let rhs = boost_component(&apply_u_with(Direction::Forward, &f, quad), 2, scheme);
        relative(&ctx.points(3, 0.5, 3.0), |p| Ok(vec![(finite(lhs.eval(p), "V K")?, finite(rhs.eval(p), "K U")?)]))
    });
    r.add("transforms", "J V f = V J f", refs::EQ30, 1e-5, move |ctx| {
        let f = transform_packet();
        let vf = apply_v_with(&f, quad);
        let jv: Vec<ScalarField> = [GeneratorId::J1, GeneratorId::J2, GeneratorId::J3]
            .iter()
            .map(|&j| apply_generator(j, Helicity::ZERO, &vf))
            .collect();
        let vj: Vec<ScalarField> = [GeneratorId::J1, GeneratorId::J2, GeneratorId::J3]
            .iter()
            .map(|&j| apply_v_with(&apply_generator(j, Helicity::ZERO, &f), quad))
            .collect();
        relative(&ctx.points(3, 0.5, 3.0), |p| {
            (0..3).map(|a| Ok((finite(jv[a].eval(p), "J V")?, finite(vj[a].eval(p), "V J")?))).collect()
        })
    });
}

fn coarse_grid() -> InnerProductSpec {
    InnerProductSpec { n_cos: 6, n_phi: 8, ..InnerProductSpec::default() }
}

/// (r^{-1/2} F_c r^{1/2} f)(r) along the ray through r.
fn cosine_sandwich(f: &ScalarField) -> ScalarField {
    let g = f.clone();
    let quad = QuadratureSpec::default();
    let decay = DecayClass::PowerLaw { exponent: 2.0, scale: f.decay.length_scale().max(1.0) };
    ScalarField::new(SingularSet::Origin, decay, move |p| {
        let rho = p.norm();
        let Some(d) = p.unit() else { return C64::new(f64::NAN, f64::NAN) };
        let inner = g.clone();
        let prof = RayProfile::from_fn(inner.decay, move |t| inner.eval(d.scale(t)) * t.abs().sqrt());
        match fourier_at(TransformKind::Cosine, &prof, rho, false, &quad) {
            Ok(e) => e.value / rho.sqrt(),
            Err(_) => C64::new(f64::NAN, f64::NAN),
        }
    })
}

fn register_unitarity(r: &mut Registry) {
    let quad = QuadratureSpec::default();
    r.add("unitarity", "<V phi|V psi> = <phi|psi>", refs::UNITARY, 1e-6, move |_| {
        let phi = transform_packet();
        let psi = gaussian(Point3::new(-0.3, 0.4, 0.2), 0.9);
        let grid = coarse_grid();
        let lhs = inner_product_with(&apply_v_with(&phi, quad), &apply_v_with(&psi, quad), &grid)?.value;
        let rhs = inner_product_with(&phi, &psi, &grid)?.value;
        Ok(relative_one(lhs, rhs))
    });
    r.add("unitarity", "V^-1 V = 1 on a Gaussian packet", refs::UNITARY, 1e-5, move |ctx| {
        let f = transform_packet();
        let back = apply_vinv_with(&apply_v_with(&f, quad), quad);
        relative(&ctx.points(4, 0.3, 3.0), |p| Ok(vec![(finite(back.eval(p), "V^-1 V")?, f.eval(p))]))
    });
    r.add("unitarity", "<g|g> = 2 pi for g = e^-r^2/2", refs::INNER, 1e-10, |_| {
        let g = gaussian(Point3::ORIGIN, 1.0);
        Ok(relative_one(inner_product(&g, &g)?.value, c(2.0 * PI)))
    });
    r.add("unitarity", "even and odd fields are orthogonal", refs::INNER, 1e-10, |_| {
        let e = gaussian(Point3::ORIGIN, 1.0);
        let o = odd_packet(OddKind::Z, 1.0);
        Ok(absolute(inner_product(&e, &o)?.value, c(0.0)))
    });
    r.add("unitarity", "r^-1/2 F_c r^1/2 is self-adjoint", refs::ADJOINT, 1e-6, |_| {
        let phi = transform_packet();
        let psi = gaussian(Point3::new(-0.3, 0.4, 0.2), 0.9);
        let grid = coarse_grid();
        let lhs = inner_product_with(&cosine_sandwich(&phi), &psi, &grid)?.value;
        let rhs = inner_product_with(&phi, &cosine_sandwich(&psi), &grid)?.value;
        Ok(relative_one(lhs, rhs))
    });
}

fn gauss_profile() -> RayProfile {
    RayProfile::from_fn(DecayClass::Gaussian { radius: 9.0 }, |t| c((-0.5 * t * t).exp()))
}

fn shifted_profile() -> RayProfile {
    RayProfile::from_fn(DecayClass::Gaussian { radius: 10.0 }, |t| C64::new(1.0 + 0.5 * t * t, 0.3 * t) * (-0.5 * (t - 0.4) * (t - 0.4)).exp())
}

fn radii(ctx: &Ctx, full: usize) -> Vec<f64> {
    (0..ctx.n(full)).map(|_| ctx.uniform(0.2, 4.0)).collect()
}

fn profile_residual<F>(rs: &[f64], mut f: F) -> Result<Residual>
where
    F: FnMut(f64) -> Result<(C64, C64)>,
{
    let mut norm = RelativeNorm::new();
    for &r in rs {
        let (a, b) = f(r)?;
        norm.push(a, b, &[a]);
        norm.next_point();
    }
    Ok(norm.relative())
}

fn register_fourier(r: &mut Registry) {
    let q = QuadratureSpec::default();
    r.add("fourier", "F_c of e^-t^2/2", refs::FOURIER, 1e-10, move |ctx| {
        let p = gauss_profile();
        profile_residual(&radii(ctx, 8), |x| Ok((fourier_at(TransformKind::Cosine, &p, x, false, &q)?.value, c((-0.5 * x * x).exp()))))
    });
    r.add("fourier", "F_s of t e^-t^2/2", refs::FOURIER, 1e-10, move |ctx| {
        let p = RayProfile::from_fn(DecayClass::Gaussian { radius: 10.0 }, |t| c(t * (-0.5 * t * t).exp()));
        profile_residual(&radii(ctx, 8), |x| Ok((fourier_at(TransformKind::Sine, &p, x, false, &q)?.value, c(x * (-0.5 * x * x).exp()))))
    });
    r.add("fourier", "generalized F_s of 1", refs::FOURIER, 1e-10, move |ctx| {
        let p = RayProfile::from_fn(DecayClass::PowerLaw { exponent: 0.0, scale: 1.0 }, |_| c(1.0));
        profile_residual(&radii(ctx, 8), |x| Ok((fourier_at(TransformKind::Sine, &p, x, true, &q)?.value, c((2.0 / PI).sqrt() / x))))
    });
    for (kind, label) in [(TransformKind::Cosine, "F_c F_c = 1"), (TransformKind::Sine, "F_s F_s = 1")] {
        r.add("fourier", label, refs::ROUNDTRIP, 1e-8, move |ctx| {
            let p = shifted_profile();
            let once = fourier_ray(kind, &p, false, q);
            profile_residual(&radii(ctx, 4), |x| Ok((fourier_at(kind, &once, x, false, &q)?.value, p.at(x))))
        });
    }
    r.add("fourier", "H_e of 1/(1+t^2)", refs::HILBERT, 1e-8, move |ctx| {
        let p = RayProfile::from_fn(DecayClass::PowerLaw { exponent: 2.0, scale: 1.0 }, |t| c(1.0 / (1.0 + t * t)));
        profile_residual(&radii(ctx, 8), |x| Ok((hilbert_at(HilbertParity::Even, &p, x, &q)?.value, c(-x / (1.0 + x * x)))))
    });
    r.add("fourier", "H_o of t/(1+t^2)", refs::HILBERT, 1e-8, move |ctx| {
        let p = RayProfile::from_fn(DecayClass::PowerLaw { exponent: 1.0, scale: 1.0 }, |t| c(t / (1.0 + t * t)));
        profile_residual(&radii(ctx, 8), |x| Ok((hilbert_at(HilbertParity::Odd, &p, x, &q)?.value, c(1.0 / (1.0 + x * x)))))
    });
    let pairs = [
        (TransformKind::Sine, TransformKind::Cosine, "F_s F_c = -H_e"),
        (TransformKind::Cosine, TransformKind::Sine, "F_c F_s = H_o"),
    ];
    for (outer, inner, label) in pairs {
        r.add("fourier", label, refs::A10, 1e-6, move |ctx| {
            let p = shifted_profile();
            let once = fourier_ray(inner, &p, false, q);
            profile_residual(&radii(ctx, 4), |x| {
                let lhs = fourier_at(outer, &once, x, false, &q)?.value;
                let rhs = match outer {
                    TransformKind::Sine => -hilbert_at(HilbertParity::Even, &p, x, &q)?.value,
                    _ => hilbert_at(HilbertParity::Odd, &p, x, &q)?.value,
                };
                Ok((lhs, rhs))
            })
        });
    }
    let i = C64::new(0.0, 1.0);
    let combos = [
        (TransformKind::Plus, TransformKind::Plus, "F+ F+ = -i(H_e - H_o)", c(0.0), -i, i),
        (TransformKind::Minus, TransformKind::Plus, "F- F+ = 2 + i(H_e + H_o)", c(2.0), i, i),
        (TransformKind::Plus, TransformKind::Minus, "F+ F- = 2 - i(H_e + H_o)", c(2.0), -i, -i),
        (TransformKind::Minus, TransformKind::Minus, "F- F- = i(H_e - H_o)", c(0.0), i, -i),
    ];
    for (outer, inner, label, identity, ce, co) in combos {
        r.add("fourier", label, refs::A12, 1e-6, move |ctx| {
            let p = shifted_profile();
            let once = fourier_ray(inner, &p, false, q);
            profile_residual(&radii(ctx, 4), |x| {
                let lhs = fourier_at(outer, &once, x, false, &q)?.value;
                let he = hilbert_at(HilbertParity::Even, &p, x, &q)?.value;
                let ho = hilbert_at(HilbertParity::Odd, &p, x, &q)?.value;
                Ok((lhs, identity * p.at(x) + ce * he + co * ho))
            })
        });
    }
    r.add("fourier", "N r^-1/2 H_e r^1/2 N = -r^-1/2 H_o r^1/2", refs::EQ34, 1e-6, move |ctx| {
        let p = gauss_profile();
        let weighted = |p: &RayProfile| {
            let inner = p.clone();
            let decay = match p.decay() {
                DecayClass::PowerLaw { exponent, scale } => DecayClass::PowerLaw { exponent: exponent - 0.5, scale },
                d => d,
            };
            RayProfile::from_fn(decay, move |t| inner.at(t) * t.abs().sqrt())
        };
        let np = inversion_profile(&p, DecayClass::PowerLaw { exponent: 2.0, scale: 1.0 });
        let wnp = weighted(&np);
        let wp = weighted(&p);
        profile_residual(&radii(ctx, 4), |x| {
            let y = 1.0 / x;
            let lhs = hilbert_at(HilbertParity::Even, &wnp, y, &q)?.value / y.sqrt() / (x * x);
            let rhs = -hilbert_at(HilbertParity::Odd, &wp, x, &q)?.value / x.sqrt();
            Ok((lhs, rhs))
        })
    });
}

fn register_modes(r: &mut Registry) {
    r.add("modes", "phase factor reduces to e^{i phi} for k along z", refs::AXIS_PHASE, 1e-12, |ctx| {
        let z = Point3::new(0.0, 0.0, 1.0);
        relative(&ctx.points(200, 1.0, 1.0), |p| {
            Ok(vec![(phase_factor(p, z)?, p.azimuth_phase().expect("off axis"))])
        })
    });
    r.add("modes", "phase factor at r = k", refs::PHASE, 1e-12, |ctx| {
        let ks = ctx.units(50);
        let mut norm = RelativeNorm::new();
        for k in ks.into_iter().filter(|k| k.rho() > 1e-3) {
            norm.push(phase_factor(k, k)?, k.azimuth_phase().expect("off axis"), &[]);
            norm.next_point();
        }
        Ok(norm.relative())
    });
    r.add("modes", "phase factor has unit modulus", refs::PHASE, 1e-12, |ctx| {
        let a = ctx.units(1000);
        let b = ctx.units(1000);
        let mut worst = 0.0f64;
        for (x, y) in a.iter().zip(&b) {
            if x.dot(*y) > -1.0 + 1e-6 {
                worst = worst.max((phase_factor(*x, *y)?.norm() - 1.0).abs());
            }
        }
        Ok(Residual::new(worst, a.len()))
    });
    r.add("modes", "u_0 at the origin is 1/4pi", refs::EVAL_U, 1e-15, |_| {
        let m = WaveMode::along_z(Helicity::ZERO, 1.0)?;
        Ok(absolute(eval_u(&m, Point3::ORIGIN)?, c(1.0 / (4.0 * PI))))
    });
    r.add("modes", "u_0 vanishes at the first J_0 zero", refs::EVAL_U, 1e-13, |_| {
        let m = WaveMode::along_z(Helicity::ZERO, 1.0)?;
        let j = 2.404825557695773f64;
        // 2r + 2z = j² on the ray through (1, 0, 1)
        let t = j * j / (2.0 * (2.0f64.sqrt() + 1.0));
        Ok(absolute(eval_u(&m, Point3::new(t, 0.0, t))?, c(0.0)))
    });
    r.add("modes", "u_1/2 vanishes on the negative z axis", refs::EVAL_U, 0.0, |_| {
        let m = WaveMode::along_z(Helicity::HALF, 1.0)?;
        Ok(absolute(eval_u(&m, Point3::new(0.0, 0.0, -2.0))?, c(0.0)))
    });
    r.add("modes", "w_1 vanishes at the origin", refs::W_ORIGIN, 0.0, |_| {
        Ok(absolute(eval_w(Helicity::ONE, 1.0, Point3::ORIGIN)?, c(0.0)))
    });
    r.add("modes", "w_0 at the origin", refs::W_24B, 1e-15, |_| {
        Ok(absolute(eval_w(Helicity::ZERO, 1.0, Point3::ORIGIN)?, C64::new(0.0, -1.0 / (8.0 * PI))))
    });
    r.add("modes", "|w_1/2| on the +z axis", refs::V_HALF, 1e-14, |_| {
        let v = eval_w_reduced(Helicity::HALF, 1.0, Point3::new(0.0, 0.0, 2.0))?.norm();
        Ok(relative_one(c(v), c(2.0 / (8.0 * PI.powf(1.5)))))
    });
    for k in [0.5, 1.0, 2.0] {
        r.add("modes", format!("phase slope of w_1/2 along +z, k={k}"), refs::V_HALF, 1e-6, move |_| {
            let slope = phase_slope_on_axis(k, 0.5, 40.0, 2000)?;
            Ok(Residual::new((slope - k).abs(), 2000))
        });
    }
    r.add("modes", "|w|/sqrt(r) stays bounded for r in [1e3, 1e5]", refs::GROWTH, 1.0, |ctx| {
        let dirs = ctx.units(8);
        let mut worst = 0.0f64;
        let mut count = 0;
        for s in HELICITIES {
            for d in dirs.iter().filter(|d| d.rho() > 1e-3) {
                for j in 0..=20 {
                    let r = 1e3 * 100f64.powf(j as f64 / 20.0);
                    worst = worst.max(eval_w(s, 1.0, d.scale(r))?.norm() / r.sqrt());
                    count += 1;
                }
            }
        }
        Ok(Residual::new(worst, count))
    });
}

fn register_overlap(r: &mut Registry) {
    let c1 = Point3::new(0.0, 0.0, 1.0);
    let c2 = Point3::new(0.0, 0.0, 5.0);
    r.add("overlap", "coincident packets match the k-space overlap", refs::OVERLAP, 1e-3, move |_| {
        let v = packet_overlap(Helicity::ZERO, c1, c1, 0.2)?;
        Ok(relative_one(v, c(packet_overlap_analytic(c1, c1, 0.2))))
    });
    r.add("overlap", "separated packets are orthogonal", refs::OVERLAP, 1e-6, move |_| {
        Ok(absolute(packet_overlap(Helicity::ZERO, c1, c2, 0.2)?, c(0.0)))
    });
    r.add("overlap", "swapping packets conjugates the overlap", refs::OVERLAP, 1e-10, move |_| {
        let a = Point3::new(0.0, 0.0, 1.0);
        let b = Point3::new(0.0, 0.0, 1.3);
        let x = packet_overlap(Helicity::ZERO, a, b, 0.2)?;
        let y = packet_overlap(Helicity::ZERO, b, a, 0.2)?;
        Ok(relative_one(x, y.conj()))
    });
}

fn odd_family() -> Vec<(String, ScalarField)> {
    let mut out = Vec::new();
    for kind in OddKind::ALL {
        for sigma in [0.7, 1.0, 1.5] {
            out.push((format!("{} sigma={sigma}", kind.name()), odd_packet(kind, sigma)));
        }
    }
    out.push(("mixed".into(), odd_mixed()));
    out
}

fn register_position(r: &mut Registry) {
    let spec = PositionSpec::default();
    let q = spec.quad;
    r.add("position", "boundary condition on the odd family", refs::BOUNDARY, 1e-8, move |ctx| {
        let mut total = Residual::new(0.0, 0);
        for (_, f) in odd_family() {
            total = total.merge(boundary_residual(&f, ctx.n(6).max(2), &spec)?);
        }
        Ok(total)
    });
    r.add("position", "boundary condition on an even zero-moment field", refs::BOUNDARY, 1e-8, move |_| {
        boundary_residual(&zero_moment_radial(), 4, &spec)
    });
    r.add("position", "boundary value of the violating field e^-r^2/2", refs::BOUNDARY_CTX, 1e-10, move |_| {
        let g = gaussian(Point3::ORIGIN, 1.0);
        let v = boundary_residual(&g, 2, &spec)?;
        let want = 0.656_003_897_333_752_9;
        Ok(Residual::new((v.max_residual - want).abs(), v.n_points))
    });
    r.add("position", "r0 forms differ in proportion to the violation", refs::BOUNDARY_CTX, 1e-3, move |_| {
        let odd = odd_packet(OddKind::Z, 1.0);
        let even = gaussian(Point3::ORIGIN, 1.0);
        let p = Point3::new(0.6, -0.4, 0.5);
        let mut ratios = Vec::new();
        for eps in [1e-3, 1e-2, 1e-1] {
            let f = odd.add(&even.scaled(c(eps)));
            let l = apply_r0_with(Side::Left, &f, spec).eval(p);
            let rr = apply_r0_with(Side::Right, &f, spec).eval(p);
            ratios.push((l - rr).norm() / eps);
        }
        let worst = ratios.iter().map(|x| (x / ratios[2] - 1.0).abs()).fold(0.0, f64::max);
        if !(ratios[2] > 0.0) {
            return Err(Error::DomainError("violating field shows no form difference".into()));
        }
        Ok(Residual::new(worst, 3))
    });
    let fields = [("z sigma=1", odd_packet(OddKind::Z, 1.0)), ("mixed", odd_mixed())];
    for (label, field) in fields {
        let f = field.clone();
        r.add("position", format!("left and right r0 agree, {label}"), refs::R0_FORMS, 1e-5, move |ctx| {
            Ok(check_r0_forms(&f, &ctx.points(4, 0.3, 3.0), spec))
        });
        let f = field.clone();
        r.add("position", format!("(r0)^2 = r^2, {label}"), refs::NULL_VECTOR, 1e-5, move |ctx| {
            Ok(check_r0_squared(&f, &ctx.points(4, 0.3, 3.0), Side::Right, spec))
        });
        let f = field.clone();
        r.add("position", format!("[r0, x^b] = 0, {label}"), refs::COMMUTE, 1e-5, move |ctx| {
            Ok(check_r0_commutes(&f, &ctx.points(4, 0.3, 3.0), spec))
        });
        let f = field.clone();
        r.add("position", format!("[Kbar^a, x^b] = i delta r0, {label}"), refs::EQ44, 1e-4, move |ctx| {
            Ok(check_boost_position(&f, &ctx.points(2, 0.3, 3.0), spec))
        });
        let f = field.clone();
        r.add("position", format!("[Kbar, r0] = i r, {label}"), refs::EQ47, 1e-4, move |ctx| {
            Ok(check_kbar_r0(&f, &ctx.points(2, 0.3, 3.0), spec))
        });
        let f = field.clone();
        r.add("position", format!("two orderings of Kbar agree, {label}"), refs::KBAR, 1e-4, move |ctx| {
            Ok(check_kbar_forms(&f, &ctx.points(3, 0.3, 3.0), spec))
        });
        let f = field.clone();
        r.add("position", format!("(VU+)(UV+) = 1, {label}"), refs::SANDWICH, 1e-5, move |ctx| {
            Ok(check_sandwich(&f, &ctx.points(4, 0.3, 3.0), spec))
        });
    }
    r.add("position", "(r0)^2 = r^2 over the odd family", refs::NULL_VECTOR, 1e-4, move |ctx| {
        let mut total = Residual::new(0.0, 0);
        for (_, f) in odd_family() {
            total = total.merge(check_r0_squared(&f, &ctx.points(1, 0.3, 3.0), Side::Left, spec));
        }
        Ok(total)
    });
    r.add("position", "V f = (VU+) U f", refs::MIXING, 1e-6, move |ctx| {
        Ok(check_mixing(&transform_packet(), &ctx.points(3, 0.3, 3.0), spec))
    });
    r.add("position", "[G+, x^b] f = x^b Z+ f", refs::EQ41, 1e-6, move |ctx| {
        let f = transform_packet();
        relative(&ctx.points(4, 0.3, 3.0), |p| {
            let g = apply_g_at(Sign::Plus, &f, p, &q)?.value;
            let z = apply_z_at(Sign::Plus, &f, p, &q)?.value;
            (0..3)
                .map(|b| Ok((apply_g_at(Sign::Plus, &f.times_coordinate(b), p, &q)?.value - p.component(b) * g, p.component(b) * z)))
                .collect()
        })
    });
    r.add("position", "G±(r f) = r G∓ f + r Z∓ f", refs::EQ43, 1e-6, move |ctx| {
        let f = transform_packet();
        let rf = f.times_radius_pow(1.0);
        relative(&ctx.points(4, 0.3, 3.0), |p| {
            let rho = p.norm();
            [Sign::Plus, Sign::Minus]
                .iter()
                .map(|&s| {
                    let lhs = apply_g_at(s, &rf, p, &q)?.value;
                    let rhs = rho * (apply_g_at(s.flip(), &f, p, &q)?.value + apply_z_at(s.flip(), &f, p, &q)?.value);
                    Ok((lhs, rhs))
                })
                .collect()
        })
    });
    r.add("position", "Z+ e^-r = 2/pi", refs::Z_OP, 1e-10, move |ctx| {
        let f = ScalarField::new(SingularSet::None, DecayClass::Gaussian { radius: 45.0 }, |p| c((-p.norm()).exp()));
        relative(&ctx.units(4), |d| Ok(vec![(apply_z_at(Sign::Plus, &f, d, &q)?.value, c(2.0 / PI))]))
    });
    r.add("position", "Z- vanishes on even fields", refs::Z_OP, 1e-14, move |ctx| {
        let f = gaussian(Point3::ORIGIN, 1.0);
        let mut worst = 0.0f64;
        for d in ctx.units(4) {
            worst = worst.max(apply_z_at(Sign::Minus, &f, d, &q)?.value.norm());
        }
        Ok(Residual::new(worst, 4))
    });
}

fn register_grid(r: &mut Registry) {
    r.add("grid", "far-field |w| crests follow constant-z lines near +z", refs::GRID, 0.05, |_| {
        let g = sample_grid(Helicity::ZERO, 1.0, Plane::Xz, 40.0, 512, Quantity::Abs)?;
        Ok(Residual::new(wavefront_deviation(&g, 1.0, 20.0, 2.0)?, 512 * 512))
    });
    r.add("grid", "xy grid of |w_0| is rotationally symmetric", refs::GRID, 1e-10, |_| {
        let n = 64;
        let g = sample_grid(Helicity::ZERO, 1.0, Plane::Xy, 10.0, n, Quantity::Abs)?;
        let mut norm = RelativeNorm::new();
        for i in 0..n {
            for j in 0..n {
                let rho = g.coords[i].hypot(g.coords[j]);
                let want = eval_w(Helicity::ZERO, 1.0, Point3::new(rho, 0.0, 0.0))?.norm();
                let got = g.get(i, j).ok_or_else(|| Error::DomainError("empty cell".into()))?;
                norm.push(c(got), c(want), &[]);
                // quarter turn (x, y) → (−y, x) maps the grid onto itself
                let turned = g.get(n - 1 - j, i).ok_or_else(|| Error::DomainError("empty cell".into()))?;
                norm.push(c(turned), c(got), &[]);
                norm.next_point();
            }
        }
        Ok(norm.relative())
    });
    r.add("grid", "phase of w_1/2 advances with slope k next to +z", refs::GRID, 1e-3, |_| {
        let n = 256;
        let g = sample_grid(Helicity::HALF, 1.0, Plane::Xz, 40.0, n, Quantity::Phase)?;
        let i = (0..n).find(|&i| g.coords[i] > 0.0).expect("positive column");
        let mut zs = Vec::new();
        let mut ph = Vec::new();
        let mut offset = 0.0;
        let mut prev: Option<f64> = None;
        for j in 0..n {
            let z = g.coords[j];
            if z < 10.0 {
                continue;
            }
            let Some(mut a) = g.get(i, j) else { continue };
            a += offset;
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
        let m = zs.len() as f64;
        let zm = zs.iter().sum::<f64>() / m;
        let pm = ph.iter().sum::<f64>() / m;
        let num: f64 = zs.iter().zip(&ph).map(|(z, p)| (z - zm) * (p - pm)).sum();
        let den: f64 = zs.iter().map(|z| (z - zm) * (z - zm)).sum();
        Ok(Residual::new((num / den - 1.0).abs(), zs.len()))
    });
}

fn registry() -> Vec<Check> {
    let mut r = Registry(Vec::new());
    register_specfun(&mut r);
    register_fields(&mut r);
    register_eigen(&mut r);
    register_algebra(&mut r);
    register_continuity(&mut r);
    register_transforms(&mut r);
    register_unitarity(&mut r);
    register_fourier(&mut r);
    register_modes(&mut r);
    register_overlap(&mut r);
    register_position(&mut r);
    register_grid(&mut r);
    r.0
}

/// Names of the checks registered under `suite`, in execution order.
pub fn check_names(suite: &str) -> Vec<String> {
    registry().into_iter().filter(|c| c.suite == suite).map(|c| c.name).collect()
}

fn execute(check: &Check, profile: Profile, seed: u64) -> CheckRecord {
    let ctx = Ctx::new(profile, seed, &check.name);
    let tolerance = check.tolerance * profile.tolerance_factor();
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (check.run)(&ctx)));
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let (max_residual, n_points, error) = match outcome {
        Ok(Ok(res)) => (res.max_residual, res.n_points, None),
        Ok(Err(e)) => (f64::NAN, 0, Some(e.to_string())),
        Err(_) => (f64::NAN, 0, Some("check panicked".to_string())),
    };
    let status = if max_residual <= tolerance { Status::Pass } else { Status::Fail };
    CheckRecord {
        suite: check.suite.to_string(),
        name: check.name.clone(),
        paper_ref: check.paper_ref.to_string(),
        max_residual,
        tolerance,
        n_points,
        wall_time_ms,
        status,
        error,
    }
}

/// Runs every check of the selected suites on a pool of worker threads and
/// writes the JSON report when an output path is set.
pub fn run_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    let suites = cfg.resolve()?;
    let checks: Vec<Check> = registry().into_iter().filter(|c| suites.contains(&c.suite)).collect();
    let slots: Vec<Mutex<Option<CheckRecord>>> = checks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(checks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(check) = checks.get(i) else { break };
                *slots[i].lock().unwrap() = Some(execute(check, cfg.profile, cfg.seed));
            });
        }
    });
    let records: Vec<CheckRecord> = slots.into_iter().map(|s| s.into_inner().unwrap().expect("every check ran")).collect();
    let mut summary = Summary::default();
    for rec in &records {
        match rec.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skip => summary.skipped += 1,
        }
    }
    let report = CheckReport {
        profile: cfg.profile,
        seed: cfg.seed,
        suites: suites.iter().map(|s| s.to_string()).collect(),
        records,
        summary,
    };
    if let Some(path) = &cfg.output_path {
        std::fs::write(path, report.to_json() + "\n").map_err(|e| Error::IoError(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}
