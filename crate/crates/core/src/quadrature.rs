//! Gauss–Kronrod and Gauss–Legendre rules, adaptive integration, and
//! semi-infinite oscillatory integrals with an integration-by-parts tail.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_463_229_138,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// A quadrature value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: C64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: C64, error: f64) -> Self {
        Self { value, error }
    }

    pub fn zero() -> Self {
        Self::new(C64::new(0.0, 0.0), 0.0)
    }

    pub fn scale(self, c: C64) -> Self {
        Self::new(self.value * c, self.error * c.norm())
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate::new(self.value + o.value, self.error + o.error)
    }
}

impl std::ops::Sub for Estimate {
    type Output = Estimate;
    fn sub(self, o: Estimate) -> Estimate {
        Estimate::new(self.value - o.value, self.error + o.error)
    }
}

impl std::iter::Sum for Estimate {
    fn sum<I: Iterator<Item = Estimate>>(iter: I) -> Estimate {
        iter.fold(Estimate::zero(), |a, b| a + b)
    }
}

/// Accuracy targets for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-15, rel: 1e-11, max_intervals: 400 }
    }
}

/// One 21-point Gauss–Kronrod panel with the QUADPACK error heuristic.
pub fn gk21<F: FnMut(f64) -> C64 + ?Sized>(f: &mut F, a: f64, b: f64) -> Estimate {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut fv1 = [C64::new(0.0, 0.0); 10];
    let mut fv2 = [C64::new(0.0, 0.0); 10];
    let mut resk = fc * WGK[10];
    let mut resg = C64::new(0.0, 0.0);
    let mut resabs = fc.norm() * WGK[10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let ah = h.abs();
    resasc *= ah;
    resabs *= ah;
    let mut err = ((resk - resg) * h).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Estimate::new(resk * h, err)
}

/// Globally adaptive Gauss–Kronrod integration over [a, b].
pub fn adaptive<F: FnMut(f64) -> C64 + ?Sized>(f: &mut F, a: f64, b: f64, tol: &Tolerance) -> Estimate {
    if a == b {
        return Estimate::zero();
    }
    let first = gk21(f, a, b);
    let mut pieces = vec![(a, b, first)];
    let mut total = first;
    while pieces.len() < tol.max_intervals {
        if total.error <= tol.abs.max(tol.rel * total.value.norm()) {
            break;
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .unwrap();
        let (lo, hi, est) = pieces.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            pieces.push((lo, hi, est));
            break;
        }
        let left = gk21(f, lo, mid);
        let right = gk21(f, mid, hi);
        total = total - est + left + right;
        total.error = pieces.iter().map(|p| p.2.error).sum::<f64>() + left.error + right.error;
        pieces.push((lo, mid, left));
        pieces.push((mid, hi, right));
    }
    let value = pieces.iter().map(|p| p.2.value).sum();
    let error = pieces.iter().map(|p| p.2.error).sum();
    Estimate::new(value, error)
}

/// Integral over [0, b] of a function with a square-root type endpoint at 0,
/// evaluated through the substitution t = v².
pub fn adaptive_sqrt_start<F: FnMut(f64) -> C64 + ?Sized>(f: &mut F, b: f64, tol: &Tolerance) -> Estimate {
    if b <= 0.0 {
        return Estimate::zero();
    }
    let mut g = |v: f64| f(v * v) * (2.0 * v);
    adaptive(&mut g, 0.0, b.sqrt(), tol)
}

/// Integral over [a, ∞) through the map t = a / w, w ∈ (0, 1].
/// Suited to integrands decaying at least like t^(-1-δ).
pub fn adaptive_to_infinity<F: FnMut(f64) -> C64 + ?Sized>(f: &mut F, a: f64, tol: &Tolerance) -> Estimate {
    assert!(a > 0.0, "mapped tail needs a positive start");
    let mut g = |w: f64| {
        let t = a / w;
        f(t) * (a / (w * w))
    };
    adaptive(&mut g, 0.0, 1.0, tol)
}

/// Integrates piecewise over consecutive breakpoints, using the square-root
/// substitution on the first piece when `sqrt_start` is set.
pub fn piecewise<F: FnMut(f64) -> C64 + ?Sized>(
    f: &mut F,
    breaks: &[f64],
    sqrt_start: bool,
    tol: &Tolerance,
) -> Estimate {
    let mut total = Estimate::zero();
    for (i, w) in breaks.windows(2).enumerate() {
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

/// Settings for semi-infinite oscillatory integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillatory {
    /// Truncation point of the panel sum; the tail starts here.
    pub upper: f64,
    /// Maximum panel width.
    pub panel: f64,
    /// Number of integration-by-parts terms; 0 disables the tail.
    pub tail_terms: usize,
    /// Whether the integrand has a square-root type endpoint at 0.
    pub sqrt_start: bool,
    pub tol: Tolerance,
}

/// ∫₀^∞ e^{iωt} h(t) dt: panels up to `upper`, then
/// e^{iωU} Σₙ (-1)^{n+1} h⁽ⁿ⁾(U) / (iω)^{n+1} with finite-difference derivatives.
/// The first omitted tail term is added to the error estimate.
pub fn oscillatory<F: FnMut(f64) -> C64 + ?Sized>(h: &mut F, omega: f64, opts: &Oscillatory) -> Estimate {
    let upper = opts.upper;
    let half_period = if omega != 0.0 { PI / omega.abs() } else { upper };
    let width = opts.panel.min(half_period).max(1e-300);
    let mut g = |t: f64| h(t) * C64::from_polar(1.0, omega * t);
    let mut total = Estimate::zero();
    let first = width.min(upper);
    total = total
        + if opts.sqrt_start {
            adaptive_sqrt_start(&mut g, first, &opts.tol)
        } else {
            adaptive(&mut g, 0.0, first, &opts.tol)
        };
    let n = ((upper - first) / width).ceil().max(0.0) as usize;
    let step = if n > 0 { (upper - first) / n as f64 } else { 0.0 };
    for j in 0..n {
        let a = first + step * j as f64;
        let b = if j + 1 == n { upper } else { a + step };
        let panel_tol = Tolerance { max_intervals: 50, ..opts.tol };
        total = total + adaptive(&mut g, a, b, &panel_tol);
    }
    if opts.tail_terms > 0 && omega != 0.0 {
        total = total + by_parts_tail(h, omega, upper, opts.tail_terms);
    }
    total
}

/// Asymptotic tail ∫_U^∞ e^{iωt} h(t) dt by repeated integration by parts.
pub fn by_parts_tail<F: FnMut(f64) -> C64 + ?Sized>(h: &mut F, omega: f64, u: f64, terms: usize) -> Estimate {
    let step = (0.15 / omega.abs()).min(0.05 * u);
    let derivs = derivatives(h, u, step, terms + 1);
    let iw = C64::new(0.0, omega);
    let phase = C64::from_polar(1.0, omega * u);
    let mut sum = C64::new(0.0, 0.0);
    let mut pow = iw;
    let mut last = 0.0;
    for (n, d) in derivs.iter().enumerate() {
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        let term = phase * *d * sign / pow;
        if n < terms {
            sum += term;
        } else {
            last = term.norm();
        }
        pow *= iw;
    }
    Estimate::new(sum, last)
}

/// Derivatives 0..count-1 of h at t from a centred 9-point stencil.
fn derivatives<F: FnMut(f64) -> C64 + ?Sized>(h: &mut F, t: f64, step: f64, count: usize) -> Vec<C64> {
    let offsets: Vec<f64> = (-4..=4).map(|j| j as f64).collect();
    let vals: Vec<C64> = offsets.iter().map(|j| h(t + step * j)).collect();
    let weights = fd_weights(&offsets, count.saturating_sub(1));
    (0..count)
        .map(|n| {
            let s: C64 = vals.iter().zip(&weights[n]).map(|(v, w)| v * w).sum();
            s / step.powi(n as i32)
        })
        .collect()
}

/// Fornberg finite-difference weights at 0 for derivative orders 0..=m.
pub fn fd_weights(x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0];
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i];
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// n-point Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let h = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    (x.iter().map(|t| c + h * t).collect(), w.iter().map(|t| t * h).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> C64 {
        move |t| C64::new(f(t), 0.0)
    }

    #[test]
    fn polynomial_exact() {
        let e = gk21(&mut re(|t| t.powi(7) - 3.0 * t * t), 0.0, 2.0);
        assert!((e.value.re - (32.0 - 8.0)).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let tol = Tolerance::default();
        let e = adaptive(&mut re(|t| 1.0 / (1e-4 + t * t)), -1.0, 1.0, &tol);
        let exact = 2.0 * 100.0 * (100.0f64).atan();
        assert!((e.value.re - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn sqrt_endpoint() {
        let tol = Tolerance::default();
        let e = adaptive_sqrt_start(&mut re(|t| 1.0 / t.sqrt()), 4.0, &tol);
        assert!((e.value.re - 4.0).abs() < 1e-13);
    }

    #[test]
    fn infinite_power_tail() {
        let tol = Tolerance::default();
        let e = adaptive_to_infinity(&mut re(|t| 1.0 / (1.0 + t * t)), 1.0, &tol);
        assert!((e.value.re - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_with_tail() {
        // ∫₀^∞ cos(t)/(1+t²) dt = (π/2) e^{-1}
        let opts = Oscillatory { upper: 60.0, panel: 1.0, tail_terms: 5, sqrt_start: false, tol: Tolerance::default() };
        let e = oscillatory(&mut re(|t| 1.0 / (1.0 + t * t)), 1.0, &opts);
        assert!((e.value.re - PI / 2.0 * (-1.0f64).exp()).abs() < 1e-9, "{:?}", e);
        assert!(e.error < 1e-8);
    }

    #[test]
    fn stencil_weights() {
        let x: Vec<f64> = (-2..=2).map(|j| j as f64).collect();
        let w = fd_weights(&x, 2);
        let d1 = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        let d2 = [-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0];
        for i in 0..5 {
            assert!((w[1][i] - d1[i]).abs() < 1e-14);
            assert!((w[2][i] - d2[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_weights() {
        let (x, w) = gauss_legendre(20);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m4 - 0.4).abs() < 1e-14);
    }
}
