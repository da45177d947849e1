use nullray::specfun::{bessel_j, BesselOrder};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use std::f64::consts::PI;

fn j(two_nu: i64, x: f64) -> f64 {
    bessel_j(BesselOrder::from_two_nu(two_nu).unwrap(), x).unwrap()
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

/// Exact rational partial sum of Σ (-1)^m (x/2)^(2m) / (m! Γ(m+ν+1)) · c, where the
/// Γ factors for half-integer ν are reduced to rationals times √π.
fn series_oracle(two_nu: i64, x: f64) -> f64 {
    let half = rational(x) / BigInt::from(2);
    let q = -(half.clone() * half.clone());
    let mut terms = 0usize;
    let mut sum = BigRational::zero();
    if two_nu % 2 == 0 {
        let n = (two_nu / 2) as usize;
        let mut lead = BigRational::one();
        for k in 1..=n {
            lead = lead * half.clone() / BigInt::from(k);
        }
        let mut term = lead;
        loop {
            sum += term.clone();
            terms += 1;
            let m = terms;
            term = term * q.clone() / BigInt::from(m * (m + n));
            if terms > 40 && term.to_f64().unwrap().abs() < 1e-40 {
                break;
            }
        }
        sum.to_f64().unwrap()
    } else {
        // ν = n + 1/2:  J = sqrt(x/2)/sqrt(π) · Σ (-1)^m (x/2)^(2m+n) / (m! · Γ(m+n+3/2)/sqrt(π))
        let n = ((two_nu - 1) / 2) as usize;
        // Γ(n+3/2)/√π = (2n+1)!! / 2^(n+1)
        let mut g = BigRational::new(BigInt::from(1), BigInt::from(2));
        for k in 1..=n {
            g = g * BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2));
        }
        let mut lead = BigRational::one();
        for _ in 0..n {
            lead = lead * half.clone();
        }
        let mut term = lead / g;
        loop {
            sum += term.clone();
            terms += 1;
            let m = terms;
            // Γ(m+n+3/2) = Γ(m+n+1/2)·(m+n+1/2)
            term = term * q.clone() * BigRational::new(BigInt::from(2), BigInt::from(2 * (m + n) + 1))
                / BigInt::from(m);
            if terms > 40 && term.to_f64().unwrap().abs() < 1e-40 {
                break;
            }
        }
        (x / 2.0).sqrt() / PI.sqrt() * sum.to_f64().unwrap()
    }
}

fn close(got: f64, want: f64, two_nu: i64, x: f64) -> bool {
    let nu = two_nu as f64 / 2.0;
    let floor = if x > nu.abs() { 1e-13 * (2.0 / (PI * x)).sqrt() } else { 0.0 };
    (got - want).abs() <= 1e-12 * want.abs() + floor
}

#[test]
fn first_order_at_one_tenth() {
    let oracle = series_oracle(2, 0.1);
    assert!((oracle - 0.049_937_526_036_242).abs() < 1e-16);
    assert!(close(j(2, 0.1), oracle, 2, 0.1));
}

#[test]
fn first_zero_of_j0() {
    // bisection on the oracle
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if series_oracle(0, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((lo - 2.404_825_557_695_773).abs() < 1e-14);
    assert!(j(0, 2.404_825_557_695_773).abs() < 1e-12);
}

#[test]
fn log_grid_matches_series_oracle() {
    let orders = [0i64, 2, 4, 6, 8, 10, 1, 3, 5, 9];
    let mut worst = 0.0f64;
    for i in 0..200 {
        let x = 1e-3 * (50.0f64 / 1e-3).powf(i as f64 / 199.0);
        for &o in &orders {
            let want = series_oracle(o, x);
            let got = j(o, x);
            assert!(close(got, want, o, x), "2nu={o} x={x} got={got:e} want={want:e}");
            if want.abs() > 1e-3 {
                worst = worst.max(((got - want) / want).abs());
            }
        }
    }
    assert!(worst < 1e-12, "worst relative error {worst:e}");
}

#[test]
fn reference_table_large_arguments() {
    // 30-digit values frozen from an arbitrary-precision oracle
    let table: &[(i64, f64, f64)] = &[
        (0, 0.7, 0.88120088860740529545),
        (0, 13.0, 0.206926102377067811),
        (0, 37.0, 0.010862369724899694741),
        (0, 100.0, 0.019985850304223122424),
        (0, 517.3, 0.009614873954659629194),
        (0, 1000.0, 0.024786686152420174561),
        (0, 1999.0, 0.0176131598064800853),
        (2, 13.0, -0.070318052121778371157),
        (2, 37.0, -0.13058003873375645503),
        (2, 100.0, -0.077145352014112158033),
        (2, 517.3, 0.03374671229348540203),
        (2, 1000.0, 0.0047283119070895239176),
        (2, 1999.0, 0.0028759404354997087323),
        (5, 13.0, -0.13767085904841080367),
        (5, 37.0, 0.076088247513821469199),
        (5, 1999.0, -0.014501149964617463406),
        (11, 0.7, 0.000010591554208565095818),
        (11, 37.0, -0.12627355157191256097),
        (11, 1000.0, -0.01387513924302834095),
        (40, 0.7, 3.1095858376600628641e-28),
        (40, 13.0, 0.00089714062967778546913),
        (40, 37.0, -0.086897293168974734768),
        (40, 100.0, 0.062217458498338753141),
        (40, 517.3, -0.0038190186421785702235),
        (40, 1999.0, 0.017238688944375481998),
        (99, 0.7, 6.2778441753872576681e-87),
        (99, 13.0, 1.7391845409270140858e-24),
        (99, 37.0, 0.00008146117503859619763),
        (99, 100.0, -0.07171668909501782185),
        (99, 1000.0, 0.014832977345580639835),
        (99, 1999.0, -0.00019430083830146111531),
        (100, 0.7, 5.2394314498348965901e-88),
        (100, 13.0, 6.3078644404188040718e-25),
        (100, 37.0, 0.000053806347382113674153),
        (100, 100.0, -0.038698339728525383467),
        (100, 517.3, 0.029606800819438731124),
        (100, 1000.0, -0.0033360489606152764062),
        (100, 1999.0, -0.012601105385500672305),
        (-7, 0.7, -43.83839932129769633),
        (-7, 13.0, 0.17603889326684074447),
        (-7, 1999.0, 0.014516748762192652412),
        (-14, 0.7, -1.2571583113555607449e-7),
        (-14, 37.0, -0.097138376068529145842),
        (-14, 1000.0, 0.0053217830764436153538),
    ];
    for &(o, x, want) in table {
        let got = j(o, x);
        assert!(close(got, want, o, x), "2nu={o} x={x} got={got:e} want={want:e}");
    }
}

#[test]
fn negative_integer_parity_is_exact() {
    for n in 0..8i64 {
        for &x in &[0.3, 2.0, 11.0, 75.0] {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(j(-2 * n, x), sign * j(2 * n, x));
        }
    }
}

proptest! {
    #[test]
    fn three_term_recurrence(idx in 0usize..8, x in 0.1f64..100.0) {
        let two_nu = [0i64, 2, 4, 6, 8, 10, 1, 3][idx];
        let nu = two_nu as f64 / 2.0;
        let lhs = j(two_nu - 2, x) + j(two_nu + 2, x);
        let mid = j(two_nu, x);
        let res = (lhs - 2.0 * nu / x * mid).abs();
        prop_assert!(res <= 1e-10 * mid.abs().max(1.0), "res={res:e}");
    }
}
