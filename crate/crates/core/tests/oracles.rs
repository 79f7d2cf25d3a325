//! Independent references: exact rational arithmetic and adaptive quadrature.

use crofton_core::formulas::{functional_route, m_of, m_omega_power, master_series, omega_minus_sin_power, sin_power};
use crofton_core::kernels::{power_cos_moment, sin_power_cos_moment};
use crofton_core::math::PI;
use crofton_core::quadrature::{integrate_1d, integrate_exterior};
use crofton_core::special_fn::bernoulli;
use crofton_core::{ConvexBody, QuadratureSpec, VisualFunction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `B_n` from `Σ_{k<n+1} C(n+1,k) B_k = 0`.
fn bernoulli_exact(n_max: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::from_integer(BigInt::from(1))];
    for n in 1..=n_max {
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += BigRational::from_integer(binomial(n + 1, k)) * bk;
        }
        b.push(-s / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

#[test]
fn bernoulli_matches_exact_recurrence() {
    let exact = bernoulli_exact(80);
    for k in 1..=40u32 {
        let want = exact[2 * k as usize].to_f64().unwrap();
        let got = bernoulli(k).unwrap();
        assert!((got - want).abs() <= 1e-13 * want.abs(), "B_{}: {got} vs {want}", 2 * k);
    }
    assert!(exact[3].is_zero() && exact[5].is_zero());
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn cosine_moments_match_quadrature() {
    for r in 0..=8u32 {
        for j in 1..=12u32 {
            let q = integrate_1d(|w| w.powi(r as i32) * (j as f64 * w).cos(), 0.0, PI, &spec()).unwrap().value;
            let v = power_cos_moment(r, j);
            assert!((v - q).abs() <= 1e-10 * q.abs().max(1.0), "V({r},{j}) {v} vs {q}");
        }
    }
    for m in 0..=12u32 {
        for k in (0..=12u32).step_by(2) {
            let q = integrate_1d(|w| w.sin().powi(m as i32) * (k as f64 * w).cos(), 0.0, PI, &spec()).unwrap().value;
            let v = sin_power_cos_moment(m, k).unwrap();
            assert!((v - q).abs() <= 1e-10, "I({m},{k}) {v} vs {q}");
        }
    }
    assert!((sin_power_cos_moment(3, 6).unwrap() - 4.0 / 315.0).abs() < 1e-14);
}

#[test]
fn omega_power_mean_matches_quadrature() {
    for m in 3..=10u32 {
        let f = VisualFunction::custom(
            "power",
            move |w: f64| w.powi(m as i32),
            move |w: f64| m as f64 * w.powi(m as i32 - 1),
        );
        let q = m_of(&f, &spec()).unwrap().value;
        let closed = m_omega_power(m).unwrap();
        assert!((q - closed).abs() <= 1e-10 * closed, "m={m}: {q} vs {closed}");
    }
}

#[test]
fn routes_agree_on_random_bodies() {
    let fs = [
        VisualFunction::sin_power(3).unwrap(),
        VisualFunction::omega_minus_sin_power(3).unwrap(),
        VisualFunction::hurwitz(4).unwrap(),
    ];
    for seed in 0..20u64 {
        let body = ConvexBody::random(500 + seed, 8, 3.0).unwrap();
        for f in &fs {
            let direct = integrate_exterior(&body, f, &spec()).unwrap().value;
            let series = master_series(&body, f, &spec()).unwrap().value;
            let functional = functional_route(&body, f, &spec()).unwrap().value;
            for v in [series, functional] {
                assert!((v - direct).abs() <= 1e-8 * direct.abs(), "seed {seed} {}: {v} vs {direct}", f.label());
            }
        }
        let s3 = sin_power(&body, 3).unwrap();
        let direct = integrate_exterior(&body, &fs[0], &spec()).unwrap().value;
        assert!((s3 - direct).abs() <= 1e-8 * direct.abs());
        let o3 = omega_minus_sin_power(&body, 3).unwrap();
        let direct = integrate_exterior(&body, &fs[1], &spec()).unwrap().value;
        assert!((o3 - direct).abs() <= 1e-8 * direct.abs());
    }
}
