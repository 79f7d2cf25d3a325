//! Gamma, log-Gamma, Beta, digamma and even-index Bernoulli numbers.
//!
//! Double precision only. The Gamma function uses a Lanczos approximation
//! (g = 7, nine terms) with reflection below one half; the digamma function
//! shifts the argument upward and finishes with the asymptotic series.

use crate::error::{Error, Result};
use crate::math::{self, PI};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Exact `B_2, B_4, …, B_30` as `(numerator, denominator)`.
pub const BERNOULLI_EVEN: [(i64, i64); 15] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43_867, 798),
    (-174_611, 330),
    (854_513, 138),
    (-236_364_091, 2730),
    (8_553_103, 6),
    (-23_749_461_029, 870),
    (8_615_841_276_005, 14_322),
];

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && math::floor(x) == x
}

/// `sin(πx)` with the argument reduced modulo 2 first, so integer and
/// half-integer inputs come out exact.
fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * math::floor(x / 2.0);
    // r in [0, 2)
    let sign = if r >= 1.0 {
        r -= 1.0;
        -1.0
    } else {
        1.0
    };
    if r > 0.5 {
        r = 1.0 - r;
    }
    if r == 0.0 {
        return 0.0;
    }
    sign * math::sin(PI * r)
}

fn lanczos_sum(z: f64) -> f64 {
    // z is the shifted argument x - 1
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// The Gamma function.
///
/// Poles (zero and negative integers) are rejected; use [`recip_gamma`] when
/// a pole should simply contribute a zero.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || is_non_positive_integer(x) {
        return Err(Error::Domain { func: "gamma", arg: x });
    }
    if x < 0.5 {
        let s = sin_pi(x);
        return Ok(PI / (s * gamma(1.0 - x)?));
    }
    if math::floor(x) == x && x <= 171.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return Ok(acc);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let sum = lanczos_sum(z);
    // split the power to delay overflow
    let half = math::powf(t, 0.5 * (z + 0.5));
    Ok(math::sqrt(2.0 * PI) * half * (half * math::exp(-t)) * sum)
}

/// `1/Γ(x)`, equal to zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if is_non_positive_integer(x) {
        return 0.0;
    }
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain { func: "ln_gamma", arg: x });
    }
    if x < 0.5 {
        return Ok(math::ln(PI / sin_pi(x)) - ln_gamma(1.0 - x)?);
    }
    if x < 20.0 {
        return Ok(math::ln(gamma(x)?));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(HALF_LN_TWO_PI + (z + 0.5) * math::ln(t) - t + math::ln(lanczos_sum(z)))
}

/// Euler's Beta function `Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain { func: "beta", arg: x });
    }
    if !(y > 0.0) {
        return Err(Error::Domain { func: "beta", arg: y });
    }
    if x + y < 150.0 {
        Ok(gamma(x)? * gamma(y)? / gamma(x + y)?)
    } else {
        Ok(math::exp(ln_gamma(x)? + ln_gamma(y)? - ln_gamma(x + y)?))
    }
}

/// The digamma function `Ψ = (ln Γ)'` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain { func: "digamma", arg: x });
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Σ B_2k / (2k x^2k), k = 1..8
    let mut tail = 0.0;
    let mut pow = inv2;
    for (i, &(num, den)) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let two_k = 2.0 * (i + 1) as f64;
        tail += num as f64 / den as f64 / two_k * pow;
        pow *= inv2;
    }
    Ok(acc + math::ln(x) - 0.5 / x - tail)
}

/// `ζ(s)` for even `s ≥ 32` by direct summation.
fn zeta_large_even(s: u32) -> f64 {
    let mut acc = 1.0;
    let mut n = 2.0;
    loop {
        let term = math::powf(n, -(s as f64));
        if term < 1e-20 {
            break;
        }
        acc += term;
        n += 1.0;
    }
    acc
}

/// The Bernoulli number `B_{2k}` for `k ≥ 1`.
///
/// Exact table values for `2k ≤ 30`; beyond that the value comes from
/// `B_2k = (-1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}`.
pub fn bernoulli(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain { func: "bernoulli", arg: 0.0 });
    }
    if let Some(&(num, den)) = BERNOULLI_EVEN.get(k as usize - 1) {
        return Ok(num as f64 / den as f64);
    }
    // (2k)!/(2π)^{2k} as a running product
    let mut scale = 1.0;
    for i in 1..=2 * k {
        scale *= i as f64 / (2.0 * PI);
    }
    Ok(math::sign_pow(k as i64 + 1) * 2.0 * scale * zeta_large_even(2 * k))
}

/// `π^{2k} B_{2k} / (2k)!`, the combination that appears in power-series
/// expansions of `x / sin x`. Finite for every `k ≥ 1`.
pub fn bernoulli_pi_scaled(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain { func: "bernoulli_pi_scaled", arg: 0.0 });
    }
    if let Some(&(num, den)) = BERNOULLI_EVEN.get(k as usize - 1) {
        let mut scale = 1.0;
        for i in 1..=k {
            let i = i as f64;
            scale *= PI * PI / ((2.0 * i - 1.0) * (2.0 * i));
        }
        return Ok(num as f64 / den as f64 * scale);
    }
    Ok(math::sign_pow(k as i64 + 1) * 2.0 * zeta_large_even(2 * k) / math::powi(4.0, k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_small_values() {
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        let prod = gamma(3.5).unwrap() * gamma(1.5).unwrap();
        assert!(rel(prod, 15.0 * PI / 16.0) < 1e-13);
    }

    #[test]
    fn gamma_rejects_poles() {
        for x in [0.0, -1.0, -4.0] {
            assert!(matches!(gamma(x), Err(Error::Domain { .. })));
            assert_eq!(recip_gamma(x), 0.0);
        }
        // negative half-integers are fine: Γ(-1/2) = -2√π
        assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
    }

    #[test]
    fn gamma_against_reference_values() {
        // mpmath, 25 digits
        let cases = [
            (0.7, 1.298_055_332_647_557_8),
            (2.5, 1.329_340_388_179_137),
            (7.3, 1_271.423_633_663_908_8),
            (12.5, 136_843_365.465_565_86),
            (23.75, 1.175_706_079_328_442_2e22),
            (29.9, 6.304_174_488_373_721e30),
        ];
        for (x, want) in cases {
            assert!(rel(gamma(x).unwrap(), want) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn recurrence_and_duplication() {
        let mut x = 0.5;
        while x <= 29.0 {
            let g = gamma(x).unwrap();
            assert!(rel(gamma(x + 1.0).unwrap(), x * g) < 1e-13);
            x += 0.37;
        }
        for i in 1..=20 {
            let z = 0.5 * i as f64;
            let lhs = gamma(z).unwrap() * gamma(z + 0.5).unwrap();
            let rhs = math::powf(2.0, 1.0 - 2.0 * z) * PI.sqrt() * gamma(2.0 * z).unwrap();
            assert!((lhs - rhs).abs() / gamma(2.0 * z).unwrap() <= 1e-12, "z = {z}");
        }
    }

    #[test]
    fn ln_gamma_consistent() {
        for x in [0.1, 0.5, 1.0, 2.0, 3.3, 19.9, 20.0, 20.1, 45.0] {
            let want = if x < 40.0 { gamma(x).unwrap().ln() } else { 125.317_271_149_356_9 };
            assert!((ln_gamma(x).unwrap() - want).abs() < 1e-12 * want.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn digamma_values() {
        let euler = crate::math::EULER_GAMMA;
        assert!((digamma(1.0).unwrap() + euler).abs() < 1e-13);
        assert!((digamma(2.0).unwrap() - (1.0 - euler)).abs() < 1e-13);
        // central difference of ln Γ at 2.5, step 1e-5
        let h = 1e-5;
        let fd = (ln_gamma(2.5 + h).unwrap() - ln_gamma(2.5 - h).unwrap()) / (2.0 * h);
        assert!((digamma(2.5).unwrap() - fd).abs() < 1e-9);
        assert!((digamma(2.5).unwrap() - 0.703_156_640_645_243_2).abs() < 1e-13);
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn digamma_reflection_and_recurrence() {
        for x in [0.25, 1.0 / 3.0] {
            let lhs = digamma(1.0 - x).unwrap() - digamma(x).unwrap();
            let rhs = PI / math::tan(PI * x);
            assert!((lhs - rhs).abs() < 1e-10);
        }
        let mut x = 0.5;
        while x < 30.0 {
            let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
            assert!(d.abs() < 1e-12, "x = {x}");
            x += 0.61;
        }
    }

    #[test]
    fn beta_values() {
        assert!((beta(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(rel(beta(2.5, 0.5).unwrap(), 3.0 * PI / 8.0) < 1e-13);
        assert!(rel(beta(3.0, 1.0).unwrap(), 1.0 / 3.0) < 1e-14);
        assert!(beta(0.0, 1.0).is_err());
        assert!(beta(1.0, -2.0).is_err());
    }

    #[test]
    fn bernoulli_small_indices() {
        assert_eq!(bernoulli(1).unwrap(), 1.0 / 6.0);
        assert_eq!(bernoulli(2).unwrap(), -1.0 / 30.0);
        assert_eq!(bernoulli(3).unwrap(), 1.0 / 42.0);
        assert_eq!(bernoulli(5).unwrap(), 5.0 / 66.0);
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn bernoulli_zeta_branch_continues_table() {
        // B_32 = -7709321041217/510
        assert!(rel(bernoulli(16).unwrap(), -7_709_321_041_217.0 / 510.0) < 1e-13);
        for k in 1..=15 {
            let direct = bernoulli(k).unwrap();
            let mut scale = 1.0;
            for i in 1..=2 * k {
                scale *= PI / i as f64;
            }
            assert!(rel(bernoulli_pi_scaled(k).unwrap(), direct * scale) < 1e-13);
        }
    }

    #[test]
    fn bernoulli_scaled_terms_decay_geometrically() {
        for k in 2..40 {
            let r = bernoulli_pi_scaled(k + 1).unwrap().abs() / bernoulli_pi_scaled(k).unwrap().abs();
            assert!(r < 0.3, "k = {k}, ratio {r}");
        }
        for m in 3..=12 {
            for k in 30..35 {
                let t = bernoulli_pi_scaled(k).unwrap().abs() / ((m - 2 + 2 * k) as f64);
                assert!(t < 1e-15);
            }
        }
    }
}
