//! Closed forms for the Crofton, Masotti, Hurwitz, `sin^m` and
//! `ω^m − sin^m` families.

use alloc::vec::Vec;

use super::SeriesTerms;
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::kernels::{power_cos_moment, sin_power_cos_moment};
use crate::math::{self, sign_pow, KahanSum, EULER_GAMMA, LN_2, PI, TAU};
use crate::special_fn::{bernoulli_pi_scaled, digamma, gamma, ln_gamma, recip_gamma};

/// Largest `m` accepted by the `ω^m − sin^m ω` family; `M_m` grows like `π^m`.
pub const MAX_POWER: u32 = 20;

/// `∫ (ω − sin ω) dP = −πF + L²/2`.
pub fn crofton(body: &ConvexBody) -> f64 {
    let l = body.length();
    -PI * body.area() + 0.5 * l * l
}

/// `∫ (ω² − sin²ω) dP = −π²F + 4L²/π + 8π Σ_{k even} c_k²/(1 − k²)`.
pub fn masotti(body: &ConvexBody) -> f64 {
    let l = body.length();
    let even = KahanSum::from_iter((2..=body.order()).step_by(2).map(|k| {
        let kf = k as f64;
        body.c2(k) / (1.0 - kf * kf)
    }));
    -PI * PI * body.area() + 4.0 * l * l / PI + 8.0 * PI * even.value()
}

/// `∫ f_m dP = L² + (−1)^m π² (m² − 1) c_m²`.
pub fn hurwitz_integral(body: &ConvexBody, m: u32) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain { func: "hurwitz_integral", arg: m as f64 });
    }
    let l = body.length();
    let mf = m as f64;
    Ok(l * l + sign_pow(m as i64) * PI * PI * (mf * mf - 1.0) * body.c2(m as usize))
}

fn factorial(m: u32) -> f64 {
    (1..=m).fold(1.0, |acc, i| acc * i as f64)
}

/// `m! / (2^{m−1} (m − 2))`.
fn sin_power_prefactor(m: u32) -> f64 {
    factorial(m) / (math::powi(2.0, m as i32 - 1) * (m as f64 - 2.0))
}

/// `M(sin^m ω) = π m! / (2^{m−1} (m−2) Γ((m+1)/2)²)`, `m ≥ 3`.
pub fn m_sin_power(m: u32) -> Result<f64> {
    if m < 3 {
        return Err(Error::Domain { func: "m_sin_power", arg: m as f64 });
    }
    let mf = m as f64;
    if m <= 60 {
        let g = gamma(0.5 * (mf + 1.0))?;
        return Ok(PI * sin_power_prefactor(m) / (g * g));
    }
    let log = ln_gamma(mf + 1.0)? - (mf - 1.0) * LN_2 - math::ln(mf - 2.0) - 2.0 * ln_gamma(0.5 * (mf + 1.0))?;
    Ok(PI * math::exp(log))
}

/// Coefficient of `c_k²` in `∫ sin^m ω dP`:
/// `m! π²/(2^{m−1}(m−2)) · (−1)^{k/2+1} (k²−1) / (Γ((m+1+k)/2) Γ((m+1−k)/2))`
/// for even `k`, zero for odd `k`. For odd `m` the second Gamma has a pole
/// once `k > m − 1`, which gives an exact zero.
pub fn sin_power_coefficient(m: u32, k: usize) -> Result<f64> {
    if m < 3 {
        return Err(Error::Domain { func: "sin_power_coefficient", arg: m as f64 });
    }
    if k < 2 || k % 2 == 1 {
        return Ok(0.0);
    }
    let (mf, kf) = (m as f64, k as f64);
    Ok(sin_power_prefactor(m) * PI * PI * sign_pow((k / 2 + 1) as i64) * (kf * kf - 1.0)
        * recip_gamma(0.5 * (mf + 1.0 + kf))
        * recip_gamma(0.5 * (mf + 1.0 - kf)))
}

/// Series terms of `∫ sin^m ω dP` up to order `order`.
pub fn sin_power_terms(m: u32, order: usize) -> Result<SeriesTerms> {
    let l2 = m_sin_power(m)?;
    let ck = (2..=order)
        .map(|k| sin_power_coefficient(m, k).map(|c| c / PI))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesTerms { l2_coeff: l2, ck_coeffs: ck, boundary_term: 0.0 })
}

/// `∫ sin^m ω dP`, `m ≥ 3`.
pub fn sin_power(body: &ConvexBody, m: u32) -> Result<f64> {
    Ok(sin_power_terms(m, body.order())?.total(body))
}

/// `∫ sin^m ω dP` for odd `m` rebuilt from the Hurwitz integrals,
/// `m!/(2^{m−1}(m−2)) Σ_p (−1)^{p+1} ∫ f_{2p} dP / (Γ((m+1)/2 + p) Γ((m+1)/2 − p))`,
/// and its absolute difference from [`sin_power`].
pub fn hurwitz_decomposition_check(body: &ConvexBody, m: u32) -> Result<f64> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::Domain { func: "hurwitz_decomposition_check", arg: m as f64 });
    }
    let half = 0.5 * (m as f64 + 1.0);
    let mut acc = KahanSum::new();
    for p in 1..=(m - 1) / 2 {
        let pf = p as f64;
        let w = sign_pow(p as i64 + 1) * recip_gamma(half + pf) * recip_gamma(half - pf);
        acc.add(w * hurwitz_integral(body, 2 * p)?);
    }
    let rebuilt = sin_power_prefactor(m) * acc.value();
    Ok((rebuilt - sin_power(body, m)?).abs())
}

/// `M(ω^m) = 2m(m−1)π^{m−2} (1/(m−2) + Σ_{k≥1} (−1)^k π^{2k} B_{2k} / ((m−2+2k)(2k)!))`,
/// `m ≥ 3`.
pub fn m_omega_power(m: u32) -> Result<f64> {
    if m < 3 {
        return Err(Error::Domain { func: "m_omega_power", arg: m as f64 });
    }
    let mf = m as f64;
    let mut acc = KahanSum::new();
    acc.add(1.0 / (mf - 2.0));
    for k in 1..200u32 {
        let term = sign_pow(k as i64) * bernoulli_pi_scaled(k)? / (mf - 2.0 + 2.0 * k as f64);
        acc.add(term);
        if term.abs() < 1e-17 * acc.value().abs() {
            break;
        }
    }
    Ok(2.0 * mf * (mf - 1.0) * math::powi(PI, m as i32 - 2) * acc.value())
}

/// `M_m = M(ω^m − sin^m ω)`: `π` for `m = 1`, `8` for `m = 2`, and
/// `M(ω^m) − M(sin^m)` above.
pub fn m_m(m: u32) -> Result<f64> {
    match m {
        0 => Err(Error::Domain { func: "m_m", arg: 0.0 }),
        1 => Ok(PI),
        2 => Ok(8.0),
        _ if m > MAX_POWER => Err(Error::Domain { func: "m_m", arg: m as f64 }),
        _ => Ok(m_omega_power(m)? - m_sin_power(m)?),
    }
}

/// `β_k(ω^m − sin^m ω)` from the moments `V_{r,j}` and `I_{m,k}`, `m ≥ 3`.
///
/// Odd `k`: `−2m Σ_{j even<k} j V_{m−1,j}`. Even `k`:
/// `M_m + 2m Σ_{j odd<k} j V_{m−1,j} − 2 S`, where
/// `S = Σ_{j odd<k} j ∫ (sin^m)' cos jω` reduces to
/// `−m(m−1)/2 I_{m−3,0} + m²/2 I_{m−1,0} + m(m−1)/2 I_{m−3,k} − m²/2 I_{m−1,k}`.
pub fn omega_minus_sin_beta(m: u32, k: usize) -> Result<f64> {
    if !(3..=MAX_POWER).contains(&m) {
        return Err(Error::Domain { func: "omega_minus_sin_beta", arg: m as f64 });
    }
    if k < 2 {
        return Err(Error::Domain { func: "omega_minus_sin_beta", arg: k as f64 });
    }
    let mf = m as f64;
    let first = if k % 2 == 0 { 1 } else { 2 };
    let mut v = KahanSum::new();
    for j in (first..k).step_by(2) {
        v.add(j as f64 * power_cos_moment(m - 1, j as u32));
    }
    if k % 2 == 1 {
        return Ok(-2.0 * mf * v.value());
    }
    let kk = k as u32;
    let a = 0.5 * mf * (mf - 1.0);
    let b = 0.5 * mf * mf;
    let s = -a * sin_power_cos_moment(m - 3, 0)? + b * sin_power_cos_moment(m - 1, 0)?
        + a * sin_power_cos_moment(m - 3, kk)?
        - b * sin_power_cos_moment(m - 1, kk)?;
    Ok(m_m(m)? + 2.0 * mf * v.value() - 2.0 * s)
}

/// `β_k(ω³ − sin³ω)` in digamma form: `12π(ln 2 − 19/16)` for `k = 2`,
/// `−6π(ψ((k+1)/2) + γ)` for `k ≥ 3`.
pub fn omega_cubed_beta_digamma(k: usize) -> Result<f64> {
    match k {
        0 | 1 => Err(Error::Domain { func: "omega_cubed_beta_digamma", arg: k as f64 }),
        2 => Ok(12.0 * PI * (LN_2 - 19.0 / 16.0)),
        _ => Ok(-6.0 * PI * (digamma(0.5 * (k as f64 + 1.0))? + EULER_GAMMA)),
    }
}

/// Series terms of `∫ (ω^m − sin^m ω) dP` for a body, `m ≥ 3`.
pub fn omega_minus_sin_terms(body: &ConvexBody, m: u32) -> Result<SeriesTerms> {
    let ck = (2..=body.order()).map(|k| omega_minus_sin_beta(m, k)).collect::<Result<Vec<_>>>()?;
    Ok(SeriesTerms {
        l2_coeff: m_m(m)?,
        ck_coeffs: ck,
        boundary_term: -math::powi(PI, m as i32) * body.area(),
    })
}

/// `∫ (ω^m − sin^m ω) dP = −π^m F + M_m L²/2π + π Σ β_k c_k²`.
pub fn omega_minus_sin_power(body: &ConvexBody, m: u32) -> Result<f64> {
    match m {
        0 => Err(Error::Domain { func: "omega_minus_sin_power", arg: 0.0 }),
        1 => Ok(crofton(body)),
        2 => Ok(masotti(body)),
        _ => Ok(omega_minus_sin_terms(body, m)?.total(body)),
    }
}

/// `−π^m F + M_m L²/2π`, the value for the disk with the same `L` and `F`.
pub fn omega_minus_sin_leading(body: &ConvexBody, m: u32) -> Result<f64> {
    let l = body.length();
    Ok(-math::powi(PI, m as i32) * body.area() + m_m(m)? * l * l / TAU)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{beta_k_direct, beta_k_of, m_of};
    use crate::quadrature::QuadratureSpec;
    use crate::visual::VisualFunction;
    use alloc::vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    fn a2_body() -> ConvexBody {
        ConvexBody::from_fourier(1.0, vec![(0.0, 0.0), (0.1, 0.0)]).unwrap()
    }

    #[test]
    fn circle_values() {
        let c = ConvexBody::circle(1.0).unwrap();
        assert!(close(crofton(&c), PI * PI, 1e-14));
        assert!(close(masotti(&c), 16.0 * PI - PI * PI * PI, 1e-14));
        assert!(close(sin_power(&c, 3).unwrap(), 3.0 * PI * PI, 1e-14));
        for m in 2..=8 {
            assert!(close(hurwitz_integral(&c, m).unwrap(), 4.0 * PI * PI, 1e-14));
        }
        let c2 = ConvexBody::circle(2.0).unwrap();
        assert!(close(crofton(&c2), 4.0 * PI * PI, 1e-14));
    }

    #[test]
    fn plugged_in_examples() {
        let b = a2_body();
        let l = b.length();
        assert!(close(masotti(&b), -PI * PI * b.area() + 16.0 * PI - 8.0 * PI / 3.0 * 0.01, 1e-14));
        assert!(close(hurwitz_integral(&b, 2).unwrap(), 4.0 * PI * PI + PI * PI * 3.0 * 0.01, 1e-14));
        let b3 = ConvexBody::from_fourier(1.0, vec![(0.0, 0.0), (0.0, 0.0), (0.05, 0.0)]).unwrap();
        assert!(close(hurwitz_integral(&b3, 3).unwrap(), 4.0 * PI * PI - PI * PI * 8.0 * 0.0025, 1e-14));
        let s3 = sin_power(&b, 3).unwrap();
        assert!(close(s3, 0.75 * l * l + 2.25 * PI * PI * 0.01, 1e-14));
    }

    #[test]
    fn m_sin_power_values() {
        assert!(close(m_sin_power(3).unwrap(), 1.5 * PI, 1e-15));
        assert!(close(m_sin_power(4).unwrap(), 8.0 / 3.0, 1e-14));
        assert!(m_sin_power(2).is_err());
        for m in 3..200 {
            assert!(m_sin_power(m + 1).unwrap() < m_sin_power(m).unwrap());
        }
        let r = m_sin_power(4000).unwrap() / m_sin_power(1000).unwrap();
        assert!((r - 0.5).abs() < 1e-3, "{r}");
    }

    #[test]
    fn printed_specializations() {
        // m = 3: 3/4 L² + 9π²/4 c_2²
        assert!(close(m_sin_power(3).unwrap() / TAU, 0.75, 1e-14));
        assert!(close(sin_power_coefficient(3, 2).unwrap(), 2.25 * PI * PI, 1e-14));
        for k in 3..20 {
            assert_eq!(sin_power_coefficient(3, k).unwrap(), 0.0);
        }
        // m = 4: 4/(3π) L² + π Σ 24/(9−k²) c_k²
        assert!(close(m_sin_power(4).unwrap() / TAU, 4.0 / (3.0 * PI), 1e-14));
        for k in (2..20).step_by(2) {
            let kf = k as f64;
            assert!(close(sin_power_coefficient(4, k).unwrap(), PI * 24.0 / (9.0 - kf * kf), 1e-13), "k={k}");
        }
        // m = 5: 5/16 L² + 5π²/4 c_2² − 25π²/16 c_4²
        assert!(close(m_sin_power(5).unwrap() / TAU, 5.0 / 16.0, 1e-14));
        assert!(close(sin_power_coefficient(5, 2).unwrap(), 1.25 * PI * PI, 1e-14));
        assert!(close(sin_power_coefficient(5, 4).unwrap(), -25.0 / 16.0 * PI * PI, 1e-14));
        assert_eq!(sin_power_coefficient(5, 6).unwrap(), 0.0);
    }

    #[test]
    fn sin_power_sign_structure() {
        for m in 3..=12u32 {
            for k in (2..=24).step_by(2) {
                let c = sin_power_coefficient(m, k).unwrap();
                if m % 2 == 1 {
                    if k as u32 > m {
                        assert_eq!(c, 0.0);
                    }
                    continue;
                }
                let r = (m / 2) as usize;
                let positive = if k <= m as usize { (k / 2) % 2 == 1 } else { r % 2 == 1 };
                assert_eq!(c > 0.0, positive, "m={m} k={k} c={c}");
            }
        }
        // the split sits at k = m, not k = r: r = 3 is odd, yet c_4² enters negatively
        assert!(sin_power_coefficient(6, 4).unwrap() < 0.0);
    }

    #[test]
    fn hurwitz_decomposition() {
        let c = ConvexBody::circle(1.0).unwrap();
        assert!(hurwitz_decomposition_check(&c, 3).unwrap() < 1e-10);
        assert!(hurwitz_decomposition_check(&a2_body(), 3).unwrap() < 1e-10);
        let b = ConvexBody::from_fourier(1.0, vec![(0.0, 0.0), (0.05, 0.02), (0.0, 0.0), (0.01, -0.01)]).unwrap();
        assert!(hurwitz_decomposition_check(&b, 5).unwrap() < 1e-9);
        assert!(hurwitz_decomposition_check(&b, 4).is_err());
    }

    #[test]
    fn m_m_values() {
        assert_eq!(m_m(1).unwrap(), PI);
        assert_eq!(m_m(2).unwrap(), 8.0);
        let m3 = 12.0 * PI * LN_2 - 1.5 * PI;
        assert!(close(m_m(3).unwrap(), m3, 1e-14));
        assert!(close(m_omega_power(3).unwrap(), 12.0 * PI * LN_2, 1e-14));
        assert!(m_m(21).is_err());
        let spec = QuadratureSpec::default();
        for m in 3..=10 {
            let f = VisualFunction::omega_minus_sin_power(m).unwrap();
            let q = m_of(&f, &spec).unwrap().value;
            assert!(close(m_m(m).unwrap(), q, 1e-11), "m={m}: {} vs {q}", m_m(m).unwrap());
        }
    }

    #[test]
    fn beta_paths_agree() {
        let spec = QuadratureSpec::default();
        for m in 3..=6 {
            let f = VisualFunction::omega_minus_sin_power(m).unwrap();
            for k in 2..=12 {
                let analytic = omega_minus_sin_beta(m, k).unwrap();
                let split = beta_k_of(&f, k, &spec).unwrap();
                let direct = beta_k_direct(&f, k, &spec).unwrap().value;
                assert!((analytic - split).abs() < 1e-9, "m={m} k={k}: {analytic} vs {split}");
                assert!((split - direct).abs() < 1e-9, "m={m} k={k}: {split} vs {direct}");
            }
        }
    }

    #[test]
    fn omega_cubed_digamma_form() {
        for k in 2..=30 {
            let a = omega_minus_sin_beta(3, k).unwrap();
            let d = omega_cubed_beta_digamma(k).unwrap();
            assert!(close(a, d, 1e-12), "k={k}: {a} vs {d}");
        }
    }

    #[test]
    fn beta_monotone_for_moderate_m() {
        for m in 4..=8 {
            assert!(omega_minus_sin_beta(m, 2).unwrap() < 0.0);
            for k in (2..=10).step_by(2) {
                let d = omega_minus_sin_beta(m, k).unwrap() - omega_minus_sin_beta(m, k + 2).unwrap();
                assert!(d > 0.0, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn family_consistency() {
        let b = a2_body();
        assert_eq!(omega_minus_sin_power(&b, 1).unwrap(), crofton(&b));
        assert_eq!(omega_minus_sin_power(&b, 2).unwrap(), masotti(&b));
        let c = ConvexBody::circle(1.0).unwrap();
        let expected = -math::powi(PI, 4) + TAU * (12.0 * PI * LN_2 - 1.5 * PI);
        assert!(close(omega_minus_sin_power(&c, 3).unwrap(), expected, 1e-13));
        assert!((expected - 37.1682).abs() < 1e-3);
    }
}
