//! Body-independent kernels of the visual-angle formulas.
//!
//! `h_k`, `g_k` and the Hurwitz functions `f_m` are trigonometric
//! polynomials in `ω`; `V_{r,j}` and `I_{m,k}` are the moment integrals
//! `∫₀^π ω^r cos jω dω` and `∫₀^π sin^m ω cos kω dω`.
//!
//! The quotients `g_k/sin²ω` and `h_k/sin³ω` are 0/0 at one or both
//! endpoints of `[0, π]`; they are evaluated from finite cosine (resp. sine)
//! sums that contain no cancellation instead of by division.
//!
//! Index preconditions (`k ≥ 1`, `m ≥ 2`) are checked with `assert!`.

use crate::error::{Error, Result};
use crate::math::{self, sign_pow, PI};
use crate::special_fn::recip_gamma;

/// `h_k(ω)` in the four-cosine form
/// `(−1)^k/4 [(k+1)² cos(k−2)ω + (k−1)² cos(k+2)ω − 2(k²−3) cos kω] + 2 cos ω`.
pub fn h(k: u32, omega: f64) -> f64 {
    assert!(k >= 1, "h_k needs k >= 1");
    let kf = k as f64;
    let bracket = (kf + 1.0) * (kf + 1.0) * math::cos((kf - 2.0) * omega)
        + (kf - 1.0) * (kf - 1.0) * math::cos((kf + 2.0) * omega)
        - 2.0 * (kf * kf - 3.0) * math::cos(kf * omega);
    0.25 * sign_pow(k as i64) * bracket + 2.0 * math::cos(omega)
}

/// `h_k(ω)` in the product form
/// `2 cos ω + (−1)^{k+1}(−cos kω (1+cos²ω) − 2k sin kω sin ω cos ω + k² cos kω sin²ω)`.
pub fn h_product_form(k: u32, omega: f64) -> f64 {
    assert!(k >= 1, "h_k needs k >= 1");
    let kf = k as f64;
    let (s, c) = math::sin_cos(omega);
    let (sk, ck) = math::sin_cos(kf * omega);
    let inner = -ck * (1.0 + c * c) - 2.0 * kf * sk * s * c + kf * kf * ck * s * s;
    2.0 * c + sign_pow(k as i64 + 1) * inner
}

/// `g_k(ω) = 1 + (−1)^k/2 ((k+1) cos(k−1)ω − (k−1) cos(k+1)ω)`.
pub fn g(k: u32, omega: f64) -> f64 {
    assert!(k >= 1, "g_k needs k >= 1");
    let kf = k as f64;
    1.0 + 0.5
        * sign_pow(k as i64)
        * ((kf + 1.0) * math::cos((kf - 1.0) * omega) - (kf - 1.0) * math::cos((kf + 1.0) * omega))
}

/// `1/(1 − cos ω)` written as `1/(2 sin²(ω/2))`.
#[inline]
pub fn inv_one_minus_cos(omega: f64) -> f64 {
    let s = math::sin(0.5 * omega);
    0.5 / (s * s)
}

/// `g_k(ω)/sin²ω` from the cosine sums
/// `1/(1−cos ω) + 2 Σ_{j odd < k} j cos jω` (k even) and
/// `−2 Σ_{j even < k} j cos jω` (k odd).
pub fn g_over_sin2(k: u32, omega: f64) -> f64 {
    assert!(k >= 2, "g_k/sin^2 needs k >= 2");
    if k % 2 == 0 {
        inv_one_minus_cos(omega) + 2.0 * weighted_cos_sum(1, k, omega)
    } else {
        -2.0 * weighted_cos_sum(2, k, omega)
    }
}

/// `Σ j cos jω` over `j = first, first+2, … < k`.
fn weighted_cos_sum(first: u32, k: u32, omega: f64) -> f64 {
    (first..k).step_by(2).map(|j| j as f64 * math::cos(j as f64 * omega)).sum()
}

/// `Σ j² sin jω` over `j = first, first+2, … < k`.
fn weighted_sin_sum(first: u32, k: u32, omega: f64) -> f64 {
    (first..k)
        .step_by(2)
        .map(|j| {
            let j = j as f64;
            j * j * math::sin(j * omega)
        })
        .sum()
}

/// `h_k(ω)/sin³ω = −(g_k/sin²)'(ω)`, from the differentiated cosine sums:
/// `sin ω/(1−cos ω)² + 2 Σ_{j odd} j² sin jω` (k even),
/// `−2 Σ_{j even} j² sin jω` (k odd).
///
/// Finite at `π`; for even `k` it grows like `4/ω³` at zero.
pub fn h_over_sin3(k: u32, omega: f64) -> f64 {
    assert!(k >= 1, "h_k/sin^3 needs k >= 1");
    if k == 1 {
        return 0.0;
    }
    if k % 2 == 0 {
        l2_kernel(omega) + 2.0 * weighted_sin_sum(1, k, omega)
    } else {
        -2.0 * weighted_sin_sum(2, k, omega)
    }
}

/// `(1 + cos ω)²/sin³ω`, computed as `cos(ω/2) / (2 sin³(ω/2))`.
pub fn l2_kernel(omega: f64) -> f64 {
    let (s, c) = math::sin_cos(0.5 * omega);
    0.5 * c / (s * s * s)
}

/// Hurwitz function
/// `f_m(ω) = −2 sin ω + (m+1)/(m−1) sin(m−1)ω − (m−1)/(m+1) sin(m+1)ω`.
///
/// `f_m = O(ω³)` at zero; below `ω = 1/(m+1)` the Taylor series is summed
/// instead, since the three sines cancel to leading order there.
pub fn f_hurwitz(m: u32, omega: f64) -> f64 {
    assert!(m >= 2, "f_m needs m >= 2");
    let mf = m as f64;
    if ((mf + 1.0) * omega).abs() < 1.0 {
        return f_hurwitz_taylor(mf, omega);
    }
    -2.0 * math::sin(omega) + (mf + 1.0) / (mf - 1.0) * math::sin((mf - 1.0) * omega)
        - (mf - 1.0) / (mf + 1.0) * math::sin((mf + 1.0) * omega)
}

fn f_hurwitz_taylor(m: f64, omega: f64) -> f64 {
    // Σ_{i≥1} (−1)^i ω^{2i+1}/(2i+1)! [−2 + (m+1)(m−1)^{2i} − (m−1)(m+1)^{2i}]
    let w2 = omega * omega;
    let lo2 = (m - 1.0) * (m - 1.0);
    let hi2 = (m + 1.0) * (m + 1.0);
    let mut pw = omega; // ω^{2i+1}/(2i+1)!
    let mut lo = 1.0; // (m−1)^{2i}
    let mut hi = 1.0;
    let mut acc = 0.0;
    for i in 1..40 {
        let n = (2 * i) as f64;
        pw *= -w2 / (n * (n + 1.0));
        lo *= lo2;
        hi *= hi2;
        let term = pw * (-2.0 + (m + 1.0) * lo - (m - 1.0) * hi);
        acc += term;
        if term.abs() <= 1e-18 * acc.abs() {
            break;
        }
    }
    acc
}

/// `f_m'(ω) = 2(1 − cos ω)(1 + 2 Σ_{j=1}^{m−1} j cos jω + (m−1) cos mω)`.
pub fn f_hurwitz_deriv(m: u32, omega: f64) -> f64 {
    assert!(m >= 2, "f_m needs m >= 2");
    let s = math::sin(0.5 * omega);
    let sum: f64 = (1..m).map(|j| j as f64 * math::cos(j as f64 * omega)).sum();
    4.0 * s * s * (1.0 + 2.0 * sum + (m - 1) as f64 * math::cos(m as f64 * omega))
}

/// `V_{r,j} = ∫₀^π ω^r cos jω dω` for `j ≥ 1`.
///
/// `V_{0,j} = 0` and `V_{1,j} = ((−1)^j − 1)/j²` are used directly; the
/// two-step recurrence `V_{r,j} = r/j² ((−1)^j π^{r−1} − (r−1) V_{r−2,j})`
/// only holds from `r = 2` on.
pub fn power_cos_moment(r: u32, j: u32) -> f64 {
    assert!(j >= 1, "V_(r,j) needs j >= 1");
    let jf = j as f64;
    let sj = sign_pow(j as i64);
    let mut v = if r % 2 == 0 { 0.0 } else { (sj - 1.0) / (jf * jf) };
    let mut rr = if r % 2 == 0 { 2 } else { 3 };
    while rr <= r {
        let rf = rr as f64;
        v = rf / (jf * jf) * (sj * math::powi(PI, rr as i32 - 1) - (rf - 1.0) * v);
        rr += 2;
    }
    v
}

/// `I_{m,k} = ∫₀^π sin^m ω cos kω dω` for even `k`,
/// `(−1)^{k/2} 2^{−m} m! π / (Γ(1 + (m−k)/2) Γ(1 + (m+k)/2))`.
///
/// A pole of either Gamma factor yields zero.
pub fn sin_power_cos_moment(m: u32, k: u32) -> Result<f64> {
    if k % 2 != 0 {
        return Err(Error::Domain { func: "sin_power_cos_moment", arg: k as f64 });
    }
    let mf = m as f64;
    let kf = k as f64;
    let mut scaled_factorial = PI;
    for i in 1..=m {
        scaled_factorial *= 0.5 * i as f64;
    }
    Ok(sign_pow((k / 2) as i64)
        * scaled_factorial
        * recip_gamma(1.0 + 0.5 * (mf - kf))
        * recip_gamma(1.0 + 0.5 * (mf + kf)))
}
