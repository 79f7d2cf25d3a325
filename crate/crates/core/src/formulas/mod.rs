//! Series and functional evaluation of `∫ f(ω) dP`, plus closed forms.
//!
//! Both routes truncate the harmonic sum at the order `K` of the body,
//! which is exact for the trigonometric-polynomial bodies used here.

mod closed;

pub use closed::*;

use alloc::vec::Vec;

use crate::body::ConvexBody;
use crate::error::Result;
use crate::kernels;
use crate::math::{self, KahanSum, PI, TAU};
use crate::quadrature::{integrate_1d_mass_relative, IntegralResult, Method, QuadratureSpec};
use crate::visual::VisualFunction;

/// The coefficients of a series evaluation
/// `l2_coeff·L²/2π + π Σ_{k≥2} ck_coeffs[k−2]·c_k² + boundary_term`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTerms {
    pub l2_coeff: f64,
    /// Index 0 holds the coefficient of `π c_2²`.
    pub ck_coeffs: Vec<f64>,
    pub boundary_term: f64,
}

impl SeriesTerms {
    /// Coefficient of `π c_k²`; zero beyond the stored range.
    pub fn ck(&self, k: usize) -> f64 {
        if k < 2 {
            0.0
        } else {
            self.ck_coeffs.get(k - 2).copied().unwrap_or(0.0)
        }
    }

    pub fn total(&self, body: &ConvexBody) -> f64 {
        let l = body.length();
        let mut acc = KahanSum::new();
        acc.add(self.l2_coeff * l * l / TAU);
        for k in 2..=body.order() {
            acc.add(PI * self.ck(k) * body.c2(k));
        }
        acc.add(self.boundary_term);
        acc.value()
    }
}

/// Initial panel count for a kernel oscillating like `cos kω` on `(0, π)`.
fn panels_for(k: usize) -> usize {
    (4 * k).max(4)
}

/// Kernel-series coefficients of `∫ f dP`: `∫ f (1+cos ω)²/sin³ω` and
/// `∫ f h_k/sin³ω` for `k = 2..=order`. Returns the terms and the summed
/// quadrature error of the coefficients.
pub fn master_series_terms(f: &VisualFunction, order: usize, spec: &QuadratureSpec) -> Result<(SeriesTerms, f64, usize)> {
    f.check_growth()?;
    let l2 = integrate_1d_mass_relative(|w| f.eval(w) * kernels::l2_kernel(w), 0.0, PI, 4, spec)?;
    let mut err = l2.error_estimate;
    let mut panels = l2.panels;
    let mut ck = Vec::with_capacity(order.saturating_sub(1));
    for k in 2..=order {
        let r = integrate_1d_mass_relative(|w| f.eval(w) * kernels::h_over_sin3(k as u32, w), 0.0, PI, panels_for(k), spec)?;
        err += r.error_estimate;
        panels += r.panels;
        ck.push(r.value);
    }
    Ok((SeriesTerms { l2_coeff: l2.value, ck_coeffs: ck, boundary_term: 0.0 }, err, panels))
}

/// `∫ f dP` from the kernel series in `L²` and the `c_k²`.
pub fn master_series(body: &ConvexBody, f: &VisualFunction, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let (terms, err, panels) = master_series_terms(f, body.order(), spec)?;
    let value = terms.total(body);
    let l = body.length();
    let scale = l * l / TAU + PI * (2..=body.order()).map(|k| body.c2(k)).sum::<f64>();
    Ok(IntegralResult {
        value,
        method: Method::Series,
        error_estimate: err * scale.max(1.0),
        truncation: body.order(),
        panels,
    })
}

/// `M(f) = ∫₀^π f'(ω)/(1 − cos ω) dω`.
pub fn m_of(f: &VisualFunction, spec: &QuadratureSpec) -> Result<IntegralResult> {
    integrate_1d_mass_relative(|w| f.deriv(w) * kernels::inv_one_minus_cos(w), 0.0, PI, 4, spec)
}

/// `∫₀^π f'(ω) cos jω dω` for `j = 1..=n`.
fn derivative_cos_moments(f: &VisualFunction, n: usize, spec: &QuadratureSpec) -> Result<(Vec<f64>, f64)> {
    let mut out = Vec::with_capacity(n);
    let mut err = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let r = integrate_1d_mass_relative(|w| f.deriv(w) * math::cos(jf * w), 0.0, PI, panels_for(j), spec)?;
        err += r.error_estimate;
        out.push(r.value);
    }
    Ok((out, err))
}

/// `β_k` from `M(f)` and the moments `C_j = ∫ f' cos jω`:
/// `M + 2 Σ_{j odd<k} j C_j` (k even), `−2 Σ_{j even<k} j C_j` (k odd).
fn beta_from_moments(k: usize, m: f64, moments: &[f64]) -> f64 {
    let mut acc = KahanSum::new();
    let first = if k % 2 == 0 { 1 } else { 2 };
    for j in (first..k).step_by(2) {
        acc.add(2.0 * j as f64 * moments[j - 1]);
    }
    if k % 2 == 0 {
        m + acc.value()
    } else {
        -acc.value()
    }
}

/// `β_k(f) = ∫₀^π f'(ω) g_k(ω)/sin²ω dω`, `k ≥ 2`, through the cosine-sum
/// split of `g_k/sin²ω`.
pub fn beta_k_of(f: &VisualFunction, k: usize, spec: &QuadratureSpec) -> Result<f64> {
    assert!(k >= 2, "beta_k needs k >= 2");
    let m = if k % 2 == 0 { m_of(f, spec)?.value } else { 0.0 };
    let (moments, _) = derivative_cos_moments(f, k - 1, spec)?;
    Ok(beta_from_moments(k, m, &moments))
}

/// `β_k(f)` by quadrature of `f' g_k / sin²ω`, dividing `g_k` by `sin²ω`.
///
/// `g_k` has a double zero at `π`, and for odd `k` also at `0`, where it
/// is symmetric about `π/2`. With `x = π − ω` (k even) resp.
/// `x = min(ω, π − ω)` (k odd) it is evaluated as
/// `(k+1) sin²((k−1)x/2) − (k−1) sin²((k+1)x/2)`, which keeps full relative
/// accuracy next to the zero; the denominator is `sin²x`.
pub fn beta_k_direct(f: &VisualFunction, k: usize, spec: &QuadratureSpec) -> Result<IntegralResult> {
    assert!(k >= 2, "beta_k needs k >= 2");
    let kf = k as f64;
    let integrand = |w: f64| {
        let x = if k % 2 == 0 { PI - w } else { w.min(PI - w) };
        let a = math::sin(0.5 * (kf - 1.0) * x);
        let b = math::sin(0.5 * (kf + 1.0) * x);
        let gk = (kf + 1.0) * a * a - (kf - 1.0) * b * b;
        let s = math::sin(x);
        f.deriv(w) * gk / (s * s)
    };
    integrate_1d_mass_relative(integrand, 0.0, PI, panels_for(k), spec)
}

/// `M(f)` and `β_2..=β_order` for the functional route.
pub fn functional_terms(f: &VisualFunction, order: usize, spec: &QuadratureSpec) -> Result<(f64, Vec<f64>, f64)> {
    let m = m_of(f, spec)?;
    let (moments, err) = derivative_cos_moments(f, order.saturating_sub(1), spec)?;
    let betas = (2..=order).map(|k| beta_from_moments(k, m.value, &moments)).collect();
    Ok((m.value, betas, m.error_estimate + err))
}

/// `∫ f dP = −f(π) F + M(f) L²/2π + π Σ β_k(f) c_k²`.
pub fn functional_route(body: &ConvexBody, f: &VisualFunction, spec: &QuadratureSpec) -> Result<IntegralResult> {
    f.check_growth()?;
    let (m, betas, err) = functional_terms(f, body.order(), spec)?;
    let terms = SeriesTerms { l2_coeff: m, ck_coeffs: betas, boundary_term: -f.value_at_pi() * body.area() };
    let l = body.length();
    Ok(IntegralResult {
        value: terms.total(body),
        method: Method::Functional,
        error_estimate: err * (l * l / TAU).max(1.0),
        truncation: body.order(),
        panels: 0,
    })
}

/// Area `F(ω)` enclosed by the curve of points seeing the body under the
/// angle `ω`:
/// `F(ω) sin²ω = L²/2π (1 + cos ω) + π Σ c_k² g_k(ω)`.
pub fn level_set_area(body: &ConvexBody, omega: f64) -> f64 {
    // divided through by sin²ω, with (1 + cos ω)/sin²ω = 1/(1 − cos ω)
    let l = body.length();
    let mut acc = KahanSum::new();
    acc.add(l * l / TAU * kernels::inv_one_minus_cos(omega));
    for k in 2..=body.order() {
        acc.add(PI * body.c2(k) * kernels::g_over_sin2(k as u32, omega));
    }
    acc.value()
}
