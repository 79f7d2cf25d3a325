//! Built-in identity checks: each reports a worst residual and the
//! tolerance it must meet.

use crofton_core::formulas::{
    beta_k_direct, beta_k_of, crofton, functional_route, hurwitz_decomposition_check, hurwitz_integral,
    level_set_area, m_m, m_of, m_sin_power, master_series, masotti, omega_minus_sin_beta, sin_power,
    sin_power_coefficient,
};
use crofton_core::kernels::{f_hurwitz_deriv, g, g_over_sin2, h_over_sin3};
use crofton_core::math::{LN_2, PI, TAU};
use crofton_core::quadrature::{integrate_exterior, level_set_area_direct};
use crofton_core::{ConvexBody, QuadratureSpec, Result, VisualFunction};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::output::{self, sci, Format};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

type Runner = fn(&QuadratureSpec) -> Result<f64>;

pub const CHECKS: [(&str, f64, Runner); 14] = [
    ("kernel-derivative", 1e-6, kernel_derivative),
    ("cosine-sums", 1e-12, cosine_sums),
    ("hurwitz-link", 1e-12, hurwitz_link),
    ("circle-closed-forms", 1e-10, circle_closed_forms),
    ("m-values", 1e-10, m_values),
    ("crofton-beta", 1e-10, crofton_beta),
    ("masotti-even-beta", 1e-9, masotti_even_beta),
    ("masotti-odd-beta", 1e-10, masotti_odd_beta),
    ("beta-paths", 1e-9, beta_paths),
    ("sin-power-tables", 1e-12, sin_power_tables),
    ("hurwitz-decomposition", 1e-9, hurwitz_decomposition),
    ("route-agreement", 1e-6, route_agreement),
    ("level-sets", 1e-7, level_sets),
    ("hurwitz-limit", 1e-6, hurwitz_limit),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.0)
}

/// Runs the named checks, or all of them, in battery order.
pub fn run(only: &[String], spec: &QuadratureSpec) -> std::result::Result<Vec<Check>, CliError> {
    for name in only {
        if !names().any(|n| n == name) {
            return Err(CliError::input(format!(
                "unknown check `{name}`; available: {}",
                names().collect::<Vec<_>>().join(", ")
            )));
        }
    }
    let selected: Vec<_> = CHECKS.iter().filter(|c| only.is_empty() || only.iter().any(|n| n == c.0)).collect();
    selected
        .par_iter()
        .map(|&&(name, tolerance, f)| {
            let residual = f(spec).map_err(|e| CliError::core(format!("check {name}"), e))?;
            Ok(Check { name, residual, tolerance, pass: residual <= tolerance })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn render(checks: &[Check], format: Format) -> std::result::Result<String, CliError> {
    Ok(match format {
        Format::Csv => output::csv(checks)?,
        Format::Json => output::json(&checks),
        Format::Table => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![c.name.into(), sci(c.residual), sci(c.tolerance), if c.pass { "ok" } else { "FAIL" }.into()]
                })
                .collect();
            output::table(&["check", "residual", "tolerance", ""], &rows)
        }
    })
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |i| lo + (hi - lo) * i as f64 / n as f64)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

// h_k/sin³ against a five-point difference of g_k/sin²
fn kernel_derivative(_: &QuadratureSpec) -> Result<f64> {
    let step = 1e-5;
    let mut worst: f64 = 0.0;
    for k in 2..=12u32 {
        let q = |x: f64| g_over_sin2(k, x);
        for w in grid(0.1, PI - 0.1, 200) {
            let d = (q(w - 2.0 * step) - 8.0 * q(w - step) + 8.0 * q(w + step) - q(w + 2.0 * step)) / (12.0 * step);
            worst = worst.max((h_over_sin3(k, w) + d).abs());
        }
    }
    Ok(worst)
}

fn cosine_sums(_: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 2..=12u32 {
        for w in grid(0.1, PI - 0.1, 200) {
            let s = w.sin();
            let v = g_over_sin2(k, w);
            worst = worst.max((v - g(k, w) / (s * s)).abs() / v.abs().max(1.0));
        }
    }
    Ok(worst)
}

fn hurwitz_link(_: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 2..=10u32 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for w in grid(0.0, PI, 200) {
            let rhs = 1.0 + 0.5 * sign * (f_hurwitz_deriv(m, w) + 2.0 * w.cos());
            worst = worst.max((g(m, w) - rhs).abs());
        }
    }
    Ok(worst)
}

fn circle_closed_forms(_: &QuadratureSpec) -> Result<f64> {
    let c = ConvexBody::circle(1.0)?;
    let mut worst = (crofton(&c) - PI * PI).abs();
    worst = worst.max((masotti(&c) - (16.0 * PI - PI * PI * PI)).abs());
    worst = worst.max((sin_power(&c, 3)? - 3.0 * PI * PI).abs());
    for m in 2..=8 {
        worst = worst.max((hurwitz_integral(&c, m)? - 4.0 * PI * PI).abs());
    }
    Ok(worst)
}

fn m_values(spec: &QuadratureSpec) -> Result<f64> {
    let cases = [
        (VisualFunction::crofton(), PI, 1),
        (VisualFunction::masotti(), 8.0, 2),
        (VisualFunction::omega_minus_sin_power(3)?, 12.0 * PI * LN_2 - 1.5 * PI, 3),
    ];
    let mut worst: f64 = 0.0;
    for (f, expected, m) in cases {
        worst = worst.max((m_of(&f, spec)?.value - expected).abs()).max((m_m(m)? - expected).abs());
    }
    Ok(worst)
}

fn crofton_beta(spec: &QuadratureSpec) -> Result<f64> {
    let f = VisualFunction::crofton();
    let mut worst: f64 = 0.0;
    for k in 2..=20 {
        worst = worst.max(beta_k_of(&f, k, spec)?.abs()).max(beta_k_direct(&f, k, spec)?.value.abs());
    }
    Ok(worst)
}

fn masotti_even_beta(spec: &QuadratureSpec) -> Result<f64> {
    let f = VisualFunction::masotti();
    let mut worst: f64 = 0.0;
    for k in (2..=12).step_by(2) {
        let expected = 8.0 / (1.0 - (k * k) as f64);
        worst = worst.max((beta_k_of(&f, k, spec)? - expected).abs());
        worst = worst.max((beta_k_direct(&f, k, spec)?.value - expected).abs());
    }
    Ok(worst)
}

fn masotti_odd_beta(spec: &QuadratureSpec) -> Result<f64> {
    let f = VisualFunction::masotti();
    let mut worst: f64 = 0.0;
    for k in (3..=13).step_by(2) {
        worst = worst.max(beta_k_of(&f, k, spec)?.abs()).max(beta_k_direct(&f, k, spec)?.value.abs());
    }
    Ok(worst)
}

fn beta_paths(spec: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 3..=6 {
        let f = VisualFunction::omega_minus_sin_power(m)?;
        for k in 2..=12 {
            let analytic = omega_minus_sin_beta(m, k)?;
            let split = beta_k_of(&f, k, spec)?;
            let direct = beta_k_direct(&f, k, spec)?.value;
            worst = worst.max((direct - split).abs()).max((direct - analytic).abs());
        }
    }
    Ok(worst)
}

fn sin_power_tables(_: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut check = |got: f64, want: f64| worst = worst.max((got - want).abs() / want.abs().max(1.0));
    check(m_sin_power(3)? / TAU, 0.75);
    check(sin_power_coefficient(3, 2)?, 9.0 * PI * PI / 4.0);
    check(m_sin_power(4)? / TAU, 4.0 / (3.0 * PI));
    for k in (2..=20).step_by(2) {
        let kf = k as f64;
        check(sin_power_coefficient(4, k)? / PI, 24.0 / (9.0 - kf * kf));
        if k >= 4 {
            check(sin_power_coefficient(3, k)?, 0.0);
        }
        if k >= 6 {
            check(sin_power_coefficient(5, k)?, 0.0);
        }
    }
    check(m_sin_power(5)? / TAU, 5.0 / 16.0);
    check(sin_power_coefficient(5, 2)?, 5.0 * PI * PI / 4.0);
    check(sin_power_coefficient(5, 4)?, -25.0 * PI * PI / 16.0);
    Ok(worst)
}

fn battery() -> Result<Vec<ConvexBody>> {
    Ok(vec![ConvexBody::ellipse(1.5, 1.0, 16)?, ConvexBody::random(7, 8, 3.0)?, ConvexBody::cw3(1.0, 0.05)?])
}

fn hurwitz_decomposition(_: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in battery()? {
        for m in [3, 5, 7] {
            worst = worst.max(hurwitz_decomposition_check(&b, m)?);
        }
    }
    Ok(worst)
}

fn route_agreement(spec: &QuadratureSpec) -> Result<f64> {
    let fs = [
        VisualFunction::crofton(),
        VisualFunction::masotti(),
        VisualFunction::sin_power(3)?,
        VisualFunction::hurwitz(3)?,
        VisualFunction::omega_minus_sin_power(4)?,
    ];
    let mut worst: f64 = 0.0;
    for b in battery()? {
        for f in &fs {
            let direct = integrate_exterior(&b, f, spec)?.value;
            worst = worst.max(rel(master_series(&b, f, spec)?.value, direct));
            worst = worst.max(rel(functional_route(&b, f, spec)?.value, direct));
        }
    }
    Ok(worst)
}

fn level_sets(spec: &QuadratureSpec) -> Result<f64> {
    let body = ConvexBody::ellipse(1.5, 1.0, 32)?;
    let mut worst: f64 = 0.0;
    for w in [0.5, 1.0, 2.0, 3.0] {
        worst = worst.max(rel(level_set_area(&body, w), level_set_area_direct(&body, w, spec)?));
    }
    Ok(worst)
}

// F(ω) sin²ω is even in ω with limit H; two Richardson steps in ω²
fn hurwitz_limit(spec: &QuadratureSpec) -> Result<f64> {
    let body = ConvexBody::ellipse(1.5, 1.0, 32)?;
    let mut v = [0.0; 3];
    for (i, w) in [0.2, 0.1, 0.05].into_iter().enumerate() {
        let s = f64::sin(w);
        v[i] = level_set_area_direct(&body, w, spec)? * s * s;
    }
    let r1 = (4.0 * v[1] - v[0]) / 3.0;
    let r2 = (4.0 * v[2] - v[1]) / 3.0;
    Ok(rel((16.0 * r2 - r1) / 15.0, body.hurwitz_limit()))
}
