use std::time::Instant;

use crofton_core::bounds::{self, Side, WIDTH_TOLERANCE};
use crofton_core::formulas::{crofton, functional_route, hurwitz_integral, masotti, master_series, omega_minus_sin_power, sin_power};
use crofton_core::quadrature::integrate_exterior;
use crofton_core::{ConvexBody, IntegralResult, Method, QuadratureSpec, VisualFunction, VisualKind};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::input::BodySource;
use crate::output::{self, sci, val, Format};

/// A rendered report and whether every check in it passed.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

#[derive(Serialize)]
struct BodyInfo<'a> {
    body_id: &'a str,
    #[serde(rename = "K")]
    order: usize,
    length: f64,
    area: f64,
    pedal_area: f64,
    deficit: f64,
    hurwitz_limit: f64,
    steiner_x: f64,
    steiner_y: f64,
    constant_width: bool,
    min_radius_of_curvature: f64,
    min_radius_angle: f64,
}

pub fn body_info(src: &BodySource, format: Format) -> Result<Report, CliError> {
    let s = src.body.summary(WIDTH_TOLERANCE);
    let info = BodyInfo {
        body_id: &src.id,
        order: src.body.order(),
        length: s.length,
        area: s.area,
        pedal_area: s.pedal_area,
        deficit: s.deficit,
        hurwitz_limit: s.hurwitz_limit,
        steiner_x: s.steiner.0,
        steiner_y: s.steiner.1,
        constant_width: s.constant_width,
        min_radius_of_curvature: s.min_radius_of_curvature,
        min_radius_angle: s.min_radius_angle,
    };
    let text = match format {
        Format::Json => output::json(&info),
        Format::Csv => output::csv(&[&info])?,
        Format::Table => {
            let rows = [
                ("body", src.id.clone()),
                ("K", info.order.to_string()),
                ("L", val(info.length)),
                ("F", val(info.area)),
                ("A (pedal)", val(info.pedal_area)),
                ("Δ", val(info.deficit)),
                ("H", val(info.hurwitz_limit)),
                ("Steiner point", format!("({}, {})", val(info.steiner_x), val(info.steiner_y))),
                ("constant width", info.constant_width.to_string()),
                ("min p + p''", format!("{} at φ = {:.6}", val(info.min_radius_of_curvature), info.min_radius_angle)),
            ];
            let rows: Vec<Vec<String>> = rows.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            output::table(&["quantity", "value"], &rows)
        }
    };
    Ok(Report { text, ok: true })
}

fn closed_form(body: &ConvexBody, f: &VisualFunction) -> crofton_core::Result<IntegralResult> {
    let value = match f.kind() {
        VisualKind::Crofton => crofton(body),
        VisualKind::OmegaMinusSinPower(2) => masotti(body),
        VisualKind::OmegaMinusSinPower(m) => omega_minus_sin_power(body, m)?,
        VisualKind::SinPower(m) => {
            f.check_growth()?;
            sin_power(body, m)?
        }
        VisualKind::Hurwitz(m) => hurwitz_integral(body, m)?,
        VisualKind::Custom => unreachable!("the selector grammar has no custom functions"),
    };
    Ok(IntegralResult::exact(value, Method::ClosedForm, body.order()))
}

pub fn run_method(
    body: &ConvexBody,
    f: &VisualFunction,
    method: Method,
    spec: &QuadratureSpec,
) -> crofton_core::Result<IntegralResult> {
    match method {
        Method::Series => master_series(body, f, spec),
        Method::Functional => functional_route(body, f, spec),
        Method::Direct => integrate_exterior(body, f, spec),
        Method::ClosedForm => closed_form(body, f),
    }
}

#[derive(Serialize)]
struct IntegralRow<'a> {
    body_id: &'a str,
    function: &'a str,
    method: &'static str,
    value: f64,
    error_estimate: f64,
    #[serde(rename = "K")]
    order: usize,
    runtime_ms: Option<f64>,
}

#[derive(Serialize)]
struct Deviation {
    a: &'static str,
    b: &'static str,
    abs: f64,
    rel: f64,
    tolerance: f64,
    agree: bool,
}

#[derive(Serialize)]
struct IntegrateJson<'a> {
    results: Vec<IntegralRow<'a>>,
    deviations: Vec<Deviation>,
    agree: bool,
}

fn pairwise(results: &[IntegralResult], agree_tol: f64, abs_tol: f64) -> Vec<Deviation> {
    let mut out = Vec::new();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            let abs = (a.value - b.value).abs();
            let scale = a.value.abs().max(b.value.abs());
            let tolerance = agree_tol * scale + a.error_estimate + b.error_estimate + abs_tol;
            out.push(Deviation {
                a: a.method.as_str(),
                b: b.method.as_str(),
                abs,
                rel: if scale > 0.0 { abs / scale } else { 0.0 },
                tolerance,
                agree: abs <= tolerance,
            });
        }
    }
    out
}

pub struct IntegrateOptions {
    pub agree_tol: f64,
    pub timing: bool,
}

/// Runs every requested route; routes disagree when
/// `|a − b| > agree_tol·max(|a|, |b|) + err_a + err_b + abs_tol`.
pub fn integrate(
    src: &BodySource,
    f: &VisualFunction,
    methods: &[Method],
    spec: &QuadratureSpec,
    opts: &IntegrateOptions,
    format: Format,
) -> Result<Report, CliError> {
    let runs: Vec<(IntegralResult, f64)> = methods
        .par_iter()
        .map(|&m| {
            let start = Instant::now();
            let r = run_method(&src.body, f, m, spec)
                .map_err(|e| CliError::core(format!("{} via {}", f.label(), m.as_str()), e))?;
            Ok((r, start.elapsed().as_secs_f64() * 1e3))
        })
        .collect::<Vec<Result<_, CliError>>>()
        .into_iter()
        .collect::<Result<_, _>>()?;

    let label = f.label();
    let rows: Vec<IntegralRow> = runs
        .iter()
        .map(|(r, ms)| IntegralRow {
            body_id: &src.id,
            function: &label,
            method: r.method.as_str(),
            value: r.value,
            error_estimate: r.error_estimate,
            order: r.truncation,
            runtime_ms: opts.timing.then_some(*ms),
        })
        .collect();

    let results: Vec<IntegralResult> = runs.iter().map(|r| r.0).collect();
    let deviations = pairwise(&results, opts.agree_tol, spec.abs_tol);
    let ok = deviations.iter().all(|d| d.agree);

    let text = match format {
        Format::Csv => output::csv(&rows)?,
        Format::Json => output::json(&IntegrateJson { results: rows, deviations, agree: ok }),
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .zip(&runs)
                .map(|(r, (_, ms))| {
                    vec![r.method.into(), val(r.value), sci(r.error_estimate), r.order.to_string(), format!("{ms:.1}")]
                })
                .collect();
            let mut s = format!("{} on {}\n\n", label, src.id);
            s.push_str(&output::table(&["method", "value", "error", "K", "ms"], &body));
            if !deviations.is_empty() {
                let dev: Vec<Vec<String>> = deviations
                    .iter()
                    .map(|d| {
                        vec![
                            format!("{} vs {}", d.a, d.b),
                            sci(d.abs),
                            sci(d.rel),
                            sci(d.tolerance),
                            if d.agree { "ok" } else { "DISAGREE" }.into(),
                        ]
                    })
                    .collect();
                s.push('\n');
                s.push_str(&output::table(&["pair", "abs", "rel", "tolerance", ""], &dev));
            }
            s
        }
    };
    Ok(Report { text, ok })
}

#[derive(Serialize)]
struct BoundRow<'a> {
    body_id: &'a str,
    m: u32,
    bound: &'static str,
    side: &'static str,
    applicable: bool,
    integral: Option<f64>,
    bound_value: Option<f64>,
    slack: Option<f64>,
    satisfied: Option<bool>,
}

fn side_str(s: Side) -> &'static str {
    match s {
        Side::Upper => "upper",
        Side::Lower => "lower",
        Side::Equality => "equality",
    }
}

pub fn bounds(src: &BodySource, ms: &[u32], format: Format) -> Result<Report, CliError> {
    let reports = ms
        .par_iter()
        .map(|&m| bounds::report(&src.body, m).map_err(|e| CliError::core(format!("bounds for m = {m}"), e)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let finite = |applicable: bool, x: f64| applicable.then_some(x);
    let rows: Vec<BoundRow> = reports
        .iter()
        .flat_map(|r| {
            r.bounds.iter().map(move |b| BoundRow {
                body_id: &src.id,
                m: r.m,
                bound: b.name,
                side: side_str(b.side),
                applicable: b.applicable,
                integral: finite(b.applicable, b.integral),
                bound_value: finite(b.applicable, b.bound_value),
                slack: finite(b.applicable, b.slack),
                satisfied: b.applicable.then_some(b.satisfied),
            })
        })
        .collect();
    let ok = reports.iter().all(|r| r.all_satisfied());
    let text = match format {
        Format::Csv => output::csv(&rows)?,
        Format::Json => output::json(&rows),
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let opt = |x: Option<f64>, f: fn(f64) -> String| x.map(f).unwrap_or_else(|| "-".into());
                    vec![
                        r.m.to_string(),
                        r.bound.into(),
                        r.side.into(),
                        opt(r.integral, val),
                        opt(r.bound_value, val),
                        opt(r.slack, sci),
                        match r.satisfied {
                            None => "skip",
                            Some(true) => "ok",
                            Some(false) => "VIOLATED",
                        }
                        .into(),
                    ]
                })
                .collect();
            format!(
                "bounds on {}\n\n{}",
                src.id,
                output::table(&["m", "bound", "side", "integral", "bound value", "slack", ""], &body)
            )
        }
    };
    Ok(Report { text, ok })
}
