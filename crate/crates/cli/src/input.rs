//! Body sources, function selectors and method lists.

use std::path::Path;

use crofton_core::body::DEFAULT_ORDER;
use crofton_core::{ConvexBody, Error, Method, VisualFunction};
use serde::Deserialize;

use crate::error::CliError;

pub const RANDOM_ORDER: usize = 8;
pub const RANDOM_DECAY: f64 = 3.0;

/// A parsed body and the identifier used for it in reports.
#[derive(Debug, Clone)]
pub struct BodySource {
    pub id: String,
    pub body: ConvexBody,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BodyFile {
    a0: f64,
    coeffs: Vec<[f64; 2]>,
}

const PRESETS: [&str; 4] = ["circle", "ellipse", "cw3", "random"];

/// Accepts `name:args`, `name(args)`, a bare preset name, or a path to a
/// JSON body file.
pub fn parse_body(src: &str, seed: u64) -> Result<BodySource, CliError> {
    let src = src.trim();
    let (name, args) = split_preset(src);
    if PRESETS.contains(&name) {
        let body = preset(name, args, seed).map_err(|e| match e {
            CliError::Core { source, .. } => CliError::core(format!("preset {src}"), source),
            other => other,
        })?;
        let id = match (name, args) {
            ("random", None) => format!("random:{seed},{RANDOM_ORDER},{RANDOM_DECAY}"),
            _ => src.to_string(),
        };
        return Ok(BodySource { id, body });
    }
    let path = Path::new(src);
    if !path.exists() {
        return Err(CliError::input(format!(
            "{src}: not a preset (circle, ellipse, cw3, random) and no such file"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: src.into(), source })?;
    let body = body_from_json(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::input(format!("{src}: {msg}")),
        CliError::Core { context, source } => CliError::core(format!("{src}: {context}"), source),
        other => other,
    })?;
    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| src.into());
    Ok(BodySource { id, body })
}

pub fn body_from_json(text: &str) -> Result<ConvexBody, CliError> {
    let file: BodyFile = serde_json::from_str(text).map_err(|e| CliError::input(e.to_string()))?;
    let coeffs = file.coeffs.iter().map(|&[a, b]| (a, b)).collect();
    ConvexBody::from_fourier(file.a0, coeffs).map_err(|e| {
        let field = match e {
            Error::NonPositiveWidth(_) => "field a0",
            _ => "field coeffs",
        };
        CliError::core(field, e)
    })
}

fn split_preset(src: &str) -> (&str, Option<&str>) {
    if let Some(open) = src.find('(') {
        if let Some(inner) = src[open + 1..].strip_suffix(')') {
            return (&src[..open], Some(inner));
        }
    }
    match src.split_once(':') {
        Some((name, args)) => (name, Some(args)),
        None => (src, None),
    }
}

fn numbers(args: Option<&str>, preset: &str) -> Result<Vec<f64>, CliError> {
    let Some(args) = args else { return Ok(Vec::new()) };
    args.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("preset {preset}: cannot parse `{}` as a number", s.trim())))
        })
        .collect()
}

fn integer(x: f64, what: &str) -> Result<u64, CliError> {
    if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53) {
        Ok(x as u64)
    } else {
        Err(CliError::input(format!("{what} must be a non-negative integer, got {x}")))
    }
}

fn preset(name: &str, args: Option<&str>, seed: u64) -> Result<ConvexBody, CliError> {
    let v = numbers(args, name)?;
    let arity = |lo: usize, hi: usize| {
        if v.len() < lo || v.len() > hi {
            Err(CliError::input(format!("preset {name} takes {lo} to {hi} arguments, got {}", v.len())))
        } else {
            Ok(())
        }
    };
    let built = match name {
        "circle" => {
            arity(0, 1)?;
            ConvexBody::circle(v.first().copied().unwrap_or(1.0))
        }
        "ellipse" => {
            arity(2, 3)?;
            let order = match v.get(2) {
                Some(&k) => integer(k, "ellipse order")? as usize,
                None => DEFAULT_ORDER,
            };
            ConvexBody::ellipse(v[0], v[1], order)
        }
        "cw3" => {
            arity(2, 2)?;
            ConvexBody::cw3(v[0], v[1])
        }
        "random" => {
            arity(0, 3)?;
            let seed = match v.first() {
                Some(&s) => integer(s, "random seed")?,
                None => seed,
            };
            let order = match v.get(1) {
                Some(&k) => integer(k, "random order")? as usize,
                None => RANDOM_ORDER,
            };
            ConvexBody::random(seed, order, v.get(2).copied().unwrap_or(RANDOM_DECAY))
        }
        _ => unreachable!("preset list and match arms out of sync"),
    };
    built.map_err(|e| CliError::core(format!("preset {name}"), e))
}

/// `crofton | masotti | sinpow:m | hurwitz:m | omspow:m`.
pub fn parse_function(sel: &str) -> Result<VisualFunction, CliError> {
    let sel = sel.trim();
    let order = |s: &str| {
        s.parse::<u32>().map_err(|_| CliError::input(format!("function {sel}: `{s}` is not a non-negative integer")))
    };
    let built = match sel.split_once(':') {
        None if sel == "crofton" => Ok(VisualFunction::crofton()),
        None if sel == "masotti" => Ok(VisualFunction::masotti()),
        Some(("sinpow", m)) => VisualFunction::sin_power(order(m)?),
        Some(("hurwitz", m)) => VisualFunction::hurwitz(order(m)?),
        Some(("omspow", m)) => VisualFunction::omega_minus_sin_power(order(m)?),
        _ => {
            return Err(CliError::input(format!(
                "unknown function `{sel}` (expected crofton, masotti, sinpow:m, hurwitz:m or omspow:m)"
            )))
        }
    };
    built.map_err(|e| CliError::core(format!("function {sel}"), e))
}

pub const ALL_METHODS: [Method; 4] = [Method::ClosedForm, Method::Series, Method::Functional, Method::Direct];

/// A comma-separated list of `series`, `direct`, `functional`, `closed`,
/// or `all`.
pub fn parse_methods(list: &str) -> Result<Vec<Method>, CliError> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim) {
        let methods: &[Method] = match item {
            "all" => &ALL_METHODS,
            "series" => &[Method::Series],
            "direct" => &[Method::Direct],
            "functional" => &[Method::Functional],
            "closed" => &[Method::ClosedForm],
            _ => return Err(CliError::input(format!("unknown method `{item}`"))),
        };
        for m in methods {
            if !out.contains(m) {
                out.push(*m);
            }
        }
    }
    Ok(out)
}

/// `3`, `1..5` (inclusive), `1..=5` or `2,4,6`.
pub fn parse_range(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::input(format!("cannot parse exponent range `{s}`"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}
