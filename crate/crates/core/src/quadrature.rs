//! Adaptive Gauss–Kronrod quadrature on an interval and the tensor
//! quadrature over the exterior of a body.
//!
//! The 21-point Kronrod rule is open, so integrands are never evaluated at
//! the interval ends. Panel results are reduced left to right with
//! compensated summation, which makes every result independent of the order
//! in which panels were refined.

use alloc::vec::Vec;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::math::{self, KahanSum, PI, TAU};
use crate::visual::VisualFunction;

/// Tolerances and limits for the integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Width `δ` of the slivers next to `ω = π` that are integrated with a
    /// single fixed rule instead of adaptively.
    pub endpoint_margin: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-12, abs_tol: 1e-14, max_panels: 4000, endpoint_margin: 1e-2 }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_endpoint_margin(mut self, margin: f64) -> Self {
        self.endpoint_margin = margin;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 1e-13) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidSpec("rel_tol must be finite and at least 1e-13"));
        }
        if !(self.abs_tol >= 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidSpec("abs_tol must be finite and non-negative"));
        }
        if self.max_panels == 0 {
            return Err(Error::InvalidSpec("max_panels must be positive"));
        }
        if !(self.endpoint_margin > 0.0 && self.endpoint_margin <= 1e-2) {
            return Err(Error::InvalidSpec("endpoint_margin must lie in (0, 1e-2]"));
        }
        Ok(())
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Kernel series in `L²` and `c_k²`.
    Series,
    /// Tensor quadrature over the exterior of the body.
    Direct,
    /// `M(f)`, `β_k(f)` and the boundary term.
    Functional,
    /// Closed form.
    ClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Direct => "direct",
            Method::Functional => "functional",
            Method::ClosedForm => "closed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
    /// Harmonic truncation order used, 0 if not applicable.
    pub truncation: usize,
    /// Number of quadrature panels, 0 if no quadrature was involved.
    pub panels: usize,
}

impl IntegralResult {
    pub fn exact(value: f64, method: Method, truncation: usize) -> Self {
        Self { value, method, error_estimate: 0.0, truncation, panels: 0 }
    }
}

// 21-point Kronrod abscissae; the odd entries are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_416_527,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// One application of the 21-point Kronrod rule with the embedded
/// 10-point Gauss rule.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// `∫|f|` over the panel.
    mass: f64,
}

impl Panel {
    /// Error floor from rounding.
    fn floor(&self) -> f64 {
        50.0 * f64::EPSILON * self.mass
    }
}

fn gauss_kronrod_21(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(centre - x);
        let f2 = f(centre + x);
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    res_abs *= scale;
    res_asc *= scale;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * math::powf(200.0 * err / res_asc, 1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value: res_k * half, error: err, mass: res_abs }
}

fn reduce(panels: &mut [Panel]) -> (f64, f64) {
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut v = KahanSum::new();
    let mut e = KahanSum::new();
    for p in panels.iter() {
        v.add(p.value);
        e.add(p.error);
    }
    (v.value(), e.value())
}

/// `∫_a^b f` by globally adaptive 21-point Gauss–Kronrod, starting from one
/// panel.
pub fn integrate_1d(f: impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegralResult> {
    integrate_1d_panels(f, a, b, 1, spec)
}

/// As [`integrate_1d`], starting from `initial` equal panels.
///
/// On failure the error carries the best estimate and its error bound.
pub fn integrate_1d_panels(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    initial: usize,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    adaptive(f, a, b, initial, spec, false)
}

/// As [`integrate_1d_panels`], but the relative tolerance applies to
/// `∫|f|` instead of `|∫f|`. Meant for coefficient integrals that may
/// vanish.
pub fn integrate_1d_mass_relative(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    initial: usize,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    adaptive(f, a, b, initial, spec, true)
}

fn adaptive(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    initial: usize,
    spec: &QuadratureSpec,
    mass_relative: bool,
) -> Result<IntegralResult> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain { func: "integrate_1d", arg: if a.is_finite() { b } else { a } });
    }
    if a == b {
        return Ok(IntegralResult { value: 0.0, method: Method::Direct, error_estimate: 0.0, truncation: 0, panels: 0 });
    }
    let n0 = initial.max(1);
    let width = (b - a) / n0 as f64;
    let mut panels: Vec<Panel> = (0..n0)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == n0 { b } else { a + width * (i + 1) as f64 };
            gauss_kronrod_21(&f, lo, hi)
        })
        .collect();
    loop {
        let mut v = KahanSum::new();
        let mut e = KahanSum::new();
        let mut mass = KahanSum::new();
        for p in &panels {
            v.add(p.value);
            e.add(p.error);
            mass.add(p.mass);
        }
        let (value, error) = (v.value(), e.value());
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NoConvergence { value, error });
        }
        let reference = if mass_relative { mass.value() } else { value.abs() };
        if error <= spec.abs_tol.max(spec.rel_tol * reference) {
            break;
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let mid = 0.5 * (p.a + p.b);
                p.error > 1.5 * p.floor()
                    && (p.b - p.a).abs() > 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE)
            })
            .max_by(|(i, p), (j, q)| p.error.total_cmp(&q.error).then(j.cmp(i)))
            .map(|(i, _)| i);
        let Some(idx) = worst else {
            // nothing left to refine but rounding noise
            break;
        };
        if panels.len() >= spec.max_panels {
            return Err(Error::NoConvergence { value, error });
        }
        let p = panels[idx];
        let mid = 0.5 * (p.a + p.b);
        panels[idx] = gauss_kronrod_21(&f, p.a, mid);
        panels.push(gauss_kronrod_21(&f, mid, p.b));
    }
    let count = panels.len();
    let (value, error) = reduce(&mut panels);
    Ok(IntegralResult { value, method: Method::Direct, error_estimate: error, truncation: 0, panels: count })
}

/// `∫_a^b f` with the 21-point rule on `panels` equal panels and no
/// refinement. Useful for integrands that lose accuracy close to the ends.
pub fn integrate_fixed(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> IntegralResult {
    let n = panels.max(1);
    let width = (b - a) / n as f64;
    let mut ps: Vec<Panel> = (0..n)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == n { b } else { a + width * (i + 1) as f64 };
            gauss_kronrod_21(&f, lo, hi)
        })
        .collect();
    let (value, error) = reduce(&mut ps);
    IntegralResult { value, method: Method::Direct, error_estimate: error, truncation: 0, panels: n }
}

/// `∫₀^{2π} T T₁ dφ` at fixed `ω` by the periodic trapezoid rule with
/// `4K + 8` nodes, which is exact for a body of order `K`.
pub fn tangent_product_integral(body: &ConvexBody, omega: f64) -> f64 {
    let n = 4 * body.order() + 8;
    let h = TAU / n as f64;
    let mut acc = KahanSum::new();
    for i in 0..n {
        let (t, t1) = body.tangent_lengths_unchecked(h * i as f64, omega);
        acc.add(t * t1);
    }
    acc.value() * h
}

/// The body itself if the origin is known to be interior, otherwise the
/// body moved to its Steiner point. Tangent lengths do not depend on which
/// interior point is the origin.
fn centred(body: &ConvexBody) -> ConvexBody {
    if body.is_steiner_centred() || body.origin_certainly_interior() {
        body.clone()
    } else {
        body.recenter_to_steiner()
    }
}

/// `∫_{lo}^{π} w(ω) G(ω)/sin ω dω` with `G = ∫ T T₁ dφ`, adaptive on
/// `(lo, π − δ)` plus one fixed panel on the sliver `[π − δ, π)`.
fn outer_integral(
    body: &ConvexBody,
    weight: impl Fn(f64) -> f64,
    lo: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    let integrand = |w: f64| {
        let fw = weight(w);
        if fw == 0.0 {
            0.0
        } else {
            fw * tangent_product_integral(body, w) / math::sin(w)
        }
    };
    let cut = PI - spec.endpoint_margin;
    let (main, main_panels) = if lo < cut {
        let initial = 2 * body.order() + 8;
        let r = integrate_1d_panels(integrand, lo, cut, initial, spec)?;
        (r, r.panels)
    } else {
        (IntegralResult::exact(0.0, Method::Direct, 0), 0)
    };
    let sliver = gauss_kronrod_21(&integrand, lo.max(cut), PI);
    let value = main.value + sliver.value;
    let error = main.error_estimate + sliver.error + 4.0 * f64::EPSILON * value.abs();
    Ok(IntegralResult {
        value,
        method: Method::Direct,
        error_estimate: error,
        truncation: body.order(),
        panels: main_panels + 1,
    })
}

/// `∫ f(ω) dP` over the exterior of the body, by tensor quadrature in the
/// tangent-angle coordinates `(φ, ω)` where `dP = T T₁/sin ω dφ dω`.
///
/// Unless the origin is certainly interior the body is moved to its
/// Steiner point first. `f` must pass the `O(ω³)` admission test.
pub fn integrate_exterior(body: &ConvexBody, f: &VisualFunction, spec: &QuadratureSpec) -> Result<IntegralResult> {
    spec.validate()?;
    f.check_growth()?;
    let body = centred(body);
    outer_integral(&body, |w| f.eval(w), 0.0, spec)
}

/// Area enclosed by the curve of points that see the body under the angle
/// `ω0`, as `F + ∫∫_{ω > ω0} dP`.
pub fn level_set_area_direct(body: &ConvexBody, omega0: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    if !(omega0 > 0.0 && omega0 < PI) {
        return Err(Error::Domain { func: "level_set_area_direct", arg: omega0 });
    }
    let body = centred(body);
    let r = outer_integral(&body, |_| 1.0, omega0, spec)?;
    Ok(body.area() + r.value)
}
