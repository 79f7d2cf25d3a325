//! Convex bodies given by the truncated Fourier series of their support
//! function, and the geometric functionals derived from it.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::math::{self, kahan_sum, KahanSum, PI, TAU};

/// Relative tolerance on `min(p + p'')` below which a body is rejected.
pub const CONVEXITY_TOLERANCE: f64 = 1e-9;

/// Harmonic order used by the sampled presets.
pub const DEFAULT_ORDER: usize = 32;

/// A planar compact convex set, `p(φ) = a0 + Σ_{k=1}^{K} (a_k cos kφ + b_k sin kφ)`.
///
/// Immutable once built; every constructor checks `p + p'' ≥ -ε` on a dense
/// grid with local refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    a0: f64,
    coeffs: Vec<(f64, f64)>,
    min_radius: (f64, f64),
}

/// Support function and its first two derivatives at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportValue {
    pub p: f64,
    pub dp: f64,
    pub d2p: f64,
}

/// Scalar functionals of a body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodySummary {
    /// Perimeter `L`.
    pub length: f64,
    /// Area `F`.
    pub area: f64,
    /// Area enclosed by the pedal curve about the Steiner point.
    pub pedal_area: f64,
    pub steiner: (f64, f64),
    /// Isoperimetric deficit `L² − 4πF`.
    pub deficit: f64,
    /// `lim_{ω→0} F(ω) sin²ω`.
    pub hurwitz_limit: f64,
    pub constant_width: bool,
    /// Minimum of the radius of curvature `p + p''` and where it occurs.
    pub min_radius_of_curvature: f64,
    pub min_radius_angle: f64,
}

impl ConvexBody {
    /// Builds a body from `a0` and `[(a_1, b_1), (a_2, b_2), …]`.
    pub fn from_fourier(a0: f64, coeffs: Vec<(f64, f64)>) -> Result<Self> {
        if !(a0 > 0.0) || !a0.is_finite() {
            return Err(Error::NonPositiveWidth(a0));
        }
        let mut body = ConvexBody { a0, coeffs, min_radius: (0.0, a0) };
        let (phi, value) = body.minimize_radius_of_curvature();
        if value < -CONVEXITY_TOLERANCE * a0 {
            return Err(Error::NotConvex { phi, value });
        }
        body.min_radius = (phi, value);
        Ok(body)
    }

    /// Projects equispaced samples `(φ_i, p(φ_i))` covering one period onto
    /// harmonics `0..=order`.
    pub fn from_samples(samples: &[(f64, f64)], order: usize) -> Result<Self> {
        let n = samples.len();
        let need = (4 * order).max(4);
        if n < need {
            return Err(Error::TooFewSamples { need, got: n });
        }
        let step = TAU / n as f64;
        let start = samples[0].0;
        for (i, &(phi, _)) in samples.iter().enumerate() {
            if (phi - (start + step * i as f64)).abs() > 1e-9 {
                return Err(Error::IrregularSamples { index: i });
            }
        }
        let a0 = kahan_sum(samples.iter().map(|s| s.1)) / n as f64;
        let coeffs = (1..=order)
            .map(|k| {
                let k = k as f64;
                let mut a = KahanSum::new();
                let mut b = KahanSum::new();
                for &(phi, p) in samples {
                    let (s, c) = math::sin_cos(k * phi);
                    a.add(p * c);
                    b.add(p * s);
                }
                (2.0 * a.value() / n as f64, 2.0 * b.value() / n as f64)
            })
            .collect();
        Self::from_fourier(a0, coeffs)
    }

    /// Disk of radius `r` centred at the origin.
    pub fn circle(r: f64) -> Result<Self> {
        Self::from_fourier(r, Vec::new())
    }

    /// Ellipse with semi-axes `a` (along x) and `b`, projected onto `order`
    /// harmonics from `8·order` samples of `√(a²cos²φ + b²sin²φ)`.
    pub fn ellipse(a: f64, b: f64, order: usize) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Domain { func: "ellipse", arg: a });
        }
        if !(b > 0.0) {
            return Err(Error::Domain { func: "ellipse", arg: b });
        }
        let n = 8 * order.max(1);
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let phi = TAU * i as f64 / n as f64;
                let (s, c) = math::sin_cos(phi);
                (phi, math::sqrt(a * a * c * c + b * b * s * s))
            })
            .collect();
        Self::from_samples(&samples, order)
    }

    /// Constant-width body `p = a0 + a3 cos 3φ`.
    pub fn cw3(a0: f64, a3: f64) -> Result<Self> {
        Self::from_fourier(a0, alloc::vec![(0.0, 0.0), (0.0, 0.0), (a3, 0.0)])
    }

    /// Reproducible random body with `a0 = 1`, harmonics up to `order`
    /// decaying like `k^-decay`, and a random Steiner point.
    ///
    /// The harmonics are rescaled so that `Σ (k²−1)|c_k| = 0.6`, which keeps
    /// `p + p'' ≥ 0.4` everywhere.
    pub fn random(seed: u64, order: usize, decay: f64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs = Vec::with_capacity(order);
        for k in 1..=order {
            let scale = if k == 1 { 0.5 } else { math::powf(k as f64, -decay) };
            let a = rng.random_range(-1.0..1.0) * scale;
            let b = rng.random_range(-1.0..1.0) * scale;
            coeffs.push((a, b));
        }
        let weight: f64 = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &(a, b))| {
                let k = (i + 1) as f64;
                (k * k - 1.0) * math::sqrt(a * a + b * b)
            })
            .sum();
        if weight > 0.0 {
            let s = 0.6 / weight;
            for c in coeffs.iter_mut().skip(1) {
                c.0 *= s;
                c.1 *= s;
            }
        }
        Self::from_fourier(1.0, coeffs)
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// `[(a_1, b_1), …, (a_K, b_K)]`.
    pub fn coeffs(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `(a_k, b_k)`, zero beyond the truncation order.
    pub fn harmonic(&self, k: usize) -> (f64, f64) {
        if k == 0 {
            return (self.a0, 0.0);
        }
        self.coeffs.get(k - 1).copied().unwrap_or((0.0, 0.0))
    }

    /// Harmonic energy `c_k² = a_k² + b_k²`.
    pub fn c2(&self, k: usize) -> f64 {
        let (a, b) = self.harmonic(k);
        a * a + b * b
    }

    /// `p`, `p'` and `p''` at `phi`, evaluated termwise.
    pub fn support(&self, phi: f64) -> SupportValue {
        let (s1, c1) = math::sin_cos(phi);
        let (mut sk, mut ck) = (s1, c1);
        let mut p = self.a0;
        let mut dp = 0.0;
        let mut d2p = 0.0;
        for (i, &(a, b)) in self.coeffs.iter().enumerate() {
            let k = (i + 1) as f64;
            let even = a * ck + b * sk;
            p += even;
            dp += k * (b * ck - a * sk);
            d2p -= k * k * even;
            // rotate (cos kφ, sin kφ) to k + 1
            let next_c = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = next_c;
        }
        SupportValue { p, dp, d2p }
    }

    pub fn support_value(&self, phi: f64) -> f64 {
        self.support(phi).p
    }

    /// Radius of curvature `p + p''` at `phi`.
    pub fn radius_of_curvature(&self, phi: f64) -> f64 {
        let s = self.support(phi);
        s.p + s.d2p
    }

    fn minimize_radius_of_curvature(&self) -> (f64, f64) {
        let n = (32 * self.order()).max(64);
        let h = TAU / n as f64;
        let values: Vec<f64> = (0..n).map(|i| self.radius_of_curvature(h * i as f64)).collect();
        let mut minima: Vec<usize> = (0..n)
            .filter(|&i| {
                let prev = values[(i + n - 1) % n];
                let next = values[(i + 1) % n];
                values[i] <= prev && values[i] <= next
            })
            .collect();
        minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        minima.truncate(8);

        let mut best = (0.0, values[0]);
        for (i, &v) in values.iter().enumerate() {
            if v < best.1 {
                best = (h * i as f64, v);
            }
        }
        for i in minima {
            let centre = h * i as f64;
            let (phi, v) = golden_section(|x| self.radius_of_curvature(x), centre - h, centre + h);
            if v < best.1 {
                best = (math::wrap_angle(phi), v);
            }
        }
        best
    }

    /// `(φ, min(p + p''))` found at construction.
    pub fn convexity_margin(&self) -> (f64, f64) {
        self.min_radius
    }

    /// Perimeter `L = 2π a0`.
    pub fn length(&self) -> f64 {
        TAU * self.a0
    }

    /// Area `F = L²/4π − (π/2) Σ_{k≥2} (k²−1) c_k²`.
    pub fn area(&self) -> f64 {
        let l = self.length();
        l * l / (4.0 * PI) - 0.5 * PI * self.weighted_energy(|k| k * k - 1.0)
    }

    /// `½∫(p² − p'²) dφ` by the periodic trapezoid rule, exact for the
    /// truncated series.
    pub fn area_by_quadrature(&self) -> f64 {
        let n = 4 * self.order() + 8;
        let h = TAU / n as f64;
        0.5 * h
            * kahan_sum((0..n).map(|i| {
                let s = self.support(h * i as f64);
                s.p * s.p - s.dp * s.dp
            }))
    }

    /// Area of the pedal curve about the Steiner point,
    /// `π a0² + (π/2) Σ_{k≥2} c_k²`.
    pub fn pedal_area(&self) -> f64 {
        PI * self.a0 * self.a0 + 0.5 * PI * self.weighted_energy(|_| 1.0)
    }

    /// Isoperimetric deficit `L² − 4πF = 2π² Σ_{k≥2} (k²−1) c_k²`.
    pub fn deficit(&self) -> f64 {
        2.0 * PI * PI * self.weighted_energy(|k| k * k - 1.0)
    }

    /// `H = lim_{ω→0} F(ω) sin²ω = L²/π + 2π Σ_{k even} c_k²`.
    pub fn hurwitz_limit(&self) -> f64 {
        let l = self.length();
        let even: f64 = kahan_sum((2..=self.order()).step_by(2).map(|k| self.c2(k)));
        l * l / PI + 2.0 * PI * even
    }

    /// `Σ_{k≥2} w(k) c_k²`.
    pub fn weighted_energy(&self, w: impl Fn(f64) -> f64) -> f64 {
        kahan_sum((2..=self.order()).map(|k| w(k as f64) * self.c2(k)))
    }

    /// Steiner point `(a_1, b_1)`.
    pub fn steiner_point(&self) -> (f64, f64) {
        self.harmonic(1)
    }

    /// The same body with the origin moved to its Steiner point.
    pub fn recenter_to_steiner(&self) -> ConvexBody {
        let mut coeffs = self.coeffs.clone();
        if let Some(first) = coeffs.first_mut() {
            *first = (0.0, 0.0);
        }
        ConvexBody { a0: self.a0, coeffs, min_radius: self.min_radius }
    }

    pub fn is_steiner_centred(&self) -> bool {
        self.harmonic(1) == (0.0, 0.0)
    }

    /// True iff every even harmonic `k ≥ 2` has `c_k ≤ tol·a0`.
    pub fn is_constant_width(&self, tol: f64) -> bool {
        self.max_even_harmonic() <= tol * self.a0
    }

    pub(crate) fn max_even_harmonic(&self) -> f64 {
        (2..=self.order())
            .step_by(2)
            .map(|k| math::sqrt(self.c2(k)))
            .fold(0.0, f64::max)
    }

    /// Sufficient test that the origin lies in the interior:
    /// `a0 > Σ_{k≥1} c_k`.
    pub fn origin_certainly_interior(&self) -> bool {
        self.a0 > self.harmonic_radius_sum()
    }

    fn harmonic_radius_sum(&self) -> f64 {
        (1..=self.order()).map(|k| math::sqrt(self.c2(k))).sum()
    }

    /// Tangent lengths `(T, T₁)` from the exterior point with coordinates
    /// `(φ, ω)` to its two points of tangency.
    ///
    /// The origin must be interior: either the body is centred at its
    /// Steiner point, or `a0 > Σ c_k` holds.
    pub fn tangent_lengths(&self, phi: f64, omega: f64) -> Result<(f64, f64)> {
        if !(omega > 0.0 && omega < PI) {
            return Err(Error::Domain { func: "tangent_lengths", arg: omega });
        }
        if !self.is_steiner_centred() && !self.origin_certainly_interior() {
            return Err(Error::OriginNotInterior {
                a0: self.a0,
                radius_sum: self.harmonic_radius_sum(),
            });
        }
        Ok(self.tangent_lengths_unchecked(phi, omega))
    }

    pub(crate) fn tangent_lengths_unchecked(&self, phi: f64, omega: f64) -> (f64, f64) {
        let (sw, cw) = math::sin_cos(omega);
        let s = self.support(phi);
        let s1 = self.support(PI + phi - omega);
        let t = (s.p * cw - s.dp * sw + s1.p) / sw;
        let t1 = (s1.p * cw + s1.dp * sw + s.p) / sw;
        (t, t1)
    }

    /// The exterior point whose first tangent has outer normal angle `phi`
    /// and which sees the body under the angle `omega`.
    pub fn exterior_point(&self, phi: f64, omega: f64) -> Result<(f64, f64)> {
        if !(omega > 0.0 && omega < PI) {
            return Err(Error::Domain { func: "exterior_point", arg: omega });
        }
        let sw = math::sin(omega);
        let p = self.support_value(phi);
        let p1 = self.support_value(PI + phi - omega);
        let (s, c) = math::sin_cos(phi);
        let (sd, cd) = math::sin_cos(phi - omega);
        Ok((-(p * sd + p1 * s) / sw, (p * cd + p1 * c) / sw))
    }

    /// Fourier coefficients `(α_k, β_k) = (1−k²)(a_k, b_k)` of the radius of
    /// curvature, for `k = 1..=K`; the constant term is `a0`.
    pub fn curvature_radius_coeffs(&self) -> Vec<(f64, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let k = (i + 1) as f64;
                ((1.0 - k * k) * a, (1.0 - k * k) * b)
            })
            .collect()
    }

    /// The body rotated by `theta` about the origin.
    pub fn rotated(&self, theta: f64) -> ConvexBody {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let (s, c) = math::sin_cos((i + 1) as f64 * theta);
                (a * c - b * s, a * s + b * c)
            })
            .collect();
        let (phi, v) = self.min_radius;
        ConvexBody { a0: self.a0, coeffs, min_radius: (math::wrap_angle(phi + theta), v) }
    }

    /// The body translated by `(dx, dy)`.
    pub fn translated(&self, dx: f64, dy: f64) -> ConvexBody {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push((0.0, 0.0));
        }
        coeffs[0].0 += dx;
        coeffs[0].1 += dy;
        ConvexBody { a0: self.a0, coeffs, min_radius: self.min_radius }
    }

    /// The body with every length multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<ConvexBody> {
        if !(s > 0.0) {
            return Err(Error::Domain { func: "scaled", arg: s });
        }
        let coeffs = self.coeffs.iter().map(|&(a, b)| (a * s, b * s)).collect();
        let (phi, v) = self.min_radius;
        Ok(ConvexBody { a0: self.a0 * s, coeffs, min_radius: (phi, v * s) })
    }

    /// The body whose harmonics `k ≥ 2` are multiplied by `t ∈ [0, 1]`,
    /// interpolating between the disk of the same perimeter and `self`.
    pub fn with_harmonics_scaled(&self, t: f64) -> Result<ConvexBody> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if i == 0 { (a, b) } else { (a * t, b * t) })
            .collect();
        Self::from_fourier(self.a0, coeffs)
    }

    pub fn summary(&self, width_tol: f64) -> BodySummary {
        BodySummary {
            length: self.length(),
            area: self.area(),
            pedal_area: self.pedal_area(),
            steiner: self.steiner_point(),
            deficit: self.deficit(),
            hurwitz_limit: self.hurwitz_limit(),
            constant_width: self.is_constant_width(width_tol),
            min_radius_of_curvature: self.min_radius.1,
            min_radius_angle: self.min_radius.0,
        }
    }
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
