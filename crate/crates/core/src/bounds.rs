//! Inequalities for `∫ (ω^m − sin^m ω) dP` and `∫ sin^m ω dP`, evaluated
//! from closed forms only.

use alloc::vec::Vec;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::formulas::{m_m, m_sin_power, masotti, omega_minus_sin_leading, omega_minus_sin_power, sin_power};
use crate::math::{self, PI, TAU};

/// Relative tolerance for calling a bound satisfied.
pub const SLACK_TOLERANCE: f64 = 1e-9;

/// Relative tolerance on the even harmonics for constant width.
pub const WIDTH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `integral ≤ bound`
    Upper,
    /// `integral ≥ bound`
    Lower,
    /// `integral = bound`
    Equality,
}

/// Which bodies and exponents a bound is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    All,
    ConstantWidth,
    MEq2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRecord {
    pub name: &'static str,
    pub side: Side,
    pub applicability: Applicability,
    pub applicable: bool,
    pub integral: f64,
    pub bound_value: f64,
    /// Signed distance to violation: `bound − integral` for upper bounds,
    /// `integral − bound` for lower bounds, `−|integral − bound|` for
    /// equalities.
    pub slack: f64,
    pub satisfied: bool,
}

impl BoundRecord {
    fn new(name: &'static str, side: Side, applicability: Applicability, integral: f64, bound: f64) -> Self {
        let slack = match side {
            Side::Upper => bound - integral,
            Side::Lower => integral - bound,
            Side::Equality => -(integral - bound).abs(),
        };
        let tol = SLACK_TOLERANCE * bound.abs().max(1.0);
        BoundRecord {
            name,
            side,
            applicability,
            applicable: true,
            integral,
            bound_value: bound,
            slack,
            satisfied: slack >= -tol,
        }
    }

    fn not_applicable(name: &'static str, side: Side, applicability: Applicability) -> Self {
        BoundRecord {
            name,
            side,
            applicability,
            applicable: false,
            integral: f64::NAN,
            bound_value: f64::NAN,
            slack: f64::NAN,
            satisfied: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub m: u32,
    pub integral_value: f64,
    pub bounds: Vec<BoundRecord>,
}

impl BoundsReport {
    /// True when every applicable bound holds.
    pub fn all_satisfied(&self) -> bool {
        self.bounds.iter().filter(|b| b.applicable).all(|b| b.satisfied)
    }
}

/// `∫ (ω^m − sin^m ω) dP ≤ −π^m F + M_m L²/2π`, with equality for disks.
pub fn upper_bound(body: &ConvexBody, m: u32) -> Result<BoundRecord> {
    let integral = omega_minus_sin_power(body, m)?;
    let bound = omega_minus_sin_leading(body, m)?;
    Ok(BoundRecord::new("upper", Side::Upper, Applicability::All, integral, bound))
}

/// The three lower bounds for `∫ (ω² − sin²ω) dP`:
/// `(16 − π²)F`, `−π²F + 4L²/π − 4/3 (H − L²/π)` and
/// `(16 − π²)F + 32/3 (A − F)`.
pub fn masotti_lower_bounds(body: &ConvexBody) -> Vec<BoundRecord> {
    let integral = masotti(body);
    let l = body.length();
    let f = body.area();
    let santalo = (16.0 - PI * PI) * f;
    let hurwitz = -PI * PI * f + 4.0 * l * l / PI - 4.0 / 3.0 * (body.hurwitz_limit() - l * l / PI);
    let pedal = santalo + 32.0 / 3.0 * (body.pedal_area() - f);
    alloc::vec![
        BoundRecord::new("santalo", Side::Lower, Applicability::MEq2, integral, santalo),
        BoundRecord::new("hurwitz-limit", Side::Lower, Applicability::MEq2, integral, hurwitz),
        BoundRecord::new("pedal-area", Side::Lower, Applicability::MEq2, integral, pedal),
    ]
}

fn require_constant_width(body: &ConvexBody) -> Result<()> {
    if body.is_constant_width(WIDTH_TOLERANCE) {
        Ok(())
    } else {
        Err(Error::NotConstantWidth { max_even: body.max_even_harmonic() })
    }
}

/// For bodies of constant width, the chain
/// `∫ (ω^m − sin^m ω) dP ≥ B ≥ π^{m−1}/4 (3/4)^m Δ ≥ 0` with
/// `B = −π^m F + M_m L²/2π − π^{m−1}/4 (1 − (3/4)^m) Δ`.
///
/// Returns one record per inequality.
pub fn constant_width_lower_bound(body: &ConvexBody, m: u32) -> Result<Vec<BoundRecord>> {
    require_constant_width(body)?;
    let integral = omega_minus_sin_power(body, m)?;
    let q = math::powi(0.75, m as i32);
    let pm1 = math::powi(PI, m as i32 - 1);
    let delta = body.deficit();
    let bound = omega_minus_sin_leading(body, m)? - 0.25 * pm1 * (1.0 - q) * delta;
    let margin = 0.25 * pm1 * q * delta;
    Ok(alloc::vec![
        BoundRecord::new("constant-width", Side::Lower, Applicability::ConstantWidth, integral, bound),
        BoundRecord::new("constant-width-margin", Side::Lower, Applicability::ConstantWidth, bound, margin),
    ])
}

/// For bodies of constant width, `∫ sin^m ω dP = M(sin^m) L²/2π`.
///
/// Satisfied when the two sides agree to `1e-9 L²`.
pub fn sin_power_constant_width(body: &ConvexBody, m: u32) -> Result<BoundRecord> {
    require_constant_width(body)?;
    let integral = sin_power(body, m)?;
    let l = body.length();
    let value = m_sin_power(m)? * l * l / TAU;
    let mut record = BoundRecord::new("sin-power-constant-width", Side::Equality, Applicability::ConstantWidth, integral, value);
    record.satisfied = (integral - value).abs() <= SLACK_TOLERANCE * l * l;
    Ok(record)
}

/// Every bound that applies to `(body, m)`; inapplicable ones are listed
/// with `applicable = false`.
pub fn report(body: &ConvexBody, m: u32) -> Result<BoundsReport> {
    m_m(m)?;
    let upper = upper_bound(body, m)?;
    let integral_value = upper.integral;
    let mut bounds = alloc::vec![upper];
    if m == 2 {
        bounds.extend(masotti_lower_bounds(body));
    } else {
        for name in ["santalo", "hurwitz-limit", "pedal-area"] {
            bounds.push(BoundRecord::not_applicable(name, Side::Lower, Applicability::MEq2));
        }
    }
    match constant_width_lower_bound(body, m) {
        Ok(records) => bounds.extend(records),
        Err(Error::NotConstantWidth { .. }) => {
            bounds.push(BoundRecord::not_applicable("constant-width", Side::Lower, Applicability::ConstantWidth));
            bounds.push(BoundRecord::not_applicable("constant-width-margin", Side::Lower, Applicability::ConstantWidth));
        }
        Err(e) => return Err(e),
    }
    if m >= 3 {
        match sin_power_constant_width(body, m) {
            Ok(r) => bounds.push(r),
            Err(Error::NotConstantWidth { .. }) => bounds.push(BoundRecord::not_applicable(
                "sin-power-constant-width",
                Side::Equality,
                Applicability::ConstantWidth,
            )),
            Err(e) => return Err(e),
        }
    }
    Ok(BoundsReport { m, integral_value, bounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn circle() -> ConvexBody {
        ConvexBody::circle(1.0).unwrap()
    }

    fn astroid_parallel() -> ConvexBody {
        ConvexBody::from_fourier(1.0, vec![(0.0, 0.0), (0.1, 0.0)]).unwrap()
    }

    #[test]
    fn circle_upper_bound_is_tight() {
        for m in 1..=8 {
            let r = upper_bound(&circle(), m).unwrap();
            assert!(r.satisfied && r.slack.abs() <= 1e-9, "m={m} {r:?}");
        }
    }

    #[test]
    fn strict_upper_bound_off_the_circle() {
        let r = upper_bound(&astroid_parallel(), 2).unwrap();
        assert!(r.slack > 0.0);
        assert!((r.slack - 8.0 * PI / 3.0 * 0.01).abs() < 1e-12);
        let r3 = upper_bound(&astroid_parallel(), 3).unwrap();
        let l = astroid_parallel().length();
        let f = astroid_parallel().area();
        let expected = -PI * PI * PI * f + (12.0 * PI * math::LN_2 - 1.5 * PI) * l * l / TAU;
        assert!((r3.bound_value - expected).abs() < 1e-12);
    }

    #[test]
    fn masotti_bounds() {
        let c = masotti_lower_bounds(&circle());
        let exact = 16.0 * PI - PI * PI * PI;
        assert!((c[0].bound_value - exact).abs() < 1e-12 && (c[0].integral - exact).abs() < 1e-12);

        let a = masotti_lower_bounds(&astroid_parallel());
        assert!(a[1].slack.abs() < 1e-8, "{:?}", a[1]);

        // constant width: the H bound is attained, the other two are strict
        let b = ConvexBody::cw3(1.0, 0.05).unwrap();
        let r = masotti_lower_bounds(&b);
        assert!(r[0].slack > 0.0 && r[2].slack > 0.0);
        assert!(r[1].slack.abs() < 1e-12);
        let generic = ConvexBody::from_fourier(1.0, vec![(0.0, 0.0), (0.02, 0.0), (0.0, 0.0), (0.01, 0.0)]).unwrap();
        for r in masotti_lower_bounds(&generic) {
            assert!(r.slack > 0.0, "{r:?}");
        }
        for body in [circle(), astroid_parallel(), b] {
            let r = masotti_lower_bounds(&body);
            assert!(r[1].bound_value >= r[2].bound_value - 1e-12);
            assert!(r[2].bound_value >= r[0].bound_value - 1e-12);
        }
    }

    #[test]
    fn constant_width_chain() {
        let c = constant_width_lower_bound(&circle(), 2).unwrap();
        assert!(c[0].slack.abs() < 1e-12);
        assert!((c[1].slack - (16.0 * PI - PI * PI * PI)).abs() < 1e-12);
        let b = ConvexBody::cw3(1.0, 0.05).unwrap();
        let delta = b.deficit();
        assert!((delta - 2.0 * PI * PI * 8.0 * 0.0025).abs() < 1e-12);
        for m in 1..=8 {
            let r = constant_width_lower_bound(&b, m).unwrap();
            assert!(r.iter().all(|x| x.satisfied), "m={m} {r:?}");
        }
        assert!(constant_width_lower_bound(&b, 2).unwrap()[0].slack > 0.0);
        assert!(matches!(
            constant_width_lower_bound(&astroid_parallel(), 2),
            Err(Error::NotConstantWidth { .. })
        ));
    }

    #[test]
    fn sin_power_on_constant_width() {
        let r = sin_power_constant_width(&circle(), 3).unwrap();
        assert!((r.bound_value - 3.0 * PI * PI).abs() < 1e-12 && r.satisfied);
        let b = ConvexBody::cw3(1.0, 0.05).unwrap();
        for m in [4, 7] {
            assert!(sin_power_constant_width(&b, m).unwrap().satisfied);
        }
        assert!(sin_power_constant_width(&astroid_parallel(), 4).is_err());
    }

    #[test]
    fn report_marks_applicability() {
        let r = report(&astroid_parallel(), 3).unwrap();
        assert!(r.all_satisfied());
        assert!(r.bounds.iter().any(|b| !b.applicable && b.applicability == Applicability::ConstantWidth));
        let r = report(&ConvexBody::cw3(1.0, 0.05).unwrap(), 2).unwrap();
        assert!(r.bounds.iter().all(|b| b.applicable));
        assert!(r.all_satisfied());
    }
}
