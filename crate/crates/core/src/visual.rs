//! Functions of the visual angle.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::error::{Error, Result};
use crate::kernels;
use crate::math::{self, PI};

/// Smallest accepted value of `log10(|f(1e-2)| / |f(1e-3)|)`.
pub const GROWTH_EXPONENT_MIN: f64 = 2.9;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VisualKind {
    /// `ω − sin ω`
    Crofton,
    /// `sin^m ω`
    SinPower(u32),
    /// Hurwitz function `f_m`
    Hurwitz(u32),
    /// `ω^m − sin^m ω`, `m ≥ 2` (`m = 1` is [`VisualKind::Crofton`])
    OmegaMinusSinPower(u32),
    Custom,
}

/// A function `f(ω)` on `[0, π]` together with its derivative.
#[derive(Clone)]
pub struct VisualFunction {
    kind: VisualKind,
    custom: Option<(RealFn, RealFn, String)>,
}

impl fmt::Debug for VisualFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VisualFunction").field("kind", &self.kind).field("label", &self.label()).finish()
    }
}

impl VisualFunction {
    pub fn crofton() -> Self {
        Self { kind: VisualKind::Crofton, custom: None }
    }

    /// `ω² − sin²ω`.
    pub fn masotti() -> Self {
        Self { kind: VisualKind::OmegaMinusSinPower(2), custom: None }
    }

    pub fn sin_power(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain { func: "sin_power", arg: m as f64 });
        }
        Ok(Self { kind: VisualKind::SinPower(m), custom: None })
    }

    pub fn hurwitz(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain { func: "hurwitz", arg: m as f64 });
        }
        Ok(Self { kind: VisualKind::Hurwitz(m), custom: None })
    }

    /// `ω^m − sin^m ω`; `m = 1` gives the Crofton function.
    pub fn omega_minus_sin_power(m: u32) -> Result<Self> {
        match m {
            0 => Err(Error::Domain { func: "omega_minus_sin_power", arg: 0.0 }),
            1 => Ok(Self::crofton()),
            _ => Ok(Self { kind: VisualKind::OmegaMinusSinPower(m), custom: None }),
        }
    }

    pub fn custom(
        label: &str,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { kind: VisualKind::Custom, custom: Some((Arc::new(eval), Arc::new(deriv), label.into())) }
    }

    pub fn kind(&self) -> VisualKind {
        self.kind
    }

    /// The exponent `m` of the family, if any. Crofton counts as `m = 1`.
    pub fn order(&self) -> Option<u32> {
        match self.kind {
            VisualKind::Crofton => Some(1),
            VisualKind::SinPower(m) | VisualKind::Hurwitz(m) | VisualKind::OmegaMinusSinPower(m) => Some(m),
            VisualKind::Custom => None,
        }
    }

    pub fn eval(&self, omega: f64) -> f64 {
        match self.kind {
            VisualKind::Crofton => omega_minus_sin(omega),
            VisualKind::SinPower(m) => math::powi(math::sin(omega), m as i32),
            VisualKind::Hurwitz(m) => kernels::f_hurwitz(m, omega),
            VisualKind::OmegaMinusSinPower(m) => power_difference(omega, math::sin(omega), m),
            VisualKind::Custom => (self.custom.as_ref().expect("custom function").0)(omega),
        }
    }

    pub fn deriv(&self, omega: f64) -> f64 {
        match self.kind {
            VisualKind::Crofton => one_minus_cos(omega),
            VisualKind::SinPower(m) => {
                let (s, c) = math::sin_cos(omega);
                m as f64 * math::powi(s, m as i32 - 1) * c
            }
            VisualKind::Hurwitz(m) => kernels::f_hurwitz_deriv(m, omega),
            VisualKind::OmegaMinusSinPower(m) => {
                // m (ω^{m−1} − sin^{m−1}ω cos ω)
                //   = m ((ω^{m−1} − sin^{m−1}ω) + sin^{m−1}ω (1 − cos ω))
                let s = math::sin(omega);
                let sm1 = math::powi(s, m as i32 - 1);
                m as f64 * (power_difference(omega, s, m - 1) + sm1 * one_minus_cos(omega))
            }
            VisualKind::Custom => (self.custom.as_ref().expect("custom function").1)(omega),
        }
    }

    /// `f(π)`, exact for the built-in families.
    pub fn value_at_pi(&self) -> f64 {
        match self.kind {
            VisualKind::Crofton => PI,
            VisualKind::SinPower(_) | VisualKind::Hurwitz(_) => 0.0,
            VisualKind::OmegaMinusSinPower(m) => math::powi(PI, m as i32),
            VisualKind::Custom => self.eval(PI),
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            VisualKind::Crofton => "crofton".into(),
            VisualKind::OmegaMinusSinPower(2) => "masotti".into(),
            VisualKind::SinPower(m) => format!("sinpow:{m}"),
            VisualKind::Hurwitz(m) => format!("hurwitz:{m}"),
            VisualKind::OmegaMinusSinPower(m) => format!("omspow:{m}"),
            VisualKind::Custom => self.custom.as_ref().map(|c| c.2.clone()).unwrap_or_default(),
        }
    }

    /// Measured growth exponent `log10(|f(1e-2)| / |f(1e-3)|)`;
    /// infinite when `f(1e-3) = 0`.
    pub fn growth_exponent(&self) -> f64 {
        let hi = self.eval(1e-2).abs();
        let lo = self.eval(1e-3).abs();
        if lo == 0.0 {
            f64::INFINITY
        } else {
            math::log10(hi / lo)
        }
    }

    /// Admission test for `f(ω) = O(ω³)` at zero.
    pub fn check_growth(&self) -> Result<()> {
        let e = self.growth_exponent();
        if e >= GROWTH_EXPONENT_MIN && self.eval(1e-3).is_finite() {
            Ok(())
        } else {
            Err(Error::GrowthGate { exponent: e })
        }
    }
}

/// `1 − cos ω = 2 sin²(ω/2)`.
fn one_minus_cos(omega: f64) -> f64 {
    let s = math::sin(0.5 * omega);
    2.0 * s * s
}

/// `ω − sin ω`, by its Taylor series for small `ω`.
fn omega_minus_sin(omega: f64) -> f64 {
    if omega.abs() > 0.5 {
        return omega - math::sin(omega);
    }
    let w2 = omega * omega;
    let mut term = omega * w2 / 6.0;
    let mut acc = 0.0_f64;
    let mut n = 3.0;
    while term.abs() > 1e-18 * acc.abs() || acc == 0.0 {
        acc += term;
        term *= -w2 / ((n + 1.0) * (n + 2.0));
        n += 2.0;
        if term == 0.0 {
            break;
        }
    }
    acc
}

/// `ω^m − s^m` where `s = sin ω`, factored as
/// `(ω − s) Σ_{i<m} ω^i s^{m−1−i}` to avoid cancellation at small `ω`.
fn power_difference(omega: f64, s: f64, m: u32) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut wi = 1.0;
    for i in 0..m {
        sum += wi * math::powi(s, (m - 1 - i) as i32);
        wi *= omega;
    }
    omega_minus_sin(omega) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_builtin() -> alloc::vec::Vec<VisualFunction> {
        let mut v = alloc::vec![VisualFunction::crofton(), VisualFunction::masotti()];
        for m in 2..=8 {
            v.push(VisualFunction::hurwitz(m).unwrap());
            v.push(VisualFunction::omega_minus_sin_power(m).unwrap());
        }
        for m in 3..=8 {
            v.push(VisualFunction::sin_power(m).unwrap());
        }
        v
    }

    #[test]
    fn vanish_at_zero_and_pass_gate() {
        for f in all_builtin() {
            assert_eq!(f.eval(0.0), 0.0, "{}", f.label());
            f.check_growth().unwrap();
        }
    }

    #[test]
    fn low_powers_fail_gate() {
        let s2 = VisualFunction::sin_power(2).unwrap();
        assert!(matches!(s2.check_growth(), Err(Error::GrowthGate { .. })));
        let w = VisualFunction::custom("omega", |w| w, |_| 1.0);
        let e = w.growth_exponent();
        assert!((e - 1.0).abs() < 1e-12);
        assert!(w.check_growth().is_err());
    }

    #[test]
    fn stable_forms_match_naive() {
        for &w in &[0.3, 0.7, 1.5, 2.9] {
            assert!((omega_minus_sin(w) - (w - libm::sin(w))).abs() < 1e-15);
            let f = VisualFunction::omega_minus_sin_power(4).unwrap();
            let naive = libm::pow(w, 4.0) - libm::pow(libm::sin(w), 4.0);
            assert!((f.eval(w) - naive).abs() < 1e-13);
        }
        // ω − sin ω at 1e-4 is 1e-12/6 to full relative precision
        let tiny = omega_minus_sin(1e-4);
        assert!((tiny / (1e-12 / 6.0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for f in all_builtin() {
            for &w in &[0.4, 1.1, 2.0, 2.8] {
                let fd = (f.eval(w + h) - f.eval(w - h)) / (2.0 * h);
                assert!((fd - f.deriv(w)).abs() < 1e-7 * (1.0 + fd.abs()), "{} at {w}", f.label());
            }
        }
    }

    #[test]
    fn values_at_pi() {
        for f in all_builtin() {
            assert!((f.value_at_pi() - f.eval(PI)).abs() < 1e-12 * (1.0 + f.value_at_pi().abs()));
        }
    }

    #[test]
    fn labels() {
        assert_eq!(VisualFunction::omega_minus_sin_power(1).unwrap().label(), "crofton");
        assert_eq!(VisualFunction::masotti().label(), "masotti");
        assert_eq!(VisualFunction::sin_power(4).unwrap().label(), "sinpow:4");
        assert_eq!(VisualFunction::hurwitz(3).unwrap().label(), "hurwitz:3");
        assert_eq!(VisualFunction::omega_minus_sin_power(5).unwrap().label(), "omspow:5");
    }
}
