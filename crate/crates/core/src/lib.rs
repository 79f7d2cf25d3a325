//! Integrals of functions of the visual angle of a planar compact convex set.
//!
//! A body is described by the truncated Fourier series of its support
//! function `p(φ) = a0 + Σ (a_k cos kφ + b_k sin kφ)`. For a function
//! `f(ω)` of the visual angle, `∫ f(ω) dP` over the exterior of the body can
//! be computed three ways:
//!
//! * the kernel series in `L²` and the harmonic energies `c_k² = a_k² + b_k²`
//!   ([`formulas::master_series`]),
//! * the `M(f)` / `β_k(f)` functional route with a boundary term
//!   ([`formulas::functional_route`]),
//! * brute-force tensor quadrature in tangent-angle coordinates
//!   ([`quadrature::integrate_exterior`]), used as the oracle for the other two.
//!
//! Closed forms for the Crofton, Masotti, Hurwitz, `sin^m` and `ω^m − sin^m`
//! families live in [`formulas`]; the associated inequalities are evaluated
//! in [`bounds`].
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod body;
pub mod bounds;
mod error;
pub mod formulas;
pub mod kernels;
pub mod math;
pub mod quadrature;
pub mod special_fn;
pub mod visual;

pub use body::{BodySummary, ConvexBody};
pub use error::{Error, Result};
pub use quadrature::{IntegralResult, Method, QuadratureSpec};
pub use visual::{VisualFunction, VisualKind};
