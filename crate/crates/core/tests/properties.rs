use crofton_core::bounds::{masotti_lower_bounds, upper_bound};
use crofton_core::formulas::{crofton, hurwitz_integral, masotti, omega_minus_sin_power, sin_power};
use crofton_core::math::PI;
use crofton_core::ConvexBody;
use proptest::prelude::*;

fn body() -> impl Strategy<Value = ConvexBody> {
    (any::<u64>(), 2usize..12, 2.5f64..4.0).prop_map(|(seed, k, decay)| ConvexBody::random(seed, k, decay).unwrap())
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functionals_are_ordered(b in body()) {
        let l = b.length();
        prop_assert!(b.convexity_margin().0 > 0.0);
        prop_assert!(b.area() <= l * l / (4.0 * PI) + 1e-12);
        prop_assert!(b.pedal_area() >= b.area() - 1e-12);
        prop_assert!(b.deficit() >= 0.0);
        prop_assert!(b.hurwitz_limit() >= l * l / PI - 1e-12);
        prop_assert!(close(b.area(), b.area_by_quadrature(), 1e-10));
    }

    #[test]
    fn bounds_hold(b in body(), m in 1u32..=8) {
        prop_assert!(upper_bound(&b, m).unwrap().satisfied);
        let r = masotti_lower_bounds(&b);
        prop_assert!(r.iter().all(|x| x.satisfied));
        prop_assert!(r[1].bound_value >= r[2].bound_value - 1e-12);
        prop_assert!(r[2].bound_value >= r[0].bound_value - 1e-12);
    }

    #[test]
    fn rigid_motions_leave_integrals_unchanged(b in body(), theta in 0.0f64..6.3, dx in -0.2f64..0.2, dy in -0.2f64..0.2) {
        let moved = b.rotated(theta).translated(dx, dy);
        prop_assert!(close(crofton(&b), crofton(&moved), 1e-12));
        prop_assert!(close(masotti(&b), masotti(&moved), 1e-12));
        for m in 3..=6 {
            prop_assert!(close(sin_power(&b, m).unwrap(), sin_power(&moved, m).unwrap(), 1e-12));
            prop_assert!(close(hurwitz_integral(&b, m).unwrap(), hurwitz_integral(&moved, m).unwrap(), 1e-12));
            prop_assert!(close(omega_minus_sin_power(&b, m).unwrap(), omega_minus_sin_power(&moved, m).unwrap(), 1e-12));
        }
    }

    #[test]
    fn integrals_scale_quadratically(b in body(), s in 0.1f64..10.0) {
        let big = b.scaled(s).unwrap();
        prop_assert!(close(crofton(&big), s * s * crofton(&b), 1e-12));
        prop_assert!(close(sin_power(&big, 4).unwrap(), s * s * sin_power(&b, 4).unwrap(), 1e-12));
    }

    #[test]
    fn upper_slack_grows_with_deformation(b in body(), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0, m in 1u32..=8) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let s_lo = upper_bound(&b.with_harmonics_scaled(lo).unwrap(), m).unwrap().slack;
        let s_hi = upper_bound(&b.with_harmonics_scaled(hi).unwrap(), m).unwrap().slack;
        prop_assert!(s_lo <= s_hi + 1e-10 * s_hi.abs().max(1.0), "{s_lo} > {s_hi}");
    }
}
