mod common;

use common::*;
use proptest::prelude::*;
use qmi_orbits::orbit::haar_unitary;
use qmi_orbits::region::{convex_hull_region, f_line_residual, in_open_diamond};
use qmi_orbits::states::marginal_point;
use qmi_orbits::{DensityMatrix, MarginalPoint, Region};

/// Literal inequalities for the compatible marginal pairs, independent of the polygon code.
fn satisfies_inequalities(l: &[f64], a: f64, b: f64, tol: f64) -> bool {
    let low = l[2] + l[3];
    a >= low - tol
        && b >= low - tol
        && a + b >= l[1] + l[2] + 2.0 * l[3] - tol
        && (a - b).abs() <= (l[0] - l[2]).min(l[1] - l[3]) + tol
        && a <= 0.5 + tol
        && b <= 0.5 + tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn haar_orbit_points_satisfy_the_inequalities(s in spectrum((2, 2)), seed in any::<u64>()) {
        let r = Region::new(&s).unwrap();
        let rho0 = DensityMatrix::diagonal_of(&s);
        for k in 0..50u64 {
            let rho = haar_unitary(4, seed.wrapping_add(k)).unwrap().apply(&rho0).unwrap();
            let p = marginal_point(&rho).unwrap();
            prop_assert!(r.contains_tol(&p, 1e-8));
            prop_assert!(satisfies_inequalities(s.values(), p.lambda_a, p.lambda_b, 1e-8));
        }
    }

    #[test]
    fn polygon_membership_matches_inequalities(s in spectrum((2, 2)), a in 0.0f64..=0.5, b in 0.0f64..=0.5) {
        let r = Region::new(&s).unwrap();
        let p = MarginalPoint::new(a, b).unwrap();
        let literal = satisfies_inequalities(s.values(), a, b, 0.0);
        if literal {
            prop_assert!(r.contains(&p));
        }
        if r.contains_tol(&p, 0.0) {
            prop_assert!(satisfies_inequalities(s.values(), a, b, 1e-12));
        }
        if r.contains(&p) {
            prop_assert!(convex_hull_region(&s).unwrap().contains(&p));
        }
    }

    #[test]
    fn vertices_lie_in_the_region(s in spectrum((2, 2))) {
        let r = Region::new(&s).unwrap();
        for v in r.vertices() {
            prop_assert!(satisfies_inequalities(s.values(), v.lambda_a, v.lambda_b, 1e-9));
        }
    }

    #[test]
    fn energy_lines_stay_outside_the_diamond(
        s in -1.0f64..=1.0,
        t in -1.0f64..=1.0,
        e in 0.0f64..=1.0,
        u in -2.0f64..=2.0,
    ) {
        prop_assume!(s.abs().max(t.abs()) > 1e-6);
        // Parametrize the line through its closest point to the centre.
        let n2 = s * s + t * t;
        let (x0, y0) = (0.5 - s * (1.0 - e) / n2, 0.5 - t * (1.0 - e) / n2);
        let (x, y) = (x0 - t * u, y0 + s * u);
        prop_assert!(f_line_residual(s, t, e, x, y).abs() < 1e-9 * (1.0 + u.abs()) / n2.min(1.0));
        if (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y) {
            prop_assert!(!in_open_diamond(e, x, y, 1e-9));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn min_vertex_minimizes_marginal_entropy_on_a_fine_grid(s in spectrum((2, 2))) {
        let r = Region::new(&s).unwrap();
        let (v, w) = r.min_vertex();
        let best = v.marginal_entropy_sum();
        prop_assert!((best - (h2(v.lambda_a) + h2(v.lambda_b))).abs() < 1e-12);
        prop_assert!((w.marginal_entropy_sum() - best).abs() < 1e-12);
        let n = 500;
        for i in 0..=n {
            let a = 0.5 * i as f64 / n as f64;
            for j in 0..=n {
                let b = 0.5 * j as f64 / n as f64;
                if satisfies_inequalities(s.values(), a, b, 0.0) {
                    prop_assert!(h2(a) + h2(b) >= best - 1e-12);
                }
            }
        }
    }
}
