use num::{BigInt, BigRational};
use proptest::prelude::*;

use eigenscheme::algorithms::{alpha_kernel, quadric_power};
use eigenscheme::geometry::{
    collinearity_report, curve_incidence_report, fiber_line, gradient_point, laguerre, rank_a_omega, CurveSearch,
    PluckerVector,
};
use eigenscheme::hilbert::{actual_hilbert, predicted_betti, predicted_hilbert, stabilization_degree};
use eigenscheme::linalg;
use eigenscheme::point::ProjPoint;
use eigenscheme::poly::{binomial, RationalPoly};
use eigenscheme::sample::random_tensor;
use eigenscheme::tensor::{w_count, DetTuple};
use eigenscheme::Error;

fn int_point(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, n + 1).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn to_point(v: &[i64]) -> ProjPoint {
    ProjPoint::from_integers(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn laguerre_image_is_decomposable(n in 2usize..=3, d in 2u32..=4, seed in any::<u64>(), p in int_point(3)) {
        let t = random_tensor(n, d, seed % 2 == 0, seed, 9).unwrap().to_partially_symmetric();
        let p = to_point(&p[..=n]);
        match laguerre(&t, &p) {
            Err(Error::Indeterminate) | Err(Error::ZeroPoint) => {}
            Err(e) => prop_assert!(false, "{e}"),
            Ok(omega) => {
                prop_assert_eq!(rank_a_omega(&omega).unwrap(), n - 1);
                let line = fiber_line(&omega).unwrap();
                prop_assert!(line.contains(&p).unwrap());
                let g = gradient_point(&t, &p).unwrap().expect("not an eigenpoint");
                prop_assert!(line.contains(&g).unwrap());
            }
        }
    }

    #[test]
    fn wedge_kernel_is_the_span(u in int_point(3), v in int_point(3)) {
        let (pu, pv) = (to_point(&u), to_point(&v));
        let Ok(omega) = PluckerVector::wedge(&pu, &pv) else { return Ok(()) };
        prop_assume!(!omega.is_zero());
        prop_assert_eq!(rank_a_omega(&omega).unwrap(), 2);
        let line = fiber_line(&omega).unwrap();
        let span = line.spanning_points().unwrap();
        prop_assert_eq!(span.len(), 2);
        // Kernel points and u, v span the same plane: rank of all four is 2.
        let rows: Vec<Vec<BigRational>> = span.iter().chain([&pu, &pv]).map(|p| p.as_rational().unwrap().to_vec()).collect();
        prop_assert_eq!(linalg::rank(&linalg::RatMatrix::from_rows(4, rows).unwrap()), 2);
    }

    #[test]
    fn collinear_flags_are_genuine(pts in prop::collection::vec(int_point(2), 3..9), d in 2u32..=4) {
        let mut uniq: Vec<ProjPoint> = Vec::new();
        for p in pts.iter().map(|v| to_point(v)) {
            if !uniq.contains(&p) { uniq.push(p); }
        }
        prop_assume!(uniq.len() >= 2);
        let r = collinearity_report(&uniq, d).unwrap();
        for l in &r.collinear_violations {
            prop_assert!(l.points.len() > d as usize);
            let rows: Vec<Vec<BigRational>> = l.points.iter().map(|&i| uniq[i].as_rational().unwrap().to_vec()).collect();
            prop_assert_eq!(linalg::rank(&linalg::RatMatrix::from_rows(3, rows).unwrap()), 2);
        }
        for l in &r.sharp_lines {
            prop_assert_eq!(l.points.len(), d as usize);
        }
    }
}

#[test]
fn predicted_hilbert_stabilizes_at_w() {
    for n in 1..=4 {
        for d in 2..=6u32 {
            let w = w_count(n, d).unwrap();
            let s = stabilization_degree(n, d);
            for e in s..s + 4 {
                assert_eq!(predicted_hilbert(n, d, e).unwrap(), w, "({n},{d}) at {e}");
            }
        }
    }
}

#[test]
fn first_betti_module_counts_minors() {
    for n in 1..=5 {
        for d in 2..=5u32 {
            let b = predicted_betti(n, d).unwrap();
            let total: u128 = b.graded(1).iter().map(|&(_, m)| m).sum();
            assert_eq!(total, binomial(n as u64 + 1, 2));
        }
    }
}

#[test]
fn adding_generators_never_raises_hilbert() {
    for seed in 0..6u64 {
        let f = random_tensor(2, 3, false, seed, 9).unwrap().det_tuple();
        // Drop one minor: the ideal shrinks, so values can only grow.
        let mut smaller = f.entries().to_vec();
        smaller[seed as usize % 3] = RationalPoly::zero(3);
        let g = DetTuple::new(2, 3, smaller).unwrap();
        for e in 0..=5 {
            assert!(actual_hilbert(&f, e) <= actual_hilbert(&g, e), "seed {seed} degree {e}");
        }
    }
}

#[test]
fn hilbert_matches_prediction_for_random_tensors() {
    for (n, d) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
        let f = random_tensor(n, d, false, 77, 20).unwrap().det_tuple();
        for e in 0..=stabilization_degree(n, d) + 1 {
            assert_eq!(actual_hilbert(&f, e), predicted_hilbert(n, d, e).unwrap(), "({n},{d}) at {e}");
        }
    }
}

#[test]
fn alpha_kernel_parity_rule() {
    for n in 1..=3 {
        for d in 2..=6u32 {
            let k = alpha_kernel(n, d).unwrap();
            assert_eq!(k.dim, usize::from(d % 2 == 0), "({n},{d})");
            if let Some(g) = k.generator {
                assert!(g.proportionality(&quadric_power(n, d / 2)).is_some());
            }
        }
    }
}

#[test]
fn six_points_on_a_conic_for_cubics() {
    // Points (t^2 : t : 1) lie on x0 x2 = x1^2.
    let pts: Vec<ProjPoint> = (0..6i64)
        .map(|t| ProjPoint::rational(vec![BigRational::from_integer(BigInt::from(t * t)), BigRational::from_integer(t.into()), BigRational::from_integer(1.into())]).unwrap())
        .collect();
    let r = curve_incidence_report(&pts, 3).unwrap();
    assert!(matches!(r.curve_search, CurveSearch::Complete { .. }));
    assert!(r.curve_candidates.iter().any(|c| c.k == 2 && c.points.len() == 6));
}
