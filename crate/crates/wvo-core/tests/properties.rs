//! Property tests for the order calculus, cone geometry, epigraph oracles,
//! and the multiplier pipeline, checked against independent brute-force
//! oracles on seeded random data.

mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::*;
use wvo_core::epigraph::{epi_member, epi_member_shifted, ConjugateForm};
use wvo_core::farkas::{check_b1, check_b2, check_b3, FarkasQuery};
use wvo_core::linalg::{dot, rint, sub, zeros, Matrix, Rat};
use wvo_core::multiplier::{
    build_certificate, in_dual_cone, lift_multiplier, qualification, verify_certificate,
};
use wvo_core::order::{
    classify_operator, is_positive_operator, smax, wmax, wmin, wsup_cone_image,
    wsup_finite_contains, PointSet,
};
use wvo_core::problem::{Polyhedron, VectorAffineMap};
use wvo_core::suite::builtin_problem;
use wvo_core::{Cone, Problem};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| wvo_core::linalg::rat(n, d))
}

fn point(dim: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(small_rat(), dim)
}

fn planar_cone() -> impl Strategy<Value = Cone> {
    (0u64..4096).prop_map(|seed| random_ordering_cone(&mut seeded(seed), 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interior_implies_membership(k in planar_cone(), y in point(2)) {
        if k.interior_contains(&y).unwrap() {
            prop_assert!(k.contains(&y).unwrap());
        }
    }

    #[test]
    fn pointedness_kills_opposite_pairs(k in planar_cone(), y in point(2)) {
        if k.contains(&y).unwrap() && k.contains(&wvo_core::linalg::neg(&y)).unwrap() {
            prop_assert!(y.iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn interior_absorbs_cone_points(seed in 0u64..4096, y in point(2), p in point(2)) {
        let k = random_ordering_cone(&mut seeded(seed), 2);
        if k.interior_contains(&y).unwrap() && k.contains(&p).unwrap() {
            let s: Vec<Rat> = y.iter().zip(&p).map(|(a, b)| a + b).collect();
            prop_assert!(k.interior_contains(&s).unwrap());
        }
    }

    #[test]
    fn double_dual_membership_agrees(k in planar_cone(), y in point(2)) {
        let dd = k.dual().unwrap().dual().unwrap();
        prop_assert_eq!(k.contains(&y).unwrap(), dd.contains(&y).unwrap());
    }

    #[test]
    fn wmax_wmin_subset_and_nonempty(
        k in planar_cone(),
        pts in proptest::collection::vec(point(2), 1..10),
    ) {
        let m = PointSet::new(2, pts).unwrap();
        let mx = wmax(&m, &k).unwrap();
        let mn = wmin(&m, &k).unwrap();
        prop_assert!(!mx.is_empty());
        prop_assert!(!mn.is_empty());
        for v in mx.points() {
            prop_assert!(m.points().contains(v));
        }
        for v in mn.points() {
            prop_assert!(m.points().contains(v));
        }
    }

    #[test]
    fn smax_lies_in_wmax(
        k in planar_cone(),
        pts in proptest::collection::vec(point(2), 1..8),
    ) {
        let m = PointSet::new(2, pts).unwrap();
        if let Some(v) = smax(&m, &k).unwrap() {
            prop_assert!(wmax(&m, &k).unwrap().points().contains(&v));
        }
    }

    #[test]
    fn wsup_membership_matches_oracle(
        k in planar_cone(),
        pts in proptest::collection::vec(point(2), 1..8),
        y in point(2),
    ) {
        let m = PointSet::new(2, pts.clone()).unwrap();
        let got = wsup_finite_contains(&m, &k, &y).unwrap();
        let expected = oracle_wsup_contains(m.points(), k.facets(), &y);
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn epigraph_membership_monotone_along_cone(seed in 0u64..2048, y in point(2), step in point(2)) {
        let prob = builtin_problem();
        let k = prob.ordering_cone();
        let l = Matrix::column(&[step[0].clone(), step[1].clone()]);
        if epi_member(&l, &y, ConjugateForm::Constrained, &prob).unwrap().member {
            let mut rng = seeded(seed);
            let kpt = k.sample_point(&mut rng).unwrap();
            let lifted: Vec<Rat> = y.iter().zip(&kpt).map(|(a, b)| a + b).collect();
            prop_assert!(epi_member(&l, &lifted, ConjugateForm::Constrained, &prob).unwrap().member);
        }
    }
}

#[test]
fn wsup_of_dominated_set_with_origin_matches_cone_boundary() {
    // Finite sets inside -K containing the origin have the same weak
    // supremum as {0}.
    let mut rng = seeded(17);
    for _ in 0..40 {
        let k = random_ordering_cone(&mut rng, 2);
        let mut pts = vec![zeros(2)];
        for _ in 0..rng.random_range(0..6usize) {
            let p = k.sample_point(&mut rng).unwrap();
            pts.push(p.iter().map(|v| -v).collect());
        }
        let m = PointSet::new(2, pts).unwrap();
        let origin_only = PointSet::new(2, vec![zeros(2)]).unwrap();
        for _ in 0..10 {
            let y = rvec(&mut rng, 2, 6, 3);
            assert_eq!(
                wsup_finite_contains(&m, &k, &y).unwrap(),
                wsup_finite_contains(&origin_only, &k, &y).unwrap()
            );
        }
    }
}

#[test]
fn cone_image_supremum_translation_identity() {
    // Membership in the open dominated region of the image equals dominance
    // by some boundary point: walking to the boundary certifies one
    // direction, and boundary points dominate back by construction.
    let mut rng = seeded(23);
    let prob = builtin_problem();
    let s = prob.constraint_cone();
    let k = prob.ordering_cone();
    let k0 = k.canonical_interior_point().unwrap();
    for _ in 0..30 {
        let t = random_weakly_positive_operator(&mut rng, &prob);
        let sup = wsup_cone_image(&t, s, k).unwrap();
        let Some(oracle) = sup.oracle() else { continue };
        for _ in 0..8 {
            let y = rvec(&mut rng, 2, 4, 2);
            let in_open = oracle.in_open_region(&y).unwrap();
            if in_open {
                let w = oracle.project_to_boundary(&y, &k0).unwrap();
                assert!(oracle.contains(&w).unwrap());
                let d = sub(&w, &y);
                assert!(k.interior_contains(&d).unwrap());
            }
        }
    }
}

#[test]
fn classification_consistency_on_random_operators() {
    let mut rng = seeded(31);
    let prob = builtin_problem();
    for _ in 0..60 {
        let t = rmatrix(&mut rng, 2, 1, 3, 2);
        let c = classify_operator(&t, prob.constraint_cone(), prob.ordering_cone()).unwrap();
        if c.in_max_domain {
            assert!(c.in_domain);
        }
        let t1 = t.get(0, 0);
        let t2 = t.get(1, 0);
        assert_eq!(c.in_domain, !t1.is_negative() || !t2.is_negative());
        assert_eq!(c.in_max_domain, !t1.is_negative() && !t2.is_negative());
    }
}

#[test]
fn zero_objective_epigraph_is_complement_of_open_negative_cone() {
    // With the zero objective, no constraints, and L = 0, membership of y is
    // exactly avoidance of -int K.
    let k = Cone::first_orthant(2);
    let s = Cone::first_orthant(1);
    let f = VectorAffineMap::zero(2, 1);
    let g = VectorAffineMap::total(Matrix::zeros(1, 1), zeros(1)).unwrap();
    let c = Polyhedron::full_space(1);
    let prob = Problem::new(k, s, f, g, c).unwrap();
    let l = Matrix::zeros(2, 1);
    let mut rng = seeded(37);
    for _ in 0..80 {
        let y = rvec(&mut rng, 2, 4, 3);
        let member = epi_member(&l, &y, ConjugateForm::Constrained, &prob).unwrap().member;
        let in_neg_int = prob
            .ordering_cone()
            .interior_contains(&y.iter().map(|v| -v).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(member, !in_neg_int);
    }
}

#[test]
fn epigraph_limit_points_along_halving_steps_are_members() {
    // Closedness probe: approach classifier boundary points from inside by
    // halving steps; the exact boundary point must still be a member.
    let prob = builtin_problem();
    let k0 = wvo_core::linalg::vec_from(&[1, 1]);
    let boundary_cases = vec![
        (Matrix::from_ints(&[&[1], &[-1]]), wvo_core::linalg::vec_from(&[1, -1])),
        (Matrix::from_ints(&[&[-2], &[1]]), wvo_core::linalg::vec_from(&[2, -1])),
        (Matrix::from_ints(&[&[0], &[0]]), wvo_core::linalg::vec_from(&[0, -3])),
    ];
    for (l, y) in boundary_cases {
        let mut step = wvo_core::linalg::rat(1, 2);
        for _ in 0..6 {
            let inside: Vec<Rat> = y.iter().zip(&k0).map(|(a, b)| a + &step * b).collect();
            assert!(
                epi_member(&l, &inside, ConjugateForm::Constrained, &prob).unwrap().member,
                "interior approach point must be a member"
            );
            step /= rint(2);
        }
        assert!(
            epi_member(&l, &y, ConjugateForm::Constrained, &prob).unwrap().member,
            "boundary limit must remain a member"
        );
    }
}

#[test]
fn lift_identities_hold_for_random_data() {
    let mut rng = seeded(41);
    for _ in 0..60 {
        let m = rng.random_range(2..=3usize);
        let p = rng.random_range(1..=3usize);
        let k = random_ordering_cone(&mut rng, m);
        let k0 = k.canonical_interior_point().unwrap();
        // y_star in the dual cone, nonzero on k0.
        let mut y_star = zeros(m);
        for a in k.facets() {
            let c = wvo_core::linalg::rat(rng.random_range(0..=3i64), rng.random_range(1..=2i64));
            for (yi, ai) in y_star.iter_mut().zip(a) {
                *yi += &c * ai;
            }
        }
        if !dot(&y_star, &k0).is_positive() {
            continue;
        }
        let z_star = rvec(&mut rng, p, 4, 2);
        let t = lift_multiplier(&z_star, &y_star, &k0).unwrap();
        assert_eq!(t.tr_mul_vec(&y_star), z_star);
    }
}

#[test]
fn separating_functional_bounds_the_feasible_image() {
    let mut rng = seeded(43);
    let mut done = 0;
    while done < 25 {
        let prob = random_instance(&mut rng);
        let q = random_query(&mut rng, &prob);
        if !check_b1(&q, &prob).unwrap() {
            continue;
        }
        done += 1;
        let y_star =
            wvo_core::multiplier::find_separating_functional(&q.l, &q.y, &prob).unwrap();
        assert!(in_dual_cone(&y_star, prob.ordering_cone()).unwrap());
        // On feasible grid points: <y_star, (L - F)(x)> <= <y_star, y>.
        let bound = dot(&y_star, &q.y);
        for x in feasible_grid(&prob, 2, 2).iter().take(200) {
            let lf = sub(&q.l.mul_vec(x), &prob.objective_value(x).unwrap());
            assert!(dot(&y_star, &lf) <= bound);
        }
    }
}

#[test]
fn certificates_verify_and_collapse_briefly() {
    let mut rng = seeded(47);
    let mut built = 0;
    while built < 20 {
        let prob = random_instance(&mut rng);
        let q = random_query(&mut rng, &prob);
        if !check_b1(&q, &prob).unwrap() {
            continue;
        }
        let cert = match build_certificate(&q.l, &q.y, &prob) {
            Ok(c) => c,
            Err(wvo_core::Error::QualificationFailed) => continue,
            Err(e) => panic!("{e}"),
        };
        built += 1;
        let check = verify_certificate(&cert, &q.l, &q.y, &prob).unwrap();
        assert!(check.valid(), "{check:?}");
        // The certificate operator satisfies both composite assertions.
        assert!(check_b2(&q, &cert.t, &prob).unwrap());
        assert!(check_b3(&q, &cert.t, &prob).unwrap());
    }
}

#[test]
fn easy_farkas_directions_hold_without_qualification() {
    let mut rng = seeded(53);
    for _ in 0..20 {
        let prob = random_unqualified_instance(&mut rng);
        let qual = qualification(&prob).unwrap();
        assert!(!qual.verdict, "constructed instance must be unqualified");
        for _ in 0..10 {
            let q = random_query(&mut rng, &prob);
            let b1 = check_b1(&q, &prob).unwrap();
            let tp = random_positive_operator(&mut rng, &prob);
            if check_b2(&q, &tp, &prob).unwrap() {
                assert!(b1, "composite assertion must imply the direct one");
            }
            let tw = random_weakly_positive_operator(&mut rng, &prob);
            if check_b3(&q, &tw, &prob).unwrap() {
                assert!(b1, "shifted assertion must imply the direct one");
            }
        }
    }
}

#[test]
fn shifted_equals_composite_for_positive_operators_on_random_instances() {
    let mut rng = seeded(59);
    for _ in 0..15 {
        let prob = random_instance(&mut rng);
        for _ in 0..6 {
            let q = random_query(&mut rng, &prob);
            let t = random_positive_operator(&mut rng, &prob);
            assert!(is_positive_operator(&t, prob.constraint_cone(), prob.ordering_cone()).unwrap());
            let plain = epi_member(&q.l, &q.y, ConjugateForm::Composite(&t), &prob)
                .unwrap()
                .member;
            let shifted = epi_member_shifted(&q.l, &q.y, &t, &prob).unwrap().member;
            assert_eq!(plain, shifted);
        }
    }
}

#[test]
fn representation_check_consistent_on_builtin_queries() {
    let prob = builtin_problem();
    let queries = [
        (Matrix::zeros(2, 1), wvo_core::linalg::vec_from(&[0, 0])),
        (Matrix::from_ints(&[&[1], &[0]]), wvo_core::linalg::vec_from(&[0, -1])),
        (Matrix::from_ints(&[&[-1], &[2]]), wvo_core::linalg::vec_from(&[1, 1])),
    ];
    for (l, y) in queries {
        let report = wvo_core::epigraph::representation_equality_check(&l, &y, &prob).unwrap();
        assert!(report.consistent);
        if !report.direct {
            // The weak union is strictly larger on the witness query.
            if y == wvo_core::linalg::vec_from(&[0, -1]) {
                assert!(report.weak_strictness_witness.is_some());
            }
        }
    }
}

#[test]
fn scalar_duality_attainment_via_random_separators() {
    // Any dual-cone functional positive on k0 admits an exactly attaining
    // scalar multiplier; the equality is asserted inside solve_scalar_dual.
    let mut rng = seeded(61);
    let mut done = 0;
    while done < 25 {
        let prob = random_instance(&mut rng);
        let mut y_star = zeros(prob.objective_dim());
        for a in prob.ordering_cone().facets() {
            let c = wvo_core::linalg::rat(rng.random_range(0..=2i64), 1);
            for (yi, ai) in y_star.iter_mut().zip(a) {
                *yi += &c * ai;
            }
        }
        let k0 = prob.ordering_cone().canonical_interior_point().unwrap();
        if !dot(&y_star, &k0).is_positive() {
            continue;
        }
        let l = rmatrix(&mut rng, prob.objective_dim(), prob.decision_dim(), 1, 1);
        match wvo_core::multiplier::solve_scalar_dual(&y_star, &l, &prob) {
            Ok(z_star) => {
                assert!(in_dual_cone(&z_star, prob.constraint_cone()).unwrap());
                done += 1;
            }
            Err(wvo_core::Error::ScalarUnbounded) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn farkas_query_type_is_reusable() {
    let prob = builtin_problem();
    let q = FarkasQuery {
        l: Matrix::zeros(2, 1),
        y: zeros(2),
    };
    assert!(check_b1(&q, &prob).unwrap());
}
