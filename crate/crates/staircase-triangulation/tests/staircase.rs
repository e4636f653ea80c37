use grading_lattice::exec::Execution;
use grading_lattice::GradingContext;
use num_bigint::BigInt;
use proptest::prelude::*;
use staircase_triangulation::*;
use toric_fan::{enumerate_phis, NonincreasingMap};

fn phi(v: &[usize], k: usize) -> NonincreasingMap {
    NonincreasingMap::new(v.to_vec(), k).unwrap()
}

#[test]
fn path_examples() {
    assert_eq!(phi_to_path(&phi(&[4, 4], 4), 4).render(), "A1A2B1B2B3");
    assert_eq!(phi_to_path(&phi(&[1], 1), 1).render(), "A1");
    for p in enumerate_phis(3, 3) {
        assert_eq!(path_to_phi(&phi_to_path(&p, 3)), p);
    }
}

#[test]
fn simplex_examples() {
    let p = LatticePath::new(1, 2, vec![Letter::A(1), Letter::B(1)]).unwrap();
    assert_eq!(simplex_of_path(&p).vertices, vec![(1, 2), (2, 2), (2, 1)]);
    let q = LatticePath::new(1, 2, vec![Letter::B(1), Letter::A(1)]).unwrap();
    assert_eq!(simplex_of_path(&q).vertices, vec![(1, 2), (1, 1), (2, 1)]);
    assert!(LatticePath::new(1, 2, vec![Letter::A(1)]).is_none());
    assert!(LatticePath::new(2, 2, vec![Letter::A(2), Letter::A(1), Letter::B(1)]).is_none());
}

#[test]
fn inequality_examples() {
    let ctx = GradingContext::new(1, 2);
    let p = LatticePath::new(1, 2, vec![Letter::A(1), Letter::B(1)]).unwrap();
    let ineq = inequality_description(&p);
    assert_eq!(ineq.len(), 1);
    assert_eq!((ineq[0].i, ineq[0].level, ineq[0].sign), (1, 2, Sign::Le));
    // alpha_1 <= beta_2 is <v, c_{1,1}> >= 0 since c_{1,1} = v2 - x1
    assert_eq!(ineq[0].as_pairing(&ctx), ctx.v(2) - ctx.x(1));
    let q = LatticePath::new(1, 2, vec![Letter::B(1), Letter::A(1)]).unwrap();
    assert_eq!(inequality_description(&q)[0].sign, Sign::Ge);
}

#[test]
fn precedence_matches_phi() {
    // A_i precedes the move down from level l exactly when phi(i) >= l
    for (n, k) in [(2, 4), (3, 3), (1, 5)] {
        for p in enumerate_phis(n, k) {
            for q in inequality_description(&phi_to_path(&p, k)) {
                assert_eq!(q.sign == Sign::Le, p.at(q.i) >= q.level);
            }
        }
    }
}

#[test]
fn triangulation_examples() {
    let r = triangulation_check(1, 2, 200, Execution::Sequential);
    assert_eq!(r.simplex_count, 2);
    assert!(r.passed(), "{r:?}");
    let r = triangulation_check(2, 4, 500, Execution::Parallel);
    assert_eq!(r.simplex_count, 10);
    assert!(r.passed(), "{r:?}");
    assert!(r.samples_checked > 50);
}

#[test]
fn volume_oracle_values() {
    assert_eq!(oracle::normalized_volume(1, 2), BigInt::from(2));
    assert_eq!(oracle::normalized_volume(2, 2), BigInt::from(3));
    assert_eq!(oracle::normalized_volume(2, 3), BigInt::from(6));
    assert_eq!(oracle::product_points(1, 2, 1), 4);
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let a = triangulation_check(3, 3, 300, Execution::Sequential);
    let b = triangulation_check(3, 3, 300, Execution::Parallel);
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn simplices_have_n_plus_k_vertices_and_unit_volume(
        (n, k) in (1usize..=4).prop_flat_map(|n| (Just(n), 1usize..=(7 - n)))
    ) {
        let mut total = BigInt::from(0);
        for p in enumerate_phis(n, k) {
            let path = phi_to_path(&p, k);
            let s = simplex_of_path(&path);
            prop_assert_eq!(s.vertices.len(), n + k);
            for w in s.vertices.windows(2) {
                prop_assert_eq!(w[0].0.abs_diff(w[1].0) + w[0].1.abs_diff(w[1].1), 1);
            }
            let v = s.normalized_volume(n, k);
            prop_assert_eq!(v.clone(), BigInt::from(1));
            total += v;
        }
        prop_assert_eq!(total, oracle::normalized_volume(n, k));
    }
}
