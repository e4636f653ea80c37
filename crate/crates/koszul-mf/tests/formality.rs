use grading_lattice::{collapse, CollapseMap, GradingContext};
use koszul_mf::*;
use proptest::prelude::*;

fn shift_of(shifts: &Shifts, id: ObjectId) -> grading_lattice::LatticeElement {
    shifts.iter().find(|(i, _)| *i == id).unwrap().1.clone()
}

#[test]
fn concentrated_in_degree_zero() {
    for (n, kmax) in [(1, 5), (2, 4)] {
        for k in 1..=kmax {
            let ctx = GradingContext::new(n, k);
            let r = formality_check(&ctx, n, k, 8).unwrap();
            assert!(r.passed, "n={n} k={k}: {:?}", r.violations);
            assert!(r.rows_checked > r.generators_checked);
        }
    }
}

#[test]
fn n1_shift_list() {
    let ctx = GradingContext::new(1, 4);
    let s = shifted_generators(&ctx, 1, 4).unwrap();
    let l0: Vec<i64> = s.iter().map(|(_, e)| e.l0_coeff()).collect();
    assert_eq!(l0, [-16, -9, -4, -1, 0]);
    assert!(s.iter().all(|(_, e)| e.h_part().is_zero()));
}

#[test]
fn n1_a_has_degree_zero_after_shifts() {
    let k = 5;
    let ctx = GradingContext::new(1, k);
    let s = shifted_generators(&ctx, 1, k).unwrap();
    let f0 = CollapseMap::f0(&ctx);
    for i in 1..=k {
        let a = closed_form(&ctx, 1, k, ObjectId::P1(i), ObjectId::P1(i - 1)).unwrap();
        assert_eq!(collapse(&f0, &a.degree), 1 - 2 * (k + 1 - i) as i64);
        let d = shifted_degree(&a.degree, &shift_of(&s, ObjectId::P1(i)), &shift_of(&s, ObjectId::P1(i - 1)));
        assert_eq!(collapse(&f0, &d), 0);
    }
}

#[test]
fn qk_is_unshifted() {
    for k in 1..=5 {
        let ctx = GradingContext::new(2, k);
        assert!(shift_of(&shifted_generators(&ctx, 2, k).unwrap(), ObjectId::Q(k)).is_zero());
    }
}

#[test]
fn pij_shift_formula() {
    let ctx = GradingContext::new(2, 3);
    let s = shifted_generators(&ctx, 2, 3).unwrap();
    let e = ctx.l0().scale(3) - ctx.c(1, 2).scale(2) - ctx.c(2, 1).scale(2) - ctx.c(2, 2).scale(2);
    assert_eq!(shift_of(&s, ObjectId::P(2, 1)), e);
    let e = ctx.l0().scale(3) - ctx.c(2, 0).scale(2) - ctx.c(2, 1).scale(2) - ctx.c(2, 2).scale(2);
    assert_eq!(shift_of(&s, ObjectId::P(3, 0)), e);
}

#[test]
fn alpha_gamma_delta_vanish_in_the_lattice() {
    let k = 4;
    let ctx = GradingContext::new(2, k);
    let r = formality_check(&ctx, 2, k, 0).unwrap();
    for g in ["alpha(3,1)", "alpha(4,0)", "gamma(2,1)", "gamma(3,0)", "deltaQ(2)", "alphaQ(1)"] {
        assert!(r.lattice_zero.iter().any(|x| x == g), "{g} not in {:?}", r.lattice_zero);
    }
    assert!(!r.lattice_zero.iter().any(|x| x.starts_with("beta")));
}

#[test]
fn literal_shift_leaves_x1_on_the_last_column() {
    let k = 3;
    let ctx = GradingContext::new(2, k);
    let lit = shifted_generators_literal(&ctx, 2, k).unwrap();
    let r = formality_check_with(&ctx, 2, k, 4, &lit).unwrap();
    // the collapse is blind to it
    assert!(r.passed);
    let g = closed_form(&ctx, 2, k, ObjectId::P(k, 1), ObjectId::P(k - 1, 1)).unwrap();
    let d = shifted_degree(&g.degree, &shift_of(&lit, ObjectId::P(k, 1)), &shift_of(&lit, ObjectId::P(k - 1, 1)));
    assert_eq!(d, ctx.x(1).scale(2));
    let r = formality_check(&ctx, 2, k, 0).unwrap();
    assert!(r.lattice_zero.contains(&g.generator));
}

#[test]
fn wrong_shift_is_reported() {
    let ctx = GradingContext::new(1, 3);
    let mut s = shifted_generators(&ctx, 1, 3).unwrap();
    s[1].1 = ctx.zero();
    let r = formality_check_with(&ctx, 1, 3, 2, &s).unwrap();
    assert!(!r.passed);
    assert!(r.violations.iter().any(|v| v.check == "generator" && v.generator == "a_1"));
}

proptest! {
    #[test]
    fn shifted_n2_generators_collapse_to_zero(k in 1usize..6) {
        let ctx = GradingContext::new(2, k);
        let s = shifted_generators(&ctx, 2, k).unwrap();
        let f0 = CollapseMap::f0(&ctx);
        for (a, sa) in &s {
            for (b, sb) in &s {
                if let Some(c) = closed_form(&ctx, 2, k, *a, *b) {
                    prop_assert_eq!(collapse(&f0, &shifted_degree(&c.degree, sa, sb)), 0);
                }
            }
        }
    }
}
