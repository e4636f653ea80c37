use grading_lattice::*;
use proptest::prelude::*;

fn ctx24() -> GradingContext {
    GradingContext::new(2, 4)
}

#[test]
fn c_1k_is_minus_x1() {
    let ctx = ctx24();
    assert_eq!(curve_class(&ctx, CurveName::C(1, 4)).unwrap(), -ctx.x(1));
}

#[test]
fn c_23_combines_relations() {
    let ctx = ctx24();
    let c23 = curve_class(&ctx, CurveName::C(2, 3)).unwrap();
    assert_eq!(c23, ctx.v(4) - ctx.x(1) - ctx.x(2));
    // v4 = x1 + c13 and c13 = c23 + x2
    assert_eq!(ctx.v(4), ctx.x(1) + ctx.c(1, 3));
    assert_eq!(ctx.c(1, 3), ctx.c(2, 3) + ctx.x(2));
}

#[test]
fn c_n0_is_last_x() {
    let ctx = GradingContext::new(1, 1);
    let c10 = curve_class(&ctx, CurveName::C(1, 0)).unwrap();
    assert_eq!(c10, ctx.x(2));
    assert_eq!(c10, ctx.v(1) - ctx.x(1));
    assert_eq!(c10.coeffs, vec![0, -1, 1]);
}

#[test]
fn out_of_range_names_error() {
    let ctx = ctx24();
    for name in [CurveName::C(3, 1), CurveName::C(1, 5), CurveName::X(4), CurveName::V(0), CurveName::U(5)] {
        assert!(matches!(curve_class(&ctx, name), Err(LatticeError::IndexError(_))), "{name}");
    }
}

#[test]
fn parity_examples() {
    let ctx = ctx24();
    assert_eq!(parity(&ctx, &ctx.l0()), 1);
    assert_eq!(parity(&ctx, &ctx.u(3).scale(2)), 0);
    assert_eq!(parity(&ctx, &ctx.v(1)), 1);
    assert_eq!(parity(&ctx, &ctx.u(1)), 0);
    assert_eq!(parity(&ctx, &ctx.x(3)), 0);
}

#[test]
fn f0_examples() {
    let ctx = ctx24();
    let f0 = CollapseMap::f0(&ctx);
    assert!(f0.admissible);
    for j in 0..=4 {
        assert_eq!(collapse(&f0, &ctx.c(2, j).scale(2)), 2 * (4 - j as i64));
        assert_eq!(collapse(&f0, &ctx.c(1, j).scale(2)), 2 * (4 - j as i64));
    }
    assert_eq!(collapse(&f0, &ctx.x(3).scale(2)), 8);
    for j in 1..=4 {
        assert_eq!(collapse(&f0, &ctx.u(j).scale(2)), 0);
    }
    assert_eq!(collapse(&f0, &ctx.x(1)), 0);
}

#[test]
fn l0_coefficient_map_is_not_admissible() {
    let ctx = ctx24();
    assert!(!CollapseMap::l0_coefficient(&ctx).admissible);
    let bad = CollapseMap::new(&ctx, vec![2, 0, 0, 1, 1, 1, 1]).unwrap();
    assert!(!bad.admissible);
}

#[test]
fn grading_iso_examples() {
    let ctx = ctx24();
    assert_eq!(grading_iso_a_to_b(&ctx, 1, &ctx.zero()).unwrap(), ctx.l0());
    assert_eq!(grading_iso_a_to_b(&ctx, 0, &ctx.x(1)).unwrap(), ctx.x(1).scale(2));
    for i in 1..=4 {
        assert_eq!(grading_iso_a_to_b(&ctx, 2, &-ctx.v(i)).unwrap(), ctx.u(i).scale(2));
    }
    assert_eq!(grading_iso_a_to_b(&ctx, 0, &ctx.l0()), Err(LatticeError::NotHPart));
}

#[test]
fn names_parse() {
    let names: Vec<CurveName> = parse_all(&["x1", "v3", "c_1_2", "u4", "l0"]);
    assert_eq!(names, vec![CurveName::X(1), CurveName::V(3), CurveName::C(1, 2), CurveName::U(4), CurveName::L0]);
}

fn parse_all(items: &[&str]) -> Vec<CurveName> {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

fn arb_ctx() -> impl Strategy<Value = GradingContext> {
    (1usize..=4, 1usize..=5).prop_map(|(n, k)| GradingContext::new(n, k))
}

fn arb_elem(ctx: GradingContext) -> impl Strategy<Value = LatticeElement> {
    proptest::collection::vec(-20i64..=20, ctx.rank()).prop_map(|coeffs| LatticeElement { coeffs })
}

proptest! {
    #[test]
    fn hypersurface_identity(ctx in arb_ctx()) {
        let mut xs = ctx.zero();
        for i in 1..=ctx.n + 1 { xs += &ctx.x(i); }
        let mut vs = ctx.zero();
        for j in 1..=ctx.k { vs += &ctx.v(j); }
        prop_assert_eq!(xs, vs);
    }

    #[test]
    fn c_recursions(ctx in arb_ctx()) {
        for i in 1..ctx.n {
            for j in 0..=ctx.k {
                prop_assert_eq!(ctx.c(i, j), ctx.c(i + 1, j) + ctx.x(i + 1));
            }
        }
        for i in 1..=ctx.n {
            for j in 0..ctx.k {
                prop_assert_eq!(ctx.c(i, j), ctx.c(i, j + 1) + ctx.v(j + 1));
            }
            prop_assert_eq!(ctx.u(1) + ctx.v(1), ctx.l0());
        }
        prop_assert_eq!(ctx.c(1, ctx.k), -ctx.x(1));
        prop_assert_eq!(ctx.c(ctx.n, 0), ctx.x(ctx.n + 1));
    }

    #[test]
    fn admissible_collapse_matches_parity(
        (ctx, e, vals) in arb_ctx().prop_flat_map(|ctx| {
            let r = ctx.rank();
            (Just(ctx), arb_elem(ctx), proptest::collection::vec(-5i64..=5, r))
        })
    ) {
        let mut values = vals;
        values[0] = 1;
        for p in 1..=ctx.n { values[p] = 2 * values[p]; }
        for p in ctx.n + 1..ctx.rank() { values[p] = 2 * values[p] + 1; }
        let f = CollapseMap::new(&ctx, values).unwrap();
        prop_assert!(f.admissible);
        prop_assert_eq!(collapse(&f, &e).rem_euclid(2) as u8, parity(&ctx, &e));
    }

    #[test]
    fn collapse_is_linear(
        (ctx, a, b) in arb_ctx().prop_flat_map(|ctx| (Just(ctx), arb_elem(ctx), arb_elem(ctx)))
    ) {
        let f = CollapseMap::f0(&ctx);
        prop_assert_eq!(collapse(&f, &(&a + &b)), collapse(&f, &a) + collapse(&f, &b));
        prop_assert_eq!(parity(&ctx, &(&a + &b)), (parity(&ctx, &a) + parity(&ctx, &b)) % 2);
    }

    #[test]
    fn grading_iso_bijective_and_parity_compatible(
        (ctx, m, h) in arb_ctx().prop_flat_map(|ctx| (Just(ctx), -10i64..=10, arb_elem(ctx)))
    ) {
        let h = h.h_part();
        let b = grading_iso_a_to_b(&ctx, m, &h).unwrap();
        prop_assert!(in_lb(&b));
        prop_assert_eq!(grading_iso_b_to_a(&b), Some((m, h.clone())));
        // sigma sends H to 0 on the A-side, so only m matters
        prop_assert_eq!(parity(&ctx, &b), (m.rem_euclid(2)) as u8);
    }
}
