use arc_quiver::{build_a1k, build_a2k, hom_dimension};
use grading_lattice::{GradingContext, LatticeElement};
use proptest::prelude::*;
use twisted_complex::*;

fn l0_shifts(tc: &TwistedComplex) -> Vec<i64> {
    tc.objects.iter().map(|o| o.shift.l0_coeff()).collect()
}

fn words(tc: &TwistedComplex) -> Vec<String> {
    tc.differential.values().map(render_element).collect()
}

#[test]
fn n1_resolution_valid_for_small_k() {
    for k in 1..=5 {
        let q = build_a1k(k);
        let t = build_T_resolution_n1(&q);
        let rep = validate(&QuiverAlgebra::new(&q), &t);
        assert!(rep.valid, "k = {k}: {:?}", rep.violations);
        assert_eq!(t.len(), 2 * (k + 1));
    }
}

#[test]
fn n1_k1_specialization() {
    let q = build_a1k(1);
    let t = build_T_resolution_n1(&q);
    assert_eq!(t.labels(), ["L_0", "L_1", "L_1", "L_0"]);
    assert_eq!(words(&t), ["l1", "x1", "r1"]);
    let golden = include_str!("golden/t_n1_k1.txt");
    assert_eq!(t.render(&q.ctx), golden.trim_end());
}

#[test]
fn n1_shifts_collapse_to_bracket_values() {
    for k in 1..=5 {
        let t = build_T_resolution_n1(&build_a1k(k));
        let mut want = vec![1; k + 1];
        want.extend(vec![0; k + 1]);
        assert_eq!(l0_shifts(&t), want);
    }
}

#[test]
fn n2_resolutions_valid_for_small_k() {
    for k in 1..=4 {
        let q = build_a2k(k);
        let alg = QuiverAlgebra::new(&q);
        for i in 0..=k {
            let t = build_TxLi_resolution_n2(&q, i);
            let rep = validate(&alg, &t);
            assert!(rep.valid, "k = {k}, i = {i}: {:?}", rep.violations);
        }
        let rep = validate(&alg, &build_TxLk1_resolution_n2(&q));
        assert!(rep.valid, "k = {k}: {:?}", rep.violations);
    }
}

#[test]
fn n2_shifts_collapse_to_bracket_values() {
    for k in 1..=4 {
        let q = build_a2k(k);
        for i in 0..=k {
            let mut want = vec![1; i];
            want.extend(vec![2; k - i]);
            want.extend([1, 0]);
            want.extend(vec![-1; k - i]);
            want.extend(vec![0; i]);
            assert_eq!(l0_shifts(&build_TxLi_resolution_n2(&q, i)), want, "k = {k}, i = {i}");
        }
        let mut want = vec![1; k + 1];
        want.extend(vec![0; k + 1]);
        assert_eq!(l0_shifts(&build_TxLk1_resolution_n2(&q)), want);
    }
}

#[test]
fn txli_has_twice_k_plus_one_objects() {
    let q = build_a2k(2);
    let t = build_TxLi_resolution_n2(&q, 1);
    assert_eq!(t.labels(), ["L_0_1", "L_1_2", "L_1_3", "L_1_3", "L_1_2", "L_0_1"]);
    assert_eq!(words(&t), ["l1.l2", "l3", "x2", "r3", "r2.r1"]);
    for k in 1..=4 {
        let q = build_a2k(k);
        for i in 0..=k {
            assert_eq!(build_TxLi_resolution_n2(&q, i).len(), 2 * (k + 1));
        }
    }
}

#[test]
fn doubled_arrows_are_the_only_paths_of_their_degree() {
    for k in 2..=4 {
        let q = build_a2k(k);
        let alg = QuiverAlgebra::new(&q);
        for i in 1..=k {
            let from = format!("L_{}_{}", i - 1, i);
            let (to, d) = alg.word(&from, &[format!("l{}", i + 1), format!("l{i}")]).expect("composable");
            assert_eq!(to, format!("L_{}_{}", i, i + 1));
            let space = hom_dimension(&q, q.vertex(&from).unwrap(), q.vertex(&to).unwrap(), &d);
            assert_eq!(space.dim, 1, "k = {k}, i = {i}");
            let from = format!("L_{}_{}", i, i + 1);
            let (to, d) = alg.word(&from, &[format!("r{i}"), format!("r{}", i + 1)]).expect("composable");
            let space = hom_dimension(&q, q.vertex(&from).unwrap(), q.vertex(&to).unwrap(), &d);
            assert_eq!(space.dim, 1, "k = {k}, i = {i}");
        }
    }
}

#[test]
fn x2_entry_is_compensated_by_the_shift_drop() {
    let q = build_a2k(3);
    let ctx = q.ctx;
    let t = build_TxLi_resolution_n2(&q, 1);
    let (&(p, r), _) = t.differential.iter().find(|(_, e)| render_element(e) == "x2").unwrap();
    let (_, d) = QuiverAlgebra::new(&q).word(&t.objects[p].label, &["x2".to_string()]).unwrap();
    assert_eq!(d, ctx.x(2).scale(2));
    assert_eq!(t.objects[p].shift.l0_coeff(), 1);
    assert_eq!(t.objects[r].shift.l0_coeff(), 0);
    assert_eq!(&t.objects[r].shift - &t.objects[p].shift, ctx.x(2).scale(2) - ctx.l0());
}

#[test]
fn bis_with_x1_only_fails_against_lk() {
    for k in 1..=3 {
        let q = build_a2k(k);
        let rep = validate(&QuiverAlgebra::new(&q), &build_TxLk1_resolution_n2_x1_only(&q));
        assert!(!rep.valid);
        let located: Vec<(usize, usize)> = rep
            .violations
            .iter()
            .map(|v| match v {
                Violation::SquareNonzero { p, r, .. } => (*p, *r),
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert_eq!(located, [(k - 1, k + 1), (k, k + 2)]);
    }
}

#[test]
fn single_object_is_valid() {
    let q = build_a1k(2);
    let t = TwistedComplex::single("P", "L_1", q.ctx.zero());
    let rep = validate(&QuiverAlgebra::new(&q), &t);
    assert!(rep.valid);
    assert_eq!((rep.entries, rep.products), (0, 0));
}

#[test]
fn tampered_letter_is_located() {
    let q = build_a1k(2);
    let mut t = build_T_resolution_n1(&q);
    // L_2 -r2-> L_1 becomes L_2 -l2-> L_1
    let key = *t.differential.iter().find(|(_, e)| render_element(e) == "r2").unwrap().0;
    t.differential.insert(key, vec![(1, vec!["l2".to_string()])]);
    let rep = validate(&QuiverAlgebra::new(&q), &t);
    assert!(!rep.valid);
    assert_eq!(rep.violations, [Violation::Endpoints { p: key.0, q: key.1, word: "l2".to_string() }]);
}

#[test]
fn tampered_shift_breaks_homogeneity() {
    let q = build_a1k(2);
    let mut t = build_T_resolution_n1(&q);
    t.objects[2].shift += &q.ctx.u(1).scale(2);
    let rep = validate(&QuiverAlgebra::new(&q), &t);
    let located: Vec<(usize, usize)> = rep
        .violations
        .iter()
        .map(|v| match v {
            Violation::Degree { p, q, .. } => (*p, *q),
            other => panic!("unexpected {other:?}"),
        })
        .collect();
    assert_eq!(located, [(1, 2), (2, 3)]);
}

#[test]
fn nonzero_square_is_reported() {
    let q = build_a1k(2);
    let alg = QuiverAlgebra::new(&q);
    let t = TwistedComplex::chain(&alg, "loop", "L_0", q.ctx.zero(), &[vec!["l1"], vec!["r1"]]).unwrap();
    let rep = validate(&alg, &t);
    assert_eq!(rep.violations, [Violation::SquareNonzero { p: 0, r: 2, terms: "r1.l1".to_string() }]);
    let t = TwistedComplex::chain(&alg, "zero", "L_0", q.ctx.zero(), &[vec!["l1"], vec!["l2"]]).unwrap();
    assert!(validate(&alg, &t).valid);
}

#[test]
fn cone_matches_chain() {
    let q = build_a1k(3);
    let alg = QuiverAlgebra::new(&q);
    let ctx = q.ctx;
    let x = TwistedComplex::single("x", "L_0", ctx.zero());
    let y = TwistedComplex::single("y", "L_1", ctx.zero());
    let c = TwistedComplex::cone(&alg, "c", &x, &y, 0, 0, &["l1"]).unwrap();
    let chain = TwistedComplex::chain(&alg, "c", "L_0", ctx.l0(), &[vec!["l1"]]).unwrap();
    assert_eq!(c, chain);
    assert!(validate(&alg, &c).valid);
}

#[test]
fn sequential_and_parallel_validation_agree() {
    use grading_lattice::exec::Execution;
    let q = build_a2k(3);
    let alg = QuiverAlgebra::new(&q);
    let t = build_TxLk1_resolution_n2_x1_only(&q);
    assert_eq!(validate_with(&alg, &t, Execution::Sequential), validate_with(&alg, &t, Execution::Parallel));
}

fn lattice_element(ctx: GradingContext) -> impl Strategy<Value = LatticeElement> {
    proptest::collection::vec(-3i64..=3, ctx.rank()).prop_map(|coeffs| LatticeElement { coeffs })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn global_shift_preserves_validity(s in lattice_element(GradingContext::new(1, 3))) {
        let q = build_a1k(3);
        let t = build_T_resolution_n1(&q).shifted(&s);
        prop_assert!(validate(&QuiverAlgebra::new(&q), &t).valid);
    }

    #[test]
    fn any_single_letter_swap_is_caught(k in 1usize..=3, at in 0usize..8, letter in 0usize..3) {
        let q = build_a1k(k);
        let mut t = build_T_resolution_n1(&q);
        let keys: Vec<(usize, usize)> = t.differential.keys().copied().collect();
        let key = keys[at % keys.len()];
        let old = render_element(&t.differential[&key]);
        let m = (key.0 % k) + 1;
        let new = [format!("l{m}"), format!("r{m}"), "x1".to_string()][letter].clone();
        prop_assume!(new != old);
        t.differential.insert(key, vec![(1, vec![new])]);
        prop_assert!(!validate(&QuiverAlgebra::new(&q), &t).valid);
    }
}
