use koszul_mf::{b_side_resolutions, BAlgebra};
use twisted_complex::{render_element, validate, PathAlgebra, TwistedComplex};

fn find<'a>(all: &'a [TwistedComplex], name: &str) -> &'a TwistedComplex {
    all.iter().find(|t| t.name == name).unwrap_or_else(|| panic!("{name}"))
}

fn words(tc: &TwistedComplex) -> Vec<String> {
    tc.differential.values().map(render_element).collect()
}

#[test]
fn b_resolutions_validate() {
    for (n, kmax) in [(1, 5), (2, 4)] {
        for k in 1..=kmax {
            let alg = BAlgebra::new(n, k).unwrap();
            for tc in b_side_resolutions(&alg).unwrap() {
                let r = validate(&alg, &tc);
                assert!(r.valid, "n={n} k={k} {}: {:?}", tc.name, r.violations);
            }
        }
    }
}

#[test]
fn term_counts() {
    for k in 1..=4 {
        let all = b_side_resolutions(&BAlgebra::new(1, k).unwrap()).unwrap();
        assert_eq!(find(&all, "O_p").len(), 2 * (k + 1));
        assert_eq!(find(&all, &format!("R_plus_{k}")).len(), k + 1);
        let all = b_side_resolutions(&BAlgebra::new(2, k).unwrap()).unwrap();
        for i in 0..=k {
            assert_eq!(find(&all, &format!("O_D_{i}(-1)")).len(), 2 * (k + 1));
            assert_eq!(find(&all, &format!("P_{i}_le_{i}")).len(), k + 1);
        }
        assert_eq!(find(&all, "O_D").len(), 2 * (k + 1));
    }
}

#[test]
fn skyscraper_resolution_k2() {
    let alg = BAlgebra::new(1, 2).unwrap();
    let all = b_side_resolutions(&alg).unwrap();
    let op = find(&all, "O_p");
    assert_eq!(op.labels(), ["P_0", "P_1", "P_2", "P_2", "P_1", "P_0"]);
    assert_eq!(words(op), ["b_1", "b_2", "X1", "a_2", "a_1"]);
    assert_eq!(
        op.render(alg.ctx()),
        "P_0[3l0] -b_1-> P_1[3l0 - 2x1 + 2v2] -b_2-> P_2[3l0 - 4x1 + 2v2] -X1-> P_2[2l0 - 2x1 + 2v2] -a_2-> P_1[2l0] -a_1-> P_0[2l0 + 2x1 - 2v1 - 2v2]"
    );
}

#[test]
fn divisor_resolution_k2() {
    let alg = BAlgebra::new(2, 2).unwrap();
    let all = b_side_resolutions(&alg).unwrap();
    let d = find(&all, "O_D_1(-1)");
    assert_eq!(d.labels(), ["P_1_0", "P_2_1", "Q_1", "Q_1", "P_2_1", "P_1_0"]);
    assert_eq!(words(d), ["beta(1,0).delta(1,0)", "gammaQ(1)", "X2", "deltaQ(1)", "alpha(2,0).gamma(1,1)"]);
    let od = find(&all, "O_D");
    assert_eq!(od.labels(), ["Q_0", "Q_1", "Q_2", "Q_2", "Q_1", "Q_0"]);
}

#[test]
fn x1_alone_fails_on_the_divisor_side_too() {
    // the last object's own resolution needs X1 X2, not X1
    let alg = BAlgebra::new(2, 2).unwrap();
    let all = b_side_resolutions(&alg).unwrap();
    let mut od = find(&all, "O_D").clone();
    let key = *od.differential.iter().find(|(_, e)| e[0].1.len() == 2).unwrap().0;
    od.differential.insert(key, vec![(1, vec!["X1".to_string()])]);
    assert!(!validate(&alg, &od).valid);
}

#[test]
fn products_are_checked() {
    let alg = BAlgebra::new(1, 2).unwrap();
    assert!(alg.vanishes("P_1", &[(1, vec!["b_2".into(), "a_2".into(), "b_2".into()]), (-1, vec!["U2".into(), "b_2".into()])]));
    assert!(!alg.vanishes("P_1", &[(1, vec!["b_2".into(), "a_2".into()])]));
    assert!(alg.vanishes("P_1", &[(1, vec!["b_2".into(), "X1".into(), "a_2".into()])]));
    assert!(alg.vanishes("P_0", &[(1, vec!["b_1".into(), "b_2".into()])]));
}
