use grading_lattice::GradingContext;
use koszul_mf::{generators, object_ids, KoszulError, MFObject};

fn objects(n: usize, k: usize) -> Vec<MFObject> {
    generators(&GradingContext::new(n, k), n, k).unwrap()
}

fn find<'a>(objs: &'a [MFObject], name: &str) -> &'a MFObject {
    objs.iter().find(|o| o.name == name).unwrap()
}

fn plain(o: &MFObject) -> Vec<usize> {
    o.factors.iter().filter(|f| f.pieces.is_empty()).map(|f| f.position).collect()
}

#[test]
fn object_counts() {
    for k in 1..=6 {
        assert_eq!(objects(1, k).len(), k + 1);
        assert_eq!(objects(2, k).len(), k * (k + 1) / 2 + k + 1);
        let names: Vec<String> = object_ids(2, k).unwrap().iter().map(|i| i.name()).collect();
        assert_eq!(names, objects(2, k).iter().map(|o| o.name.clone()).collect::<Vec<_>>());
    }
}

#[test]
fn n3_unsupported() {
    let err = generators(&GradingContext::new(3, 2), 3, 2).unwrap_err();
    assert!(matches!(err, KoszulError::Unsupported(_)));
}

#[test]
fn interior_pij_has_four_special_factors() {
    let objs = objects(2, 6);
    let p = find(&objs, "P_4_1");
    assert_eq!(p.factors.iter().filter(|f| !f.pieces.is_empty()).count(), 4);
    assert_eq!(plain(p), [3, 6]);
    for r in plain(p) {
        let f = &p.factors[r - 1];
        assert_eq!((f.a.as_str(), f.b.as_str()), (format!("U{r}").as_str(), format!("V{r}").as_str()));
    }
}

#[test]
fn interior_qj_factor_list() {
    let objs = objects(2, 4);
    let q = find(&objs, "Q_2");
    assert_eq!(plain(q), [1, 4]);
    let special: Vec<&str> = q.factors.iter().filter(|f| !f.pieces.is_empty()).map(|f| f.b.as_str()).collect();
    assert_eq!(special, ["f2*s2(2)", "f2*s1(2)"]);
}

#[test]
fn p10_uses_the_first_section() {
    let objs = objects(2, 3);
    let p = find(&objs, "P_1_0");
    assert_eq!(p.factors[0].b, "s_1");
    assert_eq!(p.factors[0].a, "f1*z0(1)*f2*z1(0)*U1");
}

#[test]
fn factor_entries_multiply_to_the_potential_term() {
    // every a_r carries U_r, so a_r b_r is U_r V_r up to the pieces
    for (n, k) in [(1, 4), (2, 4)] {
        for o in objects(n, k) {
            assert_eq!(o.factors.len(), k);
            for f in &o.factors {
                assert!(f.a.ends_with(&format!("U{}", f.position)), "{} {:?}", o.name, f);
            }
        }
    }
}

#[test]
fn twists_on_pij_below_k() {
    let objs = objects(2, 3);
    assert_eq!(find(&objs, "P_2_0").twist.as_deref(), Some("f1*p2*O(-1)"));
    assert_eq!(find(&objs, "P_3_0").twist, None);
    assert_eq!(find(&objs, "Q_0").twist, None);
}
