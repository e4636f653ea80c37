use grading_lattice::{GradingContext, LatticeElement};
use proptest::prelude::*;
use toric_fan::*;

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Class of a token such as `X1`, `V3`, `C23`, `C23^-1`.
fn token_class(ctx: &GradingContext, t: &str) -> LatticeElement {
    let (body, inv) = match t.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (t, false),
    };
    let digits: Vec<usize> = body[1..].chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
    let e = match &body[..1] {
        "X" => ctx.x(digits[0]),
        "V" => ctx.v(digits[0]),
        "C" => ctx.c(digits[0], digits[1]),
        _ => panic!("bad token {t}"),
    };
    if inv {
        -e
    } else {
        e
    }
}

const EXAMPLE_24: [(&str, [&str; 6]); 10] = [
    ("44", ["X1", "X2", "C23", "V3", "V2", "V1"]),
    ("43", ["X1", "C13", "C23^-1", "C22", "V2", "V1"]),
    ("42", ["X1", "C13", "V3", "C22^-1", "C21", "V1"]),
    ("41", ["X1", "C13", "V3", "V2", "C21^-1", "X3"]),
    ("33", ["V4", "C13^-1", "X2", "C22", "V2", "V1"]),
    ("32", ["V4", "C13^-1", "C12", "C22^-1", "C21", "V1"]),
    ("31", ["V4", "C13^-1", "C12", "V2", "C21^-1", "X3"]),
    ("22", ["V4", "V3", "C12^-1", "X2", "C21", "V1"]),
    ("21", ["V4", "V3", "C12^-1", "C11", "C21^-1", "X3"]),
    ("11", ["V4", "V3", "V2", "C11^-1", "X2", "X3"]),
];

#[test]
fn example_24_charts_verbatim() {
    let ctx = GradingContext::new(2, 4);
    let charts = all_charts(&ctx);
    assert_eq!(charts.len(), 10);
    for (name, gens) in EXAMPLE_24 {
        let phi: Vec<usize> = name.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        let chart = charts.iter().find(|c| c.phi.values == phi).expect("chart present");
        let mut want: Vec<LatticeElement> = gens.iter().map(|t| token_class(&ctx, t)).collect();
        let mut got = chart.basis.clone();
        want.sort();
        got.sort();
        assert_eq!(got, want, "sigma_{name}");
        let mut want_labels: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let mut got_labels = chart.labels.clone();
        want_labels.sort();
        got_labels.sort();
        assert_eq!(got_labels, want_labels, "labels of sigma_{name}");
    }
}

#[test]
fn chart_basis_examples() {
    let ctx = GradingContext::new(2, 4);
    let c44 = chart_basis(&ctx, &NonincreasingMap::new(vec![4, 4], 4).unwrap());
    assert_eq!(c44.labels, ["V1", "V2", "V3", "X2", "X1", "C23"]);
    let c32 = chart_basis(&ctx, &NonincreasingMap::new(vec![3, 2], 4).unwrap());
    assert_eq!(c32.labels, ["V1", "V4", "C13^-1", "C22^-1", "C12", "C21"]);
    let ctx11 = GradingContext::new(1, 1);
    let c1 = chart_basis(&ctx11, &NonincreasingMap::new(vec![1], 1).unwrap());
    assert_eq!(c1.basis, vec![ctx11.x(1), ctx11.x(2)]);
}

#[test]
fn enumerate_examples() {
    assert_eq!(enumerate_phis(2, 4).len(), 10);
    assert_eq!(enumerate_phis(1, 1), vec![NonincreasingMap { values: vec![1] }]);
    // independent oracle: filter all maps [1,3] -> [1,3]
    let mut brute = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                if a >= b && b >= c {
                    brute.push(vec![a, b, c]);
                }
            }
        }
    }
    let got: Vec<Vec<usize>> = enumerate_phis(3, 3).into_iter().map(|p| p.values).collect();
    assert_eq!(got, brute);
    assert_eq!(got.len(), 10);
}

#[test]
fn unimodularity_examples() {
    let ctx = GradingContext::new(2, 4);
    for c in all_charts(&ctx) {
        assert!(is_unimodular(&ctx, &c));
    }
    let ctx11 = GradingContext::new(1, 1);
    assert!(!is_unimodular_set(&ctx11, &[ctx11.v(1), ctx11.v(1)]));
}

#[test]
fn express_nonneg_examples() {
    let ctx = GradingContext::new(2, 4);
    let c43 = chart_basis(&ctx, &NonincreasingMap::new(vec![4, 3], 4).unwrap());
    let coeffs = express_nonneg(&ctx, &c43, &ctx.v(4)).unwrap();
    let mut nonzero: Vec<(String, i64)> = coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(p, &c)| (c43.labels[p].clone(), c)).collect();
    nonzero.sort();
    assert_eq!(nonzero, vec![("C13".to_string(), 1), ("X1".to_string(), 1)]);
    assert_eq!(express_nonneg(&ctx, &c43, &ctx.zero()).unwrap(), vec![0; 6]);
    let c44 = chart_basis(&ctx, &NonincreasingMap::new(vec![4, 4], 4).unwrap());
    assert!(matches!(express_nonneg(&ctx, &c44, &-ctx.c(1, 1)), Err(FanError::NotInCone(_))));
}

#[test]
fn dual_rays_examples() {
    let ctx = GradingContext::new(1, 1);
    let c = chart_basis(&ctx, &NonincreasingMap::new(vec![1], 1).unwrap());
    let rays: Vec<_> = dual_cone_rays(&ctx, &c).unwrap().iter().map(|r| r.as_omega().unwrap()).collect();
    assert_eq!(rays, vec![(1, 1), (2, 1)]);
    let ctx = GradingContext::new(2, 4);
    let c = chart_basis(&ctx, &NonincreasingMap::new(vec![4, 4], 4).unwrap());
    let mut rays: Vec<_> = dual_cone_rays(&ctx, &c).unwrap().iter().map(|r| r.as_omega().unwrap()).collect();
    rays.sort();
    assert_eq!(rays, vec![(1, 4), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4)]);
}

#[test]
fn special_fiber_examples() {
    use ComponentType::*;
    let f = special_fiber_model(2, 4, false).unwrap();
    assert_eq!(f.components.len(), 15);
    assert_eq!(f.count(AffinePlane), 3);
    assert_eq!(f.count(AffineLineTimesProj), 6);
    assert_eq!(f.count(ProjTimesProj), 3);
    assert_eq!(f.count(BlowUp), 3);
    f.check_consistency().unwrap();
    let g = special_fiber_model(1, 5, false).unwrap();
    assert_eq!(g.count(AffineLine), 2);
    assert_eq!(g.count(ProjLine), 4);
    assert_eq!(g.strata.len(), 5);
    for k in 1..=5 {
        let h = special_fiber_model(2, k, true).unwrap();
        assert_eq!(h.boundary.len(), k + 2);
        assert_eq!(h.boundary.first().unwrap().kind, AffineLine);
        assert_eq!(h.boundary.last().unwrap().kind, AffineLine);
        assert_eq!(h.count(AffinePlane), 1);
        h.check_consistency().unwrap();
    }
    assert!(special_fiber_model(3, 2, false).is_err());
}

#[test]
fn projection_maps_respect_classes() {
    let m1 = projection_map(2, 4, 1).unwrap();
    let lookup = |m: &MonomialMap, s: &str| m.images.iter().find(|(a, _)| a == s).unwrap().1.clone();
    assert_eq!(lookup(&m1, "X1"), vec![("X1".to_string(), 1)]);
    assert_eq!(lookup(&m1, "X2"), vec![("X2".to_string(), 1), ("X3".to_string(), 1)]);
    assert_eq!(lookup(&m1, "C2"), vec![("C12".to_string(), 1)]);
    let m2 = projection_map(2, 4, 2).unwrap();
    assert_eq!(lookup(&m2, "X1"), vec![("X1".to_string(), 1), ("X2".to_string(), 1)]);
    assert_eq!(lookup(&m2, "X2"), vec![("X3".to_string(), 1)]);
    let src = GradingContext::new(1, 4);
    let tgt = GradingContext::new(2, 4);
    assert_eq!(m2.pull_class(&src.x(1)), tgt.x(1) + tgt.x(2));
    assert_eq!(m1.pull_class(&src.x(2)), tgt.x(2) + tgt.x(3));
    for a in 1..=2 {
        let m = projection_map(2, 4, a).unwrap();
        for i in 0..=4 {
            assert_eq!(m.pull_class(&src.c(1, i)), tgt.c(a, i));
        }
    }
    assert!(projection_map(2, 4, 3).is_err());
}

fn arb_nk() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=8).prop_flat_map(|n| (Just(n), 1usize..=(9 - n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn every_chart_is_a_unimodular_basis((n, k) in arb_nk()) {
        let ctx = GradingContext::new(n, k);
        let charts = all_charts(&ctx);
        prop_assert_eq!(charts.len(), binom(n + k - 1, n));
        for c in &charts {
            prop_assert_eq!(c.basis.len(), n + k);
            prop_assert!(is_unimodular(&ctx, c));
        }
    }

    #[test]
    fn cone_membership_decision((n, k) in (1usize..=4).prop_flat_map(|n| (Just(n), 1usize..=(6 - n)))) {
        let ctx = GradingContext::new(n, k);
        for c in all_charts(&ctx) {
            for i in 1..=n {
                for j in 0..=k {
                    let pos = express_nonneg(&ctx, &c, &ctx.c(i, j)).is_ok();
                    let neg = express_nonneg(&ctx, &c, &-ctx.c(i, j)).is_ok();
                    prop_assert_eq!(pos, j < c.phi.at(i));
                    prop_assert_eq!(neg, j >= c.phi.at(i));
                }
            }
            for j in 1..=k {
                prop_assert!(express_nonneg(&ctx, &c, &ctx.v(j)).is_ok());
            }
            for i in 1..=n + 1 {
                prop_assert!(express_nonneg(&ctx, &c, &ctx.x(i)).is_ok());
            }
        }
    }

    #[test]
    fn dual_basis_pairs_to_identity((n, k) in arb_nk()) {
        let ctx = GradingContext::new(n, k);
        for c in all_charts(&ctx) {
            let rays = dual_cone_rays(&ctx, &c).unwrap();
            for (a, r) in rays.iter().enumerate() {
                prop_assert_eq!(r.alpha.iter().sum::<i64>(), r.beta.iter().sum::<i64>());
                for (b, e) in c.basis.iter().enumerate() {
                    prop_assert_eq!(r.pair(&ctx, e), i64::from(a == b));
                }
            }
        }
    }
}
