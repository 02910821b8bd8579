use higgscalc::bundlealg::GradedCharacter;
use higgscalc::{parse_expr, BundleExpr, Constraint, HiggsSystem};
use proptest::prelude::*;

fn base() -> impl Strategy<Value = BundleExpr> {
    prop_oneof![
        Just(BundleExpr::E1),
        Just(BundleExpr::E2),
        (1u64..3).prop_map(BundleExpr::Unitary),
        (-2i64..3).prop_map(BundleExpr::LPow),
    ]
}

fn small_expr() -> impl Strategy<Value = BundleExpr> {
    prop_oneof![
        base(),
        (base(), base()).prop_map(|(a, b)| BundleExpr::sum(a, b)),
        (base(), base()).prop_map(|(a, b)| BundleExpr::tensor(a, b)),
        base().prop_map(BundleExpr::dual),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sym_plus_wedge_is_tensor(e in small_expr(), n in 1usize..4) {
        let h = HiggsSystem::from_expr(&e, n).unwrap();
        let sum = h.sym(2).unwrap().character().add(&h.wedge(2).unwrap().character());
        prop_assert_eq!(sum, h.tensor(&h).unwrap().character());
    }

    #[test]
    fn derived_systems_are_flat_and_homogeneous(e in small_expr(), n in 1usize..4, k in 1u32..3) {
        let h = HiggsSystem::from_expr(&BundleExpr::sym(k, e), n).unwrap();
        prop_assert!(h.check().is_ok());
        let c = h.higgs_complex().unwrap();
        let blocked: Vec<usize> = (0..n).map(|i| c.cohomology().rank(i)).collect();
        prop_assert_eq!(blocked, c.fiber().global_ranks());
    }
}

#[test]
fn primitive_plus_lefschetz_image_reconstructs() {
    for (n, k, j) in [(2, 3, 1), (3, 4, 1), (3, 5, 2), (2, 2, 1), (2, 4, 2)] {
        let v = HiggsSystem::polarized(n);
        let full = v.wedge(k).unwrap();
        let pr = full.primitive_part().unwrap();
        let lower: GradedCharacter = if k >= 2 * j {
            v.wedge(k - 2 * j).unwrap().character().shift((j as i32, j as i32))
        } else {
            GradedCharacter::zero(n)
        };
        assert_eq!(pr.character().add(&lower), full.character(), "n={n} k={k}");
    }
}

#[test]
fn dual_uniformizing_is_dual_character() {
    for n in 1..=4 {
        assert_eq!(HiggsSystem::dual_uniformizing(n).character(), HiggsSystem::uniformizing(n).character().dual());
    }
}

/// The strands of `S^k E1` are Eagon–Northcott type complexes: exact away from both ends.
#[test]
fn eagon_northcott_middle_exactness() {
    let n = 3;
    for k in 1..=3u32 {
        let h = HiggsSystem::from_expr(&BundleExpr::sym(k, BundleExpr::E1), n).unwrap();
        let coh = h.higgs_complex().unwrap().cohomology();
        for s in 0..=(k as i32 + n as i32) {
            let live: Vec<usize> = (0..=n)
                .filter(|&i| {
                    let p = s - i as i32;
                    (0..=k as i32).contains(&p)
                })
                .collect();
            let (Some(&lo), Some(&hi)) = (live.first(), live.last()) else { continue };
            for i in lo + 1..hi {
                assert!(coh.character(i, Some(s)).pieces().is_empty(), "k={k} strand {s} degree {i}");
            }
        }
    }
}

#[test]
fn quotient_by_abelian_part_has_no_extra_trivial_summand() {
    let pr = HiggsSystem::from_expr(&parse_expr("pr(Wedge^3(V))").unwrap(), 2).unwrap();
    let ab = pr.maximal_sub_system(&Constraint::abelian(&pr).unwrap(), true).unwrap();
    let f = pr.quotient_system(&ab).unwrap();
    let trivial = higgscalc::IrrepLabel::trivial(2);
    assert!(!f.piece((1, 2)).contains(&trivial));
    assert!(!f.piece((2, 1)).contains(&trivial));
}
