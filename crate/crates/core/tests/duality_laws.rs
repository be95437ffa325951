use cylkit::checker::search::{search_counterexample, SearchBounds};
use cylkit::checker::{check_equation, check_suite, Strategy as CheckStrategy};
use cylkit::duality::{cm, em_roundtrip, seq_structure, uf, AtomStructure, Pairs};
use cylkit::suites::{instantiate, SuiteId};
use cylkit::terms::{parse_equation, SigTag};
use cylkit::{Algebra, Bits, SetAlgebra};
use proptest::prelude::*;

fn arb_pairs(n: usize) -> impl Strategy<Value = Pairs> {
    proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| (k / n, k % n))
            .collect()
    })
}

fn arb_structure(alpha: usize) -> impl Strategy<Value = AtomStructure> {
    (1usize..=4).prop_flat_map(move |n| {
        (
            proptest::collection::vec(arb_pairs(n), alpha),
            proptest::collection::vec(arb_pairs(n), alpha * alpha),
        )
            .prop_map(move |(t, r)| AtomStructure::new(n, alpha, t).unwrap().with_r(r).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complex_operators_are_completely_additive(s in arb_structure(3)) {
        let a = cm(&s);
        let n = s.atoms();
        for i in 0..3 {
            prop_assert!(a.cyl(i, &a.zero()).is_empty());
            for m in 0..1u64 << n {
                let x = a.element(m);
                let mut by_atoms = Bits::zeros(n);
                for k in x.iter() {
                    by_atoms.union_with(&a.cyl(i, &a.element(1 << k)));
                }
                prop_assert_eq!(a.cyl(i, &x), by_atoms);
            }
        }
    }

    #[test]
    fn ultrafilter_frame_of_complex_algebra_is_the_structure(s in arb_structure(3)) {
        prop_assert_eq!(uf(&cm(&s)).unwrap(), s.clone());
        prop_assert!(em_roundtrip(&cm(&s)).is_ok());
    }
}

#[test]
fn sequence_structure_reproduces_set_cylindrifications() {
    for base in [1, 2] {
        let set = SetAlgebra::new(3, base).unwrap();
        let a = cm(&seq_structure(3, base, SigTag::Cspd).unwrap());
        assert_eq!(a.width(), set.width());
        for m in 0..1u64 << set.width() {
            let x = set.element(m);
            for i in 0..3 {
                assert_eq!(a.cyl(i, &x), set.cyl(i, &x));
                for j in 0..3 {
                    assert_eq!(a.subst(i, j, &x), set.subst(i, j, &x));
                    assert_eq!(a.perm(i, j, &x), set.perm(i, j, &x));
                }
            }
        }
    }
}

/// Three atoms with `p_01` a 3-cycle and every other operator the identity.
fn non_involutive_p() -> AtomStructure {
    let id: Pairs = (0..3).map(|a| (a, a)).collect();
    let mut p = vec![id.clone(); 9];
    p[1] = vec![(0, 1), (1, 2), (2, 0)];
    p[3] = p[1].clone();
    AtomStructure::new(3, 3, vec![id.clone(); 3])
        .unwrap()
        .with_r(vec![id; 9])
        .unwrap()
        .with_p(p)
        .unwrap()
}

#[test]
fn non_involutive_p_breaks_f7_only_where_it_should() {
    let a = cm(&non_involutive_p());
    let suite = instantiate(SuiteId::Fpa, 3).unwrap();
    let r = check_suite(&a, &suite, &CheckStrategy::exhaustive()).unwrap();
    let f7: Vec<_> = r
        .failures()
        .filter(|v| v.label.starts_with("F7"))
        .map(|v| v.label.clone())
        .collect();
    assert_eq!(f7, ["F7[i=0,j=1]", "F7[i=1,j=0]"]);
}

#[test]
fn search_witness_for_trivial_cylindrification_is_golden() {
    let eq = parse_equation("c(0,x0) = x0", 3).unwrap();
    let hit = search_counterexample(&eq, &SearchBounds::default())
        .unwrap()
        .unwrap();
    assert_eq!(hit.examined, 1);
    let golden = include_str!("data/search_c0_x0.json");
    let want = AtomStructure::from_json(golden).unwrap();
    assert_eq!(hit.structure, want);
    let v = check_equation(&cm(&want), &eq, &CheckStrategy::exhaustive()).unwrap();
    assert!(v.is_failure());
}
