use cylkit::terms::Term;
use cylkit::Transformation;
use proptest::prelude::*;

pub const ALPHA: usize = 3;

/// Terms over dimension 3 of depth at most `depth` in variables `x0..x{vars-1}`.
pub fn arb_term(depth: u32, vars: usize) -> impl Strategy<Value = Term> {
    let idx = || 0usize..ALPHA;
    let leaf = prop_oneof![
        (0..vars).prop_map(Term::Var),
        Just(Term::Zero),
        Just(Term::One),
        (idx(), idx()).prop_map(|(i, j)| Term::Diag(i, j)),
    ];
    leaf.prop_recursive(depth, 64, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.plus(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.times(b)),
            inner.clone().prop_map(Term::complement),
            (0usize..ALPHA, inner.clone()).prop_map(|(i, a)| Term::c(i, a)),
            (
                proptest::collection::vec(0usize..ALPHA, 1..=3),
                inner.clone()
            )
                .prop_map(|(g, a)| Term::cg(&g, a)),
            (0usize..ALPHA, 0usize..ALPHA, inner.clone()).prop_map(|(i, j, a)| Term::s(i, j, a)),
            (0usize..ALPHA, 0usize..ALPHA, inner.clone()).prop_map(|(i, j, a)| Term::p(i, j, a)),
            (proptest::collection::vec(0usize..ALPHA, ALPHA), inner)
                .prop_map(|(m, a)| Term::ssub(Transformation::from_map(&m).unwrap(), a)),
        ]
    })
}
