use cylkit::{Bits, Relation, Shape, Transformation};
use proptest::prelude::*;

fn shape(alpha: usize, base: usize) -> Shape {
    Shape::new(alpha, base).unwrap()
}

fn rel(s: Shape, mask: u64) -> Relation {
    Relation::from_bits(s, Bits::from_u64(s.points(), mask)).unwrap()
}

fn arb_relation(alpha: usize, base: usize) -> impl Strategy<Value = Relation> {
    let s = shape(alpha, base);
    proptest::collection::vec(any::<bool>(), s.points()).prop_map(move |v| {
        let idx = v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i);
        Relation::from_bits(s, Bits::from_indices(s.points(), idx)).unwrap()
    })
}

#[test]
fn encoding_is_a_bijection() {
    for (alpha, base) in [(3, 2), (3, 3), (4, 3), (2, 5)] {
        let s = shape(alpha, base);
        for k in 0..s.points() {
            assert_eq!(s.encode(&s.decode(k)), k);
        }
    }
}

#[test]
fn sub_sigma_is_functorial_on_all_of_t3() {
    let s = shape(3, 2);
    let all = Transformation::all(3);
    for mask in 0..256u64 {
        let r = rel(s, mask);
        let pulled: Vec<Relation> = all.iter().map(|t| r.sub_sigma(t).unwrap()).collect();
        for sigma in &all {
            for (tau, r_tau) in all.iter().zip(&pulled) {
                let composed = r.sub_sigma(&sigma.compose(tau).unwrap()).unwrap();
                assert_eq!(
                    composed,
                    r_tau.sub_sigma(sigma).unwrap(),
                    "{sigma} {tau} {mask}"
                );
            }
        }
    }
}

#[test]
fn perm_sigma_equals_sub_sigma_on_permutations() {
    let s = shape(3, 2);
    for mask in 0..256u64 {
        let r = rel(s, mask);
        for p in Transformation::permutations(3) {
            assert_eq!(r.perm_sigma(&p).unwrap(), r.sub_sigma(&p).unwrap());
        }
    }
}

#[test]
fn substitution_is_cylindrified_diagonal_meet() {
    let s = shape(3, 2);
    for mask in 0..256u64 {
        let r = rel(s, mask);
        for i in 0..3 {
            for j in 0..3 {
                let d = Relation::diag(s, i, j).unwrap();
                assert_eq!(d.subst(i, j).unwrap(), Relation::full(s));
                if i != j {
                    let want = r.intersection(&d).unwrap().cyl(i).unwrap();
                    assert_eq!(r.subst(i, j).unwrap(), want);
                }
            }
        }
    }
}

#[test]
fn decompose_recomposes() {
    for alpha in [3, 4] {
        for sigma in Transformation::all(alpha) {
            let back = Transformation::recompose(&sigma.decompose(), alpha).unwrap();
            assert_eq!(back, sigma);
        }
    }
}

proptest! {
    #[test]
    fn cyl_is_additive_increasing_idempotent(
        r in arb_relation(3, 3),
        q in arb_relation(3, 3),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        let c = |x: &Relation, k: usize| x.cyl(k).unwrap();
        prop_assert_eq!(c(&r.union(&q).unwrap(), i), c(&r, i).union(&c(&q, i)).unwrap());
        prop_assert!(r.is_subset(&c(&r, i)).unwrap());
        prop_assert_eq!(c(&c(&r, i), i), c(&r, i));
        prop_assert_eq!(c(&c(&r, j), i), c(&c(&r, i), j));
    }

    #[test]
    fn sub_sigma_is_functorial_over_three(
        r in arb_relation(3, 3),
        s in proptest::collection::vec(0usize..3, 3),
        t in proptest::collection::vec(0usize..3, 3),
    ) {
        let sigma = Transformation::from_map(&s).unwrap();
        let tau = Transformation::from_map(&t).unwrap();
        prop_assert_eq!(
            r.sub_sigma(&sigma.compose(&tau).unwrap()).unwrap(),
            r.sub_sigma(&tau).unwrap().sub_sigma(&sigma).unwrap()
        );
    }
}
