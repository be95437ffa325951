use cylkit::checker::{check_equation, check_suite, Status, Strategy};
use cylkit::suites::{instantiate, SuiteId};
use cylkit::terms::{eval, parse_equation, Equation};
use cylkit::SetAlgebra;
use proptest::prelude::*;

mod common;
use common::{arb_term, ALPHA};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counterexamples_recheck_and_modes_agree(l in arb_term(3, 2), r in arb_term(3, 2), seed in any::<u64>()) {
        let a = SetAlgebra::new(ALPHA, 2).unwrap();
        let eq = Equation::new("e", l, r);
        let ex = check_equation(&a, &eq, &Strategy::exhaustive()).unwrap();
        let rnd = check_equation(&a, &eq, &Strategy::random(200, seed)).unwrap();
        for v in [&ex, &rnd] {
            if let Some(c) = v.counterexample() {
                let env = c.assignment();
                prop_assert_ne!(eval(&eq.lhs, &a, env).unwrap(), eval(&eq.rhs, &a, env).unwrap());
            }
        }
        if ex.status == Status::Valid {
            prop_assert_eq!(rnd.status, Status::RandomPass { samples: 200 });
        }
    }
}

#[test]
fn printed_p3_has_counterexamples() {
    let a = SetAlgebra::new(3, 2).unwrap();
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (0, 2, 1), (1, 2, 0)] {
        let printed = parse_equation(
            &format!("p({i},{j},c({k},x0)) = s({i},{k},s({k},{i},s({j},{i},c({k},x0))))"),
            3,
        )
        .unwrap();
        let v = check_equation(&a, &printed, &Strategy::exhaustive()).unwrap();
        assert!(v.is_failure(), "printed form at {i}{j}{k}");
        let emitted = parse_equation(
            &format!("p({i},{j},c({k},x0)) = s({k},{j},s({j},{i},s({i},{k},c({k},x0))))"),
            3,
        )
        .unwrap();
        assert_eq!(
            check_equation(&a, &emitted, &Strategy::exhaustive())
                .unwrap()
                .status,
            Status::Valid
        );
    }
}

#[test]
fn both_c7_forms_hold_in_set_algebras() {
    let a = SetAlgebra::new(3, 2).unwrap();
    let suite = cylkit::suites::instantiate_with(
        SuiteId::Ca,
        3,
        cylkit::suites::SuiteOptions {
            include_optional: true,
            ..Default::default()
        },
    )
    .unwrap();
    let r = check_suite(&a, &suite, &Strategy::exhaustive()).unwrap();
    assert_eq!(
        r.verdicts
            .iter()
            .filter(|v| v.label.starts_with("C7p"))
            .count(),
        6
    );
    assert!(r.passed(), "{:?}", r.first_failure().map(|v| &v.label));
}

#[test]
fn reports_are_deterministic() {
    let a = SetAlgebra::new(3, 3).unwrap();
    let suite = instantiate(SuiteId::DerivedA, 3).unwrap();
    let s = Strategy::random(300, 99);
    let one = check_suite(&a, &suite, &s).unwrap();
    let two = check_suite(&a, &suite, &s).unwrap();
    assert_eq!(one.render_text(), two.render_text());
    assert_eq!(one.summary_json(), two.summary_json());
}
