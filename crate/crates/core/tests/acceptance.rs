//! One line per acceptance criterion, `PASS` or `FAIL`, then a single
//! assertion over all of them. The lines go to stderr uncaptured.

use std::io::Write;
use std::time::{Duration, Instant};

use cylkit::checker::{check_equation, check_suite, Status, Strategy, SuiteReport};
use cylkit::duality::{cm, em_roundtrip, seq_structure, AtomStructure, Pairs};
use cylkit::represent::{
    recover_diagonals, run_permutation_pipeline, run_substitution_pipeline, verify_rdsc,
    ImageAlgebra, Presented, SplitFamily,
};
use cylkit::suites::{instantiate, SuiteId, SuiteInstance};
use cylkit::terms::{parse_equation, SigTag};
use cylkit::{Algebra, Bits, SetAlgebra, Shape, Transformation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALPHA: usize = 3;
const SEED: u64 = 0x5eed;
const RANDOM_SAMPLES: u64 = 10_000;
const FPA_TIME_LIMIT: Duration = Duration::from_secs(60);
const PA_SUBST_TIME_LIMIT: Duration = Duration::from_secs(120);
const SUBSTITUTION_DEMO_TIME_LIMIT: Duration = Duration::from_secs(120);
/// Counterexamples tolerated in any suite that is supposed to hold.
const ALLOWED_FAILURES: usize = 0;
const ROUNDTRIP_STRUCTURES: usize = 50;
const ROUNDTRIP_MAX_ATOMS: usize = 4;
const SPLIT_PIECE_POINTS: usize = 36;
const PA_SUBST_PAIRS: usize = 729;
/// Random elements per FPA instance on the permutation demo's image algebra.
const IMAGE_SAMPLES: u64 = 256;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn failures(r: &SuiteReport) -> usize {
    r.failures().count()
}

/// Exhaustive at `|U| = 1, 2`, seeded random at `|U| = 3`.
fn regime(suite: &SuiteInstance) -> (usize, usize, Duration) {
    let start = Instant::now();
    let mut bad = 0;
    let mut checked = 0;
    for base in [1, 2] {
        let a = SetAlgebra::new(ALPHA, base).unwrap();
        let r = check_suite(&a, suite, &Strategy::exhaustive()).unwrap();
        assert!(r
            .verdicts
            .iter()
            .all(|v| v.status == Status::Valid || v.is_failure()));
        bad += failures(&r);
        checked += r.verdicts.len();
    }
    let exhaustive_time = start.elapsed();
    let a = SetAlgebra::new(ALPHA, 3).unwrap();
    let r = check_suite(&a, suite, &Strategy::random(RANDOM_SAMPLES, SEED)).unwrap();
    bad += failures(&r);
    checked += r.verdicts.len();
    (bad, checked, exhaustive_time)
}

fn fpa_validity() -> Outcome {
    let suite = instantiate(SuiteId::Fpa, ALPHA).unwrap();
    let (bad, checked, t) = regime(&suite);
    outcome(
        bad == ALLOWED_FAILURES && t < FPA_TIME_LIMIT,
        format!("{checked} checks, {bad} failures, exhaustive part {t:.1?}"),
    )
}

fn derived_identities() -> Outcome {
    let mut bad = 0;
    let mut checked = 0;
    for id in [SuiteId::DerivedP, SuiteId::DerivedA] {
        let (b, c, _) = regime(&instantiate(id, ALPHA).unwrap());
        bad += b;
        checked += c;
    }
    outcome(
        bad == ALLOWED_FAILURES,
        format!("{checked} checks, {bad} failures"),
    )
}

fn pa_substitution_suite() -> Outcome {
    let suite = instantiate(SuiteId::PaSubst, ALPHA).unwrap();
    let pairs = suite
        .equations
        .iter()
        .filter(|e| e.label.starts_with("(2)["))
        .count();
    let a = SetAlgebra::new(ALPHA, 2).unwrap();
    let start = Instant::now();
    let r = check_suite(&a, &suite, &Strategy::exhaustive()).unwrap();
    let t = start.elapsed();
    let bad = failures(&r);
    outcome(
        pairs == PA_SUBST_PAIRS && bad == ALLOWED_FAILURES && t < PA_SUBST_TIME_LIMIT,
        format!(
            "{} instances ({pairs} pairs in (2)), {bad} failures, {t:.1?}",
            r.verdicts.len()
        ),
    )
}

/// The least `y` with `s_ij y = 1`, found by trying every element.
fn least_total_preimage(a: &SetAlgebra, i: usize, j: usize) -> Bits {
    let mut meet = a.one();
    for m in 0..1u64 << a.width() {
        let y = a.element(m);
        if a.subst(i, j, &y).unwrap().is_full() {
            meet = meet.intersection(&y);
        }
    }
    meet
}

fn diagonal_recovery() -> Outcome {
    let a = SetAlgebra::new(ALPHA, 2).unwrap();
    let shape = a.shape();
    let d = recover_diagonals(&a).unwrap();
    let mut exact = true;
    for i in 0..ALPHA {
        for j in 0..ALPHA {
            if i == j {
                continue;
            }
            let real = Bits::from_indices(
                shape.points(),
                (0..shape.points()).filter(|&p| shape.coord(p, i) == shape.coord(p, j)),
            );
            exact &= d.get(i, j) == &real && least_total_preimage(&a, i, j) == real;
        }
    }
    let r = verify_rdsc(&a, &d, &Strategy::exhaustive()).unwrap();
    let exhaustive = r.ca.verdicts.iter().all(|v| v.status == Status::Valid);
    outcome(
        exact && r.passed() && exhaustive,
        format!(
            "d* = D bit for bit: {exact}; {} CA instances, s_ij = c_i(d*.x) on {} elements",
            r.ca.verdicts.len(),
            r.elements_checked
        ),
    )
}

fn random_pairs(rng: &mut ChaCha8Rng, n: usize) -> Pairs {
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(0.4))
        .collect()
}

fn random_structure(rng: &mut ChaCha8Rng) -> AtomStructure {
    let n = rng.gen_range(1..=ROUNDTRIP_MAX_ATOMS);
    let t = (0..ALPHA).map(|_| random_pairs(rng, n)).collect();
    let r = (0..ALPHA * ALPHA).map(|_| random_pairs(rng, n)).collect();
    let p = (0..ALPHA * ALPHA).map(|_| random_pairs(rng, n)).collect();
    AtomStructure::new(n, ALPHA, t)
        .unwrap()
        .with_r(r)
        .unwrap()
        .with_p(p)
        .unwrap()
}

fn duality() -> Outcome {
    let mut cyl_ok = true;
    for base in [1, 2] {
        let set = SetAlgebra::new(ALPHA, base).unwrap();
        let a = cm(&seq_structure(ALPHA, base, SigTag::Cspd).unwrap());
        cyl_ok &= a.width() == set.width();
        for m in 0..1u64 << set.width() {
            let x = set.element(m);
            for i in 0..ALPHA {
                cyl_ok &= a.cyl(i, &x) == set.cyl(i, &x);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let isomorphic = (0..ROUNDTRIP_STRUCTURES)
        .filter(|_| em_roundtrip(&cm(&random_structure(&mut rng))).is_ok())
        .count();
    outcome(
        cyl_ok && isomorphic == ROUNDTRIP_STRUCTURES,
        format!(
            "sequence structures match: {cyl_ok}; {isomorphic}/{ROUNDTRIP_STRUCTURES} round trips"
        ),
    )
}

fn splitting() -> Outcome {
    let source = Shape::new(ALPHA, 2).unwrap();
    let split = SplitFamily::new(source).unwrap();
    let v = SetAlgebra::from_shape(split.blowup().target());
    let order = split.group().order();
    let mut ok = order == 6 && split.verify().is_ok();
    for s in 0..source.points() {
        let hat = split.blowup().hat(s);
        let mut union = Bits::zeros(v.width());
        for sigma in 0..order {
            let piece = split.split_shat(s, sigma);
            ok &= piece.count() == SPLIT_PIECE_POINTS && piece.is_disjoint(&union);
            union.union_with(&piece);
            for i in 0..ALPHA {
                ok &= v.cyl(i, &piece) == v.cyl(i, &hat);
            }
        }
        ok &= union == hat;
    }
    outcome(ok, format!("{} hats, {order} parts each", source.points()))
}

fn substitution_demo() -> Outcome {
    let shape = Shape::new(ALPHA, 2).unwrap();
    let input = Presented::twisted_sca(shape, 1).unwrap();
    let start = Instant::now();
    let run = run_substitution_pipeline(&input, 3, SEED).unwrap();
    let v = SetAlgebra::from_shape(run.blowup.target());
    let vs = v.shape();
    let mut inside = true;
    for i in 0..ALPHA {
        for j in 0..ALPHA {
            let real = Bits::from_indices(
                vs.points(),
                (0..vs.points()).filter(|&p| vs.coord(p, i) == vs.coord(p, j)),
            );
            inside &= real.is_subset(&run.diagonals[i * ALPHA + j]);
        }
    }
    let a = input.algebra();
    let mut agree = true;
    for m in 0..1u64 << a.width() {
        let x = run
            .rearrangement
            .apply(&run.blowup.apply(&input.points_of(&a.element(m))));
        for i in 0..ALPHA {
            for j in 0..ALPHA {
                if i != j {
                    let d = &run.diagonals[i * ALPHA + j];
                    agree &= v.cyl(i, &d.intersection(&x)) == v.subst(i, j, &x).unwrap();
                }
            }
        }
    }
    let t = start.elapsed();
    let steps = run.manifest.checks.iter().all(|c| c.passed);
    outcome(
        inside && agree && steps && t < SUBSTITUTION_DEMO_TIME_LIMIT,
        format!(
            "D^V <= d'': {inside}; s'' = S^V on {} elements: {agree}; {t:.1?}",
            1u64 << a.width()
        ),
    )
}

fn permutation_demo() -> Outcome {
    let mut ok = true;
    let mut rf_atoms = 0;
    let fpa = instantiate(SuiteId::Fpa, ALPHA).unwrap();
    for base in [2, 3] {
        let shape = Shape::new(ALPHA, base).unwrap();
        let input = Presented::full(shape, SigTag::Csp).unwrap();
        let run = run_permutation_pipeline(&input, SEED, IMAGE_SAMPLES).unwrap();
        let u = SetAlgebra::from_shape(shape);
        let v = SetAlgebra::from_shape(run.split.blowup().target());
        let a = input.algebra();
        for k in (0..a.width()).filter(|&k| run.rf[k]) {
            rf_atoms += 1;
            let rep = &run.images[k];
            let f = run.split.blowup().apply(&input.atoms()[k]);
            for i in 0..ALPHA {
                ok &= v.cyl(i, rep) == v.cyl(i, &f);
            }
            for tau in Transformation::permutations(ALPHA) {
                let moved = u.subst_sigma(&tau, &input.atoms()[k]).unwrap();
                let image = run.image(&input.element_of(&moved).unwrap());
                ok &= image == v.subst_sigma(&tau, rep).unwrap();
            }
        }
        let image = ImageAlgebra::from_run(a, &run);
        let r = check_suite(&image, &fpa, &Strategy::auto(IMAGE_SAMPLES, SEED)).unwrap();
        ok &= failures(&r) == ALLOWED_FAILURES && run.manifest.checks.iter().all(|c| c.passed);
    }
    outcome(
        ok && rf_atoms > 0,
        format!("{rf_atoms} repetition-free atoms at |U| = 2, 3"),
    )
}

/// Three atoms with `p_01 = p_10` a 3-cycle and everything else the identity.
fn non_involutive_p() -> AtomStructure {
    let id: Pairs = (0..3).map(|a| (a, a)).collect();
    let mut p = vec![id.clone(); ALPHA * ALPHA];
    p[1] = vec![(0, 1), (1, 2), (2, 0)];
    p[ALPHA] = p[1].clone();
    AtomStructure::new(3, ALPHA, vec![id.clone(); ALPHA])
        .unwrap()
        .with_r(vec![id; ALPHA * ALPHA])
        .unwrap()
        .with_p(p)
        .unwrap()
}

fn negative_controls() -> Outcome {
    let a = SetAlgebra::new(ALPHA, 2).unwrap();
    let mut found = Vec::new();
    for text in ["c(0,x0) = x0", "p(0,1,x0) = s(0,1,x0)"] {
        let e = parse_equation(text, ALPHA).unwrap();
        found.push(
            check_equation(&a, &e, &Strategy::exhaustive())
                .unwrap()
                .is_failure(),
        );
    }
    let bad = cm(&non_involutive_p());
    let suite = instantiate(SuiteId::Fpa, ALPHA).unwrap();
    let f7 = suite.schema("F7").into_iter().any(|e| {
        check_equation(&bad, e, &Strategy::exhaustive())
            .unwrap()
            .is_failure()
    });
    found.push(f7);
    outcome(
        found.iter().all(|&f| f),
        format!("counterexamples found: {found:?}"),
    )
}

fn reports(threads: usize) -> Vec<String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| {
        let a = SetAlgebra::new(ALPHA, 3).unwrap();
        let suite = instantiate(SuiteId::Fpa, ALPHA).unwrap();
        let r = check_suite(&a, &suite, &Strategy::random(200, SEED)).unwrap();
        let sec5 = run_substitution_pipeline(
            &Presented::twisted_sca(Shape::new(ALPHA, 2).unwrap(), 1).unwrap(),
            3,
            SEED,
        )
        .unwrap();
        let sec6 = run_permutation_pipeline(
            &Presented::full(Shape::new(ALPHA, 2).unwrap(), SigTag::Csp).unwrap(),
            SEED,
            64,
        )
        .unwrap();
        vec![
            r.render_text(),
            r.summary_json().to_string(),
            serde_json::to_string(&sec5.manifest).unwrap(),
            serde_json::to_string(&sec6.manifest).unwrap(),
        ]
    })
}

fn determinism() -> Outcome {
    let first = reports(1);
    let same = first == reports(1) && first == reports(4);
    let bytes: usize = first.iter().map(String::len).sum();
    outcome(
        same,
        format!("{bytes} report bytes identical across runs and thread counts"),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("FPA suite valid in set algebras", fpa_validity),
        ("derived identities valid", derived_identities),
        ("PA substitution suite at |U|=2", pa_substitution_suite),
        ("diagonal recovery", diagonal_recovery),
        ("complex algebras and round trips", duality),
        ("splitting s^ into parts", splitting),
        ("substitution representation demo", substitution_demo),
        ("permutation representation demo", permutation_demo),
        ("negative controls", negative_controls),
        ("deterministic reports", determinism),
    ];
    let mut failed = Vec::new();
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        writeln!(
            std::io::stderr(),
            "criterion {:>2}: {}  {name}: {}",
            n + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        )
        .unwrap();
        if !o.passed {
            failed.push(n + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
