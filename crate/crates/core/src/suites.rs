//! Instantiation of the axiom systems and derived identities for a fixed
//! dimension.
//!
//! Every index schema is emitted for all admissible index tuples, not for
//! representatives. Labels carry the schema name and the substitution, e.g.
//! `F8[i=0,j=1,k=2]`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::terms::{apply_generators, parse_equation_in, Equation, SigTag, Signature, Term};
use crate::transform::Transformation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SuiteId {
    #[serde(rename = "CA")]
    Ca,
    #[serde(rename = "SCA")]
    Sca,
    #[serde(rename = "FPA")]
    Fpa,
    #[serde(rename = "PA_SUBST")]
    PaSubst,
    #[serde(rename = "THM2")]
    Thm2,
    #[serde(rename = "THM3")]
    Thm3,
    #[serde(rename = "DERIVED_P")]
    DerivedP,
    #[serde(rename = "DERIVED_A")]
    DerivedA,
    #[serde(rename = "FPEA_DIAG")]
    FpeaDiag,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::Ca,
        SuiteId::Sca,
        SuiteId::Fpa,
        SuiteId::PaSubst,
        SuiteId::Thm2,
        SuiteId::Thm3,
        SuiteId::DerivedP,
        SuiteId::DerivedA,
        SuiteId::FpeaDiag,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Ca => "CA",
            SuiteId::Sca => "SCA",
            SuiteId::Fpa => "FPA",
            SuiteId::PaSubst => "PA_SUBST",
            SuiteId::Thm2 => "THM2",
            SuiteId::Thm3 => "THM3",
            SuiteId::DerivedP => "DERIVED_P",
            SuiteId::DerivedA => "DERIVED_A",
            SuiteId::FpeaDiag => "FPEA_DIAG",
        }
    }

    pub fn signature_tag(self) -> SigTag {
        match self {
            SuiteId::Ca | SuiteId::FpeaDiag => SigTag::Cspd,
            SuiteId::Sca | SuiteId::Thm2 | SuiteId::DerivedA => SigTag::Cs,
            SuiteId::Fpa | SuiteId::Thm3 | SuiteId::DerivedP => SigTag::Csp,
            SuiteId::PaSubst => SigTag::Pa,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; expected one of CA, SCA, FPA, PA_SUBST, THM2, THM3, DERIVED_P, DERIVED_A, FPEA_DIAG")]
    Unknown(String),

    #[error("suites need dimension 2..=8, got {0}")]
    Dimension(usize),
}

impl FromStr for SuiteId {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| SuiteError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// For the THM2/THM3 equations: require distinct indices. When false,
    /// the index tuples range over everything allowed by the side condition
    /// of the corresponding definition axiom.
    pub distinct_only: bool,
    /// Also emit optional variants, such as the one-cylindrification (C7).
    pub include_optional: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            distinct_only: true,
            include_optional: false,
        }
    }
}

/// Static description of one schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Schema {
    pub label: &'static str,
    /// Template in the term grammar with symbolic indices.
    pub template: &'static str,
    /// The same schema in subscript notation.
    pub notation: &'static str,
    pub side: &'static str,
    pub min_alpha: usize,
    pub optional: bool,
}

impl Schema {
    /// `label: template`.
    pub fn line(&self) -> String {
        format!("{}: {}", self.label, self.template)
    }

    /// `label: notation`.
    pub fn notation_line(&self) -> String {
        format!("{}: {}", self.label, self.notation)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteInstance {
    pub id: SuiteId,
    pub signature: Signature,
    pub equations: Vec<Equation>,
    pub warnings: Vec<String>,
}

impl SuiteInstance {
    pub fn alpha(&self) -> usize {
        self.signature.alpha
    }

    /// Equations whose label starts with `schema` followed by `[`, `.` or the end.
    pub fn schema(&self, schema: &str) -> Vec<&Equation> {
        self.equations
            .iter()
            .filter(|e| {
                e.label
                    .strip_prefix(schema)
                    .is_some_and(|rest| rest.is_empty() || rest.starts_with(['[', '.']))
            })
            .collect()
    }
}

struct Builder {
    sig: Signature,
    opts: SuiteOptions,
    out: Vec<Equation>,
}

impl Builder {
    fn alpha(&self) -> usize {
        self.sig.alpha
    }

    fn add(&mut self, label: String, text: &str) {
        let mut eq = parse_equation_in(text, &self.sig)
            .unwrap_or_else(|e| panic!("generated equation {text:?} does not parse: {e}"));
        eq.label = label;
        self.out.push(eq);
    }

    fn add_terms(&mut self, label: String, lhs: Term, rhs: Term) {
        self.out.push(Equation::new(label, lhs, rhs));
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.alpha())
            .cartesian_product(0..self.alpha())
            .collect()
    }

    fn distinct_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|(i, j)| i != j).collect()
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        let a = self.alpha();
        (0..a)
            .cartesian_product(0..a)
            .cartesian_product(0..a)
            .map(|((i, j), k)| (i, j, k))
            .collect()
    }

    fn distinct_triples(&self) -> Vec<(usize, usize, usize)> {
        self.triples()
            .into_iter()
            .filter(|&(i, j, k)| i != j && j != k && i != k)
            .collect()
    }

    /// Pairs for the THM2 and THM3 equations: distinct unless relaxed.
    fn thm_pairs(&self) -> Vec<(usize, usize)> {
        if self.opts.distinct_only {
            self.distinct_pairs()
        } else {
            self.pairs()
        }
    }
}

fn tag(name: &str, keys: &str, vals: &[usize]) -> String {
    let body = keys
        .chars()
        .zip(vals)
        .map(|(k, v)| format!("{k}={v}"))
        .join(",");
    format!("{name}[{body}]")
}

fn tag_sigma(name: &str, parts: &[(&str, String)]) -> String {
    let body = parts.iter().map(|(k, v)| format!("{k}={v}")).join(",");
    format!("{name}[{body}]")
}

const BOOLEAN_BASIS: [&str; 8] = [
    "x0+x1 = x1+x0",
    "x0*x1 = x1*x0",
    "x0+x0*x1 = x0",
    "x0*(x0+x1) = x0",
    "x0+-x0 = 1",
    "x0*-x0 = 0",
    "x0+0 = x0",
    "x0*1 = x0",
];

fn boolean(b: &mut Builder, name: &str) {
    for (n, text) in BOOLEAN_BASIS.iter().enumerate() {
        b.add(format!("{name}.B{}", n + 1), text);
    }
}

/// Both forms of "f is a Boolean endomorphism": preservation of `+` and
/// `-`, and the complement-free preservation of `+`, `*`, `0`, `1`.
fn endomorphism(b: &mut Builder, name: &str, label: &str, op: &dyn Fn(&str) -> String) {
    let forms = [
        (
            "add",
            format!("{} = {}+{}", op("x0+x1"), op("x0"), op("x1")),
        ),
        ("neg", format!("{} = -{}", op("-x0"), op("x0"))),
        (
            "mul",
            format!("{} = {}*{}", op("x0*x1"), op("x0"), op("x1")),
        ),
        ("zero", format!("{} = 0", op("0"))),
        ("one", format!("{} = 1", op("1"))),
    ];
    for (form, text) in forms {
        b.add(format!("{name}.{form}{label}"), &text);
    }
}

fn sigma_list(s: &Transformation) -> String {
    s.map().iter().join(",")
}

fn gamma_text(g: &[usize]) -> String {
    format!("{{{}}}", g.iter().join(","))
}

fn subsets(alpha: usize) -> Vec<Vec<usize>> {
    (0..1usize << alpha)
        .map(|m| (0..alpha).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// `σ` and `τ` differ only in `Γ`: they agree on every index outside `Γ`.
pub fn differ_only_in(sigma: &Transformation, tau: &Transformation, gamma: &[usize]) -> bool {
    (0..sigma.alpha()).all(|k| gamma.contains(&k) || sigma.apply(k) == tau.apply(k))
}

/// Side condition of the commutation law for `c_(Γ)` and `s_σ`: `σ` is
/// one-one on `σ⁻¹Γ`.
pub fn one_one_on_preimage(sigma: &Transformation, gamma: &[usize]) -> bool {
    sigma.injective_on(&sigma.preimage(gamma))
}

type Gen = fn(&mut Builder);

struct Def {
    meta: Schema,
    gen: Gen,
}

macro_rules! schema {
    ($label:expr, $template:expr, $notation:expr, $side:expr, $min:expr, $opt:expr, $gen:expr) => {
        Def {
            meta: Schema {
                label: $label,
                template: $template,
                notation: $notation,
                side: $side,
                min_alpha: $min,
                optional: $opt,
            },
            gen: $gen,
        }
    };
}

fn f0_fpa(b: &mut Builder) {
    boolean(b, "F0");
    for i in 0..b.alpha() {
        b.add(tag("F0.s", "i", &[i]), &format!("s({i},{i},x0) = x0"));
    }
    for i in 0..b.alpha() {
        b.add(tag("F0.p", "i", &[i]), &format!("p({i},{i},x0) = x0"));
    }
    for (i, j) in b.pairs() {
        b.add(
            tag("F0.psym", "ij", &[i, j]),
            &format!("p({i},{j},x0) = p({j},{i},x0)"),
        );
    }
}

fn f0_sca(b: &mut Builder) {
    boolean(b, "F0");
    for i in 0..b.alpha() {
        b.add(tag("F0.s", "i", &[i]), &format!("s({i},{i},x0) = x0"));
    }
}

fn f1(b: &mut Builder) {
    for i in 0..b.alpha() {
        b.add(tag("F1", "i", &[i]), &format!("x0+c({i},x0) = c({i},x0)"));
    }
}

fn f2(b: &mut Builder) {
    for i in 0..b.alpha() {
        b.add(
            tag("F2", "i", &[i]),
            &format!("c({i},x0+x1) = c({i},x0)+c({i},x1)"),
        );
    }
}

fn f3(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("F3", "ij", &[i, j]),
            &format!("s({i},{j},c({i},x0)) = c({i},x0)"),
        );
    }
}

fn f4(b: &mut Builder) {
    for (i, j) in b.distinct_pairs() {
        b.add(
            tag("F4", "ij", &[i, j]),
            &format!("c({i},s({i},{j},x0)) = s({i},{j},x0)"),
        );
    }
}

fn f5(b: &mut Builder) {
    for (i, j, k) in b.triples() {
        if k != i && k != j {
            b.add(
                tag("F5", "ijk", &[i, j, k]),
                &format!("s({i},{j},c({k},x0)) = c({k},s({i},{j},x0))"),
            );
        }
    }
}

fn f6_s(b: &mut Builder) {
    for (i, j) in b.pairs() {
        endomorphism(b, "F6.s", &tag("", "ij", &[i, j]), &|x| {
            format!("s({i},{j},{x})")
        });
    }
}

fn f6_sp(b: &mut Builder) {
    f6_s(b);
    for (i, j) in b.pairs() {
        endomorphism(b, "F6.p", &tag("", "ij", &[i, j]), &|x| {
            format!("p({i},{j},{x})")
        });
    }
}

fn f7(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("F7", "ij", &[i, j]),
            &format!("p({i},{j},p({i},{j},x0)) = x0"),
        );
    }
}

fn f8(b: &mut Builder) {
    for (i, j, k) in b.distinct_triples() {
        b.add(
            tag("F8", "ijk", &[i, j, k]),
            &format!("p({i},{j},p({i},{k},x0)) = p({j},{k},p({i},{j},x0))"),
        );
    }
}

fn f9(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("F9", "ij", &[i, j]),
            &format!("p({i},{j},s({j},{i},x0)) = s({i},{j},x0)"),
        );
    }
}

fn fs_named(b: &mut Builder, name: &str) {
    for (i, j, k) in b.distinct_triples() {
        b.add(
            tag(name, "ijk", &[i, j, k]),
            &format!("s({i},{j},s({k},{j},x0)) = s({i},{j},s({k},{i},x0))"),
        );
    }
}

fn fs(b: &mut Builder) {
    fs_named(b, "FS");
}

fn c0(b: &mut Builder) {
    boolean(b, "C0");
}

fn c1(b: &mut Builder) {
    for i in 0..b.alpha() {
        b.add(tag("C1", "i", &[i]), &format!("c({i},0) = 0"));
    }
}

fn c2(b: &mut Builder) {
    for i in 0..b.alpha() {
        b.add(tag("C2", "i", &[i]), &format!("x0+c({i},x0) = c({i},x0)"));
    }
}

fn c3(b: &mut Builder) {
    for i in 0..b.alpha() {
        b.add(
            tag("C3", "i", &[i]),
            &format!("c({i},x0*c({i},x1)) = c({i},x0)*c({i},x1)"),
        );
    }
}

fn c4(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("C4", "ij", &[i, j]),
            &format!("c({i},c({j},x0)) = c({j},c({i},x0))"),
        );
    }
}

fn c5(b: &mut Builder) {
    for i in 0..b.alpha() {
        b.add(tag("C5", "i", &[i]), &format!("d({i},{i}) = 1"));
    }
}

fn c6(b: &mut Builder) {
    for (i, j, k) in b.triples() {
        if k != i && k != j {
            b.add(
                tag("C6", "ijk", &[i, j, k]),
                &format!("d({i},{j}) = c({k},d({i},{k})*d({k},{j}))"),
            );
        }
    }
}

fn c7(b: &mut Builder) {
    for (i, j) in b.distinct_pairs() {
        b.add(
            tag("C7", "ij", &[i, j]),
            &format!("c({i},d({i},{j})*x0)*c({i},d({i},{j})*-x0) = 0"),
        );
    }
}

fn c7_printed(b: &mut Builder) {
    for (i, j) in b.distinct_pairs() {
        b.add(
            tag("C7p", "ij", &[i, j]),
            &format!("c({i},d({i},{j})*x0)*(d({i},{j})*-x0) = 0"),
        );
    }
}

fn thm2_5(b: &mut Builder) {
    for (i, j) in b.thm_pairs() {
        endomorphism(b, "(5)", &tag("", "ij", &[i, j]), &|x| {
            format!("s({i},{j},{x})")
        });
    }
}

fn thm2_6(b: &mut Builder) {
    for (i, j) in b.thm_pairs() {
        b.add(
            tag("(6).a", "ij", &[i, j]),
            &format!("s({i},{j},c({i},x0)) = c({i},x0)"),
        );
    }
    for (i, j) in b.distinct_pairs() {
        b.add(
            tag("(6).b", "ij", &[i, j]),
            &format!("s({i},{j},x0) = c({i},s({i},{j},x0))"),
        );
    }
    for i in 0..b.alpha() {
        b.add(tag("(6).c", "i", &[i]), &format!("s({i},{i},x0) = x0"));
    }
}

fn thm2_7(b: &mut Builder) {
    for (i, j, k) in b.triples() {
        let ok = if b.opts.distinct_only {
            i != j && j != k && i != k
        } else {
            k != i && k != j
        };
        if ok {
            b.add(
                tag("(7)", "ijk", &[i, j, k]),
                &format!("s({i},{j},c({k},x0)) = c({k},s({i},{j},x0))"),
            );
        }
    }
}

fn thm2_8(b: &mut Builder) {
    let triples = if b.opts.distinct_only {
        b.distinct_triples()
    } else {
        b.triples()
    };
    for (i, j, k) in triples {
        b.add(
            tag("(8)", "ijk", &[i, j, k]),
            &format!("s({i},{j},s({k},{j},x0)) = s({i},{j},s({k},{i},x0))"),
        );
    }
}

fn thm3_9(b: &mut Builder) {
    for (i, j) in b.thm_pairs() {
        endomorphism(b, "(9)", &tag("", "ij", &[i, j]), &|x| {
            format!("p({i},{j},{x})")
        });
    }
}

fn thm3_10(b: &mut Builder) {
    for (i, j) in b.thm_pairs() {
        b.add(
            tag("(10).a", "ij", &[i, j]),
            &format!("p({i},{j},p({i},{j},x0)) = x0"),
        );
    }
    for (i, j) in b.thm_pairs() {
        b.add(
            tag("(10).b", "ij", &[i, j]),
            &format!("p({i},{j},x0) = p({j},{i},x0)"),
        );
    }
    for i in 0..b.alpha() {
        b.add(tag("(10).c", "i", &[i]), &format!("p({i},{i},x0) = x0"));
    }
}

fn thm3_11(b: &mut Builder) {
    for (i, j) in b.thm_pairs() {
        b.add(
            tag("(11)", "ij", &[i, j]),
            &format!("p({i},{j},s({i},{j},x0)) = s({j},{i},p({i},{j},x0))"),
        );
    }
}

fn thm3_12(b: &mut Builder) {
    for (i, j, k) in b.distinct_triples() {
        b.add(
            tag("(12)", "ijk", &[i, j, k]),
            &format!("p({i},{j},p({i},{k},x0)) = p({j},{k},p({i},{j},x0))"),
        );
    }
}

fn pa_1(b: &mut Builder) {
    for sigma in Transformation::all(b.alpha()) {
        let list = sigma_list(&sigma);
        let label = tag_sigma("", &[("sigma", sigma.to_string())]);
        endomorphism(b, "(1)", &label, &|x| format!("ssub([{list}],{x})"));
    }
}

fn pa_2(b: &mut Builder) {
    let all = Transformation::all(b.alpha());
    for sigma in &all {
        for tau in &all {
            let st = sigma.compose(tau).expect("same dimension");
            b.add(
                tag_sigma(
                    "(2)",
                    &[("sigma", sigma.to_string()), ("tau", tau.to_string())],
                ),
                &format!(
                    "ssub([{}],x0) = ssub([{}],ssub([{}],x0))",
                    sigma_list(&st),
                    sigma_list(sigma),
                    sigma_list(tau)
                ),
            );
        }
    }
    let id = Transformation::identity(b.alpha());
    b.add(
        "(2).id".into(),
        &format!("ssub([{}],x0) = x0", sigma_list(&id)),
    );
}

fn pa_3(b: &mut Builder) {
    let all = Transformation::all(b.alpha());
    for gamma in subsets(b.alpha()) {
        for sigma in &all {
            for tau in &all {
                if !differ_only_in(sigma, tau, &gamma) {
                    continue;
                }
                let g = gamma_text(&gamma);
                b.add(
                    tag_sigma(
                        "(3)",
                        &[
                            ("sigma", sigma.to_string()),
                            ("tau", tau.to_string()),
                            ("G", g.clone()),
                        ],
                    ),
                    &format!(
                        "ssub([{}],cg({g},x0)) = ssub([{}],cg({g},x0))",
                        sigma_list(sigma),
                        sigma_list(tau)
                    ),
                );
            }
        }
    }
}

fn pa_4(b: &mut Builder) {
    for gamma in subsets(b.alpha()) {
        for sigma in Transformation::all(b.alpha()) {
            if !one_one_on_preimage(&sigma, &gamma) {
                continue;
            }
            let g = gamma_text(&gamma);
            let pre = gamma_text(&sigma.preimage(&gamma));
            let list = sigma_list(&sigma);
            b.add(
                tag_sigma("(4)", &[("sigma", sigma.to_string()), ("G", g.clone())]),
                &format!("cg({g},ssub([{list}],x0)) = ssub([{list}],cg({pre},x0))"),
            );
        }
    }
}

fn p1(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("P1", "ij", &[i, j]),
            &format!("p({i},{j},c({i},x0)) = s({j},{i},c({i},x0))"),
        );
    }
}

fn p2(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("P2", "ij", &[i, j]),
            &format!("p({i},{j},c({j},x0)) = s({i},{j},c({j},x0))"),
        );
    }
}

fn p3(b: &mut Builder) {
    for (i, j, k) in b.triples() {
        if k != i && k != j {
            b.add(
                tag("P3", "ijk", &[i, j, k]),
                &format!("p({i},{j},c({k},x0)) = s({k},{j},s({j},{i},s({i},{k},c({k},x0))))"),
            );
        }
    }
}

fn p4(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("P4", "ij", &[i, j]),
            &format!("p({i},{j},c({i},x0)) = c({j},p({i},{j},x0))"),
        );
    }
}

fn p5(b: &mut Builder) {
    for (i, j, m) in b.distinct_triples() {
        b.add(
            tag("P5", "ijm", &[i, j, m]),
            &format!("p({i},{j},c({m},x0)) = c({m},p({i},{j},x0))"),
        );
    }
}

fn p6(b: &mut Builder) {
    for tau in Transformation::permutations(b.alpha()) {
        let gens = tau.decompose();
        for i in 0..b.alpha() {
            let lhs = apply_generators(&gens, Term::c(i, Term::var(0)));
            let rhs = Term::c(tau.apply(i), apply_generators(&gens, Term::var(0)));
            b.add_terms(
                tag_sigma("P6", &[("tau", tau.to_string()), ("i", i.to_string())]),
                lhs,
                rhs,
            );
        }
    }
}

fn a1(b: &mut Builder) {
    for (i, j, k) in b.triples() {
        if i != k {
            b.add(
                tag("A1", "ijk", &[i, j, k]),
                &format!("s({i},{j},s({i},{k},x0)) = s({i},{k},x0)"),
            );
        }
    }
}

fn a2(b: &mut Builder) {
    let a = b.alpha();
    let quads = (0..a)
        .cartesian_product(0..a)
        .cartesian_product(0..a)
        .cartesian_product(0..a)
        .map(|(((i, j), k), l)| (i, j, k, l));
    for (i, j, k, l) in quads {
        if i != k && i != l && k != j {
            b.add(
                tag("A2", "ijkl", &[i, j, k, l]),
                &format!("s({i},{j},s({k},{l},x0)) = s({k},{l},s({i},{j},x0))"),
            );
        }
    }
}

fn fd1(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("FD1", "ij", &[i, j]),
            &format!("s({i},{j},d({i},{j})) = 1"),
        );
    }
}

fn fd2(b: &mut Builder) {
    for (i, j) in b.pairs() {
        b.add(
            tag("FD2", "ij", &[i, j]),
            &format!("x0*d({i},{j}) = x0*d({i},{j})*s({i},{j},x0)"),
        );
    }
}

fn fd3(b: &mut Builder) {
    let a = b.alpha();
    for (i, j) in b.pairs() {
        let tau = Transformation::transposition(i, j, a).expect("indices in range");
        for (k, l) in b.pairs() {
            b.add(
                tag("FD3", "ijkl", &[i, j, k, l]),
                &format!(
                    "p({i},{j},d({k},{l})) = d({},{})",
                    tau.apply(k),
                    tau.apply(l)
                ),
            );
        }
    }
}

fn defs(id: SuiteId) -> Vec<Def> {
    const ALL: &str = "all indices";
    match id {
        SuiteId::Fpa => vec![
            schema!(
                "F0",
                "Boolean basis; s(i,i,x0) = x0; p(i,i,x0) = x0; p(i,j,x0) = p(j,i,x0)",
                "Boolean algebra, s_ii x = p_ii x = x, p_ij x = p_ji x",
                ALL,
                1,
                false,
                f0_fpa
            ),
            schema!("F1", "x0+c(i,x0) = c(i,x0)", "x ≤ c_i x", ALL, 1, false, f1),
            schema!(
                "F2",
                "c(i,x0+x1) = c(i,x0)+c(i,x1)",
                "c_i(x+y) = c_i x + c_i y",
                ALL,
                1,
                false,
                f2
            ),
            schema!(
                "F3",
                "s(i,j,c(i,x0)) = c(i,x0)",
                "s_ij c_i x = c_i x",
                ALL,
                1,
                false,
                f3
            ),
            schema!(
                "F4",
                "c(i,s(i,j,x0)) = s(i,j,x0)",
                "c_i s_ij x = s_ij x",
                "i ≠ j",
                2,
                false,
                f4
            ),
            schema!(
                "F5",
                "s(i,j,c(k,x0)) = c(k,s(i,j,x0))",
                "s_ij c_k x = c_k s_ij x",
                "k ∉ {i,j}",
                2,
                false,
                f5
            ),
            schema!(
                "F6",
                "s(i,j,_) and p(i,j,_) preserve +, -, *, 0, 1",
                "s_ij and p_ij are Boolean endomorphisms",
                ALL,
                1,
                false,
                f6_sp
            ),
            schema!(
                "F7",
                "p(i,j,p(i,j,x0)) = x0",
                "p_ij p_ij x = x",
                ALL,
                1,
                false,
                f7
            ),
            schema!(
                "F8",
                "p(i,j,p(i,k,x0)) = p(j,k,p(i,j,x0))",
                "p_ij p_ik x = p_jk p_ij x",
                "i, j, k distinct",
                3,
                false,
                f8
            ),
            schema!(
                "F9",
                "p(i,j,s(j,i,x0)) = s(i,j,x0)",
                "p_ij s_ji x = s_ij x",
                ALL,
                1,
                false,
                f9
            ),
        ],
        SuiteId::Sca => vec![
            schema!(
                "F0",
                "Boolean basis; s(i,i,x0) = x0",
                "Boolean algebra, s_ii x = x",
                ALL,
                1,
                false,
                f0_sca
            ),
            schema!("F1", "x0+c(i,x0) = c(i,x0)", "x ≤ c_i x", ALL, 1, false, f1),
            schema!(
                "F2",
                "c(i,x0+x1) = c(i,x0)+c(i,x1)",
                "c_i(x+y) = c_i x + c_i y",
                ALL,
                1,
                false,
                f2
            ),
            schema!(
                "F3",
                "s(i,j,c(i,x0)) = c(i,x0)",
                "s_ij c_i x = c_i x",
                ALL,
                1,
                false,
                f3
            ),
            schema!(
                "F4",
                "c(i,s(i,j,x0)) = s(i,j,x0)",
                "c_i s_ij x = s_ij x",
                "i ≠ j",
                2,
                false,
                f4
            ),
            schema!(
                "F5",
                "s(i,j,c(k,x0)) = c(k,s(i,j,x0))",
                "s_ij c_k x = c_k s_ij x",
                "k ∉ {i,j}",
                2,
                false,
                f5
            ),
            schema!(
                "F6",
                "s(i,j,_) preserves +, -, *, 0, 1",
                "s_ij is a Boolean endomorphism",
                ALL,
                1,
                false,
                f6_s
            ),
            schema!(
                "FS",
                "s(i,j,s(k,j,x0)) = s(i,j,s(k,i,x0))",
                "s_ij s_kj x = s_ij s_ki x",
                "i, j, k distinct",
                3,
                false,
                fs
            ),
        ],
        SuiteId::Ca => vec![
            schema!("C0", "Boolean basis", "Boolean algebra", ALL, 1, false, c0),
            schema!("C1", "c(i,0) = 0", "c_i 0 = 0", ALL, 1, false, c1),
            schema!("C2", "x0+c(i,x0) = c(i,x0)", "x ≤ c_i x", ALL, 1, false, c2),
            schema!(
                "C3",
                "c(i,x0*c(i,x1)) = c(i,x0)*c(i,x1)",
                "c_i(x·c_i y) = c_i x · c_i y",
                ALL,
                1,
                false,
                c3
            ),
            schema!(
                "C4",
                "c(i,c(j,x0)) = c(j,c(i,x0))",
                "c_i c_j x = c_j c_i x",
                ALL,
                1,
                false,
                c4
            ),
            schema!("C5", "d(i,i) = 1", "d_ii = 1", ALL, 1, false, c5),
            schema!(
                "C6",
                "d(i,j) = c(k,d(i,k)*d(k,j))",
                "d_ij = c_k(d_ik · d_kj)",
                "k ∉ {i,j}",
                2,
                false,
                c6
            ),
            schema!(
                "C7",
                "c(i,d(i,j)*x0)*c(i,d(i,j)*-x0) = 0",
                "c_i(d_ij·x) · c_i(d_ij·-x) = 0",
                "i ≠ j",
                2,
                false,
                c7
            ),
            schema!(
                "C7p",
                "c(i,d(i,j)*x0)*(d(i,j)*-x0) = 0",
                "c_i(d_ij·x) · (d_ij·-x) = 0",
                "i ≠ j",
                2,
                true,
                c7_printed
            ),
        ],
        SuiteId::Thm2 => vec![
            schema!(
                "(5)",
                "s(i,j,_) preserves +, -, *, 0, 1",
                "s_ij(x+y) = s_ij x + s_ij y, s_ij(-x) = -s_ij x",
                "i ≠ j",
                2,
                false,
                thm2_5
            ),
            schema!(
                "(6)",
                "s(i,j,c(i,x0)) = c(i,x0); s(i,j,x0) = c(i,s(i,j,x0)); s(i,i,x0) = x0",
                "s_ij c_i x = c_i x, s_ij x = c_i s_ij x, s_ii x = x",
                "i ≠ j",
                2,
                false,
                thm2_6
            ),
            schema!(
                "(7)",
                "s(i,j,c(k,x0)) = c(k,s(i,j,x0))",
                "s_ij c_k x = c_k s_ij x",
                "i, j, k distinct",
                3,
                false,
                thm2_7
            ),
            schema!(
                "(8)",
                "s(i,j,s(k,j,x0)) = s(i,j,s(k,i,x0))",
                "s_ij s_kj x = s_ij s_ki x",
                "i, j, k distinct",
                3,
                false,
                thm2_8
            ),
        ],
        SuiteId::Thm3 => vec![
            schema!(
                "(9)",
                "p(i,j,_) preserves +, -, *, 0, 1",
                "p_ij(x+y) = p_ij x + p_ij y, p_ij(-x) = -p_ij x",
                "i ≠ j",
                2,
                false,
                thm3_9
            ),
            schema!(
                "(10)",
                "p(i,j,p(i,j,x0)) = x0; p(i,j,x0) = p(j,i,x0); p(i,i,x0) = x0",
                "p_ij p_ij x = x, p_ij x = p_ji x, p_ii x = x",
                "i ≠ j",
                2,
                false,
                thm3_10
            ),
            schema!(
                "(11)",
                "p(i,j,s(i,j,x0)) = s(j,i,p(i,j,x0))",
                "p_ij s_ij x = s_ji p_ij x",
                "i ≠ j",
                2,
                false,
                thm3_11
            ),
            schema!(
                "(12)",
                "p(i,j,p(i,k,x0)) = p(j,k,p(i,j,x0))",
                "p_ij p_ik x = p_jk p_ij x",
                "i, j, k distinct",
                3,
                false,
                thm3_12
            ),
        ],
        SuiteId::PaSubst => vec![
            schema!(
                "(1)",
                "ssub(σ,_) preserves +, -, *, 0, 1",
                "s_σ(x+y) = s_σ x + s_σ y, s_σ(-x) = -s_σ x",
                "all σ ∈ T",
                1,
                false,
                pa_1
            ),
            schema!(
                "(2)",
                "ssub(σ∘τ,x0) = ssub(σ,ssub(τ,x0)); ssub(Id,x0) = x0",
                "s_{σ∘τ} x = s_σ s_τ x, s_Id x = x",
                "all σ, τ ∈ T",
                1,
                false,
                pa_2
            ),
            schema!(
                "(3)",
                "ssub(σ,cg(Γ,x0)) = ssub(τ,cg(Γ,x0))",
                "s_σ c_(Γ) x = s_τ c_(Γ) x",
                "σ(k) = τ(k) for all k ∉ Γ",
                1,
                false,
                pa_3
            ),
            schema!(
                "(4)",
                "cg(Γ,ssub(σ,x0)) = ssub(σ,cg(σ⁻¹Γ,x0))",
                "c_(Γ) s_σ x = s_σ c_(σ⁻¹Γ) x",
                "σ one-one on σ⁻¹Γ",
                1,
                false,
                pa_4
            ),
        ],
        SuiteId::DerivedP => vec![
            schema!(
                "P1",
                "p(i,j,c(i,x0)) = s(j,i,c(i,x0))",
                "p_ij c_i x = s_ji c_i x",
                ALL,
                1,
                false,
                p1
            ),
            schema!(
                "P2",
                "p(i,j,c(j,x0)) = s(i,j,c(j,x0))",
                "p_ij c_j x = s_ij c_j x",
                ALL,
                1,
                false,
                p2
            ),
            schema!(
                "P3",
                "p(i,j,c(k,x0)) = s(k,j,s(j,i,s(i,k,c(k,x0))))",
                "p_ij c_k x = s_kj s_ji s_ik c_k x",
                "k ∉ {i,j}",
                2,
                false,
                p3
            ),
            schema!(
                "P4",
                "p(i,j,c(i,x0)) = c(j,p(i,j,x0))",
                "p_ij c_i x = c_j p_ij x",
                ALL,
                1,
                false,
                p4
            ),
            schema!(
                "P5",
                "p(i,j,c(m,x0)) = c(m,p(i,j,x0))",
                "p_ij c_m x = c_m p_ij x",
                "i, j, m distinct",
                3,
                false,
                p5
            ),
            schema!(
                "P6",
                "p_τ(c(i,x0)) = c(τ(i),p_τ(x0))",
                "p_τ c_i x = c_{τ(i)} p_τ x",
                "τ a permutation, p_τ via a transposition decomposition",
                1,
                false,
                p6
            ),
            schema!(
                "FS",
                "s(i,j,s(k,j,x0)) = s(i,j,s(k,i,x0))",
                "s_ij s_kj x = s_ij s_ki x",
                "i, j, k distinct",
                3,
                false,
                fs
            ),
        ],
        SuiteId::DerivedA => vec![
            schema!(
                "A1",
                "s(i,j,s(i,k,x0)) = s(i,k,x0)",
                "s_ij s_ik x = s_ik x",
                "i ≠ k",
                2,
                false,
                a1
            ),
            schema!(
                "A2",
                "s(i,j,s(k,l,x0)) = s(k,l,s(i,j,x0))",
                "s_ij s_kl x = s_kl s_ij x",
                "i ∉ {k,l}, k ≠ j",
                2,
                false,
                a2
            ),
        ],
        SuiteId::FpeaDiag => vec![
            schema!(
                "FD1",
                "s(i,j,d(i,j)) = 1",
                "s_ij d_ij = 1",
                ALL,
                1,
                false,
                fd1
            ),
            schema!(
                "FD2",
                "x0*d(i,j) = x0*d(i,j)*s(i,j,x0)",
                "x·d_ij ≤ s_ij x",
                ALL,
                1,
                false,
                fd2
            ),
            schema!(
                "FD3",
                "p(i,j,d(k,l)) = d(τ(k),τ(l))",
                "p_ij d_kl = d_{τ(k)τ(l)}, τ = [i,j]",
                ALL,
                1,
                false,
                fd3
            ),
        ],
    }
}

pub fn list_schemas(id: SuiteId) -> Vec<Schema> {
    defs(id).into_iter().map(|d| d.meta).collect()
}

pub fn instantiate(id: SuiteId, alpha: usize) -> Result<SuiteInstance, SuiteError> {
    instantiate_with(id, alpha, SuiteOptions::default())
}

pub fn instantiate_with(
    id: SuiteId,
    alpha: usize,
    opts: SuiteOptions,
) -> Result<SuiteInstance, SuiteError> {
    if !(2..=8).contains(&alpha) {
        return Err(SuiteError::Dimension(alpha));
    }
    let mut b = Builder {
        sig: Signature::new(id.signature_tag(), alpha),
        opts,
        out: Vec::new(),
    };
    let mut warnings = Vec::new();
    for def in defs(id) {
        if def.meta.optional && !opts.include_optional {
            continue;
        }
        if alpha < def.meta.min_alpha {
            warnings.push(format!(
                "{} omitted: needs dimension at least {}",
                def.meta.label, def.meta.min_alpha
            ));
            continue;
        }
        (def.gen)(&mut b);
    }
    if alpha < 3 {
        warnings.push(format!(
            "dimension {alpha} is below 3, outside the intended scope"
        ));
    }
    Ok(SuiteInstance {
        id,
        signature: b.sig,
        equations: b.out,
        warnings,
    })
}
