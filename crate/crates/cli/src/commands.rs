use std::fs;
use std::path::{Path, PathBuf};

use cylkit::checker::search::{search_counterexample, SearchBounds, SearchError};
use cylkit::checker::{check_equations, CheckError, Mode, Status, Strategy, SuiteReport};
use cylkit::duality::{
    self, em_roundtrip, operator_tables, seq_structure, AtomStructure, DualityError, FiniteAlgebra,
    OperatorTables,
};
use cylkit::represent::{
    run_permutation_pipeline, run_substitution_pipeline, Manifest, Presented, RepresentError,
};
use cylkit::suites::{instantiate_with, SuiteError, SuiteOptions};
use cylkit::terms::{
    parse_equation, parse_equation_file, render_equation_file, Equation, ParseError, SigTag,
};
use cylkit::{Algebra, Error as CoreError, SetAlgebra, Shape};
use serde_json::json;
use thiserror::Error;

use crate::{
    AlgebraArgs, CheckArgs, CmArgs, Demo, ExportArgs, Format, RepresentArgs, RoundtripArgs,
    SearchArgs, UfArgs,
};

pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(passed: bool) -> Self {
        if passed {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Represent(#[from] RepresentError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for failed verifications, 2 for anything wrong with the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Represent(e) => match e {
                RepresentError::Precondition(_)
                | RepresentError::NotPartition(_)
                | RepresentError::Core(_) => 2,
                _ => 1,
            },
            CliError::Duality(DualityError::Homomorphism { .. }) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load_structure(path: &Path) -> Result<AtomStructure> {
    read_json(path)
}

fn load_tables(path: &Path) -> Result<FiniteAlgebra> {
    let t: OperatorTables = read_json(path)?;
    Ok(FiniteAlgebra::from_tables(&t)?)
}

fn load_algebra(a: &AlgebraArgs) -> Result<Box<dyn Algebra>> {
    Ok(match (&a.structure, &a.tables) {
        (Some(p), _) => Box::new(duality::cm(&load_structure(p)?)),
        (None, Some(p)) => Box::new(load_tables(p)?),
        (None, None) => Box::new(SetAlgebra::new(a.alpha, a.base)?),
    })
}

fn report_text(r: &SuiteReport) -> String {
    let t = r.totals();
    let mut out = r.render_text();
    out.push_str(&format!(
        "# {} on {}: {} instances, {} valid, {} random-pass, {} counterexample (mode {}, seed {})\n",
        r.suite,
        r.algebra,
        t.instances,
        t.valid,
        t.random_pass,
        t.counterexample,
        mode_name(r.mode),
        r.seed
    ));
    if let Some(v) = r.first_failure() {
        out.push_str(&format!("# first failure: {}\n", v.label));
    }
    out
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exhaustive => "exhaustive",
        Mode::Random => "random",
        Mode::Auto => "auto",
    }
}

fn report_json(r: &SuiteReport) -> String {
    let mut v = r.summary_json();
    let verdicts: Vec<_> = r
        .verdicts
        .iter()
        .map(|v| {
            let mut o =
                json!({ "label": v.label, "status": v.status.keyword(), "checked": v.checked });
            if let Status::Counterexample(c) = &v.status {
                o["assignment"] = json!(c.render());
            }
            o
        })
        .collect();
    v["verdicts"] = json!(verdicts);
    pretty(&v)
}

pub fn check(args: CheckArgs) -> Result<Outcome> {
    let a = load_algebra(&args.algebra)?;
    let alpha = a.alpha();
    let (name, eqs): (String, Vec<Equation>) = if let Some(id) = args.suite {
        let opts = SuiteOptions {
            include_optional: args.include_optional,
            ..SuiteOptions::default()
        };
        let suite = instantiate_with(id, alpha, opts)?;
        for w in &suite.warnings {
            eprintln!("warning: {w}");
        }
        (id.as_str().to_string(), suite.equations)
    } else if let Some(path) = &args.eq_file {
        (
            path.display().to_string(),
            parse_equation_file(&read(path)?, alpha)?,
        )
    } else {
        let eqs = args
            .eq
            .iter()
            .map(|text| {
                let mut e = parse_equation(text, alpha)?;
                e.label = text.clone();
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        ("equations".to_string(), eqs)
    };
    let mut strategy = match args.mode {
        crate::ModeArg::Exhaustive => Strategy::exhaustive(),
        crate::ModeArg::Random => Strategy::random(args.samples, args.seed),
        crate::ModeArg::Auto => Strategy::auto(args.samples, args.seed),
    }
    .with_fail_fast(args.fail_fast);
    strategy.seed = args.seed;
    if let Some(b) = args.budget {
        strategy = strategy.with_budget(b);
    }
    let report = check_equations(a.as_ref(), &name, &eqs, &strategy)?;
    let text = match args.format {
        Format::Text => report_text(&report),
        Format::Json => report_json(&report),
    };
    emit(args.out.as_deref(), &text)?;
    if args.out.is_some() {
        if let Some(v) = report.first_failure() {
            eprintln!("first failure: {}", v.label);
        }
    }
    Ok(Outcome::from_pass(report.passed()))
}

fn summary(a: &FiniteAlgebra) -> String {
    let s = a.structure();
    let ops: Vec<&str> = [
        (true, "c"),
        (s.has_r(), "s"),
        (s.has_p(), "p"),
        (s.has_d(), "d"),
    ]
    .into_iter()
    .filter_map(|(on, n)| on.then_some(n))
    .collect();
    format!(
        "complex algebra: alpha={}, {} atoms, {} elements, operators {}\n",
        s.alpha(),
        s.atoms(),
        1u64 << s.atoms().min(63),
        ops.join(",")
    )
}

pub fn cm(args: CmArgs) -> Result<Outcome> {
    let s = match (&args.structure, args.seq) {
        (Some(p), _) => load_structure(p)?,
        (None, Some(base)) => seq_structure(args.alpha, base, args.sig)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let a = duality::cm(&s);
    eprint!("{}", summary(&a));
    emit(args.out.as_deref(), &pretty(&operator_tables(&a)?))?;
    Ok(Outcome::Pass)
}

pub fn uf(args: UfArgs) -> Result<Outcome> {
    let s = match (&args.tables, args.seq) {
        (Some(p), _) => duality::uf(&load_tables(p)?)?,
        (None, Some(base)) => seq_structure(args.alpha, base, args.sig)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let mut text = s.to_json();
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    Ok(Outcome::Pass)
}

pub fn roundtrip(args: RoundtripArgs) -> Result<Outcome> {
    let a = match (&args.structure, &args.tables) {
        (Some(p), _) => duality::cm(&load_structure(p)?),
        (None, Some(p)) => load_tables(p)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let r = em_roundtrip(&a)?;
    println!(
        "isomorphic ({} atoms, {} elements, {} operators)",
        r.atoms, r.elements_checked, r.operators_checked
    );
    Ok(Outcome::Pass)
}

fn manifest_text(m: &Manifest) -> String {
    let mut out = String::new();
    for c in &m.checks {
        out.push_str(&format!(
            "{}  {}  {}\n",
            c.name,
            if c.passed { "pass" } else { "fail" },
            c.detail
        ));
    }
    out
}

pub fn represent(args: RepresentArgs) -> Result<Outcome> {
    let shape = Shape::new(args.alpha, args.base)?;
    let manifest = match args.demo {
        Demo::Sec5 => {
            let w = args.w.unwrap_or(args.base * args.alpha);
            let input = Presented::twisted_sca(shape, args.shift)?;
            run_substitution_pipeline(&input, w, args.seed)?.manifest
        }
        Demo::Sec6 => {
            let order: usize = (1..=args.alpha).product();
            if let Some(w) = args.w {
                if w != order {
                    return Err(CliError::Usage(format!(
                        "the sec6 demo blows up by the {order} permutations of alpha; got --W {w}"
                    )));
                }
            }
            let input = Presented::full(shape, SigTag::Csp)?;
            run_permutation_pipeline(&input, args.seed, args.samples)?.manifest
        }
    };
    print!("{}", manifest_text(&manifest));
    if let Some(path) = &args.out {
        emit(Some(path), &pretty(&manifest))?;
    }
    Ok(Outcome::from_pass(manifest.checks.iter().all(|c| c.passed)))
}

pub fn export_suite(args: ExportArgs) -> Result<Outcome> {
    let opts = SuiteOptions {
        distinct_only: !args.all_indices,
        include_optional: args.include_optional,
    };
    let suite = instantiate_with(args.suite, args.alpha, opts)?;
    for w in &suite.warnings {
        eprintln!("warning: {w}");
    }
    emit(args.out.as_deref(), &render_equation_file(&suite.equations))?;
    eprintln!("{}: {} instances", suite.id, suite.equations.len());
    Ok(Outcome::Pass)
}

pub fn search(args: SearchArgs) -> Result<Outcome> {
    let eq = parse_equation(&args.eq, args.alpha)?;
    let bounds = SearchBounds {
        max_atoms: args.max_atoms,
        alpha: args.alpha,
        restricted: args.restricted,
        max_structures: args.max_structures,
    };
    match search_counterexample(&eq, &bounds)? {
        None => {
            println!(
                "no counterexample on up to {} atoms{}",
                args.max_atoms,
                if args.restricted { " (restricted)" } else { "" }
            );
            Ok(Outcome::Pass)
        }
        Some(hit) => {
            println!(
                "counterexample on {} atoms after {} structures: {}",
                hit.structure.atoms(),
                hit.examined,
                hit.counterexample.render()
            );
            let mut text = hit.structure.to_json();
            text.push('\n');
            match &args.out {
                Some(p) => emit(Some(p), &text)?,
                None => print!("{text}"),
            }
            Ok(Outcome::Fail)
        }
    }
}
