//! Validity checking of equations in finite algebras.

mod report;
pub mod search;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::bits::Bits;
use crate::suites::SuiteInstance;
use crate::terms::{eval, Equation, EvalError};

pub use report::{SuiteReport, Totals};

pub const DEFAULT_BUDGET: u128 = 1 << 26;
pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
    /// Exhaustive when within budget, random otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strategy {
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    /// Largest number of assignments one equation may be checked on exhaustively.
    pub budget: u128,
    /// Largest total number of assignments for a whole suite, if set.
    pub suite_budget: Option<u128>,
    pub var_cap: usize,
    pub fail_fast: bool,
}

impl Strategy {
    pub fn exhaustive() -> Self {
        Strategy {
            mode: Mode::Exhaustive,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
            suite_budget: None,
            var_cap: 10,
            fail_fast: false,
        }
    }

    pub fn random(samples: u64, seed: u64) -> Self {
        Strategy {
            mode: Mode::Random,
            samples,
            seed,
            ..Strategy::exhaustive()
        }
    }

    pub fn auto(samples: u64, seed: u64) -> Self {
        Strategy {
            mode: Mode::Auto,
            ..Strategy::random(samples, seed)
        }
    }

    pub fn with_fail_fast(mut self, on: bool) -> Self {
        self.fail_fast = on;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("{label}: exhaustive check needs {needed} assignments, budget is {budget}")]
    Budget {
        label: String,
        needed: String,
        budget: u128,
    },

    #[error("suite needs {needed} assignments in total, suite budget is {budget}")]
    SuiteBudget { needed: u128, budget: u128 },

    #[error("{label}: {vars} variables exceed the cap of {cap}")]
    TooManyVariables {
        label: String,
        vars: usize,
        cap: usize,
    },

    #[error("{label}: {source}")]
    Eval {
        label: String,
        #[source]
        source: EvalError,
    },

    #[error("{label}: stored counterexample does not separate the two sides")]
    BogusCounterexample { label: String },
}

/// An assignment under which the two sides differ. Only constructible
/// through a re-evaluation that confirms the difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    assignment: Vec<Bits>,
    lhs: Bits,
    rhs: Bits,
    rendered: Vec<String>,
}

impl Counterexample {
    pub fn new<A: Algebra + ?Sized>(
        a: &A,
        eq: &Equation,
        assignment: Vec<Bits>,
    ) -> Result<Self, CheckError> {
        let wrap = |source| CheckError::Eval {
            label: eq.label.clone(),
            source,
        };
        let lhs = eval(&eq.lhs, a, &assignment).map_err(wrap)?;
        let rhs = eval(&eq.rhs, a, &assignment).map_err(wrap)?;
        if lhs == rhs {
            return Err(CheckError::BogusCounterexample {
                label: eq.label.clone(),
            });
        }
        let rendered = assignment
            .iter()
            .enumerate()
            .map(|(n, v)| format!("x{n}={}", a.render(v)))
            .collect();
        Ok(Counterexample {
            assignment,
            lhs,
            rhs,
            rendered,
        })
    }

    pub fn assignment(&self) -> &[Bits] {
        &self.assignment
    }

    pub fn lhs(&self) -> &Bits {
        &self.lhs
    }

    pub fn rhs(&self) -> &Bits {
        &self.rhs
    }

    /// `x0=.. x1=..` using the algebra's element rendering.
    pub fn render(&self) -> String {
        self.rendered.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Valid,
    Counterexample(Counterexample),
    RandomPass { samples: u64 },
}

impl Status {
    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Counterexample(_))
    }

    pub fn keyword(&self) -> String {
        match self {
            Status::Valid => "valid".into(),
            Status::Counterexample(_) => "counterexample".into(),
            Status::RandomPass { samples } => format!("random-pass({samples})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub label: String,
    pub status: Status,
    /// Assignments evaluated.
    pub checked: u64,
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        self.status.is_failure()
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.status {
            Status::Counterexample(c) => Some(c),
            _ => None,
        }
    }
}

/// Number of assignments an exhaustive check of `eq` needs, if it fits in a `u128`.
pub fn exhaustive_size<A: Algebra + ?Sized>(a: &A, eq: &Equation) -> Option<u128> {
    let bits = a.width().checked_mul(eq.var_count())?;
    if bits >= 127 {
        None
    } else {
        Some(1u128 << bits)
    }
}

fn holds<A: Algebra + ?Sized>(a: &A, eq: &Equation, env: &[Bits]) -> Result<bool, CheckError> {
    let wrap = |source| CheckError::Eval {
        label: eq.label.clone(),
        source,
    };
    Ok(eval(&eq.lhs, a, env).map_err(wrap)? == eval(&eq.rhs, a, env).map_err(wrap)?)
}

fn assignment_at<A: Algebra + ?Sized>(a: &A, vars: usize, index: u64) -> Vec<Bits> {
    let w = a.width();
    let mask = if w >= 64 { u64::MAX } else { (1u64 << w) - 1 };
    (0..vars)
        .map(|v| {
            let shift = w * (vars - 1 - v);
            let part = if shift >= 64 {
                0
            } else {
                (index >> shift) & mask
            };
            a.element(part)
        })
        .collect()
}

fn check_exhaustive<A: Algebra + ?Sized>(
    a: &A,
    eq: &Equation,
    total: u64,
) -> Result<Verdict, CheckError> {
    let vars = eq.var_count();
    let first_bad = (0..total)
        .into_par_iter()
        .map(|idx| {
            let env = assignment_at(a, vars, idx);
            holds(a, eq, &env).map(|ok| (!ok).then_some(env))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    let status = match first_bad {
        None => Status::Valid,
        Some(Err(e)) => return Err(e),
        Some(Ok(Some(env))) => Status::Counterexample(Counterexample::new(a, eq, env)?),
        Some(Ok(None)) => unreachable!("filtered by find_first"),
    };
    Ok(Verdict {
        label: eq.label.clone(),
        status,
        checked: total,
    })
}

fn check_random<A: Algebra + ?Sized>(
    a: &A,
    eq: &Equation,
    samples: u64,
    seed: u64,
    stream: u64,
) -> Result<Verdict, CheckError> {
    let vars = eq.var_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    for n in 0..samples {
        let env: Vec<Bits> = (0..vars).map(|_| a.random_element(&mut rng)).collect();
        if !holds(a, eq, &env)? {
            return Ok(Verdict {
                label: eq.label.clone(),
                status: Status::Counterexample(Counterexample::new(a, eq, env)?),
                checked: n + 1,
            });
        }
    }
    Ok(Verdict {
        label: eq.label.clone(),
        status: Status::RandomPass { samples },
        checked: samples,
    })
}

fn check_indexed<A: Algebra + ?Sized>(
    a: &A,
    eq: &Equation,
    strategy: &Strategy,
    stream: u64,
) -> Result<Verdict, CheckError> {
    let vars = eq.var_count();
    if vars > strategy.var_cap {
        return Err(CheckError::TooManyVariables {
            label: eq.label.clone(),
            vars,
            cap: strategy.var_cap,
        });
    }
    let size = exhaustive_size(a, eq);
    let fits = size.is_some_and(|s| s <= strategy.budget && s <= u64::MAX as u128);
    match strategy.mode {
        Mode::Random => check_random(a, eq, strategy.samples, strategy.seed, stream),
        Mode::Auto if !fits => check_random(a, eq, strategy.samples, strategy.seed, stream),
        Mode::Exhaustive if !fits => Err(CheckError::Budget {
            label: eq.label.clone(),
            needed: size.map_or_else(|| format!("2^{}", a.width() * vars), |s| s.to_string()),
            budget: strategy.budget,
        }),
        Mode::Exhaustive | Mode::Auto => {
            check_exhaustive(a, eq, size.expect("fits implies a size") as u64)
        }
    }
}

/// Decides `eq` in `a`. Exhaustive mode is sound and complete; random mode
/// only ever reports genuine counterexamples.
pub fn check_equation<A: Algebra + ?Sized>(
    a: &A,
    eq: &Equation,
    strategy: &Strategy,
) -> Result<Verdict, CheckError> {
    check_indexed(a, eq, strategy, 0)
}

/// Checks a list of equations. Random streams are keyed by position, so
/// results do not depend on scheduling.
pub fn check_equations<A: Algebra + ?Sized>(
    a: &A,
    name: &str,
    eqs: &[Equation],
    strategy: &Strategy,
) -> Result<SuiteReport, CheckError> {
    if let (Some(limit), Mode::Exhaustive) = (strategy.suite_budget, strategy.mode) {
        let needed = eqs
            .iter()
            .map(|e| exhaustive_size(a, e).unwrap_or(u128::MAX))
            .fold(0u128, u128::saturating_add);
        if needed > limit {
            return Err(CheckError::SuiteBudget {
                needed,
                budget: limit,
            });
        }
    }
    let run = |(n, eq): (usize, &Equation)| check_indexed(a, eq, strategy, n as u64);
    let verdicts = if strategy.fail_fast {
        let chunk = (rayon::current_num_threads() * 4).max(1);
        let mut out = Vec::new();
        for (c, block) in eqs.chunks(chunk).enumerate() {
            let part: Vec<Verdict> = block
                .par_iter()
                .enumerate()
                .map(|(n, eq)| run((c * chunk + n, eq)))
                .collect::<Result<_, _>>()?;
            let stop = part.iter().position(Verdict::is_failure);
            match stop {
                Some(p) => {
                    out.extend(part.into_iter().take(p + 1));
                    break;
                }
                None => out.extend(part),
            }
        }
        out
    } else {
        eqs.par_iter()
            .enumerate()
            .map(run)
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        algebra: a.name(),
        mode: strategy.mode,
        seed: strategy.seed,
        instances: eqs.len(),
        verdicts,
    })
}

pub fn check_suite<A: Algebra + ?Sized>(
    a: &A,
    suite: &SuiteInstance,
    strategy: &Strategy,
) -> Result<SuiteReport, CheckError> {
    check_equations(a, suite.id.as_str(), &suite.equations, strategy)
}
