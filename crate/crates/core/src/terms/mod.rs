//! Terms and equations over the signatures `c`, `cs`, `csp`, `cspd` and `pa`.

mod eval;
mod parse;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::transform::{Generator, Transformation};

pub use eval::{eval, EvalError};
pub use parse::{
    parse_equation, parse_equation_file, parse_equation_file_in, parse_equation_in, parse_term,
    parse_term_in, ParseError,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Sum(Box<Term>, Box<Term>),
    Product(Box<Term>, Box<Term>),
    Complement(Box<Term>),
    Cyl(usize, Box<Term>),
    /// `c_(Γ)`; the index list is kept sorted and free of duplicates.
    CylSet(Vec<usize>, Box<Term>),
    Subst(usize, usize, Box<Term>),
    Perm(usize, usize, Box<Term>),
    Diag(usize, usize),
    SubstSigma(Transformation, Box<Term>),
}

/// Node kinds, used for signature admission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Var,
    Zero,
    One,
    Sum,
    Product,
    Complement,
    Cyl,
    CylSet,
    Subst,
    Perm,
    Diag,
    SubstSigma,
}

impl Kind {
    pub fn is_boolean(self) -> bool {
        matches!(
            self,
            Kind::Var | Kind::Zero | Kind::One | Kind::Sum | Kind::Product | Kind::Complement
        )
    }

    fn symbol(self) -> &'static str {
        match self {
            Kind::Var => "variable",
            Kind::Zero => "0",
            Kind::One => "1",
            Kind::Sum => "+",
            Kind::Product => "*",
            Kind::Complement => "-",
            Kind::Cyl => "c",
            Kind::CylSet => "cg",
            Kind::Subst => "s",
            Kind::Perm => "p",
            Kind::Diag => "d",
            Kind::SubstSigma => "ssub",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Term {
    pub fn var(n: usize) -> Term {
        Term::Var(n)
    }

    pub fn plus(self, other: Term) -> Term {
        Term::Sum(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: Term) -> Term {
        Term::Product(Box::new(self), Box::new(other))
    }

    pub fn complement(self) -> Term {
        Term::Complement(Box::new(self))
    }

    pub fn c(i: usize, t: Term) -> Term {
        Term::Cyl(i, Box::new(t))
    }

    pub fn s(i: usize, j: usize, t: Term) -> Term {
        Term::Subst(i, j, Box::new(t))
    }

    pub fn p(i: usize, j: usize, t: Term) -> Term {
        Term::Perm(i, j, Box::new(t))
    }

    pub fn cg(gamma: &[usize], t: Term) -> Term {
        let mut g = gamma.to_vec();
        g.sort_unstable();
        g.dedup();
        Term::CylSet(g, Box::new(t))
    }

    pub fn ssub(sigma: Transformation, t: Term) -> Term {
        Term::SubstSigma(sigma, Box::new(t))
    }

    pub fn kind(&self) -> Kind {
        match self {
            Term::Var(_) => Kind::Var,
            Term::Zero => Kind::Zero,
            Term::One => Kind::One,
            Term::Sum(..) => Kind::Sum,
            Term::Product(..) => Kind::Product,
            Term::Complement(_) => Kind::Complement,
            Term::Cyl(..) => Kind::Cyl,
            Term::CylSet(..) => Kind::CylSet,
            Term::Subst(..) => Kind::Subst,
            Term::Perm(..) => Kind::Perm,
            Term::Diag(..) => Kind::Diag,
            Term::SubstSigma(..) => Kind::SubstSigma,
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Zero | Term::One | Term::Diag(..) => vec![],
            Term::Sum(a, b) | Term::Product(a, b) => vec![a, b],
            Term::Complement(a)
            | Term::Cyl(_, a)
            | Term::CylSet(_, a)
            | Term::Subst(_, _, a)
            | Term::Perm(_, _, a)
            | Term::SubstSigma(_, a) => vec![a],
        }
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(t.children().into_iter().rev());
        }
        out
    }

    pub fn size(&self) -> usize {
        self.nodes().len()
    }

    /// Number of variables needed to evaluate: one more than the largest
    /// variable index, or zero for closed terms.
    pub fn var_count(&self) -> usize {
        self.nodes()
            .iter()
            .filter_map(|t| match t {
                Term::Var(n) => Some(n + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn kinds(&self) -> Vec<Kind> {
        let mut ks: Vec<Kind> = Vec::new();
        for t in self.nodes() {
            if !ks.contains(&t.kind()) {
                ks.push(t.kind());
            }
        }
        ks
    }

    /// The largest dimension index mentioned, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.nodes()
            .iter()
            .flat_map(|t| match t {
                Term::Cyl(i, _) => vec![*i],
                Term::CylSet(g, _) => g.clone(),
                Term::Subst(i, j, _) | Term::Perm(i, j, _) | Term::Diag(i, j) => vec![*i, *j],
                Term::SubstSigma(s, _) => vec![s.alpha() - 1],
                _ => vec![],
            })
            .max()
    }
}

/// Replaces every `SubstSigma` by nested `Subst`/`Perm` nodes following
/// `Transformation::decompose`, and every `CylSet` by nested `Cyl` nodes
/// with the smallest index outermost.
pub fn expand_sigma(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Zero | Term::One | Term::Diag(..) => t.clone(),
        Term::Sum(a, b) => expand_sigma(a).plus(expand_sigma(b)),
        Term::Product(a, b) => expand_sigma(a).times(expand_sigma(b)),
        Term::Complement(a) => expand_sigma(a).complement(),
        Term::Cyl(i, a) => Term::c(*i, expand_sigma(a)),
        Term::Subst(i, j, a) => Term::s(*i, *j, expand_sigma(a)),
        Term::Perm(i, j, a) => Term::p(*i, *j, expand_sigma(a)),
        Term::CylSet(g, a) => g
            .iter()
            .rev()
            .fold(expand_sigma(a), |acc, &i| Term::c(i, acc)),
        Term::SubstSigma(sigma, a) => apply_generators(&sigma.decompose(), expand_sigma(a)),
    }
}

/// `s_{g1} s_{g2} .. s_{gm} t`, the term for `s_{g1∘..∘gm} t`.
pub fn apply_generators(gens: &[Generator], t: Term) -> Term {
    gens.iter().rev().fold(t, |acc, g| match *g {
        Generator::Swap(i, j) => Term::p(i, j, acc),
        Generator::Replace(i, j) => Term::s(i, j, acc),
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub label: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(label: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        Equation {
            label: label.into(),
            lhs,
            rhs,
        }
    }

    pub fn var_count(&self) -> usize {
        self.lhs.var_count().max(self.rhs.var_count())
    }

    pub fn kinds(&self) -> Vec<Kind> {
        let mut ks = self.lhs.kinds();
        for k in self.rhs.kinds() {
            if !ks.contains(&k) {
                ks.push(k);
            }
        }
        ks
    }

    pub fn expand_sigma(&self) -> Equation {
        Equation::new(
            self.label.clone(),
            expand_sigma(&self.lhs),
            expand_sigma(&self.rhs),
        )
    }
}

/// True iff no complement occurs on either side.
pub fn is_positive(eq: &Equation) -> bool {
    !eq.kinds().contains(&Kind::Complement)
}

/// The similarity types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SigTag {
    #[serde(rename = "c")]
    C,
    #[serde(rename = "cs")]
    Cs,
    #[serde(rename = "csp")]
    Csp,
    #[serde(rename = "cspd")]
    Cspd,
    #[serde(rename = "pa")]
    Pa,
}

impl SigTag {
    pub fn admits(self, kind: Kind) -> bool {
        if kind.is_boolean() {
            return true;
        }
        match self {
            SigTag::C => kind == Kind::Cyl,
            SigTag::Cs => matches!(kind, Kind::Cyl | Kind::Subst),
            SigTag::Csp => matches!(kind, Kind::Cyl | Kind::Subst | Kind::Perm),
            SigTag::Cspd => matches!(kind, Kind::Cyl | Kind::Subst | Kind::Perm | Kind::Diag),
            SigTag::Pa => matches!(kind, Kind::CylSet | Kind::SubstSigma),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SigTag::C => "c",
            SigTag::Cs => "cs",
            SigTag::Csp => "csp",
            SigTag::Cspd => "cspd",
            SigTag::Pa => "pa",
        }
    }
}

impl fmt::Display for SigTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SigTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "c" => Ok(SigTag::C),
            "cs" => Ok(SigTag::Cs),
            "csp" => Ok(SigTag::Csp),
            "cspd" => Ok(SigTag::Cspd),
            "pa" => Ok(SigTag::Pa),
            _ => Err(format!("unknown signature {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub tag: SigTag,
    pub alpha: usize,
}

impl Signature {
    pub fn new(tag: SigTag, alpha: usize) -> Self {
        Signature { tag, alpha }
    }
}

/// True iff every node kind of `t` is admitted by `sig`.
pub fn reduct_check(t: &Term, sig: &Signature) -> bool {
    t.kinds().into_iter().all(|k| sig.tag.admits(k)) && t.max_index().is_none_or(|m| m < sig.alpha)
}

pub fn reduct_check_equation(eq: &Equation, sig: &Signature) -> bool {
    reduct_check(&eq.lhs, sig) && reduct_check(&eq.rhs, sig)
}

fn needs_parens_in_sum_rhs(t: &Term) -> bool {
    matches!(t, Term::Sum(..))
}

fn needs_parens_in_product(t: &Term, right: bool) -> bool {
    matches!(t, Term::Sum(..)) || (right && matches!(t, Term::Product(..)))
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, t: &Term, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = usize>) -> fmt::Result {
    for (n, i) in items.enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{i}")?;
    }
    Ok(())
}

/// Prints in the input grammar; `parse_term(&t.to_string())` gives `t` back.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(n) => write!(f, "x{n}"),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Sum(a, b) => {
                write!(f, "{a}+")?;
                write_wrapped(f, b, needs_parens_in_sum_rhs(b))
            }
            Term::Product(a, b) => {
                write_wrapped(f, a, needs_parens_in_product(a, false))?;
                f.write_str("*")?;
                write_wrapped(f, b, needs_parens_in_product(b, true))
            }
            Term::Complement(a) => {
                f.write_str("-")?;
                write_wrapped(f, a, matches!(**a, Term::Sum(..) | Term::Product(..)))
            }
            Term::Cyl(i, a) => write!(f, "c({i},{a})"),
            Term::CylSet(g, a) => {
                f.write_str("cg({")?;
                write_list(f, g.iter().copied())?;
                write!(f, "}},{a})")
            }
            Term::Subst(i, j, a) => write!(f, "s({i},{j},{a})"),
            Term::Perm(i, j, a) => write!(f, "p({i},{j},{a})"),
            Term::Diag(i, j) => write!(f, "d({i},{j})"),
            Term::SubstSigma(s, a) => {
                f.write_str("ssub([")?;
                write_list(f, s.map().into_iter())?;
                write!(f, "],{a})")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self)
    }
}

/// Renders equations as a file readable by `parse_equation_file`.
pub fn render_equation_file(eqs: &[Equation]) -> String {
    let mut out = String::new();
    for eq in eqs {
        out.push_str("# ");
        out.push_str(&eq.label);
        out.push('\n');
        out.push_str(&eq.to_string());
        out.push('\n');
    }
    out
}
