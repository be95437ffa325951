//! Counterexample search over small atom structures.
//!
//! Only the operators an equation mentions are varied. The others are fixed
//! at the identity relation, and unused diagonals are empty.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use super::{check_equation, CheckError, Counterexample, Status, Strategy};
use crate::duality::{cm, AtomStructure, DualityError, Pairs};
use crate::terms::{Equation, Term};

pub const MAX_SEARCH_ATOMS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_atoms: usize,
    pub alpha: usize,
    /// Restrict `T_i` to equivalence relations and `R_ij`, `P_ij` to graphs
    /// `{ (f(y), y) }` of maps, the shapes a Boolean endomorphism can take.
    pub restricted: bool,
    /// Most candidate structures examined for a single atom count.
    pub max_structures: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_atoms: MAX_SEARCH_ATOMS,
            alpha: 3,
            restricted: false,
            max_structures: 1 << 22,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search bounds out of range: {0}")]
    Bounds(String),

    #[error("{candidates} candidate structures on {atoms} atoms exceed the bound of {budget}")]
    Overflow {
        atoms: usize,
        candidates: u128,
        budget: u64,
    },

    #[error(transparent)]
    Check(#[from] CheckError),

    #[error(transparent)]
    Duality(#[from] DualityError),
}

#[derive(Debug, Clone)]
pub struct SearchHit {
    pub structure: AtomStructure,
    pub counterexample: Counterexample,
    /// Structures examined before and including the hit.
    pub examined: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    T(usize),
    R(usize, usize),
    P(usize, usize),
    D(usize, usize),
}

fn slots(eq: &Equation) -> Vec<Slot> {
    let eq = eq.expand_sigma();
    let mut out = BTreeSet::new();
    for t in eq.lhs.nodes().into_iter().chain(eq.rhs.nodes()) {
        match t {
            Term::Cyl(i, _) => {
                out.insert(Slot::T(*i));
            }
            Term::CylSet(g, _) => out.extend(g.iter().map(|&i| Slot::T(i))),
            Term::Subst(i, j, _) => {
                out.insert(Slot::R(*i, *j));
            }
            Term::Perm(i, j, _) => {
                out.insert(Slot::P(*i, *j));
            }
            Term::Diag(i, j) => {
                out.insert(Slot::D(*i, *j));
            }
            _ => {}
        }
    }
    out.into_iter().collect()
}

/// Set partitions of `0..n` as restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            cur.push(b);
            go(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

fn all_relations(n: usize) -> Vec<Pairs> {
    (0u64..1 << (n * n))
        .map(|m| {
            (0..n * n)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| (b / n, b % n))
                .collect()
        })
        .collect()
}

fn equivalences(n: usize) -> Vec<Pairs> {
    partitions(n)
        .into_iter()
        .map(|blocks| {
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| blocks[x] == blocks[y])
                .collect()
        })
        .collect()
}

fn map_graphs(n: usize) -> Vec<Pairs> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|code| {
            let mut c = code;
            (0..n)
                .map(|y| {
                    let fy = c % n;
                    c /= n;
                    (fy, y)
                })
                .collect()
        })
        .collect()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .map(|m| (0..n).filter(|b| m >> b & 1 == 1).collect())
        .collect()
}

struct Space {
    n: usize,
    alpha: usize,
    slots: Vec<Slot>,
    rel_choices: Vec<Pairs>,
    eqv_choices: Vec<Pairs>,
    map_choices: Vec<Pairs>,
    set_choices: Vec<Vec<usize>>,
    restricted: bool,
}

impl Space {
    fn new(n: usize, alpha: usize, slots: Vec<Slot>, restricted: bool) -> Self {
        let needs_rel = slots.iter().any(|s| !matches!(s, Slot::D(..)));
        Space {
            n,
            alpha,
            rel_choices: if needs_rel && !restricted {
                all_relations(n)
            } else {
                Vec::new()
            },
            eqv_choices: if restricted {
                equivalences(n)
            } else {
                Vec::new()
            },
            map_choices: if restricted {
                map_graphs(n)
            } else {
                Vec::new()
            },
            set_choices: subsets(n),
            slots,
            restricted,
        }
    }

    fn radix(&self, slot: Slot) -> u128 {
        let len = match (slot, self.restricted) {
            (Slot::D(..), _) => self.set_choices.len(),
            (Slot::T(_), true) => self.eqv_choices.len(),
            (_, true) => self.map_choices.len(),
            (_, false) => 1usize << (self.n * self.n),
        };
        len as u128
    }

    fn size(&self) -> u128 {
        self.slots
            .iter()
            .map(|&s| self.radix(s))
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    fn relation(&self, slot: Slot, digit: usize) -> Pairs {
        match (slot, self.restricted) {
            (Slot::T(_), true) => self.eqv_choices[digit].clone(),
            (_, true) => self.map_choices[digit].clone(),
            (_, false) => self.rel_choices[digit].clone(),
        }
    }

    /// Candidate number `index`, the first slot being the most significant digit.
    fn structure(&self, index: u64) -> Result<AtomStructure, DualityError> {
        let mut rest = index as u128;
        let mut digits = vec![0usize; self.slots.len()];
        for (k, &slot) in self.slots.iter().enumerate().rev() {
            let radix = self.radix(slot);
            digits[k] = (rest % radix) as usize;
            rest /= radix;
        }
        self.structure_from_digits(&digits)
    }

    /// The structure choosing option `digits[k]` for slot `k`.
    fn structure_from_digits(&self, digits: &[usize]) -> Result<AtomStructure, DualityError> {
        let (n, alpha) = (self.n, self.alpha);
        let ident: Pairs = (0..n).map(|x| (x, x)).collect();
        let mut t = vec![ident.clone(); alpha];
        let mut r: Option<Vec<Pairs>> = None;
        let mut p: Option<Vec<Pairs>> = None;
        let mut d: Option<Vec<Vec<usize>>> = None;
        for (&slot, &digit) in self.slots.iter().zip(digits) {
            match slot {
                Slot::T(i) => t[i] = self.relation(slot, digit),
                Slot::R(i, j) => {
                    r.get_or_insert_with(|| vec![ident.clone(); alpha * alpha])[i * alpha + j] =
                        self.relation(slot, digit)
                }
                Slot::P(i, j) => {
                    p.get_or_insert_with(|| vec![ident.clone(); alpha * alpha])[i * alpha + j] =
                        self.relation(slot, digit)
                }
                Slot::D(i, j) => {
                    d.get_or_insert_with(|| vec![Vec::new(); alpha * alpha])[i * alpha + j] =
                        self.set_choices[digit].clone()
                }
            }
        }
        let mut s = AtomStructure::new(n, alpha, t)?;
        if let Some(r) = r {
            s = s.with_r(r)?;
        }
        if let Some(p) = p {
            s = s.with_p(p)?;
        }
        if let Some(d) = d {
            s = s.with_d(d)?;
        }
        Ok(s)
    }
}

/// Looks for a finite complex algebra refuting `eq`, trying atom counts
/// `1..=max_atoms` in order and candidates in a fixed order within each.
/// Returns the first hit.
pub fn search_counterexample(
    eq: &Equation,
    bounds: &SearchBounds,
) -> Result<Option<SearchHit>, SearchError> {
    if bounds.max_atoms == 0 || bounds.max_atoms > MAX_SEARCH_ATOMS {
        return Err(SearchError::Bounds(format!(
            "atom count must be in 1..={MAX_SEARCH_ATOMS}, got {}",
            bounds.max_atoms
        )));
    }
    if let Some(m) = eq.lhs.max_index().max(eq.rhs.max_index()) {
        if m >= bounds.alpha {
            return Err(SearchError::Bounds(format!(
                "index {m} out of range for dimension {}",
                bounds.alpha
            )));
        }
    }
    let slots = slots(eq);
    let strategy = Strategy::exhaustive();
    let mut examined = 0u64;
    for n in 1..=bounds.max_atoms {
        let space = Space::new(n, bounds.alpha, slots.clone(), bounds.restricted);
        let size = space.size();
        if size > bounds.max_structures as u128 {
            return Err(SearchError::Overflow {
                atoms: n,
                candidates: size,
                budget: bounds.max_structures,
            });
        }
        let hit = (0..size as u64)
            .into_par_iter()
            .map(
                |idx| -> Result<Option<(u64, AtomStructure, Counterexample)>, SearchError> {
                    let s = space.structure(idx)?;
                    let v = check_equation(&cm(&s), eq, &strategy)?;
                    Ok(match v.status {
                        Status::Counterexample(c) => Some((idx, s, c)),
                        _ => None,
                    })
                },
            )
            .find_first(|r| !matches!(r, Ok(None)));
        match hit {
            None => examined += size as u64,
            Some(Err(e)) => return Err(e),
            Some(Ok(Some((idx, structure, counterexample)))) => {
                return Ok(Some(SearchHit {
                    structure,
                    counterexample,
                    examined: examined + idx + 1,
                }))
            }
            Some(Ok(None)) => unreachable!("filtered by find_first"),
        }
    }
    Ok(None)
}

/// Every structure on `atoms` atoms satisfying all of `eqs`, in candidate
/// order. Slots are assigned one at a time and an equation is checked as soon
/// as all the operators it mentions are fixed, so failing prefixes are pruned.
/// `max_nodes` bounds the number of partial assignments visited.
pub fn enumerate_models(
    eqs: &[Equation],
    atoms: usize,
    alpha: usize,
    restricted: bool,
    max_nodes: u64,
) -> Result<Vec<AtomStructure>, SearchError> {
    if atoms == 0 || atoms > MAX_SEARCH_ATOMS {
        return Err(SearchError::Bounds(format!(
            "atom count must be in 1..={MAX_SEARCH_ATOMS}, got {atoms}"
        )));
    }
    let per_eq: Vec<Vec<Slot>> = eqs.iter().map(slots).collect();
    let mut all: Vec<Slot> = per_eq.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    let space = Space::new(atoms, alpha, all.clone(), restricted);
    // Equations become checkable at the level of their last slot.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); all.len() + 1];
    for (e, used) in per_eq.iter().enumerate() {
        let level = used
            .iter()
            .map(|s| all.binary_search(s).expect("collected above") + 1)
            .max()
            .unwrap_or(0);
        ready[level].push(e);
    }
    let strategy = Strategy::exhaustive();
    let radices: Vec<usize> = all.iter().map(|&s| space.radix(s) as usize).collect();
    let mut digits = vec![0usize; all.len()];
    let mut nodes = 0u64;
    let mut out = Vec::new();

    let passes = |level: usize, digits: &[usize]| -> Result<bool, SearchError> {
        let s = space.structure_from_digits(digits)?;
        let a = cm(&s);
        for &e in &ready[level] {
            if check_equation(&a, &eqs[e], &strategy)?.is_failure() {
                return Ok(false);
            }
        }
        Ok(true)
    };

    if !passes(0, &digits)? {
        return Ok(out);
    }
    // Iterative depth-first walk; `level` slots are currently fixed.
    let mut level = 0usize;
    loop {
        if level == all.len() {
            out.push(space.structure_from_digits(&digits)?);
            // Backtrack to the deepest slot that can still advance.
            loop {
                if level == 0 {
                    return Ok(out);
                }
                level -= 1;
                digits[level] += 1;
                if digits[level] < radices[level] {
                    break;
                }
                digits[level] = 0;
            }
        }
        nodes += 1;
        if nodes > max_nodes {
            return Err(SearchError::Overflow {
                atoms,
                candidates: nodes as u128,
                budget: max_nodes,
            });
        }
        if passes(level + 1, &digits)? {
            level += 1;
            continue;
        }
        loop {
            digits[level] += 1;
            if digits[level] < radices[level] {
                break;
            }
            digits[level] = 0;
            if level == 0 {
                return Ok(out);
            }
            level -= 1;
        }
    }
}
