//! Total maps `σ: α → α`, the replacements `[i/j]` and transpositions `[i,j]`,
//! and decomposition of an arbitrary map into those generators.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A total map on `{0, .., α-1}`, stored as its value list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Transformation {
    map: SmallVec<[u8; 8]>,
}

/// A single generator of `T_α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `[i/j]`: sends `i` to `j`, fixes everything else.
    Replace(usize, usize),
    /// `[i,j]`: swaps `i` and `j`.
    Swap(usize, usize),
}

impl Generator {
    pub fn to_transformation(self, alpha: usize) -> Result<Transformation> {
        match self {
            Generator::Replace(i, j) => Transformation::replacement(i, j, alpha),
            Generator::Swap(i, j) => Transformation::transposition(i, j, alpha),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Replace(i, j) => write!(f, "[{i}/{j}]"),
            Generator::Swap(i, j) => write!(f, "[{i},{j}]"),
        }
    }
}

fn check_index(index: usize, alpha: usize) -> Result<()> {
    if index >= alpha {
        Err(Error::Index { index, alpha })
    } else {
        Ok(())
    }
}

impl Transformation {
    pub fn identity(alpha: usize) -> Self {
        Transformation {
            map: (0..alpha as u8).collect(),
        }
    }

    pub fn from_map(map: &[usize]) -> Result<Self> {
        let alpha = map.len();
        if alpha == 0 || alpha > 64 {
            return Err(Error::InvalidMap(format!("length {alpha}")));
        }
        for &v in map {
            check_index(v, alpha)?;
        }
        Ok(Transformation {
            map: map.iter().map(|&v| v as u8).collect(),
        })
    }

    /// `[i/j]`.
    pub fn replacement(i: usize, j: usize, alpha: usize) -> Result<Self> {
        check_index(i, alpha)?;
        check_index(j, alpha)?;
        let mut t = Transformation::identity(alpha);
        t.map[i] = j as u8;
        Ok(t)
    }

    /// `[i,j]`.
    pub fn transposition(i: usize, j: usize, alpha: usize) -> Result<Self> {
        check_index(i, alpha)?;
        check_index(j, alpha)?;
        let mut t = Transformation::identity(alpha);
        t.map.swap(i, j);
        Ok(t)
    }

    pub fn alpha(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.map[k] as usize
    }

    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = 0u64;
        for &v in &self.map {
            seen |= 1 << v;
        }
        seen.count_ones() as usize == self.alpha()
    }

    /// `σ∘τ`, with `(σ∘τ)(k) = σ(τ(k))`. Hence `s∘(σ∘τ) = (s∘σ)∘τ`.
    pub fn compose(&self, tau: &Transformation) -> Result<Self> {
        if self.alpha() != tau.alpha() {
            return Err(Error::DimensionMismatch {
                left: self.alpha(),
                right: tau.alpha(),
            });
        }
        Ok(Transformation {
            map: tau.map.iter().map(|&t| self.map[t as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_permutation() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let mut inv = SmallVec::from_elem(0u8, self.alpha());
        for (k, &v) in self.map.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        Ok(Transformation { map: inv })
    }

    /// The preimage `σ⁻¹Γ` of an index set.
    pub fn preimage(&self, gamma: &[usize]) -> Vec<usize> {
        (0..self.alpha())
            .filter(|&k| gamma.contains(&self.apply(k)))
            .collect()
    }

    /// Whether `σ` is one-one on `ks`.
    pub fn injective_on(&self, ks: &[usize]) -> bool {
        let mut seen = 0u64;
        for &k in ks {
            let bit = 1u64 << self.map[k];
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
        true
    }

    /// Generators `g1, .., gm` with `σ = g1∘..∘gm`.
    ///
    /// Permutations come out as transpositions (cycle by cycle, smallest moved
    /// point first). Other maps come out as `π∘ε` where `ε` collapses each
    /// fibre onto its least element by replacements in ascending order and
    /// `π` is a permutation.
    pub fn decompose(&self) -> Vec<Generator> {
        let alpha = self.alpha();
        if self.is_permutation() {
            return permutation_swaps(&self.map());
        }
        let mut rep = vec![usize::MAX; alpha];
        for k in 0..alpha {
            let y = self.apply(k);
            if rep[y] == usize::MAX {
                rep[y] = k;
            }
        }
        let reps: Vec<usize> = (0..alpha).filter(|&k| rep[self.apply(k)] == k).collect();
        let mut pi = vec![usize::MAX; alpha];
        for &r in &reps {
            pi[r] = self.apply(r);
        }
        let free_sources = (0..alpha).filter(|k| !reps.contains(k));
        let mut free_targets = (0..alpha).filter(|&y| rep[y] == usize::MAX);
        for k in free_sources {
            pi[k] = free_targets.next().expect("sizes match");
        }
        let mut out = permutation_swaps(&pi);
        for k in 0..alpha {
            let r = rep[self.apply(k)];
            if r != k {
                out.push(Generator::Replace(k, r));
            }
        }
        out
    }

    /// Recomposes a generator list. The empty list gives the identity.
    pub fn recompose(generators: &[Generator], alpha: usize) -> Result<Self> {
        let mut acc = Transformation::identity(alpha);
        for g in generators {
            acc = acc.compose(&g.to_transformation(alpha)?)?;
        }
        Ok(acc)
    }

    /// All of `T_α` in lexicographic order of value lists.
    pub fn all(alpha: usize) -> Vec<Transformation> {
        let total = alpha.pow(alpha as u32);
        (0..total)
            .map(|mut n| {
                let mut map = vec![0usize; alpha];
                for slot in map.iter_mut().rev() {
                    *slot = n % alpha;
                    n /= alpha;
                }
                Transformation::from_map(&map).expect("entries in range")
            })
            .collect()
    }

    /// All permutations of `α` in lexicographic order.
    pub fn permutations(alpha: usize) -> Vec<Transformation> {
        Transformation::all(alpha)
            .into_iter()
            .filter(Transformation::is_permutation)
            .collect()
    }
}

fn permutation_swaps(map: &[usize]) -> Vec<Generator> {
    let mut cur = map.to_vec();
    let mut out = Vec::new();
    while let Some(k) = (0..cur.len()).find(|&k| cur[k] != k) {
        let m = cur[k];
        out.push(Generator::Swap(k, m));
        for v in cur.iter_mut() {
            if *v == k {
                *v = m;
            } else if *v == m {
                *v = k;
            }
        }
    }
    out
}

impl TryFrom<Vec<u8>> for Transformation {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        Transformation::from_map(&v.iter().map(|&x| x as usize).collect::<Vec<_>>())
    }
}

impl From<Transformation> for Vec<u8> {
    fn from(t: Transformation) -> Self {
        t.map.to_vec()
    }
}

/// Renders the value list, e.g. `(1,2,0)`.
impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, v) in self.map.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transformation{self}")
    }
}
