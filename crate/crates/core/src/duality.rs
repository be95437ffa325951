//! Finite atom structures, their complex algebras, and the ultrafilter frames
//! of finite algebras.
//!
//! A relation `T` on atoms acts on atom sets by
//! `T*(A) = { y : (x, y) ∈ T for some x ∈ A }`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::bits::Bits;
use crate::checker::{check_equation, CheckError, Strategy, Verdict};
use crate::relation::Shape;
use crate::terms::{is_positive, Equation, SigTag};
use crate::transform::{Generator, Transformation};

/// Largest atom count for operations that enumerate the whole carrier.
pub const MAX_ENUMERATED_ATOMS: usize = 16;
/// Largest atom count accepted anywhere in this module.
pub const MAX_ATOMS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("invalid atom structure: {0}")]
    Invalid(String),

    #[error("carrier of size {0} is not the powerset of an atom set")]
    NotPowerset(usize),

    #[error("operator {op} is not additive at element {element}")]
    NonAdditive { op: String, element: String },

    #[error("{0} atoms is beyond the supported size")]
    TooLarge(usize),

    #[error("homomorphism fails for {op} at element {element}")]
    Homomorphism { op: String, element: String },

    #[error("equation {0} contains complement and is not positive")]
    NotPositive(String),

    #[error(transparent)]
    Check(#[from] CheckError),

    #[error(transparent)]
    Core(#[from] crate::error::Error),
}

pub type Pairs = Vec<(usize, usize)>;

#[derive(Deserialize)]
struct RawStructure {
    atoms: usize,
    alpha: usize,
    #[serde(default)]
    names: Option<Vec<String>>,
    #[serde(rename = "T")]
    t: Vec<Pairs>,
    #[serde(rename = "R", default)]
    r: Option<Vec<Pairs>>,
    #[serde(rename = "P", default)]
    p: Option<Vec<Pairs>>,
    #[serde(rename = "D", default)]
    d: Option<Vec<Vec<usize>>>,
}

/// `⟨X, T_i, R_ij, P_ij, D_ij⟩` over atoms `0..atoms`. The `R`, `P` and `D`
/// families are indexed by `i * alpha + j`. Pair and atom lists are kept
/// sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure")]
pub struct AtomStructure {
    atoms: usize,
    alpha: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(rename = "T")]
    t: Vec<Pairs>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    r: Option<Vec<Pairs>>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    p: Option<Vec<Pairs>>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    d: Option<Vec<Vec<usize>>>,
}

impl TryFrom<RawStructure> for AtomStructure {
    type Error = DualityError;

    fn try_from(raw: RawStructure) -> Result<Self, DualityError> {
        let mut s = AtomStructure::new(raw.atoms, raw.alpha, raw.t)?;
        if let Some(names) = raw.names {
            s = s.with_names(names)?;
        }
        if let Some(r) = raw.r {
            s = s.with_r(r)?;
        }
        if let Some(p) = raw.p {
            s = s.with_p(p)?;
        }
        if let Some(d) = raw.d {
            s = s.with_d(d)?;
        }
        Ok(s)
    }
}

fn normalize_pairs(n: usize, mut pairs: Pairs, what: &str) -> Result<Pairs, DualityError> {
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(DualityError::Invalid(format!(
            "{what} contains ({x},{y}) outside {n} atoms"
        )));
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(pairs)
}

impl AtomStructure {
    pub fn new(atoms: usize, alpha: usize, t: Vec<Pairs>) -> Result<Self, DualityError> {
        if atoms == 0 {
            return Err(DualityError::Invalid("no atoms".into()));
        }
        if atoms > MAX_ATOMS {
            return Err(DualityError::TooLarge(atoms));
        }
        if alpha == 0 || t.len() != alpha {
            return Err(DualityError::Invalid(format!(
                "expected {alpha} T relations, got {}",
                t.len()
            )));
        }
        let t = t
            .into_iter()
            .enumerate()
            .map(|(i, p)| normalize_pairs(atoms, p, &format!("T_{i}")))
            .collect::<Result<_, _>>()?;
        Ok(AtomStructure {
            atoms,
            alpha,
            names: None,
            t,
            r: None,
            p: None,
            d: None,
        })
    }

    fn family(&self, rel: Vec<Pairs>, what: &str) -> Result<Vec<Pairs>, DualityError> {
        let want = self.alpha * self.alpha;
        if rel.len() != want {
            return Err(DualityError::Invalid(format!(
                "expected {want} {what} relations, got {}",
                rel.len()
            )));
        }
        rel.into_iter()
            .enumerate()
            .map(|(k, p)| {
                let (i, j) = (k / self.alpha, k % self.alpha);
                normalize_pairs(self.atoms, p, &format!("{what}_{i}{j}"))
            })
            .collect()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, DualityError> {
        if names.len() != self.atoms {
            return Err(DualityError::Invalid(format!(
                "{} names for {} atoms",
                names.len(),
                self.atoms
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn with_r(mut self, r: Vec<Pairs>) -> Result<Self, DualityError> {
        self.r = Some(self.family(r, "R")?);
        Ok(self)
    }

    pub fn with_p(mut self, p: Vec<Pairs>) -> Result<Self, DualityError> {
        self.p = Some(self.family(p, "P")?);
        Ok(self)
    }

    pub fn with_d(mut self, d: Vec<Vec<usize>>) -> Result<Self, DualityError> {
        let want = self.alpha * self.alpha;
        if d.len() != want {
            return Err(DualityError::Invalid(format!(
                "expected {want} D sets, got {}",
                d.len()
            )));
        }
        let mut out = Vec::with_capacity(want);
        for mut set in d {
            if let Some(&x) = set.iter().find(|&&x| x >= self.atoms) {
                return Err(DualityError::Invalid(format!(
                    "D contains atom {x} outside {} atoms",
                    self.atoms
                )));
            }
            set.sort_unstable();
            set.dedup();
            out.push(set);
        }
        self.d = Some(out);
        Ok(self)
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn t(&self, i: usize) -> &Pairs {
        &self.t[i]
    }

    pub fn r(&self, i: usize, j: usize) -> Option<&Pairs> {
        self.r.as_ref().map(|r| &r[i * self.alpha + j])
    }

    pub fn p(&self, i: usize, j: usize) -> Option<&Pairs> {
        self.p.as_ref().map(|p| &p[i * self.alpha + j])
    }

    pub fn d(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.d.as_ref().map(|d| d[i * self.alpha + j].as_slice())
    }

    pub fn has_r(&self) -> bool {
        self.r.is_some()
    }

    pub fn has_p(&self) -> bool {
        self.p.is_some()
    }

    pub fn has_d(&self) -> bool {
        self.d.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

type Adjacency = Vec<Vec<u32>>;

fn adjacency(n: usize, pairs: &Pairs) -> Adjacency {
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in pairs {
        adj[x].push(y as u32);
    }
    adj
}

fn star(adj: &Adjacency, x: &Bits) -> Bits {
    let mut out = Bits::zeros(adj.len());
    for a in x.iter() {
        for &b in &adj[a] {
            out.insert(b as usize);
        }
    }
    out
}

/// The complex algebra of an atom structure. Every operator is the `T*` of a
/// relation, hence completely additive.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    structure: AtomStructure,
    t: Vec<Adjacency>,
    r: Option<Vec<Adjacency>>,
    p: Option<Vec<Adjacency>>,
    d: Option<Vec<Bits>>,
    label: Option<String>,
}

/// `Cm(S)`.
pub fn cm(s: &AtomStructure) -> FiniteAlgebra {
    let n = s.atoms;
    let fam = |rel: &Option<Vec<Pairs>>| {
        rel.as_ref()
            .map(|r| r.iter().map(|p| adjacency(n, p)).collect::<Vec<_>>())
    };
    FiniteAlgebra {
        t: s.t.iter().map(|p| adjacency(n, p)).collect(),
        r: fam(&s.r),
        p: fam(&s.p),
        d: s.d.as_ref().map(|d| {
            d.iter()
                .map(|set| Bits::from_indices(n, set.iter().copied()))
                .collect()
        }),
        structure: s.clone(),
        label: None,
    }
}

/// Operator tables over element indices `0..2^n`. Families `s`, `p` and
/// `d` are indexed `i * alpha + j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTables {
    pub alpha: usize,
    pub c: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
}

/// Full operator tables of `a`, for at most `MAX_ENUMERATED_ATOMS` atoms.
pub fn operator_tables<A: Algebra + ?Sized>(a: &A) -> Result<OperatorTables, DualityError> {
    let n = a.width();
    if n > MAX_ENUMERATED_ATOMS {
        return Err(DualityError::TooLarge(n));
    }
    let alpha = a.alpha();
    let mask = |x: Bits| x.to_u64().expect("at most 16 atoms");
    let table = |f: &dyn Fn(&Bits) -> Option<Bits>| -> Option<Vec<u64>> {
        (0..1u64 << n).map(|m| f(&a.element(m)).map(mask)).collect()
    };
    let pairs = || (0..alpha).flat_map(|i| (0..alpha).map(move |j| (i, j)));
    let c = (0..alpha)
        .map(|i| table(&|x| Some(a.cyl(i, x))).expect("always present"))
        .collect();
    let s = pairs()
        .map(|(i, j)| table(&|x| a.subst(i, j, x)))
        .collect::<Option<Vec<_>>>();
    let p = pairs()
        .map(|(i, j)| table(&|x| a.perm(i, j, x)))
        .collect::<Option<Vec<_>>>();
    let d = pairs()
        .map(|(i, j)| a.diag(i, j).map(mask))
        .collect::<Option<Vec<_>>>();
    Ok(OperatorTables { alpha, c, s, p, d })
}

fn table_relation(n: usize, table: &[u64], op: &str) -> Result<Pairs, DualityError> {
    if table.len() != 1 << n {
        return Err(DualityError::NotPowerset(table.len()));
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        let img = table[1usize << a];
        for b in 0..n {
            if img >> b & 1 == 1 {
                pairs.push((a, b));
            }
        }
    }
    for (x, &fx) in table.iter().enumerate() {
        let expect = (0..n)
            .filter(|a| x >> a & 1 == 1)
            .fold(0u64, |acc, a| acc | table[1usize << a]);
        if fx != expect || fx >> n != 0 {
            return Err(DualityError::NonAdditive {
                op: op.to_string(),
                element: Bits::from_u64(n, x as u64).to_string(),
            });
        }
    }
    Ok(pairs)
}

impl FiniteAlgebra {
    /// Builds an algebra from full operator tables, rejecting tables that are
    /// not completely additive.
    pub fn from_tables(tables: &OperatorTables) -> Result<Self, DualityError> {
        let len = tables.c.first().map_or(0, Vec::len);
        if len < 2 || !len.is_power_of_two() {
            return Err(DualityError::NotPowerset(len));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_ENUMERATED_ATOMS {
            return Err(DualityError::TooLarge(n));
        }
        let alpha = tables.alpha;
        if tables.c.len() != alpha {
            return Err(DualityError::Invalid(format!(
                "expected {alpha} cylindrification tables, got {}",
                tables.c.len()
            )));
        }
        for (fam, name) in [(&tables.s, "s"), (&tables.p, "p")] {
            if let Some(f) = fam {
                if f.len() != alpha * alpha {
                    return Err(DualityError::Invalid(format!(
                        "expected {} {name} tables, got {}",
                        alpha * alpha,
                        f.len()
                    )));
                }
            }
        }
        let rels = |f: &Vec<Vec<u64>>, name: &str| -> Result<Vec<Pairs>, DualityError> {
            f.iter()
                .enumerate()
                .map(|(k, t)| table_relation(n, t, &format!("{name}({},{})", k / alpha, k % alpha)))
                .collect()
        };
        let t = tables
            .c
            .iter()
            .enumerate()
            .map(|(i, tab)| table_relation(n, tab, &format!("c({i})")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut s = AtomStructure::new(n, alpha, t)?;
        if let Some(f) = &tables.s {
            s = s.with_r(rels(f, "s")?)?;
        }
        if let Some(f) = &tables.p {
            s = s.with_p(rels(f, "p")?)?;
        }
        if let Some(d) = &tables.d {
            if d.len() != alpha * alpha {
                return Err(DualityError::Invalid(
                    "wrong number of diagonal elements".into(),
                ));
            }
            let sets = d
                .iter()
                .map(|&m| (0..n).filter(|a| m >> a & 1 == 1).collect())
                .collect();
            s = s.with_d(sets)?;
        }
        Ok(cm(&s))
    }

    pub fn structure(&self) -> &AtomStructure {
        &self.structure
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The atom set `{a}`.
    pub fn atom(&self, a: usize) -> Bits {
        Bits::from_indices(self.structure.atoms, [a])
    }

    fn pair_op(&self, fam: &Option<Vec<Adjacency>>, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        let alpha = self.structure.alpha;
        if i >= alpha || j >= alpha {
            return None;
        }
        fam.as_ref().map(|f| star(&f[i * alpha + j], x))
    }
}

impl Algebra for FiniteAlgebra {
    fn alpha(&self) -> usize {
        self.structure.alpha
    }

    fn width(&self) -> usize {
        self.structure.atoms
    }

    fn name(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("Cm of {}-atom structure", self.structure.atoms))
    }

    fn cyl(&self, i: usize, x: &Bits) -> Bits {
        star(&self.t[i], x)
    }

    fn subst(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        self.pair_op(&self.r, i, j, x)
    }

    fn perm(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        self.pair_op(&self.p, i, j, x)
    }

    fn diag(&self, i: usize, j: usize) -> Option<Bits> {
        let alpha = self.structure.alpha;
        if i >= alpha || j >= alpha {
            return None;
        }
        self.d.as_ref().map(|d| d[i * alpha + j].clone())
    }

    /// Through the generator decomposition of `sigma`, innermost generator last.
    fn subst_sigma(&self, sigma: &Transformation, x: &Bits) -> Option<Bits> {
        if sigma.alpha() != self.structure.alpha {
            return None;
        }
        let mut v = x.clone();
        for g in sigma.decompose().iter().rev() {
            v = match *g {
                Generator::Replace(i, j) => self.subst(i, j, &v)?,
                Generator::Swap(i, j) => self.perm(i, j, &v)?,
            };
        }
        Some(v)
    }

    fn render(&self, x: &Bits) -> String {
        match &self.structure.names {
            Some(names) => {
                let parts: Vec<&str> = x.iter().map(|a| names[a].as_str()).collect();
                format!("{{{}}}", parts.join(","))
            }
            None => x.to_string(),
        }
    }
}

fn relation_from<F>(n: usize, mut image: F) -> Pairs
where
    F: FnMut(&Bits) -> Bits,
{
    let mut pairs = Vec::new();
    for a in 0..n {
        let img = image(&Bits::from_indices(n, [a]));
        pairs.extend(img.iter().map(|b| (a, b)));
    }
    pairs
}

/// The ultrafilter frame of a finite algebra. Ultrafilters are principal and
/// are identified with their generating atoms; `(a, b) ∈ T_i` iff `b ≤ c_i(a)`,
/// and likewise for the other operators the algebra carries.
pub fn uf<A: Algebra + ?Sized>(a: &A) -> Result<AtomStructure, DualityError> {
    let n = a.width();
    if n == 0 {
        return Err(DualityError::NotPowerset(1));
    }
    if n > MAX_ATOMS {
        return Err(DualityError::TooLarge(n));
    }
    let alpha = a.alpha();
    let t = (0..alpha)
        .map(|i| relation_from(n, |x| a.cyl(i, x)))
        .collect();
    let mut s = AtomStructure::new(n, alpha, t)?;
    let pairs = || (0..alpha).flat_map(move |i| (0..alpha).map(move |j| (i, j)));
    let z = a.zero();
    if a.subst(0, 0, &z).is_some() {
        s = s.with_r(
            pairs()
                .map(|(i, j)| relation_from(n, |x| a.subst(i, j, x).expect("probed")))
                .collect(),
        )?;
    }
    if a.perm(0, 0, &z).is_some() {
        s = s.with_p(
            pairs()
                .map(|(i, j)| relation_from(n, |x| a.perm(i, j, x).expect("probed")))
                .collect(),
        )?;
    }
    if a.diag(0, 0).is_some() {
        s = s.with_d(
            pairs()
                .map(|(i, j)| a.diag(i, j).expect("probed").iter().collect())
                .collect(),
        )?;
    }
    Ok(s)
}

/// The sequence structure on `^αU`: `s T_i z` iff `z = s(i/u)` for some `u`.
/// With substitutions, `(s, z) ∈ R_ij` iff `s = z∘[i/j]`, so that `R_ij*`
/// is the set operator `S_ij`; `P_ij` is oriented the same way with `[i,j]`.
/// Diagonals are `{ s : s_i = s_j }`.
pub fn seq_structure(
    alpha: usize,
    base: usize,
    sig: SigTag,
) -> Result<AtomStructure, DualityError> {
    let shape = Shape::new(alpha, base)?;
    let n = shape.points();
    if n > MAX_ATOMS {
        return Err(DualityError::TooLarge(n));
    }
    let t = (0..alpha)
        .map(|i| {
            let stride = shape.stride(i);
            let mut pairs = Pairs::new();
            for s in 0..n {
                let si = shape.coord(s, i);
                let floor = s - si * stride;
                pairs.extend((0..base).map(|u| (s, floor + u * stride)));
            }
            pairs
        })
        .collect();
    let mut st = AtomStructure::new(n, alpha, t)?;
    let index_pairs: Vec<(usize, usize)> = (0..alpha)
        .flat_map(|i| (0..alpha).map(move |j| (i, j)))
        .collect();
    let pulled = |make: fn(usize, usize, usize) -> crate::error::Result<Transformation>| {
        index_pairs
            .iter()
            .map(|&(i, j)| {
                let sigma = make(i, j, alpha).expect("indices in range");
                let table = shape.pullback_table(&sigma).expect("same dimension");
                table
                    .iter()
                    .enumerate()
                    .map(|(z, &s)| (s as usize, z))
                    .collect::<Pairs>()
            })
            .collect::<Vec<_>>()
    };
    let (with_r, with_p, with_d) = match sig {
        SigTag::C => (false, false, false),
        SigTag::Cs => (true, false, false),
        SigTag::Csp | SigTag::Pa => (true, true, false),
        SigTag::Cspd => (true, true, true),
    };
    if with_r {
        st = st.with_r(pulled(Transformation::replacement))?;
    }
    if with_p {
        st = st.with_p(pulled(Transformation::transposition))?;
    }
    if with_d {
        st = st.with_d(
            index_pairs
                .iter()
                .map(|&(i, j)| {
                    (0..n)
                        .filter(|&s| shape.coord(s, i) == shape.coord(s, j))
                        .collect()
                })
                .collect(),
        )?;
    }
    Ok(st)
}

/// Outcome of comparing `A` with `Cm(Uf(A))` under `x ↦ {atoms below x}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub atoms: usize,
    pub elements_checked: u64,
    pub operators_checked: usize,
}

/// Verifies that the canonical map from `A` to `Cm(Uf(A))` is a bijective
/// homomorphism for every operator `A` carries. Elements of `A` are atom sets
/// already, so the map is the identity on bit patterns.
pub fn em_roundtrip<A: Algebra + ?Sized>(a: &A) -> Result<RoundTrip, DualityError> {
    let n = a.width();
    if n > MAX_ENUMERATED_ATOMS {
        return Err(DualityError::TooLarge(n));
    }
    let em = cm(&uf(a)?);
    let alpha = a.alpha();
    let mut ops = 0;
    let fail = |op: String, x: &Bits| DualityError::Homomorphism {
        op,
        element: a.render(x),
    };
    let elements = 1u64 << n;
    for m in 0..elements {
        let x = a.element(m);
        ops = 0;
        for i in 0..alpha {
            ops += 1;
            if a.cyl(i, &x) != em.cyl(i, &x) {
                return Err(fail(format!("c({i})"), &x));
            }
            for j in 0..alpha {
                if let Some(v) = a.subst(i, j, &x) {
                    ops += 1;
                    if Some(v) != em.subst(i, j, &x) {
                        return Err(fail(format!("s({i},{j})"), &x));
                    }
                }
                if let Some(v) = a.perm(i, j, &x) {
                    ops += 1;
                    if Some(v) != em.perm(i, j, &x) {
                        return Err(fail(format!("p({i},{j})"), &x));
                    }
                }
                if m == 0 {
                    if let Some(v) = a.diag(i, j) {
                        if Some(v) != em.diag(i, j) {
                            return Err(fail(format!("d({i},{j})"), &x));
                        }
                    }
                }
            }
        }
    }
    Ok(RoundTrip {
        atoms: n,
        elements_checked: elements,
        operators_checked: ops,
    })
}

#[derive(Debug, Clone)]
pub struct Preservation {
    pub in_algebra: Verdict,
    pub in_extension: Verdict,
}

impl Preservation {
    /// `A ⊨ e` implies `Em(A) ⊨ e`, and for finite `A` the converse too.
    pub fn consistent(&self) -> bool {
        self.in_algebra.is_failure() == self.in_extension.is_failure()
    }
}

/// Checks a positive equation in `A` and in `Cm(Uf(A))`.
pub fn preserves_positive<A: Algebra + ?Sized>(
    eq: &Equation,
    a: &A,
    strategy: &Strategy,
) -> Result<Preservation, DualityError> {
    if !is_positive(eq) {
        return Err(DualityError::NotPositive(eq.to_string()));
    }
    let em = cm(&uf(a)?);
    Ok(Preservation {
        in_algebra: check_equation(a, eq, strategy)?,
        in_extension: check_equation(&em, eq, strategy)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_algebra::SetAlgebra;
    use crate::terms::parse_equation;

    fn identity(n: usize) -> Pairs {
        (0..n).map(|x| (x, x)).collect()
    }

    fn total(n: usize) -> Pairs {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
    }

    #[test]
    fn star_of_identity_total_and_empty() {
        let s = AtomStructure::new(3, 2, vec![identity(3), total(3)]).unwrap();
        let a = cm(&s);
        for m in 0..8 {
            let x = a.element(m);
            assert_eq!(a.cyl(0, &x), x);
            let want = if m == 0 { a.zero() } else { a.one() };
            assert_eq!(a.cyl(1, &x), want);
        }
    }

    #[test]
    fn out_of_range_pairs_are_rejected() {
        assert!(AtomStructure::new(2, 1, vec![vec![(0, 2)]]).is_err());
        assert!(AtomStructure::new(2, 2, vec![vec![]]).is_err());
    }

    #[test]
    fn json_shape() {
        let s = AtomStructure::new(2, 1, vec![identity(2)]).unwrap();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"atoms":2,"alpha":1,"T":[[[0,0],[1,1]]]}"#
        );
        let back =
            AtomStructure::from_json(r#"{"atoms":2,"alpha":1,"T":[[[1,1],[0,0],[0,0]]]}"#).unwrap();
        assert_eq!(back, s);
        assert!(AtomStructure::from_json(r#"{"atoms":2,"alpha":1,"T":[[[0,5]]]}"#).is_err());
    }

    #[test]
    fn uf_of_cm_is_the_structure() {
        let s = AtomStructure::new(2, 1, vec![identity(2)]).unwrap();
        assert_eq!(uf(&cm(&s)).unwrap(), s);
    }

    #[test]
    fn identity_cylindrification_gives_identity_relation() {
        let tables = OperatorTables {
            alpha: 1,
            c: vec![(0..4).collect()],
            ..Default::default()
        };
        let a = FiniteAlgebra::from_tables(&tables).unwrap();
        assert_eq!(uf(&a).unwrap().t(0), &identity(2));
        assert_eq!(a.width(), 2);
    }

    #[test]
    fn tables_round_trip_through_json() {
        let a = cm(&seq_structure(3, 2, SigTag::Cspd).unwrap());
        let t = operator_tables(&a).unwrap();
        assert_eq!(t.c[0].len(), 256);
        let back: OperatorTables =
            serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(
            operator_tables(&FiniteAlgebra::from_tables(&back).unwrap()).unwrap(),
            t
        );
    }

    #[test]
    fn from_tables_rejects_bad_tables() {
        let odd = OperatorTables {
            alpha: 1,
            c: vec![vec![0, 1, 2]],
            ..Default::default()
        };
        assert_eq!(
            FiniteAlgebra::from_tables(&odd).unwrap_err(),
            DualityError::NotPowerset(3)
        );
        let not_additive = OperatorTables {
            alpha: 1,
            c: vec![vec![0, 1, 2, 2]],
            ..Default::default()
        };
        assert!(matches!(
            FiniteAlgebra::from_tables(&not_additive),
            Err(DualityError::NonAdditive { .. })
        ));
    }

    #[test]
    fn sequence_structure_reproduces_set_operators() {
        let set = SetAlgebra::new(3, 2).unwrap();
        let a = cm(&seq_structure(3, 2, SigTag::Cspd).unwrap());
        assert_eq!(a.width(), 8);
        for m in 0..256 {
            let x = set.element(m);
            for i in 0..3 {
                assert_eq!(a.cyl(i, &x), set.cyl(i, &x));
                for j in 0..3 {
                    assert_eq!(a.subst(i, j, &x), set.subst(i, j, &x));
                    assert_eq!(a.perm(i, j, &x), set.perm(i, j, &x));
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.diag(i, j), set.diag(i, j));
            }
        }
        for sigma in Transformation::all(3) {
            let x = set.element(0b1011_0010);
            assert_eq!(a.subst_sigma(&sigma, &x), set.subst_sigma(&sigma, &x));
        }
    }

    #[test]
    fn sequence_relations_are_reflexive() {
        let s = seq_structure(3, 2, SigTag::C).unwrap();
        for i in 0..3 {
            assert!((0..8).all(|x| s.t(i).contains(&(x, x))));
        }
        assert!(!s.has_r());
    }

    #[test]
    fn round_trip_on_set_algebra_and_two_element_algebra() {
        let set = SetAlgebra::new(2, 2).unwrap();
        let rt = em_roundtrip(&set).unwrap();
        assert_eq!(rt.elements_checked, 16);
        let two = cm(&AtomStructure::new(1, 1, vec![identity(1)]).unwrap());
        assert_eq!(em_roundtrip(&two).unwrap().elements_checked, 2);
    }

    #[test]
    fn positive_equations_only() {
        let a = SetAlgebra::new(3, 1).unwrap();
        let s = Strategy::exhaustive();
        let e = parse_equation("s(0,1,-x0) = -s(0,1,x0)", 3).unwrap();
        assert!(matches!(
            preserves_positive(&e, &a, &s),
            Err(DualityError::NotPositive(_))
        ));
        let e = parse_equation("0 = 0", 3).unwrap();
        assert!(preserves_positive(&e, &a, &s).unwrap().consistent());
    }
}
