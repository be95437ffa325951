//! Representing abstract substitutions `s_ij(x) = c_i(d_ij · x)` by the set
//! operators `S_ij`: blow the base up, match `dom_0` to `dom_i` inside the
//! atoms below `d_0i`, and move every point along the matchings.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::bits::Bits;
use crate::checker::Strategy;
use crate::relation::{cyl_bits, diag_bits, Shape};
use crate::set_algebra::SetAlgebra;

use super::blowup::BlowupMap;
use super::diagonals::{recover_diagonals, verify_rdsc};
use super::{require, Manifest, Presented, RepresentError, StepCheck};

/// `dom_i(R) = { s(i) : s ∈ R }` as a subset of the base.
pub fn dom(shape: &Shape, x: &Bits, i: usize) -> Bits {
    let mut out = Bits::zeros(shape.base());
    for p in x.iter() {
        out.insert(shape.coord(p, i));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomClass {
    /// Indices into the atom list.
    pub atoms: Vec<usize>,
    pub dom_i: Bits,
    pub dom_j: Bits,
}

/// Atoms below `d_ij`, grouped by their pair of domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomPartition {
    pub i: usize,
    pub j: usize,
    pub classes: Vec<DomClass>,
}

impl DomPartition {
    pub fn atoms_below(&self) -> usize {
        self.classes.iter().map(|c| c.atoms.len()).sum()
    }
}

/// Checks that any two atoms below `d` have equal `dom_i` and `dom_j`, or
/// disjoint `dom_i` and `dom_j`, and that `dom_i(d) = dom_j(d)` is the whole
/// base.
pub fn analyze_dom_partition(
    shape: &Shape,
    atoms: &[Bits],
    d: &Bits,
    i: usize,
    j: usize,
) -> Result<DomPartition, RepresentError> {
    for k in [i, j] {
        if !dom(shape, d, k).is_full() {
            return Err(RepresentError::DomNotFull { i, j, k });
        }
    }
    let mut classes: Vec<DomClass> = Vec::new();
    for (a, points) in atoms.iter().enumerate() {
        if !points.is_subset(d) {
            continue;
        }
        let (di, dj) = (dom(shape, points, i), dom(shape, points, j));
        let mut placed = false;
        for c in &mut classes {
            let same = c.dom_i == di && c.dom_j == dj;
            let apart = c.dom_i.is_disjoint(&di) && c.dom_j.is_disjoint(&dj);
            if same {
                c.atoms.push(a);
                placed = true;
            } else if !apart {
                return Err(RepresentError::Dichotomy {
                    i,
                    j,
                    a: c.atoms[0],
                    b: a,
                });
            }
        }
        if !placed {
            classes.push(DomClass {
                atoms: vec![a],
                dom_i: di,
                dom_j: dj,
            });
        }
    }
    Ok(classes_sorted(i, j, classes))
}

fn classes_sorted(i: usize, j: usize, mut classes: Vec<DomClass>) -> DomPartition {
    classes.sort_by_key(|c| c.atoms[0]);
    DomPartition { i, j, classes }
}

/// Kuhn's augmenting-path matching, trying vertices and neighbours in
/// increasing order. Returns `right -> left`.
fn max_matching(left: &[usize], adj: &BTreeMap<usize, Vec<usize>>) -> BTreeMap<usize, usize> {
    fn augment(
        u: usize,
        adj: &BTreeMap<usize, Vec<usize>>,
        seen: &mut Vec<usize>,
        owner: &mut BTreeMap<usize, usize>,
    ) -> bool {
        for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.contains(&v) {
                continue;
            }
            seen.push(v);
            let free = match owner.get(&v) {
                None => true,
                Some(&w) => augment(w, adj, seen, owner),
            };
            if free {
                owner.insert(v, u);
                return true;
            }
        }
        false
    }
    let mut owner = BTreeMap::new();
    for &u in left {
        augment(u, adj, &mut Vec::new(), &mut owner);
    }
    owner
}

/// The pairs `(s(0), s(i))` over the points of `x`.
fn projection(shape: &Shape, x: &Bits, i: usize) -> BTreeMap<usize, Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in x.iter() {
        let e = adj.entry(shape.coord(p, 0)).or_default();
        let v = shape.coord(p, i);
        if let Err(pos) = e.binary_search(&v) {
            e.insert(pos, v);
        }
    }
    adj
}

/// `f_0i` as a table over the base: one perfect matching per class of the
/// partition of the atoms below `d_0i`, inside the `(0, i)` projection the
/// atoms of the class share, then the union checked to be a bijection.
pub fn build_f0i(
    shape: &Shape,
    atoms: &[Bits],
    partition: &DomPartition,
) -> Result<Vec<usize>, RepresentError> {
    let i = partition.j;
    if partition.i != 0 || i == 0 {
        return Err(RepresentError::Precondition(format!(
            "matchings are built below d_0i with i > 0, got d_{}{}",
            partition.i, partition.j
        )));
    }
    if partition.classes.is_empty() {
        return Err(RepresentError::Precondition(format!(
            "no atoms below d_0{i}"
        )));
    }
    let base = shape.base();
    let mut f: Vec<Option<usize>> = vec![None; base];
    for (ci, class) in partition.classes.iter().enumerate() {
        let adj = projection(shape, &atoms[class.atoms[0]], i);
        for &other in &class.atoms[1..] {
            if projection(shape, &atoms[other], i) != adj {
                return Err(RepresentError::Precondition(format!(
                    "atoms {} and {other} share domains but not their (0,{i}) projection",
                    class.atoms[0]
                )));
            }
        }
        let left: Vec<usize> = class.dom_i.iter().collect();
        let right = class.dom_j.count();
        let owner = max_matching(&left, &adj);
        if left.len() != right || owner.len() != left.len() {
            return Err(RepresentError::MatchingFailed {
                i,
                class: ci,
                left: left.len(),
                right,
                matched: owner.len(),
            });
        }
        for (v, u) in owner {
            f[u] = Some(v);
        }
    }
    let mut hit = vec![false; base];
    let mut out = Vec::with_capacity(base);
    for (u, fu) in f.iter().enumerate() {
        let v = fu.ok_or_else(|| RepresentError::NotBijective {
            i,
            detail: format!("{u} has no image"),
        })?;
        if std::mem::replace(&mut hit[v], true) {
            return Err(RepresentError::NotBijective {
                i,
                detail: format!("{v} is hit twice"),
            });
        }
        out.push(v);
    }
    Ok(out)
}

/// The point map `f(s) = ⟨f_0i⁻¹(s(i)) : i < α⟩` and the induced
/// `G(X) = { f(x) : x ∈ X }`.
///
/// `G` is taken as the forward image: with `d'' = G(d')` a point `s` of
/// `D_0i` lies in `d''` because `f⁻¹(s)` lies on the graph of `f_0i`. The
/// preimage `{ x : f(x) ∈ X }` would need `f_0i = f_0i⁻¹`.
#[derive(Debug, Clone)]
pub struct Rearrangement {
    shape: Shape,
    f0: Vec<Vec<usize>>,
    point_map: Vec<u32>,
}

impl Rearrangement {
    pub fn new(shape: Shape, f0: Vec<Vec<usize>>) -> Result<Self, RepresentError> {
        let (alpha, base) = (shape.alpha(), shape.base());
        if f0.len() != alpha {
            return Err(RepresentError::Precondition(format!(
                "expected {alpha} maps, got {}",
                f0.len()
            )));
        }
        if f0[0].iter().enumerate().any(|(u, &v)| u != v) {
            return Err(RepresentError::Precondition(
                "f_00 must be the identity".into(),
            ));
        }
        let mut inv = vec![vec![usize::MAX; base]; alpha];
        for (i, f) in f0.iter().enumerate() {
            if f.len() != base {
                return Err(RepresentError::NotBijective {
                    i,
                    detail: format!("table has {} entries for {base} elements", f.len()),
                });
            }
            for (u, &v) in f.iter().enumerate() {
                if v >= base || inv[i][v] != usize::MAX {
                    return Err(RepresentError::NotBijective {
                        i,
                        detail: format!("{u} maps to {v}"),
                    });
                }
                inv[i][v] = u;
            }
        }
        let point_map = (0..shape.points())
            .map(|p| {
                let s: Vec<usize> = (0..alpha).map(|i| inv[i][shape.coord(p, i)]).collect();
                shape.encode(&s) as u32
            })
            .collect();
        Ok(Rearrangement {
            shape,
            f0,
            point_map,
        })
    }

    pub fn identity(shape: Shape) -> Self {
        let id: Vec<usize> = (0..shape.base()).collect();
        Self::new(shape, vec![id; shape.alpha()]).expect("identity maps are bijections")
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn matchings(&self) -> &[Vec<usize>] {
        &self.f0
    }

    /// `f(s)` on point indices.
    pub fn point(&self, p: usize) -> usize {
        self.point_map[p] as usize
    }

    /// `G(X)`.
    pub fn apply(&self, x: &Bits) -> Bits {
        Bits::from_indices(self.shape.points(), x.iter().map(|p| self.point(p)))
    }

    /// `{ x : f(x) ∈ X }`.
    pub fn preimage(&self, x: &Bits) -> Bits {
        Bits::from_indices(
            self.shape.points(),
            (0..self.shape.points()).filter(|&p| x.get(self.point(p))),
        )
    }

    /// Checks `G(C_i(R)) = C_i(G(R))` on `samples` random relations.
    pub fn verify_commutes(&self, samples: usize, seed: u64) -> Result<(), RepresentError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 0..samples {
            let r = Bits::random(self.shape.points(), &mut rng);
            for i in 0..self.shape.alpha() {
                require(
                    self.apply(&cyl_bits(&self.shape, i, &r))
                        == cyl_bits(&self.shape, i, &self.apply(&r)),
                    &format!("G commutes with c_{i}"),
                    || format!("random sample {n}"),
                )?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SReport {
    pub pairs: usize,
    pub elements: usize,
}

/// Checks `C_i(x ∩ d_ij) = S_ij(x)` for all `i ≠ j` and all given elements.
pub fn verify_s_is_s(
    shape: &Shape,
    elements: &[Bits],
    d: &[Bits],
) -> Result<SReport, RepresentError> {
    let alpha = shape.alpha();
    let v = SetAlgebra::from_shape(*shape);
    let mut pairs = 0;
    for i in 0..alpha {
        for j in 0..alpha {
            if i == j {
                continue;
            }
            pairs += 1;
            for (n, x) in elements.iter().enumerate() {
                let abstract_ = cyl_bits(shape, i, &x.intersection(&d[i * alpha + j]));
                let real = v.subst(i, j, x).expect("indices in range");
                require(abstract_ == real, &format!("s''_{i}{j} = S_{i}{j}"), || {
                    format!("element {n}")
                })?;
            }
        }
    }
    Ok(SReport {
        pairs,
        elements: elements.len(),
    })
}

/// Result of the whole substitution pipeline.
#[derive(Debug, Clone)]
pub struct SubstitutionRun {
    pub blowup: BlowupMap,
    pub rearrangement: Rearrangement,
    /// `d''_ij` over `^αV`.
    pub diagonals: Vec<Bits>,
    pub manifest: Manifest,
}

/// Runs every stage on `input`, whose substitutions must be abstract
/// operators of the form `c_i(d_ij · x)`, blowing up by a factor base of
/// size `w`. Elements are checked exhaustively when the input has at most
/// `exhaustive_atoms` atoms, otherwise atoms only.
pub fn run_substitution_pipeline(
    input: &Presented,
    w: usize,
    seed: u64,
) -> Result<SubstitutionRun, RepresentError> {
    const EXHAUSTIVE_ATOMS: usize = 12;
    let shape_u = input.shape();
    let alpha = shape_u.alpha();
    let a = input.algebra();
    let mut checks = Vec::new();

    let d_star = recover_diagonals(a)?;
    checks.push(StepCheck::pass(
        "recover_diagonals",
        "s_ij(d*_ij) = 1 for all i != j",
    ));
    let strategy = Strategy::auto(2_000, seed);
    let rdsc = verify_rdsc(a, &d_star, &strategy)?;
    require(rdsc.passed(), "verify_rdsc", || {
        rdsc.ca
            .first_failure()
            .map(|v| v.label.clone())
            .or_else(|| {
                rdsc.s_mismatches
                    .first()
                    .map(|m| format!("s_{}{} at {}", m.0, m.1, m.2))
            })
            .unwrap_or_default()
    })?;
    checks.push(StepCheck::pass(
        "verify_rdsc",
        format!(
            "{} cylindric instances; s_ij = c_i(d*_ij . x) on {} elements",
            rdsc.ca.verdicts.len(),
            rdsc.elements_checked
        ),
    ));

    let blowup = BlowupMap::new(shape_u, w)?;
    let shape_v = blowup.target();
    let atoms_v: Vec<Bits> = input.atoms().iter().map(|x| blowup.apply(x)).collect();
    let d_v: Vec<Bits> = d_star
        .as_slice()
        .iter()
        .map(|x| blowup.apply(&input.points_of(x)))
        .collect();
    checks.push(StepCheck::pass(
        "blowup",
        format!("|U|={}, |W|={w}, |V|={}", shape_u.base(), shape_v.base()),
    ));

    let mut f0 = vec![(0..shape_v.base()).collect::<Vec<_>>()];
    for i in 0..alpha {
        for j in 0..alpha {
            if i == j {
                continue;
            }
            let part = analyze_dom_partition(&shape_v, &atoms_v, &d_v[i * alpha + j], i, j)?;
            if i == 0 {
                f0.push(build_f0i(&shape_v, &atoms_v, &part)?);
            }
            checks.push(StepCheck::pass(
                format!("dom_partition d_{i}{j}"),
                format!(
                    "{} atoms in {} classes; dom_{i} = dom_{j} = V",
                    part.atoms_below(),
                    part.classes.len()
                ),
            ));
        }
    }
    checks.push(StepCheck::pass(
        "build_f0i",
        format!("{} bijections of V", alpha - 1),
    ));

    let g = Rearrangement::new(shape_v, f0)?;
    g.verify_commutes(100, seed)?;
    checks.push(StepCheck::pass(
        "rearrange",
        "G commutes with every c_i on 100 random relations",
    ));

    let d2: Vec<Bits> = d_v.iter().map(|x| g.apply(x)).collect();
    for i in 0..alpha {
        for j in 0..alpha {
            require(
                diag_bits(&shape_v, i, j).is_subset(&d2[i * alpha + j]),
                &format!("D_{i}{j} below d''_{i}{j}"),
                String::new,
            )?;
        }
    }
    checks.push(StepCheck::pass(
        "diagonals_inside",
        "D_ij^V <= d''_ij for all i, j",
    ));

    let to_v = |x: &Bits| g.apply(&blowup.apply(&input.points_of(x)));
    let elements: Vec<Bits> = if a.width() <= EXHAUSTIVE_ATOMS {
        (0..1u64 << a.width())
            .map(|m| to_v(&a.element(m)))
            .collect()
    } else {
        (0..a.width()).map(|k| to_v(&a.atom(k))).collect()
    };
    let report = verify_s_is_s(&shape_v, &elements, &d2)?;
    // The transported operator is the image of the abstract one.
    for k in 0..a.width() {
        for i in 0..alpha {
            for j in 0..alpha {
                let atom = a.atom(k);
                let want = to_v(&a.subst(i, j, &atom).expect("substitutions present"));
                let got = if i == j {
                    to_v(&atom)
                } else {
                    cyl_bits(&shape_v, i, &to_v(&atom).intersection(&d2[i * alpha + j]))
                };
                require(
                    got == want,
                    &format!("G∘F carries s_{i}{j} to s''_{i}{j}"),
                    || format!("atom {k}"),
                )?;
            }
        }
    }
    checks.push(StepCheck::pass(
        "verify_s_is_S",
        format!(
            "s''_ij = S_ij^V for {} pairs on {} elements",
            report.pairs, report.elements
        ),
    ));

    let matchings = g
        .matchings()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, f)| (format!("f_0{i}"), f.clone()))
        .collect();
    let manifest = Manifest {
        construction: "substitution".into(),
        alpha,
        u: shape_u.base(),
        w,
        v: shape_v.base(),
        seed,
        group: None,
        representatives: Vec::new(),
        matchings,
        checks,
    };
    Ok(SubstitutionRun {
        blowup,
        rearrangement: g,
        diagonals: d2,
        manifest,
    })
}
