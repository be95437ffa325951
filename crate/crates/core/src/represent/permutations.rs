//! Representing abstract permutations: blow up by `W = PT_α`, split every
//! `ŝ` into `α!` pieces `ŝ ∩ s_σ`, and send each repetition-free atom to a
//! union of moved pieces chosen by where the abstract `p` sends it.

use rand::RngCore;

use crate::algebra::Algebra;
use crate::bits::Bits;
use crate::checker::{check_suite, Strategy};
use crate::duality::FiniteAlgebra;
use crate::relation::{cyl_bits, pull_back, Shape};
use crate::set_algebra::SetAlgebra;
use crate::suites::{instantiate, SuiteId};
use crate::transform::{Generator, Transformation};

use super::blowup::BlowupMap;
use super::diagonals::recover_diagonals;
use super::{require, Manifest, Presented, RepresentError, StepCheck};

/// `PT_α` in lexicographic order, with `σ ⋆ τ` the element whose index is
/// the sum of the indices mod `α!`.
#[derive(Debug, Clone)]
pub struct PermGroup {
    alpha: usize,
    elements: Vec<Transformation>,
}

impl PermGroup {
    pub fn new(alpha: usize) -> Self {
        PermGroup {
            alpha,
            elements: Transformation::permutations(alpha),
        }
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn get(&self, k: usize) -> &Transformation {
        &self.elements[k]
    }

    pub fn index_of(&self, sigma: &Transformation) -> Option<usize> {
        self.elements.binary_search(sigma).ok()
    }

    pub fn star(&self, a: usize, b: usize) -> usize {
        (a + b) % self.order()
    }

    /// Index of `σ⁻¹ ∘ δ`.
    fn quotient(&self, sigma: usize, delta: usize) -> usize {
        let inv = self.elements[sigma].inverse().expect("permutation");
        let q = inv.compose(&self.elements[delta]).expect("same dimension");
        self.index_of(&q).expect("closed under composition")
    }

    fn inverse_index(&self, k: usize) -> usize {
        let inv = self.elements[k].inverse().expect("permutation");
        self.index_of(&inv).expect("closed under inverses")
    }
}

/// The pieces `s_σ ⊆ ^αV` for `V = U × PT_α`: the sequences whose
/// `W` coordinates have index sum `idx(σ)` mod `α!`.
#[derive(Debug, Clone)]
pub struct SplitFamily {
    group: PermGroup,
    blowup: BlowupMap,
    parts: Vec<Bits>,
}

impl SplitFamily {
    pub fn new(source: Shape) -> Result<Self, RepresentError> {
        let group = PermGroup::new(source.alpha());
        let blowup = BlowupMap::new(source, group.order())?;
        let target = blowup.target();
        let mut parts = vec![Bits::zeros(target.points()); group.order()];
        for p in 0..target.points() {
            let sum: usize = blowup.w_coords(p).iter().sum();
            parts[sum % group.order()].insert(p);
        }
        Ok(SplitFamily {
            group,
            blowup,
            parts,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn blowup(&self) -> &BlowupMap {
        &self.blowup
    }

    pub fn part(&self, sigma: usize) -> &Bits {
        &self.parts[sigma]
    }

    /// `ŝ ∩ s_σ`.
    pub fn split_shat(&self, s: usize, sigma: usize) -> Bits {
        self.blowup.hat(s).intersection(&self.parts[sigma])
    }

    /// `|W|^α / α!`, the size of every `ŝ ∩ s_σ`.
    pub fn piece_size(&self) -> usize {
        self.blowup.w().pow(self.group.alpha() as u32) / self.group.order()
    }

    /// The pieces partition `^αV`, `C_i(s_σ) = 1`, each piece is fixed by
    /// every `P_τ`, and every `ŝ ∩ s_σ` has `piece_size()` points and the same
    /// cylindrifications as `ŝ`.
    pub fn verify(&self) -> Result<(), RepresentError> {
        let target = self.blowup.target();
        let mut union = Bits::zeros(target.points());
        for (k, part) in self.parts.iter().enumerate() {
            require(part.is_disjoint(&union), "pieces are disjoint", || {
                format!("piece {k}")
            })?;
            union.union_with(part);
            for i in 0..target.alpha() {
                require(
                    cyl_bits(&target, i, part).is_full(),
                    "C_i(s_sigma) = 1",
                    || format!("piece {k}, i={i}"),
                )?;
            }
            for tau in self.group.elements() {
                let table = target.pullback_table(tau)?;
                require(
                    pull_back(&table, part) == *part,
                    "P_tau(s_sigma) = s_sigma",
                    || format!("piece {k}, tau={tau}"),
                )?;
            }
        }
        require(union.is_full(), "pieces cover the unit", String::new)?;
        let size = self.piece_size();
        for s in 0..self.blowup.source().points() {
            let hat = self.blowup.hat(s);
            for k in 0..self.parts.len() {
                let piece = self.split_shat(s, k);
                require(
                    piece.count() == size,
                    "split pieces have equal size",
                    || format!("point {s}, piece {k}: {} points", piece.count()),
                )?;
                for i in 0..target.alpha() {
                    require(
                        cyl_bits(&target, i, &piece) == cyl_bits(&target, i, &hat),
                        "C_i(s^ . s_sigma) = C_i(s^)",
                        || format!("point {s}, piece {k}, i={i}"),
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// `p_π(x)` through the abstract transpositions, innermost generator first.
pub fn abstract_perm<A: Algebra + ?Sized>(
    a: &A,
    pi: &Transformation,
    x: &Bits,
) -> Result<Bits, RepresentError> {
    let mut acc = x.clone();
    for g in pi.decompose().iter().rev() {
        let Generator::Swap(i, j) = *g else {
            return Err(RepresentError::Precondition(format!(
                "{pi} is not a permutation"
            )));
        };
        acc = a.perm(i, j, &acc).ok_or_else(|| {
            RepresentError::Precondition(format!("{} has no permutations", a.name()))
        })?;
    }
    Ok(acc)
}

fn has_repetition(shape: &Shape, p: usize) -> bool {
    let s = shape.decode(p);
    (0..s.len()).any(|k| s[k + 1..].contains(&s[k]))
}

/// Atoms below no `d_kl` with `k ≠ l`. Fails if such an atom has a point
/// with a repeated coordinate.
pub fn repetition_free_atoms(input: &Presented, d: &[Bits]) -> Result<Vec<bool>, RepresentError> {
    let alpha = input.shape().alpha();
    let n = input.atoms().len();
    let mut rf = vec![true; n];
    for k in 0..alpha {
        for l in 0..alpha {
            if k != l {
                for a in d[k * alpha + l].iter() {
                    rf[a] = false;
                }
            }
        }
    }
    for (a, points) in input.atoms().iter().enumerate() {
        if rf[a] && points.iter().any(|p| has_repetition(&input.shape(), p)) {
            return Err(RepresentError::Classification { atom: a });
        }
    }
    Ok(rf)
}

/// `s ∘ σ` on point indices.
fn compose_point(shape: &Shape, p: usize, sigma: &Transformation) -> usize {
    let s = shape.decode(p);
    let moved: Vec<usize> = (0..s.len()).map(|k| s[sigma.apply(k)]).collect();
    shape.encode(&moved)
}

/// The lexicographically least sequence of each block `{ s∘σ : σ ∈ PT_α }`
/// among the points of repetition-free atoms.
pub fn block_representatives(input: &Presented, rf: &[bool], group: &PermGroup) -> Vec<usize> {
    let shape = input.shape();
    let mut reps: Vec<usize> = Vec::new();
    for (a, points) in input.atoms().iter().enumerate() {
        if !rf[a] {
            continue;
        }
        for p in points.iter() {
            let least = group
                .elements()
                .iter()
                .map(|sigma| compose_point(&shape, p, sigma))
                .min_by_key(|&q| shape.decode(q))
                .expect("group is nonempty");
            reps.push(least);
        }
    }
    reps.sort_by_key(|&q| shape.decode(q));
    reps.dedup();
    reps
}

/// Everything the permutation stage computes.
#[derive(Debug, Clone)]
pub struct PermutationRun {
    pub split: SplitFamily,
    pub rf: Vec<bool>,
    pub representatives: Vec<usize>,
    /// `G(a)` for every atom of the input.
    pub images: Vec<Bits>,
    pub manifest: Manifest,
}

impl PermutationRun {
    /// `G` on an element given as a set of atoms.
    pub fn image(&self, x: &Bits) -> Bits {
        let mut out = Bits::zeros(self.split.blowup().target().points());
        for a in x.iter() {
            out.union_with(&self.images[a]);
        }
        out
    }
}

struct RepBuilder<'a> {
    input: &'a Presented,
    split: &'a SplitFamily,
    reps: &'a [usize],
    /// Pullback tables on `^αV` for every group element.
    tables: Vec<Vec<u32>>,
}

impl RepBuilder<'_> {
    /// `⋃{ P_{δ⁻¹}(ŝ ∩ s_σ) : s ∈ R, σ, δ ∈ PT_α, s∘σ ∈ p_{σ⁻¹∘δ}(x) }`.
    fn rep(&self, x: &Bits) -> Result<Bits, RepresentError> {
        let group = self.split.group();
        let shape = self.input.shape();
        let a = self.input.algebra();
        let mut out = Bits::zeros(self.split.blowup().target().points());
        for sigma in 0..group.order() {
            for delta in 0..group.order() {
                let pi = group.get(group.quotient(sigma, delta));
                let moved = self.input.points_of(&abstract_perm(a, pi, x)?);
                let table = &self.tables[group.inverse_index(delta)];
                for &s in self.reps {
                    if moved.get(compose_point(&shape, s, group.get(sigma))) {
                        out.union_with(&pull_back(table, &self.split.split_shat(s, sigma)));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Runs the permutation stage on an input carrying abstract `c`, `s`, `p`.
/// `samples` random elements of the image algebra are checked against the
/// FPA suite.
pub fn run_permutation_pipeline(
    input: &Presented,
    seed: u64,
    samples: u64,
) -> Result<PermutationRun, RepresentError> {
    let shape_u = input.shape();
    let alpha = shape_u.alpha();
    let a = input.algebra();
    let mut checks = Vec::new();

    let split = SplitFamily::new(shape_u)?;
    split.verify()?;
    let group = split.group().clone();
    let blowup = split.blowup().clone();
    let shape_v = blowup.target();
    checks.push(StepCheck::pass(
        "split_shat",
        format!(
            "{} pieces; every s^ splits into parts of {} points with C_i(part) = C_i(s^)",
            group.order(),
            split.piece_size()
        ),
    ));

    let d = recover_diagonals(a)?;
    let rf = repetition_free_atoms(input, d.as_slice())?;
    let reps = block_representatives(input, &rf, &group);
    checks.push(StepCheck::pass(
        "classify",
        format!(
            "{} repetition-free atoms of {}; {} block representatives",
            rf.iter().filter(|&&r| r).count(),
            rf.len(),
            reps.len()
        ),
    ));

    let tables = group
        .elements()
        .iter()
        .map(|t| shape_v.pullback_table(t))
        .collect::<Result<Vec<_>, _>>()?;
    let builder = RepBuilder {
        input,
        split: &split,
        reps: &reps,
        tables,
    };
    let mut images = Vec::with_capacity(rf.len());
    for (k, &is_rf) in rf.iter().enumerate() {
        let f = blowup.apply(&input.atoms()[k]);
        if !is_rf {
            images.push(f);
            continue;
        }
        let rep = builder.rep(&a.atom(k))?;
        for i in 0..alpha {
            require(
                cyl_bits(&shape_v, i, &rep) == cyl_bits(&shape_v, i, &f),
                "C_i(rep(a)) = C_i(F(a))",
                || format!("atom {k}, i={i}"),
            )?;
        }
        for (t, tau) in group.elements().iter().enumerate() {
            let lhs = builder.rep(&abstract_perm(a, tau, &a.atom(k))?)?;
            require(
                lhs == pull_back(&builder.tables[t], &rep),
                "rep(p_tau(a)) = P_tau(rep(a))",
                || format!("atom {k}, tau={tau}"),
            )?;
        }
        images.push(rep);
    }
    checks.push(StepCheck::pass(
        "rep",
        format!(
            "equivariant under {} permutations and preserves every C_i",
            group.order()
        ),
    ));

    let mut union = Bits::zeros(shape_v.points());
    for (k, g) in images.iter().enumerate() {
        require(!g.is_empty(), "G(a) is nonempty", || format!("atom {k}"))?;
        require(g.is_disjoint(&union), "G images are disjoint", || {
            format!("atom {k}")
        })?;
        union.union_with(g);
    }
    require(union.is_full(), "G images cover the unit", String::new)?;
    checks.push(StepCheck::pass(
        "final_G",
        format!("{} atoms sent to a partition of ^alpha V", images.len()),
    ));

    let run = PermutationRun {
        split,
        rf,
        representatives: reps,
        images,
        manifest: Manifest::default(),
    };
    let v = SetAlgebra::from_shape(shape_v);
    for k in 0..a.width() {
        let atom = a.atom(k);
        let g = run.image(&atom);
        for i in 0..alpha {
            require(
                v.cyl(i, &g) == run.image(&a.cyl(i, &atom)),
                "G preserves c_i",
                || format!("atom {k}, i={i}"),
            )?;
            for j in 0..alpha {
                let ops: [(&str, Option<Bits>, Option<Bits>); 2] = [
                    ("s", v.subst(i, j, &g), a.subst(i, j, &atom)),
                    ("p", v.perm(i, j, &g), a.perm(i, j, &atom)),
                ];
                for (op, real, abs) in ops {
                    let abs = abs.ok_or_else(|| {
                        RepresentError::Precondition(format!("input lacks {op}_{i}{j}"))
                    })?;
                    require(
                        real == Some(run.image(&abs)),
                        &format!("G preserves {op}_{i}{j}"),
                        || format!("atom {k}"),
                    )?;
                }
            }
        }
    }
    checks.push(StepCheck::pass(
        "homomorphism",
        "C_i, S_ij, P_ij of V agree with G of c_i, s_ij, p_ij on every atom",
    ));

    let image_algebra = ImageAlgebra::new(a, &run);
    let suite = instantiate(SuiteId::Fpa, alpha)
        .map_err(|e| RepresentError::Precondition(e.to_string()))?;
    let report = check_suite(&image_algebra, &suite, &Strategy::auto(samples, seed))?;
    require(report.passed(), "FPA suite on the image algebra", || {
        report
            .first_failure()
            .map(|v| v.label.clone())
            .unwrap_or_default()
    })?;
    checks.push(StepCheck::pass(
        "fpa_on_image",
        format!(
            "{} instances, {samples} random elements each",
            report.verdicts.len()
        ),
    ));

    let manifest = Manifest {
        construction: "permutation".into(),
        alpha,
        u: shape_u.base(),
        w: group.order(),
        v: shape_v.base(),
        seed,
        group: Some(group.elements().iter().map(Transformation::map).collect()),
        representatives: run
            .representatives
            .iter()
            .map(|&s| shape_u.decode(s).to_vec())
            .collect(),
        matchings: Default::default(),
        checks,
    };
    Ok(PermutationRun { manifest, ..run })
}

/// The image of the input under `G` as a subalgebra of the full set algebra
/// on `^αV`. Elements are points sets of `^αV`, so exhaustive checking is out
/// of reach and sampling draws `G` of random atom sets.
pub struct ImageAlgebra {
    set: SetAlgebra,
    images: Vec<Bits>,
    label: String,
}

impl ImageAlgebra {
    fn new(a: &FiniteAlgebra, run: &PermutationRun) -> Self {
        ImageAlgebra {
            set: SetAlgebra::from_shape(run.split.blowup().target()),
            images: run.images.clone(),
            label: format!("image of {} in ^alpha V", a.name()),
        }
    }

    pub fn from_run(a: &FiniteAlgebra, run: &PermutationRun) -> Self {
        Self::new(a, run)
    }

    fn of_atoms(&self, x: &Bits) -> Bits {
        let mut out = Bits::zeros(self.set.width());
        for a in x.iter() {
            out.union_with(&self.images[a]);
        }
        out
    }
}

impl Algebra for ImageAlgebra {
    fn alpha(&self) -> usize {
        self.set.alpha()
    }
    fn width(&self) -> usize {
        self.set.width()
    }
    fn name(&self) -> String {
        self.label.clone()
    }
    fn cyl(&self, i: usize, x: &Bits) -> Bits {
        self.set.cyl(i, x)
    }
    fn subst(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        self.set.subst(i, j, x)
    }
    fn perm(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        self.set.perm(i, j, x)
    }
    fn diag(&self, i: usize, j: usize) -> Option<Bits> {
        self.set.diag(i, j)
    }
    fn subst_sigma(&self, sigma: &Transformation, x: &Bits) -> Option<Bits> {
        self.set.subst_sigma(sigma, x)
    }
    /// `G` of the atom set with mask `index`.
    fn element(&self, index: u64) -> Bits {
        self.of_atoms(&Bits::from_index(self.images.len(), index))
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> Bits {
        self.of_atoms(&Bits::random(self.images.len(), rng))
    }
    fn render(&self, x: &Bits) -> String {
        let atoms: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_subset(x))
            .map(|(k, _)| format!("G(a{k})"))
            .collect();
        format!("{{{}}}", atoms.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::SigTag;

    #[test]
    fn group_is_lex_ordered() {
        let g = PermGroup::new(3);
        assert_eq!(g.order(), 6);
        assert_eq!(g.get(0).map(), vec![0, 1, 2]);
        assert_eq!(g.get(5).map(), vec![2, 1, 0]);
        assert_eq!(g.star(4, 3), 1);
        for k in 0..6 {
            assert_eq!(g.quotient(k, k), 0);
        }
    }

    #[test]
    fn split_pieces_at_alpha_three() {
        let split = SplitFamily::new(Shape::new(3, 2).unwrap()).unwrap();
        split.verify().unwrap();
        assert_eq!(split.blowup().target().base(), 12);
        for k in 0..6 {
            assert_eq!(split.split_shat(5, k).count(), 36);
        }
    }

    #[test]
    fn abstract_perm_matches_real_on_the_full_algebra() {
        let shape = Shape::new(3, 2).unwrap();
        let p = Presented::full(shape, SigTag::Csp).unwrap();
        let set = SetAlgebra::from_shape(shape);
        let x = Bits::from_u64(8, 0b0110_1001);
        for pi in Transformation::permutations(3) {
            let want = pull_back(&shape.pullback_table(&pi).unwrap(), &x);
            assert_eq!(abstract_perm(p.algebra(), &pi, &x).unwrap(), want);
            assert_eq!(want, set.subst_sigma(&pi, &x).unwrap());
        }
    }

    #[test]
    fn no_repetition_free_points_over_two_elements() {
        let shape = Shape::new(3, 2).unwrap();
        let p = Presented::full(shape, SigTag::Csp).unwrap();
        let d = recover_diagonals(p.algebra()).unwrap();
        let rf = repetition_free_atoms(&p, d.as_slice()).unwrap();
        assert!(rf.iter().all(|&r| !r));
    }

    #[test]
    fn coarse_atom_over_a_repetition_is_misclassified() {
        let shape = Shape::new(2, 2).unwrap();
        // Atoms {(0,1),(1,1)}-style merges break closure, so feed a diagonal
        // family that leaves the diagonal atoms unmarked.
        let p = Presented::full(shape, SigTag::Csp).unwrap();
        let d = vec![Bits::ones(4), Bits::zeros(4), Bits::zeros(4), Bits::ones(4)];
        assert!(matches!(
            repetition_free_atoms(&p, &d),
            Err(RepresentError::Classification { .. })
        ));
    }

    #[test]
    fn pipeline_over_three_elements_reproduces_f() {
        let shape = Shape::new(3, 3).unwrap();
        let p = Presented::full(shape, SigTag::Csp).unwrap();
        let run = run_permutation_pipeline(&p, 5, 32).unwrap();
        assert_eq!(run.representatives.len(), 1);
        assert_eq!(run.rf.iter().filter(|&&r| r).count(), 6);
        for (k, g) in run.images.iter().enumerate() {
            assert_eq!(*g, run.split.blowup().apply(&p.atoms()[k]));
        }
    }
}
