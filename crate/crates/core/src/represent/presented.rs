use crate::algebra::Algebra;
use crate::bits::Bits;
use crate::duality::{cm, AtomStructure, FiniteAlgebra, Pairs};
use crate::relation::{cyl_bits, diag_bits, pull_back, Shape};
use crate::terms::SigTag;
use crate::transform::Transformation;

use super::RepresentError;

/// A finite algebra together with a presentation of its atoms as pairwise
/// disjoint sets of points of `^αU` covering the unit. The cylindrifications
/// are the real `C_i^U`; the other operators may be abstract.
#[derive(Debug, Clone)]
pub struct Presented {
    shape: Shape,
    atoms: Vec<Bits>,
    owner: Vec<u32>,
    algebra: FiniteAlgebra,
}

impl Presented {
    pub fn new(
        shape: Shape,
        atoms: Vec<Bits>,
        algebra: FiniteAlgebra,
    ) -> Result<Self, RepresentError> {
        let owner = owners(&shape, &atoms)?;
        if algebra.width() != atoms.len() || algebra.alpha() != shape.alpha() {
            return Err(RepresentError::Precondition(format!(
                "algebra has {} atoms in dimension {}, presentation has {} in dimension {}",
                algebra.width(),
                algebra.alpha(),
                atoms.len(),
                shape.alpha()
            )));
        }
        let p = Presented {
            shape,
            atoms,
            owner,
            algebra,
        };
        for i in 0..shape.alpha() {
            for (k, a) in p.atoms.iter().enumerate() {
                let real = cyl_bits(&shape, i, a);
                let abstract_ = p.points_of(&p.algebra.cyl(i, &p.algebra.atom(k)));
                if real != abstract_ {
                    return Err(RepresentError::Verification {
                        what: format!("c_{i} agrees with the set cylindrification"),
                        witness: format!("atom {k}"),
                    });
                }
            }
        }
        Ok(p)
    }

    /// The full set algebra with singleton atoms, carrying the real operators
    /// that `sig` names.
    pub fn full(shape: Shape, sig: SigTag) -> Result<Self, RepresentError> {
        let atoms = singletons(&shape);
        Self::from_atoms(shape, atoms, sig)
    }

    /// The subalgebra of the full set algebra whose atoms are `atoms`, with
    /// the real operators `sig` names. Fails if an operator leads outside.
    pub fn from_atoms(shape: Shape, atoms: Vec<Bits>, sig: SigTag) -> Result<Self, RepresentError> {
        let owner = owners(&shape, &atoms)?;
        let alpha = shape.alpha();
        let rel = |f: &dyn Fn(&Bits) -> Bits, name: String| atom_relation(&atoms, &owner, f, name);
        let t = (0..alpha)
            .map(|i| rel(&|x| cyl_bits(&shape, i, x), format!("c_{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut st = AtomStructure::new(atoms.len(), alpha, t)?;
        let pairs: Vec<(usize, usize)> = (0..alpha)
            .flat_map(|i| (0..alpha).map(move |j| (i, j)))
            .collect();
        let family = |make: fn(usize, usize, usize) -> crate::error::Result<Transformation>,
                      name: &str|
         -> Result<Vec<Pairs>, RepresentError> {
            pairs
                .iter()
                .map(|&(i, j)| {
                    let table = shape.pullback_table(&make(i, j, alpha)?)?;
                    rel(&|x| pull_back(&table, x), format!("{name}_{i}{j}"))
                })
                .collect()
        };
        let (with_s, with_p, with_d) = match sig {
            SigTag::C => (false, false, false),
            SigTag::Cs => (true, false, false),
            SigTag::Csp | SigTag::Pa => (true, true, false),
            SigTag::Cspd => (true, true, true),
        };
        if with_s {
            st = st.with_r(family(Transformation::replacement, "s")?)?;
        }
        if with_p {
            st = st.with_p(family(Transformation::transposition, "p")?)?;
        }
        if with_d {
            let d = pairs
                .iter()
                .map(|&(i, j)| {
                    let dij = diag_bits(&shape, i, j);
                    exact_atoms(&atoms, &owner, &dij)
                        .map(|b| b.iter().collect())
                        .ok_or(RepresentError::NotClosed {
                            op: format!("d_{i}{j}"),
                            atom: 0,
                        })
                })
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            st = st.with_d(d)?;
        }
        Self::new(shape, atoms, cm(&st))
    }

    /// The full set algebra over `^αU` with twisted diagonals
    /// `d_ij = { s : π_i⁻¹(s_i) = π_j⁻¹(s_j) }`, where `π_1(u) = u + shift`
    /// mod `|U|` and every other `π_k` is the identity, and with the
    /// substitutions `s_ij(x) = C_i(x ∩ d_ij)` they induce.
    pub fn twisted_sca(shape: Shape, shift: usize) -> Result<Self, RepresentError> {
        let atoms = singletons(&shape);
        let owner = owners(&shape, &atoms)?;
        let alpha = shape.alpha();
        let d = twisted_diagonals(&shape, shift);
        let t = (0..alpha)
            .map(|i| {
                atom_relation(
                    &atoms,
                    &owner,
                    &|x| cyl_bits(&shape, i, x),
                    format!("c_{i}"),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let r = (0..alpha * alpha)
            .map(|k| {
                let (i, j) = (k / alpha, k % alpha);
                if i == j {
                    Ok((0..atoms.len()).map(|a| (a, a)).collect())
                } else {
                    atom_relation(
                        &atoms,
                        &owner,
                        &|x| cyl_bits(&shape, i, &x.intersection(&d[k])),
                        format!("s_{i}{j}"),
                    )
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let st = AtomStructure::new(atoms.len(), alpha, t)?.with_r(r)?;
        Self::new(
            shape,
            atoms,
            cm(&st).with_label(format!(
                "twisted substitution algebra (alpha={alpha}, |U|={}, shift={shift})",
                shape.base()
            )),
        )
    }

    /// Replaces the permutation operators by the given atom permutations,
    /// one per `(i, j)` in the order `i * alpha + j`.
    pub fn with_abstract_perms(self, perms: Vec<Vec<usize>>) -> Result<Self, RepresentError> {
        let alpha = self.shape.alpha();
        if perms.len() != alpha * alpha {
            return Err(RepresentError::Precondition(format!(
                "expected {} permutation tables, got {}",
                alpha * alpha,
                perms.len()
            )));
        }
        let n = self.atoms.len();
        let mut rel = Vec::with_capacity(perms.len());
        for table in &perms {
            let mut seen = vec![false; n];
            if table.len() != n
                || table
                    .iter()
                    .any(|&b| b >= n || std::mem::replace(&mut seen[b], true))
            {
                return Err(RepresentError::Precondition(
                    "permutation table is not a bijection of the atoms".into(),
                ));
            }
            rel.push(table.iter().enumerate().map(|(a, &b)| (a, b)).collect());
        }
        let st = self.algebra.structure().clone().with_p(rel)?;
        Self::new(self.shape, self.atoms, cm(&st))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn atoms(&self) -> &[Bits] {
        &self.atoms
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    /// The atom containing point `p`.
    pub fn owner(&self, p: usize) -> usize {
        self.owner[p] as usize
    }

    /// The point set of an element given as a set of atoms.
    pub fn points_of(&self, x: &Bits) -> Bits {
        let mut out = Bits::zeros(self.shape.points());
        for a in x.iter() {
            out.union_with(&self.atoms[a]);
        }
        out
    }

    /// The element whose point set is `points`, if there is one.
    pub fn element_of(&self, points: &Bits) -> Option<Bits> {
        exact_atoms(&self.atoms, &self.owner, points)
    }
}

pub(crate) fn singletons(shape: &Shape) -> Vec<Bits> {
    (0..shape.points())
        .map(|p| Bits::from_indices(shape.points(), [p]))
        .collect()
}

/// `d_ij` twisted by `π_1(u) = u + shift`.
pub fn twisted_diagonals(shape: &Shape, shift: usize) -> Vec<Bits> {
    let (alpha, base) = (shape.alpha(), shape.base());
    let untwist = |k: usize, u: usize| {
        if k == 1 {
            (u + base - shift % base) % base
        } else {
            u
        }
    };
    (0..alpha * alpha)
        .map(|k| {
            let (i, j) = (k / alpha, k % alpha);
            Bits::from_indices(
                shape.points(),
                (0..shape.points())
                    .filter(|&p| untwist(i, shape.coord(p, i)) == untwist(j, shape.coord(p, j))),
            )
        })
        .collect()
}

fn owners(shape: &Shape, atoms: &[Bits]) -> Result<Vec<u32>, RepresentError> {
    let n = shape.points();
    let mut owner = vec![u32::MAX; n];
    for (k, a) in atoms.iter().enumerate() {
        if a.len() != n {
            return Err(RepresentError::NotPartition(format!(
                "atom {k} has width {}, expected {n}",
                a.len()
            )));
        }
        if a.is_empty() {
            return Err(RepresentError::NotPartition(format!("atom {k} is empty")));
        }
        for p in a.iter() {
            if owner[p] != u32::MAX {
                return Err(RepresentError::NotPartition(format!(
                    "atoms {} and {k} overlap",
                    owner[p]
                )));
            }
            owner[p] = k as u32;
        }
    }
    if let Some(p) = owner.iter().position(|&o| o == u32::MAX) {
        return Err(RepresentError::NotPartition(format!(
            "point {} is in no atom",
            shape
                .decode(p)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )));
    }
    Ok(owner)
}

fn exact_atoms(atoms: &[Bits], owner: &[u32], points: &Bits) -> Option<Bits> {
    let mut hit = Bits::zeros(atoms.len());
    for p in points.iter() {
        hit.insert(owner[p] as usize);
    }
    let exact = hit.iter().all(|a| atoms[a].is_subset(points));
    exact.then_some(hit)
}

fn atom_relation(
    atoms: &[Bits],
    owner: &[u32],
    op: &dyn Fn(&Bits) -> Bits,
    name: String,
) -> Result<Pairs, RepresentError> {
    let mut pairs = Pairs::new();
    for (a, points) in atoms.iter().enumerate() {
        let img = exact_atoms(atoms, owner, &op(points)).ok_or(RepresentError::NotClosed {
            op: name.clone(),
            atom: a,
        })?;
        pairs.extend(img.iter().map(|b| (a, b)));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_algebra::SetAlgebra;

    #[test]
    fn full_presentation_matches_set_algebra() {
        let shape = Shape::new(3, 2).unwrap();
        let p = Presented::full(shape, SigTag::Cspd).unwrap();
        let set = SetAlgebra::from_shape(shape);
        let a = p.algebra();
        for m in [0u64, 3, 77, 200, 255] {
            let x = set.element(m);
            assert_eq!(a.subst(0, 2, &x), set.subst(0, 2, &x));
            assert_eq!(a.perm(1, 2, &x), set.perm(1, 2, &x));
        }
        assert_eq!(a.diag(0, 1), set.diag(0, 1));
    }

    #[test]
    fn non_partitions_are_rejected() {
        let shape = Shape::new(2, 2).unwrap();
        let mut atoms = singletons(&shape);
        atoms.pop();
        assert!(matches!(
            Presented::from_atoms(shape, atoms, SigTag::C),
            Err(RepresentError::NotPartition(_))
        ));
    }

    #[test]
    fn coarse_atoms_must_be_closed() {
        let shape = Shape::new(2, 2).unwrap();
        // {(0,0)} and the rest: c_0 of the first is {(0,0),(1,0)}.
        let first = Bits::from_indices(4, [0]);
        let atoms = vec![first.clone(), first.complement()];
        assert!(matches!(
            Presented::from_atoms(shape, atoms, SigTag::C),
            Err(RepresentError::NotClosed { .. })
        ));
    }

    #[test]
    fn twisted_diagonals_move_only_index_one() {
        let shape = Shape::new(3, 2).unwrap();
        let d = twisted_diagonals(&shape, 1);
        assert_eq!(d[2], diag_bits(&shape, 0, 2));
        assert_eq!(d[1], diag_bits(&shape, 0, 1).complement());
        assert!(d[4].is_full());
    }
}
