//! The full set algebra on `^αU` with `C_i`, `S_ij`, `P_ij`, `D_ij` and `S_σ`.

use std::sync::OnceLock;

use crate::algebra::Algebra;
use crate::bits::Bits;
use crate::error::Result;
use crate::relation::{cyl_bits, diag_bits, pull_back, PointSet, Relation, Shape};
use crate::transform::Transformation;

pub struct SetAlgebra {
    shape: Shape,
    subst: Vec<OnceLock<Vec<u32>>>,
    perm: Vec<OnceLock<Vec<u32>>>,
    diag: Vec<OnceLock<Bits>>,
}

impl SetAlgebra {
    pub fn new(alpha: usize, base: usize) -> Result<Self> {
        Ok(SetAlgebra::from_shape(Shape::new(alpha, base)?))
    }

    pub fn from_shape(shape: Shape) -> Self {
        let n = shape.alpha() * shape.alpha();
        SetAlgebra {
            shape,
            subst: (0..n).map(|_| OnceLock::new()).collect(),
            perm: (0..n).map(|_| OnceLock::new()).collect(),
            diag: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn relation(&self, bits: Bits) -> Relation {
        Relation::from_bits(self.shape, bits).expect("element width matches shape")
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        i * self.shape.alpha() + j
    }

    fn subst_table(&self, i: usize, j: usize) -> &[u32] {
        self.subst[self.slot(i, j)].get_or_init(|| {
            let t = Transformation::replacement(i, j, self.shape.alpha()).expect("indices checked");
            self.shape.pullback_table(&t).expect("same dimension")
        })
    }

    fn perm_table(&self, i: usize, j: usize) -> &[u32] {
        self.perm[self.slot(i, j)].get_or_init(|| {
            let t =
                Transformation::transposition(i, j, self.shape.alpha()).expect("indices checked");
            self.shape.pullback_table(&t).expect("same dimension")
        })
    }

    fn in_range(&self, i: usize, j: usize) -> bool {
        i < self.shape.alpha() && j < self.shape.alpha()
    }
}

impl Algebra for SetAlgebra {
    fn alpha(&self) -> usize {
        self.shape.alpha()
    }

    fn width(&self) -> usize {
        self.shape.points()
    }

    fn name(&self) -> String {
        format!(
            "full set algebra (alpha={}, |U|={})",
            self.shape.alpha(),
            self.shape.base()
        )
    }

    fn cyl(&self, i: usize, x: &Bits) -> Bits {
        cyl_bits(&self.shape, i, x)
    }

    fn subst(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        if !self.in_range(i, j) {
            return None;
        }
        Some(pull_back(self.subst_table(i, j), x))
    }

    fn perm(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        if !self.in_range(i, j) {
            return None;
        }
        Some(pull_back(self.perm_table(i, j), x))
    }

    fn diag(&self, i: usize, j: usize) -> Option<Bits> {
        if !self.in_range(i, j) {
            return None;
        }
        Some(
            self.diag[self.slot(i, j)]
                .get_or_init(|| diag_bits(&self.shape, i, j))
                .clone(),
        )
    }

    fn subst_sigma(&self, sigma: &Transformation, x: &Bits) -> Option<Bits> {
        let table = self.shape.pullback_table(sigma).ok()?;
        Some(pull_back(&table, x))
    }

    fn render(&self, x: &Bits) -> String {
        PointSet(&self.shape, x).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_tables_agree_with_relation_methods() {
        let a = SetAlgebra::new(3, 2).unwrap();
        for m in 0..256u64 {
            let x = a.element(m);
            let r = a.relation(x.clone());
            for i in 0..3 {
                assert_eq!(&a.cyl(i, &x), r.cyl(i).unwrap().bits());
                for j in 0..3 {
                    assert_eq!(&a.subst(i, j, &x).unwrap(), r.subst(i, j).unwrap().bits());
                    assert_eq!(&a.perm(i, j, &x).unwrap(), r.perm(i, j).unwrap().bits());
                }
            }
        }
    }

    #[test]
    fn out_of_range_operators_are_unsupported() {
        let a = SetAlgebra::new(3, 2).unwrap();
        assert!(a.subst(3, 0, &a.zero()).is_none());
        assert!(a.diag(0, 5).is_none());
    }

    #[test]
    fn render_shows_points() {
        let a = SetAlgebra::new(2, 2).unwrap();
        assert_eq!(a.render(&a.diag(0, 1).unwrap()), "{(0,0),(1,1)}");
    }
}
