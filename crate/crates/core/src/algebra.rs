//! The interface the evaluator and checker see.
//!
//! Every algebra here is a powerset algebra over `width()` atoms: elements are
//! `Bits` of that length and the Boolean operations are the set operations.
//! The extra operators are supplied per algebra; a `None` means the algebra
//! does not carry that operator.

use rand::RngCore;

use crate::bits::Bits;
use crate::transform::Transformation;

pub trait Algebra: Sync {
    fn alpha(&self) -> usize;

    /// Number of atoms; the carrier has `2^width` elements.
    fn width(&self) -> usize;

    /// Short description for reports.
    fn name(&self) -> String;

    fn cyl(&self, i: usize, x: &Bits) -> Bits;

    /// `c_(Γ)`, applying the largest index first.
    fn cyl_set(&self, gamma: &[usize], x: &Bits) -> Bits {
        let mut sorted = gamma.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted
            .iter()
            .rev()
            .fold(x.clone(), |acc, &i| self.cyl(i, &acc))
    }

    fn subst(&self, _i: usize, _j: usize, _x: &Bits) -> Option<Bits> {
        None
    }

    fn perm(&self, _i: usize, _j: usize, _x: &Bits) -> Option<Bits> {
        None
    }

    fn diag(&self, _i: usize, _j: usize) -> Option<Bits> {
        None
    }

    fn subst_sigma(&self, _sigma: &Transformation, _x: &Bits) -> Option<Bits> {
        None
    }

    fn zero(&self) -> Bits {
        Bits::zeros(self.width())
    }

    fn one(&self) -> Bits {
        Bits::ones(self.width())
    }

    /// Element number `index` of the carrier, for `index < 2^width`.
    fn element(&self, index: u64) -> Bits {
        Bits::from_index(self.width(), index)
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Bits {
        Bits::random(self.width(), rng)
    }

    fn render(&self, x: &Bits) -> String {
        x.to_string()
    }
}

impl<A: Algebra + ?Sized> Algebra for &A {
    fn alpha(&self) -> usize {
        (**self).alpha()
    }
    fn width(&self) -> usize {
        (**self).width()
    }
    fn name(&self) -> String {
        (**self).name()
    }
    fn cyl(&self, i: usize, x: &Bits) -> Bits {
        (**self).cyl(i, x)
    }
    fn cyl_set(&self, gamma: &[usize], x: &Bits) -> Bits {
        (**self).cyl_set(gamma, x)
    }
    fn subst(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        (**self).subst(i, j, x)
    }
    fn perm(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        (**self).perm(i, j, x)
    }
    fn diag(&self, i: usize, j: usize) -> Option<Bits> {
        (**self).diag(i, j)
    }
    fn subst_sigma(&self, sigma: &Transformation, x: &Bits) -> Option<Bits> {
        (**self).subst_sigma(sigma, x)
    }
    fn render(&self, x: &Bits) -> String {
        (**self).render(x)
    }
}

/// Which operators an algebra carries, probed on the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub subst: bool,
    pub perm: bool,
    pub diag: bool,
    pub subst_sigma: bool,
}

impl Capabilities {
    pub fn probe<A: Algebra + ?Sized>(a: &A) -> Self {
        let z = a.zero();
        Capabilities {
            subst: a.subst(0, 0, &z).is_some(),
            perm: a.perm(0, 0, &z).is_some(),
            diag: a.diag(0, 0).is_some(),
            subst_sigma: a
                .subst_sigma(&Transformation::identity(a.alpha()), &z)
                .is_some(),
        }
    }
}
