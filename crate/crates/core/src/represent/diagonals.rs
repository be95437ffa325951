//! Recovering diagonal elements from substitutions.
//!
//! In a finite substitution-cylindric algebra the least `y` with
//! `s_ij(y) = 1` exists and serves as the diagonal `d_ij`.

use rand::RngCore;

use crate::algebra::Algebra;
use crate::bits::Bits;
use crate::checker::{check_suite, Strategy, SuiteReport};
use crate::suites::{instantiate, SuiteId};
use crate::transform::Transformation;

use super::RepresentError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalFamily {
    alpha: usize,
    d: Vec<Bits>,
}

impl DiagonalFamily {
    pub fn new(alpha: usize, d: Vec<Bits>) -> Result<Self, RepresentError> {
        if d.len() != alpha * alpha {
            return Err(RepresentError::Precondition(format!(
                "expected {} diagonal elements, got {}",
                alpha * alpha,
                d.len()
            )));
        }
        Ok(DiagonalFamily { alpha, d })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn get(&self, i: usize, j: usize) -> &Bits {
        &self.d[i * self.alpha + j]
    }

    pub fn as_slice(&self) -> &[Bits] {
        &self.d
    }
}

/// `d*_ij` as the meet of `{ y : s_ij(y) = 1 }`, with `d*_ii = 1`.
///
/// The set is upward closed, so an atom lies below the meet exactly when
/// `s_ij` of the unit minus that atom is not 1. Fails if `s_ij(d*_ij) ≠ 1`.
pub fn recover_diagonals<A: Algebra + ?Sized>(a: &A) -> Result<DiagonalFamily, RepresentError> {
    let alpha = a.alpha();
    let one = a.one();
    let mut d = Vec::with_capacity(alpha * alpha);
    for i in 0..alpha {
        for j in 0..alpha {
            if i == j {
                d.push(one.clone());
                continue;
            }
            let s = |y: &Bits| {
                a.subst(i, j, y).ok_or_else(|| {
                    RepresentError::Precondition(format!("{} has no substitutions", a.name()))
                })
            };
            let mut meet = Bits::zeros(a.width());
            for atom in 0..a.width() {
                let mut y = one.clone();
                y.remove(atom);
                if !s(&y)?.is_full() {
                    meet.insert(atom);
                }
            }
            if !s(&meet)?.is_full() {
                return Err(RepresentError::NotSca { i, j });
            }
            d.push(meet);
        }
    }
    DiagonalFamily::new(alpha, d)
}

/// The meet by brute force over every element; usable up to about 20 atoms.
pub fn recover_diagonals_by_meet<A: Algebra + ?Sized>(a: &A, i: usize, j: usize) -> Option<Bits> {
    let mut meet = a.one();
    let mut found = false;
    for m in 0..1u64 << a.width() {
        let y = a.element(m);
        if a.subst(i, j, &y)?.is_full() {
            meet.intersect_with(&y);
            found = true;
        }
    }
    found.then_some(meet)
}

/// An algebra with its diagonal constants replaced by a given family.
pub struct WithDiagonals<'a, A: ?Sized> {
    inner: &'a A,
    d: &'a DiagonalFamily,
}

impl<'a, A: Algebra + ?Sized> WithDiagonals<'a, A> {
    pub fn new(inner: &'a A, d: &'a DiagonalFamily) -> Self {
        WithDiagonals { inner, d }
    }
}

impl<A: Algebra + ?Sized> Algebra for WithDiagonals<'_, A> {
    fn alpha(&self) -> usize {
        self.inner.alpha()
    }
    fn width(&self) -> usize {
        self.inner.width()
    }
    fn name(&self) -> String {
        format!("{} with recovered diagonals", self.inner.name())
    }
    fn cyl(&self, i: usize, x: &Bits) -> Bits {
        self.inner.cyl(i, x)
    }
    fn subst(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        self.inner.subst(i, j, x)
    }
    fn perm(&self, i: usize, j: usize, x: &Bits) -> Option<Bits> {
        self.inner.perm(i, j, x)
    }
    fn diag(&self, i: usize, j: usize) -> Option<Bits> {
        (i < self.d.alpha() && j < self.d.alpha()).then(|| self.d.get(i, j).clone())
    }
    fn subst_sigma(&self, sigma: &Transformation, x: &Bits) -> Option<Bits> {
        self.inner.subst_sigma(sigma, x)
    }
    fn element(&self, index: u64) -> Bits {
        self.inner.element(index)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> Bits {
        self.inner.random_element(rng)
    }
    fn render(&self, x: &Bits) -> String {
        self.inner.render(x)
    }
}

#[derive(Debug, Clone)]
pub struct RdscReport {
    /// The cylindric suite on the algebra with the recovered diagonals.
    pub ca: SuiteReport,
    /// `(i, j, element)` where `s_ij(x) ≠ c_i(d_ij · x)`.
    pub s_mismatches: Vec<(usize, usize, String)>,
    pub elements_checked: u64,
}

impl RdscReport {
    pub fn passed(&self) -> bool {
        self.ca.passed() && self.s_mismatches.is_empty()
    }
}

/// Checks that the algebra with the recovered diagonals is cylindric and
/// that `s_ij(x) = c_i(d_ij · x)` for `i ≠ j`. The identity is checked on
/// every element when the carrier fits the strategy's budget, otherwise on
/// `strategy.samples` random elements.
pub fn verify_rdsc<A: Algebra + ?Sized>(
    a: &A,
    d: &DiagonalFamily,
    strategy: &Strategy,
) -> Result<RdscReport, RepresentError> {
    let alpha = a.alpha();
    let suite =
        instantiate(SuiteId::Ca, alpha).map_err(|e| RepresentError::Precondition(e.to_string()))?;
    let with = WithDiagonals::new(a, d);
    let ca = check_suite(&with, &suite, strategy)?;

    let exhaustive = a.width() < 64 && (1u128 << a.width()) <= strategy.budget;
    let elements: Box<dyn Iterator<Item = Bits>> = if exhaustive {
        Box::new((0..1u64 << a.width()).map(|m| a.element(m)))
    } else {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(strategy.seed);
        let xs: Vec<Bits> = (0..strategy.samples)
            .map(|_| a.random_element(&mut rng))
            .collect();
        Box::new(xs.into_iter())
    };
    let mut mismatches = Vec::new();
    let mut count = 0u64;
    for x in elements {
        count += 1;
        for i in 0..alpha {
            for j in 0..alpha {
                if i == j {
                    continue;
                }
                let lhs = a.subst(i, j, &x).ok_or_else(|| {
                    RepresentError::Precondition(format!("{} has no substitutions", a.name()))
                })?;
                let rhs = a.cyl(i, &d.get(i, j).intersection(&x));
                if lhs != rhs {
                    mismatches.push((i, j, a.render(&x)));
                }
            }
        }
    }
    Ok(RdscReport {
        ca,
        s_mismatches: mismatches,
        elements_checked: count,
    })
}
