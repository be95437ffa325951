//! The blow-up `V = U × W` and the embedding `F(X) = ⋃{ ŝ : s ∈ X }` with
//! `ŝ = { s×w : w ∈ ^αW }`.
//!
//! A base element `(u, w)` of `V` is encoded as `u + |U|·w`.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::relation::Shape;

#[derive(Debug, Clone)]
pub struct BlowupMap {
    source: Shape,
    target: Shape,
    w: usize,
    /// For each point of `^αV`, the point of `^αU` it lies over.
    projection: Vec<u32>,
}

impl BlowupMap {
    pub fn new(source: Shape, w: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::TooLarge("the factor base W must be nonempty".into()));
        }
        let base = source
            .base()
            .checked_mul(w)
            .ok_or_else(|| Error::TooLarge("|U|·|W| overflows".into()))?;
        let target = Shape::new(source.alpha(), base)?;
        let projection = (0..target.points())
            .map(|p| {
                let s: Vec<usize> = (0..source.alpha())
                    .map(|k| target.coord(p, k) % source.base())
                    .collect();
                source.encode(&s) as u32
            })
            .collect();
        Ok(BlowupMap {
            source,
            target,
            w,
            projection,
        })
    }

    pub fn source(&self) -> Shape {
        self.source
    }

    pub fn target(&self) -> Shape {
        self.target
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// The element `(u, w)` of `V`.
    pub fn pair(&self, u: usize, w: usize) -> usize {
        u + self.source.base() * w
    }

    pub fn split(&self, v: usize) -> (usize, usize) {
        (v % self.source.base(), v / self.source.base())
    }

    /// The point `s×w` of `^αV`.
    pub fn point(&self, s: &[usize], w: &[usize]) -> usize {
        let v: Vec<usize> = s.iter().zip(w).map(|(&u, &w)| self.pair(u, w)).collect();
        self.target.encode(&v)
    }

    /// The point of `^αU` that point `p` of `^αV` lies over.
    pub fn project(&self, p: usize) -> usize {
        self.projection[p] as usize
    }

    /// `ŝ` for the point `s` of `^αU`.
    pub fn hat(&self, s: usize) -> Bits {
        self.apply(&Bits::from_indices(self.source.points(), [s]))
    }

    /// `F(X)`.
    pub fn apply(&self, x: &Bits) -> Bits {
        Bits::from_indices(
            self.target.points(),
            (0..self.target.points()).filter(|&p| x.get(self.project(p))),
        )
    }

    /// `W` coordinates of point `p` of `^αV`.
    pub fn w_coords(&self, p: usize) -> Vec<usize> {
        (0..self.target.alpha())
            .map(|k| self.target.coord(p, k) / self.source.base())
            .collect()
    }
}
