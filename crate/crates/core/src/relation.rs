//! Points of `^αU`, their mixed-radix encoding, and relations as bitsets
//! together with the set operators `C_i`, `S_σ`, `P_σ`, `D_ij` and `dom_i`.

use std::fmt;

use smallvec::SmallVec;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::transform::Transformation;

/// Coordinates of one point `s ∈ ^αU`.
pub type Point = SmallVec<[usize; 8]>;

/// Size guards for `^αU`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_alpha: usize,
    pub max_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_alpha: 8,
            max_points: 1 << 24,
        }
    }
}

/// The pair `(α, |U|)`. Point `s` has index `Σ_k s_k·|U|^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    alpha: usize,
    base: usize,
    points: usize,
}

impl Shape {
    pub fn new(alpha: usize, base: usize) -> Result<Self> {
        Shape::with_limits(alpha, base, Limits::default())
    }

    pub fn with_limits(alpha: usize, base: usize, limits: Limits) -> Result<Self> {
        if alpha == 0 || alpha > limits.max_alpha {
            return Err(Error::TooLarge(format!(
                "dimension {alpha} outside 1..={}",
                limits.max_alpha
            )));
        }
        if base == 0 {
            return Err(Error::TooLarge("base must be nonempty".into()));
        }
        let points = (0..alpha)
            .try_fold(1usize, |acc, _| acc.checked_mul(base))
            .filter(|&p| p <= limits.max_points)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "{base}^{alpha} points exceeds the limit of {}",
                    limits.max_points
                ))
            })?;
        Ok(Shape {
            alpha,
            base,
            points,
        })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// `|U|^α`.
    pub fn points(&self) -> usize {
        self.points
    }

    /// Whether `α ≥ 3`, the dimension the suites are stated for.
    pub fn alpha_at_least_three(&self) -> bool {
        self.alpha >= 3
    }

    #[inline]
    pub fn stride(&self, i: usize) -> usize {
        self.base.pow(i as u32)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.alpha {
            Err(Error::Index {
                index: i,
                alpha: self.alpha,
            })
        } else {
            Ok(())
        }
    }

    pub fn encode(&self, s: &[usize]) -> usize {
        debug_assert_eq!(s.len(), self.alpha);
        s.iter().rev().fold(0, |acc, &c| acc * self.base + c)
    }

    pub fn decode(&self, mut index: usize) -> Point {
        let mut s = Point::with_capacity(self.alpha);
        for _ in 0..self.alpha {
            s.push(index % self.base);
            index /= self.base;
        }
        s
    }

    #[inline]
    pub fn coord(&self, index: usize, i: usize) -> usize {
        (index / self.stride(i)) % self.base
    }

    /// Table `t` with `t[s] = index(s∘σ)`.
    pub fn pullback_table(&self, sigma: &Transformation) -> Result<Vec<u32>> {
        if sigma.alpha() != self.alpha {
            return Err(Error::DimensionMismatch {
                left: sigma.alpha(),
                right: self.alpha,
            });
        }
        Ok((0..self.points)
            .map(|k| {
                let s = self.decode(k);
                let moved: Point = (0..self.alpha).map(|m| s[sigma.apply(m)]).collect();
                self.encode(&moved) as u32
            })
            .collect())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} |U|={}", self.alpha, self.base)
    }
}

/// `C_i` on a raw bitset.
pub(crate) fn cyl_bits(shape: &Shape, i: usize, x: &Bits) -> Bits {
    let st = shape.stride(i);
    let block = st * shape.base;
    let mut out = Bits::zeros(shape.points);
    for hi in (0..shape.points).step_by(block) {
        for lo in 0..st {
            let first = hi + lo;
            if (0..shape.base).any(|u| x.get(first + u * st)) {
                for u in 0..shape.base {
                    out.insert(first + u * st);
                }
            }
        }
    }
    out
}

/// Bit `s` of the result is bit `table[s]` of `x`.
pub(crate) fn pull_back(table: &[u32], x: &Bits) -> Bits {
    let mut out = Bits::zeros(table.len());
    for (s, &t) in table.iter().enumerate() {
        if x.get(t as usize) {
            out.insert(s);
        }
    }
    out
}

pub(crate) fn diag_bits(shape: &Shape, i: usize, j: usize) -> Bits {
    Bits::from_indices(
        shape.points,
        (0..shape.points).filter(|&k| shape.coord(k, i) == shape.coord(k, j)),
    )
}

/// An α-ary relation over `U`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    shape: Shape,
    bits: Bits,
}

impl Relation {
    pub fn empty(shape: Shape) -> Self {
        Relation {
            shape,
            bits: Bits::zeros(shape.points),
        }
    }

    pub fn full(shape: Shape) -> Self {
        Relation {
            shape,
            bits: Bits::ones(shape.points),
        }
    }

    pub fn from_bits(shape: Shape, bits: Bits) -> Result<Self> {
        if bits.len() != shape.points {
            return Err(Error::ShapeMismatch {
                left: format!("{} bits", bits.len()),
                right: shape.to_string(),
            });
        }
        Ok(Relation { shape, bits })
    }

    pub fn from_points<'a>(
        shape: Shape,
        points: impl IntoIterator<Item = &'a [usize]>,
    ) -> Result<Self> {
        let mut r = Relation::empty(shape);
        for s in points {
            if s.len() != shape.alpha {
                return Err(Error::DimensionMismatch {
                    left: s.len(),
                    right: shape.alpha,
                });
            }
            if let Some(&bad) = s.iter().find(|&&c| c >= shape.base) {
                return Err(Error::Index {
                    index: bad,
                    alpha: shape.base,
                });
            }
            r.bits.insert(shape.encode(s));
        }
        Ok(r)
    }

    /// `D_ij = {s : s_i = s_j}`.
    pub fn diag(shape: Shape, i: usize, j: usize) -> Result<Self> {
        shape.check_index(i)?;
        shape.check_index(j)?;
        Ok(Relation {
            shape,
            bits: diag_bits(&shape, i, j),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn into_bits(self) -> Bits {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.bits.get(self.shape.encode(s))
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.bits.iter().map(|k| self.shape.decode(k))
    }

    fn same_shape(&self, other: &Relation) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape.to_string(),
                right: other.shape.to_string(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        Ok(Relation {
            shape: self.shape,
            bits: self.bits.union(&other.bits),
        })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        Ok(Relation {
            shape: self.shape,
            bits: self.bits.intersection(&other.bits),
        })
    }

    pub fn complement(&self) -> Relation {
        Relation {
            shape: self.shape,
            bits: self.bits.complement(),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    /// `C_i R = {s : s(i/u) ∈ R for some u}`.
    pub fn cyl(&self, i: usize) -> Result<Relation> {
        self.shape.check_index(i)?;
        Ok(Relation {
            shape: self.shape,
            bits: cyl_bits(&self.shape, i, &self.bits),
        })
    }

    /// `C_(Γ) R`, cylindrifying the largest index first so that the
    /// smallest ends up outermost.
    pub fn cyl_set(&self, gamma: &[usize]) -> Result<Relation> {
        for &i in gamma {
            self.shape.check_index(i)?;
        }
        let mut sorted = gamma.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut bits = self.bits.clone();
        for &i in sorted.iter().rev() {
            bits = cyl_bits(&self.shape, i, &bits);
        }
        Ok(Relation {
            shape: self.shape,
            bits,
        })
    }

    /// `S_σ R = {s : s∘σ ∈ R}`.
    pub fn sub_sigma(&self, sigma: &Transformation) -> Result<Relation> {
        let table = self.shape.pullback_table(sigma)?;
        Ok(Relation {
            shape: self.shape,
            bits: pull_back(&table, &self.bits),
        })
    }

    /// `S_ij = S_[i/j]`.
    pub fn subst(&self, i: usize, j: usize) -> Result<Relation> {
        self.sub_sigma(&Transformation::replacement(i, j, self.shape.alpha)?)
    }

    /// `P_ij = S_[i,j]`.
    pub fn perm(&self, i: usize, j: usize) -> Result<Relation> {
        self.sub_sigma(&Transformation::transposition(i, j, self.shape.alpha)?)
    }

    /// `P_σ R = {s∘σ⁻¹ : s ∈ R}`, computed as a forward image.
    pub fn perm_sigma(&self, sigma: &Transformation) -> Result<Relation> {
        let inv = sigma.inverse()?;
        let table = self.shape.pullback_table(&inv)?;
        let mut bits = Bits::zeros(self.shape.points);
        for s in self.bits.iter() {
            bits.insert(table[s] as usize);
        }
        Ok(Relation {
            shape: self.shape,
            bits,
        })
    }

    /// `dom_i R`, sorted.
    pub fn dom(&self, i: usize) -> Result<Vec<usize>> {
        self.shape.check_index(i)?;
        let mut seen = vec![false; self.shape.base];
        for k in self.bits.iter() {
            seen[self.shape.coord(k, i)] = true;
        }
        Ok((0..self.shape.base).filter(|&u| seen[u]).collect())
    }
}

fn fmt_point(f: &mut fmt::Formatter<'_>, s: &[usize]) -> fmt::Result {
    f.write_str("(")?;
    for (n, c) in s.iter().enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

pub(crate) struct PointSet<'a>(pub &'a Shape, pub &'a Bits);

impl fmt::Display for PointSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, k) in self.1.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            fmt_point(f, &self.0.decode(k))?;
        }
        f.write_str("}")
    }
}

/// Renders as `{(0,0,0),(1,0,0)}`.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PointSet(&self.shape, &self.bits).fmt(f)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}]{}", self.shape, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s32() -> Shape {
        Shape::new(3, 2).unwrap()
    }

    fn rel(points: &[[usize; 3]]) -> Relation {
        Relation::from_points(s32(), points.iter().map(|p| &p[..])).unwrap()
    }

    #[test]
    fn encoding_is_a_bijection() {
        for (alpha, base) in [(3, 2), (3, 3), (4, 3), (1, 5)] {
            let sh = Shape::new(alpha, base).unwrap();
            for k in 0..sh.points() {
                assert_eq!(sh.encode(&sh.decode(k)), k);
            }
        }
        assert_eq!(s32().encode(&[1, 0, 1]), 5);
    }

    #[test]
    fn guards() {
        assert!(Shape::new(9, 2).is_err());
        assert!(Shape::new(8, 9).is_err());
        assert!(Shape::new(3, 0).is_err());
        let tight = Limits {
            max_alpha: 3,
            max_points: 8,
        };
        assert!(Shape::with_limits(3, 2, tight).is_ok());
        assert!(Shape::with_limits(3, 3, tight).is_err());
    }

    #[test]
    fn cyl_of_single_point() {
        let r = rel(&[[0, 0, 0]]);
        assert_eq!(r.cyl(0).unwrap(), rel(&[[0, 0, 0], [1, 0, 0]]));
        assert!(Relation::empty(s32()).cyl(1).unwrap().is_empty());
        assert_eq!(Relation::full(s32()).cyl(2).unwrap(), Relation::full(s32()));
        assert!(r.cyl(3).is_err());
    }

    #[test]
    fn cyl_set_iterates() {
        let r = rel(&[[1, 0, 1]]);
        assert_eq!(
            r.cyl_set(&[1, 2]).unwrap(),
            r.cyl(2).unwrap().cyl(1).unwrap()
        );
        assert_eq!(r.cyl_set(&[]).unwrap(), r);
        assert_eq!(r.cyl_set(&[0, 1, 2]).unwrap(), Relation::full(s32()));
    }

    #[test]
    fn substitution_examples() {
        let r = rel(&[[1, 1, 0]]);
        assert_eq!(r.subst(0, 1).unwrap(), rel(&[[0, 1, 0], [1, 1, 0]]));
        assert_eq!(rel(&[[0, 1, 1]]).perm(0, 1).unwrap(), rel(&[[1, 0, 1]]));
        let id = Transformation::identity(3);
        assert_eq!(r.sub_sigma(&id).unwrap(), r);
    }

    #[test]
    fn diagonal_examples() {
        let d = Relation::diag(s32(), 0, 1).unwrap();
        assert_eq!(d, rel(&[[0, 0, 0], [0, 0, 1], [1, 1, 0], [1, 1, 1]]));
        assert_eq!(d, Relation::diag(s32(), 1, 0).unwrap());
        assert_eq!(Relation::diag(s32(), 2, 2).unwrap(), Relation::full(s32()));
        let swap = Transformation::transposition(0, 1, 3).unwrap();
        assert_eq!(d.perm_sigma(&swap).unwrap(), d);
    }

    #[test]
    fn dom_examples() {
        assert_eq!(rel(&[[0, 1, 1]]).dom(0).unwrap(), vec![0]);
        assert!(Relation::empty(s32()).dom(1).unwrap().is_empty());
        let d = Relation::diag(s32(), 0, 1).unwrap();
        assert_eq!(d.dom(0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn unit_base_makes_everything_full() {
        let sh = Shape::new(3, 1).unwrap();
        assert_eq!(Relation::diag(sh, 0, 2).unwrap(), Relation::full(sh));
        let r = Relation::full(sh);
        assert_eq!(r.cyl(1).unwrap(), r);
        assert_eq!(Relation::empty(sh).cyl(1).unwrap(), Relation::empty(sh));
    }

    #[test]
    fn display_lists_points() {
        assert_eq!(
            rel(&[[1, 0, 0], [0, 1, 0]]).to_string(),
            "{(1,0,0),(0,1,0)}"
        );
    }
}
