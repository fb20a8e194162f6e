//! Finite binary relations stored as dense bit matrices.
//!
//! A [`Relation`] over a universe of `n` elements keeps one `u64` row per
//! element; bit `j` of row `i` is set iff `(x_i, x_j)` belongs to the
//! relation. Elements are addressed by index; labels live in [`Universe`]
//! and only matter at the I/O boundary.

mod derived;
mod order;
mod partition;
mod render;
mod universe;

pub use derived::{equipotency, indifference, quotient};
pub use order::{PartialOrder, TotalPreorder};
pub use partition::Partition;
pub use render::{render_machine, render_text};
pub(crate) use universe::valid_label;
pub use universe::Universe;

use std::fmt;

use crate::error::{Error, Result};

/// Largest universe a [`Relation`] can describe.
pub const MAX_ELEMENTS: usize = 64;

pub(crate) type Row = u64;

#[inline]
pub(crate) fn bit(i: usize) -> Row {
    1 << i
}

#[inline]
pub(crate) fn full_mask(n: usize) -> Row {
    if n == MAX_ELEMENTS {
        Row::MAX
    } else {
        bit(n) - 1
    }
}

/// Iterates the set bits of a row, lowest first.
pub(crate) fn members(mut row: Row) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if row == 0 {
            None
        } else {
            let i = row.trailing_zeros() as usize;
            row &= row - 1;
            Some(i)
        }
    })
}

/// A binary relation on `{0, .., n-1}`.
///
/// Bits outside the `n × n` square are always zero, so derived equality
/// and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: [Row; MAX_ELEMENTS],
}

impl Relation {
    fn check_size(n: usize) -> Result<()> {
        if n == 0 {
            Err(Error::EmptyUniverse)
        } else if n > MAX_ELEMENTS {
            Err(Error::UniverseTooLarge {
                n,
                max: MAX_ELEMENTS,
            })
        } else {
            Ok(())
        }
    }

    /// The empty relation.
    pub fn empty(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        Ok(Self::blank(n))
    }

    pub(crate) fn blank(n: usize) -> Self {
        Relation {
            n,
            rows: [0; MAX_ELEMENTS],
        }
    }

    /// The equality relation `E`.
    pub fn identity(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for i in 0..n {
            r.rows[i] = bit(i);
        }
        Ok(r)
    }

    /// `X × X`.
    pub fn full(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        let mask = full_mask(n);
        for row in &mut r.rows[..n] {
            *row = mask;
        }
        Ok(r)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    r.rows[i] |= bit(j);
                }
            }
        }
        Ok(r)
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for (i, j) in pairs {
            r.insert(i, j)?;
        }
        Ok(r)
    }

    /// Builds a relation from raw rows; bits beyond `n` are rejected.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        let mut r = Self::empty(n)?;
        let mask = full_mask(n);
        for (i, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let index = (row & !mask).trailing_zeros() as usize;
                return Err(Error::IndexOutOfRange { index, n });
            }
            r.rows[i] = row;
        }
        Ok(r)
    }

    fn insert(&mut self, i: usize, j: usize) -> Result<()> {
        for index in [i, j] {
            if index >= self.n {
                return Err(Error::IndexOutOfRange { index, n: self.n });
            }
        }
        self.rows[i] |= bit(j);
        Ok(())
    }

    /// Returns a copy with `(i, j)` added.
    pub fn with_pair(&self, i: usize, j: usize) -> Result<Self> {
        let mut r = self.clone();
        r.insert(i, j)?;
        Ok(r)
    }

    /// Number of elements of the underlying universe.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.rows[i] & bit(j) != 0
    }

    /// Row `i` as a bit mask of successors.
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows[..self.n]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> {
        members(self.rows[i])
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| members(self.rows[i]).map(move |j| (i, j)))
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows().iter().all(|&r| r == 0)
    }

    fn same_universe(&self, other: &Relation) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    fn zip_rows(&self, other: &Relation, f: impl Fn(Row, Row) -> Row) -> Result<Relation> {
        self.same_universe(other)?;
        let mut r = Relation::blank(self.n);
        for i in 0..self.n {
            r.rows[i] = f(self.rows[i], other.rows[i]);
        }
        Ok(r)
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.same_universe(other)?;
        Ok((0..self.n).all(|i| self.rows[i] & !other.rows[i] == 0))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.zip_rows(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        self.zip_rows(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.zip_rows(other, |a, b| a & !b)
    }

    pub fn converse(&self) -> Relation {
        let mut r = Relation::blank(self.n);
        for (i, j) in self.pairs() {
            r.rows[j] |= bit(i);
        }
        r
    }

    /// `(X × X) \ self`.
    pub fn complement(&self) -> Relation {
        let mask = full_mask(self.n);
        let mut r = Relation::blank(self.n);
        for i in 0..self.n {
            r.rows[i] = !self.rows[i] & mask;
        }
        r
    }

    /// Relational composition, `self` first: `(x, z)` is in the result iff
    /// some `y` has `(x, y) ∈ self` and `(y, z) ∈ other`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.same_universe(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Relation) -> Relation {
        let mut r = Relation::blank(self.n);
        for i in 0..self.n {
            r.rows[i] = members(self.rows[i]).fold(0, |acc, y| acc | other.rows[y]);
        }
        r
    }

    /// Pairs whose reverse is absent.
    pub fn asymmetric_part(&self) -> Relation {
        let conv = self.converse();
        self.zip_rows(&conv, |a, b| a & !b).expect("same universe")
    }

    /// Pairs whose reverse is present.
    pub fn symmetric_part(&self) -> Relation {
        let conv = self.converse();
        self.zip_rows(&conv, |a, b| a & b).expect("same universe")
    }

    /// `E ∪ self`.
    pub fn reflexive_closure(&self) -> Relation {
        let mut r = self.clone();
        for i in 0..self.n {
            r.rows[i] |= bit(i);
        }
        r
    }

    /// Smallest transitive superset (Warshall's algorithm on bit rows).
    pub fn transitive_hull(&self) -> Relation {
        let mut r = self.clone();
        for k in 0..self.n {
            let kb = bit(k);
            let row_k = r.rows[k];
            for i in 0..self.n {
                if r.rows[i] & kb != 0 {
                    r.rows[i] |= row_k;
                }
            }
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] & bit(i) != 0)
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] & bit(i) == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.converse()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let sym = self.symmetric_part();
        (0..self.n).all(|i| sym.rows[i] & !bit(i) == 0)
    }

    pub fn is_asymmetric(&self) -> bool {
        self.symmetric_part().is_empty()
    }

    pub fn is_transitive(&self) -> bool {
        let sq = self.compose_unchecked(self);
        (0..self.n).all(|i| sq.rows[i] & !self.rows[i] == 0)
    }

    /// For every pair at least one direction is related (including `x = y`).
    pub fn is_total(&self) -> bool {
        let conv = self.converse();
        let mask = full_mask(self.n);
        (0..self.n).all(|i| self.rows[i] | conv.rows[i] == mask)
    }

    /// No directed cycle, including self-loops. Uses Kahn's elimination so
    /// the answer is computed independently of [`Relation::transitive_hull`].
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = [0u32; MAX_ELEMENTS];
        for (_, j) in self.pairs() {
            indegree[j] += 1;
        }
        let mut ready: Vec<usize> = (0..self.n).filter(|&i| indegree[i] == 0).collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for w in self.successors(v) {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(w);
                }
            }
        }
        removed == self.n
    }

    /// The complement is transitive.
    pub fn is_negatively_transitive(&self) -> bool {
        self.complement().is_transitive()
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.is_symmetric()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}, ", self.n)?;
        f.debug_set().entries(self.pairs()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    fn refl(n: usize, pairs: &[(usize, usize)]) -> Relation {
        rel(n, pairs).reflexive_closure()
    }

    /// Composition straight from the ∃-definition, over all triples.
    fn naive_compose(g: &Relation, h: &Relation) -> Vec<(usize, usize)> {
        let n = g.size();
        let mut out = Vec::new();
        for x in 0..n {
            for z in 0..n {
                if (0..n).any(|y| g.contains(x, y) && h.contains(y, z)) {
                    out.push((x, z));
                }
            }
        }
        out
    }

    #[test]
    fn rejects_empty_universe() {
        assert_eq!(Relation::empty(0), Err(Error::EmptyUniverse));
        assert!(matches!(
            Relation::empty(65),
            Err(Error::UniverseTooLarge { .. })
        ));
    }

    #[test]
    fn out_of_range_pair() {
        assert_eq!(
            Relation::from_pairs(2, [(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn compose_examples() {
        let g = rel(3, &[(A, B)]);
        let h = rel(3, &[(B, C)]);
        assert_eq!(g.compose(&h).unwrap(), rel(3, &[(A, C)]));

        let e = Relation::identity(3).unwrap();
        assert_eq!(e.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&e).unwrap(), g);

        // S from {{a,c},{b}}, P = {(a,b)}
        let s = refl(3, &[(A, C), (C, A)]);
        let p = rel(3, &[(A, B)]);
        let sps = s.compose(&p).unwrap().compose(&s).unwrap();
        let expected = naive_compose(&naive_rel(&s, &p), &s);
        assert_eq!(expected, vec![(A, B), (C, B)]);
        assert_eq!(sps, rel(3, &[(A, B), (C, B)]));
    }

    fn naive_rel(g: &Relation, h: &Relation) -> Relation {
        Relation::from_pairs(g.size(), naive_compose(g, h)).unwrap()
    }

    #[test]
    fn compose_mismatch() {
        let g = Relation::empty(2).unwrap();
        let h = Relation::empty(3).unwrap();
        assert_eq!(
            g.compose(&h),
            Err(Error::UniverseMismatch { left: 2, right: 3 })
        );
        assert!(g.union(&h).is_err());
        assert!(g.intersect(&h).is_err());
        assert!(g.difference(&h).is_err());
    }

    #[test]
    fn boolean_examples() {
        let g = rel(2, &[(A, B)]);
        assert_eq!(g.union(&Relation::empty(2).unwrap()).unwrap(), g);
        assert_eq!(g.converse(), rel(2, &[(B, A)]));
        assert_eq!(g.converse().converse(), g);
        assert_eq!(g.complement().len(), 3);
        assert_eq!(g.difference(&g).unwrap(), Relation::empty(2).unwrap());
    }

    #[test]
    fn parts_examples() {
        let chain = refl(3, &[(A, B), (B, C), (A, C)]);
        assert_eq!(chain.asymmetric_part(), rel(3, &[(A, B), (B, C), (A, C)]));
        assert!(Relation::full(3).unwrap().asymmetric_part().is_empty());
        assert!(rel(3, &[(A, B)]).symmetric_part().is_empty());
        assert!(chain
            .symmetric_part()
            .is_subset(&Relation::identity(3).unwrap())
            .unwrap());

        let g = refl(3, &[(A, B), (B, A), (A, C)]);
        assert_eq!(g.asymmetric_part(), rel(3, &[(A, C)]));
        assert_eq!(g.symmetric_part(), refl(3, &[(A, B), (B, A)]));
    }

    #[test]
    fn hull_examples() {
        let chain = rel(3, &[(A, B), (B, C)]);
        assert_eq!(chain.transitive_hull(), rel(3, &[(A, B), (B, C), (A, C)]));
        let t = rel(3, &[(A, B), (B, C), (A, C)]);
        assert_eq!(t.transitive_hull(), t);
        // g ∪ g² for the 2-cycle
        let cyc = rel(2, &[(A, B), (B, A)]);
        let powers = cyc.union(&naive_rel(&cyc, &cyc)).unwrap();
        assert_eq!(powers, Relation::full(2).unwrap());
        assert_eq!(cyc.transitive_hull(), powers);
    }

    #[test]
    fn predicate_examples() {
        let e = Relation::identity(3).unwrap();
        assert!(e.is_reflexive() && e.is_symmetric() && e.is_antisymmetric());
        assert!(e.is_transitive());
        assert!(!e.is_total());
        assert!(!e.is_irreflexive());
        assert!(Relation::identity(1).unwrap().is_total());

        let three_cycle = rel(3, &[(A, B), (B, C), (C, A)]);
        assert!(!three_cycle.is_acyclic());
        assert!(rel(3, &[(A, B), (B, C)]).is_acyclic());
        assert!(!rel(2, &[(A, A)]).is_acyclic());

        let g = rel(4, &[(A, B), (C, D)]);
        let comp = g.complement();
        assert!(comp.contains(A, C) && comp.contains(C, B) && !comp.contains(A, B));
        assert!(!g.is_negatively_transitive());

        assert!(rel(2, &[(A, B)]).is_asymmetric());
        assert!(!rel(2, &[(A, A)]).is_asymmetric());
    }

    #[test]
    fn pairs_and_len() {
        let g = rel(3, &[(C, A), (A, B)]);
        assert_eq!(g.pairs().collect::<Vec<_>>(), vec![(A, B), (C, A)]);
        assert_eq!(g.len(), 2);
        assert_eq!(Relation::full(64).unwrap().len(), 64 * 64);
        assert!(Relation::full(64).unwrap().is_transitive());
    }

    #[test]
    fn from_rows_rejects_stray_bits() {
        assert!(Relation::from_rows(&[0b01, 0b10]).is_ok());
        assert_eq!(
            Relation::from_rows(&[0b100, 0]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        );
    }
}
