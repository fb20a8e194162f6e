use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::{bit, full_mask, members, Partition, Relation, Row};

/// A reflexive, transitive, antisymmetric relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialOrder {
    rel: Relation,
}

impl PartialOrder {
    pub fn new(rel: Relation) -> Result<Self> {
        if !rel.is_reflexive() {
            return Err(Error::NotPartialOrder("not reflexive"));
        }
        if !rel.is_transitive() {
            return Err(Error::NotPartialOrder("not transitive"));
        }
        if !rel.is_antisymmetric() {
            return Err(Error::NotPartialOrder("not antisymmetric"));
        }
        Ok(PartialOrder { rel })
    }

    /// `E` on `n` elements: everything incomparable.
    pub fn antichain(n: usize) -> Result<Self> {
        Ok(PartialOrder {
            rel: Relation::identity(n)?,
        })
    }

    /// Closes strict pairs reflexively and transitively.
    pub fn from_strict_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let rel = Relation::from_pairs(n, pairs)?
            .transitive_hull()
            .reflexive_closure();
        Self::new(rel)
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn into_relation(self) -> Relation {
        self.rel
    }

    pub fn size(&self) -> usize {
        self.rel.size()
    }

    /// The strict part `P`.
    pub fn strict_part(&self) -> Relation {
        self.rel.asymmetric_part()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.rel.contains(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// Total partial order, i.e. a chain.
    pub fn is_perfect(&self) -> bool {
        self.rel.is_total()
    }

    /// Incomparable pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn incomparable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |a| {
            (a + 1..n)
                .filter(move |&b| !self.comparable(a, b))
                .map(move |b| (a, b))
        })
    }
}

/// A reflexive, transitive, total relation together with its ranked
/// indifference blocks, lowest rank first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotalPreorder {
    rel: Relation,
    ranked: Vec<Row>,
}

impl TotalPreorder {
    pub fn from_relation(rel: Relation) -> Result<Self> {
        if !rel.is_reflexive() {
            return Err(Error::NotTotalPreorder("not reflexive"));
        }
        if !rel.is_transitive() {
            return Err(Error::NotTotalPreorder("not transitive"));
        }
        if !rel.is_total() {
            return Err(Error::NotTotalPreorder("not total"));
        }
        let n = rel.size();
        let conv = rel.converse();
        // The down-set of x is row x of the converse; its size orders the blocks.
        let mut ranked: Vec<Row> = Vec::new();
        let mut seen: Row = 0;
        let mut by_depth: Vec<(u32, usize)> =
            (0..n).map(|i| (conv.row(i).count_ones(), i)).collect();
        by_depth.sort_unstable();
        for (_, i) in by_depth {
            if seen & bit(i) != 0 {
                continue;
            }
            let block = rel.row(i) & conv.row(i);
            seen |= block;
            ranked.push(block);
        }
        Ok(TotalPreorder { rel, ranked })
    }

    /// Builds `x ≲ y ⇔ rank(x) ≤ rank(y)` from ranked blocks, lowest first.
    pub fn from_ranked_blocks<B, I>(n: usize, blocks: B) -> Result<Self>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        Relation::check_size(n)?;
        let mut ranked: Vec<Row> = Vec::new();
        let mut seen: Row = 0;
        for block in blocks {
            let mut mask: Row = 0;
            for i in block {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                if (seen | mask) & bit(i) != 0 {
                    return Err(Error::InvalidPartition(format!(
                        "element {i} appears in more than one block"
                    )));
                }
                mask |= bit(i);
            }
            if mask == 0 {
                return Err(Error::InvalidPartition("empty ranked block".into()));
            }
            seen |= mask;
            ranked.push(mask);
        }
        if seen != full_mask(n) {
            return Err(Error::InvalidPartition(
                "ranked blocks do not cover the universe".into(),
            ));
        }
        Ok(Self::from_block_masks(n, ranked))
    }

    pub(crate) fn from_block_masks(n: usize, ranked: Vec<Row>) -> Self {
        let mut rel = Relation::blank(n);
        let mut at_or_above: Row = ranked.iter().fold(0, |acc, b| acc | b);
        for &block in &ranked {
            for i in members(block) {
                rel.rows[i] = at_or_above;
            }
            at_or_above &= !block;
        }
        TotalPreorder { rel, ranked }
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn into_relation(self) -> Relation {
        self.rel
    }

    pub fn size(&self) -> usize {
        self.rel.size()
    }

    pub fn num_ranks(&self) -> usize {
        self.ranked.len()
    }

    pub fn ranked_blocks(&self) -> Vec<Vec<usize>> {
        self.ranked.iter().map(|&b| members(b).collect()).collect()
    }

    pub fn ranked_block_masks(&self) -> &[u64] {
        &self.ranked
    }

    /// Rank of element `i`; 0 is the bottom block.
    pub fn rank(&self, i: usize) -> usize {
        self.ranked
            .iter()
            .position(|&b| b & bit(i) != 0)
            .expect("ranked blocks cover the universe")
    }

    pub fn strict_part(&self) -> Relation {
        self.rel.asymmetric_part()
    }

    /// The indifference classes as a partition.
    pub fn classes(&self) -> Partition {
        let assignment: Vec<usize> = (0..self.size()).map(|i| self.rank(i)).collect();
        Partition::from_assignment(&assignment).expect("nonempty universe")
    }

    pub fn is_linear(&self) -> bool {
        self.ranked.len() == self.size()
    }
}

impl PartialOrd for TotalPreorder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on the ranked block lists, each block
/// given by its ascending member indices.
impl Ord for TotalPreorder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.ranked_blocks().cmp(&other.ranked_blocks()))
    }
}
