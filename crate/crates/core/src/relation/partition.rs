use crate::error::{Error, Result};

use super::{bit, members, Relation, Row, MAX_ELEMENTS};

/// A set partition of `{0, .., n-1}`, i.e. an equivalence relation.
///
/// Canonical form: blocks are ordered by their smallest member, so two
/// partitions are equal iff their block lists are. `block_of` is then the
/// restricted-growth string of the partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Row>,
}

impl Partition {
    /// Builds the canonical partition from an arbitrary block assignment:
    /// elements `i` and `j` share a block iff `assignment[i] == assignment[j]`.
    pub fn from_assignment(assignment: &[usize]) -> Result<Self> {
        let n = assignment.len();
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::UniverseTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut seen: Vec<usize> = Vec::new();
        let mut blocks: Vec<Row> = Vec::new();
        let mut block_of = Vec::with_capacity(n);
        for (i, key) in assignment.iter().enumerate() {
            let k = match seen.iter().position(|s| s == key) {
                Some(k) => k,
                None => {
                    seen.push(*key);
                    blocks.push(0);
                    blocks.len() - 1
                }
            };
            blocks[k] |= bit(i);
            block_of.push(k);
        }
        Ok(Partition { block_of, blocks })
    }

    /// Builds a partition from explicit blocks, which must be nonempty,
    /// disjoint, and cover `{0, .., n-1}`.
    pub fn from_blocks<B, I>(n: usize, blocks: B) -> Result<Self>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        Relation::check_size(n)?;
        let mut assignment = vec![usize::MAX; n];
        for (k, block) in blocks.into_iter().enumerate() {
            let mut empty = true;
            for i in block {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                if assignment[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {i} appears in more than one block"
                    )));
                }
                assignment[i] = k;
                empty = false;
            }
            if empty {
                return Err(Error::InvalidPartition(format!("block {k} is empty")));
            }
        }
        if let Some(i) = assignment.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {i} is not covered by any block"
            )));
        }
        Self::from_assignment(&assignment)
    }

    /// Reads the classes of an equivalence relation.
    pub fn from_equivalence(rel: &Relation) -> Result<Self> {
        if !rel.is_equivalence() {
            return Err(Error::InvalidPartition(
                "relation is not an equivalence".into(),
            ));
        }
        let assignment: Vec<usize> = (0..rel.size())
            .map(|i| rel.row(i).trailing_zeros() as usize)
            .collect();
        Self::from_assignment(&assignment)
    }

    /// All singletons; its relation is `E`.
    pub fn discrete(n: usize) -> Result<Self> {
        Relation::check_size(n)?;
        Self::from_assignment(&(0..n).collect::<Vec<_>>())
    }

    /// One block holding everything.
    pub fn single_block(n: usize) -> Result<Self> {
        Relation::check_size(n)?;
        Self::from_assignment(&vec![0; n])
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    /// Restricted-growth string of the canonical form.
    pub fn assignment(&self) -> &[usize] {
        &self.block_of
    }

    /// Blocks as bit masks, ordered by smallest member.
    pub fn block_masks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&b| members(b).collect()).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.size()
    }

    /// The induced equivalence relation.
    pub fn relation(&self) -> Relation {
        let mut r = Relation::blank(self.size());
        for i in 0..self.size() {
            r.rows[i] = self.blocks[self.block_of[i]];
        }
        r
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.size() == other.size()
            && self
                .blocks
                .iter()
                .all(|&b| other.blocks[other.block_of[b.trailing_zeros() as usize]] & b == b)
    }

    /// The partition obtained by merging blocks `k1` and `k2`.
    pub fn merge(&self, k1: usize, k2: usize) -> Partition {
        let target = k1.min(k2);
        let other = k1.max(k2);
        let assignment: Vec<usize> = self
            .block_of
            .iter()
            .map(|&k| if k == other { target } else { k })
            .collect();
        Partition::from_assignment(&assignment).expect("merge keeps the universe size")
    }

    /// All partitions reachable by merging one pair of blocks, with pairs
    /// taken in lexicographic order of block index.
    pub fn one_merge_coarsenings(&self) -> impl Iterator<Item = Partition> + '_ {
        let k = self.num_blocks();
        (0..k).flat_map(move |a| (a + 1..k).map(move |b| self.merge(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let p = Partition::from_assignment(&[7, 3, 7]).unwrap();
        assert_eq!(p.assignment(), [0, 1, 0]);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1]]);
        let q = Partition::from_blocks(3, [vec![1], vec![2, 0]]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn relation_is_equivalence() {
        let p = Partition::from_assignment(&[0, 1, 0, 1, 2]).unwrap();
        let r = p.relation();
        assert!(r.is_equivalence());
        assert_eq!(Partition::from_equivalence(&r).unwrap(), p);
        assert_eq!(
            Partition::discrete(4).unwrap().relation(),
            Relation::identity(4).unwrap()
        );
        assert_eq!(
            Partition::single_block(4).unwrap().relation(),
            Relation::full(4).unwrap()
        );
    }

    #[test]
    fn invalid_blocks() {
        assert!(matches!(
            Partition::from_blocks(3, [vec![0, 1], vec![1, 2]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::from_blocks(3, [vec![0, 1]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::from_blocks(2, [vec![0, 1], vec![]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::from_blocks(2, [vec![0, 3]]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(Partition::from_equivalence(&Relation::empty(2).unwrap()).is_err());
    }

    #[test]
    fn merging() {
        let p = Partition::discrete(3).unwrap();
        let merged: Vec<_> = p.one_merge_coarsenings().map(|q| q.blocks()).collect();
        assert_eq!(
            merged,
            vec![
                vec![vec![0, 1], vec![2]],
                vec![vec![0, 2], vec![1]],
                vec![vec![0], vec![1, 2]],
            ]
        );
        for q in p.one_merge_coarsenings() {
            assert!(p.refines(&q));
            assert!(!q.refines(&p));
        }
        assert_eq!(
            Partition::single_block(3)
                .unwrap()
                .one_merge_coarsenings()
                .count(),
            0
        );
    }
}
