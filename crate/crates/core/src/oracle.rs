//! Brute-force ground truth.
//!
//! Everything here is computed by exhaustive enumeration and direct
//! filtering against definitions. Only the relation primitives are shared
//! with the extension engine; nothing in this module calls into it.

use crate::error::{Error, Result};
use crate::relation::{PartialOrder, Partition, Relation, TotalPreorder};

/// Default cap for enumerating total preorders (541 on 5 elements, 4683 on 6).
pub const DEFAULT_PREORDER_CAP: usize = 6;

/// Partial orders are found by scanning all `2^(n(n-1))` strict relations.
pub const PARTIAL_ORDER_CAP: usize = 5;

/// A total preorder written as ranked blocks, lowest rank first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    pub ranked_blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn to_total_preorder(&self, n: usize) -> Result<TotalPreorder> {
        TotalPreorder::from_ranked_blocks(n, self.ranked_blocks.iter().cloned())
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyUniverse)
    } else if n > cap {
        Err(Error::Capacity { n, cap })
    } else {
        Ok(())
    }
}

/// Ordered compositions of `n`, lexicographic.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `k`-subsets of `items`, lexicographic.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (pos, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[pos + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn fill_blocks(
    remaining: &[usize],
    sizes: &[usize],
    prefix: &mut Vec<Vec<usize>>,
    out: &mut Vec<OrderedPartition>,
) {
    let Some((&size, rest_sizes)) = sizes.split_first() else {
        out.push(OrderedPartition {
            ranked_blocks: prefix.clone(),
        });
        return;
    };
    for block in combinations(remaining, size) {
        let rest: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|x| !block.contains(x))
            .collect();
        prefix.push(block);
        fill_blocks(&rest, rest_sizes, prefix, out);
        prefix.pop();
    }
}

/// All ordered set partitions of `{0, .., n-1}`: for every composition of
/// `n` into block sizes, every way of filling the blocks in rank order.
pub fn enumerate_ordered_partitions(n: usize, cap: usize) -> Result<Vec<OrderedPartition>> {
    check_cap(n, cap)?;
    let elements: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for sizes in compositions(n) {
        fill_blocks(&elements, &sizes, &mut Vec::new(), &mut out);
    }
    Ok(out)
}

/// All total preorders (weak orders) on `n` elements.
pub fn enumerate_total_preorders(n: usize, cap: usize) -> Result<Vec<TotalPreorder>> {
    enumerate_ordered_partitions(n, cap)?
        .iter()
        .map(|op| op.to_total_preorder(n))
        .collect()
}

/// Keeps the members of `all` whose strict part contains the strict part of
/// `p` and whose symmetric part is exactly the relation of `s`.
pub fn filter_s_extensions(
    p: &PartialOrder,
    s: &Partition,
    all: &[TotalPreorder],
) -> Vec<TotalPreorder> {
    let strict = p.strict_part();
    let equiv = s.relation();
    all.iter()
        .filter(|t| t.size() == p.size())
        .filter(|t| {
            let rel = t.relation();
            strict.is_subset(&rel.asymmetric_part()).unwrap_or(false)
                && rel.symmetric_part() == equiv
        })
        .cloned()
        .collect()
}

/// Pairwise intersection of a nonempty list.
pub fn oracle_intersection(extensions: &[TotalPreorder]) -> Result<Relation> {
    let (first, rest) = extensions.split_first().ok_or(Error::EmptyIntersection)?;
    rest.iter().try_fold(first.relation().clone(), |acc, t| {
        acc.intersect(t.relation())
    })
}

/// Every partial order on `n` labelled elements, by testing each strict
/// relation for transitivity and asymmetry.
pub fn enumerate_partial_orders(n: usize) -> Result<Vec<PartialOrder>> {
    check_cap(n, PARTIAL_ORDER_CAP)?;
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut rows = vec![0u64; n];
        for (k, &(i, j)) in slots.iter().enumerate() {
            if mask & (1 << k) != 0 {
                rows[i] |= 1 << j;
            }
        }
        let strict = Relation::from_rows(&rows)?;
        if strict.is_asymmetric() && strict.is_transitive() {
            out.push(PartialOrder::new(strict.reflexive_closure())?);
        }
    }
    Ok(out)
}

/// Every set partition of `{0, .., n-1}`, by canonicalising all block
/// assignments in `{0, .., n-1}^n` and dropping duplicates.
pub fn enumerate_partitions_naive(n: usize, cap: usize) -> Result<Vec<Partition>> {
    check_cap(n, cap)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut assignment = vec![0usize; n];
    loop {
        seen.insert(
            Partition::from_assignment(&assignment)?
                .assignment()
                .to_vec(),
        );
        let mut k = 0;
        loop {
            if k == n {
                return seen.iter().map(|a| Partition::from_assignment(a)).collect();
            }
            assignment[k] += 1;
            if assignment[k] < n {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
    }
}
