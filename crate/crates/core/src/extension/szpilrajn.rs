//! Perfect (linear) extensions of a partial order.

use crate::error::{Error, Result};
use crate::relation::{bit, full_mask, members, PartialOrder, Relation};

/// Default cap on universe size for enumerating linear extensions.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// Adds `(a, b)` to a transitive relation and closes it again. Only rows
/// that reach `a` can gain pairs, and they gain exactly the row of `b`.
fn add_and_close(rel: &Relation, a: usize, b: usize) -> Relation {
    let gained = rel.row(b) | bit(b);
    let rows: Vec<u64> = (0..rel.size())
        .map(|x| {
            if x == a || rel.contains(x, a) {
                rel.row(x) | gained
            } else {
                rel.row(x)
            }
        })
        .collect();
    Relation::from_rows(&rows).expect("rows stay within the universe")
}

/// Lexicographically first pair related in neither direction.
fn first_incomparable(rel: &Relation) -> Option<(usize, usize)> {
    let conv = rel.converse();
    let mask = full_mask(rel.size());
    (0..rel.size()).find_map(|a| {
        let missing = !(rel.row(a) | conv.row(a)) & mask;
        members(missing).next().map(|b| (a, b))
    })
}

/// Extends `p` to a perfect order. With `forced = Some((a, b))` the result
/// contains `(a, b)`; the pair must be incomparable in `p`.
///
/// Incomparable pairs are inserted in lexicographic index order, so the
/// result is deterministic.
pub fn szpilrajn_extend(p: &PartialOrder, forced: Option<(usize, usize)>) -> Result<Relation> {
    let n = p.size();
    let mut rel = p.relation().clone();
    if let Some((a, b)) = forced {
        for index in [a, b] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        if p.comparable(a, b) {
            return Err(Error::ForcedPairComparable(a, b));
        }
        rel = add_and_close(&rel, a, b);
    }
    while let Some((a, b)) = first_incomparable(&rel) {
        rel = add_and_close(&rel, a, b);
    }
    debug_assert!(rel.is_partial_order() && rel.is_total());
    Ok(rel)
}

/// All linear extensions as element sequences (bottom first), in
/// lexicographic order of the sequences.
pub fn linear_extension_sequences(p: &PartialOrder, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = p.size();
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    let below = p.strict_part().converse();
    let preds: Vec<u64> = (0..n).map(|x| below.row(x)).collect();
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(n);
    extend_sequences(&preds, 0, &mut seq, &mut out);
    Ok(out)
}

fn extend_sequences(preds: &[u64], placed: u64, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let n = preds.len();
    if seq.len() == n {
        out.push(seq.clone());
        return;
    }
    for x in 0..n {
        if placed & bit(x) == 0 && preds[x] & !placed == 0 {
            seq.push(x);
            extend_sequences(preds, placed | bit(x), seq, out);
            seq.pop();
        }
    }
}

pub(crate) fn chain_from_sequence(n: usize, seq: &[usize]) -> Relation {
    let mut rows = vec![0u64; n];
    let mut at_or_above: u64 = seq.iter().fold(0, |acc, &x| acc | bit(x));
    for &x in seq {
        rows[x] = at_or_above;
        at_or_above &= !bit(x);
    }
    Relation::from_rows(&rows).expect("sequence indices are in range")
}

/// Every perfect order containing `p`, in lexicographic order of the
/// underlying sequences.
pub fn enumerate_perfect_extensions(p: &PartialOrder, cap: usize) -> Result<Vec<Relation>> {
    let n = p.size();
    Ok(linear_extension_sequences(p, cap)?
        .iter()
        .map(|seq| chain_from_sequence(n, seq))
        .collect())
}

/// Intersection of all perfect extensions of `p`; always equals `p`.
pub fn dushnik_miller_intersection(p: &PartialOrder, cap: usize) -> Result<Relation> {
    let all = enumerate_perfect_extensions(p, cap)?;
    let mut acc = Relation::full(p.size())?;
    for ext in &all {
        acc = acc.intersect(ext)?;
    }
    if acc != *p.relation() {
        return Err(Error::ContractViolation(
            "intersection of perfect extensions differs from the order",
        ));
    }
    Ok(acc)
}
