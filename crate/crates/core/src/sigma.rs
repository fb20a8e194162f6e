//! The collections Σ(⪯) and Σ*(⪯) of equivalences compatible with a
//! partial order, and maximality within them.
//!
//! `S ∈ Σ` iff `S∘P∘S` is irreflexive; `S ∈ Σ*` iff `S∘P∘S` is acyclic.
//! Both collections are closed downward under inclusion, so `S` is maximal
//! in either one exactly when no single merge of two of its blocks stays
//! inside the collection.

use std::fmt;

use crate::error::{Error, Result};
use crate::extension::saturated_strict_part;
use crate::relation::{PartialOrder, Partition};

/// Default cap for enumerating set partitions (Bell(6) = 203).
pub const DEFAULT_PARTITION_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Collection {
    /// `S∘P∘S` irreflexive.
    Sigma,
    /// `S∘P∘S` acyclic.
    SigmaStar,
}

impl Collection {
    pub fn name(self) -> &'static str {
        match self {
            Collection::Sigma => "sigma",
            Collection::SigmaStar => "sigma_star",
        }
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Membership and maximality of one partition. Maximality flags are false
/// when the partition is not a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaMembership {
    pub in_sigma: bool,
    pub in_sigma_star: bool,
    pub maximal_in_sigma: bool,
    pub maximal_in_sigma_star: bool,
}

/// All set partitions of `n` elements in lexicographic order of their
/// restricted-growth strings.
pub fn enumerate_partitions(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    // max_prefix[i] = max(rgs[0..i])
    let mut max_prefix = vec![0usize; n];
    loop {
        out.push(Partition::from_assignment(&rgs)?);
        // Rightmost position that can still grow.
        let Some(i) = (1..n).rev().find(|&i| rgs[i] <= max_prefix[i]) else {
            return Ok(out);
        };
        rgs[i] += 1;
        for j in i + 1..n {
            rgs[j] = 0;
            max_prefix[j] = max_prefix[j - 1].max(rgs[j - 1]);
        }
    }
}

/// `S ∈ Σ(⪯)`.
pub fn in_sigma(p: &PartialOrder, s: &Partition) -> Result<bool> {
    Ok(saturated_strict_part(p, s)?.is_irreflexive())
}

/// `S ∈ Σ*(⪯)`.
pub fn in_sigma_star(p: &PartialOrder, s: &Partition) -> Result<bool> {
    Ok(saturated_strict_part(p, s)?.is_acyclic())
}

pub fn is_member(p: &PartialOrder, s: &Partition, which: Collection) -> Result<bool> {
    match which {
        Collection::Sigma => in_sigma(p, s),
        Collection::SigmaStar => in_sigma_star(p, s),
    }
}

/// True iff no strictly coarser partition belongs to `which`. `s` itself
/// must be a member.
pub fn is_maximal_in(p: &PartialOrder, s: &Partition, which: Collection) -> Result<bool> {
    Ok(blocking_merge(p, s, which)?.is_none())
}

/// The first one-merge coarsening of `s` that stays in `which`, if any.
/// Merges are tried with the smallest leading block indices first.
pub fn blocking_merge(
    p: &PartialOrder,
    s: &Partition,
    which: Collection,
) -> Result<Option<Partition>> {
    if !is_member(p, s, which)? {
        return Err(Error::NotMember(which.name()));
    }
    for coarser in s.one_merge_coarsenings() {
        if is_member(p, &coarser, which)? {
            return Ok(Some(coarser));
        }
    }
    Ok(None)
}

/// Maximality by scanning every partition of the universe. Used to
/// validate the one-merge shortcut.
pub fn is_maximal_exhaustive(
    p: &PartialOrder,
    s: &Partition,
    which: Collection,
    cap: usize,
) -> Result<bool> {
    if !is_member(p, s, which)? {
        return Err(Error::NotMember(which.name()));
    }
    for other in enumerate_partitions(s.size(), cap)? {
        if other != *s && s.refines(&other) && is_member(p, &other, which)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every maximal member of `which`, in canonical partition order.
pub fn maximal_elements(p: &PartialOrder, which: Collection, cap: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for s in enumerate_partitions(p.size(), cap)? {
        if is_member(p, &s, which)? && is_maximal_in(p, &s, which)? {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn membership(p: &PartialOrder, s: &Partition) -> Result<SigmaMembership> {
    let in_sigma = in_sigma(p, s)?;
    let in_sigma_star = in_sigma_star(p, s)?;
    Ok(SigmaMembership {
        in_sigma,
        in_sigma_star,
        maximal_in_sigma: in_sigma && is_maximal_in(p, s, Collection::Sigma)?,
        maximal_in_sigma_star: in_sigma_star && is_maximal_in(p, s, Collection::SigmaStar)?,
    })
}
