//! Relations derived from a preorder: indifference, equipotency, quotient.

use crate::error::{Error, Result};

use super::{bit, PartialOrder, Partition, Relation};

fn require_preorder(p: &Relation) -> Result<()> {
    if !p.is_reflexive() {
        Err(Error::NotPreorder("not reflexive"))
    } else if !p.is_transitive() {
        Err(Error::NotPreorder("not transitive"))
    } else {
        Ok(())
    }
}

/// Pairs strictly comparable in neither direction.
pub fn indifference(p: &Relation) -> Result<Relation> {
    require_preorder(p)?;
    let strict = p.asymmetric_part();
    Ok(strict.union(&strict.converse())?.complement())
}

/// Pairs with identical indifference neighbourhoods.
pub fn equipotency(p: &Relation) -> Result<Relation> {
    let ind = indifference(p)?;
    Relation::from_fn(p.size(), |x, y| ind.row(x) == ind.row(y))
}

/// The order induced on the blocks of `s`. Requires the symmetric part of
/// `p` to be exactly the relation of `s`; block `k` of the result is block
/// `k` of `s`.
pub fn quotient(p: &Relation, s: &Partition) -> Result<PartialOrder> {
    require_preorder(p)?;
    if p.size() != s.size() {
        return Err(Error::UniverseMismatch {
            left: p.size(),
            right: s.size(),
        });
    }
    let sym = p.symmetric_part();
    let equiv = s.relation();
    if let Some((x, y)) = sym
        .union(&equiv)?
        .difference(&sym.intersect(&equiv)?)?
        .pairs()
        .next()
    {
        return Err(Error::QuotientMismatch(x, y));
    }
    let reps: Vec<usize> = s
        .block_masks()
        .iter()
        .map(|b| b.trailing_zeros() as usize)
        .collect();
    let k = reps.len();
    let mut t = Relation::blank(k);
    for (a, &x) in reps.iter().enumerate() {
        for (b, &y) in reps.iter().enumerate() {
            if p.contains(x, y) {
                t.rows[a] |= bit(b);
            }
        }
    }
    PartialOrder::new(t).map_err(|_| Error::ContractViolation("quotient is not a partial order"))
}
