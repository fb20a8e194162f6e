//! Canonical textual rendering of relations.
//!
//! Pairs are listed in row-major index order. When the relation contains
//! the whole diagonal the diagonal is suppressed and `reflexive` is true;
//! otherwise `reflexive` is false and any diagonal pairs present are listed.

use super::{Relation, Universe};

fn visible_pairs(rel: &Relation) -> (bool, Vec<(usize, usize)>) {
    let reflexive = rel.is_reflexive();
    let pairs = rel
        .pairs()
        .filter(|&(i, j)| !(reflexive && i == j))
        .collect();
    (reflexive, pairs)
}

/// `reflexive: true; pairs: (a,b) (c,b)`
pub fn render_text(universe: &Universe, rel: &Relation) -> String {
    let (reflexive, pairs) = visible_pairs(rel);
    let listed: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| format!("({},{})", universe.label(i), universe.label(j)))
        .collect();
    format!("reflexive: {reflexive}; pairs: {}", listed.join(" "))
}

/// `reflexive=true pairs=a:b,c:b`
pub fn render_machine(universe: &Universe, rel: &Relation) -> String {
    let (reflexive, pairs) = visible_pairs(rel);
    let listed: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| format!("{}:{}", universe.label(i), universe.label(j)))
        .collect();
    format!("reflexive={reflexive} pairs={}", listed.join(","))
}
