//! Extensions of a partial order `⪯` to total preorders `≲` whose strict
//! part contains the strict part `P` of `⪯` and whose symmetric part is a
//! prescribed equivalence `S` (an "S-extension").
//!
//! Everything is driven by the relation `S∘P∘S`: an S-extension exists iff
//! it is acyclic, and then every S-extension contains `S ∪ TH(S∘P∘S)`,
//! which is also their intersection.

mod szpilrajn;

pub use szpilrajn::{
    dushnik_miller_intersection, enumerate_perfect_extensions, linear_extension_sequences,
    szpilrajn_extend, DEFAULT_ENUMERATION_CAP,
};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::relation::{equipotency, quotient, PartialOrder, Partition, Relation, TotalPreorder};
use crate::sigma::{self, Collection};

fn same_size(p: &PartialOrder, s: &Partition) -> Result<()> {
    if p.size() == s.size() {
        Ok(())
    } else {
        Err(Error::UniverseMismatch {
            left: p.size(),
            right: s.size(),
        })
    }
}

/// `S∘P∘S`, evaluated as `compose(compose(S, P), S)`.
pub fn saturated_strict_part(p: &PartialOrder, s: &Partition) -> Result<Relation> {
    same_size(p, s)?;
    let equiv = s.relation();
    equiv.compose(&p.strict_part())?.compose(&equiv)
}

/// `E ∪ TH(S∘P∘S)`. A partial order whenever `S∘P∘S` is acyclic.
pub fn closed_order(p: &PartialOrder, s: &Partition) -> Result<Relation> {
    Ok(saturated_strict_part(p, s)?
        .transitive_hull()
        .reflexive_closure())
}

/// `P∘S = S∘P = P`, where `P` is the strict part of `p`.
pub fn is_saturated(p: &Relation, s: &Partition) -> Result<bool> {
    let strict = p.asymmetric_part();
    let equiv = s.relation();
    Ok(strict.compose(&equiv)? == strict && equiv.compose(&strict)? == strict)
}

/// `S ⊆ R_≲` for a preorder `p`. Agrees with [`is_saturated`] on every
/// preorder.
pub fn within_equipotency(p: &Relation, s: &Partition) -> Result<bool> {
    let r = equipotency(p)?;
    s.relation().is_subset(&r)
}

/// Shortest directed cycle of `rel`, as the sequence of its vertices;
/// ties go to the smallest starting vertex.
pub fn shortest_cycle(rel: &Relation) -> Option<Vec<usize>> {
    let n = rel.size();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut queue = VecDeque::from([start]);
        let mut seen = 1u64 << start;
        'bfs: while let Some(u) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| depth[u] + 1 >= b.len()) {
                break;
            }
            for v in rel.successors(u) {
                if v == start {
                    let mut path = vec![u];
                    let mut cur = u;
                    while cur != start {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    best = Some(path);
                    break 'bfs;
                }
                if seen & (1 << v) == 0 {
                    seen |= 1 << v;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    best
}

/// Replays a cycle certificate: every consecutive pair, and the closing
/// pair, belongs to `rel`.
pub fn is_cycle_in(rel: &Relation, cycle: &[usize]) -> bool {
    !cycle.is_empty()
        && cycle
            .iter()
            .zip(cycle.iter().cycle().skip(1))
            .all(|(&x, &y)| rel.contains(x, y))
}

/// Outcome of analysing one `(⪯, S)` instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub exists: bool,
    pub witness: Option<TotalPreorder>,
    pub intersection: Option<Relation>,
    pub unique: Option<bool>,
    /// A cycle of `S∘P∘S`, present exactly when no extension exists.
    pub certificate: Option<Vec<usize>>,
}

/// Existence verdict with a cycle certificate on failure.
pub fn s_extension_exists(p: &PartialOrder, s: &Partition) -> Result<ExtensionReport> {
    let sps = saturated_strict_part(p, s)?;
    let certificate = shortest_cycle(&sps);
    Ok(ExtensionReport {
        exists: certificate.is_none(),
        witness: None,
        intersection: None,
        unique: None,
        certificate,
    })
}

fn require_existence(p: &PartialOrder, s: &Partition) -> Result<Relation> {
    let sps = saturated_strict_part(p, s)?;
    match shortest_cycle(&sps) {
        Some(certificate) => Err(Error::NoExtension { certificate }),
        None => Ok(sps.transitive_hull()),
    }
}

/// `P ⊆ P_≲` and `S_≲ = S`.
pub fn is_s_extension(p: &PartialOrder, s: &Partition, t: &TotalPreorder) -> Result<bool> {
    same_size(p, s)?;
    let rel = t.relation();
    Ok(p.strict_part().is_subset(&rel.asymmetric_part())? && rel.symmetric_part() == s.relation())
}

/// Builds one S-extension of `p`.
///
/// The order `E ∪ TH(S∘P∘S)` satisfies `P∘S = S∘P = P`, so its union with
/// `S` is a preorder with symmetric part `S`; its quotient by `S` is a
/// partial order on the blocks, which is extended to a chain and pulled
/// back. A forced pair `(a, b)` must be incomparable in `S ∪ TH(S∘P∘S)`;
/// the result then contains `(a, b)`.
pub fn s_extend(
    p: &PartialOrder,
    s: &Partition,
    forced: Option<(usize, usize)>,
) -> Result<TotalPreorder> {
    let hull = require_existence(p, s)?;
    let n = p.size();
    let closed = hull.reflexive_closure();
    if !is_saturated(&closed, s)? {
        return Err(Error::ContractViolation(
            "closed order does not commute with the equivalence",
        ));
    }
    let preorder = s.relation().union(&hull)?;
    let blocks = quotient(&preorder, s)?;
    let lifted = match forced {
        Some((a, b)) => {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if preorder.contains(a, b) || preorder.contains(b, a) {
                return Err(Error::ForcedPairComparable(a, b));
            }
            Some((s.block_of(a), s.block_of(b)))
        }
        None => None,
    };
    let chain = szpilrajn_extend(&blocks, lifted)?;
    let witness = pull_back(s, &chain);
    if !is_s_extension(p, s, &witness)? {
        return Err(Error::ContractViolation(
            "constructed preorder is not an S-extension",
        ));
    }
    Ok(witness)
}

/// Expands a chain on the blocks of `s` into ranked blocks of the universe.
fn pull_back(s: &Partition, chain: &Relation) -> TotalPreorder {
    let below = chain.converse();
    let mut order: Vec<usize> = (0..chain.size()).collect();
    order.sort_by_key(|&k| below.row(k).count_ones());
    let masks = order.iter().map(|&k| s.block_masks()[k]).collect();
    TotalPreorder::from_block_masks(s.size(), masks)
}

/// Every S-extension of `p`, in canonical order; empty when none exists.
/// Enumerates the chains extending the quotient of `S ∪ TH(S∘P∘S)`.
pub fn enumerate_s_extensions(
    p: &PartialOrder,
    s: &Partition,
    cap: usize,
) -> Result<Vec<TotalPreorder>> {
    if p.size() > cap {
        return Err(Error::Capacity { n: p.size(), cap });
    }
    let hull = match require_existence(p, s) {
        Ok(hull) => hull,
        Err(Error::NoExtension { .. }) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let blocks = quotient(&s.relation().union(&hull)?, s)?;
    let mut out: Vec<TotalPreorder> = enumerate_perfect_extensions(&blocks, cap)?
        .iter()
        .map(|chain| pull_back(s, chain))
        .collect();
    out.sort();
    Ok(out)
}

/// `S ∪ TH(S∘P∘S)`: the intersection of all S-extensions.
pub fn intersection_of_s_extensions(p: &PartialOrder, s: &Partition) -> Result<Relation> {
    let hull = require_existence(p, s)?;
    s.relation().union(&hull)
}

/// Which clause of the uniqueness criterion held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniquenessDiagnosis {
    pub in_sigma_star: bool,
    pub maximal_in_sigma_star: bool,
    pub hull_negatively_transitive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessFailure {
    NotInSigmaStar,
    NotMaximalInSigmaStar,
    HullNotNegativelyTransitive,
}

impl UniquenessFailure {
    pub fn as_str(self) -> &'static str {
        match self {
            UniquenessFailure::NotInSigmaStar => "not_in_sigma_star",
            UniquenessFailure::NotMaximalInSigmaStar => "not_maximal_in_sigma_star",
            UniquenessFailure::HullNotNegativelyTransitive => "hull_not_negatively_transitive",
        }
    }
}

impl UniquenessDiagnosis {
    pub fn unique(&self) -> bool {
        self.failure().is_none()
    }

    /// First failing clause, in the order membership, maximality, negative
    /// transitivity.
    pub fn failure(&self) -> Option<UniquenessFailure> {
        if !self.in_sigma_star {
            Some(UniquenessFailure::NotInSigmaStar)
        } else if !self.maximal_in_sigma_star {
            Some(UniquenessFailure::NotMaximalInSigmaStar)
        } else if !self.hull_negatively_transitive {
            Some(UniquenessFailure::HullNotNegativelyTransitive)
        } else {
            None
        }
    }
}

/// Uniqueness of the S-extension: `S` is maximal in Σ*(⪯) and
/// `TH(S∘P∘S)` is negatively transitive.
pub fn is_unique_extension(p: &PartialOrder, s: &Partition) -> Result<UniquenessDiagnosis> {
    let sps = saturated_strict_part(p, s)?;
    let in_sigma_star = sps.is_acyclic();
    if !in_sigma_star {
        return Ok(UniquenessDiagnosis {
            in_sigma_star,
            maximal_in_sigma_star: false,
            hull_negatively_transitive: false,
        });
    }
    Ok(UniquenessDiagnosis {
        in_sigma_star,
        maximal_in_sigma_star: sigma::is_maximal_in(p, s, Collection::SigmaStar)?,
        hull_negatively_transitive: sps.transitive_hull().is_negatively_transitive(),
    })
}

/// `S ∪ (S∘P∘S)` when `S ∈ Σ*(⪯)` and `S` is maximal in Σ(⪯); it is then
/// the only S-extension. `None` otherwise.
pub fn closed_form_unique_extension(
    p: &PartialOrder,
    s: &Partition,
) -> Result<Option<TotalPreorder>> {
    if !sigma::in_sigma_star(p, s)? || !sigma::is_maximal_in(p, s, Collection::Sigma)? {
        return Ok(None);
    }
    let sps = saturated_strict_part(p, s)?;
    if !sps.is_transitive() {
        return Err(Error::ContractViolation("S∘P∘S is not transitive"));
    }
    let equiv = s.relation();
    let n = p.size();
    let trichotomy = (0..n).all(|x| {
        (0..n).all(|y| {
            let hits = [equiv.contains(x, y), sps.contains(x, y), sps.contains(y, x)];
            hits.iter().filter(|&&h| h).count() == 1
        })
    });
    if !trichotomy {
        return Err(Error::ContractViolation("trichotomy fails for S and S∘P∘S"));
    }
    TotalPreorder::from_relation(equiv.union(&sps)?)
        .map(Some)
        .map_err(|_| Error::ContractViolation("S ∪ S∘P∘S is not a total preorder"))
}

/// Existence, a witness, the intersection and the uniqueness verdict.
pub fn analyze(p: &PartialOrder, s: &Partition) -> Result<ExtensionReport> {
    let mut report = s_extension_exists(p, s)?;
    if report.exists {
        report.witness = Some(s_extend(p, s, None)?);
        report.intersection = Some(intersection_of_s_extensions(p, s)?);
    }
    report.unique = Some(is_unique_extension(p, s)?.unique());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;

    fn po(n: usize, pairs: &[(usize, usize)]) -> PartialOrder {
        PartialOrder::from_strict_pairs(n, pairs.iter().copied()).unwrap()
    }

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_blocks(n, blocks.iter().map(|b| b.iter().copied())).unwrap()
    }

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    /// `S∘P∘S` straight from the definition: `x S y`, `y P z`, `z S w`.
    fn naive_sps(p: &PartialOrder, s: &Partition) -> Relation {
        let n = p.size();
        let eq = |x: usize, y: usize| s.block_of(x) == s.block_of(y);
        let strict = |x: usize, y: usize| p.le(x, y) && !p.le(y, x);
        Relation::from_fn(n, |x, w| {
            (0..n).any(|y| (0..n).any(|z| eq(x, y) && strict(y, z) && eq(z, w)))
        })
        .unwrap()
    }

    #[test]
    fn saturation_examples() {
        let p = po(3, &[(A, B)]);
        assert!(is_saturated(p.relation(), &Partition::discrete(3).unwrap()).unwrap());

        let s = part(3, &[&[A, C], &[B]]);
        assert!(!is_saturated(p.relation(), &s).unwrap());
        assert!(s
            .relation()
            .compose(&p.strict_part())
            .unwrap()
            .contains(C, B));

        let p4 = po(4, &[(A, B), (C, B), (A, D), (C, D)]);
        let s4 = part(4, &[&[A, C], &[B, D]]);
        assert!(is_saturated(p4.relation(), &s4).unwrap());
    }

    #[test]
    fn equipotency_bound_examples() {
        let p = po(3, &[(A, B)]);
        let d = Partition::discrete(3).unwrap();
        assert!(within_equipotency(p.relation(), &d).unwrap());
        let s = part(3, &[&[A, C], &[B]]);
        assert!(!within_equipotency(p.relation(), &s).unwrap());

        let t = TotalPreorder::from_ranked_blocks(3, [vec![A, C], vec![B]]).unwrap();
        assert_eq!(equipotency(t.relation()).unwrap(), s.relation());
        assert!(within_equipotency(t.relation(), &s).unwrap());
        assert!(is_saturated(t.relation(), &s).unwrap());

        assert!(matches!(
            within_equipotency(&rel(2, &[(A, B)]), &Partition::discrete(2).unwrap()),
            Err(Error::NotPreorder(_))
        ));
    }

    #[test]
    fn existence_examples() {
        let p = po(3, &[(A, B)]);
        let r = s_extension_exists(&p, &Partition::discrete(3).unwrap()).unwrap();
        assert!(r.exists && r.certificate.is_none());

        let s = part(3, &[&[A, B], &[C]]);
        let sps = naive_sps(&p, &s);
        assert!(sps.contains(A, A) && sps.contains(B, B));
        assert_eq!(saturated_strict_part(&p, &s).unwrap(), sps);
        let r = s_extension_exists(&p, &s).unwrap();
        assert!(!r.exists);
        assert_eq!(r.certificate, Some(vec![A]));

        let p4 = po(4, &[(A, B), (C, D)]);
        let s4 = part(4, &[&[B, C], &[D, A]]);
        let sps = naive_sps(&p4, &s4);
        assert!(sps.contains(A, C) && sps.contains(C, A));
        assert!(sps.is_irreflexive());
        let r = s_extension_exists(&p4, &s4).unwrap();
        assert!(!r.exists);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.len(), 2);
        assert!(is_cycle_in(&sps, &cert));
        assert!(is_cycle_in(&sps, &[A, C]));
    }

    #[test]
    fn shortest_cycle_cases() {
        assert_eq!(shortest_cycle(&rel(3, &[(A, B), (B, C)])), None);
        assert_eq!(
            shortest_cycle(&rel(3, &[(A, B), (B, C), (C, A)])),
            Some(vec![A, B, C])
        );
        assert_eq!(
            shortest_cycle(&rel(4, &[(A, B), (B, C), (C, A), (D, D)])),
            Some(vec![D])
        );
        assert!(!is_cycle_in(&rel(2, &[(A, B)]), &[A, B]));
        assert!(!is_cycle_in(&rel(2, &[(A, B)]), &[]));
    }

    #[test]
    fn s_extend_examples() {
        let p = po(3, &[(A, B)]);
        let d = Partition::discrete(3).unwrap();
        let t = s_extend(&p, &d, None).unwrap();
        assert_eq!(*t.relation(), szpilrajn_extend(&p, None).unwrap());

        let s = part(3, &[&[A, C], &[B]]);
        let t = s_extend(&p, &s, None).unwrap();
        assert_eq!(t.ranked_blocks(), vec![vec![A, C], vec![B]]);

        let e = PartialOrder::antichain(3).unwrap();
        let t = s_extend(&e, &s, Some((B, A))).unwrap();
        assert_eq!(t.ranked_blocks(), vec![vec![B], vec![A, C]]);

        let t = s_extend(&p, &d, Some((C, A))).unwrap();
        assert_eq!(t.ranked_blocks(), vec![vec![C], vec![A], vec![B]]);
    }

    #[test]
    fn s_extend_errors() {
        let p = po(3, &[(A, B)]);
        let s = part(3, &[&[A, B], &[C]]);
        assert_eq!(
            s_extend(&p, &s, None),
            Err(Error::NoExtension {
                certificate: vec![A]
            })
        );
        let d = Partition::discrete(3).unwrap();
        assert_eq!(
            s_extend(&p, &d, Some((A, B))),
            Err(Error::ForcedPairComparable(A, B))
        );
        // (c, b) is comparable in the closure: c ~ a < b.
        let s2 = part(3, &[&[A, C], &[B]]);
        assert_eq!(
            s_extend(&p, &s2, Some((B, C))),
            Err(Error::ForcedPairComparable(B, C))
        );
        assert!(matches!(
            s_extend(&p, &Partition::discrete(2).unwrap(), None),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let p = po(3, &[(A, B)]);
        let d = Partition::discrete(3).unwrap();
        assert_eq!(intersection_of_s_extensions(&p, &d).unwrap(), *p.relation());

        let s = part(3, &[&[A, C], &[B]]);
        let expected = s.relation().union(&rel(3, &[(A, B), (C, B)])).unwrap();
        assert_eq!(intersection_of_s_extensions(&p, &s).unwrap(), expected);

        let p4 = po(4, &[(A, B)]);
        assert_eq!(
            intersection_of_s_extensions(&p4, &Partition::discrete(4).unwrap()).unwrap(),
            *p4.relation()
        );
        assert!(matches!(
            intersection_of_s_extensions(&p, &part(3, &[&[A, B], &[C]])),
            Err(Error::NoExtension { .. })
        ));
    }

    #[test]
    fn uniqueness_examples() {
        let p = po(3, &[(A, B)]);
        let s = part(3, &[&[A, C], &[B]]);
        assert!(is_unique_extension(&p, &s).unwrap().unique());

        let e = PartialOrder::antichain(2).unwrap();
        let d = Partition::discrete(2).unwrap();
        let diag = is_unique_extension(&e, &d).unwrap();
        assert!(!diag.unique());
        assert_eq!(
            diag.failure(),
            Some(UniquenessFailure::NotMaximalInSigmaStar)
        );

        let chain = po(2, &[(A, B)]);
        assert!(is_unique_extension(&chain, &d).unwrap().unique());

        let diag = is_unique_extension(&p, &part(3, &[&[A, B], &[C]])).unwrap();
        assert_eq!(diag.failure(), Some(UniquenessFailure::NotInSigmaStar));
    }

    #[test]
    fn closed_form_examples() {
        let p = po(3, &[(A, B)]);
        let s = part(3, &[&[A, C], &[B]]);
        let t = closed_form_unique_extension(&p, &s).unwrap().unwrap();
        assert_eq!(t.ranked_blocks(), vec![vec![A, C], vec![B]]);

        let e = PartialOrder::antichain(3).unwrap();
        assert_eq!(
            closed_form_unique_extension(&e, &Partition::discrete(3).unwrap()).unwrap(),
            None
        );

        let chain = po(2, &[(A, B)]);
        let t = closed_form_unique_extension(&chain, &Partition::discrete(2).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(t.ranked_blocks(), vec![vec![A], vec![B]]);
    }

    #[test]
    fn enumerate_s_extensions_examples() {
        let p = po(3, &[(A, B)]);
        let s = part(3, &[&[A, C], &[B]]);
        let all = enumerate_s_extensions(&p, &s, 8).unwrap();
        assert_eq!(all.len(), 1);
        let none = enumerate_s_extensions(&p, &part(3, &[&[A, B], &[C]]), 8).unwrap();
        assert!(none.is_empty());
        let e = PartialOrder::antichain(3).unwrap();
        let blocks = enumerate_s_extensions(&e, &s, 8).unwrap();
        assert_eq!(
            blocks.iter().map(|t| t.ranked_blocks()).collect::<Vec<_>>(),
            vec![vec![vec![A, C], vec![B]], vec![vec![B], vec![A, C]]]
        );
        assert!(matches!(
            enumerate_s_extensions(
                &PartialOrder::antichain(9).unwrap(),
                &Partition::discrete(9).unwrap(),
                8
            ),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn analyze_report() {
        let p = po(3, &[(A, B)]);
        let s = part(3, &[&[A, C], &[B]]);
        let r = analyze(&p, &s).unwrap();
        assert!(r.exists);
        assert_eq!(r.unique, Some(true));
        assert!(r.witness.is_some() && r.intersection.is_some() && r.certificate.is_none());

        let r = analyze(&p, &part(3, &[&[A, B], &[C]])).unwrap();
        assert!(!r.exists && r.witness.is_none() && r.certificate.is_some());
        assert_eq!(r.unique, Some(false));
    }
}
