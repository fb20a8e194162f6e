//! Exhaustive verification sweep.
//!
//! For every partial order on `n` labelled elements and every partition of
//! the same universe, the engine's verdicts are compared with the brute
//! force oracle. Universes of up to [`FULL_SWEEP_MAX`] elements get the
//! full pair sweep; one more element is allowed for the suites that only
//! range over partial orders (perfect extensions).

use crate::error::{Error, Result};
use crate::extension::{
    self, closed_form_unique_extension, dushnik_miller_intersection, enumerate_perfect_extensions,
    intersection_of_s_extensions, is_cycle_in, is_saturated, is_unique_extension, s_extend,
    s_extension_exists, saturated_strict_part, szpilrajn_extend, within_equipotency,
    DEFAULT_ENUMERATION_CAP,
};
use crate::oracle::{self, DEFAULT_PREORDER_CAP};
use crate::relation::{indifference, PartialOrder, Partition, TotalPreorder};
use crate::sigma::{self, Collection, DEFAULT_PARTITION_CAP};

/// Largest universe for the (order, partition) sweep.
pub const FULL_SWEEP_MAX: usize = 4;

/// Largest universe accepted at all.
pub const SWEEP_MAX: usize = 5;

/// Names of the checks, as reported in failures.
pub mod checks {
    pub const SZPILRAJN: &str = "szpilrajn";
    pub const DUSHNIK_MILLER: &str = "dushnik_miller";
    pub const NECESSARY_INDIFFERENCE: &str = "necessary_indifference";
    pub const EXISTENCE: &str = "existence";
    pub const CERTIFICATE: &str = "certificate";
    pub const SATURATION: &str = "saturation_vs_equipotency";
    pub const SIGMA_INDIFFERENCE: &str = "sigma_vs_indifference";
    pub const SATURATED_INTERSECTION: &str = "saturated_intersection";
    pub const INTERSECTION_FORMULA: &str = "intersection_formula";
    pub const UNIQUENESS: &str = "uniqueness";
    pub const CLOSED_FORM: &str = "closed_form";
    pub const WITNESS: &str = "witness";
    pub const ENUMERATION: &str = "s_extension_enumeration";
    pub const SIGMA_INCLUSION: &str = "sigma_star_in_sigma";
    pub const MAXIMALITY: &str = "one_merge_maximality";
}

/// A counterexample: the instance and the check it broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFailure {
    pub check: &'static str,
    pub order: PartialOrder,
    pub partition: Option<Partition>,
    pub forced: Option<(usize, usize)>,
    pub detail: String,
}

/// Counts for one universe size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSummary {
    pub n: usize,
    pub partial_orders: usize,
    /// Zero when the level only ran the order-only suites.
    pub partitions: usize,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub levels: Vec<LevelSummary>,
    pub failures: Vec<CaseFailure>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_cases(&self) -> usize {
        self.levels.iter().map(|l| l.cases).sum()
    }
}

struct Recorder<'a> {
    failures: &'a mut Vec<CaseFailure>,
    checks: usize,
}

impl Recorder<'_> {
    fn check(
        &mut self,
        ok: bool,
        check: &'static str,
        order: &PartialOrder,
        partition: Option<&Partition>,
        forced: Option<(usize, usize)>,
        detail: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(CaseFailure {
                check,
                order: order.clone(),
                partition: partition.cloned(),
                forced,
                detail: detail(),
            });
        }
    }
}

/// Runs every suite for universes of `1..=max_n` elements.
pub fn run_sweep(max_n: usize) -> Result<SweepSummary> {
    if max_n == 0 {
        return Err(Error::EmptyUniverse);
    }
    if max_n > SWEEP_MAX {
        return Err(Error::Capacity {
            n: max_n,
            cap: SWEEP_MAX,
        });
    }
    let mut summary = SweepSummary::default();
    for n in 1..=max_n {
        let level = run_level(n, &mut summary.failures)?;
        summary.levels.push(level);
    }
    Ok(summary)
}

fn run_level(n: usize, failures: &mut Vec<CaseFailure>) -> Result<LevelSummary> {
    let before = failures.len();
    let orders = oracle::enumerate_partial_orders(n)?;
    let mut rec = Recorder {
        failures,
        checks: 0,
    };
    for p in &orders {
        check_order(p, &mut rec)?;
    }
    let (partitions, cases) = if n <= FULL_SWEEP_MAX {
        let partitions = sigma::enumerate_partitions(n, DEFAULT_PARTITION_CAP)?;
        let all = oracle::enumerate_total_preorders(n, DEFAULT_PREORDER_CAP)?;
        for p in &orders {
            for s in &partitions {
                check_pair(p, s, &all, &mut rec)?;
            }
        }
        (partitions.len(), orders.len() * partitions.len())
    } else {
        (0, orders.len())
    };
    let checks = rec.checks;
    Ok(LevelSummary {
        n,
        partial_orders: orders.len(),
        partitions,
        cases,
        checks,
        failures: failures.len() - before,
    })
}

/// Perfect-extension suites for one partial order.
fn check_order(p: &PartialOrder, rec: &mut Recorder<'_>) -> Result<()> {
    let pairs: Vec<(usize, usize)> = p
        .incomparable_pairs()
        .flat_map(|(a, b)| [(a, b), (b, a)])
        .collect();
    for forced in std::iter::once(None).chain(pairs.into_iter().map(Some)) {
        let ext = szpilrajn_extend(p, forced)?;
        let ok = ext.is_partial_order()
            && ext.is_total()
            && p.relation().is_subset(&ext)?
            && forced.is_none_or(|(a, b)| ext.contains(a, b));
        rec.check(ok, checks::SZPILRAJN, p, None, forced, || {
            format!("{ext:?}")
        });
    }
    let dm = dushnik_miller_intersection(p, DEFAULT_ENUMERATION_CAP);
    let ok = matches!(&dm, Ok(r) if r == p.relation())
        && enumerate_perfect_extensions(p, DEFAULT_ENUMERATION_CAP)?
            .iter()
            .all(|e| e.is_partial_order() && e.is_total());
    rec.check(ok, checks::DUSHNIK_MILLER, p, None, None, || {
        format!("{dm:?}")
    });
    Ok(())
}

/// Every theorem-level equivalence for one (order, partition) pair.
/// `all` is the complete list of total preorders on the universe.
fn check_pair(
    p: &PartialOrder,
    s: &Partition,
    all: &[TotalPreorder],
    rec: &mut Recorder<'_>,
) -> Result<()> {
    let exts = oracle::filter_s_extensions(p, s, all);
    let sps = saturated_strict_part(p, s)?;
    let equiv = s.relation();
    let ind = indifference(p.relation())?;
    let s_in_ind = equiv.is_subset(&ind)?;

    rec.check(
        exts.is_empty() || s_in_ind,
        checks::NECESSARY_INDIFFERENCE,
        p,
        Some(s),
        None,
        || format!("{} extensions but S ⊄ I", exts.len()),
    );

    let report = s_extension_exists(p, s)?;
    rec.check(
        report.exists == !exts.is_empty(),
        checks::EXISTENCE,
        p,
        Some(s),
        None,
        || {
            format!(
                "engine exists={} oracle count={}",
                report.exists,
                exts.len()
            )
        },
    );
    let cert_ok = match &report.certificate {
        Some(cycle) => !report.exists && is_cycle_in(&sps, cycle),
        None => report.exists,
    };
    rec.check(cert_ok, checks::CERTIFICATE, p, Some(s), None, || {
        format!("{:?}", report.certificate)
    });

    let in_sigma = sigma::in_sigma(p, s)?;
    let in_sigma_star = sigma::in_sigma_star(p, s)?;
    rec.check(
        in_sigma == s_in_ind,
        checks::SIGMA_INDIFFERENCE,
        p,
        Some(s),
        None,
        || format!("in_sigma={in_sigma} S⊆I={s_in_ind}"),
    );
    rec.check(
        !in_sigma_star || in_sigma,
        checks::SIGMA_INCLUSION,
        p,
        Some(s),
        None,
        String::new,
    );

    let saturated = is_saturated(p.relation(), s)?;
    let within = within_equipotency(p.relation(), s)?;
    rec.check(
        saturated == within,
        checks::SATURATION,
        p,
        Some(s),
        None,
        || format!("saturated={saturated} S⊆R={within}"),
    );
    if saturated {
        let ok = match oracle::oracle_intersection(&exts) {
            Ok(meet) => meet == p.relation().union(&equiv)?,
            Err(_) => false,
        };
        rec.check(ok, checks::SATURATED_INTERSECTION, p, Some(s), None, || {
            format!("{} extensions", exts.len())
        });
    }

    for which in [Collection::Sigma, Collection::SigmaStar] {
        if sigma::is_member(p, s, which)? {
            let fast = sigma::is_maximal_in(p, s, which)?;
            let slow = sigma::is_maximal_exhaustive(p, s, which, DEFAULT_PARTITION_CAP)?;
            rec.check(fast == slow, checks::MAXIMALITY, p, Some(s), None, || {
                format!("{which}: one-merge={fast} exhaustive={slow}")
            });
        }
    }

    let mut engine_list = extension::enumerate_s_extensions(p, s, DEFAULT_ENUMERATION_CAP)?;
    engine_list.sort();
    let mut oracle_list = exts.clone();
    oracle_list.sort();
    rec.check(
        engine_list == oracle_list,
        checks::ENUMERATION,
        p,
        Some(s),
        None,
        || {
            format!(
                "engine {} vs oracle {}",
                engine_list.len(),
                oracle_list.len()
            )
        },
    );

    if !exts.is_empty() {
        let witness = s_extend(p, s, None)?;
        rec.check(
            exts.contains(&witness),
            checks::WITNESS,
            p,
            Some(s),
            None,
            || format!("{:?}", witness.ranked_blocks()),
        );

        let formula = intersection_of_s_extensions(p, s)?;
        let meet = oracle::oracle_intersection(&exts)?;
        let hull = sps.transitive_hull();
        let ok = formula == meet
            && formula.symmetric_part() == equiv
            && formula.asymmetric_part() == hull;
        rec.check(ok, checks::INTERSECTION_FORMULA, p, Some(s), None, || {
            format!("formula {formula:?} oracle {meet:?}")
        });
    }

    let by_criterion = is_unique_extension(p, s)?.unique();
    let by_count = exts.len() == 1;
    rec.check(
        by_criterion == by_count,
        checks::UNIQUENESS,
        p,
        Some(s),
        None,
        || format!("criterion={by_criterion} oracle_count={}", exts.len()),
    );

    // The closed form is claimed exactly when S ∪ S∘P∘S is the sole extension.
    let plain = equiv.union(&sps)?;
    let form_is_sole = by_count && *exts[0].relation() == plain;
    let closed = closed_form_unique_extension(p, s);
    let ok = match &closed {
        Ok(Some(t)) => form_is_sole && *t.relation() == plain,
        Ok(None) => !form_is_sole,
        Err(_) => false,
    };
    rec.check(ok, checks::CLOSED_FORM, p, Some(s), None, || {
        format!(
            "closed_form={closed:?} oracle_count={} form_is_sole={form_is_sole}",
            exts.len()
        )
    });
    Ok(())
}

/// Runs the pair checks on a single instance, outside a sweep.
pub fn check_instance(p: &PartialOrder, s: &Partition) -> Result<Vec<CaseFailure>> {
    let mut failures = Vec::new();
    let all = oracle::enumerate_total_preorders(p.size(), DEFAULT_PREORDER_CAP)?;
    let mut rec = Recorder {
        failures: &mut failures,
        checks: 0,
    };
    check_order(p, &mut rec)?;
    check_pair(p, s, &all, &mut rec)?;
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up_to_three() {
        let summary = run_sweep(3).unwrap();
        assert!(summary.passed(), "{:?}", summary.failures);
        let cases: Vec<(usize, usize, usize)> = summary
            .levels
            .iter()
            .map(|l| (l.partial_orders, l.partitions, l.cases))
            .collect();
        assert_eq!(cases, vec![(1, 1, 1), (3, 2, 6), (19, 5, 95)]);
    }

    #[test]
    fn limits() {
        assert_eq!(run_sweep(0), Err(Error::EmptyUniverse));
        assert_eq!(run_sweep(6), Err(Error::Capacity { n: 6, cap: 5 }));
    }

    #[test]
    fn single_instance() {
        let p = PartialOrder::from_strict_pairs(4, [(0, 1), (2, 3)]).unwrap();
        let s = Partition::from_blocks(4, [vec![1, 2], vec![0, 3]]).unwrap();
        assert!(check_instance(&p, &s).unwrap().is_empty());
    }
}
