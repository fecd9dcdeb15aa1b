//! Executable vector Farkas lemmas.
//!
//! The three assertions, for a query pair `(L, y)`:
//!
//! - `b1`: every feasible point satisfies `F(x) - L(x) + y ∉ -int K`;
//! - `b2` (given a positive operator `T`): the same with `F + T∘G` over the
//!   unconstrained domain;
//! - `b3` (given a weakly positive `T`): the shifted variant against
//!   `T(-S) - int K`.
//!
//! `b2 ⟹ b1` and `b3 ⟹ b1` hold unconditionally; under a verified
//! qualification condition all three are equivalent with `T` produced by the
//! constructive multiplier pipeline. The audit runs those implications over
//! query batches and flags any violation, which would be a bug, not data.

use crate::batch;
use crate::epigraph::{epi_member, epi_member_shifted, ConjugateForm};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rat};
use crate::multiplier::{build_certificate_prequalified, qualification};
use crate::order::{is_positive_operator, is_weakly_positive_operator};
use crate::problem::Problem;

/// One Farkas query: the linear perturbation and the offset.
#[derive(Clone, Debug)]
pub struct FarkasQuery {
    pub l: Matrix,
    pub y: Vec<Rat>,
}

/// Which multiplier set the existential search runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Operators mapping the constraint cone into the ordering cone.
    Positive,
    /// Operators whose image avoids the negative interior.
    WeaklyPositive,
}

/// The unconditional assertion: no feasible point is strictly dominated.
/// Identical to membership of `(L, y)` in the constrained conjugate epigraph.
pub fn check_b1(q: &FarkasQuery, prob: &Problem) -> Result<bool> {
    Ok(epi_member(&q.l, &q.y, ConjugateForm::Constrained, prob)?.member)
}

/// The composite assertion for a given positive operator.
pub fn check_b2(q: &FarkasQuery, t: &Matrix, prob: &Problem) -> Result<bool> {
    if !is_positive_operator(t, prob.constraint_cone(), prob.ordering_cone())? {
        return Err(Error::NotPositiveOperator);
    }
    Ok(epi_member(&q.l, &q.y, ConjugateForm::Composite(t), prob)?.member)
}

/// The shifted assertion for a given weakly positive operator.
pub fn check_b3(q: &FarkasQuery, t: &Matrix, prob: &Problem) -> Result<bool> {
    if !is_weakly_positive_operator(t, prob.constraint_cone(), prob.ordering_cone())? {
        return Err(Error::NotWeaklyPositiveOperator);
    }
    Ok(epi_member_shifted(&q.l, &q.y, t, prob)?.member)
}

/// Search for a multiplier witnessing the query, through the constructive
/// pipeline (the existence theorems guarantee one exactly when `b1` holds,
/// so no enumeration of operator space ever happens). Requires a verified
/// qualification condition.
pub fn search_multiplier(
    q: &FarkasQuery,
    mode: SearchMode,
    prob: &Problem,
) -> Result<Option<Matrix>> {
    let qual = qualification(prob)?;
    if !qual.verdict {
        return Err(Error::QualificationFailed);
    }
    search_multiplier_prequalified(q, mode, prob)
}

pub(crate) fn search_multiplier_prequalified(
    q: &FarkasQuery,
    mode: SearchMode,
    prob: &Problem,
) -> Result<Option<Matrix>> {
    if !check_b1(q, prob)? {
        return Ok(None);
    }
    let cert = build_certificate_prequalified(&q.l, &q.y, prob)?;
    let holds = match mode {
        SearchMode::Positive => check_b2(q, &cert.t, prob)?,
        // A positive operator is weakly positive and collapses the shifted
        // form, so the same witness serves.
        SearchMode::WeaklyPositive => check_b3(q, &cert.t, prob)?,
    };
    if !holds {
        return Err(Error::ConsistencyFailure(
            "constructed multiplier fails its own assertion".into(),
        ));
    }
    Ok(Some(cert.t))
}

/// Verdicts for one audited query.
#[derive(Clone, Debug)]
pub struct QueryAudit {
    pub b1: bool,
    pub positive_found: Option<bool>,
    pub weakly_positive_found: Option<bool>,
    pub violations: Vec<String>,
}

/// Result of auditing a batch of queries.
#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Whether a qualification condition was verified; without one the audit
    /// downgrades to the unconditional implications.
    pub qualified: bool,
    pub queries: Vec<QueryAudit>,
}

impl AuditReport {
    pub fn total_violations(&self) -> usize {
        self.queries.iter().map(|q| q.violations.len()).sum()
    }
}

/// Audit the Farkas equivalences over a query batch.
///
/// With qualification: `b1 ⟺ (positive search succeeds) ⟺ (weakly positive
/// search succeeds)` is asserted per query. Without qualification: for each
/// query and each probe operator that happens to be positive (weakly
/// positive), `b2 ⟹ b1` (`b3 ⟹ b1`) is asserted.
pub fn equivalence_audit(
    queries: &[FarkasQuery],
    probes: &[Matrix],
    prob: &Problem,
) -> Result<AuditReport> {
    let qual = qualification(prob)?;
    let audits: Vec<Result<QueryAudit>> = batch::map(queries, |q| {
        let mut violations = Vec::new();
        let b1 = check_b1(q, prob)?;
        let mut positive_found = None;
        let mut weakly_positive_found = None;
        if qual.verdict {
            let tp = search_multiplier_prequalified(q, SearchMode::Positive, prob)?;
            let tw = search_multiplier_prequalified(q, SearchMode::WeaklyPositive, prob)?;
            positive_found = Some(tp.is_some());
            weakly_positive_found = Some(tw.is_some());
            if b1 != tp.is_some() {
                violations.push(format!(
                    "b1 = {b1} but positive multiplier search returned {:?}",
                    tp.is_some()
                ));
            }
            if b1 != tw.is_some() {
                violations.push(format!(
                    "b1 = {b1} but weakly positive multiplier search returned {:?}",
                    tw.is_some()
                ));
            }
        }
        for t in probes {
            if is_positive_operator(t, prob.constraint_cone(), prob.ordering_cone())? {
                let b2 = check_b2(q, t, prob)?;
                if b2 && !b1 {
                    violations.push("b2 held for a probe operator while b1 failed".into());
                }
            }
            if is_weakly_positive_operator(t, prob.constraint_cone(), prob.ordering_cone())? {
                let b3 = check_b3(q, t, prob)?;
                if b3 && !b1 {
                    violations.push("b3 held for a probe operator while b1 failed".into());
                }
            }
        }
        Ok(QueryAudit { b1, positive_found, weakly_positive_found, violations })
    });
    let mut out = Vec::with_capacity(audits.len());
    for a in audits {
        out.push(a?);
    }
    Ok(AuditReport { qualified: qual.verdict, queries: out })
}

/// All query pairs `(L, y)` with entries drawn from the symmetric grid
/// `{-b, ..., -1/d, 0, 1/d, ..., b}` restricted to the given denominator cap.
/// Only practical for tiny decision/objective dimensions; callers with larger
/// instances sample queries instead.
pub fn grid_queries(prob: &Problem, bound: i64, max_den: i64) -> Vec<FarkasQuery> {
    let entries = grid_values(bound, max_den);
    let m = prob.objective_dim();
    let n = prob.decision_dim();
    let cells = m * n + m;
    let mut out = Vec::new();
    let total = entries.len().checked_pow(cells as u32).unwrap_or(usize::MAX);
    let mut counter = vec![0usize; cells];
    for _ in 0..total {
        let vals: Vec<Rat> = counter.iter().map(|&i| entries[i].clone()).collect();
        let rows: Vec<Vec<Rat>> = (0..m).map(|i| vals[i * n..(i + 1) * n].to_vec()).collect();
        let l = Matrix::from_rows(rows).expect("rectangular");
        let y = vals[m * n..].to_vec();
        out.push(FarkasQuery { l, y });
        // odometer
        let mut k = 0;
        loop {
            counter[k] += 1;
            if counter[k] < entries.len() {
                break;
            }
            counter[k] = 0;
            k += 1;
            if k == cells {
                return out;
            }
        }
    }
    out
}

/// Grid values in `[-bound, bound]` with denominators up to `max_den`.
pub fn grid_values(bound: i64, max_den: i64) -> Vec<Rat> {
    let mut vals = Vec::new();
    for den in 1..=max_den {
        for num in -(bound * den)..=(bound * den) {
            let r = crate::linalg::rat(num, den);
            if !vals.contains(&r) {
                vals.push(r);
            }
        }
    }
    vals.sort();
    vals
}
