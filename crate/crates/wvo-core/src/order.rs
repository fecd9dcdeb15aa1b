//! Weak-order set calculus.
//!
//! Weak maxima/minima and strong maxima of finite sets are computed by exact
//! pairwise dominance filtering. Weak suprema are never enumerated: the
//! boundary of a dominated region is a nonconvex union of faces, so suprema
//! of cone images are exposed as membership oracles backed by LP feasibility,
//! which is all any downstream theorem check needs.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{dot, sub, zeros, Matrix, Rat};
use crate::lp::{feasible_point, strictly_feasible, Constraint, LinearProgram, Solution, StrictResult};
use num_traits::{One, Zero};

/// Finite list of rational vectors sharing one ambient dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<Rat>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        // Duplicates add nothing to any of the order operations.
        let mut unique = Vec::with_capacity(points.len());
        for p in points {
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        Ok(PointSet { dim, points: unique })
    }

    pub fn from_ints(dim: usize, points: &[&[i64]]) -> Self {
        PointSet::new(
            dim,
            points.iter().map(|p| crate::linalg::vec_from(p)).collect(),
        )
        .expect("consistent dimensions")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn require_nonempty(m: &PointSet) -> Result<()> {
    if m.is_empty() {
        return Err(Error::Precondition("point set must be nonempty".into()));
    }
    Ok(())
}

fn require_same_dim(m: &PointSet, k: &Cone) -> Result<()> {
    if m.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: m.dim(),
        });
    }
    Ok(())
}

/// Weakly maximal points: `v` survives unless some `u` has `u - v` interior
/// to the cone.
pub fn wmax(m: &PointSet, k: &Cone) -> Result<PointSet> {
    require_nonempty(m)?;
    require_same_dim(m, k)?;
    let mut keep = Vec::new();
    for v in m.points() {
        let dominated = m
            .points()
            .iter()
            .any(|u| k.interior_contains(&sub(u, v)).unwrap_or(false));
        if !dominated {
            keep.push(v.clone());
        }
    }
    PointSet::new(m.dim(), keep)
}

/// Weakly minimal points: mirror of [`wmax`] under `K ↔ -K`.
pub fn wmin(m: &PointSet, k: &Cone) -> Result<PointSet> {
    require_nonempty(m)?;
    require_same_dim(m, k)?;
    let mut keep = Vec::new();
    for v in m.points() {
        let dominated = m
            .points()
            .iter()
            .any(|u| k.interior_contains(&sub(v, u)).unwrap_or(false));
        if !dominated {
            keep.push(v.clone());
        }
    }
    PointSet::new(m.dim(), keep)
}

/// The strongly maximal point `v` with `M ⊂ v - K`, unique when the cone is
/// pointed; `None` when no point dominates every other.
pub fn smax(m: &PointSet, k: &Cone) -> Result<Option<Vec<Rat>>> {
    require_nonempty(m)?;
    require_same_dim(m, k)?;
    for v in m.points() {
        let dominates_all = m
            .points()
            .iter()
            .all(|u| k.contains(&sub(v, u)).unwrap_or(false));
        if dominates_all {
            return Ok(Some(v.clone()));
        }
    }
    Ok(None)
}

/// Membership of `y` in the weak supremum of a finite set: `y` lies in the
/// closed dominated region `M - K` but not in the open one `M - int K`.
///
/// A finite set never has an infinite weak supremum (its dominated region
/// cannot cover the whole space), so the two-condition form is complete.
pub fn wsup_finite_contains(m: &PointSet, k: &Cone, y: &[Rat]) -> Result<bool> {
    require_nonempty(m)?;
    require_same_dim(m, k)?;
    if y.len() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: y.len(),
        });
    }
    let mut in_closed = false;
    for v in m.points() {
        let d = sub(v, y);
        if k.interior_contains(&d)? {
            return Ok(false);
        }
        if k.contains(&d)? {
            in_closed = true;
        }
    }
    Ok(in_closed)
}

/// Does `T` map the cone `S` into `K`? Decided on the generators of `S`.
pub fn is_positive_operator(t: &Matrix, s: &Cone, k: &Cone) -> Result<bool> {
    check_operator_dims(t, s, k)?;
    for g in s.generators()? {
        if !k.contains(&t.mul_vec(g))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does the image `T(S)` avoid `-int K`? Decided by infeasibility of the
/// homogeneous system `{s in S, <a_j, T s> <= -1 for all facets a_j of K}`;
/// scaling replaces strictness exactly because both sets are cones.
pub fn is_weakly_positive_operator(t: &Matrix, s: &Cone, k: &Cone) -> Result<bool> {
    check_operator_dims(t, s, k)?;
    let p = s.dim();
    let mut cons: Vec<Constraint> = s
        .facets()
        .iter()
        .map(|si| Constraint::ge(si.clone(), Rat::zero()))
        .collect();
    for a in k.facets() {
        cons.push(Constraint::le(t.tr_mul_vec(a), -Rat::one()));
    }
    if k.facets().is_empty() {
        // -int K is the whole space; the image always meets it.
        return Ok(false);
    }
    Ok(feasible_point(p, &cons).is_none())
}

fn check_operator_dims(t: &Matrix, s: &Cone, k: &Cone) -> Result<()> {
    if t.ncols() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: t.ncols(),
        });
    }
    if t.nrows() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: t.nrows(),
        });
    }
    Ok(())
}

/// Weak supremum of the cone image `T(-S)` under `K`: either everything is
/// strictly dominated (the supremum degenerates to the greatest element) or
/// membership is decidable pointwise.
#[derive(Clone, Debug)]
pub enum WSupResult {
    /// `T(S)` meets `-int K`; the supremum is the greatest element.
    Infinite,
    Oracle(WSupOracle),
}

impl WSupResult {
    pub fn is_infinite(&self) -> bool {
        matches!(self, WSupResult::Infinite)
    }

    pub fn oracle(&self) -> Option<&WSupOracle> {
        match self {
            WSupResult::Infinite => None,
            WSupResult::Oracle(o) => Some(o),
        }
    }
}

/// Pointwise membership test for `WSup T(-S)`; pure and shareable across
/// threads.
#[derive(Clone, Debug)]
pub struct WSupOracle {
    t: Matrix,
    s: Cone,
    k: Cone,
}

impl WSupOracle {
    /// `y` is weakly supremal iff it lies in the closure `T(-S) - K` but not
    /// in the open region `T(-S) - int K`.
    pub fn contains(&self, y: &[Rat]) -> Result<bool> {
        if y.len() != self.k.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.k.dim(),
                found: y.len(),
            });
        }
        Ok(self.in_closed_region(y) && !self.in_open_region(y)?)
    }

    /// `y ∈ T(-S) - K`, i.e. some `s in S` has `-T s - y in K`.
    pub fn in_closed_region(&self, y: &[Rat]) -> bool {
        let p = self.s.dim();
        let mut cons: Vec<Constraint> = self
            .s
            .facets()
            .iter()
            .map(|si| Constraint::ge(si.clone(), Rat::zero()))
            .collect();
        for a in self.k.facets() {
            // <a, -T s - y> >= 0  <=>  <T^t a, s> <= -<a, y>
            cons.push(Constraint::le(self.t.tr_mul_vec(a), -dot(a, y)));
        }
        feasible_point(p, &cons).is_some()
    }

    /// `y ∈ T(-S) - int K`, via max-min-slack on the facet inequalities.
    pub fn in_open_region(&self, y: &[Rat]) -> Result<bool> {
        let p = self.s.dim();
        let weak: Vec<Constraint> = self
            .s
            .facets()
            .iter()
            .map(|si| Constraint::ge(si.clone(), Rat::zero()))
            .collect();
        let strict: Vec<Constraint> = self
            .k
            .facets()
            .iter()
            .map(|a| Constraint::le(self.t.tr_mul_vec(a), -dot(a, y)))
            .collect();
        match strictly_feasible(p, &weak, &strict) {
            StrictResult::Yes(_) => Ok(true),
            StrictResult::No => Ok(false),
            StrictResult::EmptyWeak => Err(Error::ConsistencyFailure(
                "constraint cone cannot be empty".into(),
            )),
        }
    }

    /// Walk from `y` along an interior direction to the boundary of the
    /// dominated region; the landing point is weakly supremal. Available for
    /// weakly positive operators, where the walk always terminates.
    pub fn project_to_boundary(&self, y: &[Rat], k0: &[Rat]) -> Result<Vec<Rat>> {
        let p = self.s.dim();
        // max t  s.t.  s in S,  <a, -(y + t k0) - T s> >= 0 for all facets a.
        let mut cons: Vec<Constraint> = self
            .s
            .facets()
            .iter()
            .map(|si| {
                let mut c = si.clone();
                c.push(Rat::zero());
                Constraint::ge(c, Rat::zero())
            })
            .collect();
        for a in self.k.facets() {
            let mut coeffs = self.t.tr_mul_vec(a);
            coeffs.push(dot(a, k0));
            cons.push(Constraint::le(coeffs, -dot(a, y)));
        }
        let mut objective = zeros(p + 1);
        objective[p] = -Rat::one();
        let lp = LinearProgram {
            num_vars: p + 1,
            objective,
            constraints: cons,
        };
        match crate::lp::solve(&lp) {
            Solution::Optimal { point, .. } => {
                let t = &point[p];
                Ok(y.iter().zip(k0).map(|(yi, ki)| yi + t * ki).collect())
            }
            Solution::Unbounded { .. } => Err(Error::ConsistencyFailure(
                "dominated region recedes along an interior direction".into(),
            )),
            Solution::Infeasible => Err(Error::ConsistencyFailure(
                "interior line must meet the dominated region".into(),
            )),
        }
    }
}

/// Weak supremum of `T(-S)`: degenerate exactly when `T` fails to be weakly
/// positive.
pub fn wsup_cone_image(t: &Matrix, s: &Cone, k: &Cone) -> Result<WSupResult> {
    if !is_weakly_positive_operator(t, s, k)? {
        return Ok(WSupResult::Infinite);
    }
    Ok(WSupResult::Oracle(WSupOracle {
        t: t.clone(),
        s: s.clone(),
        k: k.clone(),
    }))
}

/// Membership of `T` in the domain and strong max-domain of the conjugate of
/// the indicator of `-S`: the domain is the weakly positive operators, the
/// max-domain the positive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainClassification {
    pub in_domain: bool,
    pub in_max_domain: bool,
}

pub fn classify_operator(t: &Matrix, s: &Cone, k: &Cone) -> Result<DomainClassification> {
    let in_domain = is_weakly_positive_operator(t, s, k)?;
    let in_max_domain = is_positive_operator(t, s, k)?;
    if in_max_domain {
        // For positive operators the supremum is the boundary of -K, whose
        // strong maximum is the origin; confirm through the oracle.
        let sup = wsup_cone_image(t, s, k)?;
        let zero_in_sup = match sup.oracle() {
            Some(o) => o.contains(&zeros(k.dim()))?,
            None => false,
        };
        if !zero_in_sup {
            return Err(Error::ConsistencyFailure(
                "positive operator must have the origin as strong maximum of its supremum".into(),
            ));
        }
    }
    Ok(DomainClassification { in_domain, in_max_domain })
}
