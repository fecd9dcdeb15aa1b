//! Qualification conditions and constructive multiplier certificates.
//!
//! The certificate pipeline follows the constructive route of the duality
//! proofs exactly: separate the query point from the open dominated image
//! with a functional from the dual ordering cone, solve the scalarized
//! Lagrangian dual exactly to obtain an attaining constraint multiplier, and
//! lift it back to an operator through a rank-one formula anchored at a
//! deterministic interior point of the ordering cone. Every step is an exact
//! rational LP, so a returned certificate re-verifies bit-for-bit.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add, dot, nullspace_basis, primitive, sub, zeros, Matrix, Rat};
use crate::lp::{
    feasible_point, solve, solve_with_multipliers, strictly_feasible, Constraint, LinearProgram,
    Solution, StrictResult,
};
use crate::order::is_positive_operator;
use crate::problem::Problem;

/// Multiplier bundle proving weak minimality / epigraph membership.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// Rank-one positive operator `T(z) = <z_star, z> k0 / <y_star, k0>`.
    pub t: Matrix,
    /// Separating functional in the dual ordering cone, normalized so its
    /// largest absolute coordinate is one.
    pub y_star: Vec<Rat>,
    /// Attaining multiplier of the scalarized dual, in the dual constraint cone.
    pub z_star: Vec<Rat>,
    /// Interior point of the ordering cone used by the lift.
    pub k0: Vec<Rat>,
}

/// Outcome of the relative-interior qualification test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiReport {
    /// Dimension of the direction space of the affine hull of
    /// `G(C ∩ dom F ∩ dom G) + S`.
    pub lin_dim: usize,
    /// Whether the origin lies in the relative interior of that set.
    pub zero_in_ri: bool,
}

#[derive(Clone, Debug)]
pub struct QualificationReport {
    /// Interior-point witness: a feasible-domain point mapped strictly inside `-S`.
    pub slater: Option<Vec<Rat>>,
    pub ri: RiReport,
    pub verdict: bool,
}

/// Interior-point condition: some `x` in `C ∩ dom F ∩ dom G` has `G(x)`
/// strictly interior to `-S`. Returns the witness.
pub fn check_slater(prob: &Problem) -> Result<Option<Vec<Rat>>> {
    if !prob.constraint_cone().validate().solid {
        return Ok(None);
    }
    let weak = prob.composite_domain_rows();
    let strict = prob.cone_constraint_rows();
    Ok(match strictly_feasible(prob.decision_dim(), &weak, &strict) {
        StrictResult::Yes(x) => Some(x),
        _ => None,
    })
}

/// Relative-interior condition on `E = G(C ∩ dom F ∩ dom G) + S`, decided in
/// the lifted `(x, s)` space: probe LPs build the affine hull of `E`, then
/// the origin is relatively interior iff it lies in `E` and small positive
/// multiples of every hull direction and its negation stay in `E`.
pub fn check_ri_condition(prob: &Problem) -> Result<RiReport> {
    let n = prob.decision_dim();
    let p = prob.constraint_dim();
    let lifted_rows = |extra_vars: usize| -> Vec<Constraint> {
        let mut rows: Vec<Constraint> = prob
            .composite_domain_rows()
            .into_iter()
            .map(|c| {
                let mut coeffs = c.coeffs;
                coeffs.extend(zeros(p + extra_vars));
                Constraint { coeffs, rel: c.rel, rhs: c.rhs }
            })
            .collect();
        for si in prob.constraint_cone().facets() {
            let mut coeffs = zeros(n);
            coeffs.extend_from_slice(si);
            coeffs.extend(zeros(extra_vars));
            rows.push(Constraint::ge(coeffs, Rat::zero()));
        }
        rows
    };
    let g = prob.constraint_map();
    let image = |x: &[Rat], s: &[Rat]| -> Vec<Rat> {
        let mut z = g.matrix().mul_vec(x);
        for i in 0..p {
            z[i] += &g.offset()[i] + &s[i];
        }
        z
    };
    let base = feasible_point(n + p, &lifted_rows(0)).ok_or(Error::InfeasibleConstraintSet)?;
    let z0 = image(&base[..n], &base[n..]);

    // Objective coefficients of <w, G(x) + s> over (x, s).
    let dir_objective = |w: &[Rat]| -> Vec<Rat> {
        let mut coeffs = g.matrix().tr_mul_vec(w);
        coeffs.extend_from_slice(w);
        coeffs
    };
    let mut hull_dirs: Vec<Vec<Rat>> = Vec::new();
    'grow: loop {
        for w in nullspace_basis(&hull_dirs, p) {
            for flip in [false, true] {
                let mut objective = dir_objective(&w);
                if !flip {
                    // maximize <w, z> = minimize the negation
                    objective = crate::linalg::neg(&objective);
                }
                let lp = LinearProgram {
                    num_vars: n + p,
                    objective,
                    constraints: lifted_rows(0),
                };
                match solve(&lp) {
                    Solution::Unbounded { ray, .. } => {
                        let dz = image_direction(g.matrix(), &ray[..n], &ray[n..]);
                        hull_dirs.push(primitive(&dz));
                        continue 'grow;
                    }
                    Solution::Optimal { point, .. } => {
                        let z1 = image(&point[..n], &point[n..]);
                        if dot(&w, &z1) != dot(&w, &z0) {
                            hull_dirs.push(primitive(&sub(&z1, &z0)));
                            continue 'grow;
                        }
                    }
                    Solution::Infeasible => unreachable!("base point exists"),
                }
            }
        }
        break;
    }
    let lin_dim = hull_dirs.len();

    // 0 in E?
    let mut zero_rows = lifted_rows(0);
    for i in 0..p {
        let mut coeffs: Vec<Rat> = g.matrix().row(i).to_vec();
        let mut s_part = zeros(p);
        s_part[i] = Rat::one();
        coeffs.extend(s_part);
        zero_rows.push(Constraint::eq(coeffs, -g.offset()[i].clone()));
    }
    let zero_in_e = feasible_point(n + p, &zero_rows).is_some();
    let mut zero_in_ri = zero_in_e;
    if zero_in_e {
        'dirs: for w in &hull_dirs {
            for sgn in [1i64, -1] {
                // sup { eps : G(x) + g0 + s = eps * (sgn w) } over the lifted rows
                let mut rows = lifted_rows(1);
                for i in 0..p {
                    let mut coeffs: Vec<Rat> = g.matrix().row(i).to_vec();
                    let mut s_part = zeros(p);
                    s_part[i] = Rat::one();
                    coeffs.extend(s_part);
                    coeffs.push(-(&w[i] * Rat::from_integer(sgn.into())));
                    rows.push(Constraint::eq(coeffs, -g.offset()[i].clone()));
                }
                let mut objective = zeros(n + p + 1);
                objective[n + p] = -Rat::one();
                let lp = LinearProgram {
                    num_vars: n + p + 1,
                    objective,
                    constraints: rows,
                };
                let reaches_positive = match solve(&lp) {
                    Solution::Optimal { point, .. } => point[n + p].is_positive(),
                    Solution::Unbounded { .. } => true,
                    Solution::Infeasible => false,
                };
                if !reaches_positive {
                    zero_in_ri = false;
                    break 'dirs;
                }
            }
        }
    }
    Ok(RiReport { lin_dim, zero_in_ri })
}

fn image_direction(gm: &Matrix, dx: &[Rat], ds: &[Rat]) -> Vec<Rat> {
    add(&gm.mul_vec(dx), &ds.to_vec())
}

/// Verify either qualification condition.
pub fn qualification(prob: &Problem) -> Result<QualificationReport> {
    let slater = check_slater(prob)?;
    let ri = check_ri_condition(prob)?;
    let verdict = slater.is_some() || ri.zero_in_ri;
    Ok(QualificationReport { slater, ri, verdict })
}

/// Functional `y_star` separating `y` from the open dominated image
/// `(L - F)(A ∩ dom F) - int K`.
///
/// A separator exists iff `(L, y)` is in the constrained conjugate epigraph;
/// it is found as a feasible point of one LP: `y_star` is a nonnegative
/// combination of the ordering-cone facet normals (membership in the dual
/// cone), the supremum of `<y_star, (L - F)(x)>` over the feasible rows is
/// bounded by `<y_star, y>` (imposed through LP duality), and `<y_star, k0>`
/// is pinned to one to exclude the zero functional. The result is rescaled
/// so its largest absolute coordinate is one.
pub fn find_separating_functional(l: &Matrix, y: &[Rat], prob: &Problem) -> Result<Vec<Rat>> {
    let k0 = prob.ordering_cone().canonical_interior_point()?;
    find_separating_functional_with(l, y, prob, &k0)
}

fn find_separating_functional_with(
    l: &Matrix,
    y: &[Rat],
    prob: &Problem,
    k0: &[Rat],
) -> Result<Vec<Rat>> {
    let f = prob.objective();
    let facets = prob.ordering_cone().facets();
    let nj = facets.len();
    let feas = prob.feasible_rows();
    let nr = feas.len();
    let n = prob.decision_dim();
    debug_assert!(feas.iter().all(|c| c.rel == crate::lp::Rel::Le));

    // Variables: mu (combination weights over facets), lambda (row multipliers).
    let total = nj + nr;
    let mut cons: Vec<Constraint> = Vec::new();
    // w_j = (L - F_m)^t a_j, the x-gradient of <a_j, (L - F)(x)>.
    let grads: Vec<Vec<Rat>> = facets
        .iter()
        .map(|a| sub(&l.tr_mul_vec(a), &f.matrix().tr_mul_vec(a)))
        .collect();
    // D^t lambda = sum_j mu_j w_j  (componentwise over x).
    for i in 0..n {
        let mut coeffs = zeros(total);
        for (j, w) in grads.iter().enumerate() {
            coeffs[j] = -w[i].clone();
        }
        for (r, c) in feas.iter().enumerate() {
            coeffs[nj + r] = c.coeffs[i].clone();
        }
        cons.push(Constraint::eq(coeffs, Rat::zero()));
    }
    // d . lambda <= <y_star, y + f0>  with  y_star = sum_j mu_j a_j.
    let shift = add(y, f.offset());
    let mut coeffs = zeros(total);
    for (j, a) in facets.iter().enumerate() {
        coeffs[j] = -dot(a, &shift);
    }
    for (r, c) in feas.iter().enumerate() {
        coeffs[nj + r] = c.rhs.clone();
    }
    cons.push(Constraint::le(coeffs, Rat::zero()));
    // Normalization <y_star, k0> = 1.
    let mut coeffs = zeros(total);
    for (j, a) in facets.iter().enumerate() {
        coeffs[j] = dot(a, k0);
    }
    cons.push(Constraint::eq(coeffs, Rat::one()));
    // Nonnegativity.
    for v in 0..total {
        let mut coeffs = zeros(total);
        coeffs[v] = Rat::one();
        cons.push(Constraint::ge(coeffs, Rat::zero()));
    }
    let point = feasible_point(total, &cons).ok_or_else(|| {
        Error::Precondition("query point admits no separating functional".into())
    })?;
    let mut y_star = zeros(prob.objective_dim());
    for (j, a) in facets.iter().enumerate() {
        for (i, ai) in a.iter().enumerate() {
            y_star[i] += &point[j] * ai;
        }
    }
    // Normalize the largest absolute coordinate to one.
    let max_abs = y_star
        .iter()
        .map(|v| v.abs())
        .max()
        .expect("objective dimension is positive");
    debug_assert!(max_abs.is_positive());
    Ok(y_star.iter().map(|v| v / &max_abs).collect())
}

/// Exact attaining multiplier of the scalarized dual: `z_star` in the dual
/// constraint cone with
/// `(f + i_A)^*(x^*) = (f + i_C + z_star ∘ G)^*(x^*)`
/// for `f = y_star ∘ F` and `x^* = y_star ∘ L`. Obtained from the exact dual
/// of the scalarized LP; the attainment equality is re-checked exactly.
pub fn solve_scalar_dual(y_star: &[Rat], l: &Matrix, prob: &Problem) -> Result<Vec<Rat>> {
    let f = prob.objective();
    let g = prob.constraint_map();
    // Objective of the scalarized primal: (F_m - L)^t y_star.
    let q = sub(&f.matrix().tr_mul_vec(y_star), &l.tr_mul_vec(y_star));
    let domain_rows = prob.composite_domain_rows();
    let cone_rows = prob.cone_constraint_rows();
    let offset = domain_rows.len();
    let mut rows = domain_rows;
    rows.extend(cone_rows);
    let lp = LinearProgram {
        num_vars: prob.decision_dim(),
        objective: q.clone(),
        constraints: rows,
    };
    let (sol, lambda) = solve_with_multipliers(&lp)?;
    let (value, lambda) = match (sol, lambda) {
        (Solution::Optimal { value, .. }, Some(lambda)) => (value, lambda),
        (Solution::Unbounded { .. }, _) => return Err(Error::ScalarUnbounded),
        (Solution::Infeasible, _) => {
            return Err(Error::ConsistencyFailure(
                "scalarized primal must be feasible".into(),
            ))
        }
        _ => unreachable!("multipliers accompany every optimum"),
    };
    let mut z_star = zeros(prob.constraint_dim());
    for (r, si) in prob.constraint_cone().facets().iter().enumerate() {
        let w = &lambda[offset + r];
        if !w.is_zero() {
            for (i, v) in si.iter().enumerate() {
                z_star[i] += w * v;
            }
        }
    }
    // Attainment: the partial Lagrangian at z_star reaches the primal value.
    let lagrangian_obj = add(&q, &g.matrix().tr_mul_vec(&z_star));
    let lp2 = LinearProgram {
        num_vars: prob.decision_dim(),
        objective: lagrangian_obj,
        constraints: prob.composite_domain_rows(),
    };
    match solve(&lp2) {
        Solution::Optimal { value: v2, .. } => {
            if v2 + dot(&z_star, g.offset()) != value {
                return Err(Error::ConsistencyFailure(
                    "scalar dual multiplier fails the attainment equality".into(),
                ));
            }
        }
        _ => {
            return Err(Error::ConsistencyFailure(
                "partial Lagrangian at the optimal multiplier must be bounded".into(),
            ))
        }
    }
    Ok(z_star)
}

/// Rank-one lift `T(z) = <z_star, z> k0 / <y_star, k0>` of a scalar
/// multiplier back to an operator. Requires `<y_star, k0> > 0`; the pairing
/// identity `y_star ∘ T = z_star` then holds exactly.
pub fn lift_multiplier(z_star: &[Rat], y_star: &[Rat], k0: &[Rat]) -> Result<Matrix> {
    if y_star.len() != k0.len() {
        return Err(Error::DimensionMismatch {
            expected: y_star.len(),
            found: k0.len(),
        });
    }
    let d = dot(y_star, k0);
    if !d.is_positive() {
        return Err(Error::Precondition(
            "separating functional must be positive on the interior point".into(),
        ));
    }
    let t = Matrix::rank_one(k0, z_star, &d);
    debug_assert_eq!(t.tr_mul_vec(y_star), z_star.to_vec());
    Ok(t)
}

/// Full constructive pipeline: separating functional, exact scalar dual,
/// rank-one lift. The returned certificate is sound by construction and is
/// re-verified against the composite epigraph before being returned.
pub fn build_certificate(l: &Matrix, y: &[Rat], prob: &Problem) -> Result<Certificate> {
    let qual = qualification(prob)?;
    if !qual.verdict {
        return Err(Error::QualificationFailed);
    }
    build_certificate_prequalified(l, y, prob)
}

/// Same pipeline without re-running the qualification tests; callers must
/// have verified them.
pub(crate) fn build_certificate_prequalified(
    l: &Matrix,
    y: &[Rat],
    prob: &Problem,
) -> Result<Certificate> {
    let membership =
        crate::epigraph::epi_member(l, y, crate::epigraph::ConjugateForm::Constrained, prob)?;
    if !membership.member {
        return Err(Error::Precondition(
            "query pair is outside the constrained conjugate epigraph".into(),
        ));
    }
    let k0 = prob.ordering_cone().canonical_interior_point()?;
    let y_star = find_separating_functional_with(l, y, prob, &k0)?;
    let z_star = solve_scalar_dual(&y_star, l, prob)?;
    let t = lift_multiplier(&z_star, &y_star, &k0)?;
    if !is_positive_operator(&t, prob.constraint_cone(), prob.ordering_cone())? {
        return Err(Error::ConsistencyFailure(
            "lifted operator must be positive".into(),
        ));
    }
    let composite =
        crate::epigraph::epi_member(l, y, crate::epigraph::ConjugateForm::Composite(&t), prob)?;
    if !composite.member {
        return Err(Error::ConsistencyFailure(
            "constructed certificate fails composite membership".into(),
        ));
    }
    Ok(Certificate { t, y_star, z_star, k0 })
}

/// Independent re-check of a (possibly deserialized) certificate.
#[derive(Clone, Debug)]
pub struct CertificateCheck {
    pub rank_one_structure: bool,
    pub separator_in_dual_cone: bool,
    pub separator_positive_on_k0: bool,
    pub multiplier_in_dual_cone: bool,
    pub pairing_identity: bool,
    pub k0_interior: bool,
    pub operator_positive: bool,
    pub epigraph_member: bool,
}

impl CertificateCheck {
    pub fn valid(&self) -> bool {
        self.rank_one_structure
            && self.separator_in_dual_cone
            && self.separator_positive_on_k0
            && self.multiplier_in_dual_cone
            && self.pairing_identity
            && self.k0_interior
            && self.operator_positive
            && self.epigraph_member
    }
}

/// Membership of a functional in the dual of a cone, decided exactly through
/// the homogeneous infeasibility form (no generators needed).
pub fn in_dual_cone(w: &[Rat], cone: &crate::cone::Cone) -> Result<bool> {
    if w.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            found: w.len(),
        });
    }
    let mut cons: Vec<Constraint> = cone
        .facets()
        .iter()
        .map(|a| Constraint::ge(a.clone(), Rat::zero()))
        .collect();
    cons.push(Constraint::le(w.to_vec(), -Rat::one()));
    Ok(feasible_point(cone.dim(), &cons).is_none())
}

pub fn verify_certificate(
    cert: &Certificate,
    l: &Matrix,
    y: &[Rat],
    prob: &Problem,
) -> Result<CertificateCheck> {
    let d = dot(&cert.y_star, &cert.k0);
    let rank_one_structure = if d.is_positive() {
        cert.t == Matrix::rank_one(&cert.k0, &cert.z_star, &d)
    } else {
        false
    };
    let separator_in_dual_cone = in_dual_cone(&cert.y_star, prob.ordering_cone())?;
    let multiplier_in_dual_cone = in_dual_cone(&cert.z_star, prob.constraint_cone())?;
    let pairing_identity = cert.t.tr_mul_vec(&cert.y_star) == cert.z_star;
    let k0_interior = prob.ordering_cone().interior_contains(&cert.k0)?;
    let operator_positive =
        is_positive_operator(&cert.t, prob.constraint_cone(), prob.ordering_cone())?;
    let epigraph_member = crate::epigraph::epi_member(
        l,
        y,
        crate::epigraph::ConjugateForm::Composite(&cert.t),
        prob,
    )?
    .member;
    Ok(CertificateCheck {
        rank_one_structure,
        separator_in_dual_cone,
        separator_positive_on_k0: d.is_positive(),
        multiplier_in_dual_cone,
        pairing_identity,
        k0_interior,
        operator_positive,
        epigraph_member,
    })
}
