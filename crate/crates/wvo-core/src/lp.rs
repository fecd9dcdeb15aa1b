//! Exact rational linear programming.
//!
//! A dense two-phase simplex over `BigRational` with Bland's rule, so every
//! solve terminates and every verdict (feasible / optimal / unbounded) is
//! bit-exact. Problems in this crate have single-digit dimensions and at most
//! a few dozen rows; a tableau implementation is the right tool.
//!
//! Strict inequality systems never appear directly: callers either exploit
//! positive homogeneity (cone systems get `<= -1` rows) or go through
//! [`strictly_feasible`], which maximizes the minimum slack and tests the
//! optimum against zero.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{zeros, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Le, rhs }
    }
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Ge, rhs }
    }
    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Eq, rhs }
    }
}

/// Minimize `objective . x` over free variables subject to the constraints.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn feasibility(num_vars: usize, constraints: Vec<Constraint>) -> Self {
        LinearProgram {
            num_vars,
            objective: zeros(num_vars),
            constraints,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Solution {
    Infeasible,
    /// The objective decreases without bound along `point + t * ray`, t >= 0.
    Unbounded { point: Vec<Rat>, ray: Vec<Rat> },
    Optimal { value: Rat, point: Vec<Rat> },
}

impl Solution {
    pub fn point(&self) -> Option<&[Rat]> {
        match self {
            Solution::Infeasible => None,
            Solution::Unbounded { point, .. } => Some(point),
            Solution::Optimal { point, .. } => Some(point),
        }
    }
}

/// Standard-form tableau state shared by both phases.
struct Tableau {
    /// rows x (cols + 1), last column is the rhs.
    t: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    cols: usize,
    /// Columns banned from entering (artificials in phase 2).
    banned: Vec<bool>,
}

enum PhaseOutcome {
    Optimal,
    /// Entering column with no blocking row.
    Unbounded { entering: usize },
}

impl Tableau {
    fn pivot(&mut self, r: usize, s: usize, cost: &mut Vec<Rat>) {
        let inv = self.t[r][s].clone();
        for v in self.t[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..self.t.len() {
            if i == r || self.t[i][s].is_zero() {
                continue;
            }
            let f = self.t[i][s].clone();
            for j in 0..=self.cols {
                let v = &self.t[i][j] - &f * &self.t[r][j];
                self.t[i][j] = v;
            }
        }
        if !cost[s].is_zero() {
            let f = cost[s].clone();
            for j in 0..=self.cols {
                let v = &cost[j] - &f * &self.t[r][j];
                cost[j] = v;
            }
        }
        self.basis[r] = s;
    }

    /// Run simplex iterations with Bland's rule on the given reduced-cost row.
    fn run(&mut self, cost: &mut Vec<Rat>) -> PhaseOutcome {
        loop {
            // Bland: entering = smallest-index column with negative reduced cost.
            let Some(s) = (0..self.cols).find(|&j| !self.banned[j] && cost[j].is_negative())
            else {
                return PhaseOutcome::Optimal;
            };
            // Ratio test; ties broken by smallest basis variable index.
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.t.len() {
                if self.t[i][s].is_positive() {
                    let ratio = &self.t[i][self.cols] / &self.t[i][s];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, s, cost),
                None => return PhaseOutcome::Unbounded { entering: s },
            }
        }
    }

    fn basic_values(&self, n_std: usize) -> Vec<Rat> {
        let mut v = zeros(n_std);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n_std {
                v[b] = self.t[i][self.cols].clone();
            }
        }
        v
    }
}

/// Solve an LP exactly. Free variables are split internally; `Unbounded`
/// returns a feasible point and an improving recession ray in the original
/// variable space.
pub fn solve(lp: &LinearProgram) -> Solution {
    let n = lp.num_vars;
    let n_std = 2 * n; // x_i = v_{2i} - v_{2i+1}
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new(); // equality rows over standard vars
    let mut num_slacks = 0;
    for c in &lp.constraints {
        debug_assert_eq!(c.coeffs.len(), n);
        if matches!(c.rel, Rel::Le | Rel::Ge) {
            num_slacks += 1;
        }
    }
    let total = n_std + num_slacks;
    let mut slack_idx = n_std;
    for c in &lp.constraints {
        let mut row = zeros(total);
        for (i, a) in c.coeffs.iter().enumerate() {
            row[2 * i] = a.clone();
            row[2 * i + 1] = -a.clone();
        }
        match c.rel {
            Rel::Le => {
                row[slack_idx] = Rat::one();
                slack_idx += 1;
            }
            Rel::Ge => {
                row[slack_idx] = -Rat::one();
                slack_idx += 1;
            }
            Rel::Eq => {}
        }
        rows.push((row, c.rhs.clone()));
    }
    // Nonnegative rhs for phase 1.
    for (row, b) in rows.iter_mut() {
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
        }
    }

    let m = rows.len();
    let cols = total + m; // + artificials
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().enumerate() {
        let mut tr = zeros(cols + 1);
        tr[..total].clone_from_slice(row);
        tr[total + i] = Rat::one();
        tr[cols] = b.clone();
        t.push(tr);
    }
    let mut tab = Tableau {
        t,
        basis: (total..cols).collect(),
        cols,
        banned: vec![false; cols],
    };

    // Phase 1: minimize the sum of artificials. Reduced costs under the
    // artificial basis are c_j - sum of column j.
    let mut cost = zeros(cols + 1);
    for j in 0..=cols {
        let mut s = Rat::zero();
        for row in &tab.t {
            s += &row[j];
        }
        cost[j] = if (total..cols).contains(&j) {
            Rat::one() - s
        } else {
            -s
        };
    }
    match tab.run(&mut cost) {
        PhaseOutcome::Optimal => {}
        PhaseOutcome::Unbounded { .. } => unreachable!("phase-1 objective is bounded below"),
    }
    // Phase-1 optimum is -cost[cols].
    if !cost[cols].is_zero() {
        return Solution::Infeasible;
    }
    // Drive artificials out of the basis where possible; a row whose
    // non-artificial entries are all zero is redundant and can be ignored
    // (its artificial stays basic at level zero and never moves again).
    for i in 0..tab.basis.len() {
        if tab.basis[i] >= total {
            if let Some(s) = (0..total).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, s, &mut cost);
            }
        }
    }
    for j in total..cols {
        tab.banned[j] = true;
    }

    // Phase 2 reduced costs: c_j - c_B . (B^-1 A_j).
    let std_cost = |j: usize| -> Rat {
        if j < n_std {
            let i = j / 2;
            if j % 2 == 0 {
                lp.objective[i].clone()
            } else {
                -lp.objective[i].clone()
            }
        } else {
            Rat::zero()
        }
    };
    let mut cost2 = zeros(cols + 1);
    for j in 0..cols {
        let mut red = std_cost(j);
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < cols {
                let cb = std_cost(b);
                if !cb.is_zero() {
                    red -= cb * &tab.t[i][j];
                }
            }
        }
        cost2[j] = red;
    }
    let mut obj = Rat::zero();
    for (i, &b) in tab.basis.iter().enumerate() {
        let cb = std_cost(b);
        if !cb.is_zero() {
            obj += cb * &tab.t[i][tab.cols];
        }
    }
    cost2[cols] = -obj;

    let to_original = |v: &[Rat]| -> Vec<Rat> {
        (0..n).map(|i| &v[2 * i] - &v[2 * i + 1]).collect()
    };

    match tab.run(&mut cost2) {
        PhaseOutcome::Optimal => {
            let v = tab.basic_values(total);
            let value = -cost2[cols].clone();
            Solution::Optimal {
                value,
                point: to_original(&v),
            }
        }
        PhaseOutcome::Unbounded { entering } => {
            let v = tab.basic_values(total);
            let mut ray_std = zeros(total);
            if entering < total {
                ray_std[entering] = Rat::one();
            }
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < total {
                    ray_std[b] = -tab.t[i][entering].clone();
                }
            }
            Solution::Unbounded {
                point: to_original(&v),
                ray: to_original(&ray_std),
            }
        }
    }
}

/// Does the (weak) system have a solution?
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rat>> {
    match solve(&LinearProgram::feasibility(num_vars, constraints.to_vec())) {
        Solution::Infeasible => None,
        Solution::Unbounded { point, .. } | Solution::Optimal { point, .. } => Some(point),
    }
}

#[derive(Clone, Debug)]
pub enum StrictResult {
    /// The weak rows alone are already infeasible.
    EmptyWeak,
    /// Weak rows feasible, but no point satisfies every strict row strictly.
    No,
    /// Witness satisfying weak rows and all strict rows with strict inequality.
    Yes(Vec<Rat>),
}

impl StrictResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, StrictResult::Yes(_))
    }
}

/// Decide whether some point satisfies `weak` (as stated) together with every
/// row of `strict` as a *strict* `<` inequality, by maximizing the minimum
/// slack: the system is strictly feasible iff the supremum is positive
/// (possibly unbounded).
pub fn strictly_feasible(
    num_vars: usize,
    weak: &[Constraint],
    strict: &[Constraint],
) -> StrictResult {
    // Variables (x, t); maximize t = minimize -t.
    let total = num_vars + 1;
    let mut cons: Vec<Constraint> = Vec::with_capacity(weak.len() + strict.len());
    for c in weak {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(Rat::zero());
        cons.push(Constraint {
            coeffs,
            rel: c.rel,
            rhs: c.rhs.clone(),
        });
    }
    for c in strict {
        debug_assert_eq!(c.rel, Rel::Le, "strict rows must be in `< rhs` form");
        let mut coeffs = c.coeffs.clone();
        coeffs.push(Rat::one());
        cons.push(Constraint::le(coeffs, c.rhs.clone()));
    }
    let mut objective = zeros(total);
    objective[num_vars] = -Rat::one();
    let lp = LinearProgram {
        num_vars: total,
        objective,
        constraints: cons,
    };
    match solve(&lp) {
        Solution::Infeasible => StrictResult::EmptyWeak,
        Solution::Optimal { point, .. } => {
            if point[num_vars].is_positive() {
                StrictResult::Yes(point[..num_vars].to_vec())
            } else {
                StrictResult::No
            }
        }
        Solution::Unbounded { point, ray } => {
            // Objective -t unbounded means t grows along the ray.
            debug_assert!(ray[num_vars].is_positive());
            if point[num_vars].is_positive() {
                return StrictResult::Yes(point[..num_vars].to_vec());
            }
            let k = (Rat::one() - &point[num_vars]) / &ray[num_vars];
            let witness: Vec<Rat> = (0..num_vars)
                .map(|i| &point[i] + &k * &ray[i])
                .collect();
            StrictResult::Yes(witness)
        }
    }
}

/// Solve `min c.x : rows(Le only)` and return optimal row multipliers
/// `lambda >= 0` with `A^T lambda = -c` and `b . lambda = -value`, obtained
/// from the explicit dual program. The exact equality of primal and dual
/// optimal values is checked.
pub fn solve_with_multipliers(lp: &LinearProgram) -> Result<(Solution, Option<Vec<Rat>>)> {
    debug_assert!(lp.constraints.iter().all(|c| c.rel == Rel::Le));
    let primal = solve(lp);
    let value = match &primal {
        Solution::Optimal { value, .. } => value.clone(),
        _ => return Ok((primal, None)),
    };
    // Dual of min{c.x : Ax <= b, x free}: max{-b.l : A^T l = -c, l >= 0},
    // written as min{b.l} with the sign flipped on the value.
    let m = lp.constraints.len();
    let mut cons = Vec::with_capacity(lp.num_vars + m);
    for j in 0..lp.num_vars {
        let coeffs: Vec<Rat> = lp.constraints.iter().map(|c| c.coeffs[j].clone()).collect();
        cons.push(Constraint::eq(coeffs, -lp.objective[j].clone()));
    }
    for i in 0..m {
        let mut coeffs = zeros(m);
        coeffs[i] = Rat::one();
        cons.push(Constraint::ge(coeffs, Rat::zero()));
    }
    let dual = LinearProgram {
        num_vars: m,
        objective: lp.constraints.iter().map(|c| c.rhs.clone()).collect(),
        constraints: cons,
    };
    match solve(&dual) {
        Solution::Optimal { value: dv, point } => {
            if -&dv != value {
                return Err(Error::ConsistencyFailure(
                    "primal and dual optimal values differ".into(),
                ));
            }
            Ok((primal, Some(point)))
        }
        _ => Err(Error::ConsistencyFailure(
            "dual of a solvable program must be solvable".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, rat, rint, vec_from};

    fn c_le(coeffs: &[i64], rhs: i64) -> Constraint {
        Constraint::le(vec_from(coeffs), rint(rhs))
    }

    #[test]
    fn optimal_vertex_of_triangle() {
        // min -x - y  s.t. x + y <= 2, x <= 1, -x <= 0, -y <= 0
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec_from(&[-1, -1]),
            constraints: vec![c_le(&[1, 1], 2), c_le(&[1, 0], 1), c_le(&[-1, 0], 0), c_le(&[0, -1], 0)],
        };
        match solve(&lp) {
            Solution::Optimal { value, point } => {
                assert_eq!(value, rint(-2));
                assert_eq!(dot(&vec_from(&[1, 1]), &point), rint(2));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_system() {
        let lp = LinearProgram::feasibility(1, vec![c_le(&[1], 0), c_le(&[-1], -1)]);
        assert!(matches!(solve(&lp), Solution::Infeasible));
    }

    #[test]
    fn unbounded_with_valid_ray() {
        // min -x s.t. x >= 1
        let lp = LinearProgram {
            num_vars: 1,
            objective: vec_from(&[-1]),
            constraints: vec![Constraint::ge(vec_from(&[1]), rint(1))],
        };
        match solve(&lp) {
            Solution::Unbounded { point, ray } => {
                assert!(point[0] >= rint(1));
                assert!(ray[0].is_positive());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_fractions() {
        // min x + y s.t. 2x + y = 1, x - y = 0  =>  x = y = 1/3
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec_from(&[1, 1]),
            constraints: vec![
                Constraint::eq(vec_from(&[2, 1]), rint(1)),
                Constraint::eq(vec_from(&[1, -1]), rint(0)),
            ],
        };
        match solve(&lp) {
            Solution::Optimal { value, point } => {
                assert_eq!(point, vec![rat(1, 3), rat(1, 3)]);
                assert_eq!(value, rat(2, 3));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec_from(&[1, 0]),
            constraints: vec![
                Constraint::eq(vec_from(&[1, 1]), rint(2)),
                Constraint::eq(vec_from(&[2, 2]), rint(4)),
                Constraint::ge(vec_from(&[1, 0]), rint(0)),
            ],
        };
        match solve(&lp) {
            Solution::Optimal { value, .. } => assert_eq!(value, rint(0)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn strict_feasibility_three_ways() {
        // {x : x < 1} with no weak rows: strictly feasible.
        assert!(strictly_feasible(1, &[], &[c_le(&[1], 1)]).is_yes());
        // {x : 0 <= x, x < 0}: no.
        let r = strictly_feasible(1, &[Constraint::ge(vec_from(&[1]), rint(0))], &[c_le(&[1], 0)]);
        assert!(matches!(r, StrictResult::No));
        // weak rows empty set.
        let r = strictly_feasible(
            1,
            &[c_le(&[1], 0), Constraint::ge(vec_from(&[1]), rint(1))],
            &[c_le(&[1], 5)],
        );
        assert!(matches!(r, StrictResult::EmptyWeak));
    }

    #[test]
    fn strict_witness_is_strict() {
        // x < 0, -x < 1, weak row x >= -10
        let weak = [Constraint::ge(vec_from(&[1]), rint(-10))];
        let strict = [c_le(&[1], 0), c_le(&[-1], 1)];
        match strictly_feasible(1, &weak, &strict) {
            StrictResult::Yes(x) => {
                assert!(x[0].is_negative());
                assert!(-&x[0] < rint(1));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn multipliers_certify_the_optimum() {
        // min -x - 2y s.t. x + y <= 4, y <= 2, -x <= 0, -y <= 0; opt at (2, 2), value -6.
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec_from(&[-1, -2]),
            constraints: vec![c_le(&[1, 1], 4), c_le(&[0, 1], 2), c_le(&[-1, 0], 0), c_le(&[0, -1], 0)],
        };
        let (sol, lambda) = solve_with_multipliers(&lp).unwrap();
        let lambda = lambda.unwrap();
        match sol {
            Solution::Optimal { value, .. } => {
                assert_eq!(value, rint(-6));
                // A^T lambda = -c and b.lambda = -value
                let at0 = &lambda[0] - &lambda[2];
                let at1 = &lambda[0] + &lambda[1] - &lambda[3];
                assert_eq!(at0, rint(1));
                assert_eq!(at1, rint(2));
                let bl = &lambda[0] * rint(4) + &lambda[1] * rint(2);
                assert_eq!(bl, rint(6));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    // Brute-force cross-check: enumerate all basic solutions of small random
    // inequality systems and compare the optimum against the simplex.
    #[test]
    fn simplex_matches_vertex_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.random_range(1..=3usize);
            let m = rng.random_range(n..=5usize);
            let mut cons = Vec::new();
            for _ in 0..m {
                let coeffs: Vec<Rat> = (0..n).map(|_| rint(rng.random_range(-3..=3i64))).collect();
                if coeffs.iter().all(|c| c.is_zero()) {
                    continue;
                }
                cons.push(Constraint::le(coeffs, rint(rng.random_range(0..=4i64))));
            }
            // Box to keep things bounded.
            for i in 0..n {
                let mut lo = zeros(n);
                lo[i] = -Rat::one();
                cons.push(Constraint::le(lo, rint(5)));
                let mut hi = zeros(n);
                hi[i] = Rat::one();
                cons.push(Constraint::le(hi, rint(5)));
            }
            let objective: Vec<Rat> = (0..n).map(|_| rint(rng.random_range(-2..=2i64))).collect();
            let lp = LinearProgram {
                num_vars: n,
                objective: objective.clone(),
                constraints: cons.clone(),
            };
            // Enumerate candidate vertices as solutions of n-row subsystems.
            let mut best: Option<Rat> = None;
            let idx: Vec<usize> = (0..cons.len()).collect();
            let mut choose = vec![0usize; n];
            fn rec(
                idx: &[usize],
                k: usize,
                start: usize,
                choose: &mut Vec<usize>,
                cons: &[Constraint],
                objective: &[Rat],
                best: &mut Option<Rat>,
            ) {
                if k == choose.len() {
                    let rows: Vec<Vec<Rat>> =
                        choose.iter().map(|&i| cons[i].coeffs.clone()).collect();
                    let rhs: Vec<Rat> = choose.iter().map(|&i| cons[i].rhs.clone()).collect();
                    if let Some(x) = crate::linalg::solve_linear(&rows, &rhs) {
                        if cons.iter().all(|c| dot(&c.coeffs, &x) <= c.rhs) {
                            let v = dot(objective, &x);
                            if best.as_ref().is_none_or(|b| v < *b) {
                                *best = Some(v);
                            }
                        }
                    }
                    return;
                }
                for i in start..idx.len() {
                    choose[k] = idx[i];
                    rec(idx, k + 1, i + 1, choose, cons, objective, best);
                }
            }
            rec(&idx, 0, 0, &mut choose, &cons, &objective, &mut best);
            match (solve(&lp), best) {
                (Solution::Optimal { value, .. }, Some(b)) => assert_eq!(value, b),
                (Solution::Infeasible, None) => {}
                (sol, b) => panic!("simplex {sol:?} vs enumeration {b:?}"),
            }
        }
    }
}
