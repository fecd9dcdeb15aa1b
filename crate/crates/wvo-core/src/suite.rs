//! Built-in worked example and its golden classification suites.
//!
//! The recurring instance is the zero objective on the real line with
//! `G(x) = -x`, the componentwise order on the plane, and the scalar
//! nonnegativity cone: small enough that every conjugate epigraph involved
//! has a closed form. Those closed forms live here as reference classifiers,
//! and the suites grid the query space and compare every oracle verdict
//! against them, which is the crate's primary end-to-end self-check.

use num_traits::{Signed, Zero};

use crate::batch;
use crate::cone::Cone;
use crate::epigraph::{epi_member, ConjugateForm};
use crate::error::Result;
use crate::linalg::{rat, rint, Matrix, Rat};
use crate::problem::{Polyhedron, Problem, VectorAffineMap};

/// The built-in demonstration problem: minimize the zero map from the line
/// into the plane over `{x : -x <= 0}`, plane ordered componentwise.
pub fn builtin_problem() -> Problem {
    let k = Cone::first_orthant(2);
    let s = Cone::first_orthant(1);
    let f = VectorAffineMap::zero(2, 1);
    let g = VectorAffineMap::total(Matrix::from_ints(&[&[-1]]), vec![rint(0)]).unwrap();
    let c = Polyhedron::full_space(1);
    Problem::new(k, s, f, g, c).expect("builtin data is well formed")
}

/// Closed form of the unconstrained conjugate epigraph for the builtin data:
/// whether `((alpha, beta), (y1, y2))` belongs to it. The five sign cases of
/// `WSup{x (alpha, beta) : x real}` under the componentwise order.
pub fn reference_unconstrained(alpha: &Rat, beta: &Rat, y1: &Rat, y2: &Rat) -> bool {
    let ab = alpha * beta;
    if alpha.is_zero() && beta.is_zero() {
        !y1.is_negative() || !y2.is_negative()
    } else if ab.is_positive() {
        false
    } else if ab.is_negative() {
        // closed halfplane above the line y2 = (beta/alpha) y1
        *y2 >= (beta * y1) / alpha
    } else if beta.is_zero() {
        !y2.is_negative()
    } else {
        !y1.is_negative()
    }
}

/// Closed form of the constrained conjugate epigraph (feasible set is the
/// nonnegative ray): membership of `((alpha, beta), (y1, y2))`.
pub fn reference_constrained(alpha: &Rat, beta: &Rat, y1: &Rat, y2: &Rat) -> bool {
    let zero = Rat::zero();
    if !alpha.is_positive() && !beta.is_positive() {
        !y1.is_negative() || !y2.is_negative()
    } else if alpha.is_zero() && beta.is_positive() {
        !y1.is_negative()
    } else if alpha.is_positive() && beta.is_zero() {
        !y2.is_negative()
    } else if alpha.is_positive() && beta.is_negative() {
        // y2 >= min{0, (beta/alpha) y1}
        let bound = (beta * y1) / alpha;
        let min = if bound < zero { bound } else { zero.clone() };
        *y2 >= min
    } else if alpha.is_negative() && beta.is_positive() {
        let bound = (alpha * y2) / beta;
        let min = if bound < zero { bound } else { zero.clone() };
        *y1 >= min
    } else {
        // alpha > 0 and beta > 0: the supremum degenerates.
        false
    }
}

/// Closed form of the composite conjugate epigraph at the operator
/// `(t1, t2)`: the unconstrained classifier shifted by the operator entries.
pub fn reference_composite(t1: &Rat, t2: &Rat, alpha: &Rat, beta: &Rat, y1: &Rat, y2: &Rat) -> bool {
    reference_unconstrained(&(alpha + t1), &(beta + t2), y1, y2)
}

/// Default deterministic grid: all tuples `(alpha, beta, y1, y2)` with
/// components in `{-2, -1, -1/2, 0, 1/2, 1, 2}`.
pub fn default_grid() -> Vec<[Rat; 4]> {
    let vals = [
        rint(-2),
        rint(-1),
        rat(-1, 2),
        rint(0),
        rat(1, 2),
        rint(1),
        rint(2),
    ];
    let mut out = Vec::with_capacity(vals.len().pow(4));
    for a in &vals {
        for b in &vals {
            for y1 in &vals {
                for y2 in &vals {
                    out.push([a.clone(), b.clone(), y1.clone(), y2.clone()]);
                }
            }
        }
    }
    out
}

/// One grid tuple where an oracle verdict disagreed with the classifier.
#[derive(Clone, Debug)]
pub struct Disagreement {
    pub tuple: [Rat; 4],
    pub expected: bool,
    pub got: bool,
    pub context: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub total_checked: usize,
    pub disagreements: Vec<Disagreement>,
    /// Strictness witness verdicts (constrained suite only): the designated
    /// witness pair must be rejected by the constrained test and accepted by
    /// the composite test at a weakly positive, non-positive operator.
    pub witness_ok: Option<bool>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.witness_ok.unwrap_or(true)
    }
}

fn lmap(alpha: &Rat, beta: &Rat) -> Matrix {
    Matrix::column(&[alpha.clone(), beta.clone()])
}

/// Grid suite for the unconstrained conjugate: oracle = composite membership
/// at the zero operator (the composite objective with a zero operator is the
/// bare objective over the full line).
pub fn run_unconstrained_suite(grid: &[[Rat; 4]]) -> Result<SuiteReport> {
    let prob = builtin_problem();
    let zero_t = Matrix::zeros(2, 1);
    let verdicts: Vec<Result<(bool, bool)>> = batch::map(grid, |tuple| {
        let [alpha, beta, y1, y2] = tuple;
        let got = epi_member(
            &lmap(alpha, beta),
            &[y1.clone(), y2.clone()],
            ConjugateForm::Composite(&zero_t),
            &prob,
        )?
        .member;
        Ok((reference_unconstrained(alpha, beta, y1, y2), got))
    });
    let mut disagreements = Vec::new();
    let mut total = 0usize;
    for (tuple, v) in grid.iter().zip(verdicts) {
        let (expected, got) = v?;
        total += 1;
        if expected != got {
            disagreements.push(Disagreement {
                tuple: tuple.clone(),
                expected,
                got,
                context: "unconstrained conjugate".into(),
            });
        }
    }
    Ok(SuiteReport { total_checked: total, disagreements, witness_ok: None })
}

/// Grid suite for the constrained conjugate plus composite cross-checks at a
/// few fixed operators, plus the strictness witness.
pub fn run_constrained_suite(grid: &[[Rat; 4]]) -> Result<SuiteReport> {
    let prob = builtin_problem();
    let ops: Vec<(Rat, Rat)> = vec![
        (rint(-1), rint(0)),
        (rint(1), rint(0)),
        (rint(0), rint(0)),
    ];
    let verdicts: Vec<Result<Vec<(bool, bool, String)>>> = batch::map(grid, |tuple| {
        let [alpha, beta, y1, y2] = tuple;
        let l = lmap(alpha, beta);
        let y = [y1.clone(), y2.clone()];
        let mut rows = Vec::with_capacity(1 + ops.len());
        let got = epi_member(&l, &y, ConjugateForm::Constrained, &prob)?.member;
        rows.push((
            reference_constrained(alpha, beta, y1, y2),
            got,
            "constrained conjugate".to_string(),
        ));
        for (t1, t2) in &ops {
            let t = Matrix::column(&[t1.clone(), t2.clone()]);
            let got = epi_member(&l, &y, ConjugateForm::Composite(&t), &prob)?.member;
            rows.push((
                reference_composite(t1, t2, alpha, beta, y1, y2),
                got,
                format!("composite conjugate at ({t1}, {t2})"),
            ));
        }
        Ok(rows)
    });
    let mut disagreements = Vec::new();
    let mut total = 0usize;
    for (tuple, v) in grid.iter().zip(verdicts) {
        for (expected, got, context) in v? {
            total += 1;
            if expected != got {
                disagreements.push(Disagreement {
                    tuple: tuple.clone(),
                    expected,
                    got,
                    context,
                });
            }
        }
    }
    // Strictness witness: ((1,0), (0,-1)) is outside the constrained
    // epigraph yet inside the composite epigraph at the weakly positive,
    // non-positive operator (-1, 0).
    let l = lmap(&rint(1), &rint(0));
    let y = [rint(0), rint(-1)];
    let rejected = !epi_member(&l, &y, ConjugateForm::Constrained, &prob)?.member;
    let t = Matrix::from_ints(&[&[-1], &[0]]);
    let accepted = epi_member(&l, &y, ConjugateForm::Composite(&t), &prob)?.member;
    let witness_ok = Some(rejected && accepted);
    Ok(SuiteReport { total_checked: total, disagreements, witness_ok })
}

/// Which built-in suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleId {
    /// Unconstrained conjugate of the builtin data.
    One,
    /// Constrained conjugate with composite cross-checks.
    Two,
}

pub fn run_example_suite(which: ExampleId) -> Result<SuiteReport> {
    let grid = default_grid();
    match which {
        ExampleId::One => run_unconstrained_suite(&grid),
        ExampleId::Two => run_constrained_suite(&grid),
    }
}
