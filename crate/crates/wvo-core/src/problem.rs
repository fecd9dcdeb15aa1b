//! Problem data: polyhedral constraint sets, affine vector maps with explicit
//! effective domains, and the validated `(F, G, C)` triple with its two
//! ordering cones.

use num_traits::Signed;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, primitive, Matrix, Rat};
use crate::lp::{feasible_point, Constraint};

/// Finite system of linear inequalities `<a, x> <= b` over rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    dim: usize,
    rows: Vec<(Vec<Rat>, Rat)>,
}

impl Polyhedron {
    pub fn full_space(dim: usize) -> Self {
        Polyhedron { dim, rows: Vec::new() }
    }

    pub fn from_rows(dim: usize, rows: Vec<(Vec<Rat>, Rat)>) -> Result<Self> {
        let mut canonical = Vec::new();
        for (a, b) in rows {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.len(),
                });
            }
            // Scale (a | b) jointly so the inequality is primitive.
            let mut joint = a.clone();
            joint.push(b.clone());
            let joint = primitive(&joint);
            let (a, b) = (joint[..dim].to_vec(), joint[dim].clone());
            if is_zero_vec(&a) && !b.is_negative() {
                continue; // trivially true
            }
            if !canonical.contains(&(a.clone(), b.clone())) {
                canonical.push((a, b));
            }
        }
        Ok(Polyhedron { dim, rows: canonical })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[(Vec<Rat>, Rat)] {
        &self.rows
    }

    pub fn is_full_space(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self.rows.iter().all(|(a, b)| dot(a, x) <= *b))
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        self.rows
            .iter()
            .map(|(a, b)| Constraint::le(a.clone(), b.clone()))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        feasible_point(self.dim, &self.constraints()).is_none()
    }

    /// Box `lo <= x_i <= hi` in each coordinate.
    pub fn bounding_box(dim: usize, lo: Rat, hi: Rat) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut a = crate::linalg::zeros(dim);
            a[i] = Rat::from_integer(1.into());
            rows.push((a.clone(), hi.clone()));
            let mut n = crate::linalg::zeros(dim);
            n[i] = Rat::from_integer((-1).into());
            rows.push((n, -lo.clone()));
        }
        Polyhedron::from_rows(dim, rows).expect("box rows are well formed")
    }
}

/// Affine map `x -> M x + b` restricted to an effective domain.
#[derive(Clone, Debug)]
pub struct VectorAffineMap {
    matrix: Matrix,
    offset: Vec<Rat>,
    domain: Polyhedron,
}

impl VectorAffineMap {
    pub fn new(matrix: Matrix, offset: Vec<Rat>, domain: Polyhedron) -> Result<Self> {
        if matrix.nrows() != offset.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: offset.len(),
            });
        }
        if domain.dim() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.ncols(),
                found: domain.dim(),
            });
        }
        if domain.is_empty() {
            return Err(Error::InfeasibleConstraintSet);
        }
        Ok(VectorAffineMap { matrix, offset, domain })
    }

    pub fn total(matrix: Matrix, offset: Vec<Rat>) -> Result<Self> {
        let dim = matrix.ncols();
        VectorAffineMap::new(matrix, offset, Polyhedron::full_space(dim))
    }

    pub fn zero(out_dim: usize, in_dim: usize) -> Self {
        VectorAffineMap {
            matrix: Matrix::zeros(out_dim, in_dim),
            offset: crate::linalg::zeros(out_dim),
            domain: Polyhedron::full_space(in_dim),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rat] {
        &self.offset
    }

    pub fn domain(&self) -> &Polyhedron {
        &self.domain
    }

    pub fn in_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn out_dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Value at `x`, or `None` outside the effective domain (the map is
    /// "plus infinity" there).
    pub fn eval(&self, x: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if !self.domain.contains(x)? {
            return Ok(None);
        }
        let mut v = self.matrix.mul_vec(x);
        for (vi, o) in v.iter_mut().zip(&self.offset) {
            *vi += o;
        }
        Ok(Some(v))
    }
}

/// The full problem data: minimize `F` over `{x in C : G(x) in -S}` under the
/// weak order induced by `K`.
#[derive(Clone, Debug)]
pub struct Problem {
    k: Cone,
    s: Cone,
    f: VectorAffineMap,
    g: VectorAffineMap,
    c: Polyhedron,
}

impl Problem {
    /// Validates dimensions, that `K` orders the objective space (pointed,
    /// solid), and the standing assumption that the feasible set meets the
    /// effective domain of `F`.
    pub fn new(k: Cone, s: Cone, f: VectorAffineMap, g: VectorAffineMap, c: Polyhedron) -> Result<Self> {
        let prob = Problem::relaxed(k, s, f, g, c)?;
        if feasible_point(prob.decision_dim(), &prob.feasible_rows()).is_none() {
            return Err(Error::InfeasibleConstraintSet);
        }
        Ok(prob)
    }

    /// Like [`Problem::new`] but without the feasible-set nonemptiness check.
    /// Qualification diagnostics stay meaningful on such data; certificate
    /// construction and weak-solution tests require a feasible problem.
    pub fn relaxed(k: Cone, s: Cone, f: VectorAffineMap, g: VectorAffineMap, c: Polyhedron) -> Result<Self> {
        let n = c.dim();
        if f.in_dim() != n || g.in_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if f.in_dim() != n { f.in_dim() } else { g.in_dim() },
            });
        }
        if f.out_dim() != k.dim() {
            return Err(Error::DimensionMismatch {
                expected: k.dim(),
                found: f.out_dim(),
            });
        }
        if g.out_dim() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                found: g.out_dim(),
            });
        }
        let report = k.validate();
        if !report.pointed || !report.solid {
            return Err(Error::InvalidOrderingCone(
                "objective ordering cone must be pointed with nonempty interior".into(),
            ));
        }
        Ok(Problem { k, s, f, g, c })
    }

    pub fn decision_dim(&self) -> usize {
        self.c.dim()
    }

    pub fn objective_dim(&self) -> usize {
        self.k.dim()
    }

    pub fn constraint_dim(&self) -> usize {
        self.s.dim()
    }

    pub fn ordering_cone(&self) -> &Cone {
        &self.k
    }

    pub fn constraint_cone(&self) -> &Cone {
        &self.s
    }

    pub fn objective(&self) -> &VectorAffineMap {
        &self.f
    }

    pub fn constraint_map(&self) -> &VectorAffineMap {
        &self.g
    }

    pub fn constraint_set(&self) -> &Polyhedron {
        &self.c
    }

    /// Rows of `C ∩ dom F ∩ dom G` as LP constraints over `x`.
    pub fn composite_domain_rows(&self) -> Vec<Constraint> {
        let mut rows = self.c.constraints();
        rows.extend(self.f.domain().constraints());
        rows.extend(self.g.domain().constraints());
        rows
    }

    /// Rows cutting out the constraint `G(x) in -S`, i.e. `<s_i, G(x)> <= 0`
    /// for every facet normal of `S`.
    pub fn cone_constraint_rows(&self) -> Vec<Constraint> {
        self.s
            .facets()
            .iter()
            .map(|si| {
                let coeffs = self.g.matrix().tr_mul_vec(si);
                let rhs = -dot(si, self.g.offset());
                Constraint::le(coeffs, rhs)
            })
            .collect()
    }

    /// Rows of the feasible set `A ∩ dom F = C ∩ dom F ∩ G^{-1}(-S)`.
    pub fn feasible_rows(&self) -> Vec<Constraint> {
        let mut rows = self.composite_domain_rows();
        rows.extend(self.cone_constraint_rows());
        rows
    }

    /// Exact feasibility of a point for `A ∩ dom F`.
    pub fn is_feasible(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.decision_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.decision_dim(),
                found: x.len(),
            });
        }
        Ok(self
            .feasible_rows()
            .iter()
            .all(|c| match c.rel {
                crate::lp::Rel::Le => dot(&c.coeffs, x) <= c.rhs,
                crate::lp::Rel::Ge => dot(&c.coeffs, x) >= c.rhs,
                crate::lp::Rel::Eq => dot(&c.coeffs, x) == c.rhs,
            }))
    }

    /// `F(x)` for feasible `x`; errors when `x` is outside `dom F`.
    pub fn objective_value(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.f.eval(x)?.ok_or(Error::InfeasiblePoint)
    }
}
