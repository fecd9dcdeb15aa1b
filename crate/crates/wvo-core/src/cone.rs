//! Polyhedral cones in facet (halfspace) representation.
//!
//! A cone is stored as an irredundant list of primitive integer facet
//! normals `a_j`, the cone being `{y : <a_j, y> >= 0 for all j}`. With the
//! system canonicalized this way, interior membership is exactly "every
//! facet inequality strict", so interior tests need no tolerance and no LP.
//!
//! Generators (extreme rays plus a lineality spanning set) are computed on
//! demand by the double description method and cached. Generator enumeration
//! is capped at dimension 4; the certificate machinery never needs it higher.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, primitive, rank, rat, rint, zeros, Rat};
use crate::lp::{feasible_point, Constraint};

/// Largest ambient dimension for which generator enumeration is attempted.
pub const MAX_GENERATOR_DIM: usize = 4;

#[derive(Clone)]
pub struct Cone {
    dim: usize,
    facets: Vec<Vec<Rat>>,
    generators: OnceLock<Vec<Vec<Rat>>>,
}

impl std::fmt::Debug for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cone")
            .field("dim", &self.dim)
            .field("facets", &self.facets)
            .finish()
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.facets == other.facets
    }
}

/// Structural report: pointedness and nonempty interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub pointed: bool,
    pub solid: bool,
}

impl Cone {
    /// Cone from facet normals. The system is canonicalized: normals are
    /// scaled to primitive integer vectors, zero rows and duplicates are
    /// dropped, and redundant rows are removed by LP.
    pub fn from_facets(dim: usize, facets: Vec<Vec<Rat>>) -> Result<Self> {
        for f in &facets {
            if f.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.len(),
                });
            }
        }
        let facets = canonicalize_facets(dim, facets);
        Ok(Cone {
            dim,
            facets,
            generators: OnceLock::new(),
        })
    }

    pub fn from_int_facets(dim: usize, facets: &[&[i64]]) -> Self {
        let rows = facets
            .iter()
            .map(|r| r.iter().map(|&n| rint(n)).collect())
            .collect();
        Cone::from_facets(dim, rows).expect("consistent dimensions")
    }

    /// Cone intended to order a space: must be pointed with nonempty interior.
    pub fn ordering(dim: usize, facets: Vec<Vec<Rat>>) -> Result<Self> {
        let cone = Cone::from_facets(dim, facets)?;
        let report = cone.validate();
        if !report.pointed {
            return Err(Error::InvalidOrderingCone("cone is not pointed".into()));
        }
        if !report.solid {
            return Err(Error::InvalidOrderingCone("cone has empty interior".into()));
        }
        Ok(cone)
    }

    pub fn first_orthant(dim: usize) -> Self {
        let mut facets = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut f = zeros(dim);
            f[i] = Rat::one();
            facets.push(f);
        }
        Cone::from_facets(dim, facets).expect("orthant is well formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Vec<Rat>] {
        &self.facets
    }

    fn check_dim(&self, y: &[Rat]) -> Result<()> {
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: y.len(),
            });
        }
        Ok(())
    }

    /// Exact membership: every facet inequality holds.
    pub fn contains(&self, y: &[Rat]) -> Result<bool> {
        self.check_dim(y)?;
        Ok(self.facets.iter().all(|a| !dot(a, y).is_negative()))
    }

    /// Exact interior membership: every facet inequality is strict.
    pub fn interior_contains(&self, y: &[Rat]) -> Result<bool> {
        self.check_dim(y)?;
        Ok(self.facets.iter().all(|a| dot(a, y).is_positive()))
    }

    /// Pointedness (`K ∩ -K = {0}`, equivalently the facet normals span) and
    /// solidity (the strict system is feasible, decided by LP after scaling
    /// strict inequalities to `>= 1`).
    pub fn validate(&self) -> ConeReport {
        let pointed = rank(&self.facets) == self.dim || self.dim == 0;
        let cons: Vec<Constraint> = self
            .facets
            .iter()
            .map(|a| Constraint::ge(a.clone(), Rat::one()))
            .collect();
        let solid = feasible_point(self.dim, &cons).is_some();
        ConeReport { pointed, solid }
    }

    /// Generating set: extreme rays, plus opposite pairs spanning any
    /// lineality. Computed by double description from the facet system and
    /// cached. Errors above [`MAX_GENERATOR_DIM`].
    pub fn generators(&self) -> Result<&[Vec<Rat>]> {
        if self.dim > MAX_GENERATOR_DIM {
            return Err(Error::UnsupportedDimension {
                dim: self.dim,
                max: MAX_GENERATOR_DIM,
            });
        }
        Ok(self
            .generators
            .get_or_init(|| double_description(self.dim, &self.facets)))
    }

    /// Construct with an explicitly supplied generating set. The set is
    /// checked against the facets and, when enumeration is available, against
    /// the double-description generators for completeness.
    pub fn with_generators(dim: usize, facets: Vec<Vec<Rat>>, gens: Vec<Vec<Rat>>) -> Result<Self> {
        let cone = Cone::from_facets(dim, facets)?;
        let mut canonical: Vec<Vec<Rat>> = Vec::new();
        for g in &gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if !cone.contains(g)? {
                return Err(Error::Parse(
                    "generator violates a facet inequality".into(),
                ));
            }
            let p = primitive(g);
            if !is_zero_vec(&p) && !canonical.contains(&p) {
                canonical.push(p);
            }
        }
        if dim > MAX_GENERATOR_DIM {
            return Err(Error::UnsupportedDimension {
                dim,
                max: MAX_GENERATOR_DIM,
            });
        }
        for g in double_description(dim, &cone.facets) {
            if !in_conic_hull(&g, &canonical) {
                return Err(Error::Parse(
                    "generator list does not span the cone".into(),
                ));
            }
        }
        let _ = cone.generators.set(canonical);
        Ok(cone)
    }

    /// The dual cone `{w : <w, y> >= 0 for all y in K}`: its facet normals
    /// are this cone's generators and its generators are this cone's facet
    /// normals.
    pub fn dual(&self) -> Result<Cone> {
        let gens = self.generators()?.to_vec();
        let dual = Cone::from_facets(self.dim, gens)?;
        let _ = dual.generators.set(self.facets.clone());
        Ok(dual)
    }

    /// Deterministic interior point: the sum of the canonical generators when
    /// enumeration is available, otherwise a primitive LP vertex of the
    /// shifted strict system. Errors when the cone has empty interior.
    pub fn canonical_interior_point(&self) -> Result<Vec<Rat>> {
        if self.dim <= MAX_GENERATOR_DIM {
            let gens = self.generators()?;
            let mut k0 = zeros(self.dim);
            for g in gens {
                for (i, v) in g.iter().enumerate() {
                    k0[i] += v;
                }
            }
            if self.interior_contains(&k0)? {
                return Ok(primitive(&k0));
            }
            // Empty interior or cancellation across lineality pairs.
        }
        let cons: Vec<Constraint> = self
            .facets
            .iter()
            .map(|a| Constraint::ge(a.clone(), Rat::one()))
            .collect();
        match feasible_point(self.dim, &cons) {
            Some(p) => {
                let p = primitive(&p);
                debug_assert!(self.interior_contains(&p)?);
                Ok(p)
            }
            None => Err(Error::InvalidOrderingCone(
                "cone has empty interior".into(),
            )),
        }
    }

    /// Random cone point: nonnegative rational combination of the generators.
    pub fn sample_point<R: Rng>(&self, rng: &mut R) -> Result<Vec<Rat>> {
        let gens = self.generators()?;
        let mut y = zeros(self.dim);
        for g in gens {
            let coef = rat(rng.random_range(0..=4i64), rng.random_range(1..=3i64));
            for (i, v) in g.iter().enumerate() {
                y[i] += &coef * v;
            }
        }
        Ok(y)
    }
}

fn canonicalize_facets(dim: usize, facets: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for f in facets {
        let p = primitive(&f);
        if !is_zero_vec(&p) && !rows.contains(&p) {
            rows.push(p);
        }
    }
    rows.sort();
    // Drop rows implied by the others: row a is redundant iff the system
    // {others >= 0, <a, y> <= -1} is infeasible (homogeneity scales any
    // strictly negative value to -1).
    let mut i = 0;
    while i < rows.len() {
        if rows.len() == 1 {
            break;
        }
        let mut cons: Vec<Constraint> = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, a)| Constraint::ge(a.clone(), Rat::zero()))
            .collect();
        cons.push(Constraint::le(rows[i].clone(), -Rat::one()));
        if feasible_point(dim, &cons).is_none() {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    rows
}

/// Is `g` a nonnegative combination of `gens`?
fn in_conic_hull(g: &[Rat], gens: &[Vec<Rat>]) -> bool {
    if is_zero_vec(g) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let dim = g.len();
    let k = gens.len();
    let mut cons = Vec::with_capacity(dim + k);
    for i in 0..dim {
        let coeffs: Vec<Rat> = gens.iter().map(|v| v[i].clone()).collect();
        cons.push(Constraint::eq(coeffs, g[i].clone()));
    }
    for j in 0..k {
        let mut coeffs = zeros(k);
        coeffs[j] = Rat::one();
        cons.push(Constraint::ge(coeffs, Rat::zero()));
    }
    feasible_point(k, &cons).is_some()
}

/// Double description: generating set of `{y : <a, y> >= 0 for a in facets}`.
///
/// Starts from `{±e_i}` (which generates the full space as a cone) and adds
/// one halfspace at a time with the Motzkin combination step. No adjacency
/// filter is used; instead each step prunes generators that are nonnegative
/// combinations of the others, which is exact at these dimensions and keeps
/// the invariant `cone(G) = processed halfspaces` unconditional, lineality
/// included.
fn double_description(dim: usize, facets: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for i in 0..dim {
        let mut e = zeros(dim);
        e[i] = Rat::one();
        gens.push(e.clone());
        e[i] = -Rat::one();
        gens.push(e);
    }
    for a in facets {
        let mut pos: Vec<Vec<Rat>> = Vec::new();
        let mut zero: Vec<Vec<Rat>> = Vec::new();
        let mut negv: Vec<Vec<Rat>> = Vec::new();
        for g in gens {
            match crate::linalg::sign(&dot(a, &g)) {
                1 => pos.push(g),
                0 => zero.push(g),
                _ => negv.push(g),
            }
        }
        let mut next: Vec<Vec<Rat>> = Vec::new();
        let push_unique = |v: Vec<Rat>, out: &mut Vec<Vec<Rat>>| {
            let p = primitive(&v);
            if !is_zero_vec(&p) && !out.contains(&p) {
                out.push(p);
            }
        };
        for g in &pos {
            push_unique(g.clone(), &mut next);
        }
        for g in &zero {
            push_unique(g.clone(), &mut next);
        }
        for p in &pos {
            let ap = dot(a, p);
            for q in &negv {
                let aq = dot(a, q);
                // <a, combo> = 0 and combo is a nonnegative combination of p, q.
                let combo: Vec<Rat> = p
                    .iter()
                    .zip(q)
                    .map(|(pi, qi)| &ap * qi - &aq * pi)
                    .collect();
                push_unique(combo, &mut next);
            }
        }
        // Prune generators implied by the rest.
        let mut i = 0;
        while i < next.len() {
            let rest: Vec<Vec<Rat>> = next
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if in_conic_hull(&next[i], &rest) {
                next.remove(i);
            } else {
                i += 1;
            }
        }
        gens = next;
    }
    gens.sort();
    gens
}
