//! Shared generators and independent brute-force oracles for the integration
//! suites. The oracles re-decide everything with raw quantifier loops over
//! plain dot products, never through the library's decision procedures.

#![allow(dead_code)]

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rand::SeedableRng;

use wvo_core::farkas::FarkasQuery;
use wvo_core::linalg::{rat, rint, zeros, Matrix, Rat};
use wvo_core::problem::{Polyhedron, VectorAffineMap};
use wvo_core::{Cone, Problem};

pub fn seeded(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn rrat<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rat {
    rat(
        rng.random_range(-num_bound..=num_bound),
        rng.random_range(1..=den_bound),
    )
}

pub fn rvec<R: Rng>(rng: &mut R, dim: usize, num_bound: i64, den_bound: i64) -> Vec<Rat> {
    (0..dim).map(|_| rrat(rng, num_bound, den_bound)).collect()
}

pub fn rmatrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, num_bound: i64, den_bound: i64) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| rvec(rng, cols, num_bound, den_bound)).collect()).unwrap()
}

/// Random pointed solid cone: a perturbation of the first orthant, falling
/// back to the orthant itself when the draw degenerates.
pub fn random_ordering_cone<R: Rng>(rng: &mut R, dim: usize) -> Cone {
    if dim == 1 || rng.random_bool(0.4) {
        return Cone::first_orthant(dim);
    }
    for _ in 0..20 {
        let mut facets = Vec::with_capacity(dim + 1);
        for i in 0..dim {
            let mut f = zeros(dim);
            f[i] = rint(rng.random_range(1..=2i64));
            for j in 0..dim {
                if j != i {
                    f[j] = rint(rng.random_range(-1..=1i64));
                }
            }
            facets.push(f);
        }
        if rng.random_bool(0.3) {
            facets.push(rvec(rng, dim, 2, 1));
        }
        if let Ok(cone) = Cone::ordering(dim, facets) {
            return cone;
        }
    }
    Cone::first_orthant(dim)
}

fn dims<R: Rng>(rng: &mut R) -> (usize, usize, usize) {
    let pick = |rng: &mut R| *[1usize, 1, 2, 2, 3].get(rng.random_range(0..5)).unwrap();
    (pick(rng), pick(rng).max(2), pick(rng))
}

/// Random affine instance with an interior-point qualification enforced by
/// construction: a base point is drawn first, `C` rows are given positive
/// slack at it, and the constraint offset is chosen so its image sits
/// strictly inside `-S`.
pub fn random_instance<R: Rng>(rng: &mut R) -> Problem {
    loop {
        let (n, m, p) = dims(rng);
        let k = random_ordering_cone(rng, m);
        let s = random_ordering_cone(rng, p);
        let xbar = rvec(rng, n, 2, 2);
        // Box [-5, 5] always contains the base point, plus a couple of rows
        // with strictly positive slack there.
        let mut rows = Vec::new();
        for i in 0..n {
            let mut a = zeros(n);
            a[i] = rint(1);
            rows.push((a.clone(), rint(5)));
            let mut b = zeros(n);
            b[i] = rint(-1);
            rows.push((b, rint(5)));
        }
        for _ in 0..rng.random_range(0..=2usize) {
            let a = rvec(rng, n, 2, 1);
            let slack = rat(rng.random_range(1..=4i64), 2);
            let b = {
                let mut acc = Rat::zero();
                for (ai, xi) in a.iter().zip(&xbar) {
                    acc += ai * xi;
                }
                acc + slack
            };
            rows.push((a, b));
        }
        let c = Polyhedron::from_rows(n, rows).unwrap();
        let f = VectorAffineMap::total(rmatrix(rng, m, n, 2, 2), rvec(rng, m, 2, 2)).unwrap();
        let gm = rmatrix(rng, p, n, 2, 2);
        // G(xbar) = -sbar with sbar strictly interior to S.
        let sbar = {
            let k0 = s.canonical_interior_point().unwrap();
            let extra = s.sample_point(rng).unwrap();
            let mut v = k0;
            for (vi, e) in v.iter_mut().zip(&extra) {
                *vi += e;
            }
            v
        };
        let g0: Vec<Rat> = gm
            .mul_vec(&xbar)
            .iter()
            .zip(&sbar)
            .map(|(gx, sb)| -gx - sb)
            .collect();
        let g = VectorAffineMap::total(gm, g0).unwrap();
        if let Ok(prob) = Problem::new(k, s, f, g, c) {
            return prob;
        }
    }
}

/// Instance violating both qualification conditions: the constraint image is
/// a line inside a two-dimensional cone boundary, so there is no interior
/// point and the origin sits on the boundary of the image set.
pub fn random_unqualified_instance<R: Rng>(rng: &mut R) -> Problem {
    let n = rng.random_range(1..=2usize);
    let m = rng.random_range(2..=3usize);
    let k = random_ordering_cone(rng, m);
    let s = Cone::first_orthant(2);
    let a = {
        let mut v = rvec(rng, n, 2, 1);
        if v.iter().all(|x| x.is_zero()) {
            v[0] = rint(1);
        }
        v
    };
    let gm = Matrix::from_rows(vec![a.clone(), a.iter().map(|x| -x).collect()]).unwrap();
    let g = VectorAffineMap::total(gm, zeros(2)).unwrap();
    let f = VectorAffineMap::total(rmatrix(rng, m, n, 2, 2), rvec(rng, m, 2, 2)).unwrap();
    let c = Polyhedron::bounding_box(n, rint(-4), rint(4));
    Problem::new(k, s, f, g, c).unwrap()
}

pub fn random_query<R: Rng>(rng: &mut R, prob: &Problem) -> FarkasQuery {
    FarkasQuery {
        l: rmatrix(rng, prob.objective_dim(), prob.decision_dim(), 2, 2),
        y: rvec(rng, prob.objective_dim(), 2, 2),
    }
}

/// Random positive operator: short sum of rank-one products of cone points
/// and dual-cone functionals.
pub fn random_positive_operator<R: Rng>(rng: &mut R, prob: &Problem) -> Matrix {
    let m = prob.objective_dim();
    let p = prob.constraint_dim();
    let mut t = Matrix::zeros(m, p);
    for _ in 0..rng.random_range(1..=2usize) {
        let kpt = prob.ordering_cone().sample_point(rng).unwrap();
        let mut z = zeros(p);
        for sf in prob.constraint_cone().facets() {
            let c = rat(rng.random_range(0..=2i64), rng.random_range(1..=2i64));
            for (zi, si) in z.iter_mut().zip(sf) {
                *zi += &c * si;
            }
        }
        let one = rint(1);
        t = t.add(&Matrix::rank_one(&kpt, &z, &one));
    }
    t
}

/// Random weakly positive operator found by rejection; mixes positive draws
/// with free draws that happen to be weakly positive.
pub fn random_weakly_positive_operator<R: Rng>(rng: &mut R, prob: &Problem) -> Matrix {
    for _ in 0..40 {
        let t = if rng.random_bool(0.5) {
            random_positive_operator(rng, prob)
        } else {
            rmatrix(rng, prob.objective_dim(), prob.constraint_dim(), 2, 2)
        };
        if wvo_core::order::is_weakly_positive_operator(
            &t,
            prob.constraint_cone(),
            prob.ordering_cone(),
        )
        .unwrap()
        {
            return t;
        }
    }
    random_positive_operator(rng, prob)
}

/// All rationals in `[-bound, bound]` with denominator at most `max_den`.
pub fn grid_1d(bound: i64, max_den: i64) -> Vec<Rat> {
    let mut vals = Vec::new();
    for den in 1..=max_den {
        for num in -(bound * den)..=(bound * den) {
            let r = rat(num, den);
            if !vals.contains(&r) {
                vals.push(r);
            }
        }
    }
    vals.sort();
    vals
}

fn raw_dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Grid points of the feasible set `A ∩ dom F`, by raw row evaluation.
pub fn feasible_grid(prob: &Problem, bound: i64, max_den: i64) -> Vec<Vec<Rat>> {
    let rows = prob.feasible_rows();
    let vals = grid_1d(bound, max_den);
    let n = prob.decision_dim();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<Rat> = idx.iter().map(|&i| vals[i].clone()).collect();
        let feasible = rows.iter().all(|c| match c.rel {
            wvo_core::lp::Rel::Le => raw_dot(&c.coeffs, &x) <= c.rhs,
            wvo_core::lp::Rel::Ge => raw_dot(&c.coeffs, &x) >= c.rhs,
            wvo_core::lp::Rel::Eq => raw_dot(&c.coeffs, &x) == c.rhs,
        });
        if feasible {
            out.push(x);
        }
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < vals.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == n {
                return out;
            }
        }
    }
}

/// Brute-force weak minimality of `xbar` against a feasible grid: no grid
/// point's value strictly dominates `F(xbar)` facet-by-facet.
pub fn oracle_weakly_minimal_on_grid(prob: &Problem, xbar: &[Rat], grid: &[Vec<Rat>]) -> bool {
    let f = prob.objective();
    let fbar = {
        let mut v = f.matrix().mul_vec(xbar);
        for (vi, o) in v.iter_mut().zip(f.offset()) {
            *vi += o;
        }
        v
    };
    let facets = prob.ordering_cone().facets();
    !grid.iter().any(|x| {
        let mut fx = f.matrix().mul_vec(x);
        for (vi, o) in fx.iter_mut().zip(f.offset()) {
            *vi += o;
        }
        // F(x) - F(xbar) in -int K: every facet strictly negative.
        facets.iter().all(|a| {
            let d: Vec<Rat> = fx.iter().zip(&fbar).map(|(u, v)| u - v).collect();
            raw_dot(a, &d).is_negative()
        })
    })
}

/// Raw two-quantifier weak maximum: keep `v` unless some `u` has `u - v`
/// strictly inside the cone (every facet strictly positive).
pub fn oracle_wmax(points: &[Vec<Rat>], facets: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    points
        .iter()
        .filter(|v| {
            !points.iter().any(|u| {
                facets.iter().all(|a| {
                    let d: Vec<Rat> = u.iter().zip(v.iter()).map(|(x, y)| x - y).collect();
                    raw_dot(a, &d).is_positive()
                })
            })
        })
        .cloned()
        .collect()
}

pub fn oracle_wmin(points: &[Vec<Rat>], facets: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    points
        .iter()
        .filter(|v| {
            !points.iter().any(|u| {
                facets.iter().all(|a| {
                    let d: Vec<Rat> = v.iter().zip(u.iter()).map(|(x, y)| x - y).collect();
                    raw_dot(a, &d).is_positive()
                })
            })
        })
        .cloned()
        .collect()
}

/// Raw two-quantifier weak-supremum membership for finite sets.
pub fn oracle_wsup_contains(points: &[Vec<Rat>], facets: &[Vec<Rat>], y: &[Rat]) -> bool {
    let in_cone = |d: &[Rat]| facets.iter().all(|a| !raw_dot(a, d).is_negative());
    let in_int = |d: &[Rat]| facets.iter().all(|a| raw_dot(a, d).is_positive());
    let mut closed = false;
    for v in points {
        let d: Vec<Rat> = v.iter().zip(y).map(|(a, b)| a - b).collect();
        if in_int(&d) {
            return false;
        }
        if in_cone(&d) {
            closed = true;
        }
    }
    closed
}
