//! Plot data for two-dimensional results.
//!
//! The weak supremum of a finite planar set under a pointed solid cone is a
//! staircase: after the linear change of coordinates sending the cone to the
//! first orthant, the boundary of the dominated region is a monotone chain
//! of axis-parallel pieces between two half-line rays. The emitters here
//! produce that chain, plain point lists, and membership grids as CSV for
//! external plotting. Strictly a reporting surface: nothing here feeds back
//! into any decision procedure.

use std::fmt::Write as _;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_linear, Rat};
use crate::order::PointSet;

/// Boundary chain of the dominated region `M - K` in the plane: an incoming
/// ray, the staircase vertices in order, and an outgoing ray.
#[derive(Clone, Debug)]
pub struct StaircaseChain {
    /// Direction of the half-line entering the first vertex.
    pub ray_in: Vec<Rat>,
    pub vertices: Vec<Vec<Rat>>,
    /// Direction of the half-line leaving the last vertex.
    pub ray_out: Vec<Rat>,
}

/// Compute the weak-supremum boundary chain of a finite planar set.
pub fn wsup_staircase(m: &PointSet, k: &Cone) -> Result<StaircaseChain> {
    if m.dim() != 2 || k.dim() != 2 {
        return Err(Error::PlotUnavailable(
            "boundary chains exist only in dimension 2".into(),
        ));
    }
    if m.is_empty() {
        return Err(Error::PlotUnavailable("empty point set".into()));
    }
    let report = k.validate();
    if !report.pointed || !report.solid {
        return Err(Error::PlotUnavailable(
            "boundary chains need a pointed solid cone".into(),
        ));
    }
    // A canonical pointed solid planar cone has exactly two facets; the map
    // y -> (<a1, y>, <a2, y>) carries it onto the first orthant bijectively.
    let facets = k.facets();
    debug_assert_eq!(facets.len(), 2);
    let to_orthant = |y: &[Rat]| -> (Rat, Rat) { (dot(&facets[0], y), dot(&facets[1], y)) };
    let from_orthant = |u: &Rat, v: &Rat| -> Vec<Rat> {
        solve_linear(&[facets[0].clone(), facets[1].clone()], &[u.clone(), v.clone()])
            .expect("facet normals of a pointed planar cone are independent")
    };

    let transformed: Vec<(Rat, Rat)> = m.points().iter().map(|p| to_orthant(p)).collect();
    // Frontier under the componentwise order: drop points dominated by another.
    let mut frontier: Vec<(Rat, Rat)> = Vec::new();
    for (i, p) in transformed.iter().enumerate() {
        let dominated = transformed.iter().enumerate().any(|(j, q)| {
            j != i && q != p && q.0 >= p.0 && q.1 >= p.1
        });
        if !dominated && !frontier.contains(p) {
            frontier.push(p.clone());
        }
    }
    frontier.sort_by(|a, b| a.0.cmp(&b.0));

    // Chain: horizontal ray into the first frontier point, then alternating
    // step corners and frontier points, then the vertical ray out of the
    // last one. Frontier points sorted by u have strictly decreasing v.
    let mut chain: Vec<Vec<Rat>> = Vec::with_capacity(2 * frontier.len() - 1);
    for (i, (u, v)) in frontier.iter().enumerate() {
        chain.push(from_orthant(u, v));
        if i + 1 < frontier.len() {
            chain.push(from_orthant(u, &frontier[i + 1].1));
        }
    }
    let ray_in = from_orthant(&(-Rat::from_integer(1.into())), &Rat::from_integer(0.into()));
    let ray_out = from_orthant(&Rat::from_integer(0.into()), &(-Rat::from_integer(1.into())));
    Ok(StaircaseChain { ray_in, vertices: chain, ray_out })
}

fn push_rat(out: &mut String, r: &Rat) {
    if r.is_integer() {
        let _ = write!(out, "{}", r.numer());
    } else {
        let _ = write!(out, "{}/{}", r.numer(), r.denom());
    }
}

fn csv_row(out: &mut String, part: &str, kind: &str, coords: &[Rat]) {
    let _ = write!(out, "{part},{kind}");
    for c in coords {
        out.push(',');
        push_rat(out, c);
    }
    out.push('\n');
}

/// CSV for a staircase chain: `part,kind,x,y` rows; ray rows carry direction
/// vectors anchored at the adjacent vertex.
pub fn staircase_csv(chain: &StaircaseChain) -> String {
    let mut out = String::from("part,kind,x,y\n");
    csv_row(&mut out, "boundary", "ray", &chain.ray_in);
    for v in &chain.vertices {
        csv_row(&mut out, "boundary", "vertex", v);
    }
    csv_row(&mut out, "boundary", "ray", &chain.ray_out);
    out
}

/// CSV with one row per point.
pub fn points_csv(points: &PointSet) -> Result<String> {
    if points.dim() != 2 {
        return Err(Error::PlotUnavailable(
            "point plots exist only in dimension 2".into(),
        ));
    }
    if points.is_empty() {
        return Err(Error::PlotUnavailable("empty point set".into()));
    }
    let mut out = String::from("x,y\n");
    for p in points.points() {
        let mut first = true;
        for c in p {
            if !first {
                out.push(',');
            }
            push_rat(&mut out, c);
            first = false;
        }
        out.push('\n');
    }
    Ok(out)
}

/// CSV membership grid: coordinates plus a 0/1 verdict column.
pub fn membership_grid_csv(rows: &[(Vec<Rat>, bool)]) -> Result<String> {
    let Some(first) = rows.first() else {
        return Err(Error::PlotUnavailable("empty grid".into()));
    };
    if first.0.len() != 2 {
        return Err(Error::PlotUnavailable(
            "membership grids exist only in dimension 2".into(),
        ));
    }
    let mut out = String::from("x,y,member\n");
    for (p, member) in rows {
        let mut s = String::new();
        push_rat(&mut s, &p[0]);
        s.push(',');
        push_rat(&mut s, &p[1]);
        let _ = writeln!(out, "{s},{}", if *member { 1 } else { 0 });
    }
    Ok(out)
}
