//! Exact-arithmetic toolkit for convex vector optimization under polyhedral
//! ordering cones.
//!
//! The crate decides, over arbitrary-precision rationals and with no
//! tolerances anywhere:
//!
//! - weak maxima/minima and strong maxima of finite sets, and membership in
//!   weak suprema of finite sets and polyhedral cone images ([`order`]);
//! - membership of a pair `(L, y)` in the epigraph of the conjugate of a
//!   constrained vector objective, in its multiplier-composite relaxations,
//!   and in the shifted intersection form ([`epigraph`]);
//! - qualification conditions (interior point, relative-interior) and
//!   constructive Lagrange-multiplier certificates of weak minimality built
//!   by separation, exact scalar duality, and a rank-one lift
//!   ([`multiplier`]);
//! - vector Farkas equivalences and their one-directional fallbacks
//!   ([`farkas`]);
//! - weak-solution tests, optimality conditions, dual feasibility, and a
//!   sampled strong-duality audit ([`optimality`]).
//!
//! Every decision reduces to exact rational linear programming ([`lp`]);
//! strict systems are handled by homogeneous rescaling or max-min-slack
//! programs, never by epsilon comparisons.
//!
//! Batch entry points fan out with rayon when the `parallel` feature
//! (default) is enabled and fall back to sequential iteration otherwise.

pub mod batch;
pub mod cone;
pub mod epigraph;
pub mod error;
pub mod farkas;
pub mod iofmt;
pub mod linalg;
pub mod lp;
pub mod multiplier;
pub mod optimality;
pub mod order;
pub mod plot;
pub mod problem;
pub mod suite;

pub use cone::{Cone, ConeReport};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rat};
pub use order::{PointSet, WSupOracle, WSupResult};
pub use problem::{Polyhedron, Problem, VectorAffineMap};
