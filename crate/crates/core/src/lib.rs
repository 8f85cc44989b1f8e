//! Exact computation of independence polynomials and of the average size
//! of independent vertex sets, together with an exhaustive verification
//! lab for the extremal behaviour of that average on small graphs and
//! trees: global bounds, non-monotonicity under vertex and edge removal,
//! star maximality, path minimality, and the weighted (fugacity) variant.
//!
//! Everything is computed in exact arithmetic: big-integer polynomial
//! coefficients, rationals for averages, and the quadratic field with
//! sqrt5 for the closed-form path analysis.

pub mod engine;
pub mod error;
pub mod exact;
pub mod family;
pub mod graph;
pub mod lab;
pub mod path_analysis;
pub mod report;
pub mod trees;

pub use engine::{IndependencePoly, InvariantSummary, WeightedSummary};
pub use error::{Error, Result};
pub use exact::{frac, QuadNumber, Rational};
pub use family::SetFamily;
pub use graph::{Graph, GraphKind};
pub use report::{ReportStatus, VerificationReport, Witness};
pub use trees::TreeIterator;
