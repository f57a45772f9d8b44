//! Barrow and Erdős–Mordell type inequalities for an arbitrary point in the
//! plane of a triangle.
//!
//! The plane is cut by the three sidelines into seven sign regions of the
//! barycentric coordinates. Outside the triangle the bisectors of the angles
//! at `M` carry a sign (negative across a sideline), and with that sign the
//! weighted Barrow inequality
//!
//! ```text
//! R_A + R_B + R_C >= w_a l'_a + w_b l'_b + w_c l'_c,   w_a = √(R_C/R_B) + √(R_B/R_C), ...
//! ```
//!
//! holds at every point except the vertices, where a two-term version takes
//! over. This crate classifies points, computes the signed quantities, and
//! evaluates the whole family of inequalities as slack reports.
//!
//! ```
//! use barrow_core::{evaluate, Point2, Region, Triangle, DEFAULT_EPS};
//!
//! let t = Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
//! let report = evaluate(&t, Point2::new(1.0, 1.0), DEFAULT_EPS).unwrap();
//! assert_eq!(report.region, Region::Mu1);
//! assert!(report.slack > 0.0);
//! ```

pub mod bisectors;
pub mod error;
pub mod geom;
pub mod harness;
pub mod inequalities;
pub mod regions;

pub use bisectors::{
    apex_angles, bisector_foot, bisector_length, bisectors, signed_bisectors, ApexAngles,
    BisectorForms, BisectorTriple, SignedBisectorTriple,
};
pub use error::{GeomError, Result};
pub use geom::{
    barycentric, signed_area, signed_distances, vertex_distances, BaryCoords, DistanceTriple,
    Orientation, Point2, SignedDistanceTriple, Triangle, Vertex,
};
pub use inequalities::{
    classic_reports, dergiades_report, evaluate, identity_residuals, lu_report, lu_weights,
    signed_barrow_report, stmt_slack, vertex_report, IdentityResiduals, InequalityId,
    InequalityReport, Side, StatementKind, Term, WeightTriple, DEFAULT_TOL_FACTOR,
};
pub use regions::{classify, region_of_pattern, sign_pattern, Region, Sign, SignTriple, DEFAULT_EPS};
