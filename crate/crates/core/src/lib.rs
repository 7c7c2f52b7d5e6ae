//! Dual Lorentzian vector algebra, the dual hyperbolic conchoidal motion,
//! and its line-geometry image in Minkowski 3-space.
//!
//! The crate has two computation routes for the motion's orbits and keeps
//! both on purpose. The canonical route ([`motion`]) evaluates the defining
//! frame and orbit formulas in dual-scalar arithmetic; the expanded route
//! ([`expansions`]) carries classical hand-expanded coordinate forms
//! verbatim, misprints included. The reconciliation harness compares the
//! two and ships its verdicts as a committed ledger, so the repository
//! doubles as a checked erratum for those expansions. Sampling and export
//! ([`sampler`]) always use the canonical route.

pub mod dual;
pub mod dual_vector;
pub mod error;
pub mod expansions;
pub mod minkowski;
pub mod motion;
pub mod rng;
pub mod sampler;
pub mod study;
pub mod verify;

pub use dual::DualScalar;
pub use dual_vector::{dual_det3, triple_product, DualMatrix3, DualVec3};
pub use error::{Error, Result};
pub use minkowski::{CausalClass, Vec3L};
pub use motion::{
    c_axis, frame_at, frame_matrix, orbit_point, verify_frame_constraints, FramePose,
    FrameResiduals, LambdaSign, MotionConfig, OrbitSpec,
};
pub use study::{
    dual_to_line, line_from_point_direction, line_point, line_to_dual, point_at, raw_point,
    DirectedTimelikeLine,
};
