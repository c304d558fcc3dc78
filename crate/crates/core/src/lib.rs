//! Computational systolic geometry on flat tori and piecewise-flat surfaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`surface`]: validated closed triangulations with flat triangles.
//! - [`lattice`]: flat tori ℝⁿ/Λ, shortest vectors and orbit counts.
//! - [`covering`]: universal-cover development, contractibility and systoles.
//! - [`balls`]: geodesic balls with certified area intervals.
//! - [`packing`]: maximal ball systems, nerves and admissible balls.
//! - [`entropy`]: growth series, entropy fits and inequality checks.
//! - [`optimize`]: systolic-ratio minimisation.

pub mod balls;
pub mod covering;
pub mod entropy;
pub mod generators;
pub mod homology;
pub mod lattice;
pub mod optimize;
pub mod packing;
mod par;
pub mod surface;

pub use surface::{Surface, SurfaceError, SurfaceSpec, Topology, Violation};
