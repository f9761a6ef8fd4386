//! Distance-integral functionals on model spaces and discrete manifolds.
//!
//! The central object is the functional `f(p) = ∫ d(p,x) dv`: the integral of
//! the geodesic distance from a base point over a space, against its volume
//! measure. This crate evaluates `f` in closed form on model geometries
//! (circle, round sphere, flat torus, Euclidean and hyperbolic balls, a
//! thin-necked dumbbell surface), approximates it on weighted metric graphs
//! built from triangle meshes, and checks the diameter-volume lower and upper
//! bounds that constrain `f/(d·V)` under curvature hypotheses.
//!
//! Modules:
//! - [`model`]: closed-form geometry oracles (exact distance, volume,
//!   diameter, and where available exact values of `f`).
//! - [`discrete`]: weighted metric graphs, geodesic distance fields,
//!   ball-volume profiles, mesh ingestion and synthetic generators.
//! - [`bounds`]: the explicit bound constants, the proof functions `g` and
//!   their maximizers, inequality reports, volume-comparison monotonicity.
//! - [`dumbbell`]: the thin-neck counterexample surface, both as an
//!   asymptotic model and as a concrete mesh, with the `C = 1/L^3` sweep.
//! - [`report`], [`verify`], [`cli`]: machine-readable reports, built-in
//!   verification suites, and the batch command-line surface.

pub mod bounds;
pub mod cli;
pub mod discrete;
pub mod dumbbell;
pub mod error;
pub mod model;
pub mod numeric;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use model::{ModelSpace, PointRef, Provenance, Quantity};
