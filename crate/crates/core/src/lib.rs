//! Simulation and exact statistics for random intersection models.
//!
//! The crate is organised around four layers:
//!
//! * [`geom`]: balls, lunes, caps, star-shaped sets given by a radius
//!   function, direction grids and the sup-of-radius Hausdorff proxy.
//! * [`ppp`]: seeded Poisson point processes on balls and shells with a
//!   radial measure, the shell radial transport, and the discrete bounds
//!   (coupon collector, Poisson total variation and tail).
//! * [`models`]: the ball, half-space and cone intersection models, the
//!   hyperplane zero cell, the sphere-tessellation cell and the
//!   shift-and-transport coupling between them.
//! * [`analytics`]: closed forms, quadrature, exact radius samplers,
//!   asymptotic constants and Kolmogorov–Smirnov machinery.
//!
//! Every random routine takes an explicit generator derived from an
//! [`RngStream`], so results are reproducible and independent of thread
//! count.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
mod error;
pub mod geom;
pub mod models;
pub mod ppp;
pub mod quad;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use geom::{Dimension, Direction, DirectionGrid, GridKind, Points, StarSet};
pub use ppp::{ProcessSample, RadialMeasure, Region};
pub use rng::RngStream;
pub use stats::Estimate;
