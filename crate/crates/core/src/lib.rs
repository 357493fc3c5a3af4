//! Bounds on the CSL collapse model from mechanical noise of cylinders and cubes.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.
#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN
#![cfg_attr(test, allow(clippy::excessive_precision))] // reference values carry all digits of the high-precision evaluation

pub mod bounds;
pub mod diffusion;
pub mod environment;
pub mod error;
pub mod optomech;
pub mod physcore;
pub mod real;
pub mod specfun;

pub use error::{Error, Result};
pub use real::Real;

pub use diffusion::{Axis, Body, DiffusionKind, OracleEstimate, QuadratureConfig};

pub type CslParams = diffusion::CslParams<f64>;
pub type CylinderGeometry = diffusion::CylinderGeometry<f64>;
pub type CubeGeometry = diffusion::CubeGeometry<f64>;
