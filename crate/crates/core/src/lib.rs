//! Exact computations on surfaces in the quaternions that carry two
//! families of circles.

#![allow(clippy::result_large_err)]

pub mod acceptance;
pub mod classify;
pub mod cli;
pub mod error;
pub mod geom;
pub mod implicit;
pub mod linalg;
pub mod mesh;
pub mod pythagorean;
pub mod qpoly;
pub mod quat;
pub mod random;
pub mod rat;
pub mod splitting;
pub mod surface;

pub use error::{Error, Result};
pub use qpoly::{QPoly2, RPoly, Var};
pub use quat::Quat;
pub use rat::Rat;
