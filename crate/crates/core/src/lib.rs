//! Massless Poincaré generators on the 1/r inner-product space.

pub mod diffops;
pub mod eigenmodes;
pub mod error;
pub mod field;
pub mod fourposition;
pub mod grid;
pub mod harness;
pub mod packets;
pub mod quadrature;
pub mod raytransforms;
pub mod residual;
pub mod specfun;

pub use error::{Error, Result};
