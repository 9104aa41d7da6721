//! Exact computations for A-hypergeometric (GKZ) systems.

pub mod error;
pub mod geom;
pub mod intlin;
pub mod logpoly;
pub mod logseries;
pub mod series;
pub mod system;
pub mod weyl;

pub use error::{GkzError, Result};
