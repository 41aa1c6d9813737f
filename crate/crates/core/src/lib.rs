//! Colored Temperley-Lieb diagrammatics, fusion graphs, operator-valued
//! semicircular moments and free-dimension bookkeeping for interpolated free
//! group factors.

pub mod diagrams;
pub mod error;
pub mod fusion;
pub mod gjs;
pub mod graph;
pub mod scalar;
pub mod spectra;
pub mod vnfactor;

pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use scalar::{Quadratic, Scalar};
