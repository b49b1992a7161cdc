//! Spectral statistics of products of rectangular complex Gaussian matrices.

pub mod error;
pub mod finite_n;
pub mod macroscopic;
pub mod mimo;
pub mod montecarlo;
pub mod quad;
pub mod selftest;
pub mod specfun;

pub use error::{Error, Result};
pub use finite_n::{BiorthogonalSystem, DensityTable, ProductSpec, Scaling};
pub use macroscopic::{EdgeBounds, EdgeResult, MacroSpec};
pub use mimo::{ChannelQuery, Method, MiEstimate};
pub use montecarlo::{Histogram, McRun, McSample, Rescale};
