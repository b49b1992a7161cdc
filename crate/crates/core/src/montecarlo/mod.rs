//! Monte Carlo sampling of products of complex Gaussian matrices.

mod histogram;
mod sample;
mod stats;

pub use histogram::{compare_histogram, histogram_density, BinComparison, Histogram, Rescale};
pub use sample::{sample_squared_singular_values, McRun, McSample};
pub use stats::{ks_two_sample, mc_expectation, KsResult};
