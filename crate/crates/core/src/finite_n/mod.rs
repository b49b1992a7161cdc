//! Exact statistics at finite `N₀`.

mod biorth;
mod density;
mod kernel;
mod moments;
mod spec;

pub use biorth::{bimoment, laguerre_weight, BiorthogonalSystem};
pub use density::{grid, DensityTable, Scaling};
pub use kernel::{CorrelationRequest, SubKernel};
pub use moments::{first_moment, inverse_moment, moment, moment_alternative, moment_single_sum, second_moment};
pub use spec::ProductSpec;
