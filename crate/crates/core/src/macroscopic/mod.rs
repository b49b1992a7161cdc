//! The macroscopic (`N₀ → ∞`) limit of the rescaled one-point function.

mod closed_form;
mod density;
mod edges;
mod resolvent;
mod roots;
mod spec;

pub use closed_form::{macro_density_m2, m2_argument};
pub use density::{macro_density, macro_integrate, macro_table};
pub use edges::{edge_bounds, edge_polynomial, edge_relation, edges, edges_degenerate, EdgeBounds, EdgeResult};
pub use resolvent::{resolvent, resolvent_polynomial};
pub use roots::{poly_roots, real_roots};
pub use spec::MacroSpec;
