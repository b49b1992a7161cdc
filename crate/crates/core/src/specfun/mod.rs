//! Special functions used throughout the crate.

pub mod gamma;
pub mod meijer;
pub mod poly;
pub mod sum;

pub use gamma::{digamma, ln_factorial, ln_gamma, ln_gamma_signed, log_gamma, reciprocal_gamma, trigamma};
pub use meijer::{meijer_g, meijer_g_m0, meijer_g_m0_family, meijer_g_m1_family, ContourConfig, MeijerGParams, ShapeClass};
pub use poly::{hyper_1fm_poly, laguerre_monic, laguerre_monic_all};
pub use sum::{ksum, KahanSum};
