//! Closed-form macroscopic density for two factors.

use std::f64::consts::PI;

use num_complex::Complex64;

/// The auxiliary argument `f(ŝ)`; reduces to `ŝ` when `ν̂₁ = ν̂₂ = 0`.
pub fn m2_argument(nu1: f64, nu2: f64, s_hat: f64) -> f64 {
    let z = s_hat * (nu1 + 1.0) * (nu2 + 1.0);
    let quad = nu1 * nu1 - nu1 * nu2 + nu2 * nu2;
    let num = 3.0 * z + quad;
    let den = 3.0 * (3.0 + nu1 + nu2) * z + nu1.powi(3) - (nu1 + nu2).powi(3) / 3.0 + nu2.powi(3);
    3.0 * num.powi(3) / (den * den)
}

/// `ρ(ŝ)` for `M = 2` from Cardano's solution. With principal square and
/// cube roots the bracket's imaginary part is negative on the support, so
/// the conjugate cube-root branch is used.
pub fn macro_density_m2(nu1: f64, nu2: f64, s_hat: f64) -> f64 {
    let f = m2_argument(nu1, nu2, s_hat);
    let r = Complex64::new(27.0 / (4.0 * f), 0.0);
    let a = (r - 1.0).sqrt() - r.sqrt();
    let cube = a.powf(1.0 / 3.0);
    let bracket = cube.inv() + cube;
    let pref = (3.0 * (nu1 + 1.0) * (nu2 + 1.0) * s_hat + nu1 * nu1 - nu1 * nu2 + nu2 * nu2).sqrt() / (3.0 * PI * s_hat);
    -pref * bracket.im
}
