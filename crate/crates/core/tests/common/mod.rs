#![allow(dead_code)]

use prodspec::quad::{integrate_semi_infinite, GaussLegendre, QuadConfig};
use prodspec::Result;

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `∫_0^∞ f`, surfacing the first error raised inside the integrand.
pub fn semi_infinite<F: Fn(f64) -> Result<f64>>(f: F, scale: f64, cfg: &QuadConfig) -> Result<f64> {
    let mut failure = None;
    let r = integrate_semi_infinite(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        scale,
        cfg,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

/// Composite Gauss-Legendre rule on `[0, cut]`, graded geometrically on
/// both sides of `scale`.
pub fn graded_rule(scale: f64, cut: f64, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let mut breaks = vec![0.0];
    let mut x = scale * 1e-8;
    while x < scale {
        breaks.push(x);
        x *= 4.0;
    }
    while x < cut {
        breaks.push(x);
        x *= 1.5;
    }
    breaks.push(cut);
    GaussLegendre::new(nodes).composite(&breaks)
}
