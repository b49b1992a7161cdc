use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::finite_n::{DensityTable, Scaling};
use crate::quad::{integrate_pieces, QuadConfig};

use super::resolvent::scaled_resolvent_below_axis;
use super::{edges, MacroSpec};

/// `ρ(ŝ) = Im G(ŝ − i0)/π`, zero off the support.
pub fn macro_density(spec: &MacroSpec, s_hat: f64) -> Result<f64> {
    if !(s_hat > 0.0) || !s_hat.is_finite() {
        return invalid(format!("macroscopic density requires s > 0, got {s_hat}"));
    }
    let w = scaled_resolvent_below_axis(spec, s_hat)?;
    Ok((w.im / (PI * s_hat)).max(0.0))
}

/// `∫ f(ŝ) ρ(ŝ) dŝ` over the support, with panels graded towards both
/// edges where the density has power-law behaviour.
pub fn macro_integrate<F: Fn(f64) -> f64>(spec: &MacroSpec, f: F, cfg: &QuadConfig) -> Result<f64> {
    let e = edges(spec)?;
    let width = e.s_plus - e.s_minus;
    let mut breaks = vec![e.s_minus];
    for k in (1..=40).rev() {
        breaks.push(e.s_minus + 0.5 * width * 0.5f64.powi(k));
    }
    breaks.push(e.s_minus + 0.5 * width);
    for k in 1..=40 {
        breaks.push(e.s_plus - 0.5 * width * 0.5f64.powi(k));
    }
    breaks.push(e.s_plus);
    let mut failure = None;
    let r = integrate_pieces(
        |s| match macro_density(spec, s) {
            Ok(rho) => f(s) * rho,
            Err(err) => {
                failure.get_or_insert(err);
                0.0
            }
        },
        &breaks,
        cfg,
    )?;
    match failure {
        Some(err) => Err(err),
        None => Ok(r.value),
    }
}

/// The macroscopic density on the given abscissae, evaluated in parallel.
pub fn macro_table(spec: &MacroSpec, x: &[f64]) -> Result<DensityTable> {
    let density = x.par_iter().map(|&s| macro_density(spec, s)).collect::<Result<Vec<f64>>>()?;
    Ok(DensityTable {
        scaling: Scaling::Macroscopic,
        factors: spec.factors(),
        nu: spec.nu_hat().to_vec(),
        n0: None,
        x: x.to_vec(),
        density,
    })
}
