//! A fast cross-check of every module, used by the `selftest` subcommand.

use std::fmt;

use num_complex::Complex64;

use crate::error::Result;
use crate::finite_n::{first_moment, inverse_moment, moment, BiorthogonalSystem, ProductSpec};
use crate::macroscopic::{edges, edges_degenerate, macro_density, macro_density_m2, resolvent, MacroSpec};
use crate::mimo::{mi_double_sum, mi_quadrature};
use crate::montecarlo::{mc_expectation, sample_squared_singular_values, McRun};
use crate::quad::{integrate_semi_infinite, QuadConfig};
use crate::specfun::{meijer_g, meijer_g_m0, ContourConfig, MeijerGParams};

/// Outcome of one named check: `|error| ≤ tol` passes.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub error: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.abs() <= self.tol
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:<28} error={:.3e} tol={:.1e}", self.name, self.error, self.tol)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn meijer_shift() -> Result<f64> {
    let cfg = ContourConfig::default();
    let p = MeijerGParams::new(2, 0, vec![], vec![1, 3])?;
    let z: f64 = 1.7;
    Ok(rel(z * z * meijer_g(&p, z, &cfg)?, meijer_g(&p.shifted(2), z, &cfg)?))
}

fn meijer_elementary() -> Result<f64> {
    // G^{1,0}_{0,1}(−; b | x) = x^b e^{−x}
    let x: f64 = 2.3;
    Ok(rel(meijer_g_m0(&[2], x, &ContourConfig::default())?, x * x * (-x).exp()))
}

fn normalization() -> Result<f64> {
    let sys = BiorthogonalSystem::new(ProductSpec::new(2, 3, vec![0, 1])?);
    let cfg = QuadConfig { rel_tol: 1e-10, ..QuadConfig::default() };
    let r = integrate_semi_infinite(|s| sys.rescaled_density(s).unwrap_or(f64::NAN), 1.0, &cfg)?;
    Ok(r.value - 1.0)
}

fn biorthogonality() -> Result<f64> {
    let sys = BiorthogonalSystem::new(ProductSpec::new(2, 3, vec![0, 1])?);
    // off-diagonal targets are zero, so an absolute floor is needed
    let cfg = QuadConfig { abs_tol: 1e-12, rel_tol: 1e-10, ..QuadConfig::default() };
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let f = |s: f64| sys.poly_p(i, s) * sys.phi_scaled_all(3, s).map_or(f64::NAN, |v| v[j]);
            let r = integrate_semi_infinite(f, sys.spec().scale(), &cfg)?;
            worst = worst.max((r.value - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    Ok(worst)
}

fn moments() -> Result<f64> {
    let spec = ProductSpec::new(3, 3, vec![1, 2, 3])?;
    let e1 = rel(moment(&spec, 1.0)?, first_moment(&spec));
    let einv = rel(moment(&spec, -1.0)?, inverse_moment(&spec)?);
    Ok(e1.max(einv))
}

fn marchenko_pastur_edges() -> Result<f64> {
    let e = edges(&MacroSpec::new(1, vec![0.0])?)?;
    Ok(e.s_minus.abs().max((e.s_plus - 4.0).abs()))
}

fn degenerate_edges() -> Result<f64> {
    let e = edges(&MacroSpec::degenerate(3, 0.5)?)?;
    let (lo, hi) = edges_degenerate(3, 0.5);
    Ok(rel(e.s_minus, lo).max(rel(e.s_plus, hi)))
}

fn m2_closed_form() -> Result<f64> {
    let spec = MacroSpec::new(2, vec![1.0, 2.0])?;
    let mut worst: f64 = 0.0;
    for s in [0.2, 1.0, 2.5] {
        worst = worst.max((macro_density(&spec, s)? - macro_density_m2(1.0, 2.0, s)).abs());
    }
    Ok(worst)
}

fn resolvent_asymptotics() -> Result<f64> {
    // ẑ(ẑG − 1) → E{ŝ} = 1 far from the support
    let z = Complex64::new(1e6, 1.0);
    let g = resolvent(&MacroSpec::new(2, vec![0.5, 1.0])?, z)?;
    Ok((z * (z * g - 1.0) - 1.0).norm())
}

fn mutual_information() -> Result<f64> {
    let spec = ProductSpec::new(2, 2, vec![0, 1])?;
    Ok(rel(mi_quadrature(&spec, 1.0)?, mi_double_sum(&spec, 1.0)?))
}

fn monte_carlo_mean() -> Result<f64> {
    // E{ŝ} = 1; report the deviation in standard errors
    let spec = ProductSpec::new(2, 2, vec![0, 1])?;
    let scale = spec.scale();
    let sample = sample_squared_singular_values(&McRun::new(spec, 4000, 7)?);
    let (mean, se) = mc_expectation(&sample, |s| s / scale)?;
    Ok((mean - 1.0) / se)
}

/// Run every check. A check whose computation fails is reported with an
/// infinite error.
pub fn run() -> Vec<Check> {
    type Probe = fn() -> Result<f64>;
    let probes: [(&'static str, Probe, f64); 11] = [
        ("meijer shift", meijer_shift, 1e-10),
        ("meijer elementary", meijer_elementary, 1e-10),
        ("density normalization", normalization, 1e-8),
        ("biorthogonality", biorthogonality, 1e-8),
        ("moments", moments, 1e-10),
        ("marchenko-pastur edges", marchenko_pastur_edges, 1e-12),
        ("degenerate edges", degenerate_edges, 1e-10),
        ("m2 closed form", m2_closed_form, 1e-8),
        ("resolvent asymptotics", resolvent_asymptotics, 1e-4),
        ("mutual information", mutual_information, 1e-8),
        ("monte carlo mean", monte_carlo_mean, 4.0),
    ];
    probes
        .iter()
        .map(|&(name, probe, tol)| Check { name, error: probe().unwrap_or(f64::INFINITY), tol })
        .collect()
}
