use rayon::prelude::*;

use crate::error::{invalid, Result};

use super::BiorthogonalSystem;

/// Abscissa convention of a [`DensityTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    /// `R₁(s)`, normalised to `N₀`.
    Raw,
    /// `ρ₁(ŝ) = (𝒩_M/N₀) R₁(ŝ 𝒩_M)`, a probability density with unit mean.
    Rescaled,
    /// `2σ̂ ρ₁(σ̂²)`, the density of rescaled singular values.
    SingularValue,
    /// Macroscopic limit `ρ₁^{M,∞}(ŝ)`.
    Macroscopic,
}

impl Scaling {
    pub fn label(self) -> &'static str {
        match self {
            Scaling::Raw => "raw",
            Scaling::Rescaled => "rescaled",
            Scaling::SingularValue => "singular-value",
            Scaling::Macroscopic => "macroscopic",
        }
    }
}

/// A density sampled on a grid, with the metadata needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTable {
    pub scaling: Scaling,
    pub factors: usize,
    /// `ν` (finite `N₀`) or `ν̂` (macroscopic), as printed.
    pub nu: Vec<f64>,
    pub n0: Option<usize>,
    pub x: Vec<f64>,
    pub density: Vec<f64>,
}

impl DensityTable {
    /// CSV with `#` metadata lines and an `x,density` header.
    pub fn to_csv(&self) -> String {
        let nu: Vec<String> = self.nu.iter().map(|v| format!("{v}")).collect();
        let mut out = String::new();
        out.push_str(&format!("# scaling={}\n# M={}\n", self.scaling.label(), self.factors));
        if let Some(n0) = self.n0 {
            out.push_str(&format!("# N0={n0}\n"));
        }
        out.push_str(&format!("# nu={}\n", nu.join(",")));
        out.push_str("x,density\n");
        for (x, y) in self.x.iter().zip(&self.density) {
            out.push_str(&format!("{x:.10e},{y:.10e}\n"));
        }
        out
    }
}

/// `n` equally spaced abscissae on `[lo, hi]`, skipping a zero left end
/// (densities may be singular there) by starting half a step in.
pub fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 || !(hi > lo) || lo < 0.0 {
        return invalid(format!("invalid grid [{lo}, {hi}] with {n} points"));
    }
    if n == 1 {
        return Ok(vec![0.5 * (lo + hi)]);
    }
    let h = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let x = lo + i as f64 * h;
            if x == 0.0 {
                0.5 * h
            } else {
                x
            }
        })
        .collect())
}

impl BiorthogonalSystem {
    /// `ρ₁(ŝ) = (𝒩_M/N₀) R₁(ŝ 𝒩_M)`.
    pub fn rescaled_density(&self, s_hat: f64) -> Result<f64> {
        let scale = self.spec().scale();
        Ok(scale / self.spec().n0() as f64 * self.density(s_hat * scale)?)
    }

    /// `2σ̂ ρ₁(σ̂²)`.
    pub fn singular_value_density(&self, sigma_hat: f64) -> Result<f64> {
        Ok(2.0 * sigma_hat * self.rescaled_density(sigma_hat * sigma_hat)?)
    }

    /// Evaluate a density on the given abscissae in parallel. Results are
    /// collected in input order, so output is independent of thread count.
    pub fn tabulate(&self, scaling: Scaling, x: &[f64]) -> Result<DensityTable> {
        let f = |v: f64| match scaling {
            Scaling::Raw => self.density(v),
            Scaling::Rescaled => self.rescaled_density(v),
            Scaling::SingularValue => self.singular_value_density(v),
            Scaling::Macroscopic => invalid("macroscopic tables come from the macroscopic module"),
        };
        let density = x.par_iter().map(|&v| f(v)).collect::<Result<Vec<f64>>>()?;
        Ok(DensityTable {
            scaling,
            factors: self.spec().factors(),
            nu: self.spec().nu().iter().map(|&v| v as f64).collect(),
            n0: Some(self.spec().n0()),
            x: x.to_vec(),
            density,
        })
    }
}
