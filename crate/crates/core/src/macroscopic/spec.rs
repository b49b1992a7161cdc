use std::fmt;

use crate::error::{invalid, Result};
use crate::finite_n::ProductSpec;

/// Number of factors and the rescaled dimension offsets `ν̂_m = ν_m/N₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroSpec {
    nu_hat: Vec<f64>,
}

impl MacroSpec {
    pub fn new(factors: usize, nu_hat: Vec<f64>) -> Result<Self> {
        if factors == 0 {
            return invalid("at least one factor is required");
        }
        if nu_hat.len() != factors {
            return invalid(format!("expected {factors} values of nu_hat, got {}", nu_hat.len()));
        }
        if nu_hat.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return invalid("nu_hat must be finite and non-negative");
        }
        Ok(Self { nu_hat })
    }

    /// All `ν̂_m` equal.
    pub fn degenerate(factors: usize, nu_hat: f64) -> Result<Self> {
        Self::new(factors, vec![nu_hat; factors])
    }

    /// The limit reached by `spec` when all dimensions grow at fixed ratios.
    pub fn from_finite(spec: &ProductSpec) -> Self {
        let n0 = spec.n0() as f64;
        Self { nu_hat: spec.nu().iter().map(|&v| v as f64 / n0).collect() }
    }

    pub fn factors(&self) -> usize {
        self.nu_hat.len()
    }

    pub fn nu_hat(&self) -> &[f64] {
        &self.nu_hat
    }

    pub fn nu_min(&self) -> f64 {
        self.nu_hat.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn nu_max(&self) -> f64 {
        self.nu_hat.iter().copied().fold(0.0, f64::max)
    }
}

impl fmt::Display for MacroSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nu: Vec<String> = self.nu_hat.iter().map(|v| v.to_string()).collect();
        write!(f, "M={} nu_hat={}", self.factors(), nu.join(","))
    }
}
