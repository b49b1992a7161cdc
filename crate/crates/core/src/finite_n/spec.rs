use crate::error::{invalid, Result};
use crate::specfun::ln_factorial;

/// Product configuration: `M` factors with dimensions `N_m = N₀ + ν_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSpec {
    m: usize,
    n0: usize,
    nu: Vec<u32>,
}

impl ProductSpec {
    pub fn new(m: usize, n0: usize, nu: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return invalid("at least one factor is required");
        }
        if n0 == 0 {
            return invalid("N0 must be positive");
        }
        if nu.len() != m {
            return invalid(format!("expected {m} index offsets, got {}", nu.len()));
        }
        Ok(Self { m, n0, nu })
    }

    /// Number of factors `M`.
    pub fn factors(&self) -> usize {
        self.m
    }

    /// Number of singular values `N₀`.
    pub fn n0(&self) -> usize {
        self.n0
    }

    /// `ν₁..ν_M`.
    pub fn nu(&self) -> &[u32] {
        &self.nu
    }

    pub fn nu_min(&self) -> u32 {
        *self.nu.iter().min().expect("M >= 1")
    }

    /// `N₀, N₁, .., N_M`.
    pub fn dims(&self) -> Vec<usize> {
        std::iter::once(self.n0).chain(self.nu.iter().map(|&v| self.n0 + v as usize)).collect()
    }

    /// `𝒩_M = ∏_{m≥1} N_m`, the first moment.
    pub fn scale(&self) -> f64 {
        self.nu.iter().map(|&v| (self.n0 + v as usize) as f64).product()
    }

    /// Same product with the offsets reordered.
    pub fn with_nu(&self, nu: Vec<u32>) -> Result<Self> {
        Self::new(self.m, self.n0, nu)
    }

    /// `ln h_n = Σ_{m=0}^M ln (n+ν_m)!` with `ν₀ = 0`.
    pub fn ln_norm(&self, n: usize) -> f64 {
        ln_factorial(n as u32) + self.nu.iter().map(|&v| ln_factorial(n as u32 + v)).sum::<f64>()
    }

    /// `ln C_M = ln N₀! + Σ_{n=1}^{N₀} Σ_{m=0}^M ln Γ(n+ν_m)`.
    pub fn ln_jpdf_constant(&self) -> f64 {
        let mut acc = ln_factorial(self.n0 as u32);
        for n in 1..=self.n0 as u32 {
            acc += ln_factorial(n - 1);
            for &v in &self.nu {
                acc += ln_factorial(n + v - 1);
            }
        }
        acc
    }
}

impl std::fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let nu: Vec<String> = self.nu.iter().map(|v| v.to_string()).collect();
        write!(f, "M={} N0={} nu={}", self.m, self.n0, nu.join(","))
    }
}
