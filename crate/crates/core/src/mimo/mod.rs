//! Ergodic mutual information of a channel whose matrix is a product of
//! complex Gaussian matrices.

use std::f64::consts::LN_2;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::finite_n::{BiorthogonalSystem, ProductSpec};
use crate::montecarlo::{mc_expectation, sample_squared_singular_values, McRun};
use crate::quad::{integrate_semi_infinite, QuadConfig};
use crate::specfun::{ln_factorial, meijer_g, ContourConfig, KahanSum, MeijerGParams};

/// How the expectation is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// `N₀ ∫ ρ₁(ŝ) log₂(1 + γŝ) dŝ` against the exact density.
    Quadrature,
    /// Double sum over Meijer G-functions of shape `(M+2,2,3,M+3)`.
    MeijerSum,
    /// Triple sum over Meijer G-functions of shape `(M+2,1,2,M+2)`.
    MeijerTripleSum,
    /// Sample mean over simulated channel matrices.
    MonteCarlo { realizations: usize, seed: u64 },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Quadrature => "quadrature",
            Method::MeijerSum => "meijer_sum",
            Method::MeijerTripleSum => "meijer_triple_sum",
            Method::MonteCarlo { .. } => "monte_carlo",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelQuery {
    pub spec: ProductSpec,
    pub gamma: f64,
    pub method: Method,
}

impl ChannelQuery {
    pub fn new(spec: ProductSpec, gamma: f64, method: Method) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return invalid(format!("signal-to-noise ratio must be positive and finite, got {gamma}"));
        }
        if let Method::MonteCarlo { realizations: 0, .. } = method {
            return invalid("Monte Carlo needs at least one realization");
        }
        Ok(Self { spec, gamma, method })
    }
}

/// An ergodic mutual information in bits, with a standard error for sampled
/// estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiEstimate {
    pub gamma: f64,
    pub bits: f64,
    pub method: Method,
    pub std_error: Option<f64>,
}

/// `Σ_a log₂(1 + γ s_a/𝒩_M)` for one channel realization.
pub fn mutual_information_sample(s_values: &[f64], gamma: f64, scale: f64) -> f64 {
    s_values.iter().map(|&s| (gamma * s / scale).ln_1p()).sum::<f64>() / LN_2
}

pub fn ergodic_mi(query: &ChannelQuery) -> Result<MiEstimate> {
    let (bits, std_error) = match query.method {
        Method::Quadrature => (mi_quadrature(&query.spec, query.gamma)?, None),
        Method::MeijerSum => (mi_double_sum(&query.spec, query.gamma)?, None),
        Method::MeijerTripleSum => (mi_triple_sum(&query.spec, query.gamma)?, None),
        Method::MonteCarlo { realizations, seed } => {
            let run = McRun::new(query.spec.clone(), realizations, seed)?;
            let sample = sample_squared_singular_values(&run);
            let scale = query.spec.scale();
            let (mean, se) = mc_expectation(&sample, |s| (query.gamma * s / scale).ln_1p() / LN_2)?;
            let n0 = query.spec.n0() as f64;
            (n0 * mean, Some(n0 * se))
        }
    };
    Ok(MiEstimate { gamma: query.gamma, bits, method: query.method, std_error })
}

/// Ergodic MI over a grid of signal-to-noise ratios, evaluated in parallel.
pub fn ergodic_mi_sweep(spec: &ProductSpec, gammas: &[f64], method: Method) -> Result<Vec<MiEstimate>> {
    gammas
        .par_iter()
        .map(|&g| ergodic_mi(&ChannelQuery::new(spec.clone(), g, method)?))
        .collect()
}

/// `N₀ ∫ ρ₁(ŝ) log₂(1 + γŝ) dŝ`.
pub fn mi_quadrature(spec: &ProductSpec, gamma: f64) -> Result<f64> {
    let sys = BiorthogonalSystem::new(spec.clone());
    let mut failure = None;
    let r = integrate_semi_infinite(
        |s_hat| match sys.rescaled_density(s_hat) {
            Ok(rho) => rho * (gamma * s_hat).ln_1p(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        1.0,
        &QuadConfig { rel_tol: 1e-11, ..Default::default() },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(spec.n0() as f64 * r.value / LN_2)
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(1/ln 2) Σ_n Σ_{k,ℓ≤n} (−1)^{k+ℓ} n! (n+ν₁)! / ((n−k)!(n−ℓ)! k! ℓ! (ℓ+ν₁)! ∏_m (k+ν_m)!)
/// · G^{M+2,1}_{2,M+2}(0,1; k+1+ν_M, …, k+1+ν₂, k+ℓ+1+ν₁, 0, 0 | 𝒩_M/γ)`.
pub fn mi_triple_sum(spec: &ProductSpec, gamma: f64) -> Result<f64> {
    let m = spec.factors();
    let nu = spec.nu();
    let z = spec.scale() / gamma;
    let cfg = ContourConfig::default();
    let n0 = spec.n0();
    let mut acc = KahanSum::new();
    for n in 0..n0 {
        for k in 0..=n {
            for l in 0..=n {
                let mut b: Vec<i64> = nu[1..].iter().rev().map(|&v| (k as u32 + 1 + v) as i64).collect();
                b.push((k + l + 1) as i64 + nu[0] as i64);
                b.extend([0, 0]);
                let g = meijer_g(&MeijerGParams::new(m + 2, 1, vec![0, 1], b)?, z, &cfg)?;
                let (n32, k32, l32) = (n as u32, k as u32, l as u32);
                let mut ln = ln_factorial(n32) + ln_factorial(n32 + nu[0])
                    - ln_factorial(n32 - k32)
                    - ln_factorial(n32 - l32)
                    - ln_factorial(k32)
                    - ln_factorial(l32)
                    - ln_factorial(l32 + nu[0]);
                for &v in nu {
                    ln -= ln_factorial(k32 + v);
                }
                acc.add(sign(k + l) * ln.exp() * g);
            }
        }
    }
    Ok(acc.value() / LN_2)
}

/// `(1/ln 2) Σ_n Σ_{k≤n} (−1)^k / ((n−k)! k! ∏_m (k+ν_m)!)
/// · G^{M+2,2}_{3,M+3}(k−n+1, 0, 1; k+1+ν_M, …, k+1+ν₁, 0, 0, k+1 | 𝒩_M/γ)`,
/// symmetric in the `ν_m`.
pub fn mi_double_sum(spec: &ProductSpec, gamma: f64) -> Result<f64> {
    let m = spec.factors();
    let nu = spec.nu();
    let z = spec.scale() / gamma;
    let cfg = ContourConfig::default();
    let mut acc = KahanSum::new();
    for n in 0..spec.n0() {
        for k in 0..=n {
            let mut b: Vec<i64> = nu.iter().rev().map(|&v| (k as u32 + 1 + v) as i64).collect();
            b.extend([0, 0, k as i64 + 1]);
            let a = vec![k as i64 - n as i64 + 1, 0, 1];
            let g = meijer_g(&MeijerGParams::new(m + 2, 2, a, b)?, z, &cfg)?;
            let (n32, k32) = (n as u32, k as u32);
            let mut ln = -ln_factorial(n32 - k32) - ln_factorial(k32);
            for &v in nu {
                ln -= ln_factorial(k32 + v);
            }
            acc.add(sign(k) * ln.exp() * g);
        }
    }
    Ok(acc.value() / LN_2)
}

/// CSV with columns `gamma_dB,mi_bits,method,stderr_if_mc`.
pub fn mi_csv(spec: &ProductSpec, rows: &[MiEstimate]) -> String {
    let nu: Vec<String> = spec.nu().iter().map(|v| v.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "# M={}\n# N0={}\n# nu={}", spec.factors(), spec.n0(), nu.join(","));
    if let Some(Method::MonteCarlo { realizations, seed }) = rows.first().map(|r| r.method) {
        let _ = writeln!(out, "# realizations={realizations}\n# seed={seed}");
    }
    out.push_str("gamma_dB,mi_bits,method,stderr_if_mc\n");
    for r in rows {
        let db = 10.0 * r.gamma.log10();
        let se = r.std_error.map(|s| format!("{s:.10e}")).unwrap_or_default();
        let _ = writeln!(out, "{db:.6},{:.12e},{},{se}", r.bits, r.method);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_value_at_unit_snr_is_one_bit() {
        assert!((mutual_information_sample(&[6.0], 1.0, 6.0) - 1.0).abs() < 1e-15);
        let small = mutual_information_sample(&[1.0, 3.0], 1e-8, 2.0);
        assert!((small - 1e-8 * 2.0 / LN_2).abs() < 1e-15);
    }

    #[test]
    fn single_exponential_value() {
        // N₀ = M = 1, ν = 0: E ln(1+γs) = e^{1/γ} E₁(1/γ); at γ = 1 this is 0.596347362323194
        let spec = ProductSpec::new(1, 1, vec![0]).unwrap();
        let exact = 0.596_347_362_323_194 / LN_2;
        for method in [Method::Quadrature, Method::MeijerSum, Method::MeijerTripleSum] {
            let v = ergodic_mi(&ChannelQuery::new(spec.clone(), 1.0, method).unwrap()).unwrap().bits;
            assert!((v - exact).abs() < 1e-10, "{method}: {v} vs {exact}");
        }
    }

    #[test]
    fn sums_agree_with_quadrature() {
        let spec = ProductSpec::new(2, 2, vec![0, 1]).unwrap();
        for gamma in [0.1, 1.0, 10.0] {
            let q = mi_quadrature(&spec, gamma).unwrap();
            let d = mi_double_sum(&spec, gamma).unwrap();
            let t = mi_triple_sum(&spec, gamma).unwrap();
            assert!((q - d).abs() < 1e-8 * q, "γ={gamma}: {q} {d}");
            assert!((t - d).abs() < 1e-8 * q, "γ={gamma}: {t} {d}");
        }
    }

    #[test]
    fn query_validation() {
        let spec = ProductSpec::new(1, 1, vec![0]).unwrap();
        assert!(ChannelQuery::new(spec.clone(), 0.0, Method::Quadrature).is_err());
        assert!(ChannelQuery::new(spec, 1.0, Method::MonteCarlo { realizations: 0, seed: 1 }).is_err());
    }
}
