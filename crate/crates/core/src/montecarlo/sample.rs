use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::finite_n::ProductSpec;

/// A reproducible sampling job. Realization `i` draws from ChaCha8 stream `i`
/// of `seed`, so the output does not depend on how work is scheduled.
#[derive(Debug, Clone, PartialEq)]
pub struct McRun {
    pub spec: ProductSpec,
    pub realizations: usize,
    pub seed: u64,
    /// Realizations handed to a worker at a time.
    pub streams: usize,
}

impl McRun {
    pub fn new(spec: ProductSpec, realizations: usize, seed: u64) -> Result<Self> {
        if realizations == 0 {
            return invalid("at least one realization is required");
        }
        Ok(Self { spec, realizations, seed, streams: 64 })
    }
}

/// Squared singular values, one sorted row of `N₀` values per realization.
#[derive(Debug, Clone, PartialEq)]
pub struct McSample {
    pub spec: ProductSpec,
    pub seed: u64,
    values: Vec<f64>,
}

impl McSample {
    pub fn from_rows(spec: ProductSpec, seed: u64, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n0 = spec.n0();
        if rows.iter().any(|r| r.len() != n0) {
            return invalid(format!("every row must hold {n0} values"));
        }
        Ok(Self { spec, seed, values: rows.concat() })
    }

    pub fn realizations(&self) -> usize {
        self.values.len() / self.spec.n0()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.spec.n0())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// CSV with `#` metadata and one row per realization.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let nu: Vec<String> = self.spec.nu().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "# M={}\n# N0={}\n# nu={}", self.spec.factors(), self.spec.n0(), nu.join(","));
        let _ = writeln!(out, "# seed={}\n# realizations={}", self.seed, self.realizations());
        let header: Vec<String> = (1..=self.spec.n0()).map(|i| format!("s{i}")).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    // density ∝ exp(-|x|²): real and imaginary parts have variance 1/2
    let sd = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(sd * re, sd * im)
    })
}

fn one_realization(spec: &ProductSpec, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let dims = spec.dims();
    loop {
        let mut y = gaussian_matrix(&mut rng, dims[1], dims[0]);
        for w in dims[1..].windows(2) {
            y = gaussian_matrix(&mut rng, w[1], w[0]) * y;
        }
        let mut s: Vec<f64> = y.singular_values().iter().map(|v| v * v).collect();
        if s.iter().all(|&v| v > 0.0) {
            s.sort_by(|a, b| a.total_cmp(b));
            return s;
        }
    }
}

/// The `N₀` non-zero eigenvalues of `Y Y†` for `Y = X_M ⋯ X_1`, where `X_m`
/// is `N_m × N_{m−1}`, obtained from the singular values of `Y`.
pub fn sample_squared_singular_values(run: &McRun) -> McSample {
    let chunk = run.streams.max(1);
    let values: Vec<f64> = (0..run.realizations)
        .into_par_iter()
        .with_min_len(chunk)
        .flat_map_iter(|i| one_realization(&run.spec, run.seed, i as u64))
        .collect();
    McSample { spec: run.spec.clone(), seed: run.seed, values }
}
