use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::quad::GaussLegendre;

use super::McSample;

/// Abscissa of a histogram of sampled squared singular values `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rescale {
    /// `s` itself.
    Raw,
    /// `ŝ = s/𝒩_M`.
    Squared,
    /// `σ̂ = √(s/𝒩_M)`.
    SingularValue,
}

/// Counts on `[lo, lo + bins·bin_width)`; values outside land in the
/// overflow tallies.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub bin_width: f64,
    pub counts: Vec<u64>,
    pub total: u64,
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    pub fn new(lo: f64, bin_width: f64, bins: usize) -> Result<Self> {
        if !(bin_width > 0.0) || !bin_width.is_finite() || bins == 0 || !lo.is_finite() {
            return invalid("histogram needs a positive bin width and at least one bin");
        }
        Ok(Self { lo, hi: lo + bins as f64 * bin_width, bin_width, counts: vec![0; bins], total: 0, underflow: 0, overflow: 0 })
    }

    pub fn add(&mut self, x: f64) {
        self.total += 1;
        if x < self.lo {
            self.underflow += 1;
            return;
        }
        let k = ((x - self.lo) / self.bin_width).floor() as usize;
        match self.counts.get_mut(k) {
            Some(c) => *c += 1,
            None => self.overflow += 1,
        }
    }

    pub fn bin_left(&self, k: usize) -> f64 {
        self.lo + k as f64 * self.bin_width
    }

    /// Counts divided by `total · bin_width`.
    pub fn density(&self) -> Vec<f64> {
        let norm = self.total as f64 * self.bin_width;
        self.counts.iter().map(|&c| c as f64 / norm).collect()
    }

    /// CSV with `#` metadata and `bin_left,density` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# bin_width={}\n# total={}", self.bin_width, self.total);
        let _ = writeln!(out, "# underflow={}\n# overflow={}", self.underflow, self.overflow);
        out.push_str("bin_left,density\n");
        for (k, d) in self.density().iter().enumerate() {
            let _ = writeln!(out, "{:.10e},{d:.10e}", self.bin_left(k));
        }
        out
    }
}

/// Per-eigenvalue histogram of all sampled values starting at 0, wide enough
/// to hold the largest value.
pub fn histogram_density(sample: &McSample, bin_width: f64, rescale: Rescale) -> Result<Histogram> {
    if sample.values().is_empty() {
        return Err(Error::EmptySample);
    }
    let scale = sample.spec.scale();
    let map = |s: f64| match rescale {
        Rescale::Raw => s,
        Rescale::Squared => s / scale,
        Rescale::SingularValue => (s / scale).sqrt(),
    };
    let max = sample.values().iter().map(|&s| map(s)).fold(0.0, f64::max);
    let bins = ((max / bin_width).floor() as usize + 1).max(1);
    let mut h = Histogram::new(0.0, bin_width, bins)?;
    for &s in sample.values() {
        h.add(map(s));
    }
    Ok(h)
}

/// Observed against expected counts for one bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinComparison {
    pub left: f64,
    pub observed: u64,
    pub expected: f64,
}

impl BinComparison {
    /// `|observed − expected| / √expected`.
    pub fn deviation(&self) -> f64 {
        (self.observed as f64 - self.expected).abs() / self.expected.sqrt()
    }
}

/// Expected counts from `total · ∫_bin density`, with a 12-point
/// Gauss–Legendre rule per bin.
pub fn compare_histogram<F: Fn(f64) -> Result<f64>>(h: &Histogram, density: F) -> Result<Vec<BinComparison>> {
    let gl = GaussLegendre::new(12);
    let mut out = Vec::with_capacity(h.counts.len());
    for (k, &observed) in h.counts.iter().enumerate() {
        let a = h.bin_left(k);
        let (x, w) = gl.composite(&[a, a + h.bin_width]);
        let mut mass = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            mass += wi * density(*xi)?;
        }
        out.push(BinComparison { left: a, observed, expected: h.total as f64 * mass });
    }
    Ok(out)
}
