use crate::error::{Error, Result};
use crate::specfun::KahanSum;

use super::McSample;

/// Per-eigenvalue mean `⟨(1/N₀) Σ_a f(s_a)⟩` and its jackknife standard error
/// over realizations.
pub fn mc_expectation<F: Fn(f64) -> f64>(sample: &McSample, observable: F) -> Result<(f64, f64)> {
    let n = sample.realizations();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let n0 = sample.spec.n0() as f64;
    let per: Vec<f64> = sample.rows().map(|row| row.iter().map(|&s| observable(s)).sum::<f64>() / n0).collect();
    let mut total = KahanSum::new();
    for &r in &per {
        total.add(r);
    }
    let sum = total.value();
    let mean = sum / n as f64;
    if n == 1 {
        return Ok((mean, f64::INFINITY));
    }
    let nf = n as f64;
    // leave-one-out means (sum − r_i)/(n − 1), whose mean is the full mean
    let mut sq = KahanSum::new();
    for &r in &per {
        let loo = (sum - r) / (nf - 1.0);
        sq.add((loo - mean).powi(2));
    }
    Ok((mean, ((nf - 1.0) / nf * sq.value()).sqrt()))
}

/// Two-sample Kolmogorov–Smirnov statistic and asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(|p, q| p.total_cmp(q));
    y.sort_by(|p, q| p.total_cmp(q));
    let (n, m) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let ne = (n * m / (n + m)).sqrt();
    let lambda = (ne + 0.12 + 0.11 / ne) * d;
    Ok(KsResult { statistic: d, p_value: kolmogorov_tail(lambda) })
}
