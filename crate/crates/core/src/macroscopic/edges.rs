//! Support edges of the macroscopic density.

use crate::error::{Error, Result};

use super::roots::real_roots;
use super::MacroSpec;

/// Inner and outer edge together with the saddle points `û₀` producing them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeResult {
    pub s_minus: f64,
    pub s_plus: f64,
    /// In `[0, ν̂_min]`.
    pub u_minus: f64,
    /// Below `−1`.
    pub u_plus: f64,
}

/// Analytic brackets `lower₋ ≤ ŝ₋ ≤ upper₋` and `lower₊ ≤ ŝ₊ ≤ upper₊`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeBounds {
    pub lower_minus: f64,
    pub upper_minus: f64,
    pub lower_plus: f64,
    pub upper_plus: f64,
}

/// `ŝ(û) = û/(1+û) ∏(ν̂_m − û)/(ν̂_m + 1)`.
pub fn edge_relation(spec: &MacroSpec, u: f64) -> f64 {
    spec.nu_hat().iter().fold(u / (1.0 + u), |acc, &nu| acc * (nu - u) / (nu + 1.0))
}

/// Multiply ascending coefficients by `(a − u)`.
fn times_linear(c: &[f64], a: f64) -> Vec<f64> {
    let mut out = vec![0.0; c.len() + 1];
    for (k, &ck) in c.iter().enumerate() {
        out[k] += a * ck;
        out[k + 1] -= ck;
    }
    out
}

fn add_into(acc: &mut Vec<f64>, c: &[f64], weight: f64) {
    if acc.len() < c.len() {
        acc.resize(c.len(), 0.0);
    }
    for (a, &ck) in acc.iter_mut().zip(c) {
        *a += weight * ck;
    }
}

/// `û(û+1) Σ_d c_d ∏_{e≠d}(a_e − û) − ∏_d (a_d − û)^{…}` over the given
/// poles `a_d` with weights `c_d`.
fn saddle_polynomial(poles: &[(f64, f64)]) -> Vec<f64> {
    let mut sum = vec![0.0];
    for (d, &(_, weight)) in poles.iter().enumerate() {
        let mut term = vec![1.0];
        for (e, &(a, _)) in poles.iter().enumerate() {
            if e != d {
                term = times_linear(&term, a);
            }
        }
        add_into(&mut sum, &term, weight);
    }
    // û(û+1) = û + û²
    let mut lhs = vec![0.0; sum.len() + 2];
    for (k, &s) in sum.iter().enumerate() {
        lhs[k + 1] += s;
        lhs[k + 2] += s;
    }
    let mut prod = vec![1.0];
    for &(a, _) in poles {
        prod = times_linear(&prod, a);
    }
    add_into(&mut lhs, &prod, -1.0);
    while lhs.len() > 1 && *lhs.last().unwrap() == 0.0 {
        lhs.pop();
    }
    lhs
}

/// Ascending coefficients of the degree-`(M+1)` polynomial whose roots are the
/// saddle points, `û(û+1) Σ_m ∏_{j≠m}(ν̂_j − û) − ∏_m (ν̂_m − û)`.
pub fn edge_polynomial(spec: &MacroSpec) -> Vec<f64> {
    let poles: Vec<(f64, f64)> = spec.nu_hat().iter().map(|&v| (v, 1.0)).collect();
    saddle_polynomial(&poles)
}

/// Inner and outer edge from the real saddle points. Coinciding `ν̂` are
/// merged first, since each repeated value only adds a spurious root at the
/// pole itself.
pub fn edges(spec: &MacroSpec) -> Result<EdgeResult> {
    let mut poles: Vec<(f64, f64)> = Vec::new();
    for &v in spec.nu_hat() {
        match poles.iter_mut().find(|(a, _)| *a == v) {
            Some(p) => p.1 += 1.0,
            None => poles.push((v, 1.0)),
        }
    }
    let roots = real_roots(&saddle_polynomial(&poles))?;
    let real: Vec<f64> = roots.iter().filter(|z| z.im.abs() <= 1e-9 * (1.0 + z.re.abs())).map(|z| z.re).collect();
    let outer: Vec<f64> = real.iter().copied().filter(|&u| u < -1.0).collect();
    if outer.len() != 1 {
        return Err(Error::EdgeClassification(format!("{} saddle points below -1 for {spec}", outer.len())));
    }
    let nu_min = spec.nu_min();
    let u_minus = if nu_min == 0.0 {
        0.0
    } else {
        let inner: Vec<f64> = real.iter().copied().filter(|&u| (0.0..=nu_min).contains(&u)).collect();
        if inner.len() != 1 {
            return Err(Error::EdgeClassification(format!("{} saddle points in [0, nu_min] for {spec}", inner.len())));
        }
        inner[0]
    };
    let u_plus = outer[0];
    Ok(EdgeResult { s_minus: edge_relation(spec, u_minus), s_plus: edge_relation(spec, u_plus), u_minus, u_plus })
}

/// Closed-form edges `(ŝ₋, ŝ₊)` when all `ν̂_m` equal `nu_hat`. The inner
/// edge is written without the difference of nearly equal terms.
pub fn edges_degenerate(factors: usize, nu_hat: f64) -> (f64, f64) {
    let m = factors as f64;
    let root = ((m + 1.0).powi(2) + 4.0 * m * nu_hat).sqrt();
    let plus = (m + 1.0 + 2.0 * nu_hat + root) / (2.0 * (nu_hat + 1.0))
        * ((m + 1.0 + 2.0 * m * nu_hat + root) / (2.0 * m * (1.0 + nu_hat))).powi(factors as i32);
    let minus = 2.0 * nu_hat / (m + 1.0 + 2.0 * nu_hat + root)
        * (2.0 * m * nu_hat / (m + 1.0 + 2.0 * m * nu_hat + root)).powi(factors as i32);
    (minus, plus)
}

/// Brackets from replacing every `ν̂_m` by `ν̂_min` or `ν̂_max`.
pub fn edge_bounds(spec: &MacroSpec) -> EdgeBounds {
    let m = spec.factors();
    let (lo_min, hi_min) = edges_degenerate(m, spec.nu_min());
    let (lo_max, hi_max) = edges_degenerate(m, spec.nu_max());
    let ratio: f64 = spec.nu_hat().iter().map(|&v| v / (v + 1.0)).product();
    EdgeBounds { lower_minus: lo_min, upper_minus: ratio.min(lo_max), lower_plus: hi_max, upper_plus: hi_min }
}
