//! Correlation kernels, determinantal correlation functions and the joint
//! density.

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::specfun::{meijer_g_m0_family, KahanSum};

use super::BiorthogonalSystem;

/// Largest relative error a kernel value may carry after cancellation.
const KERNEL_TOL: f64 = 1e-8;

/// One of the off-diagonal or lower-right blocks of the two-matrix kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubKernel {
    /// `K₁₂(s, t) = Σ p_n(s) q_n(t) / h_n`
    K12,
    /// `K₂₁(t, s) = Σ ψ_n(t) φ_n(s) / h_n − w(s, t)`
    K21,
    /// `K₂₂(t, t') = Σ ψ_n(t) q_n(t') / h_n`
    K22,
}

/// Points at which a `k`-point function is requested.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRequest {
    points: Vec<f64>,
}

impl CorrelationRequest {
    /// Points must be positive and pairwise distinct.
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return invalid("at least one point is required");
        }
        if points.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
            return invalid("correlation points must be positive and finite");
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return invalid(format!("coincident correlation points at {}", points[i]));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
}

fn det(mut m: DMatrix<f64>) -> f64 {
    // row scaling keeps the LU pivots in range
    let mut scale = 1.0;
    for mut row in m.row_iter_mut() {
        let r = row.amax();
        if r > 0.0 {
            row /= r;
            scale *= r;
        }
    }
    m.determinant() * scale
}

impl BiorthogonalSystem {
    fn n_terms(&self) -> usize {
        self.spec().n0()
    }

    fn inv_norms(&self) -> Vec<f64> {
        (0..self.n_terms()).map(|n| (-self.ln_norm(n)).exp()).collect()
    }

    /// `K₁₁(s_a, s_b) = Σ_{n<N₀} p_n(s_a) φ_n(s_b) / h_n`.
    pub fn kernel_k11(&self, s_a: f64, s_b: f64) -> Result<f64> {
        if !(s_a > 0.0 && s_b > 0.0) {
            return invalid("kernel arguments must be positive");
        }
        let n = self.n_terms();
        let p = self.poly_p_all(n, s_a);
        let phi = self.phi_scaled_with_error(n, s_b)?;
        let mut acc = KahanSum::new();
        let mut spread = 0.0;
        for (k, (&pk, &(f, err))) in p.iter().zip(&phi).enumerate() {
            acc.add(pk * f);
            // |p_k(-s)| is the sum of the moduli of its alternating terms
            spread += 4.0 * f64::EPSILON * self.poly_p(k, -s_a).abs() * f.abs() + pk.abs() * err;
        }
        let v = acc.value();
        let estimate = spread / v.abs();
        if !(estimate <= KERNEL_TOL) {
            return Err(Error::NonConvergence { what: "kernel sum cancellation", estimate, tol: KERNEL_TOL });
        }
        Ok(v)
    }

    /// One-point function `R₁(s) = K₁₁(s, s)`, normalised to `N₀`.
    pub fn density(&self, s: f64) -> Result<f64> {
        self.kernel_k11(s, s)
    }

    /// The remaining blocks of the two-matrix kernel. Arguments follow the
    /// block layout: `K12(s, t)`, `K21(t, s)`, `K22(t, t')`.
    pub fn sub_kernel(&self, which: SubKernel, x: f64, y: f64) -> Result<f64> {
        if !(x > 0.0 && y > 0.0) {
            return invalid("kernel arguments must be positive");
        }
        let n = self.n_terms();
        let inv = self.inv_norms();
        match which {
            SubKernel::K12 => {
                let p = self.poly_p_all(n, x);
                let q: Vec<f64> = (0..n).map(|k| self.poly_q(k, y) * inv[k]).collect();
                Ok(dot(&p, &q))
            }
            SubKernel::K21 => {
                let psi: Vec<f64> = (0..n).map(|k| self.psi(k, x)).collect();
                let phi = self.phi_scaled_all(n, y)?;
                Ok(dot(&psi, &phi) - self.weight(y, x)?)
            }
            SubKernel::K22 => {
                let psi: Vec<f64> = (0..n).map(|k| self.psi(k, x)).collect();
                let q: Vec<f64> = (0..n).map(|k| self.poly_q(k, y) * inv[k]).collect();
                Ok(dot(&psi, &q))
            }
        }
    }

    /// `R_k(s₁..s_k) = det[K₁₁(s_a, s_b)]`.
    pub fn correlation(&self, req: &CorrelationRequest) -> Result<f64> {
        let pts = req.points();
        let k = pts.len();
        if k > self.n_terms() {
            return invalid(format!("k = {k} exceeds N0 = {}", self.n_terms()));
        }
        let n = self.n_terms();
        let ps: Vec<Vec<f64>> = pts.iter().map(|&s| self.poly_p_all(n, s)).collect();
        let phis: Vec<Vec<f64>> = pts.iter().map(|&s| self.phi_scaled_all(n, s)).collect::<Result<_>>()?;
        let m = DMatrix::from_fn(k, k, |a, b| dot(&ps[a], &phis[b]));
        Ok(det(m))
    }

    /// `R_{k,ℓ}(s; t)` of the two-matrix model: the determinant of the block
    /// kernel with `s` in the first block and `t` in the second.
    pub fn correlation_two_matrix(&self, s: &[f64], t: &[f64]) -> Result<f64> {
        let (k, l) = (s.len(), t.len());
        let n = self.n_terms();
        if k > n || l > n {
            return invalid("block sizes must not exceed N0");
        }
        if s.iter().chain(t).any(|&x| !(x > 0.0)) {
            return invalid("correlation points must be positive");
        }
        let inv = self.inv_norms();
        let ps: Vec<Vec<f64>> = s.iter().map(|&x| self.poly_p_all(n, x)).collect();
        let phis: Vec<Vec<f64>> = s.iter().map(|&x| self.phi_scaled_all(n, x)).collect::<Result<_>>()?;
        let psis: Vec<Vec<f64>> = t.iter().map(|&y| (0..n).map(|j| self.psi(j, y)).collect()).collect();
        let qs: Vec<Vec<f64>> = t.iter().map(|&y| (0..n).map(|j| self.poly_q(j, y) * inv[j]).collect()).collect();
        let mut m = DMatrix::zeros(k + l, k + l);
        for a in 0..k {
            for b in 0..k {
                m[(a, b)] = dot(&ps[a], &phis[b]);
            }
            for j in 0..l {
                m[(a, k + j)] = dot(&ps[a], &qs[j]);
            }
        }
        for i in 0..l {
            for b in 0..k {
                m[(k + i, b)] = dot(&psis[i], &phis[b]) - self.weight(s[b], t[i])?;
            }
            for j in 0..l {
                m[(k + i, k + j)] = dot(&psis[i], &qs[j]);
            }
        }
        Ok(det(m))
    }

    /// Joint density of all `N₀` squared singular values,
    /// `C_M⁻¹ Δ(s) det[G^{M,0}_{0,M}(−; ν_M..ν₂, ν₁+b−1 | s_a)]`.
    /// Restricted to `N₀ ≤ 4`; it serves as an oracle.
    pub fn jpdf(&self, s: &[f64]) -> Result<f64> {
        let n = self.n_terms();
        if n > 4 {
            return invalid("the joint density is only provided for N0 <= 4");
        }
        if s.len() != n {
            return invalid(format!("expected {n} points, got {}", s.len()));
        }
        if s.iter().any(|&x| !(x > 0.0)) {
            return invalid("jpdf arguments must be positive");
        }
        let nu = self.spec().nu();
        let head: Vec<i64> = nu[1..].iter().rev().map(|&v| v as i64).collect();
        let mut m = DMatrix::zeros(n, n);
        for (a, &x) in s.iter().enumerate() {
            let row = meijer_g_m0_family(&head, nu[0] as i64, n, x, self.contour())?;
            for (b, v) in row.into_iter().enumerate() {
                m[(a, b)] = v;
            }
        }
        let mut vander = 1.0;
        for b in 0..n {
            for a in 0..b {
                vander *= s[b] - s[a];
            }
        }
        let ln_c = self.spec().ln_jpdf_constant();
        Ok(vander * det(m) * (-ln_c).exp())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = KahanSum::new();
    for (x, y) in a.iter().zip(b) {
        acc.add(x * y);
    }
    acc.value()
}
