//! Bi-orthogonal polynomials of the two-matrix model and their integral
//! transforms.

use crate::error::{invalid, Result};
use crate::specfun::{laguerre_monic, laguerre_monic_all, ln_factorial, meijer_g, meijer_g_m0, meijer_g_m0_family, meijer_g_m1_family};
use crate::specfun::{ContourConfig, KahanSum, MeijerGParams};

use super::ProductSpec;

/// `ln I_ij`, the bimoment of the weight. For `M = 1` the Laguerre bimoment
/// `(i+j+ν₁)!` is returned.
pub fn bimoment(spec: &ProductSpec, i: u32, j: u32) -> f64 {
    let nu = spec.nu();
    ln_factorial(i + j + nu[0]) + nu[1..].iter().map(|&v| ln_factorial(i + v)).sum::<f64>()
}

/// Laguerre weight `s^ν e^{-s}` that replaces the two-variable weight at `M = 1`.
pub fn laguerre_weight(nu: u32, s: f64) -> f64 {
    (nu as f64 * s.ln() - s).exp()
}

/// Polynomials, norms and transforms for one [`ProductSpec`]. Immutable once
/// built, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct BiorthogonalSystem {
    spec: ProductSpec,
    ln_norms: Vec<f64>,
    cfg: ContourConfig,
}

impl BiorthogonalSystem {
    pub fn new(spec: ProductSpec) -> Self {
        Self::with_config(spec, ContourConfig::default())
    }

    pub fn with_config(spec: ProductSpec, cfg: ContourConfig) -> Self {
        let ln_norms = (0..=spec.n0()).map(|n| spec.ln_norm(n)).collect();
        Self { spec, ln_norms, cfg }
    }

    pub fn spec(&self) -> &ProductSpec {
        &self.spec
    }

    pub fn contour(&self) -> &ContourConfig {
        &self.cfg
    }

    /// `ln h_n` for `n = 0..=N₀`.
    pub fn ln_norms(&self) -> &[f64] {
        &self.ln_norms
    }

    pub fn ln_norm(&self, n: usize) -> f64 {
        if n < self.ln_norms.len() {
            self.ln_norms[n]
        } else {
            self.spec.ln_norm(n)
        }
    }

    fn nu1(&self) -> u32 {
        self.spec.nu()[0]
    }

    /// `ν_M, .., ν₂`: the lower parameters shared by every weight-class G.
    fn head(&self) -> Vec<i64> {
        self.spec.nu()[1..].iter().rev().map(|&v| v as i64).collect()
    }

    /// `w(s,t) = t^{ν₁-1} e^{-t} G^{M-1,0}_{0,M-1}(−; ν_M..ν₂ | s/t)` for `M ≥ 2`.
    pub fn weight(&self, s: f64, t: f64) -> Result<f64> {
        if self.spec.factors() == 1 {
            return invalid("the two-variable weight is singular at M = 1; use laguerre_weight");
        }
        if !(s > 0.0 && t > 0.0) {
            return invalid("weight arguments must be positive");
        }
        let x = s / t;
        let ln_pref = (self.nu1() as f64 - 1.0) * t.ln() - t;
        if self.spec.factors() == 2 {
            let b = self.spec.nu()[1] as f64;
            return Ok((ln_pref + b * x.ln() - x).exp());
        }
        let g = meijer_g_m0(&self.head(), x, &self.cfg)?;
        Ok(ln_pref.exp() * g)
    }

    /// Coefficient of `s^k` in `p_n`, as (ln|c|, sign).
    fn p_coefficient(&self, n: u32, k: u32) -> (f64, f64) {
        let mut ln = ln_factorial(n) - ln_factorial(n - k) - ln_factorial(k);
        for &v in self.spec.nu() {
            ln += ln_factorial(n + v) - ln_factorial(k + v);
        }
        (ln, if (n + k) % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Monic `p_n(s)` from its explicit sum. Equals `L̃_n^{ν₁}` at `M = 1`.
    pub fn poly_p(&self, n: usize, s: f64) -> f64 {
        if self.spec.factors() == 1 {
            return laguerre_monic(n as u32, self.nu1(), s);
        }
        let n = n as u32;
        let mut acc = KahanSum::new();
        let ln_s = s.abs().ln();
        let neg = s < 0.0;
        for k in 0..=n {
            let (ln_c, mut sign) = self.p_coefficient(n, k);
            if k > 0 && s == 0.0 {
                continue;
            }
            if neg && k % 2 == 1 {
                sign = -sign;
            }
            let ln_term = if k == 0 { ln_c } else { ln_c + k as f64 * ln_s };
            acc.add(sign * ln_term.exp());
        }
        acc.value()
    }

    /// `p_0(s) .. p_{count-1}(s)`.
    pub fn poly_p_all(&self, count: usize, s: f64) -> Vec<f64> {
        if self.spec.factors() == 1 {
            if count == 0 {
                return Vec::new();
            }
            return laguerre_monic_all(count as u32 - 1, self.nu1(), s);
        }
        (0..count).map(|n| self.poly_p(n, s)).collect()
    }

    /// `q_n(t) = L̃_n^{ν₁}(t)`, independent of `ν₂..ν_M`.
    pub fn poly_q(&self, n: usize, t: f64) -> f64 {
        laguerre_monic(n as u32, self.nu1(), t)
    }

    /// `ψ_n(t) = ∏_{m≥2} (n+ν_m)! · t^{ν₁} e^{-t} L̃_n^{ν₁}(t)`.
    pub fn psi(&self, n: usize, t: f64) -> f64 {
        let ln_pref: f64 = self.spec.nu()[1..].iter().map(|&v| ln_factorial(n as u32 + v)).sum();
        (ln_pref + self.nu1() as f64 * t.ln() - t).exp() * self.poly_q(n, t)
    }

    /// `ln(B_nk / h_n)` and sign, where `φ_n = Σ_k B_nk G^{M,0}(ν_M..ν₂, ν₁+k)`.
    fn phi_coefficient(&self, n: u32, k: u32) -> (f64, f64) {
        let nu1 = self.nu1();
        let ln = ln_factorial(n) + ln_factorial(n + nu1)
            - ln_factorial(n - k)
            - ln_factorial(k)
            - ln_factorial(k + nu1)
            - self.ln_norm(n as usize);
        (ln, if (n + k) % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// `φ_n(s) / h_n` for `n = 0..count` from the compact representation,
    /// all orders sharing one contour.
    pub fn phi_scaled_all(&self, count: usize, s: f64) -> Result<Vec<f64>> {
        Ok(self.phi_scaled_with_error(count, s)?.into_iter().map(|(v, _)| v).collect())
    }

    /// `φ_n/h_n` paired with an absolute error estimate.
    pub(crate) fn phi_scaled_with_error(&self, count: usize, s: f64) -> Result<Vec<(f64, f64)>> {
        if !(s > 0.0) {
            return invalid(format!("φ requires s > 0, got {s}"));
        }
        if count == 0 {
            return Ok(Vec::new());
        }
        if self.spec.factors() == 1 {
            let lag = laguerre_monic_all(count as u32 - 1, self.nu1(), s);
            let w = laguerre_weight(self.nu1(), s);
            return Ok(lag
                .iter()
                .enumerate()
                .map(|(n, l)| {
                    let v = w * l * (-self.ln_norm(n)).exp();
                    (v, 4.0 * (n + 1) as f64 * f64::EPSILON * v.abs())
                })
                .collect());
        }
        let b: Vec<i64> = self.spec.nu().iter().rev().map(|&v| v as i64).collect();
        let g = meijer_g_m1_family(&b, count, s, &self.cfg)?;
        Ok(g.into_iter()
            .enumerate()
            .map(|(n, (v, err))| {
                let inv_h = (-self.ln_norm(n)).exp();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                (sign * v * inv_h, err * inv_h)
            })
            .collect())
    }

    /// `φ_n(s)` from the finite sum over weight-class G functions. Independent
    /// of [`phi_scaled_all`](Self::phi_scaled_all); used as a cross-check.
    pub fn phi(&self, n: usize, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return invalid(format!("φ requires s > 0, got {s}"));
        }
        if self.spec.factors() == 1 {
            return Ok(laguerre_weight(self.nu1(), s) * laguerre_monic(n as u32, self.nu1(), s));
        }
        let g = meijer_g_m0_family(&self.head(), self.nu1() as i64, n + 1, s, &self.cfg)?;
        let mut acc = KahanSum::new();
        for k in 0..=n as u32 {
            let (ln_c, sign) = self.phi_coefficient(n as u32, k);
            acc.add(sign * (ln_c + self.ln_norm(n)).exp() * g[k as usize]);
        }
        Ok(acc.value())
    }

    /// `φ_n(s) = (-1)^n G^{M,1}_{1,M+1}(-n; ν_M..ν₁, 0 | s)` by direct contour
    /// integration. Independent of [`phi`](Self::phi); used as a cross-check.
    pub fn phi_compact(&self, n: usize, s: f64) -> Result<f64> {
        let m = self.spec.factors();
        let mut b: Vec<i64> = self.spec.nu().iter().rev().map(|&v| v as i64).collect();
        b.push(0);
        let params = MeijerGParams::new(m, 1, vec![-(n as i64)], b)?;
        let g = meijer_g(&params, s, &self.cfg)?;
        Ok(if n % 2 == 0 { g } else { -g })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(m: usize, n0: usize, nu: &[u32]) -> BiorthogonalSystem {
        BiorthogonalSystem::new(ProductSpec::new(m, n0, nu.to_vec()).unwrap())
    }

    #[test]
    fn bimoment_values() {
        let s = ProductSpec::new(2, 2, vec![0, 0]).unwrap();
        assert_eq!(bimoment(&s, 0, 0), 0.0);
        let s = ProductSpec::new(1, 3, vec![2]).unwrap();
        assert!((bimoment(&s, 1, 2).exp() - 120.0).abs() < 1e-10);
    }

    #[test]
    fn low_order_polynomials() {
        let b = sys(2, 3, &[1, 2]);
        assert_eq!(b.poly_p(0, 3.3), 1.0);
        for &s in &[0.0, 1.0, 7.5] {
            assert!((b.poly_p(1, s) - (s - 6.0)).abs() < 1e-12);
        }
        let q = sys(2, 3, &[0, 4]);
        assert!((q.poly_q(2, 1.0) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn p_is_laguerre_at_one_factor() {
        let one = sys(1, 6, &[3]);
        for n in 0..6 {
            for &s in &[0.2, 2.0, 9.0] {
                let l = laguerre_monic(n as u32, 3, s);
                assert!((one.poly_p(n, s) - l).abs() <= 1e-12 * l.abs().max(1.0));
            }
        }
    }

    #[test]
    fn p_matches_hypergeometric_form() {
        // p_n = (-1)^n ∏ (n+ν_m)!/ν_m! · ₁F_M(-n; 1+ν; s)
        let b = sys(3, 5, &[1, 0, 4]);
        for n in 0..5u32 {
            let pref: f64 = [1u32, 0, 4].iter().map(|&v| ln_factorial(n + v) - ln_factorial(v)).sum::<f64>().exp();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for &s in &[0.5, 3.0, 40.0] {
                let f = sign * pref * crate::specfun::hyper_1fm_poly(n, &[1, 0, 4], s);
                let p = b.poly_p(n as usize, s);
                assert!((f - p).abs() <= 1e-11 * p.abs().max(pref), "n={n} s={s}: {f} vs {p}");
            }
        }
    }

    #[test]
    fn phi_at_one_factor_is_exponential() {
        let b = sys(1, 1, &[0]);
        for &s in &[0.1, 1.0, 5.0] {
            assert!((b.phi(0, s).unwrap() - (-s).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn phi_representations_agree() {
        let b = sys(2, 3, &[1, 3]);
        for &s in &[0.5, 2.0, 10.0] {
            let long = b.phi(2, s).unwrap();
            let compact = b.phi_compact(2, s).unwrap();
            assert!((long - compact).abs() <= 1e-8 * compact.abs(), "s={s}: {long} vs {compact}");
        }
    }

    #[test]
    fn phi_is_symmetric_in_nu() {
        let a = sys(3, 4, &[2, 0, 5]);
        let b = sys(3, 4, &[5, 2, 0]);
        for n in 0..4 {
            for &s in &[0.3, 4.0, 25.0] {
                let x = a.phi(n, s).unwrap();
                let y = b.phi(n, s).unwrap();
                assert!((x - y).abs() <= 1e-10 * x.abs().max(y.abs()), "n={n} s={s}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn weight_reduces_at_two_factors() {
        let b = sys(2, 2, &[0, 3]);
        let (s, t): (f64, f64) = (1.7, 0.6);
        let expect = t.recip() * (-t).exp() * (s / t).powi(3) * (-s / t).exp();
        assert!((b.weight(s, t).unwrap() - expect).abs() < 1e-14 * expect);
        assert!(sys(1, 2, &[2]).weight(1.0, 1.0).is_err());
        assert!((laguerre_weight(2, 1.5) - 2.25 * (-1.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn shared_contour_matches_long_sum() {
        let b = sys(3, 6, &[6, 12, 18]);
        for &s in &[20.0, 900.0, 4000.0] {
            let all = b.phi_scaled_all(6, s).unwrap();
            for (n, v) in all.iter().enumerate() {
                let long = b.phi(n, s).unwrap() * (-b.ln_norm(n)).exp();
                assert!((v - long).abs() <= 1e-8 * v.abs(), "n={n} s={s}: {v} vs {long}");
            }
        }
    }
}
