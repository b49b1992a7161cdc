//! Closed-form moments `E{s^ℓ}` of the one-point function.

use crate::error::{Error, Result};
use crate::specfun::{ln_factorial, ln_gamma_signed, KahanSum};

use super::ProductSpec;

fn is_integer(x: f64) -> bool {
    x == x.round()
}

/// `ln|x|` and sign, tolerating exact zeros (returned as `-∞`).
fn ln_abs(x: f64) -> (f64, f64) {
    (x.abs().ln(), x.signum())
}

/// Single-sum form
/// `N₀ E{s^ℓ} = Σ_k (-1)^k / (k! Γ(ℓ-k) ℓ) ∏_{m=0}^M Γ(ℓ+N_m-k)/Γ(N_m-k)`.
/// Terms with `ℓ - k` at a pole of Γ vanish. Undefined at `ℓ = 0` and at
/// negative integers that hit a pole of the numerator.
pub fn moment_single_sum(spec: &ProductSpec, ell: f64) -> Result<f64> {
    let dims = spec.dims();
    let n0 = spec.n0();
    let mut acc = KahanSum::new();
    for k in 0..n0 {
        let kf = k as f64;
        if ell - kf <= 0.0 && is_integer(ell - kf) {
            // 1/Γ(ℓ-k) = 0
            continue;
        }
        let (lg, sg) = ln_gamma_signed(ell - kf)?;
        let (ll, sl) = ln_abs(ell);
        let mut ln = -ln_factorial(k as u32) - lg - ll;
        let mut sign = sg * sl * if k % 2 == 0 { 1.0 } else { -1.0 };
        for &nm in &dims {
            let (ln_num, s_num) = ln_gamma_signed(ell + (nm - k) as f64)?;
            ln += ln_num - ln_factorial((nm - k - 1) as u32);
            sign *= s_num;
        }
        acc.add(sign * ln.exp());
    }
    Ok(acc.value() / n0 as f64)
}

/// Alternative form, finite at negative integers above the divergence bound,
/// `N₀ E{s^ℓ} = Σ_k (-1)^{1+k} ∏_{j<N₀}(j-ℓ-k) / (k!(N₀-1-k)! ℓ) ∏_{m≥1} Γ(ℓ+ν_m+k+1)/Γ(ν_m+k+1)`.
pub fn moment_alternative(spec: &ProductSpec, ell: f64) -> Result<f64> {
    let n0 = spec.n0();
    let mut acc = KahanSum::new();
    for k in 0..n0 {
        let kf = k as f64;
        let mut prod = 1.0;
        for j in 0..n0 {
            prod *= j as f64 - ell - kf;
        }
        if prod == 0.0 {
            continue;
        }
        let (lp, sp) = ln_abs(prod);
        let (ll, sl) = ln_abs(ell);
        let mut ln = lp - ll - ln_factorial(k as u32) - ln_factorial((n0 - 1 - k) as u32);
        let mut sign = sp * sl * if k % 2 == 0 { -1.0 } else { 1.0 };
        for &v in spec.nu() {
            let (ln_num, s_num) = ln_gamma_signed(ell + v as f64 + kf + 1.0)?;
            ln += ln_num - ln_factorial(v + k as u32);
            sign *= s_num;
        }
        acc.add(sign * ln.exp());
    }
    Ok(acc.value() / n0 as f64)
}

/// `E{s^ℓ}` for real `ℓ`. The integral diverges at the origin for
/// `ℓ ≤ -ν_min - 1`, which is reported as an error for every real order
/// (the closed forms would otherwise return their analytic continuation).
pub fn moment(spec: &ProductSpec, ell: f64) -> Result<f64> {
    if !ell.is_finite() {
        return Err(Error::InvalidArgument(format!("moment order must be finite, got {ell}")));
    }
    let bound = -(spec.nu_min() as f64) - 1.0;
    if ell <= bound {
        return Err(Error::DivergentMoment { order: ell, bound });
    }
    if ell == 0.0 {
        return Ok(1.0);
    }
    if ell < 0.0 && is_integer(ell) {
        moment_alternative(spec, ell)
    } else {
        moment_single_sum(spec, ell)
    }
}

/// `E{s} = 𝒩_M = ∏ N_m`.
pub fn first_moment(spec: &ProductSpec) -> f64 {
    spec.scale()
}

/// `E{s⁻¹} = ∏ 1/ν_m`; diverges when any `ν_m = 0`.
pub fn inverse_moment(spec: &ProductSpec) -> Result<f64> {
    if spec.nu_min() == 0 {
        return Err(Error::DivergentMoment { order: -1.0, bound: -1.0 });
    }
    Ok(spec.nu().iter().map(|&v| 1.0 / v as f64).product())
}

/// `E{s²} = ½ ∏_{m≥1} N_m [∏_{m≥0}(N_m+1) − ∏_{m≥0}(N_m−1)]`.
pub fn second_moment(spec: &ProductSpec) -> f64 {
    let dims = spec.dims();
    let plus: f64 = dims.iter().map(|&n| n as f64 + 1.0).product();
    let minus: f64 = dims.iter().map(|&n| n as f64 - 1.0).product();
    0.5 * spec.scale() * (plus - minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, n0: usize, nu: &[u32]) -> ProductSpec {
        ProductSpec::new(m, n0, nu.to_vec()).unwrap()
    }

    #[test]
    fn normalisation_and_first_moments() {
        let s = spec(3, 5, &[5, 10, 15]);
        assert_eq!(moment(&s, 0.0).unwrap(), 1.0);
        assert!((moment(&s, 1.0).unwrap() - 3000.0).abs() < 1e-10 * 3000.0);
        assert!((moment(&s, -1.0).unwrap() - 1.0 / 750.0).abs() < 1e-10 / 750.0);
        assert!((inverse_moment(&s).unwrap() - 1.0 / 750.0).abs() < 1e-16);
    }

    #[test]
    fn second_moment_closed_form() {
        let s = spec(2, 2, &[0, 1]);
        assert_eq!(second_moment(&s), 102.0);
        assert!((moment(&s, 2.0).unwrap() - 102.0).abs() < 1e-10 * 102.0);
    }

    #[test]
    fn forms_agree_off_the_integers() {
        let s = spec(3, 4, &[1, 2, 3]);
        for &l in &[0.5, 1.5, 2.25, -0.5, -1.5, 3.7] {
            let a = moment_single_sum(&s, l).unwrap();
            let b = moment_alternative(&s, l).unwrap();
            assert!((a - b).abs() < 1e-11 * a.abs(), "l={l}: {a} vs {b}");
        }
    }

    #[test]
    fn divergence_is_reported() {
        let s = spec(2, 2, &[0, 1]);
        assert!(matches!(moment(&s, -1.0), Err(Error::DivergentMoment { .. })));
        assert!(matches!(moment(&s, -1.5), Err(Error::DivergentMoment { .. })));
        assert!(moment(&s, -0.5).is_ok());
        assert!(inverse_moment(&s).is_err());
    }

    #[test]
    fn laguerre_limit() {
        // M = 1, N₀ = 1: E{s^ℓ} = Γ(ℓ+ν+1)/Γ(ν+1)
        let s = spec(1, 1, &[2]);
        for &l in &[0.5, 1.0, 2.0, -1.0, -2.5] {
            let exact = (ln_gamma_signed(l + 3.0).unwrap().0 - ln_factorial(2)).exp();
            assert!((moment(&s, l).unwrap() - exact).abs() < 1e-13 * exact, "l={l}");
        }
    }

    #[test]
    fn permutation_symmetry() {
        let a = spec(3, 3, &[1, 2, 3]);
        let b = spec(3, 3, &[3, 1, 2]);
        for &l in &[0.5, 2.0, 3.0, -1.0] {
            let (x, y) = (moment(&a, l).unwrap(), moment(&b, l).unwrap());
            assert!((x - y).abs() <= 1e-12 * x.abs());
        }
    }
}
