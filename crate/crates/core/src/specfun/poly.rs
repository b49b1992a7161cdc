//! Monic Laguerre polynomials and terminating generalised hypergeometric
//! polynomials.

use super::sum::KahanSum;

/// Monic associated Laguerre polynomial `L̃_n^ν(t) = (-1)^n n! L_n^ν(t)`.
///
/// Evaluated with the monic three-term recurrence
/// `L̃_{k+1} = (t - 2k - ν - 1) L̃_k - k (k + ν) L̃_{k-1}`.
pub fn laguerre_monic(n: u32, nu: u32, t: f64) -> f64 {
    let nu = nu as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = t - (nu + 1.0);
    for k in 1..n {
        let k = k as f64;
        let next = (t - (2.0 * k + nu + 1.0)) * cur - k * (k + nu) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All monic Laguerre values `L̃_0 .. L̃_{n_max}` at `t`.
pub fn laguerre_monic_all(n_max: u32, nu: u32, t: f64) -> Vec<f64> {
    let nu = nu as f64;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(t - (nu + 1.0));
    for k in 1..n_max as usize {
        let kf = k as f64;
        let next = (t - (2.0 * kf + nu + 1.0)) * out[k] - kf * (kf + nu) * out[k - 1];
        out.push(next);
    }
    out
}

/// `₁F_M(-n; 1+ν_M, ..., 1+ν_1; s)` by its finite sum with compensated
/// accumulation. The order of `shifts` is irrelevant.
pub fn hyper_1fm_poly(n: u32, shifts: &[u32], s: f64) -> f64 {
    let mut acc = KahanSum::new();
    let mut term = 1.0;
    acc.add(term);
    for k in 0..n {
        let kf = k as f64;
        let mut denom = kf + 1.0;
        for &nu in shifts {
            denom *= nu as f64 + 1.0 + kf;
        }
        term *= (kf - n as f64) * s / denom;
        acc.add(term);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::ln_factorial;

    /// Explicit Laguerre sum, used as an independent route, with its
    /// absolute-term scale (the sum cancels).
    fn laguerre_explicit(n: u32, nu: u32, t: f64) -> (f64, f64) {
        let terms: Vec<f64> = (0..=n)
            .map(|k| {
                let sign = if (n + k) % 2 == 0 { 1.0 } else { -1.0 };
                let ln = ln_factorial(n + nu) + ln_factorial(n)
                    - ln_factorial(n - k)
                    - ln_factorial(k + nu)
                    - ln_factorial(k);
                sign * ln.exp() * t.powi(k as i32)
            })
            .collect();
        (terms.iter().sum(), terms.iter().map(|x| x.abs()).sum())
    }

    #[test]
    fn low_order_values() {
        assert_eq!(laguerre_monic(0, 3, 17.0), 1.0);
        assert_eq!(laguerre_monic(1, 2, 5.0), 2.0);
        // t² - 4t + 2 at t = 1
        assert_eq!(laguerre_monic(2, 0, 1.0), -1.0);
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for n in 0..10 {
            for nu in [0, 1, 5] {
                for &t in &[0.1, 1.0, 3.5, 12.0] {
                    let a = laguerre_monic(n, nu, t);
                    let (b, scale) = laguerre_explicit(n, nu, t);
                    assert!((a - b).abs() <= 1e-13 * scale, "n={n} nu={nu} t={t}");
                }
            }
        }
    }

    #[test]
    fn leading_coefficient_is_one() {
        // L̃_n(t)/t^n -> 1
        let t = 1e8;
        for n in 1..6 {
            let r = laguerre_monic(n, 3, t) / t.powi(n as i32);
            assert!((r - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn all_matches_single() {
        let v = laguerre_monic_all(7, 2, 4.3);
        for (n, &x) in v.iter().enumerate() {
            assert_eq!(x, laguerre_monic(n as u32, 2, 4.3));
        }
    }

    #[test]
    fn hyper_trivial_cases() {
        assert_eq!(hyper_1fm_poly(7, &[1, 2], 0.0), 1.0);
        assert_eq!(hyper_1fm_poly(0, &[1, 2], 13.0), 1.0);
        // n = 1: 1 - s / ∏(1+ν)
        assert!((hyper_1fm_poly(1, &[1, 2], 6.0) - 0.0).abs() < 1e-15);
    }

    #[test]
    fn hyper_reduces_to_laguerre_at_one_factor() {
        // L̃_n^ν(s) = (-1)^n (n+ν)!/ν! ₁F₁(-n; 1+ν; s)
        for n in 0..9u32 {
            for nu in [0u32, 2, 7] {
                let mut s = 0.0;
                while s <= 20.0 {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let pref = (ln_factorial(n + nu) - ln_factorial(nu)).exp();
                    let a = sign * pref * hyper_1fm_poly(n, &[nu], s);
                    let b = laguerre_monic(n, nu, s);
                    assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "n={n} nu={nu} s={s}");
                    s += 0.5;
                }
            }
        }
    }
}
