//! Gamma-function utilities: real and complex log-gamma, reciprocal gamma,
//! digamma and trigamma.
//!
//! Log-gamma uses upward recurrence to |z| >= 10 followed by the Stirling
//! series; the left half-plane is reached through the reflection formula.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const SHIFT_TO: f64 = 10.0;
const PSI_SHIFT_TO: f64 = 16.0;

// B_{2k} / (2k (2k-1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// True when `x` is a pole of the gamma function (0, -1, -2, ...).
#[inline]
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

fn stirling_real(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + series * inv
}

fn stirling_complex(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for &c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series * inv
}

/// `ζ(k)` for `k >= 2`: direct sum to 19 plus the Euler–Maclaurin tail at 20.
fn zeta(k: u32) -> f64 {
    let kf = k as f64;
    let n = 20.0f64;
    let mut acc = 0.0;
    for j in (1..20).rev() {
        acc += (j as f64).powf(-kf);
    }
    let nk = n.powf(-kf);
    acc + n * nk / (kf - 1.0) + 0.5 * nk + kf * nk / (12.0 * n)
        - kf * (kf + 1.0) * (kf + 2.0) * nk / (720.0 * n.powi(3))
        + kf * (kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0) * nk / (30240.0 * n.powi(5))
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const ZETA_TERMS: usize = 60;

/// Taylor coefficients `(-1)^k ζ(k)/k` of `ln Γ(1+ε) + γε`.
fn ln_gamma_taylor() -> &'static [f64; ZETA_TERMS] {
    static COEF: std::sync::OnceLock<[f64; ZETA_TERMS]> = std::sync::OnceLock::new();
    COEF.get_or_init(|| {
        let mut c = [0.0; ZETA_TERMS];
        for (k, slot) in c.iter_mut().enumerate().skip(2) {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *slot = sign * zeta(k as u32) / k as f64;
        }
        c
    })
}

/// `ln Γ(1+ε)` for `|ε| <= 1/2`, accurate relative to the value near its zeros.
fn ln_gamma_1p(eps: f64) -> f64 {
    let c = ln_gamma_taylor();
    let mut acc = 0.0;
    for k in (2..ZETA_TERMS).rev() {
        acc = (acc + c[k]) * eps;
    }
    (acc - EULER_GAMMA) * eps
}

/// `ln Γ(x)` for `x > 0`.
fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if (0.5..=1.5).contains(&x) {
        return ln_gamma_1p(x - 1.0);
    }
    if x > 1.5 && x <= 2.5 {
        return (x - 1.0).ln() + ln_gamma_1p(x - 2.0);
    }
    if x >= SHIFT_TO {
        return stirling_real(x);
    }
    let mut prod = 1.0;
    let mut y = x;
    while y < SHIFT_TO {
        prod *= y;
        y += 1.0;
    }
    stirling_real(y) - prod.ln()
}

/// `sin(πx)` with argument reduction so that large |x| keeps full accuracy.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x * 0.5).round();
    (PI * r).sin()
}

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_gamma_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x > 0.0 {
        return Ok((ln_gamma_pos(x), 1.0));
    }
    // Γ(x) Γ(1-x) = π / sin(πx), and Γ(1-x) > 0 here.
    let s = sin_pi(x);
    Ok((LN_PI - s.abs().ln() - ln_gamma_pos(1.0 - x), s.signum()))
}

/// Real log-gamma, `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    ln_gamma_pos(x)
}

/// `ln n!` for a non-negative integer.
pub fn ln_factorial(n: u32) -> f64 {
    ln_gamma_pos(n as f64 + 1.0)
}

/// `ln sin(w)` modulo `2πi`, stable for large |Im w|.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im >= 0.0 {
        let e = (2.0 * i * w).exp();
        -i * w + ((e - 1.0) / (2.0 * i)).ln()
    } else {
        let e = (-2.0 * i * w).exp();
        i * w + ((1.0 - e) / (2.0 * i)).ln()
    }
}

/// Principal branch of `ln Γ(z)` for complex `z` (analytic off the
/// non-positive real axis).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        let (l, s) = ln_gamma_signed(z.re)?;
        return Ok(Complex64::new(l, if s < 0.0 { PI } else { 0.0 }));
    }
    Ok(ln_gamma_complex(z))
}

/// Complex log-gamma without pole checks. The imaginary part is only
/// defined modulo `2π` in the left half-plane; callers exponentiate.
pub(crate) fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let w = PI * z;
        return LN_PI - ln_sin(w) - ln_gamma_complex(1.0 - z);
    }
    if z.norm_sqr() >= SHIFT_TO * SHIFT_TO {
        return stirling_complex(z);
    }
    let mut y = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while y.norm_sqr() < SHIFT_TO * SHIFT_TO {
        acc += y.ln();
        y += 1.0;
    }
    stirling_complex(y) - acc
}

/// `1/Γ(x)`; exactly zero at the poles of Γ.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if is_gamma_pole(x) {
        return 0.0;
    }
    if x > 0.0 {
        return (-ln_gamma_pos(x)).exp();
    }
    // 1/Γ(x) = Γ(1-x) sin(πx) / π
    let s = sin_pi(x);
    s * (ln_gamma_pos(1.0 - x) - LN_PI).exp()
}

/// Digamma `ψ(x)` for real non-pole `x`.
pub fn digamma(x: f64) -> f64 {
    if x <= 0.0 {
        // ψ(1-x) - ψ(x) = π cot(πx)
        let s = sin_pi(x);
        let c = {
            let r = x - 2.0 * (x * 0.5).round();
            (PI * r).cos()
        };
        return digamma(1.0 - x) - PI * c / s;
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < PSI_SHIFT_TO {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // -Σ B_{2k} / (2k y^{2k})
    let tail = inv2
        * (1.0 / 12.0
            - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    acc + y.ln() - 0.5 / y - tail
}

/// Trigamma `ψ'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut acc = 0.0;
    let mut y = x;
    while y < PSI_SHIFT_TO {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let tail = inv
        + 0.5 * inv2
        + inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0)));
    acc + tail
}
