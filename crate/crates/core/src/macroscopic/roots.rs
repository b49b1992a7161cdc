//! Roots of low-degree polynomials through companion-matrix eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..4 {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        // stop once Newton no longer decreases the residual
        if horner(coeffs, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

fn companion(coeffs: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    if lead.norm() == 0.0 {
        return invalid("leading coefficient vanishes");
    }
    let mut m = DMatrix::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    Ok(m)
}

/// All complex roots of `Σ c_k z^k` (coefficients in ascending order),
/// refined by Newton steps on the original polynomial.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    if coeffs.len() < 2 {
        return invalid("a polynomial of degree at least one is required");
    }
    let m = companion(coeffs)?;
    let eig = m
        .eigenvalues()
        .ok_or(Error::NonConvergence { what: "companion eigenvalues", estimate: f64::NAN, tol: 0.0 })?;
    Ok(eig.iter().map(|&z| polish(coeffs, z)).collect())
}

/// Roots of a real polynomial. Real roots are returned with exactly zero
/// imaginary part and complex ones in conjugate pairs.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return invalid("a polynomial of degree at least one is required");
    }
    let lead = coeffs[deg];
    if lead == 0.0 {
        return invalid("leading coefficient vanishes");
    }
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    let cc: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    Ok(m.complex_eigenvalues()
        .iter()
        .map(|&z| {
            if z.im == 0.0 {
                Complex64::new(polish(&cc, z).re, 0.0)
            } else {
                polish(&cc, z)
            }
        })
        .collect())
}
