//! The resolvent `G(ẑ)` as a tracked root of its algebraic equation.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

use super::roots::{poly_roots, real_roots};
use super::MacroSpec;

/// Largest accepted ratio between the distances from the predicted value to
/// the nearest and to the second-nearest root.
const SEPARATION: f64 = 1.0 / 3.0;
/// Imaginary part, relative to `1 + |Re ẑ|`, at which tracking hands over to
/// the exact solve on the real axis.
const AXIS_GAP: f64 = 1e-10;

/// Real coefficients of `w ∏(w + ν̂_m)/(ν̂_m + 1)` in ascending powers of `w`.
fn product_coefficients(spec: &MacroSpec) -> Vec<f64> {
    let mut c = vec![0.0, 1.0];
    for &nu in spec.nu_hat() {
        let mut next = vec![0.0; c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k] += ck * nu / (nu + 1.0);
            next[k + 1] += ck / (nu + 1.0);
        }
        c = next;
    }
    c
}

/// Coefficients, ascending in `w = ẑG`, of
/// `w ∏(w + ν̂_m)/(ν̂_m + 1) − ẑ(w − 1)`.
pub fn resolvent_polynomial(spec: &MacroSpec, z: Complex64) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = product_coefficients(spec).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    c[0] += z;
    c[1] -= z;
    c
}

fn nearest(roots: &[Complex64], target: Complex64) -> (Complex64, f64, f64) {
    let mut best = (roots[0], f64::INFINITY, f64::INFINITY);
    for &r in roots {
        let d = (r - target).norm();
        if d < best.1 {
            best = (r, d, best.1);
        } else if d < best.2 {
            best.2 = d;
        }
    }
    best
}

/// Follow the physical root `w = ẑG` along `ẑ = x + iy` from `|y|` large,
/// where `w ≈ 1 + 1/ẑ`, down to `y_end` (same sign as the start).
fn track(spec: &MacroSpec, x: f64, y_end: f64) -> Result<Complex64> {
    let sign = y_end.signum();
    let scale = 1.0 + x.abs();
    let t_end = y_end.abs().ln();
    let mut t = (1e4 * scale).ln().max(t_end);
    let z0 = Complex64::new(x, sign * t.exp());
    let guess = 1.0 + 1.0 / z0;
    let roots = poly_roots(&resolvent_polynomial(spec, z0))?;
    let (mut w, d1, d2) = nearest(&roots, guess);
    if d1 > SEPARATION * d2 {
        return Err(Error::BranchTracking { re: z0.re, im: z0.im });
    }
    let mut slope = Complex64::new(0.0, 0.0);
    let mut dt: f64 = 0.5;
    while t > t_end {
        let step = dt.min(t - t_end);
        let t_new = t - step;
        let z = Complex64::new(x, sign * t_new.exp());
        let predicted = w - slope * step;
        let roots = poly_roots(&resolvent_polynomial(spec, z))?;
        let (r, d1, d2) = nearest(&roots, predicted);
        if d1 <= SEPARATION * d2 {
            slope = (w - r) / step;
            w = r;
            t = t_new;
            dt = (dt * 1.5).min(2.0);
        } else {
            dt *= 0.5;
            if dt < 1e-9 {
                return Err(Error::BranchTracking { re: z.re, im: z.im });
            }
        }
    }
    Ok(w)
}

/// `ẑG(ẑ)` at `ẑ = x − i0`, solved exactly on the axis and matched to the
/// root tracked down to just below it.
pub(crate) fn scaled_resolvent_below_axis(spec: &MacroSpec, x: f64) -> Result<Complex64> {
    let w = track(spec, x, -AXIS_GAP * (1.0 + x.abs()))?;
    let mut c: Vec<f64> = product_coefficients(spec);
    c[0] += x;
    c[1] -= x;
    let roots = real_roots(&c)?;
    Ok(nearest(&roots, w).0)
}

/// The resolvent `G(ẑ)`, the root of its algebraic equation connected to
/// `ẑG → 1` at infinity. A real `ẑ` is read as the limit from below.
pub fn resolvent(spec: &MacroSpec, z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
        return invalid(format!("resolvent argument must be finite and non-zero, got {z}"));
    }
    let w = if z.im == 0.0 {
        scaled_resolvent_below_axis(spec, z.re)?
    } else {
        track(spec, z.re, z.im)?
    };
    Ok(w / z)
}
