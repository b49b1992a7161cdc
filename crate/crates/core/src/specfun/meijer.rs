//! Meijer G-function for integer parameters.
//!
//! ```text
//!                    1    ⌠      ∏_{i≤m} Γ(b_i - u) ∏_{i≤n} Γ(1 - a_i + u)
//! G^{m,n}_{p,q}  = ───── │ z^u ──────────────────────────────────────────── du
//!                  2πi   ⌡ L    ∏_{i>n} Γ(a_i - u) ∏_{i>m} Γ(1 - b_i + u)
//! ```
//!
//! Classes whose integrand decays along vertical lines are evaluated by the
//! trapezoidal rule on `Re u = c`. The rule is spectrally accurate because
//! the integrand is analytic in a strip around the line and decays like
//! `exp(-δ|t|)`. Poles of higher order (repeated `b`) need no special
//! treatment. The class `G^{1,0}_{1,q}`, whose integrand grows along vertical
//! lines, has finitely many poles and is summed by residues.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{digamma, ln_gamma_complex, ln_gamma_signed, reciprocal_gamma, trigamma};
use super::sum::KahanSum;
use crate::error::{Error, Result};

/// Integer parameter lists and shape of a G-function instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeijerGParams {
    pub m: usize,
    pub n: usize,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

/// Shape families that occur in the finite-size theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    /// `(M,0,0,M)`, including `(1,0,0,1)`.
    Weight,
    /// `(1,0,1,M+1)`: a polynomial.
    Polynomial,
    /// `(M,1,1,M+1)`
    Biorthogonal,
    /// `(M+2,1,2,M+2)`
    MutualInfoTriple,
    /// `(M+2,2,3,M+3)`
    MutualInfoDouble,
    /// `(1,2,2,2)`
    Logarithm,
}

impl ShapeClass {
    pub fn of(m: usize, n: usize, p: usize, q: usize) -> Option<Self> {
        match (m, n, p, q) {
            (1, 2, 2, 2) => Some(Self::Logarithm),
            (m, 0, 0, q) if m == q && m >= 1 => Some(Self::Weight),
            (1, 0, 1, q) if q >= 2 => Some(Self::Polynomial),
            (m, 1, 1, q) if q == m + 1 && m >= 1 => Some(Self::Biorthogonal),
            (m, 1, 2, q) if q == m && m >= 3 => Some(Self::MutualInfoTriple),
            (m, 2, 3, q) if q == m + 1 && m >= 3 => Some(Self::MutualInfoDouble),
            _ => None,
        }
    }
}

impl MeijerGParams {
    pub fn new(m: usize, n: usize, a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        let (p, q) = (a.len(), b.len());
        if m > q || n > p || ShapeClass::of(m, n, p, q).is_none() {
            return Err(Error::UnsupportedShape { m, n, p, q });
        }
        Ok(Self { m, n, a, b })
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn class(&self) -> ShapeClass {
        ShapeClass::of(self.m, self.n, self.p(), self.q()).expect("validated at construction")
    }

    /// Parameters after `z^ρ G(a; b | z) = G(a+ρ; b+ρ | z)`.
    pub fn shifted(&self, rho: i64) -> Self {
        Self {
            m: self.m,
            n: self.n,
            a: self.a.iter().map(|x| x + rho).collect(),
            b: self.b.iter().map(|x| x + rho).collect(),
        }
    }

    fn shape_err(&self) -> Error {
        Error::PoleSeparation { m: self.m, n: self.n, p: self.p(), q: self.q() }
    }

    /// Log of the Mellin–Barnes integrand at `u` (imaginary part mod 2π).
    fn ln_integrand(&self, u: Complex64, ln_z: f64) -> Complex64 {
        let mut acc = u * ln_z;
        for (i, &b) in self.b.iter().enumerate() {
            if i < self.m {
                acc += ln_gamma_complex(b as f64 - u);
            } else {
                acc -= ln_gamma_complex(1.0 - b as f64 + u);
            }
        }
        for (i, &a) in self.a.iter().enumerate() {
            if i < self.n {
                acc += ln_gamma_complex(1.0 - a as f64 + u);
            } else {
                acc -= ln_gamma_complex(a as f64 - u);
            }
        }
        acc
    }

    /// Exponential decay rate of the integrand along a vertical line.
    fn decay_rate(&self) -> f64 {
        0.5 * PI * (2 * self.m + 2 * self.n) as f64 - 0.5 * PI * (self.p() + self.q()) as f64
    }
}

/// Settings for the vertical-line quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    /// Real part of the integration line; `None` picks it automatically.
    pub offset: Option<f64>,
    /// Initial truncation of the imaginary range; doubled until the tail is negligible.
    pub half_length: f64,
    /// Node budget for one half-line.
    pub nodes: usize,
    /// Target error relative to `∫|integrand|`, the scale on which cancellation happens.
    pub tol: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self { offset: None, half_length: 4.0, nodes: 1 << 16, tol: 1e-14 }
    }
}

impl ContourConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_length > 0.0) || self.nodes < 64 || !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("invalid contour configuration {self:?}")));
        }
        if let Some(c) = self.offset {
            if !c.is_finite() {
                return Err(Error::InvalidArgument("contour offset must be finite".into()));
            }
        }
        Ok(())
    }
}

/// Surviving pole structure of an integer-parameter integrand.
#[derive(Debug, Clone)]
struct PoleMap {
    /// Admissible open interval for the line: every surviving left pole is
    /// `<= lo`, every surviving right pole is `>= hi`.
    lo: f64,
    hi: f64,
    /// Integer locations of all surviving poles inside the scanned window.
    poles: Vec<i64>,
    scan: (i64, i64),
}

impl PoleMap {
    fn new(p: &MeijerGParams) -> Result<Self> {
        let all = p.a.iter().chain(p.b.iter());
        let lo_scan = all.clone().copied().min().unwrap_or(0) - 2;
        let hi_scan = all.copied().max().unwrap_or(0) + 2;
        // (left-type survivors, right-type survivors) at integer u
        let counts = |u: i64| -> (usize, usize) {
            let r = p.b[..p.m].iter().filter(|&&b| u >= b).count();
            let l = p.a[..p.n].iter().filter(|&&a| u <= a - 1).count();
            let dr = p.a[p.n..].iter().filter(|&&a| u >= a).count();
            let dl = p.b[p.m..].iter().filter(|&&b| u <= b - 1).count();
            let l1 = l - l.min(dl);
            let extra_dl = dl - l.min(dl);
            let r1 = r - r.min(dr);
            let extra_dr = dr - r.min(dr);
            (l1 - l1.min(extra_dr), r1 - r1.min(extra_dl))
        };
        let (l_top, _) = counts(hi_scan);
        let (_, r_bottom) = counts(lo_scan);
        if l_top > 0 || r_bottom > 0 {
            return Err(p.shape_err());
        }
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let mut poles = Vec::new();
        for u in lo_scan..=hi_scan {
            let (l, r) = counts(u);
            if l > 0 {
                lo = lo.max(u as f64);
            }
            if r > 0 && (u as f64) < hi {
                hi = u as f64;
            }
            if l + r > 0 {
                poles.push(u);
            }
        }
        if lo >= hi {
            return Err(p.shape_err());
        }
        Ok(Self { lo, hi, poles, scan: (lo_scan, hi_scan) })
    }

    /// Distance from `c` to the nearest surviving pole.
    fn strip(&self, c: f64) -> f64 {
        let mut d = f64::INFINITY;
        for &u in &self.poles {
            d = d.min((u as f64 - c).abs());
        }
        // families continue past the scanned window
        if self.hi.is_finite() && self.hi as i64 >= self.scan.1 {
            d = d.min(self.hi - c);
        }
        if self.lo.is_finite() && self.lo as i64 <= self.scan.0 {
            d = d.min(c - self.lo);
        }
        d
    }
}

/// Raw trapezoid result with the information callers need to judge accuracy.
#[derive(Debug, Clone)]
struct LineIntegral {
    /// Integral values divided by `exp(ln_scale)`.
    values: Vec<f64>,
    /// `∫|integrand|` for each value, same scaling.
    l1: Vec<f64>,
    ln_scale: f64,
    error: f64,
}

/// Trapezoidal rule for `(1/π) ∫_0^∞ Re[F_k(c+it)] dt`, `k = 0..count`,
/// where `F_k = exp(ln_f) * poly_k` with polynomial factors supplied by
/// `factors(u, out)`.
fn line_trapezoid<L, P>(
    c: f64,
    strip: f64,
    decay: f64,
    count: usize,
    cfg: &ContourConfig,
    ln_f: L,
    factors: P,
) -> Result<LineIntegral>
where
    L: Fn(Complex64) -> Complex64,
    P: Fn(Complex64, &mut [Complex64]),
{
    let ln_scale = ln_f(Complex64::new(c, 0.0)).re;
    if !ln_scale.is_finite() {
        return Err(Error::NonConvergence { what: "contour scaling", estimate: f64::INFINITY, tol: cfg.tol });
    }
    // exp(ln_f − ln_scale) carries a relative round-off of about eps·|ln_scale|
    let tol = cfg.tol.max(16.0 * f64::EPSILON * (1.0 + ln_scale.abs()));
    let mut buf = vec![Complex64::new(0.0, 0.0); count];
    let eval = |t: f64, buf: &mut [Complex64]| -> f64 {
        let u = Complex64::new(c, t);
        let f = (ln_f(u) - ln_scale).exp();
        factors(u, buf);
        for x in buf.iter_mut() {
            *x *= f;
        }
        f.norm()
    };

    // Gaussian width of the integrand around t = 0.
    let probe = 0.05;
    let drop = ln_scale - ln_f(Complex64::new(c, probe)).re;
    let curvature = 2.0 * drop / (probe * probe);
    let sigma = if curvature > 1e-6 { curvature.sqrt().recip() } else { 4.0 };

    // Truncation: grow T until the exponential tail is negligible.
    let mut t_max = cfg.half_length.max(6.0 * sigma);
    loop {
        let tail = eval(t_max, &mut buf) / decay;
        if tail <= 1e-3 * cfg.tol * sigma.min(1.0) {
            break;
        }
        t_max *= 2.0;
        if t_max > 1e4 {
            return Err(Error::NonConvergence { what: "contour truncation", estimate: tail, tol: cfg.tol });
        }
    }

    let mut h = (0.25 * strip).min(0.5 * sigma).min(0.5);
    let mut n_nodes = (t_max / h).ceil() as usize;
    if n_nodes > cfg.nodes {
        return Err(Error::NonConvergence { what: "contour quadrature", estimate: f64::INFINITY, tol: cfg.tol });
    }
    let mut sums = vec![KahanSum::new(); count];
    let mut abs_sums = vec![0.0; count];
    {
        eval(0.0, &mut buf);
        for k in 0..count {
            sums[k].add(0.5 * buf[k].re);
            abs_sums[k] += 0.5 * buf[k].norm();
        }
        for j in 1..=n_nodes {
            eval(j as f64 * h, &mut buf);
            for k in 0..count {
                sums[k].add(buf[k].re);
                abs_sums[k] += buf[k].norm();
            }
        }
    }
    let mut estimate: Vec<f64> = sums.iter().map(|s| s.value() * h / PI).collect();
    loop {
        // add midpoints
        let mut mid = vec![KahanSum::new(); count];
        let mut mid_abs = vec![0.0; count];
        for j in 0..n_nodes {
            eval((j as f64 + 0.5) * h, &mut buf);
            for k in 0..count {
                mid[k].add(buf[k].re);
                mid_abs[k] += buf[k].norm();
            }
        }
        for k in 0..count {
            sums[k].merge(&mid[k]);
            abs_sums[k] += mid_abs[k];
        }
        h *= 0.5;
        n_nodes *= 2;
        let refined: Vec<f64> = sums.iter().map(|s| s.value() * h / PI).collect();
        let l1: Vec<f64> = abs_sums.iter().map(|a| a * h / PI).collect();
        let mut worst = 0.0f64;
        for k in 0..count {
            let diff = (refined[k] - estimate[k]).abs();
            worst = worst.max(diff / l1[k].max(f64::MIN_POSITIVE));
        }
        estimate = refined;
        if worst <= tol {
            return Ok(LineIntegral { values: estimate, l1, ln_scale, error: worst });
        }
        if 2 * n_nodes > cfg.nodes {
            return Err(Error::NonConvergence { what: "contour quadrature", estimate: worst, tol });
        }
    }
}

/// Real part of the line integrand, used to place the line.
fn ln_abs_on_axis(p: &MeijerGParams, c: f64, ln_z: f64) -> f64 {
    p.ln_integrand(Complex64::new(c, 0.0), ln_z).re
}

/// Offset for the weight class: the real saddle of `x^c ∏Γ(b_i - c)`,
/// kept at least half a unit left of the first pole. A smaller margin is
/// used for tiny arguments, where `x^{c - b_min}` would amplify cancellation.
fn weight_offset(b: &[f64], ln_x: f64) -> f64 {
    let b_min = b.iter().copied().fold(f64::INFINITY, f64::min);
    let margin = if ln_x < -2.0 * std::f64::consts::LN_10 {
        (std::f64::consts::LN_10 / -ln_x).clamp(0.02, 0.5)
    } else {
        0.5
    };
    let right = b_min - margin;
    let slope = |c: f64| ln_x - b.iter().map(|&bi| digamma(bi - c)).sum::<f64>();
    if slope(right) <= 0.0 {
        return right;
    }
    // bracket the root of the slope to the left
    let mut step = 1.0;
    let mut left = right - step;
    while slope(left) > 0.0 {
        step *= 2.0;
        left = right - step;
    }
    let mut hi = right;
    let mut lo = left;
    let mut c = 0.5 * (lo + hi);
    for _ in 0..100 {
        let s = slope(c);
        if s > 0.0 {
            hi = c;
        } else {
            lo = c;
        }
        let curv: f64 = b.iter().map(|&bi| trigamma(bi - c)).sum();
        let newton = c + s / curv;
        c = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if hi - lo < 1e-10 * (1.0 + c.abs()) || s.abs() < 1e-12 {
            break;
        }
    }
    c
}

fn choose_offset(p: &MeijerGParams, poles: &PoleMap, ln_z: f64) -> f64 {
    if p.class() == ShapeClass::Weight {
        let b: Vec<f64> = p.b.iter().map(|&x| x as f64).collect();
        return weight_offset(&b, ln_z);
    }
    if poles.lo.is_finite() && poles.hi.is_finite() {
        // half-integers avoid both poles and zeros of the integrand
        let first = poles.lo + 0.5;
        let mut best = first;
        let mut best_cost = f64::INFINITY;
        let mut c = first;
        while c < poles.hi && c < first + 64.0 {
            let cost = [0.0, 0.5, 1.0, 2.0]
                .iter()
                .map(|&t| p.ln_integrand(Complex64::new(c, t), ln_z).re)
                .fold(f64::NEG_INFINITY, f64::max);
            if cost < best_cost {
                best_cost = cost;
                best = c;
            }
            c += 1.0;
        }
        return best;
    }
    if poles.hi.is_finite() {
        // unbounded to the left: walk left over half-integers while the integrand shrinks
        let mut c = poles.hi - 0.5;
        let mut cost = ln_abs_on_axis(p, c, ln_z);
        for _ in 0..256 {
            let next = ln_abs_on_axis(p, c - 1.0, ln_z);
            if next >= cost {
                break;
            }
            cost = next;
            c -= 1.0;
        }
        return c;
    }
    poles.lo + 0.5
}

/// `Σ_k (-1)^k/k! z^{b_1+k} / (Γ(a_1-b_1-k) ∏_{i≥2} Γ(1-b_i+b_1+k))`,
/// the residue sum of the polynomial class.
fn polynomial_residues(p: &MeijerGParams, z: f64) -> Result<f64> {
    let a1 = p.a[0];
    let b1 = p.b[0];
    let terms = a1 - b1;
    if terms <= 0 {
        return Ok(0.0);
    }
    let ln_z = z.ln();
    let mut acc = KahanSum::new();
    for k in 0..terms {
        let mut recip = reciprocal_gamma((a1 - b1 - k) as f64);
        let mut ln_mag = 0.0;
        let mut sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for &bi in &p.b[1..] {
            let arg = (1 - bi + b1 + k) as f64;
            if arg <= 0.0 {
                recip = 0.0;
                break;
            }
            let (l, s) = ln_gamma_signed(arg)?;
            ln_mag -= l;
            sign *= s;
        }
        if recip == 0.0 {
            continue;
        }
        ln_mag += (b1 + k) as f64 * ln_z - ln_gamma_signed(k as f64 + 1.0)?.0;
        acc.add(sign * recip * ln_mag.exp());
    }
    Ok(acc.value())
}

/// Evaluate `G^{m,n}_{p,q}(a; b | z)` for `z > 0`.
pub fn meijer_g(params: &MeijerGParams, z: f64, cfg: &ContourConfig) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidArgument(format!("Meijer G argument must be positive, got {z}")));
    }
    cfg.validate()?;
    match params.class() {
        ShapeClass::Polynomial => polynomial_residues(params, z),
        ShapeClass::Weight if params.m == 1 => {
            let b = params.b[0] as f64;
            Ok((b * z.ln() - z).exp())
        }
        _ => contour(params, z, cfg),
    }
}

fn contour(params: &MeijerGParams, z: f64, cfg: &ContourConfig) -> Result<f64> {
    let poles = PoleMap::new(params)?;
    let ln_z = z.ln();
    let c = match cfg.offset {
        Some(c) => {
            if !(c > poles.lo && c < poles.hi) || c == c.round() {
                return Err(params.shape_err());
            }
            c
        }
        None => choose_offset(params, &poles, ln_z),
    };
    let decay = params.decay_rate();
    if decay <= 0.0 {
        return Err(Error::UnsupportedShape { m: params.m, n: params.n, p: params.p(), q: params.q() });
    }
    let strip = poles.strip(c);
    let res = line_trapezoid(
        c,
        strip,
        decay,
        1,
        cfg,
        |u| params.ln_integrand(u, ln_z),
        |_, out| out[0] = Complex64::new(1.0, 0.0),
    )?;
    Ok(res.values[0] * res.ln_scale.exp())
}

/// `G^{M,0}_{0,M}(−; b_1..b_M | x)`. For `M = 1` this is `x^{b_1} e^{-x}`.
pub fn meijer_g_m0(b: &[i64], x: f64, cfg: &ContourConfig) -> Result<f64> {
    if b.is_empty() {
        return Err(Error::InvalidArgument("at least one lower parameter required".into()));
    }
    let (&last, head) = b.split_last().expect("non-empty");
    Ok(meijer_g_m0_family(head, last, 1, x, cfg)?[0])
}

/// `G^{M,0}_{0,M}(−; head, base + k | x)` for `k = 0..count`, sharing one
/// contour. The integrands differ by the polynomial `(base - u)_k`.
pub fn meijer_g_m0_family(head: &[i64], base: i64, count: usize, x: f64, cfg: &ContourConfig) -> Result<Vec<f64>> {
    if !(x > 0.0) || !x.is_finite() || x < f64::MIN_POSITIVE {
        return Err(Error::InvalidArgument(format!("Meijer G argument must be positive and normal, got {x}")));
    }
    cfg.validate()?;
    if count == 0 {
        return Ok(Vec::new());
    }
    if head.is_empty() {
        let ln_x = x.ln();
        return Ok((0..count).map(|k| ((base + k as i64) as f64 * ln_x - x).exp()).collect());
    }
    let ln_x = x.ln();
    let m = head.len() + 1;
    let mut b_mid: Vec<f64> = head.iter().map(|&v| v as f64).collect();
    b_mid.push((base + (count as i64 - 1) / 2) as f64);
    let b_min = head.iter().copied().min().unwrap_or(base).min(base) as f64;
    let c = match cfg.offset {
        Some(c) if c < b_min => c,
        Some(_) => return Err(Error::PoleSeparation { m, n: 0, p: 0, q: m }),
        None => weight_offset(&b_mid, ln_x).min(b_min - 0.02),
    };
    let strip = b_min - c;
    let decay = 0.5 * PI * m as f64;
    let head_f: Vec<f64> = head.iter().map(|&v| v as f64).collect();
    let base_f = base as f64;
    let ln_f = |u: Complex64| {
        let mut acc = u * ln_x + ln_gamma_complex(base_f - u);
        for &b in &head_f {
            acc += ln_gamma_complex(b - u);
        }
        acc
    };
    let factors = |u: Complex64, out: &mut [Complex64]| {
        let mut f = Complex64::new(1.0, 0.0);
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = f;
            f *= base_f + k as f64 - u;
        }
    };
    let res = line_trapezoid(c, strip, decay, count, cfg, ln_f, factors)?;
    let scale = res.ln_scale.exp();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let v = res.values[k];
        // a member far from the shared saddle may lose digits; redo it alone
        if res.l1[k] * f64::EPSILON * 64.0 > cfg.tol.max(1e-13) * v.abs() && count > 1 {
            out.push(meijer_g_m0_family(head, base + k as i64, 1, x, cfg)?[0]);
        } else {
            out.push(v * scale);
        }
    }
    let _ = res.error;
    Ok(out)
}

/// `G^{M,1}_{1,M+1}(-n; b_1..b_M, 0 | x)` for `n = 0..count`, each paired
/// with an absolute round-off estimate. The integrands share one contour and
/// differ by the factor `(1+u)(2+u)..(n+u)`, which is formed as a product so
/// no alternating sum is involved.
pub fn meijer_g_m1_family(b: &[i64], count: usize, x: f64, cfg: &ContourConfig) -> Result<Vec<(f64, f64)>> {
    if !(x > 0.0) || !x.is_finite() || x < f64::MIN_POSITIVE {
        return Err(Error::InvalidArgument(format!("Meijer G argument must be positive and normal, got {x}")));
    }
    cfg.validate()?;
    let m = b.len();
    if m == 0 {
        return Err(Error::UnsupportedShape { m: 0, n: 1, p: 1, q: 1 });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let ln_x = x.ln();
    let b_f: Vec<f64> = b.iter().map(|&v| v as f64).collect();
    let b_min = b_f.iter().copied().fold(f64::INFINITY, f64::min);
    let c = match cfg.offset {
        Some(c) if c < b_min => c,
        Some(_) => return Err(Error::PoleSeparation { m, n: 1, p: 1, q: m + 1 }),
        None => weight_offset(&b_f, ln_x).min(b_min - 0.02),
    };
    let strip = b_min - c;
    let decay = 0.5 * PI * m as f64;
    let ln_f = |u: Complex64| {
        let mut acc = u * ln_x;
        for &bi in &b_f {
            acc += ln_gamma_complex(bi - u);
        }
        acc
    };
    let factors = |u: Complex64, out: &mut [Complex64]| {
        let mut f = Complex64::new(1.0, 0.0);
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                f *= k as f64 + u;
            }
            *slot = f;
        }
    };
    let res = line_trapezoid(c, strip, decay, count, cfg, ln_f, factors)?;
    let scale = res.ln_scale.exp();
    Ok(res
        .values
        .iter()
        .zip(&res.l1)
        .map(|(&v, &l1)| (v * scale, (64.0 * f64::EPSILON + res.error) * l1 * scale))
        .collect())
}
