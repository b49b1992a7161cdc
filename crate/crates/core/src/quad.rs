//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite ranges,
//! plus fixed composite Gauss–Legendre rules for tensor-product integrals.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::specfun::KahanSum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances for the adaptive rules. The target is `max(abs, rel·|I|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: 0.0, rel_tol: 1e-10, max_intervals: 4000 }
    }
}

/// Integral estimate with its error bound and evaluation count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        k += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    if !k.is_finite() {
        return Err(Error::NonConvergence { what: "quadrature (non-finite integrand)", estimate: k, tol: 0.0 });
    }
    let value = k * h;
    let raw = ((k - g) * h).abs();
    // a round-off floor keeps converged panels from being split forever
    let error = raw.max(50.0 * f64::EPSILON * abs * h.abs());
    Ok(Segment { a, b, value, error })
}

/// Adaptive G7–K15 quadrature of `f` on `[a, b]`. Integrable endpoint
/// singularities are tolerated because the rule never samples the endpoints.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    integrate_pieces(f, &[a, b], cfg)
}

/// Globally adaptive quadrature over consecutive panels `breaks[i]..breaks[i+1]`.
/// The worst panel anywhere is refined first, so the tolerance applies to the
/// total rather than to each panel.
pub fn integrate_pieces<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], cfg: &QuadConfig) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    for w in breaks.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let seg = kronrod15(&mut f, w[0], w[1])?;
        evals += 15;
        total += seg.value;
        err += seg.error;
        heap.push(seg);
    }
    let cap = cfg.max_intervals.max(2 * heap.len());
    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if err <= target || heap.is_empty() {
            break;
        }
        if heap.len() >= cap {
            return Err(Error::NonConvergence { what: "adaptive quadrature", estimate: err, tol: target });
        }
        let worst = heap.pop().expect("heap is non-empty");
        if worst.error == 0.0 {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval exhausted at machine resolution
            err -= worst.error;
            heap.push(Segment { error: 0.0, ..worst });
            continue;
        }
        let left = kronrod15(&mut f, worst.a, mid)?;
        let right = kronrod15(&mut f, mid, worst.b)?;
        evals += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed the drift of the running updates
    let mut value = KahanSum::new();
    let mut error = 0.0;
    for s in heap.iter() {
        value.add(s.value);
        error += s.error;
    }
    Ok(QuadResult { value: value.value(), error, evals })
}

/// Upper cutoff where a decaying integrand on `[0, ∞)` has fallen below
/// `rel·peak`, found by doubling from `scale`. The peak is tracked over the
/// sampled points, so `scale` should be of the order of the bulk location.
pub fn decay_cutoff<F: FnMut(f64) -> f64>(mut f: F, scale: f64, rel: f64) -> Result<f64> {
    let mut peak = 0.0f64;
    // sample the bulk finely enough to see the peak
    for j in 1..=32 {
        peak = peak.max(f(scale * j as f64 / 16.0).abs());
    }
    let mut x = 2.0 * scale;
    let mut below = 0;
    for _ in 0..200 {
        let v = f(x).abs();
        peak = peak.max(v);
        if v <= rel * peak {
            below += 1;
            if below >= 2 {
                return Ok(x);
            }
        } else {
            below = 0;
        }
        x *= 1.25;
    }
    Err(Error::NonConvergence { what: "semi-infinite cutoff", estimate: x, tol: rel })
}

/// `∫_0^∞ f` for an integrand that decays at least exponentially. The range
/// is cut where `|f|` drops below `1e-16` of its peak and split into
/// geometric panels so that a singular or sharply peaked origin and a long
/// tail are both resolved.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(mut f: F, scale: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(scale > 0.0) {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {scale}")));
    }
    let cut = decay_cutoff(&mut f, scale, 1e-16)?;
    let mut breaks = vec![0.0];
    let mut x = scale * 1e-6;
    while x < 0.25 * scale {
        breaks.push(x);
        x *= 8.0;
    }
    let mut y = 0.25 * scale;
    while y < cut {
        breaks.push(y);
        // uniform through the bulk, geometric along the tail
        y = if y < 4.0 * scale { y + 0.5 * scale } else { 1.5 * y };
    }
    breaks.push(cut);
    integrate_pieces(f, &breaks, cfg)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule via Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Nodes and weights of the composite rule on the panels given by `breaks`.
    pub fn composite(&self, breaks: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let mut xs = Vec::with_capacity(self.nodes.len() * breaks.len());
        let mut ws = Vec::with_capacity(xs.capacity());
        for w in breaks.windows(2) {
            let c = 0.5 * (w[0] + w[1]);
            let h = 0.5 * (w[1] - w[0]);
            for (x, wt) in self.nodes.iter().zip(&self.weights) {
                xs.push(c + h * x);
                ws.push(h * wt);
            }
        }
        (xs, ws)
    }
}

/// Panel breaks for `[0, cut]`: geometric near the origin, uniform beyond.
pub fn graded_breaks(scale: f64, cut: f64, uniform: f64) -> Vec<f64> {
    let mut breaks = vec![0.0];
    let mut x = scale * 1e-8;
    while x < scale {
        breaks.push(x);
        x *= 4.0;
    }
    let mut y = scale;
    while y < cut {
        breaks.push(y);
        y += uniform;
    }
    breaks.push(cut);
    breaks
}
