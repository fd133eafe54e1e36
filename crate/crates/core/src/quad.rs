//! Adaptive Gauss-Kronrod quadrature and a dyadic driver for integrals over `[0, ∞)`.
//!
//! The driver integrates over `[0,1], [1,2], [2,4], ...` and after every piece asks the
//! caller for a bound on the remaining tail. It stops with a finite value once the
//! certified remainder is small, reports `+∞` when the caller certifies divergence or
//! the dyadic increments stop decaying, and reports "undetermined" when the budget runs
//! out first.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

// 15-point Kronrod nodes (non-negative half) with the embedded 7-point Gauss rule.
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
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an integral that may diverge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IntegralValue {
    /// `value` with an absolute error bar (quadrature error plus certified tail).
    Finite { value: f64, error: f64 },
    Infinite,
    Undetermined { partial: f64, reason: String },
}

impl IntegralValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, IntegralValue::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, IntegralValue::Infinite)
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            IntegralValue::Finite { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        match self {
            IntegralValue::Finite { value, error } => IntegralValue::Finite {
                value: value * factor,
                error: error * factor.abs(),
            },
            IntegralValue::Undetermined { partial, reason } => IntegralValue::Undetermined {
                partial: partial * factor,
                reason,
            },
            other => other,
        }
    }
}

/// What the caller knows about `∫_R^∞` of the (nonnegative) integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    Bound(f64),
    /// `∫_R^∞ = value ± error`.
    Estimate { value: f64, error: f64 },
    Divergent,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub max_intervals: usize,
    /// Largest dyadic exponent: the driver never integrates beyond `2^max_doublings`.
    pub max_doublings: u32,
    /// Stop once the certified tail is below `tail_tol * max(1, |partial|)`.
    pub tail_tol: f64,
    /// Divergence gate starts at this dyadic index.
    pub gate_start: u32,
    pub gate_window: usize,
    /// Increments that keep at least this fraction of their predecessor count as non-decaying.
    pub gate_ratio: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-8,
            max_intervals: 1_000_000,
            max_doublings: 60,
            tail_tol: 1e-8,
            gate_start: 20,
            gate_window: 4,
            gate_ratio: 0.9,
        }
    }
}

/// Single 15-point Kronrod estimate with its error estimate.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = kronrod.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = (f1, f2);
        kronrod += w * (f1 + f2);
        abs_k += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let result = kronrod * half;
    let res_abs = abs_k * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

/// Globally adaptive bisection on `[a, b]` until the summed error estimate is at most `tol`
/// or `max_intervals` is reached.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_intervals: usize) -> Adaptive {
    if a == b {
        return Adaptive {
            value: 0.0,
            error: 0.0,
            intervals: 0,
            converged: true,
        };
    }
    let (v, e) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        value: v,
        error: e,
    });
    let mut total_err = e;
    let mut intervals = 1usize;
    while total_err > tol && intervals < max_intervals.max(1) {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // cannot split further in floating point
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        total_err += e1 + e2 - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        intervals += 1;
    }
    // re-sum to shed the drift of the running totals
    let (value, error) = heap
        .iter()
        .fold((0.0, 0.0), |(s, e), p| (s + p.value, e + p.error));
    Adaptive {
        value,
        error,
        intervals,
        converged: error <= tol || total_err <= tol,
    }
}

/// Adaptive integration on `[a, b]` split at the given interior breakpoints.
pub fn adaptive_with_breaks<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
    max_intervals: usize,
) -> Adaptive {
    let mut nodes = vec![a];
    nodes.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    nodes.push(b);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let len = b - a;
    let mut out = Adaptive {
        value: 0.0,
        error: 0.0,
        intervals: 0,
        converged: true,
    };
    for w in nodes.windows(2) {
        let share = if len > 0.0 { (w[1] - w[0]) / len } else { 1.0 };
        let budget = max_intervals.saturating_sub(out.intervals).max(1);
        let r = adaptive(f, w[0], w[1], (tol * share).max(tol * 1e-6), budget);
        out.value += r.value;
        out.error += r.error;
        out.intervals += r.intervals;
        out.converged &= r.converged;
    }
    out
}

/// Adaptive integration over `[a, b]` of a function with integrable logarithmic
/// singularities at the listed points (which may include `a` and `b`).
///
/// Each sub-interval between consecutive singular points is halved, and each half is
/// mapped by `r = s + h u^2` towards its singular endpoint, which turns `log|r - s|`
/// into the bounded integrand `2 h u log|h u^2|`.
pub fn adaptive_log_singular<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    singular: &[f64],
    tol: f64,
    max_intervals: usize,
) -> Adaptive {
    let is_singular = |x: f64| singular.iter().any(|&s| s == x);
    let mut nodes = vec![a];
    nodes.extend(singular.iter().copied().filter(|&x| x > a && x < b));
    nodes.push(b);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let len = b - a;
    let mut out = Adaptive {
        value: 0.0,
        error: 0.0,
        intervals: 0,
        converged: true,
    };
    for w in nodes.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let share = if len > 0.0 { (hi - lo) / len } else { 1.0 };
        let half_tol = 0.5 * (tol * share).max(tol * 1e-9);
        let mid = 0.5 * (lo + hi);
        for (start, end) in [(lo, mid), (mid, hi)] {
            let budget = max_intervals.saturating_sub(out.intervals).max(1);
            let anchor = if is_singular(start) {
                Some((start, end - start))
            } else if is_singular(end) {
                Some((end, start - end))
            } else {
                None
            };
            let r = match anchor {
                Some((s, h)) => {
                    let g = |u: f64| 2.0 * h.abs() * u * f(s + h * u * u);
                    adaptive(&g, 0.0, 1.0, half_tol, budget)
                }
                None => adaptive(f, start, end, half_tol, budget),
            };
            out.value += r.value;
            out.error += r.error;
            out.intervals += r.intervals;
            out.converged &= r.converged;
        }
    }
    out
}

/// Outcome of integrating one dyadic piece.
pub enum PieceOutcome {
    Done(Adaptive),
    /// The caller's own budget is spent; finish with the tail bound if one is known.
    Stop,
}

/// Integrate a nonnegative integrand over `[0, ∞)` piece by piece.
///
/// `piece(a, b, tol, budget)` integrates `[a, b]`; `tail(R)` bounds `∫_R^∞`.
pub fn integrate_half_line<P, T>(mut piece: P, tail: T, cfg: &QuadConfig) -> IntegralValue
where
    P: FnMut(f64, f64, f64, usize) -> PieceOutcome,
    T: Fn(f64) -> Tail,
{
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut used = 0usize;
    let mut increments: Vec<f64> = Vec::new();
    let mut last_tail = Tail::Unknown;

    for k in 0..=cfg.max_doublings {
        let (a, b) = if k == 0 {
            (0.0, 1.0)
        } else {
            (2f64.powi(k as i32 - 1), 2f64.powi(k as i32))
        };
        let budget = cfg.max_intervals.saturating_sub(used);
        if budget == 0 {
            return finish_on_budget(sum, err, last_tail, "interval budget exhausted");
        }
        let r = match piece(a, b, cfg.abs_tol, budget) {
            PieceOutcome::Done(r) => r,
            PieceOutcome::Stop => {
                return finish_on_budget(sum, err, last_tail, "evaluation budget exhausted")
            }
        };
        used += r.intervals;
        if !r.value.is_finite() {
            return IntegralValue::Infinite;
        }
        if !r.converged {
            return IntegralValue::Undetermined {
                partial: sum + r.value,
                reason: format!("quadrature did not converge on [{a}, {b}]"),
            };
        }
        sum += r.value;
        err += r.error;
        increments.push(r.value);

        last_tail = tail(b);
        match last_tail {
            Tail::Divergent => return IntegralValue::Infinite,
            Tail::Bound(t) if t <= cfg.tail_tol * sum.abs().max(1.0) => {
                return IntegralValue::Finite {
                    value: sum,
                    error: err + t,
                }
            }
            Tail::Estimate { value, error } if error <= cfg.tail_tol * (sum + value).abs().max(1.0) => {
                return IntegralValue::Finite {
                    value: sum + value,
                    error: err + error,
                }
            }
            _ => {}
        }

        if k >= cfg.gate_start && increments.len() > cfg.gate_window {
            let tail_incs = &increments[increments.len() - cfg.gate_window - 1..];
            let non_decaying = tail_incs
                .windows(2)
                .all(|w| w[1] > 0.0 && w[1] >= cfg.gate_ratio * w[0]);
            if non_decaying {
                return IntegralValue::Infinite;
            }
            if matches!(last_tail, Tail::Unknown) {
                // geometric extrapolation when the caller has no certificate
                let ratios: Vec<f64> = tail_incs
                    .windows(2)
                    .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 })
                    .collect();
                let rho = ratios.iter().cloned().fold(0.0, f64::max);
                if rho < 0.75 {
                    let est = increments.last().unwrap() * rho / (1.0 - rho);
                    if est <= cfg.tail_tol * sum.abs().max(1.0) {
                        return IntegralValue::Finite {
                            value: sum,
                            error: err + est,
                        };
                    }
                }
            }
        }
    }
    finish_on_budget(sum, err, last_tail, "dyadic range exhausted")
}

fn finish_on_budget(sum: f64, err: f64, tail: Tail, reason: &str) -> IntegralValue {
    match tail {
        Tail::Bound(t) if t.is_finite() => IntegralValue::Finite {
            value: sum,
            error: err + t,
        },
        Tail::Estimate { value, error } if error.is_finite() => IntegralValue::Finite {
            value: sum + value,
            error: err + error,
        },
        _ => IntegralValue::Undetermined {
            partial: sum,
            reason: reason.to_string(),
        },
    }
}

/// `∫_{ℝⁿ} g` by the substitution `x_i = sinh(π/2 · sinh t_i)` and the trapezoid rule with
/// step `step` on `[-t_max, t_max]` in each `t_i`. Algebraic decay of `g` becomes double
/// exponential decay in `t`, including along the diagonals.
pub fn tensor_sinh_quadrature<G: Fn(&[f64]) -> f64 + Sync>(g: &G, n: usize, step: f64, t_max: f64) -> f64 {
    use rayon::prelude::*;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let k = (t_max / step).ceil() as i64;
    let mut xs = Vec::with_capacity(2 * k as usize + 1);
    let mut ws = Vec::with_capacity(2 * k as usize + 1);
    for i in -k..=k {
        let t = i as f64 * step;
        let u = half_pi * t.sinh();
        xs.push(u.sinh());
        ws.push(step * u.cosh() * half_pi * t.cosh());
    }
    let m = xs.len();
    let total = m.pow(n as u32);
    // fixed chunks summed in order keep the result independent of scheduling
    const CHUNK: usize = 1 << 12;
    let partials: Vec<f64> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut x = vec![0.0; n];
            let mut acc = 0.0;
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let mut rem = idx;
                let mut w = 1.0;
                for slot in x.iter_mut() {
                    let i = rem % m;
                    rem /= m;
                    *slot = xs[i];
                    w *= ws[i];
                }
                if w != 0.0 {
                    acc += w * g(&x);
                }
            }
            acc
        })
        .collect();
    partials.iter().sum()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
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
    (nodes, weights)
}
