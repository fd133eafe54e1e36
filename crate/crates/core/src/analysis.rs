//! Numerical checks of band-limitation and of the Cartwright and L² conditions.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::entire::{EvenFunction, LiftedRadialFunction};
use crate::error::{Error, Result};
use crate::grid::GridSamples;
use crate::minorant::SincProduct;
use crate::quad::{adaptive_log_singular, adaptive_with_breaks, integrate_half_line, Adaptive, IntegralValue, PieceOutcome, QuadConfig, Tail};
use crate::report::VerificationReport;
use crate::weights::WeightSpec;

/// Default outside-energy threshold.
pub const SPECTRUM_THRESHOLD: f64 = 1e-6;
/// Default Tukey taper fraction.
pub const DEFAULT_TAPER: f64 = 0.25;
/// Boundary samples above this fraction of the peak trigger a warning.
pub const BOUNDARY_DECAY: f64 = 1e-6;
/// Minorization passes when `|f| e^{Ω}` stays below `1 + MINORIZATION_SLACK`.
pub const MINORIZATION_SLACK: f64 = 1e-12;
/// Values below this count as zeros of an evaluator.
pub const ZERO_FLOOR: f64 = 1e-300;
/// A dyadic piece with more zeros than this stops the driver.
const REDUCE_CHUNK: usize = 1 << 14;

pub const MAX_ZEROS_PER_PIECE: usize = 1 << 18;
const SCAN_CAP: usize = 1 << 16;
const HISTOGRAM_BINS: usize = 256;

/// `|S^{n-1}| = 2π^{n/2}/Γ(n/2)`.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI / (n - 2) as f64 * sphere_area(n - 2),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub shape: Vec<usize>,
    pub spacing: Vec<f64>,
    pub extent: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub epsilon: f64,
    /// Ball radius actually used: `ε` plus one frequency bin.
    pub radius: f64,
    pub inside_energy: f64,
    pub outside_energy: f64,
    pub outside_fraction: f64,
    pub threshold: f64,
    /// `h^n Σ |w·f|²` of the tapered samples.
    pub sample_energy: f64,
    pub taper: f64,
    pub boundary_ratio: f64,
    pub warning: Option<String>,
    pub grid_meta: GridMeta,
    pub pass: bool,
    /// `(|ξ|, energy)` histogram for plotting.
    #[serde(skip)]
    pub radial_energy: Vec<(f64, f64)>,
}

fn tukey(i: usize, n: usize, alpha: f64) -> f64 {
    if alpha <= 0.0 || n < 2 {
        return 1.0;
    }
    let x = i as f64 / (n - 1) as f64;
    if x < alpha / 2.0 {
        0.5 * (1.0 - (2.0 * PI * x / alpha).cos())
    } else if x > 1.0 - alpha / 2.0 {
        0.5 * (1.0 - (2.0 * PI * (1.0 - x) / alpha).cos())
    } else {
        1.0
    }
}

pub fn fft_spectrum_report(samples: &GridSamples, eps: f64, threshold: f64) -> Result<SpectrumReport> {
    fft_spectrum_report_with(samples, eps, threshold, DEFAULT_TAPER)
}

/// Energy of the discrete Fourier transform inside and outside `‖ξ‖ ≤ ε + Δξ`.
pub fn fft_spectrum_report_with(samples: &GridSamples, eps: f64, threshold: f64, taper: f64) -> Result<SpectrumReport> {
    let h = &samples.header;
    h.validate()?;
    if !(eps > 0.0) {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    if !(0.0..=1.0).contains(&taper) {
        return Err(Error::InvalidInput("taper must lie in [0, 1]".into()));
    }
    if h.shape.iter().any(|&s| s < 64) {
        return Err(Error::InvalidInput("need at least 64 samples per axis".into()));
    }
    if samples.values.len() != h.len() {
        return Err(Error::GridFormat("sample count does not match header".into()));
    }
    let peak = samples.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(Error::ZeroSamples);
    }
    if samples.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("samples must be finite".into()));
    }
    let dim = h.dim;
    let strides: Vec<usize> = (0..dim).map(|ax| h.shape[ax + 1..].iter().product()).collect();
    let index_of = |flat: usize, ax: usize| (flat / strides[ax]) % h.shape[ax];

    let boundary = (0..samples.values.len())
        .into_par_iter()
        .filter(|&i| (0..dim).any(|ax| {
            let k = index_of(i, ax);
            k == 0 || k == h.shape[ax] - 1
        }))
        .map(|i| samples.values[i].abs())
        .reduce(|| 0.0, f64::max);
    let boundary_ratio = boundary / peak;

    let windows: Vec<Vec<f64>> = h.shape.iter().map(|&n| (0..n).map(|i| tukey(i, n, taper)).collect()).collect();
    let mut data: Vec<Complex64> = samples
        .values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| {
            let w: f64 = (0..dim).map(|ax| windows[ax][index_of(i, ax)]).product();
            Complex64::new(v * w, 0.0)
        })
        .collect();
    let cell: f64 = h.spacing.iter().product();
    let sample_energy = cell * data.iter().map(|z| z.norm_sqr()).sum::<f64>();

    let mut planner = FftPlanner::<f64>::new();
    for ax in 0..dim {
        let n = h.shape[ax];
        let stride = strides[ax];
        let fft = planner.plan_fft_forward(n);
        let lines = data.len() / n;
        let starts: Vec<usize> = (0..lines).map(|l| (l / stride) * stride * n + l % stride).collect();
        let transformed: Vec<Vec<Complex64>> = starts
            .par_iter()
            .map(|&s| {
                let mut buf: Vec<Complex64> = (0..n).map(|k| data[s + k * stride]).collect();
                fft.process(&mut buf);
                buf
            })
            .collect();
        for (s, buf) in starts.iter().zip(transformed) {
            for (k, v) in buf.into_iter().enumerate() {
                data[s + k * stride] = v;
            }
        }
    }

    let bins: Vec<f64> = (0..dim).map(|ax| 2.0 * PI / (h.shape[ax] as f64 * h.spacing[ax])).collect();
    let radius = eps + bins.iter().cloned().fold(0.0, f64::max);
    let scale = cell / data.len() as f64;
    let nyquist = bins
        .iter()
        .zip(&h.shape)
        .map(|(b, &n)| b * (n / 2) as f64)
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt();
    let hist_width = nyquist / HISTOGRAM_BINS as f64;
    // fixed chunks combined in order, so the totals do not depend on scheduling
    let partials: Vec<(f64, f64, Vec<f64>)> = data
        .par_chunks(REDUCE_CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            let (mut inside, mut outside, mut hist) = (0.0, 0.0, vec![0.0; HISTOGRAM_BINS]);
            for (j, z) in chunk.iter().enumerate() {
                let i = c * REDUCE_CHUNK + j;
                let mut r2 = 0.0;
                for ax in 0..dim {
                    let k = index_of(i, ax) as i64;
                    let n = h.shape[ax] as i64;
                    let signed = if k <= n / 2 { k } else { k - n };
                    let xi = signed as f64 * bins[ax];
                    r2 += xi * xi;
                }
                let r = r2.sqrt();
                let e = z.norm_sqr() * scale;
                if r <= radius {
                    inside += e;
                } else {
                    outside += e;
                }
                hist[((r / hist_width) as usize).min(HISTOGRAM_BINS - 1)] += e;
            }
            (inside, outside, hist)
        })
        .collect();
    let (mut inside, mut outside, mut hist) = (0.0, 0.0, vec![0.0; HISTOGRAM_BINS]);
    for (i, o, hs) in partials {
        inside += i;
        outside += o;
        for (a, b) in hist.iter_mut().zip(hs) {
            *a += b;
        }
    }
    let radial_energy = hist
        .into_iter()
        .enumerate()
        .map(|(i, e)| ((i as f64 + 0.5) * hist_width, e))
        .collect();
    let total = inside + outside;
    let outside_fraction = if total > 0.0 { outside / total } else { 0.0 };
    let warning = (boundary_ratio > BOUNDARY_DECAY).then(|| {
        format!("samples have not decayed at the boundary: max boundary |f| / max |f| = {boundary_ratio:.3e}")
    });
    Ok(SpectrumReport {
        epsilon: eps,
        radius,
        inside_energy: inside,
        outside_energy: outside,
        outside_fraction,
        threshold,
        sample_energy,
        taper,
        boundary_ratio,
        warning,
        grid_meta: GridMeta {
            shape: h.shape.clone(),
            spacing: h.spacing.clone(),
            extent: h.extent(),
        },
        pass: outside_fraction <= threshold,
        radial_energy,
    })
}

/// 1-D spectral check of a sinc product sampled on `[-L, L)` with `L = 500 / min δ`.
pub fn sinc_product_spectrum(f: &SincProduct, eps: f64, threshold: f64) -> Result<SpectrumReport> {
    let s = f.spectral_radius().max(eps);
    let half = 500.0 / f.min_delta().unwrap_or(1.0).min(1.0).max(1e-6);
    let h = (PI / (4.0 * s)).min(1.0);
    let n = ((2.0 * half / h).ceil() as usize).next_power_of_two().max(1024);
    let header = crate::grid::GridHeader::centered(1, n, half)?;
    let samples = GridSamples::sample(header, |x| f.eval(x[0]))?;
    fft_spectrum_report(&samples, eps, threshold)
}

/// An even function on `ℝ`, seen through its radial profile.
pub trait RadialEvaluator: Sync {
    fn eval(&self, r: f64) -> f64;

    fn log_abs(&self, r: f64) -> f64 {
        self.eval(r).abs().ln()
    }

    /// Zeros in `(a, b)` when they are known in closed form.
    fn zeros_in(&self, _a: f64, _b: f64) -> Option<Vec<f64>> {
        None
    }

    fn as_sinc_product(&self) -> Option<&SincProduct> {
        None
    }
}

impl RadialEvaluator for SincProduct {
    fn eval(&self, r: f64) -> f64 {
        SincProduct::eval(self, r)
    }

    fn log_abs(&self, r: f64) -> f64 {
        SincProduct::log_abs(self, r)
    }

    fn zeros_in(&self, a: f64, b: f64) -> Option<Vec<f64>> {
        Some(SincProduct::zeros_in(self, a, b))
    }

    fn as_sinc_product(&self) -> Option<&SincProduct> {
        Some(self)
    }
}

/// A closure as an evaluator.
pub struct RadialFn<F>(pub F);

impl<F: Fn(f64) -> f64 + Sync> RadialEvaluator for RadialFn<F> {
    fn eval(&self, r: f64) -> f64 {
        (self.0)(r)
    }
}

/// A closure together with an accurate `log|f|`, for functions that underflow.
pub struct RadialLogFn<F, G> {
    pub f: F,
    pub log_abs: G,
}

impl<F: Fn(f64) -> f64 + Sync, G: Fn(f64) -> f64 + Sync> RadialEvaluator for RadialLogFn<F, G> {
    fn eval(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    fn log_abs(&self, r: f64) -> f64 {
        (self.log_abs)(r)
    }
}

/// Zeros of `f` in `(a, b)`: closed form when known, otherwise sign changes and
/// near-underflow on a scan, refined by bisection.
fn find_zeros<E: RadialEvaluator + ?Sized>(f: &E, a: f64, b: f64) -> Vec<f64> {
    if let Some(z) = f.zeros_in(a, b) {
        return z;
    }
    let steps = (((b - a) * 64.0).ceil() as usize).clamp(64, SCAN_CAP);
    let h = (b - a) / steps as f64;
    let vals: Vec<f64> = (0..=steps).into_par_iter().map(|i| f.eval(a + i as f64 * h)).collect();
    let mut out = Vec::new();
    for i in 0..steps {
        let (x0, v0, v1) = (a + i as f64 * h, vals[i], vals[i + 1]);
        if i > 0 && v0.abs() < ZERO_FLOOR && vals[i - 1].abs() >= ZERO_FLOOR && v1.abs() >= ZERO_FLOOR {
            // an isolated near-zero; a whole run below the floor is underflow, not a zero
            out.push(x0);
        } else if v0 * v1 < 0.0 {
            let (mut lo, mut hi, mut flo) = (x0, x0 + h, v0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = f.eval(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            out.push(0.5 * (lo + hi));
        }
    }
    out
}

/// `r^{n-1} (1+r²)^{-(n+1)/2}`.
fn cartwright_kernel(r: f64, n: usize) -> f64 {
    r.powi(n as i32 - 1) * (1.0 + r * r).powf(-((n + 1) as f64) / 2.0)
}

/// Bound on every positive real root of the polynomial part.
fn poly_root_bound(f: &SincProduct) -> f64 {
    let e = f.even_poly();
    let d = e.len() - 1;
    if d == 0 {
        return 0.0;
    }
    let m = e[..d].iter().map(|v| (v / e[d]).abs()).fold(0.0, f64::max);
    (1.0 + m).sqrt()
}

/// Smallest radius beyond which `|F| ≤ 1`, every factor is past its first zero, the poly
/// part has no roots and the kernel decreases. `None` when `F` does not decay.
fn decay_radius(f: &SincProduct, n: usize) -> Option<f64> {
    if f.total_power() as usize <= 2 * f.poly_half_degree() {
        return None;
    }
    let md = f.min_delta()?;
    let mut r = (PI / md)
        .max(2.0 * poly_root_bound(f))
        .max(((n as f64 - 1.0) / 2.0).sqrt())
        .max(1.0);
    for _ in 0..400 {
        if f.envelope(r) <= 1.0 {
            return Some(r);
        }
        r *= 2.0;
    }
    None
}

/// `∫_R^∞ g` through `r = R/t`, with `g(R/t)·R/t²` supplied as `mapped(t)`.
fn inverted_tail<G: Fn(f64) -> f64>(mapped: G, tol: f64, budget: usize) -> Adaptive {
    adaptive_log_singular(&mapped, 0.0, 1.0, &[0.0], tol, budget)
}

/// Tail of the Cartwright integral of a decaying sinc product.
///
/// Past the decay radius `|log|F|| = -ln c - ln|poly| + Σ p_k ln(δ_k r) - Σ p_k ln|sin δ_k r|`.
/// Each `-ln|sin|` is periodic with mean `ln 2` and bounded primitive of the centred part,
/// so replacing it by its mean costs at most `2 ln2 · T_k · K(R)` with `T_k = π/δ_k`.
fn cartwright_sinc_tail(f: &SincProduct, n: usize, big_r: f64, tol: f64) -> Tail {
    let mean = LN_2 * f.total_power() as f64;
    let ln_c = f.c().ln();
    let half = (n + 1) as f64 / 2.0;
    let mapped = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let r = big_r / t;
        let smooth = -ln_c - f.ln_abs_poly(r)
            + f.factors().iter().map(|k| k.p as f64 * (k.delta * r).ln()).sum::<f64>();
        let kernel = (big_r * big_r / (t * t + big_r * big_r)).powf(half) / big_r;
        kernel * (smooth + mean)
    };
    let q = inverted_tail(mapped, tol * 1e-2, 100_000);
    if !q.converged || !q.value.is_finite() {
        return Tail::Unknown;
    }
    let k_r = cartwright_kernel(big_r, n);
    let oscill: f64 = f.factors().iter().map(|k| 2.0 * LN_2 * k.p as f64 * PI / k.delta * k_r).sum();
    Tail::Estimate {
        value: q.value,
        error: q.error + oscill,
    }
}

fn piece_breaks<E: RadialEvaluator + ?Sized>(f: &E, a: f64, b: f64) -> Option<Vec<f64>> {
    let z = find_zeros(f, a, b);
    if z.len() > MAX_ZEROS_PER_PIECE {
        None
    } else {
        Some(z)
    }
}

/// `|S^{n-1}| ∫_0^∞ |log|f₀(r)|| r^{n-1} (1+r²)^{-(n+1)/2} dr`.
pub fn cartwright_log_integral<E: RadialEvaluator + ?Sized>(f0: &E, n: usize, quad: &QuadConfig) -> Result<IntegralValue> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let integrand = |r: f64| {
        let k = cartwright_kernel(r, n);
        if k == 0.0 {
            0.0
        } else {
            f0.log_abs(r).abs() * k
        }
    };
    let sinc = f0.as_sinc_product();
    let decay = sinc.and_then(|s| decay_radius(s, n));
    let value = integrate_half_line(
        |a, b, tol, budget| {
            let Some(mut sing) = piece_breaks(f0, a, b) else {
                return PieceOutcome::Stop;
            };
            for x in [a, b] {
                if !f0.log_abs(x).is_finite() {
                    sing.push(x);
                }
            }
            PieceOutcome::Done(adaptive_log_singular(&integrand, a, b, &sing, tol, budget))
        },
        |r| match (sinc, decay) {
            (Some(s), Some(r0)) if r >= r0 => cartwright_sinc_tail(s, n, r, quad.abs_tol),
            _ => Tail::Unknown,
        },
        quad,
    );
    Ok(value.scaled(sphere_area(n)))
}

/// Coefficients of `poly²` in `w = r²`.
fn poly_squared(f: &SincProduct) -> Vec<f64> {
    let e = f.even_poly();
    let mut out = vec![0.0; 2 * e.len() - 1];
    for (i, a) in e.iter().enumerate() {
        for (j, b) in e.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Tail of `∫ |F|² r^{n-1}` for a sinc product.
fn l2_sinc_tail(f: &SincProduct, n: usize, big_r: f64, tol: f64) -> Tail {
    let p = f.total_power() as f64;
    let d = f.poly_half_degree() as f64;
    let e = 4.0 * d - 2.0 * p + n as f64 - 1.0;
    if e >= -1.0 {
        // Π sin^{2p} has positive mean, so the envelope rate is attained on average
        return Tail::Divergent;
    }
    let md = f.min_delta().unwrap_or(1.0);
    if big_r < (PI / md).max(1.0).max(2.0 * poly_root_bound(f)) {
        return Tail::Unknown;
    }
    if f.factors().len() == 1 {
        let k = f.factors()[0];
        let two_p = 2 * k.p as u64;
        // mean of sin^{2p} = C(2p, p) / 4^p
        let mut mean = 1.0;
        for i in 0..k.p as u64 {
            mean *= (two_p - i) as f64 / ((k.p as u64 - i) as f64 * 4.0);
        }
        let ln_c2 = 2.0 * f.c().ln();
        let ln_g = |r: f64| ln_c2 + 2.0 * f.ln_abs_poly(r) + (n as f64 - 1.0) * r.ln() - 2.0 * p * (k.delta * r).ln();
        let mapped = |t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            let r = big_r / t;
            (ln_g(r)).exp() * r * r / big_r
        };
        let q = inverted_tail(mapped, tol * 1e-2, 100_000);
        if !q.converged || !q.value.is_finite() {
            return Tail::Unknown;
        }
        let b = poly_squared(f);
        let gmaj = f.c() * f.c() * k.delta.powf(-2.0 * p)
            * b.iter().enumerate().map(|(i, v)| v.abs() * big_r.powf(2.0 * i as f64 + n as f64 - 1.0 - 2.0 * p)).sum::<f64>();
        return Tail::Estimate {
            value: mean * q.value,
            error: mean * q.error + PI / k.delta * gmaj,
        };
    }
    let (coef, ex) = f.power_envelope();
    let e_env = 2.0 * ex + n as f64 - 1.0;
    Tail::Bound(coef * coef * big_r.powf(e_env + 1.0) / (-e_env - 1.0))
}

/// `|S^{n-1}| ∫_0^∞ |f₀(r)|² r^{n-1} dr`.
pub fn l2_norm_radial<E: RadialEvaluator + ?Sized>(f0: &E, n: usize, quad: &QuadConfig) -> Result<IntegralValue> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let integrand = |r: f64| {
        let v = f0.eval(r);
        v * v * r.powi(n as i32 - 1)
    };
    let sinc = f0.as_sinc_product();
    let value = integrate_half_line(
        |a, b, tol, budget| {
            let breaks = match f0.zeros_in(a, b) {
                Some(z) if z.len() > MAX_ZEROS_PER_PIECE => return PieceOutcome::Stop,
                Some(z) => z,
                None => {
                    let m = ((b - a).ceil() as usize).clamp(1, SCAN_CAP);
                    (1..m).map(|i| a + (b - a) * i as f64 / m as f64).collect()
                }
            };
            PieceOutcome::Done(adaptive_with_breaks(&integrand, a, b, &breaks, tol, budget))
        },
        |r| match sinc {
            Some(s) => l2_sinc_tail(s, n, r, quad.abs_tol),
            None => Tail::Unknown,
        },
        quad,
    );
    Ok(value.scaled(sphere_area(n)))
}

/// `max |f(x)| e^{Ω(x)}` over the points, computed in log space.
pub fn pointwise_minorization_check(
    f: &LiftedRadialFunction,
    spec: &WeightSpec,
    points: &[Vec<f64>],
) -> Result<VerificationReport> {
    if f.dim != spec.dim {
        return Err(Error::DimensionMismatch {
            expected: spec.dim,
            got: f.dim,
        });
    }
    let per_point: Vec<Result<(f64, f64)>> = points
        .par_iter()
        .map(|x| {
            if x.len() != f.dim {
                return Err(Error::DimensionMismatch {
                    expected: f.dim,
                    got: x.len(),
                });
            }
            let omega = spec.eval(x)?;
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let log_f = match &f.base {
                EvenFunction::Sinc(p) => p.log_abs(r),
                EvenFunction::Series(_) => f
                    .abs_at_real(x)
                    .map_err(|e| Error::Evaluation {
                        point: x.clone(),
                        reason: e.to_string(),
                    })?
                    .ln(),
            };
            Ok(((log_f + omega).exp(), log_f.exp()))
        })
        .collect();
    let mut worst = 0.0f64;
    let mut worst_idx = None;
    let mut max_f = 0.0f64;
    for (i, r) in per_point.into_iter().enumerate() {
        let (ratio, abs_f) = r?;
        max_f = max_f.max(abs_f);
        if worst_idx.is_none() || ratio > worst {
            worst = ratio;
            worst_idx = Some(i);
        }
    }
    let threshold = 1.0 + MINORIZATION_SLACK;
    let mut report = VerificationReport::new("pointwise-minorization", worst <= threshold, worst, threshold, points.len());
    report.worst_point = worst_idx.map(|i| points[i].clone());
    report.detail("max_abs_f", max_f);
    report.detail("non_trivial", max_f > 0.0);
    Ok(report)
}

/// Seeded test points in `ℝ^dim`: uniform directions with radii log-uniform on
/// `[r_min, r_max]`, so small and large scales are covered equally.
pub fn sample_points(dim: usize, count: usize, seed: u64, r_min: f64, r_max: f64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (la, lb) = (r_min.ln(), r_max.ln());
    (0..count)
        .map(|_| {
            let u = unit_vector(&mut rng, dim);
            let r = (la + (lb - la) * rng.random::<f64>()).exp();
            u.into_iter().map(|c| c * r).collect()
        })
        .collect()
}

/// Seeded pairs `(x, y)` with `x` uniform in `[-x_max, x_max]^dim` and `y` uniform in
/// direction with `‖y‖` uniform on `[0, y_max]`.
pub fn sample_complex_points(dim: usize, count: usize, seed: u64, x_max: f64, y_max: f64) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = (0..dim).map(|_| x_max * (2.0 * rng.random::<f64>() - 1.0)).collect();
            let t = y_max * rng.random::<f64>();
            let y = unit_vector(&mut rng, dim).into_iter().map(|c| c * t).collect();
            (x, y)
        })
        .collect()
}

fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}
