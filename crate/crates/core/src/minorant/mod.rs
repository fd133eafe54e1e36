//! Band-limited minorants built from sinc powers.
//!
//! A product `c · Π (sin(δ_k x)/(δ_k x))^{p_k}` has Fourier support in `[-Σ p_k δ_k, Σ p_k δ_k]`,
//! is bounded by `c`, and decays like `|x|^{-Σ p_k}`, so minorizing `e^{-Ω₀}` for a weight of
//! logarithmic growth comes down to choosing enough copies and calibrating `c`.

mod product;

pub use product::{sinc, sinc_complex, SincFactor, SincProduct, SINC_SERIES_SWITCH};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::weights::{LogEnvelope, RadialProfile};

/// Default share of `ε` spent on the minorization factor.
pub const DEFAULT_SPLIT: f64 = 0.5;
/// Default safety factor on calibrated constants.
pub const DEFAULT_SAFETY: f64 = 0.9;
/// `max|sinc'(u)|` rounded up.
const SINC_DERIV_MAX: f64 = 0.44;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorantOptions {
    /// Fraction of `ε` reserved for the minorization factor; the rest goes to the boost.
    pub split: f64,
    pub safety: f64,
    /// Calibration grid; `None` builds one from the shape.
    pub grid_max: Option<f64>,
}

impl Default for MinorantOptions {
    fn default() -> Self {
        MinorantOptions {
            split: DEFAULT_SPLIT,
            safety: DEFAULT_SAFETY,
            grid_max: None,
        }
    }
}

fn unsupported(why: &str) -> Error {
    Error::UnsupportedFamily(why.to_string())
}

/// Even 1-D minorant `F` with `spectral_radius(F) ≤ ε` and `|F| ≤ e^{-Ω₀}` on `ℝ`.
pub fn construct_minorant_1d(profile: &RadialProfile, n: usize, eps: f64) -> Result<SincProduct> {
    construct_minorant_1d_with(profile, n, eps, &MinorantOptions::default())
}

pub fn construct_minorant_1d_with(
    profile: &RadialProfile,
    n: usize,
    eps: f64,
    opts: &MinorantOptions,
) -> Result<SincProduct> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {eps}")));
    }
    if !(opts.split > 0.0 && opts.split <= 1.0) || !(opts.safety > 0.0 && opts.safety <= 1.0) {
        return Err(Error::InvalidInput("split and safety must lie in (0, 1]".into()));
    }
    let env = profile.log_envelope().ok_or_else(|| {
        unsupported("profile grows faster than any declared logarithmic envelope")
    })?;
    if !(env.kappa.is_finite() && env.c.is_finite()) {
        return Err(unsupported("non-finite envelope"));
    }
    let kappa = env.kappa.max(0.0);
    let p = minorization_power(profile, kappa);
    let minor_budget = eps * opts.split;
    let delta = minor_budget / p as f64;
    let mut shape = SincProduct::pure(1.0, &[(delta, p)])?;

    let boost_budget = eps - minor_budget;
    let threshold = 2.0 * kappa + n as f64;
    if decay_exponent(&shape) <= threshold {
        if boost_budget <= 0.0 {
            return Err(Error::Infeasible(
                "no spectrum left for the integrability factor; lower the split".into(),
            ));
        }
        shape = boost_past(&shape, n, threshold, boost_budget);
    }
    shape = fit_spectrum(shape, eps)?;

    let c = if profile.is_constant() {
        (-profile.eval(0.0)).exp()
    } else {
        let grid = default_grid(&shape, opts.grid_max);
        calibrate_with_envelope(&shape, profile, &env, &grid, opts.safety)?
    };
    if !(c > 0.0) {
        return Err(Error::Infeasible("calibrated scale is zero".into()));
    }
    shape.with_scale(c)
}

/// Copies of the sinc factor so that `x^{-p}` beats `(1+x²)^{-κ}`.
fn minorization_power(profile: &RadialProfile, kappa: f64) -> u32 {
    if profile.is_constant() {
        1
    } else {
        ((kappa.ceil() as u32) + 1).max((2.0 * kappa).ceil() as u32)
    }
}

/// Whether [`construct_minorant_1d`] multiplies in an integrability factor for this profile
/// in dimension `n`. When the factor shares its `δ` with the minorization factor the two
/// merge, so this cannot be read off the result.
pub fn boost_needed(profile: &RadialProfile, n: usize) -> Result<bool> {
    let env = profile
        .log_envelope()
        .ok_or_else(|| unsupported("profile grows faster than any declared logarithmic envelope"))?;
    let kappa = env.kappa.max(0.0);
    let p = minorization_power(profile, kappa);
    Ok(2.0 * p as f64 <= 2.0 * kappa + n as f64)
}

/// `2·(Σp - 2d)`, the exponent with `|F(x)|² = O(|x|^{-exponent})`.
fn decay_exponent(f: &SincProduct) -> f64 {
    2.0 * (f.total_power() as f64 - 2.0 * f.poly_half_degree() as f64)
}

fn boost_past(f: &SincProduct, n: usize, threshold: f64, budget: f64) -> SincProduct {
    let mut q = (n as u32 - 1).div_ceil(2) + 1;
    while decay_exponent(f) + 2.0 * q as f64 <= threshold {
        q += 1;
    }
    let eta = budget / q as f64;
    f.multiply(&SincProduct::pure(1.0, &[(eta, q)]).expect("positive eta"))
}

/// Make `∫|F|² |x|^{n-1} dx` finite by multiplying in `(sin(ηx)/(ηx))^q` with `qη = budget`.
/// Returns `F` unchanged when the integral already converges.
pub fn integrability_boost(f: &SincProduct, n: usize, budget: f64) -> SincProduct {
    if n == 0 || !(budget > 0.0) || decay_exponent(f) > n as f64 {
        return f.clone();
    }
    boost_past(f, n, n as f64, budget)
}

/// Shrink all frequencies by the smallest relative step that brings the exact spectral
/// radius under `eps`.
fn fit_spectrum(mut f: SincProduct, eps: f64) -> Result<SincProduct> {
    let mut shrink = 1.0;
    for _ in 0..64 {
        if f.spectrum_within(eps) {
            return Ok(f);
        }
        shrink *= 1.0 - f64::EPSILON;
        let factors: Vec<SincFactor> = f
            .factors()
            .iter()
            .map(|k| SincFactor {
                delta: k.delta * shrink,
                p: k.p,
            })
            .collect();
        f = SincProduct::new(f.c(), factors, f.poly().map(|p| p.to_vec()))?;
    }
    Err(Error::Infeasible("could not fit the spectrum under epsilon".into()))
}

/// `(f(x) + f(-x)) / 2` on a grid symmetric about 0.
pub fn evenize(samples: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    let mut s: Vec<(f64, f64)> = samples.to_vec();
    s.sort_by(|a, b| a.0.total_cmp(&b.0));
    let scale = s.iter().map(|p| p.0.abs()).fold(0.0, f64::max).max(1.0);
    let n = s.len();
    for i in 0..n {
        let (x, y) = (s[i].0, s[n - 1 - i].0);
        if (x + y).abs() > 1e-12 * scale {
            return Err(Error::AsymmetricGrid(format!("{x} has no mirror point (nearest {})", -y)));
        }
    }
    Ok((0..n).map(|i| (s[i].0, 0.5 * (s[i].1 + s[n - 1 - i].1))).collect())
}

/// Largest `c` with `|c·F_shape| ≤ e^{-Ω₀}`, times `safety`.
///
/// The value is `safety · min_grid e^{-Ω₀}/|F_shape|`, lowered if needed to what the
/// bracket certificate proves between grid points and in the tail.
pub fn calibrate_scale(shape: &SincProduct, profile: &RadialProfile, grid: &[f64], safety: f64) -> Result<f64> {
    let env = profile
        .log_envelope()
        .ok_or_else(|| unsupported("profile has no logarithmic envelope for the tail comparison"))?;
    calibrate_with_envelope(shape, profile, &env, grid, safety)
}

fn calibrate_with_envelope(
    shape: &SincProduct,
    profile: &RadialProfile,
    env: &LogEnvelope,
    grid: &[f64],
    safety: f64,
) -> Result<f64> {
    if !(safety > 0.0 && safety <= 1.0) {
        return Err(Error::InvalidInput("safety must lie in (0, 1]".into()));
    }
    let pts = positive_grid(grid);
    let x_max = *pts.last().unwrap_or(&0.0);
    let md = shape.min_delta().unwrap_or(1.0);
    let need = 1e2 * (1.0f64).max(1.0 / md);
    if x_max < need {
        return Err(Error::InvalidInput(format!(
            "calibration grid reaches {x_max}, needs at least {need}"
        )));
    }
    let grid_min = pts
        .par_iter()
        .filter_map(|&x| {
            let f = shape.eval(x).abs();
            (f > 0.0).then(|| (-profile.eval(x)).exp() / f)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let bracket_min = certified_bracket_min(shape, profile, &pts);
    let tail = tail_scale(shape, env, x_max)?;
    let c = (safety * grid_min).min(bracket_min).min(tail);
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Infeasible(format!(
            "scale infimum is {c}; the weight outgrows the shape"
        )));
    }
    Ok(c)
}

fn positive_grid(grid: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = grid.iter().map(|x| x.abs()).filter(|x| x.is_finite()).collect();
    pts.push(0.0);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Min over brackets `[a,b]` of `inf e^{-Ω₀} / sup |F|`, each side bounded rigorously.
fn certified_bracket_min(shape: &SincProduct, profile: &RadialProfile, pts: &[f64]) -> f64 {
    let breaks = profile.breakpoints();
    pts.par_windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let mut om = profile.eval(a).max(profile.eval(b));
            let lo = breaks.partition_point(|&e| e <= a);
            for &e in &breaks[lo..] {
                if e >= b {
                    break;
                }
                om = om.max(profile.eval(e));
            }
            let upper = bracket_sup(shape, a, b);
            if upper <= 0.0 {
                f64::INFINITY
            } else {
                (-om).exp() / upper
            }
        })
        .reduce(|| f64::INFINITY, f64::min)
}

/// Upper bound of `|F|` on `[a, b] ⊂ [0, ∞)`.
fn bracket_sup(f: &SincProduct, a: f64, b: f64) -> f64 {
    let env_s = |x: f64| -> f64 {
        f.factors()
            .iter()
            .map(|k| (1.0f64).min(1.0 / (k.delta * x)).powi(k.p as i32))
            .product()
    };
    let e = f.even_poly();
    let p_plus = f.poly_majorant(b);
    let env = f.c() * p_plus * env_s(a);

    // |S'| ≤ Σ_k p_k δ_k |sinc'(δ_k x)| Π_{j} E_j^{p_j} / E_k
    let mut ds = 0.0;
    for (i, k) in f.factors().iter().enumerate() {
        let u = k.delta * a;
        let dk = if u > 0.0 { SINC_DERIV_MAX.min((1.0 + 1.0 / u) / u) } else { SINC_DERIV_MAX };
        let mut prod = k.p as f64 * k.delta * dk * (1.0f64).min(1.0 / u).powi(k.p as i32 - 1);
        for (j, o) in f.factors().iter().enumerate() {
            if j != i {
                prod *= (1.0f64).min(1.0 / (o.delta * a)).powi(o.p as i32);
            }
        }
        ds += prod;
    }
    let dp_plus: f64 = e
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, v)| v.abs() * 2.0 * j as f64 * b.powi(2 * j as i32 - 1))
        .sum();
    let lip = f.c() * (dp_plus * env_s(a) + p_plus * ds);
    let lin = f.eval(a).abs().max(f.eval(b).abs()) + 0.5 * lip * (b - a);
    env.min(lin)
}

/// Inf over `x ≥ X` of `e^{-C}(1+x²)^{-κ} / (coef·x^{2d-P})`.
fn tail_scale(shape: &SincProduct, env: &LogEnvelope, x: f64) -> Result<f64> {
    let (coef, exponent) = shape.power_envelope();
    let slack = -exponent - 2.0 * env.kappa;
    if slack < -1e-12 {
        return Err(Error::Infeasible(format!(
            "shape decays like |x|^{exponent} but the weight allows only |x|^{}",
            -2.0 * env.kappa
        )));
    }
    // x^{-exponent} (1+x²)^{-κ} is nondecreasing once -exponent ≥ 2κ, so the inf sits at X
    let x = x.max(1.0);
    let weight_lower = (-env.c).exp() * (1.0 + x * x).powf(-env.kappa);
    let shape_upper = coef * x.powf(exponent);
    Ok(weight_lower / shape_upper)
}

/// Checks `|F| ≤ e^{-Ω₀}` three ways: pointwise on the grid, certified on every bracket
/// between grid points, and certified in the tail beyond the grid.
pub fn certify_bound(f: &SincProduct, profile: &RadialProfile, grid: &[f64]) -> Result<VerificationReport> {
    let env = profile
        .log_envelope()
        .ok_or_else(|| unsupported("profile has no logarithmic envelope for the tail comparison"))?;
    let pts = positive_grid(grid);
    let x_max = *pts.last().unwrap_or(&0.0);
    let (pointwise, worst) = pts
        .par_iter()
        .map(|&x| ((f.log_abs(x) + profile.eval(x)).exp(), x))
        .reduce(|| (0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a });
    let bracket = 1.0 / certified_bracket_min(f, profile, &pts);
    let tail = tail_scale(f, &env, x_max).map(|t| 1.0 / t);
    let threshold = 1.0 + 1e-12;
    let tail_ok = matches!(tail, Ok(t) if t <= threshold);
    let pass = pointwise <= threshold && bracket <= threshold && tail_ok;
    let mut r = VerificationReport::new("certified-bound", pass, pointwise, threshold, pts.len());
    r.worst_point = Some(vec![worst]);
    r.detail("bracket_ratio", bracket);
    match tail {
        Ok(t) => r.detail("tail_ratio", t),
        Err(e) => r.detail("tail_ratio", e.to_string()),
    }
    r.detail("grid_max", x_max);
    Ok(r)
}

/// [`certify_bound`] for `|G₀ f₀| ≤ 1`.
pub fn certify_product_bound(g: &SincProduct, f0: &SincProduct, grid: &[f64]) -> Result<VerificationReport> {
    let mut r = certify_bound(&g.multiply(f0), &RadialProfile::Bounded { m: 0.0 }, grid)?;
    r.check = "product-bound".into();
    Ok(r)
}

/// Dense calibration grid: uniform near the origin, geometric out to
/// `max(grid_max, 10²·max(1, 1/min δ))`.
pub fn default_grid(shape: &SincProduct, grid_max: Option<f64>) -> Vec<f64> {
    let md = shape.min_delta().unwrap_or(1.0);
    let sigma = shape.spectral_radius().max(1e-12);
    let x_max = (1e2 * (1.0f64).max(1.0 / md) * (1.0 + 1e-9)).max(grid_max.unwrap_or(0.0));
    let x0 = (20.0 * (1.0f64).max(1.0 / md)).min(x_max);
    let h = 2e-3 * (1.0f64).min(1.0 / sigma);
    let n0 = (x0 / h).ceil() as usize;
    let mut g: Vec<f64> = (0..=n0).map(|i| i as f64 * x0 / n0 as f64).collect();
    let mut x = x0;
    while x < x_max {
        x = (x * 1.001).min(x_max);
        g.push(x);
    }
    g
}

/// Multiplier `G₀ = c_G (sin(ηx)/(ηx))^q` with `q = d+1`, `qη = ε` and `|G₀ f₀| ≤ 1` on `ℝ`.
///
/// Returns `G₀ ≡ 1` when `|f₀| ≤ 1` is already evident.
pub fn construct_multiplier(f0: &SincProduct, eps: f64, grid: Option<&[f64]>) -> Result<SincProduct> {
    construct_multiplier_with(f0, eps, grid, DEFAULT_SAFETY)
}

pub fn construct_multiplier_with(
    f0: &SincProduct,
    eps: f64,
    grid: Option<&[f64]>,
    safety: f64,
) -> Result<SincProduct> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {eps}")));
    }
    if f0.poly_half_degree() == 0 && f0.scale_bound() <= 1.0 {
        return SincProduct::pure(1.0, &[]);
    }
    let d = f0.poly_half_degree();
    let q = d as u32 + 1;
    let eta = eps / q as f64;
    let g_shape = fit_spectrum(SincProduct::pure(1.0, &[(eta, q)])?, eps)?;
    let h = g_shape.multiply(f0);
    if h.power_envelope().1 > 1e-12 {
        return Err(Error::Infeasible(format!(
            "f0 grows like |x|^{} against the multiplier's decay; not representable with q = d+1",
            h.power_envelope().1 + q as f64
        )));
    }
    let owned;
    let pts = match grid {
        Some(g) => g,
        None => {
            owned = default_grid(&h, None);
            &owned
        }
    };
    let unit = RadialProfile::Bounded { m: 0.0 };
    let env = LogEnvelope { kappa: 0.0, c: 0.0 };
    let c = calibrate_with_envelope(&h, &unit, &env, pts, safety)?;
    g_shape.with_scale(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_growth(kappa: f64, c: f64) -> RadialProfile {
        RadialProfile::LogGrowth { kappa, c }
    }

    #[test]
    fn bounded_example() {
        let f = construct_minorant_1d(&RadialProfile::Bounded { m: 2.0 }, 1, 1.0).unwrap();
        assert!((f.c() - (-2f64).exp()).abs() < 1e-16);
        assert_eq!(f.factors(), &[SincFactor { delta: 0.5, p: 1 }]);
        assert!(f.spectrum_within(1.0));
    }

    #[test]
    fn zero_weight_example() {
        let f = construct_minorant_1d(&log_growth(0.0, 0.0), 1, 1.0).unwrap();
        assert_eq!(f.c(), 1.0);
        assert!(f.spectrum_within(1.0));
        for i in 0..1000 {
            assert!(f.eval(i as f64 * 0.37).abs() <= 1.0);
        }
    }

    #[test]
    fn log_growth_example() {
        let f = construct_minorant_1d(&log_growth(1.0, 0.0), 2, 1.0).unwrap();
        assert!(f.spectrum_within(1.0));
        // two minorization copies plus the boost
        assert!(f.total_power() >= 3);
        assert!(decay_exponent(&f) > 4.0);
        for i in 0..200_000 {
            let x = i as f64 * 0.05;
            assert!(f.eval(x).abs() * (1.0 + x * x) <= 1.0, "x = {x}");
        }
    }

    #[test]
    fn large_kappa_needs_more_copies() {
        let f = construct_minorant_1d(&log_growth(2.5, 1.0), 3, 0.5).unwrap();
        assert!(f.spectrum_within(0.5));
        assert!(decay_exponent(&f) > 2.0 * 2.5 + 3.0);
        for i in 0..50_000 {
            let x = i as f64 * 0.1;
            assert!(f.log_abs(x) <= -(2.5 * (x * x).ln_1p() + 1.0) + 1e-12);
        }
    }

    #[test]
    fn power_tail_is_unsupported() {
        let p = RadialProfile::PiecewiseConstant {
            edges: vec![0.0, 1.0],
            values: vec![1.0, 2.0],
            tail_start: 2.0,
            tail: crate::weights::ProfileTail::Power { alpha: 0.5 },
            samples: 0,
        };
        let e = construct_minorant_1d(&p, 2, 1.0).unwrap_err();
        assert!(e.to_string().contains("family not constructively supported"));
    }

    #[test]
    fn evenize_examples() {
        let odd = evenize(&[(-1.0, -1.0), (0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert!(odd.iter().all(|p| p.1 == 0.0));
        let pts: Vec<(f64, f64)> = (-2..=2).map(|i| (i as f64, i as f64 + (i * i) as f64)).collect();
        let e = evenize(&pts).unwrap();
        assert_eq!(e.iter().map(|p| p.1).collect::<Vec<_>>(), vec![4.0, 1.0, 0.0, 1.0, 4.0]);
        assert!(matches!(evenize(&[(-1.0, 0.0), (2.0, 0.0)]), Err(Error::AsymmetricGrid(_))));
    }

    #[test]
    fn boost_examples() {
        let s1 = SincProduct::pure(1.0, &[(1.0, 1)]).unwrap();
        assert_eq!(integrability_boost(&s1, 1, 0.5), s1);
        let s = SincProduct::pure(1.0, &[(0.5, 1)]).unwrap();
        let b = integrability_boost(&s, 3, 0.5);
        assert_eq!(b.factors().len(), 2);
        assert_eq!(b.factors()[1], SincFactor { delta: 0.25, p: 2 });
        assert!((b.spectral_radius() - 1.0).abs() < 1e-15);
        let s2 = SincProduct::pure(1.0, &[(0.25, 2)]).unwrap();
        assert_eq!(integrability_boost(&s2, 2, 0.5), s2);
    }

    #[test]
    fn calibrate_examples() {
        let s2 = SincProduct::pure(1.0, &[(1.0, 2)]).unwrap();
        let g = default_grid(&s2, None);
        assert!((calibrate_scale(&s2, &log_growth(0.0, 0.0), &g, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let c = calibrate_scale(&s2, &RadialProfile::Bounded { m: 3.0 }, &g, 1.0).unwrap();
        assert!((c - (-3f64).exp()).abs() < 1e-15);
        assert!(calibrate_scale(&s2, &log_growth(0.0, 0.0), &[0.0, 1.0], 1.0).is_err());
        // x^{-2} cannot beat (1+x²)^{-2}
        assert!(matches!(
            calibrate_scale(&s2, &log_growth(2.0, 0.0), &g, 1.0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn multiplier_examples() {
        let s = SincProduct::pure(1.0, &[(1.0, 1)]).unwrap();
        let g = construct_multiplier(&s, 1.0, None).unwrap();
        assert!(g.factors().is_empty() && g.c() == 1.0);

        let f0 = SincProduct::new(1.0, vec![SincFactor { delta: 1.0, p: 1 }], Some(vec![0.0, 0.0, 1.0])).unwrap();
        let g = construct_multiplier(&f0, 1.0, None).unwrap();
        assert_eq!(g.factors(), &[SincFactor { delta: 0.5, p: 2 }]);
        for i in 0..100_000 {
            let x = i as f64 * 0.01;
            assert!((g.eval(x) * f0.eval(x)).abs() <= 1.0);
        }

        let f6 = SincProduct::new(1.0, vec![SincFactor { delta: 1.0, p: 3 }], Some(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        let g = construct_multiplier(&f6, 0.3, None).unwrap();
        assert_eq!(g.total_power(), 4);
        assert!((g.factors()[0].delta - 0.075).abs() < 1e-15);
        assert!(g.spectrum_within(0.3));
    }
}
