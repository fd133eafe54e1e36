//! Even entire functions of exponential type and their lift to `ℂⁿ`.
//!
//! An even function `f₀(ζ) = Σ a_m ζ^{2m}` lifts to `f(z) = Σ a_m (z₁² + ... + z_n²)^m`. Since
//! `f₀` is even, `f(z) = f₀(ζ)` for either square root `ζ` of `w = Σ z_j²`; the root with
//! `Im ζ ≥ 0` satisfies `|Im ζ| ≤ ‖Im z‖`, which carries the bound `|f₀(a+ib)| ≤ A e^{σ|b|}`
//! over to `|f(x+iy)| ≤ A e^{σ‖y‖}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minorant::SincProduct;
use crate::report::VerificationReport;

/// Truncation tail must stay below this fraction of the declared bound.
pub const TRUNCATION_TOL: f64 = 1e-12;
/// Default certified radius in units of `1/σ`.
pub const DEFAULT_TYPE_RADIUS: f64 = 10.0;
/// Radius used when the declared type is zero.
pub const ZERO_TYPE_RADIUS: f64 = 1e3;

/// Truncated even power series `Σ_{m ≤ M} a_m ζ^{2m}` with a certified radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct EvenPowerSeries {
    coeffs: Vec<Complex64>,
    sigma: f64,
    bound: f64,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
struct RawSeries {
    coeffs: Vec<[f64; 2]>,
    #[serde(rename = "type")]
    sigma: f64,
    bound: f64,
    radius: f64,
}

impl TryFrom<RawSeries> for EvenPowerSeries {
    type Error = Error;
    fn try_from(r: RawSeries) -> Result<Self> {
        EvenPowerSeries::new(
            r.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            r.sigma,
            r.bound,
            r.radius,
        )
    }
}

impl From<EvenPowerSeries> for RawSeries {
    fn from(s: EvenPowerSeries) -> Self {
        RawSeries {
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            sigma: s.sigma,
            bound: s.bound,
            radius: s.radius,
        }
    }
}

impl EvenPowerSeries {
    pub fn new(coeffs: Vec<Complex64>, sigma: f64, bound: f64, radius: f64) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("coefficients must be finite and nonempty".into()));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidInput("type must be finite and nonnegative".into()));
        }
        if !(bound > 0.0 && bound.is_finite()) || !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput("bound and radius must be positive and finite".into()));
        }
        Ok(EvenPowerSeries {
            coeffs,
            sigma,
            bound,
            radius,
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn declared_type(&self) -> f64 {
        self.sigma
    }

    pub fn declared_bound(&self) -> f64 {
        self.bound
    }

    pub fn truncation_radius(&self) -> f64 {
        self.radius
    }

    fn check_radius(&self, modulus: f64) -> Result<()> {
        if modulus > self.radius * (1.0 + 1e-12) {
            return Err(Error::OutOfCertifiedRange {
                modulus,
                radius: self.radius,
            });
        }
        Ok(())
    }

    /// Horner in `w = ζ²`.
    pub fn eval_w(&self, w: Complex64) -> Result<Complex64> {
        self.check_radius(w.norm().sqrt())?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * w + a))
    }
}

/// Base of a lifted function: a truncated series or a closed-form sinc product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EvenFunction {
    Series(EvenPowerSeries),
    Sinc(SincProduct),
}

impl From<EvenPowerSeries> for EvenFunction {
    fn from(s: EvenPowerSeries) -> Self {
        EvenFunction::Series(s)
    }
}

impl From<SincProduct> for EvenFunction {
    fn from(s: SincProduct) -> Self {
        EvenFunction::Sinc(s)
    }
}

impl EvenFunction {
    /// Radius within which evaluation is certified (`∞` for closed forms).
    pub fn certified_radius(&self) -> f64 {
        match self {
            EvenFunction::Series(s) => s.radius,
            EvenFunction::Sinc(_) => f64::INFINITY,
        }
    }

    /// Exact type for sinc products, declared type for series.
    pub fn exponential_type(&self) -> f64 {
        match self {
            EvenFunction::Series(s) => s.sigma,
            EvenFunction::Sinc(p) => p.spectral_radius(),
        }
    }
}

/// `f₀(ζ)`.
pub fn eval_even_1d(f0: &EvenFunction, zeta: Complex64) -> Result<Complex64> {
    match f0 {
        EvenFunction::Series(s) => {
            s.check_radius(zeta.norm())?;
            s.eval_w(zeta * zeta)
        }
        EvenFunction::Sinc(p) => Ok(p.eval_complex(zeta)),
    }
}

/// The square root of `w` with nonnegative imaginary part; for real `w ≥ 0` the nonnegative
/// real root.
pub fn min_im_sqrt(w: Complex64) -> Complex64 {
    let mut z = w.sqrt();
    if z.im < 0.0 || (z.im == 0.0 && z.re < 0.0) {
        z = -z;
    }
    // normalise signed zeros
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

/// `f(z) = f₀(√(z₁²+...+z_n²))` on `ℂ^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedRadialFunction {
    pub dim: usize,
    pub base: EvenFunction,
}

/// Evaluation route for [`lift_eval_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftPath {
    /// Evaluate the base at `ζ = min_im_sqrt(w)`.
    AtRoot,
    /// Horner directly in `w` (series bases only).
    HornerInW,
}

impl LiftedRadialFunction {
    pub fn new(dim: usize, base: impl Into<EvenFunction>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dim must be positive".into()));
        }
        Ok(LiftedRadialFunction {
            dim,
            base: base.into(),
        })
    }

    /// `|f(x)|` for real `x`.
    pub fn abs_at_real(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        match &self.base {
            EvenFunction::Sinc(p) => Ok(p.eval(r).abs()),
            EvenFunction::Series(_) => Ok(eval_even_1d(&self.base, Complex64::new(r, 0.0))?.norm()),
        }
    }
}

fn sum_of_squares(z: &[Complex64]) -> Complex64 {
    z.iter().fold(Complex64::new(0.0, 0.0), |acc, &v| acc + v * v)
}

pub fn lift_eval(f: &LiftedRadialFunction, z: &[Complex64]) -> Result<Complex64> {
    lift_eval_with(f, z, LiftPath::AtRoot)
}

pub fn lift_eval_with(f: &LiftedRadialFunction, z: &[Complex64], path: LiftPath) -> Result<Complex64> {
    if z.len() != f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: z.len(),
        });
    }
    let w = sum_of_squares(z);
    match (path, &f.base) {
        (LiftPath::AtRoot, base) => eval_even_1d(base, min_im_sqrt(w)),
        (LiftPath::HornerInW, EvenFunction::Series(s)) => s.eval_w(w),
        (LiftPath::HornerInW, EvenFunction::Sinc(_)) => Err(Error::InvalidInput(
            "Horner-in-w needs a series base; expand with taylor_coeffs first".into(),
        )),
    }
}

/// Real-point convenience wrapper.
pub fn lift_eval_real(f: &LiftedRadialFunction, x: &[f64]) -> Result<Complex64> {
    let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    lift_eval(f, &z)
}

/// Max over the grid of `|f(x+iy)| e^{-σ‖y‖} / A`; passes iff it is at most `1 + slack`.
pub fn check_lifting_bound(
    f: &LiftedRadialFunction,
    grid: &[(Vec<f64>, Vec<f64>)],
    bound: f64,
    sigma: f64,
    slack: f64,
) -> Result<VerificationReport> {
    if !(bound > 0.0) {
        return Err(Error::InvalidInput("bound A must be positive".into()));
    }
    let ratios: Vec<Result<f64>> = grid
        .par_iter()
        .map(|(x, y)| {
            if x.len() != f.dim || y.len() != f.dim {
                return Err(Error::DimensionMismatch {
                    expected: f.dim,
                    got: x.len().min(y.len()),
                });
            }
            let z: Vec<Complex64> = x.iter().zip(y).map(|(&a, &b)| Complex64::new(a, b)).collect();
            let v = lift_eval(f, &z).map_err(|e| Error::Evaluation {
                point: x.iter().chain(y).copied().collect(),
                reason: e.to_string(),
            })?;
            let ny = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            Ok(v.norm() * (-sigma * ny).exp() / bound)
        })
        .collect();
    let mut worst = 0.0f64;
    let mut worst_idx = None;
    for (i, r) in ratios.into_iter().enumerate() {
        let r = r?;
        if worst_idx.is_none() || r > worst {
            worst = r;
            worst_idx = Some(i);
        }
    }
    let mut report = VerificationReport::new("lifting-bound", worst <= 1.0 + slack, worst, 1.0 + slack, grid.len());
    if let Some(i) = worst_idx {
        let (x, y) = &grid[i];
        report.worst_point = Some(x.iter().chain(y).copied().collect());
    }
    report.detail("bound", bound);
    report.detail("sigma", sigma);
    Ok(report)
}

/// Coefficients of `sin(δx)/(δx)` in `w = x²`: `(-1)^m δ^{2m} / (2m+1)!`, with `signed = false`
/// giving the absolute values.
fn sinc_w_coeffs(delta: f64, len: usize, signed: bool) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let d2 = delta * delta;
    let mut term = 1.0;
    for m in 0..len {
        if m > 0 {
            term *= d2 / ((2 * m) as f64 * (2 * m + 1) as f64);
        }
        out.push(if signed && m % 2 == 1 { -term } else { term });
    }
    out
}

fn mul_truncated(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut r = vec![0.0; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            r[i + j] += x * y;
        }
    }
    r
}

fn product_w_coeffs(f0: &SincProduct, len: usize, signed: bool) -> Vec<f64> {
    let mut acc = vec![0.0; len];
    acc[0] = 1.0;
    for f in f0.factors() {
        let s = sinc_w_coeffs(f.delta, len, signed);
        for _ in 0..f.p {
            acc = mul_truncated(&acc, &s, len);
        }
    }
    acc
}

/// `Σ_{m > k} B_m ρ^{2m}` for the coefficientwise majorant `B` of the sinc factors.
///
/// `B` is a convolution of log-concave sequences, so term ratios are nonincreasing and
/// the remainder after a term with ratio `q < 1` is at most `t·q/(1-q)`.
fn majorant_tail(f0: &SincProduct, k: usize, rho: f64) -> f64 {
    if f0.factors().is_empty() {
        return 0.0;
    }
    let r2 = rho * rho;
    let mut len = (k + 8).max(16);
    loop {
        let b = product_w_coeffs(f0, len, false);
        let terms: Vec<f64> = b.iter().enumerate().map(|(m, &v)| v * r2.powi(m as i32)).collect();
        let last = len - 1;
        let q = terms[last] / terms[last - 1];
        if q < 0.5 && last > k {
            let head: f64 = terms[k + 1..=last].iter().sum();
            return head + terms[last] * q / (1.0 - q);
        }
        if len > 20_000 {
            return f64::INFINITY;
        }
        len *= 2;
    }
}

/// Certified bound on the truncation error of the first `m_terms` coefficients at `rho`.
fn truncation_tail(f0: &SincProduct, m_max: usize, rho: f64) -> f64 {
    let e = f0.even_poly();
    let d = e.len() - 1;
    let poly_major: f64 = e.iter().enumerate().map(|(j, v)| v.abs() * rho.powi(2 * j as i32)).sum();
    if m_max < d {
        return f64::INFINITY;
    }
    f0.c() * poly_major * majorant_tail(f0, m_max - d, rho)
}

fn default_radius(f0: &SincProduct) -> f64 {
    let s = f0.spectral_radius();
    if s > 0.0 {
        DEFAULT_TYPE_RADIUS / s
    } else {
        ZERO_TYPE_RADIUS
    }
}

/// Taylor coefficients `a_0..a_M` (of `ζ^0..ζ^{2M}`) of a sinc product, certified at the
/// largest radius up to `10/σ` for which the truncation tail is at most `1e-12·A`.
pub fn taylor_coeffs(f0: &SincProduct, m: usize) -> Result<EvenPowerSeries> {
    if m == 0 {
        return Err(Error::InvalidInput("M must be at least 1".into()));
    }
    let bound = f0.scale_bound();
    let target = TRUNCATION_TOL * bound;
    let mut rho = default_radius(f0);
    if truncation_tail(f0, m, rho) > target {
        let (mut lo, mut hi) = (0.0, rho);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if truncation_tail(f0, m, mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rho = lo;
    }
    if !(rho > 0.0) {
        return Err(Error::TruncationTooShort {
            given: m,
            required: required_terms(f0, default_radius(f0)),
            radius: default_radius(f0),
        });
    }
    build_series(f0, m, rho, bound)
}

/// Same as [`taylor_coeffs`] but certified at a requested radius.
pub fn taylor_coeffs_at(f0: &SincProduct, m: usize, radius: f64) -> Result<EvenPowerSeries> {
    if m == 0 {
        return Err(Error::InvalidInput("M must be at least 1".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput("radius must be positive and finite".into()));
    }
    let bound = f0.scale_bound();
    if truncation_tail(f0, m, radius) > TRUNCATION_TOL * bound {
        return Err(Error::TruncationTooShort {
            given: m,
            required: required_terms(f0, radius),
            radius,
        });
    }
    build_series(f0, m, radius, bound)
}

fn required_terms(f0: &SincProduct, radius: f64) -> usize {
    let target = TRUNCATION_TOL * f0.scale_bound();
    let mut m = 1;
    while m < 100_000 && truncation_tail(f0, m, radius) > target {
        m = if m < 64 { m + 1 } else { m + m / 8 };
    }
    m
}

fn build_series(f0: &SincProduct, m: usize, radius: f64, bound: f64) -> Result<EvenPowerSeries> {
    let len = m + 1;
    let base = product_w_coeffs(f0, len, true);
    let coeffs = mul_truncated(&f0.even_poly(), &base, len);
    EvenPowerSeries::new(
        coeffs.into_iter().map(|a| Complex64::new(a * f0.c(), 0.0)).collect(),
        f0.spectral_radius(),
        bound,
        radius,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeEstimate {
    /// Least-squares slope of `log|f₀(it)|` against `t`.
    pub slope: f64,
    /// Exact type when the base is a closed form.
    pub exact: Option<f64>,
}

/// Growth rate of `f₀` along the imaginary axis.
pub fn estimate_type(f0: &EvenFunction, t_grid: &[f64]) -> Result<TypeEstimate> {
    if t_grid.len() < 3 {
        return Err(Error::InvalidInput("t_grid needs at least 3 points".into()));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) || !(t_grid[0] > 0.0) {
        return Err(Error::InvalidInput("t_grid must be increasing and positive".into()));
    }
    let logs: Vec<f64> = t_grid
        .iter()
        .map(|&t| {
            let l = match f0 {
                EvenFunction::Sinc(p) => p.log_abs_imag(t),
                EvenFunction::Series(_) => eval_even_1d(f0, Complex64::new(0.0, t))?.norm().ln(),
            };
            if l.is_finite() {
                Ok(l)
            } else {
                Err(Error::Evaluation {
                    point: vec![0.0, t],
                    reason: "f0 vanishes on the imaginary axis".into(),
                })
            }
        })
        .collect::<Result<_>>()?;
    let n = t_grid.len() as f64;
    let mt = t_grid.iter().sum::<f64>() / n;
    let ml = logs.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, l) in t_grid.iter().zip(&logs) {
        sxy += (t - mt) * (l - ml);
        sxx += (t - mt) * (t - mt);
    }
    Ok(TypeEstimate {
        slope: (sxy / sxx).max(0.0),
        exact: match f0 {
            EvenFunction::Sinc(p) => Some(p.spectral_radius()),
            EvenFunction::Series(_) => None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sinc_series() -> EvenFunction {
        let p = SincProduct::pure(1.0, &[(1.0, 1)]).unwrap();
        EvenFunction::Series(taylor_coeffs(&p, 40).unwrap())
    }

    #[test]
    fn eval_even_1d_examples() {
        let s = sinc_series();
        assert_eq!(eval_even_1d(&s, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!(eval_even_1d(&s, c(std::f64::consts::PI, 0.0)).unwrap().norm() < 1e-12);
        let v = eval_even_1d(&s, c(0.0, 1.0)).unwrap();
        assert!((v - c(1f64.sinh(), 0.0)).norm() < 1e-12);
        assert!(matches!(
            eval_even_1d(&s, c(100.0, 0.0)),
            Err(Error::OutOfCertifiedRange { .. })
        ));
    }

    #[test]
    fn min_im_sqrt_examples() {
        assert_eq!(min_im_sqrt(c(1.0, 0.0)), c(1.0, 0.0));
        assert_eq!(min_im_sqrt(c(-1.0, 0.0)), c(0.0, 1.0));
        assert_eq!(min_im_sqrt(c(-1.0, -0.0)), c(0.0, 1.0));
        assert!((min_im_sqrt(c(0.0, 2.0)) - c(1.0, 1.0)).norm() < 1e-15);
        let r = min_im_sqrt(c(3.0, -4.0));
        assert!(r.im >= 0.0 && (r * r - c(3.0, -4.0)).norm() < 1e-14);
    }

    #[test]
    fn lift_eval_examples() {
        let one = EvenPowerSeries::new(vec![c(1.0, 0.0)], 0.0, 1.0, 1e6).unwrap();
        let f = LiftedRadialFunction::new(3, one).unwrap();
        assert_eq!(lift_eval(&f, &[c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 7.0)]).unwrap(), c(1.0, 0.0));

        let sinc = LiftedRadialFunction::new(2, SincProduct::pure(1.0, &[(1.0, 1)]).unwrap()).unwrap();
        let v = lift_eval_real(&sinc, &[3.0, 4.0]).unwrap();
        assert!((v.re - 5f64.sin() / 5.0).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!((v.re + 0.191_785).abs() < 1e-6);
        let v = lift_eval(&sinc, &[c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert!((v - c(1f64.sinh(), 0.0)).norm() < 1e-15);
        assert!(matches!(
            lift_eval(&sinc, &[c(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(lift_eval_with(&sinc, &[c(1.0, 0.0), c(0.0, 0.0)], LiftPath::HornerInW).is_err());
    }

    #[test]
    fn lifting_bound_examples() {
        let grid: Vec<(Vec<f64>, Vec<f64>)> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.05;
                (vec![t, -0.5 * t, 1.0], vec![0.0, (t / 2.0).min(3.0), -(t / 3.0).min(3.5)])
            })
            .collect();
        let one = EvenPowerSeries::new(vec![c(1.0, 0.0)], 0.0, 1.0, 1e6).unwrap();
        let f = LiftedRadialFunction::new(3, one).unwrap();
        let r = check_lifting_bound(&f, &grid, 1.0, 0.0, 0.0).unwrap();
        assert!(r.pass && (r.statistic - 1.0).abs() < 1e-15);

        let sinc = LiftedRadialFunction::new(3, SincProduct::pure(1.0, &[(1.0, 1)]).unwrap()).unwrap();
        assert!(check_lifting_bound(&sinc, &grid, 1.0, 1.0, 0.0).unwrap().pass);
        let bad = vec![(vec![0.0; 3], vec![0.0, 0.0, 5.0])];
        let r = check_lifting_bound(&sinc, &bad, 1.0, 0.5, 0.0).unwrap();
        assert!(!r.pass);
        assert!((r.statistic - 5f64.sinh() / 5.0 * (-2.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn taylor_coeffs_examples() {
        let s = taylor_coeffs(&SincProduct::pure(1.0, &[(1.0, 1)]).unwrap(), 3).unwrap();
        let a = s.coeffs();
        assert_eq!(a.len(), 4);
        assert!((a[0].re - 1.0).abs() < 1e-16);
        assert!((a[1].re + 1.0 / 6.0).abs() < 1e-16);
        assert!((a[2].re - 1.0 / 120.0).abs() < 1e-16);
        assert!(s.truncation_radius() > 0.0 && s.truncation_radius() < 1.0);

        let s2 = taylor_coeffs(&SincProduct::pure(2.0, &[(1.0, 1)]).unwrap(), 3).unwrap();
        for (x, y) in s.coeffs().iter().zip(s2.coeffs()) {
            assert_eq!(*y, *x * 2.0);
        }

        // sinc² = (1 - x²/6 + x⁴/120)² = 1 - x²/3 + (1/36 + 1/60) x⁴ + ...
        let sq = taylor_coeffs(&SincProduct::pure(1.0, &[(1.0, 2)]).unwrap(), 4).unwrap();
        assert!((sq.coeffs()[0].re - 1.0).abs() < 1e-16);
        assert!((sq.coeffs()[1].re + 1.0 / 3.0).abs() < 1e-16);
        assert!((sq.coeffs()[2].re - 2.0 / 45.0).abs() < 1e-16);
    }

    #[test]
    fn taylor_coeffs_reports_required_terms() {
        let f = SincProduct::pure(1.0, &[(1.0, 1)]).unwrap();
        match taylor_coeffs_at(&f, 5, 10.0) {
            Err(Error::TruncationTooShort { required, .. }) => {
                assert!(required > 5);
                assert!(taylor_coeffs_at(&f, required, 10.0).is_ok());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn default_radius_is_ten_over_type() {
        let f = SincProduct::pure(1.0, &[(0.5, 2)]).unwrap();
        let s = taylor_coeffs(&f, 80).unwrap();
        assert!((s.truncation_radius() - 10.0).abs() < 1e-12);
        assert_eq!(s.declared_type(), 1.0);
    }

    #[test]
    fn estimate_type_examples() {
        let one = EvenFunction::Series(EvenPowerSeries::new(vec![c(1.0, 0.0)], 0.0, 1.0, 1e6).unwrap());
        let grid: Vec<f64> = (10..=50).map(f64::from).collect();
        assert_eq!(estimate_type(&one, &grid).unwrap().slope, 0.0);
        let s1 = EvenFunction::Sinc(SincProduct::pure(1.0, &[(1.0, 1)]).unwrap());
        let e = estimate_type(&s1, &grid).unwrap();
        assert!((e.slope - 1.0).abs() < 0.05 && e.exact == Some(1.0));
        let s2 = EvenFunction::Sinc(SincProduct::pure(1.0, &[(2.0, 1)]).unwrap());
        assert!((estimate_type(&s2, &grid).unwrap().slope - 2.0).abs() < 0.1);
        assert!(estimate_type(&s2, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn series_json_shape() {
        let s: EvenPowerSeries =
            serde_json::from_str(r#"{"coeffs":[[1,0],[-0.5,0]],"type":1,"bound":1,"radius":2}"#).unwrap();
        assert_eq!(s.coeffs().len(), 2);
        let f: LiftedRadialFunction =
            serde_json::from_str(r#"{"dim":2,"base":{"c":1,"factors":[{"delta":1,"p":1}],"poly":null}}"#).unwrap();
        assert!(matches!(f.base, EvenFunction::Sinc(_)));
        let f: LiftedRadialFunction =
            serde_json::from_str(r#"{"dim":2,"base":{"coeffs":[[1,0]],"type":0,"bound":1,"radius":5}}"#).unwrap();
        assert!(matches!(f.base, EvenFunction::Series(_)));
    }
}
