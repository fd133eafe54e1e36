use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this `|u|` the factor `sin u / u` is summed from its series.
pub const SINC_SERIES_SWITCH: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SincFactor {
    pub delta: f64,
    pub p: u32,
}

/// `c · poly(x) · Π_k (sin(δ_k x) / (δ_k x))^{p_k}`.
///
/// `poly` holds ascending coefficients of `x^0, x^1, ...`; only even powers may be nonzero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSincProduct", into = "RawSincProduct")]
pub struct SincProduct {
    c: f64,
    factors: Vec<SincFactor>,
    poly: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawSincProduct {
    c: f64,
    #[serde(default)]
    factors: Vec<SincFactor>,
    #[serde(default)]
    poly: Option<Vec<f64>>,
}

impl TryFrom<RawSincProduct> for SincProduct {
    type Error = Error;
    fn try_from(r: RawSincProduct) -> Result<Self> {
        SincProduct::new(r.c, r.factors, r.poly)
    }
}

impl From<SincProduct> for RawSincProduct {
    fn from(s: SincProduct) -> Self {
        RawSincProduct {
            c: s.c,
            factors: s.factors,
            poly: s.poly,
        }
    }
}

pub fn sinc(u: f64) -> f64 {
    if u.abs() < SINC_SERIES_SWITCH {
        let w = u * u;
        1.0 - w / 6.0 * (1.0 - w / 20.0 * (1.0 - w / 42.0 * (1.0 - w / 72.0 * (1.0 - w / 110.0))))
    } else {
        u.sin() / u
    }
}

pub fn sinc_complex(u: Complex64) -> Complex64 {
    if u.norm() < SINC_SERIES_SWITCH {
        let w = u * u;
        // 1 - w/3! + w²/5! - w³/7! + w⁴/9! - w⁵/11!
        let one = Complex64::new(1.0, 0.0);
        one - w / 6.0 * (one - w / 20.0 * (one - w / 42.0 * (one - w / 72.0 * (one - w / 110.0))))
    } else {
        u.sin() / u
    }
}

/// `ln(sinh(u)/u)` for `u ≥ 0` without overflow.
fn ln_sinhc(u: f64) -> f64 {
    if u < 1e-4 {
        u * u / 6.0
    } else if u < 20.0 {
        (u.sinh() / u).ln()
    } else {
        u + (-(-2.0 * u).exp()).ln_1p() - std::f64::consts::LN_2 - u.ln()
    }
}

impl SincProduct {
    pub fn new(c: f64, factors: Vec<SincFactor>, poly: Option<Vec<f64>>) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidInput(format!("scale c must be positive and finite, got {c}")));
        }
        for f in &factors {
            if !(f.delta > 0.0 && f.delta.is_finite()) || f.p == 0 {
                return Err(Error::InvalidInput(format!(
                    "factor needs delta > 0 and p >= 1, got delta={} p={}",
                    f.delta, f.p
                )));
            }
        }
        if let Some(p) = &poly {
            if p.is_empty() || p.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("poly coefficients must be finite and nonempty".into()));
            }
            if p.iter().skip(1).step_by(2).any(|&v| v != 0.0) {
                return Err(Error::InvalidInput("poly has a nonzero odd coefficient; only even polynomials are representable".into()));
            }
            if p.iter().all(|&v| v == 0.0) {
                return Err(Error::InvalidInput("poly is identically zero".into()));
            }
        }
        let mut merged: Vec<SincFactor> = Vec::new();
        for f in factors {
            match merged.iter_mut().find(|m| m.delta == f.delta) {
                Some(m) => m.p += f.p,
                None => merged.push(f),
            }
        }
        Ok(SincProduct {
            c,
            factors: merged,
            poly,
        })
    }

    /// `c · Π (sin(δx)/(δx))^p`.
    pub fn pure(c: f64, factors: &[(f64, u32)]) -> Result<Self> {
        Self::new(
            c,
            factors.iter().map(|&(delta, p)| SincFactor { delta, p }).collect(),
            None,
        )
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn factors(&self) -> &[SincFactor] {
        &self.factors
    }

    pub fn poly(&self) -> Option<&[f64]> {
        self.poly.as_deref()
    }

    pub fn with_scale(&self, c: f64) -> Result<Self> {
        Self::new(c, self.factors.clone(), self.poly.clone())
    }

    /// `Σ p_k δ_k`, the radius of the Fourier support.
    pub fn spectral_radius(&self) -> f64 {
        self.factors.iter().map(|f| f.p as f64 * f.delta).sum()
    }

    /// `Σ p_k δ_k` in exact rational arithmetic on the stored doubles.
    pub fn spectral_radius_exact(&self) -> BigRational {
        self.factors.iter().fold(BigRational::from_integer(BigInt::from(0)), |acc, f| {
            acc + BigRational::from_float(f.delta).expect("finite delta") * BigInt::from(f.p)
        })
    }

    /// Exact check of `spectral_radius ≤ eps`.
    pub fn spectrum_within(&self, eps: f64) -> bool {
        match BigRational::from_float(eps) {
            Some(e) => self.spectral_radius_exact() <= e,
            None => false,
        }
    }

    pub fn total_power(&self) -> u32 {
        self.factors.iter().map(|f| f.p).sum()
    }

    pub fn min_delta(&self) -> Option<f64> {
        self.factors.iter().map(|f| f.delta).reduce(f64::min)
    }

    pub fn max_delta(&self) -> Option<f64> {
        self.factors.iter().map(|f| f.delta).reduce(f64::max)
    }

    /// Coefficients `e_j` of `x^{2j}` in the polynomial part (`[1]` when absent).
    pub fn even_poly(&self) -> Vec<f64> {
        match &self.poly {
            None => vec![1.0],
            Some(p) => {
                let mut e: Vec<f64> = p.iter().step_by(2).copied().collect();
                while e.len() > 1 && e[e.len() - 1] == 0.0 {
                    e.pop();
                }
                e
            }
        }
    }

    /// `d` with `2d` the degree of the polynomial part.
    pub fn poly_half_degree(&self) -> usize {
        self.even_poly().len() - 1
    }

    fn poly_eval(&self, x: f64) -> f64 {
        let w = x * x;
        self.even_poly().iter().rev().fold(0.0, |acc, &e| acc * w + e)
    }

    fn poly_eval_complex(&self, z: Complex64) -> Complex64 {
        let w = z * z;
        self.even_poly()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &e| acc * w + e)
    }

    /// `ln|poly(x)|` without overflow at large `|x|`.
    pub fn ln_abs_poly(&self, x: f64) -> f64 {
        let e = self.even_poly();
        let d = e.len() - 1;
        let x = x.abs();
        if d == 0 || x < 1.0 {
            return self.poly_eval(x).abs().ln();
        }
        let inv = 1.0 / (x * x);
        let s: f64 = e
            .iter()
            .enumerate()
            .take(d)
            .map(|(j, v)| v / e[d] * inv.powi((d - j) as i32))
            .sum();
        e[d].abs().ln() + 2.0 * d as f64 * x.ln() + (1.0 + s).abs().ln()
    }

    /// `Σ |e_j| x^{2j}`, a nondecreasing majorant of `|poly|` on `[0, ∞)`.
    pub fn poly_majorant(&self, x: f64) -> f64 {
        let w = x * x;
        self.even_poly().iter().rev().fold(0.0, |acc, &e| acc * w + e.abs())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s: f64 = self
            .factors
            .iter()
            .map(|f| sinc(f.delta * x).powi(f.p as i32))
            .product();
        self.c * self.poly_eval(x) * s
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let s: Complex64 = self
            .factors
            .iter()
            .map(|f| sinc_complex(z * f.delta).powu(f.p))
            .product();
        s * self.poly_eval_complex(z) * self.c
    }

    /// `ln |F(x)|` summed factor by factor (no underflow in the product).
    pub fn log_abs(&self, x: f64) -> f64 {
        let mut acc = self.c.ln() + self.ln_abs_poly(x);
        for f in &self.factors {
            let u = (f.delta * x).abs();
            let l = if u < SINC_SERIES_SWITCH {
                sinc(u).ln()
            } else {
                u.sin().abs().ln() - u.ln()
            };
            acc += f.p as f64 * l;
        }
        acc
    }

    /// `ln |F(it)|` for real `t`.
    pub fn log_abs_imag(&self, t: f64) -> f64 {
        let w = -(t * t);
        let poly = self.even_poly().iter().rev().fold(0.0, |acc, &e| acc * w + e);
        let mut acc = self.c.ln() + poly.abs().ln();
        for f in &self.factors {
            acc += f.p as f64 * ln_sinhc((f.delta * t).abs());
        }
        acc
    }

    /// `c · poly⁺(|x|) · Π min(1, 1/(δ|x|))^p`, an upper bound of `|F(x)|` on `ℝ`.
    pub fn envelope(&self, x: f64) -> f64 {
        let x = x.abs();
        let s: f64 = self
            .factors
            .iter()
            .map(|f| (1.0f64).min(1.0 / (f.delta * x)).powi(f.p as i32))
            .product();
        self.c * self.poly_majorant(x) * s
    }

    /// Positive zeros of `F` in the open interval `(a, b)`, sorted.
    pub fn zeros_in(&self, a: f64, b: f64) -> Vec<f64> {
        let mut z = Vec::new();
        for f in &self.factors {
            let period = PI / f.delta;
            let mut k = (a / period).floor().max(0.0) as u64 + 1;
            loop {
                let x = k as f64 * period;
                if x >= b {
                    break;
                }
                if x > a {
                    z.push(x);
                }
                k += 1;
            }
        }
        z.extend(self.poly_zeros_in(a, b));
        z.sort_by(f64::total_cmp);
        z.dedup();
        z
    }

    fn poly_zeros_in(&self, a: f64, b: f64) -> Vec<f64> {
        let e = self.even_poly();
        if e.len() == 1 || b <= a {
            return Vec::new();
        }
        if e.iter().all(|&v| v >= 0.0) || e.iter().all(|&v| v <= 0.0) {
            // only zero is at the origin
            return if a < 0.0 && 0.0 < b && e[0] == 0.0 { vec![0.0] } else { Vec::new() };
        }
        let steps = 512;
        let h = (b - a) / steps as f64;
        let mut out = Vec::new();
        let mut prev = self.poly_eval(a);
        for i in 1..=steps {
            let x1 = a + i as f64 * h;
            let cur = self.poly_eval(x1);
            if prev == 0.0 && i > 1 {
                out.push(x1 - h);
            } else if prev * cur < 0.0 {
                let (mut lo, mut hi) = (x1 - h, x1);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.poly_eval(lo) * self.poly_eval(mid) <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            prev = cur;
        }
        out
    }

    /// `F²`, exactly as a product.
    pub fn squared(&self) -> SincProduct {
        self.multiply(self)
    }

    pub fn multiply(&self, other: &SincProduct) -> SincProduct {
        let poly = match (&self.poly, &other.poly) {
            (None, None) => None,
            (Some(p), None) | (None, Some(p)) => Some(p.clone()),
            (Some(p), Some(q)) => {
                let mut r = vec![0.0; p.len() + q.len() - 1];
                for (i, a) in p.iter().enumerate() {
                    for (j, b) in q.iter().enumerate() {
                        r[i + j] += a * b;
                    }
                }
                Some(r)
            }
        };
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().copied());
        SincProduct::new(self.c * other.c, factors, poly).expect("product of valid factors is valid")
    }

    /// Constant `A` in `|F(x+iy)| ≤ A e^{σ|y|}` for pure products (`A = c`).
    /// Products with a polynomial part have no such constant.
    pub fn lifting_constant(&self) -> Option<f64> {
        match &self.poly {
            None => Some(self.c),
            Some(_) if self.poly_half_degree() == 0 => Some(self.c * self.even_poly()[0].abs()),
            Some(_) => None,
        }
    }

    /// Scale used for truncation certificates: `c · Σ|e_j|`.
    pub fn scale_bound(&self) -> f64 {
        self.c * self.even_poly().iter().map(|e| e.abs()).sum::<f64>()
    }

    /// `|F(x)| ≤ coef · x^{exponent}` for `x ≥ 1`.
    pub fn power_envelope(&self) -> (f64, f64) {
        let coef = self.scale_bound()
            * self
                .factors
                .iter()
                .map(|f| f.delta.powi(-(f.p as i32)))
                .product::<f64>();
        let exponent = 2.0 * self.poly_half_degree() as f64 - self.total_power() as f64;
        (coef, exponent)
    }

    /// Bound on `∫_R^∞ |log|F(r)|| r^{-2} dr` for `R` beyond every factor's first period.
    pub fn log_tail_bound(&self, big_r: f64) -> Option<f64> {
        let max_period = self.factors.iter().map(|f| PI / f.delta).fold(0.0, f64::max);
        if big_r <= max_period.max(1.0) * 2.0 {
            return None;
        }
        let mut bound = self.c.ln().abs() / big_r;
        for f in &self.factors {
            // mean of -log|sin| over a period is log 2; log(δr) ≥ 0 once δr ≥ 1
            let p = f.p as f64;
            bound += p * (std::f64::consts::LN_2 / (big_r - PI / f.delta) + ((f.delta * big_r).ln() + 1.0) / big_r);
        }
        let e = self.even_poly();
        let d = e.len() - 1;
        if d > 0 {
            let lead = e[d].abs();
            let rest: f64 = e[..d].iter().map(|v| v.abs()).sum();
            let r_poly = (2.0 * rest / lead).sqrt().max(1.0);
            if big_r < r_poly {
                return None;
            }
            // |poly(r)| within a factor 2 of lead·r^{2d}
            let a = lead.ln().abs() + std::f64::consts::LN_2;
            bound += a / big_r + 2.0 * d as f64 * (big_r.ln() + 1.0) / big_r;
        } else {
            bound += e[0].abs().ln().abs() / big_r;
        }
        Some(bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_radius_is_additive() {
        let f = SincProduct::pure(1.0, &[(0.25, 2), (0.1, 3), (0.25, 1)]).unwrap();
        assert_eq!(f.factors().len(), 2);
        assert!((f.spectral_radius() - 1.05).abs() < 1e-15);
        assert!(f.spectrum_within(1.05 + 1e-12));
        assert!(!f.spectrum_within(1.0));
    }

    #[test]
    fn removable_singularity() {
        assert_eq!(sinc(0.0), 1.0);
        assert!((sinc(1e-5) - (1e-5f64).sin() / 1e-5).abs() <= 2.0 * f64::EPSILON);
        let z = Complex64::new(3e-5, -2e-5);
        assert!((sinc_complex(z) - z.sin() / z).norm() < 1e-15);
    }

    #[test]
    fn rejects_odd_polynomial() {
        assert!(SincProduct::new(1.0, vec![], Some(vec![0.0, 1.0])).is_err());
        assert!(SincProduct::new(1.0, vec![], Some(vec![0.0, 0.0, 1.0])).is_ok());
        assert!(SincProduct::new(0.0, vec![], None).is_err());
    }

    #[test]
    fn log_abs_matches_direct() {
        let f = SincProduct::new(0.3, vec![SincFactor { delta: 0.7, p: 3 }], Some(vec![2.0, 0.0, 1.0])).unwrap();
        for x in [0.0, 0.4, 3.3, 17.0] {
            assert!((f.log_abs(x) - f.eval(x).abs().ln()).abs() < 1e-12);
        }
        for t in [0.5, 4.0, 30.0] {
            let direct = f.eval_complex(Complex64::new(0.0, t)).norm().ln();
            assert!((f.log_abs_imag(t) - direct).abs() < 1e-10);
        }
        // no underflow far out
        assert!(f.log_abs(1e200).is_finite());
    }

    #[test]
    fn envelope_dominates() {
        let f = SincProduct::new(1.0, vec![SincFactor { delta: 0.5, p: 2 }], Some(vec![1.0, 0.0, 0.5])).unwrap();
        for i in 0..10_000 {
            let x = i as f64 * 0.013;
            assert!(f.eval(x).abs() <= f.envelope(x) * (1.0 + 1e-14));
        }
    }

    #[test]
    fn zeros_are_multiples_of_the_period() {
        let f = SincProduct::pure(1.0, &[(1.0, 1), (0.5, 2)]).unwrap();
        let z = f.zeros_in(0.0, 10.0);
        // π, 2π, 3π; the shared zero at 2π counts once
        assert_eq!(z.len(), 3);
        assert!((z[0] - PI).abs() < 1e-15 && (z[1] - 2.0 * PI).abs() < 1e-15);
        let g = SincProduct::new(1.0, vec![], Some(vec![-4.0, 0.0, 1.0])).unwrap();
        let z = g.zeros_in(0.0, 5.0);
        assert_eq!(z.len(), 1);
        assert!((z[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn json_shape() {
        let f: SincProduct = serde_json::from_str(r#"{"c":2,"factors":[{"delta":0.5,"p":1}],"poly":null}"#).unwrap();
        assert_eq!(f.c(), 2.0);
        assert!(serde_json::from_str::<SincProduct>(r#"{"c":1,"factors":[],"poly":[0,1]}"#).is_err());
    }
}
