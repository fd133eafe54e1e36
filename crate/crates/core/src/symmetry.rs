//! Averaging over the orthogonal group.
//!
//! For fixed `x`, `∫_{O(n)} h(Ux) dU` is the mean of `h` over the sphere of radius `‖x‖`,
//! so everything here is spherical quadrature.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

/// Monte Carlo node count used by [`SphericalQuadrature::default_for`] when `n ≥ 4`.
pub const DEFAULT_MC_SAMPLES: usize = 4096;

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the columns of `Q`
/// flipped to make `diag(R)` positive.
pub fn random_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    let n = n.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum SphericalQuadrature {
    MonteCarlo { samples: usize, seed: u64 },
    /// Trapezoid in the azimuth times Gauss-Legendre in `cos` of the polar angle (n ≤ 3).
    ProductGauss { orders: Vec<usize> },
}

impl SphericalQuadrature {
    pub fn default_for(n: usize) -> Self {
        match n {
            1 => SphericalQuadrature::ProductGauss { orders: vec![] },
            2 => SphericalQuadrature::ProductGauss { orders: vec![64] },
            3 => SphericalQuadrature::ProductGauss { orders: vec![64, 32] },
            _ => SphericalQuadrature::MonteCarlo {
                samples: DEFAULT_MC_SAMPLES,
                seed: 0,
            },
        }
    }

    /// Unit nodes on `S^{n-1}` and probability weights.
    pub fn nodes(&self, n: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        match self {
            SphericalQuadrature::MonteCarlo { samples, seed } => {
                if *samples < 2 {
                    return Err(Error::InvalidInput("Monte Carlo needs at least 2 samples".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut nodes = Vec::with_capacity(*samples);
                while nodes.len() < *samples {
                    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 0.0 {
                        nodes.push(v.into_iter().map(|x| x / norm).collect());
                    }
                }
                Ok((nodes, vec![1.0 / *samples as f64; *samples]))
            }
            SphericalQuadrature::ProductGauss { orders } => {
                let order = |i: usize| -> Result<usize> {
                    match orders.get(i) {
                        Some(&m) if m > 0 => Ok(m),
                        _ => Err(Error::InvalidInput(format!("product_gauss in dimension {n} needs {} positive orders", n - 1))),
                    }
                };
                match n {
                    1 => Ok((vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5])),
                    2 => {
                        let m = order(0)?;
                        let nodes = (0..m)
                            .map(|k| {
                                let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                                vec![t.cos(), t.sin()]
                            })
                            .collect();
                        Ok((nodes, vec![1.0 / m as f64; m]))
                    }
                    3 => {
                        let (m, l) = (order(0)?, order(1)?);
                        let (ts, ws) = gauss_legendre(l);
                        let mut nodes = Vec::with_capacity(m * l);
                        let mut weights = Vec::with_capacity(m * l);
                        for (t, w) in ts.iter().zip(&ws) {
                            let s = (1.0 - t * t).sqrt();
                            for k in 0..m {
                                let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                                nodes.push(vec![s * a.cos(), s * a.sin(), *t]);
                                weights.push(w / 2.0 / m as f64);
                            }
                        }
                        Ok((nodes, weights))
                    }
                    _ => Err(Error::InvalidInput("product_gauss is available for n <= 3; use monte_carlo".into())),
                }
            }
        }
    }

    fn is_monte_carlo(&self) -> bool {
        matches!(self, SphericalQuadrature::MonteCarlo { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HaarAverage {
    pub mean: f64,
    /// Standard error of the mean (Monte Carlo only).
    pub std_error: Option<f64>,
}

struct SphereStats {
    mean: f64,
    std: f64,
    mean_abs: f64,
}

fn sphere_stats<H>(h: &H, radius: f64, nodes: &[Vec<f64>], weights: &[f64]) -> Result<SphereStats>
where
    H: Fn(&[f64]) -> f64 + Sync,
{
    let vals: Vec<Result<f64>> = nodes
        .par_iter()
        .map(|u| {
            let p: Vec<f64> = u.iter().map(|c| c * radius).collect();
            let v = h(&p);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Evaluation {
                    point: p,
                    reason: format!("evaluator returned {v}"),
                })
            }
        })
        .collect();
    let vals = vals.into_iter().collect::<Result<Vec<f64>>>()?;
    let mean: f64 = vals.iter().zip(weights).map(|(v, w)| v * w).sum();
    let var: f64 = vals.iter().zip(weights).map(|(v, w)| w * (v - mean) * (v - mean)).sum();
    let mean_abs = vals.iter().zip(weights).map(|(v, w)| v.abs() * w).sum();
    Ok(SphereStats {
        mean,
        std: var.max(0.0).sqrt(),
        mean_abs,
    })
}

/// `∫_{O(n)} h(Ux) dU`, i.e. the mean of `h` over the sphere of radius `‖x‖`.
pub fn haar_average<H>(h: &H, x: &[f64], quad: &SphericalQuadrature) -> Result<HaarAverage>
where
    H: Fn(&[f64]) -> f64 + Sync,
{
    let (nodes, weights) = quad.nodes(x.len())?;
    let radius = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let s = sphere_stats(h, radius, &nodes, &weights)?;
    Ok(HaarAverage {
        mean: s.mean,
        std_error: quad.is_monte_carlo().then(|| {
            let k = nodes.len() as f64;
            s.std * (k / (k - 1.0)).sqrt() / k.sqrt()
        }),
    })
}

/// Max over radii of the spread of `h` on each sphere, normalized by `max(1, mean |h|)`.
pub fn radiality_defect<H>(h: &H, dim: usize, radii: &[f64], quad: &SphericalQuadrature) -> Result<f64>
where
    H: Fn(&[f64]) -> f64 + Sync,
{
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidInput("radii must be positive".into()));
    }
    let (nodes, weights) = quad.nodes(dim)?;
    let mut worst = 0.0f64;
    for &r in radii {
        let s = sphere_stats(h, r, &nodes, &weights)?;
        worst = worst.max(s.std / s.mean_abs.max(1.0));
    }
    Ok(worst)
}
