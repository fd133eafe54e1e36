//! Weight functions `Ω : ℝⁿ → [0, ∞)`, their radial profiles and the admissibility integral
//! `∫ Ω(x) (1+‖x‖²)^{-(n+1)/2} dx`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::sphere_area;
use crate::error::{Error, Result};
use crate::quad::{adaptive_with_breaks, integrate_half_line, IntegralValue, PieceOutcome, QuadConfig, Tail};

/// Tail exponents this close to 1 are treated as linear growth (not admissible).
pub const LINEAR_GROWTH_TOL: f64 = 1e-3;

/// Non-radial weights available by formula id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "formula", rename_all = "snake_case")]
pub enum NonRadialFormula {
    /// `|x_axis|`
    AbsCoord { axis: usize },
    /// `kappa * log(1 + x_axis²)`
    LogCoord { axis: usize, kappa: f64 },
    /// `log(1 + Σ d_i x_i²)`
    LogQuadratic { diag: Vec<f64> },
}

impl NonRadialFormula {
    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            NonRadialFormula::AbsCoord { axis } => x[*axis].abs(),
            NonRadialFormula::LogCoord { axis, kappa } => kappa * x[*axis].powi(2).ln_1p(),
            NonRadialFormula::LogQuadratic { diag } => diag
                .iter()
                .zip(x)
                .map(|(d, xi)| d * xi * xi)
                .sum::<f64>()
                .ln_1p(),
        }
    }

    /// `(κ, C)` with `Ω(x) ≤ κ log(1+‖x‖²) + C`, when the formula has one.
    fn log_envelope(&self) -> Option<(f64, f64)> {
        match self {
            NonRadialFormula::AbsCoord { .. } => None,
            NonRadialFormula::LogCoord { kappa, .. } => Some((*kappa, 0.0)),
            NonRadialFormula::LogQuadratic { diag } => {
                let dmax = diag.iter().cloned().fold(1.0, f64::max);
                Some((1.0, dmax.ln()))
            }
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        match self {
            NonRadialFormula::AbsCoord { axis } | NonRadialFormula::LogCoord { axis, .. } if *axis >= dim => {
                Err(Error::InvalidInput(format!("axis {axis} out of range for dim {dim}")))
            }
            NonRadialFormula::LogCoord { kappa, .. } if !(*kappa >= 0.0) => {
                Err(Error::InvalidInput("kappa must be nonnegative".into()))
            }
            NonRadialFormula::LogQuadratic { diag } if diag.len() != dim || diag.iter().any(|d| !(*d >= 0.0)) => {
                Err(Error::InvalidInput("diag must have dim nonnegative entries".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogEnvelope {
    pub kappa: f64,
    pub c: f64,
}

impl LogEnvelope {
    pub fn eval(&self, r: f64) -> f64 {
        self.kappa * (r * r).ln_1p() + self.c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum WeightFamily {
    LogGrowth {
        kappa: f64,
        c: f64,
    },
    Bounded {
        m: f64,
    },
    TabulatedRadial {
        knots: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        envelope: Option<LogEnvelope>,
    },
    Nonradial(NonRadialFormula),
}

/// A weight `Ω` on `ℝ^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWeightSpec", into = "RawWeightSpec")]
pub struct WeightSpec {
    pub family: WeightFamily,
    pub dim: usize,
}

#[derive(Serialize, Deserialize)]
struct RawWeightSpec {
    #[serde(flatten)]
    family: WeightFamily,
    dim: usize,
}

impl TryFrom<RawWeightSpec> for WeightSpec {
    type Error = Error;
    fn try_from(raw: RawWeightSpec) -> Result<Self> {
        WeightSpec::new(raw.family, raw.dim)
    }
}

impl From<WeightSpec> for RawWeightSpec {
    fn from(w: WeightSpec) -> Self {
        RawWeightSpec {
            family: w.family,
            dim: w.dim,
        }
    }
}

impl WeightSpec {
    pub fn new(family: WeightFamily, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dim must be positive".into()));
        }
        match &family {
            WeightFamily::LogGrowth { kappa, c } => {
                if !(*kappa >= 0.0 && *c >= 0.0) || !kappa.is_finite() || !c.is_finite() {
                    return Err(Error::InvalidInput("log_growth needs finite kappa, c >= 0".into()));
                }
            }
            WeightFamily::Bounded { m } => {
                if !(*m >= 0.0) || !m.is_finite() {
                    return Err(Error::InvalidInput("bounded needs finite m >= 0".into()));
                }
            }
            WeightFamily::TabulatedRadial { knots, envelope } => {
                validate_knots(knots)?;
                if let Some(e) = envelope {
                    if !(e.kappa >= 0.0 && e.c >= 0.0) {
                        return Err(Error::InvalidInput("envelope needs kappa, c >= 0".into()));
                    }
                }
            }
            WeightFamily::Nonradial(f) => f.validate(dim)?,
        }
        Ok(WeightSpec { family, dim })
    }

    pub fn log_growth(kappa: f64, c: f64, dim: usize) -> Result<Self> {
        Self::new(WeightFamily::LogGrowth { kappa, c }, dim)
    }

    pub fn bounded(m: f64, dim: usize) -> Result<Self> {
        Self::new(WeightFamily::Bounded { m }, dim)
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self.family, WeightFamily::Nonradial(_))
    }

    /// `Ω(x)` per the family formula.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(match &self.family {
            WeightFamily::Nonradial(f) => f.eval(x),
            _ => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                self.radial_value(r)
            }
        })
    }

    fn radial_value(&self, r: f64) -> f64 {
        match &self.family {
            WeightFamily::LogGrowth { kappa, c } => kappa * (r * r).ln_1p() + c,
            WeightFamily::Bounded { m } => *m,
            WeightFamily::TabulatedRadial { knots, .. } => interpolate(knots, r.abs()),
            WeightFamily::Nonradial(_) => unreachable!("radial_value on a non-radial weight"),
        }
    }

    fn log_envelope(&self) -> Option<LogEnvelope> {
        match &self.family {
            WeightFamily::LogGrowth { kappa, c } => Some(LogEnvelope { kappa: *kappa, c: *c }),
            WeightFamily::Bounded { m } => Some(LogEnvelope { kappa: 0.0, c: *m }),
            WeightFamily::TabulatedRadial { knots, envelope } => envelope.or_else(|| {
                let max = knots.iter().map(|k| k[1]).fold(0.0, f64::max);
                Some(LogEnvelope { kappa: 0.0, c: max })
            }),
            WeightFamily::Nonradial(f) => f.log_envelope().map(|(kappa, c)| LogEnvelope { kappa, c }),
        }
    }
}

fn validate_knots(knots: &[[f64; 2]]) -> Result<()> {
    if knots.is_empty() {
        return Err(Error::InvalidInput("tabulated profile needs at least one knot".into()));
    }
    if knots[0][0] != 0.0 {
        return Err(Error::InvalidInput("tabulated radii must start at 0".into()));
    }
    if knots.windows(2).any(|w| !(w[1][0] > w[0][0])) {
        return Err(Error::InvalidInput("tabulated radii must be strictly increasing".into()));
    }
    if knots.iter().any(|k| !k[0].is_finite() || !k[1].is_finite() || k[1] < 0.0) {
        return Err(Error::InvalidInput("tabulated values must be finite and nonnegative".into()));
    }
    Ok(())
}

fn interpolate(knots: &[[f64; 2]], r: f64) -> f64 {
    let last = knots[knots.len() - 1];
    if r >= last[0] {
        return last[1];
    }
    let i = knots.partition_point(|k| k[0] <= r);
    let (lo, hi) = (knots[i - 1], knots[i]);
    let t = (r - lo[0]) / (hi[0] - lo[0]);
    lo[1] + t * (hi[1] - lo[1])
}

/// Continuation of a piecewise-constant profile beyond its last edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileTail {
    /// Last value held constant.
    Constant,
    /// `last · (r / start)^alpha`.
    Power { alpha: f64 },
    /// `max(last, κ log(1+r²) + C)`.
    LogEnvelope { kappa: f64, c: f64 },
}

/// Even one-dimensional profile `Ω₀` with `Ω₀(‖x‖) = Ω(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "representation", rename_all = "snake_case")]
pub enum RadialProfile {
    LogGrowth {
        kappa: f64,
        c: f64,
    },
    Bounded {
        m: f64,
    },
    /// `values[i]` on `[edges[i], edges[i+1])`, the last value up to `tail_start`.
    PiecewiseConstant {
        edges: Vec<f64>,
        values: Vec<f64>,
        tail_start: f64,
        tail: ProfileTail,
        /// Sample count used by the estimator that produced this profile.
        #[serde(default)]
        samples: usize,
    },
    Tabulated {
        knots: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        envelope: Option<LogEnvelope>,
    },
}

impl RadialProfile {
    /// `Ω₀(r)`, evaluated at `|r|`.
    pub fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        match self {
            RadialProfile::LogGrowth { kappa, c } => kappa * (r * r).ln_1p() + c,
            RadialProfile::Bounded { m } => *m,
            RadialProfile::Tabulated { knots, .. } => interpolate(knots, r),
            RadialProfile::PiecewiseConstant {
                edges,
                values,
                tail_start,
                tail,
                ..
            } => {
                let last = values[values.len() - 1];
                if r >= *tail_start {
                    return match tail {
                        ProfileTail::Constant => last,
                        ProfileTail::Power { alpha } => last * (r / tail_start).powf(*alpha),
                        ProfileTail::LogEnvelope { kappa, c } => last.max(kappa * (r * r).ln_1p() + c),
                    };
                }
                let i = edges.partition_point(|&e| e <= r);
                values[i.saturating_sub(1)]
            }
        }
    }

    /// Points where the profile has a kink or a jump.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            RadialProfile::Tabulated { knots, .. } => knots.iter().map(|k| k[0]).collect(),
            RadialProfile::PiecewiseConstant { edges, tail_start, .. } => {
                let mut b = edges.clone();
                b.push(*tail_start);
                b
            }
            _ => Vec::new(),
        }
    }

    /// `(κ, C)` with `Ω₀(r) ≤ κ log(1+r²) + C` for all `r`, when known.
    pub fn log_envelope(&self) -> Option<LogEnvelope> {
        match self {
            RadialProfile::LogGrowth { kappa, c } => Some(LogEnvelope { kappa: *kappa, c: *c }),
            RadialProfile::Bounded { m } => Some(LogEnvelope { kappa: 0.0, c: *m }),
            RadialProfile::Tabulated { knots, envelope } => envelope.or_else(|| {
                let max = knots.iter().map(|k| k[1]).fold(0.0, f64::max);
                Some(LogEnvelope { kappa: 0.0, c: max })
            }),
            RadialProfile::PiecewiseConstant { values, tail, .. } => {
                let max = values.iter().cloned().fold(0.0, f64::max);
                match tail {
                    ProfileTail::Constant => Some(LogEnvelope { kappa: 0.0, c: max }),
                    ProfileTail::Power { .. } => None,
                    ProfileTail::LogEnvelope { kappa, c } => Some(LogEnvelope {
                        kappa: *kappa,
                        c: c.max(max),
                    }),
                }
            }
        }
    }

    /// True when the profile is constant in `r`.
    pub fn is_constant(&self) -> bool {
        match self {
            RadialProfile::Bounded { .. } => true,
            RadialProfile::LogGrowth { kappa, .. } => *kappa == 0.0,
            RadialProfile::Tabulated { knots, .. } => knots.iter().all(|k| k[1] == knots[0][1]),
            RadialProfile::PiecewiseConstant { values, tail, .. } => {
                values.iter().all(|&v| v == values[0])
                    && match tail {
                        ProfileTail::Constant => true,
                        ProfileTail::Power { alpha } => *alpha == 0.0,
                        ProfileTail::LogEnvelope { kappa, c } => *kappa == 0.0 && *c <= values[0],
                    }
            }
        }
    }

    /// Nondecreasing in `r`; needed for the bracketed scale calibration.
    pub fn is_nondecreasing(&self) -> bool {
        match self {
            RadialProfile::Bounded { .. } | RadialProfile::LogGrowth { .. } => true,
            RadialProfile::Tabulated { knots, .. } => knots.windows(2).all(|w| w[1][1] >= w[0][1]),
            RadialProfile::PiecewiseConstant { values, tail, .. } => {
                values.windows(2).all(|w| w[1] >= w[0])
                    && !matches!(tail, ProfileTail::Power { alpha } if *alpha < 0.0)
            }
        }
    }

    /// Bound on `∫_R^∞ Ω₀(r) r^{-2} dr`, which dominates the admissibility tail.
    fn tail_bound(&self, big_r: f64) -> Tail {
        let log_tail = |kappa: f64, c: f64| {
            // ∫_R^∞ log(1+r²)/r² dr = log(1+R²)/R + π - 2 atan R
            let l = (big_r * big_r).ln_1p() / big_r + (std::f64::consts::PI - 2.0 * big_r.atan());
            kappa * l + c / big_r
        };
        match self {
            RadialProfile::Bounded { m } => Tail::Bound(m / big_r),
            RadialProfile::LogGrowth { kappa, c } => Tail::Bound(log_tail(*kappa, *c)),
            RadialProfile::Tabulated { knots, envelope } => {
                let last = knots[knots.len() - 1];
                if big_r >= last[0] {
                    Tail::Bound(last[1] / big_r)
                } else if let Some(e) = envelope {
                    Tail::Bound(log_tail(e.kappa, e.c))
                } else {
                    Tail::Unknown
                }
            }
            RadialProfile::PiecewiseConstant {
                values,
                tail_start,
                tail,
                ..
            } => {
                if big_r < *tail_start {
                    return Tail::Unknown;
                }
                let last = values[values.len() - 1];
                match tail {
                    ProfileTail::Constant => Tail::Bound(last / big_r),
                    ProfileTail::Power { alpha } => {
                        if *alpha >= 1.0 - LINEAR_GROWTH_TOL {
                            Tail::Divergent
                        } else if *alpha <= 0.0 {
                            Tail::Bound(last / big_r)
                        } else {
                            let coef = last * tail_start.powf(-alpha);
                            Tail::Bound(coef * big_r.powf(alpha - 1.0) / (1.0 - alpha))
                        }
                    }
                    ProfileTail::LogEnvelope { kappa, c } => Tail::Bound(log_tail(*kappa, c.max(last))),
                }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            RadialProfile::PiecewiseConstant {
                edges,
                values,
                tail_start,
                ..
            } => {
                if edges.is_empty() || edges.len() != values.len() || edges[0] != 0.0 {
                    return Err(Error::InvalidInput("piecewise profile: edges start at 0, one value per edge".into()));
                }
                if edges.windows(2).any(|w| !(w[1] > w[0])) || !(*tail_start > edges[edges.len() - 1]) {
                    return Err(Error::InvalidInput("piecewise profile edges must increase".into()));
                }
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return Err(Error::InvalidInput("profile values must be finite and nonnegative".into()));
                }
                Ok(())
            }
            RadialProfile::Tabulated { knots, .. } => validate_knots(knots),
            _ => Ok(()),
        }
    }
}

/// The radial part of a radial weight, extended evenly.
pub fn radial_profile(spec: &WeightSpec) -> Result<RadialProfile> {
    match &spec.family {
        WeightFamily::LogGrowth { kappa, c } => Ok(RadialProfile::LogGrowth { kappa: *kappa, c: *c }),
        WeightFamily::Bounded { m } => Ok(RadialProfile::Bounded { m: *m }),
        WeightFamily::TabulatedRadial { knots, envelope } => Ok(RadialProfile::Tabulated {
            knots: knots.clone(),
            envelope: *envelope,
        }),
        WeightFamily::Nonradial(_) => Err(Error::NonRadial),
    }
}

/// Options for the shell-sampling supremum estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorantOptions {
    pub samples_per_annulus: usize,
    pub refine_steps: usize,
    pub seed: u64,
    /// Relative inflation applied to every estimated supremum.
    pub inflation: f64,
}

impl Default for MajorantOptions {
    fn default() -> Self {
        MajorantOptions {
            samples_per_annulus: 2048,
            refine_steps: 400,
            seed: 0,
            inflation: 1e-9,
        }
    }
}

/// Radial piecewise-constant majorant `Ω₁` built from suprema of `Ω` on the dyadic annuli
/// `2^j ≤ ‖x‖ < 2^{j+1}` for `j_min ≤ j ≤ j_max`, plus the central ball `‖x‖ < 2^{j_min}`.
pub fn dyadic_radial_majorant(
    spec: &WeightSpec,
    j_min: i32,
    j_max: i32,
    samples_per_annulus: usize,
    rng_seed: u64,
) -> Result<RadialProfile> {
    dyadic_radial_majorant_with(
        spec,
        j_min,
        j_max,
        &MajorantOptions {
            samples_per_annulus,
            seed: rng_seed,
            ..MajorantOptions::default()
        },
    )
}

pub fn dyadic_radial_majorant_with(
    spec: &WeightSpec,
    j_min: i32,
    j_max: i32,
    opts: &MajorantOptions,
) -> Result<RadialProfile> {
    if j_min >= j_max {
        return Err(Error::InvalidInput(format!("need j_min < j_max, got {j_min} >= {j_max}")));
    }
    if opts.samples_per_annulus == 0 {
        return Err(Error::InvalidInput("samples_per_annulus must be positive".into()));
    }
    // shells: central ball, then annulus j for j_min..=j_max
    let mut shells = vec![(0.0, 2f64.powi(j_min))];
    shells.extend((j_min..=j_max).map(|j| (2f64.powi(j), 2f64.powi(j + 1))));

    let results: Vec<Result<(f64, usize)>> = shells
        .par_iter()
        .enumerate()
        .map(|(i, &(lo, hi))| {
            if spec.is_radial() {
                Ok((radial_sup(spec, lo, hi), 0))
            } else {
                // one independent stream per shell keeps the result independent of scheduling
                let seed = opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64);
                shell_sup(spec, lo, hi, opts, seed)
            }
        })
        .collect();
    let mut values = Vec::with_capacity(shells.len());
    let mut samples = 0;
    for r in results {
        let (v, s) = r?;
        values.push(v * (1.0 + opts.inflation));
        samples += s;
    }
    let edges: Vec<f64> = shells.iter().map(|s| s.0).collect();
    let tail_start = 2f64.powi(j_max + 1);
    let last = values[values.len() - 1];

    let tail = match spec.log_envelope() {
        Some(e) => {
            // sup over ‖x‖ ≤ 2r of κ log(1+‖x‖²) + C is at most κ log(1+r²) + C + 2κ log 2
            let c = e.c + 2.0 * e.kappa * std::f64::consts::LN_2;
            if e.kappa == 0.0 && c <= last {
                ProfileTail::Constant
            } else {
                ProfileTail::LogEnvelope { kappa: e.kappa, c }
            }
        }
        None => {
            let prev = values[values.len() - 2];
            let alpha = if last > 0.0 && prev > 0.0 {
                (last / prev).log2().max(0.0)
            } else if last > 0.0 {
                1.0
            } else {
                0.0
            };
            if alpha <= 1e-9 {
                ProfileTail::Constant
            } else {
                ProfileTail::Power { alpha }
            }
        }
    };
    let profile = RadialProfile::PiecewiseConstant {
        edges,
        values,
        tail_start,
        tail,
        samples,
    };
    profile.validate()?;
    Ok(profile)
}

/// Exact supremum of a radial weight over `lo ≤ r ≤ hi`.
fn radial_sup(spec: &WeightSpec, lo: f64, hi: f64) -> f64 {
    match &spec.family {
        WeightFamily::TabulatedRadial { knots, .. } => knots
            .iter()
            .filter(|k| k[0] > lo && k[0] < hi)
            .map(|k| k[1])
            .chain([interpolate(knots, lo), interpolate(knots, hi)])
            .fold(0.0, f64::max),
        // closed forms are nondecreasing in r
        _ => spec.radial_value(hi),
    }
}

fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Two-phase estimate of `sup Ω` on the closed shell `lo ≤ ‖x‖ ≤ hi`: coarse uniform
/// sampling, then a shrinking random search around the best point.
fn shell_sup(spec: &WeightSpec, lo: f64, hi: f64, opts: &MajorantOptions, seed: u64) -> Result<(f64, usize)> {
    let n = spec.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0usize;
    let eval = |x: &[f64], count: &mut usize| -> Result<f64> {
        *count += 1;
        let v = spec.eval(x)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteWeight {
                value: v,
                point: x.to_vec(),
            });
        }
        Ok(v)
    };
    let mut best = f64::NEG_INFINITY;
    let mut best_dir = vec![0.0; n];
    let mut best_r = hi;
    let try_point = |dir: &[f64], r: f64, count: &mut usize, best: &mut f64, bd: &mut Vec<f64>, br: &mut f64| -> Result<()> {
        let x: Vec<f64> = dir.iter().map(|d| d * r).collect();
        let v = eval(&x, count)?;
        if v > *best {
            *best = v;
            bd.copy_from_slice(dir);
            *br = r;
        }
        Ok(())
    };
    // coordinate directions hit axis-aligned extremes exactly
    for axis in 0..n {
        for sign in [1.0, -1.0] {
            let mut dir = vec![0.0; n];
            dir[axis] = sign;
            for r in [lo, hi] {
                try_point(&dir, r, &mut count, &mut best, &mut best_dir, &mut best_r)?;
            }
        }
    }
    for i in 0..opts.samples_per_annulus {
        let dir = random_unit(&mut rng, n);
        let r = match i % 4 {
            0 => hi,
            1 => lo,
            _ => lo + (hi - lo) * rng.random::<f64>(),
        };
        try_point(&dir, r, &mut count, &mut best, &mut best_dir, &mut best_r)?;
    }
    let mut step = 0.5;
    for _ in 0..opts.refine_steps {
        let pert = random_unit(&mut rng, n);
        let mut dir: Vec<f64> = best_dir.iter().zip(&pert).map(|(b, p)| b + step * p).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        dir.iter_mut().for_each(|d| *d /= norm);
        let r = (best_r + step * (hi - lo) * (rng.random::<f64>() - 0.5)).clamp(lo, hi);
        let before = best;
        try_point(&dir, r, &mut count, &mut best, &mut best_dir, &mut best_r)?;
        if best <= before {
            step *= 0.97;
        }
    }
    Ok((best.max(0.0), count))
}

/// `|S^{n-1}| ∫_0^∞ Ω₀(r) r^{n-1} (1+r²)^{-(n+1)/2} dr`.
pub fn admissibility_integral(profile: &RadialProfile, n: usize, quad: &QuadConfig) -> Result<IntegralValue> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    profile.validate()?;
    let kernel_exp = -((n + 1) as f64) / 2.0;
    let integrand = |r: f64| profile.eval(r) * r.powi(n as i32 - 1) * (1.0 + r * r).powf(kernel_exp);
    let breaks = profile.breakpoints();
    let value = integrate_half_line(
        |a, b, tol, budget| PieceOutcome::Done(adaptive_with_breaks(&integrand, a, b, &breaks, tol, budget)),
        |r| profile.tail_bound(r),
        quad,
    );
    Ok(value.scaled(sphere_area(n)))
}

/// Largest sampled difference quotient `|Ω₀(r+h) − Ω₀(r)| / h` on `[0, r_max]`.
pub fn lipschitz_estimate(profile: &RadialProfile, r_max: f64, step: f64) -> Result<f64> {
    if !(step > 0.0) {
        return Err(Error::InvalidInput("step must be positive".into()));
    }
    let n = (r_max / step).floor() as usize;
    Ok((0..=n)
        .into_par_iter()
        .map(|i| {
            let r = i as f64 * step;
            (profile.eval(r + step) - profile.eval(r)).abs() / step
        })
        .reduce(|| 0.0, f64::max))
}
