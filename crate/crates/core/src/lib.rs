//! Radial band-limited minorants of weights on `ℝⁿ`.
//!
//! The pipeline: a weight `Ω` ([`weights`]) is reduced to a radial profile `Ω₀`; an even
//! one-dimensional sinc-power minorant `f₀` of `e^{-Ω₀}` is constructed with small spectrum
//! ([`minorant`]); the lift `f(z) = f₀(√(z₁²+...+z_n²))` ([`entire`]) is then a minorant of
//! `e^{-Ω}` of the same exponential type on `ℂⁿ`. [`analysis`] checks the outcome
//! numerically and [`symmetry`] covers averaging over `O(n)`.

pub mod analysis;
pub mod entire;
pub mod error;
pub mod grid;
pub mod minorant;
pub mod quad;
pub mod report;
pub mod symmetry;
pub mod weights;

pub use analysis::{
    cartwright_log_integral, fft_spectrum_report, l2_norm_radial, pointwise_minorization_check, sample_complex_points,
    sample_points, sinc_product_spectrum, sphere_area,
    RadialEvaluator, RadialFn, RadialLogFn, SpectrumReport,
};
pub use entire::{
    check_lifting_bound, estimate_type, eval_even_1d, lift_eval, lift_eval_real, min_im_sqrt, taylor_coeffs,
    EvenFunction, EvenPowerSeries, LiftedRadialFunction,
};
pub use error::{Error, Result};
pub use grid::{GridHeader, GridSamples};
pub use minorant::{
    calibrate_scale, certify_bound, certify_product_bound, construct_minorant_1d, construct_multiplier, default_grid, evenize, integrability_boost, SincFactor,
    SincProduct,
};
pub use quad::{tensor_sinh_quadrature, IntegralValue, QuadConfig};
pub use report::VerificationReport;
pub use symmetry::{haar_average, radiality_defect, random_orthogonal, SphericalQuadrature};
pub use weights::{
    admissibility_integral, dyadic_radial_majorant, radial_profile, RadialProfile, WeightFamily, WeightSpec,
};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
