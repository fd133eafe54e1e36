//! Closed forms and externally computed values checked against the library.
//!
//! Reference numbers not in closed form were computed with mpmath at 20 digits.

use std::f64::consts::PI;

use radial_bm::analysis::RadialLogFn;
use radial_bm::symmetry::SphericalQuadrature;
use radial_bm::*;

fn q() -> QuadConfig {
    QuadConfig::default()
}

fn close(got: &IntegralValue, want: f64, tol: f64) {
    let v = got.value().unwrap_or_else(|| panic!("not finite: {got:?}"));
    assert!((v - want).abs() <= tol * want.abs().max(1.0), "{v} vs {want}");
}

#[test]
fn admissibility_closed_forms() {
    // ∫_ℝ (1+x²)^{-1} = π
    close(&admissibility_integral(&RadialProfile::Bounded { m: 1.0 }, 1, &q()).unwrap(), PI, 1e-8);
    // 2π ∫ r (1+r²)^{-3/2} dr = 2π
    close(&admissibility_integral(&RadialProfile::Bounded { m: 1.0 }, 2, &q()).unwrap(), 2.0 * PI, 1e-8);
    // 4π ∫ r² (log(1+r²) + 1/2) (1+r²)^{-2} dr
    let lg = RadialProfile::LogGrowth { kappa: 1.0, c: 0.5 };
    close(&admissibility_integral(&lg, 3, &q()).unwrap(), 28.486583529348271, 1e-7);
    // 2π ∫ r (log(1+r²) + 1/2) (1+r²)^{-3/2} dr = 5π
    close(&admissibility_integral(&lg, 2, &q()).unwrap(), 5.0 * PI, 1e-7);
}

#[test]
fn l2_closed_forms() {
    let sinc = SincProduct::pure(1.0, &[(1.0, 1)]).unwrap();
    // ∫ sinc² = π
    close(&l2_norm_radial(&sinc, 1, &q()).unwrap(), PI, 1e-6);
    let sinc2 = SincProduct::pure(1.0, &[(1.0, 2)]).unwrap();
    // ∫ sinc⁴ = 2π/3, and 4π ∫ r² sinc⁴ = π²
    close(&l2_norm_radial(&sinc2, 1, &q()).unwrap(), 2.0 * PI / 3.0, 1e-6);
    close(&l2_norm_radial(&sinc2, 3, &q()).unwrap(), PI * PI, 1e-6);
    // sinc² r is not integrable
    assert!(l2_norm_radial(&sinc, 2, &q()).unwrap().is_infinite());
}

#[test]
fn log_integral_references() {
    let sinc = SincProduct::pure(1.0, &[(1.0, 1)]).unwrap();
    let v = cartwright_log_integral(&sinc, 1, &q()).unwrap();
    let IntegralValue::Finite { value, error } = v else { panic!("{v:?}") };
    assert!((value - 2.6344159412760628).abs() <= error.max(1e-6), "{value} ± {error}");

    // 2 ∫ |log 1/2 - log(1+r²)| (1+r²)^{-1} dr
    let zero_free = RadialLogFn {
        f: |r: f64| 0.5 / (1.0 + r * r),
        log_abs: |r: f64| (0.5f64).ln() - (r * r).ln_1p(),
    };
    close(&cartwright_log_integral(&zero_free, 1, &q()).unwrap(), PI * (2.0 * 2f64.ln() + 0.5f64.ln().abs()), 1e-7);

    // a Gaussian is not of exponential type: log|f| = -r² is not integrable against the kernel
    let gauss = RadialLogFn { f: |r: f64| (-r * r).exp(), log_abs: |r: f64| -r * r };
    assert!(cartwright_log_integral(&gauss, 1, &q()).unwrap().is_infinite());
}

#[test]
fn sphere_areas() {
    for (n, want) in [(1, 2.0), (2, 2.0 * PI), (3, 4.0 * PI), (4, 2.0 * PI * PI), (5, 8.0 * PI * PI / 3.0)] {
        assert!((sphere_area(n) - want).abs() <= 1e-12 * want);
    }
}

#[test]
fn haar_average_second_moment() {
    for n in [2, 3, 4, 6] {
        let quad = SphericalQuadrature::MonteCarlo { samples: 8192, seed: n as u64 };
        let x: Vec<f64> = (0..n).map(|i| (i + 1) as f64 / n as f64).collect();
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let a = haar_average(&|p: &[f64]| p[0] * p[0], &x, &quad).unwrap();
        assert!((a.mean - r2 / n as f64).abs() <= 3.0 * a.std_error.unwrap());
    }
    let d = radiality_defect(&|p: &[f64]| p[0] * p[0], 2, &[1.0], &SphericalQuadrature::default_for(2)).unwrap();
    assert!((d - (0.125f64).sqrt()).abs() < 1e-12);
}

#[test]
fn taylor_series_of_sinc() {
    // sin(x)/x = Σ (-1)^m x^{2m} / (2m+1)!
    let s = taylor_coeffs(&SincProduct::pure(1.0, &[(1.0, 1)]).unwrap(), 12).unwrap();
    let mut fact = 1.0;
    for (m, a) in s.coeffs().iter().enumerate() {
        if m > 0 {
            fact *= (2 * m) as f64 * (2 * m + 1) as f64;
        }
        let want = if m % 2 == 0 { 1.0 } else { -1.0 } / fact;
        assert!((a.re - want).abs() <= 1e-15 * want.abs().max(1e-300) + 1e-30, "m = {m}");
        assert_eq!(a.im, 0.0);
    }
}

#[test]
fn exact_spectral_radius_is_additive() {
    let a = SincProduct::pure(1.0, &[(0.125, 3), (0.25, 1)]).unwrap();
    let b = SincProduct::pure(2.0, &[(0.125, 2)]).unwrap();
    let ab = a.multiply(&b);
    assert_eq!(ab.spectral_radius_exact(), a.spectral_radius_exact() + b.spectral_radius_exact());
    assert!(ab.spectrum_within(0.875));
    assert!(!ab.spectrum_within(0.874));
    // the double nearest 0.1 lies above 0.1, and the exact sum sees it
    let tenth = SincProduct::pure(1.0, &[(0.1, 5), (0.25, 1)]).unwrap();
    assert!(!tenth.spectrum_within(0.75));
}
