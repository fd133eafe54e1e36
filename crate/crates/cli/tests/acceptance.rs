//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use radial_bm::analysis::{sinc_product_spectrum, RadialLogFn};
use radial_bm::entire::{lift_eval_with, LiftPath};
use radial_bm::{
    admissibility_integral, cartwright_log_integral, certify_product_bound, check_lifting_bound,
    construct_minorant_1d, construct_multiplier, default_grid, dyadic_radial_majorant, estimate_type,
    eval_even_1d, fft_spectrum_report, haar_average, l2_norm_radial, lift_eval_real, min_im_sqrt,
    pointwise_minorization_check, radial_profile, radiality_defect, sample_complex_points, sample_points,
    sphere_area, taylor_coeffs, tensor_sinh_quadrature, EvenFunction, GridHeader, GridSamples,
    IntegralValue, LiftedRadialFunction, QuadConfig, RadialProfile, SincProduct, SphericalQuadrature,
    WeightFamily, WeightSpec,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn finite(v: &IntegralValue, what: &str) -> Result<f64, String> {
    v.value().ok_or_else(|| format!("{what} is not finite: {v:?}"))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn type_grid(f: &SincProduct) -> Vec<f64> {
    let sigma = f.spectral_radius();
    let lo = if sigma > 0.0 { (10.0f64).max(40.0 * f.total_power() as f64 / sigma) } else { 10.0 };
    (0..=40).map(|i| lo + lo * i as f64 / 40.0).collect()
}

fn criterion_1() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut total = 0;
    for (k, n) in [2usize, 3, 5].into_iter().enumerate() {
        for (j, (xm, ym)) in [(10.0, 10.0), (1e-3, 1e-3), (100.0, 0.1)].into_iter().enumerate() {
            let count = if j == 0 { 60_000 } else { 20_000 };
            for (x, y) in sample_complex_points(n, count, 100 + 10 * k as u64 + j as u64, xm, ym) {
                let w: Complex64 = x.iter().zip(&y).map(|(&a, &b)| Complex64::new(a, b).powi(2)).sum();
                worst = worst.max(min_im_sqrt(w).im.abs() - norm(&y));
                total += 1;
            }
        }
    }
    ensure(worst <= 1e-12, || format!("|Im ζ| - ‖Im z‖ reached {worst:e}"))?;
    Ok(format!("{total} points, max(|Im ζ| - ‖Im z‖) = {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for sigma in [0.5, 1.0, 2.0] {
        let bases = [
            SincProduct::pure(1.0, &[(sigma, 1)]).unwrap(),
            SincProduct::pure(0.7, &[(sigma / 2.0, 2)]).unwrap(),
        ];
        for base in bases {
            let a = base.lifting_constant().unwrap();
            for n in [2usize, 3] {
                let f = ok(LiftedRadialFunction::new(n, base.clone()))?;
                let grid = sample_complex_points(n, 10_000, 7 + n as u64, 10.0, 5.0);
                let r = ok(check_lifting_bound(&f, &grid, a, sigma, 1e-9))?;
                ensure(r.pass, || format!("σ={sigma}, n={n}: ratio {}", r.statistic))?;
                worst = worst.max(r.statistic);
            }
        }
    }
    Ok(format!("max |f(x+iy)| / (A e^(σ‖y‖)) = {worst:.12}"))
}

/// `|F|` sampled on a centered `n`-D grid fine enough for spectral radius `s`.
fn lifted_grid(f: &SincProduct, n: usize, per_axis: usize) -> Result<GridSamples, String> {
    let h = (1.0f64).min(PI / (4.0 * f.spectral_radius()));
    let header = ok(GridHeader::centered(n, per_axis, h * per_axis as f64 / 2.0))?;
    ok(GridSamples::sample(header, |x| f.eval(norm(x))))
}

fn criterion_3() -> Outcome {
    let q = QuadConfig::default();
    let weights = [
        WeightFamily::Bounded { m: 0.5 },
        WeightFamily::Bounded { m: 2.0 },
        WeightFamily::LogGrowth { kappa: 0.5, c: 0.0 },
        WeightFamily::LogGrowth { kappa: 0.5, c: 1.0 },
        WeightFamily::LogGrowth { kappa: 1.0, c: 0.0 },
        WeightFamily::LogGrowth { kappa: 1.0, c: 1.0 },
    ];
    let mut configs = 0;
    let mut worst_ratio: f64 = 0.0;
    let mut worst_fft: f64 = 0.0;
    for family in &weights {
        for n in [2usize, 3] {
            for eps in [0.5, 1.0] {
                let tag = format!("{family:?}, n={n}, ε={eps}");
                let spec = ok(WeightSpec::new(family.clone(), n))?;
                let profile = ok(radial_profile(&spec))?;
                let f = ok(construct_minorant_1d(&profile, n, eps)).map_err(|e| format!("{tag}: {e}"))?;
                let lifted = ok(LiftedRadialFunction::new(n, f.clone()))?;
                let r_max = 1e3 * (1.0f64).max(1.0 / f.min_delta().unwrap_or(1.0));
                let pts = sample_points(n, 100_000, 3 + configs, 1e-3, r_max);
                let check = ok(pointwise_minorization_check(&lifted, &spec, &pts))?;
                let max_abs = check.details["max_abs_f"].as_f64().unwrap_or(0.0);
                ensure(max_abs > 0.0, || format!("{tag}: trivial minorant"))?;
                ensure(check.pass, || format!("{tag}: |f| e^Ω reached {}", check.statistic))?;
                worst_ratio = worst_ratio.max(check.statistic);
                ensure(f.spectrum_within(eps), || format!("{tag}: spectral radius {} > ε", f.spectral_radius()))?;
                let s1 = ok(sinc_product_spectrum(&f, 1.05 * eps, 1e-6))?;
                ensure(s1.pass, || format!("{tag}: 1-D outside fraction {:e}", s1.outside_fraction))?;
                worst_fft = worst_fft.max(s1.outside_fraction);
                if n == 2 {
                    let s2 = ok(fft_spectrum_report(&lifted_grid(&f, 2, 1024)?, 1.05 * eps, 1e-6))?;
                    ensure(s2.pass, || format!("{tag}: 2-D outside fraction {:e}", s2.outside_fraction))?;
                    worst_fft = worst_fft.max(s2.outside_fraction);
                }
                finite(&ok(l2_norm_radial(&f, n, &q))?, &format!("{tag}: L² norm"))?;
                finite(&ok(cartwright_log_integral(&f, n, &q))?, &format!("{tag}: log integral"))?;
                configs += 1;
            }
        }
    }
    Ok(format!(
        "{configs} configurations, max |f|e^Ω = {worst_ratio:.6}, max outside fraction = {worst_fft:.2e}"
    ))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn tensor(n: usize, g: &(dyn Fn(&[f64]) -> f64 + Sync)) -> f64 {
    let step = if n == 2 { 0.02 } else { 0.04 };
    tensor_sinh_quadrature(&g, n, step, 3.2)
}

fn criterion_4() -> Outcome {
    let q = QuadConfig::default();
    let mut worst: f64 = 0.0;
    let kernel = |r2: f64, n: usize| (1.0 + r2).powf(-((n + 1) as f64) / 2.0);
    let minorant = ok(construct_minorant_1d(&RadialProfile::LogGrowth { kappa: 1.0, c: 0.0 }, 3, 1.0))?;
    for n in [2usize, 3] {
        for profile in [
            RadialProfile::Bounded { m: 1.0 },
            RadialProfile::LogGrowth { kappa: 1.0, c: 0.5 },
            RadialProfile::LogGrowth { kappa: 0.5, c: 0.0 },
        ] {
            let reduced = finite(&ok(admissibility_integral(&profile, n, &q))?, "admissibility")?;
            let direct = tensor(n, &|x: &[f64]| {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                profile.eval(r2.sqrt()) * kernel(r2, n)
            });
            let e = rel(direct, reduced);
            ensure(e <= 1e-4, || format!("admissibility {profile:?}, n={n}: {direct} vs {reduced}"))?;
            worst = worst.max(e);
        }
        for f in [minorant.clone(), SincProduct::pure(1.0, &[(0.5, 4)]).unwrap()] {
            let reduced = finite(&ok(l2_norm_radial(&f, n, &q))?, "L² norm")?;
            let direct = tensor(n, &|x: &[f64]| f.eval(norm(x)).powi(2));
            let e = rel(direct, reduced);
            ensure(e <= 1e-4, || format!("L², n={n}: {direct} vs {reduced}"))?;
            worst = worst.max(e);
        }
        let zero_free = RadialLogFn {
            f: |r: f64| 0.5 / (1.0 + r * r),
            log_abs: |r: f64| (0.5f64).ln() - (r * r).ln_1p(),
        };
        let reduced = finite(&ok(cartwright_log_integral(&zero_free, n, &q))?, "log integral")?;
        let direct = tensor(n, &|x: &[f64]| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            ((0.5f64).ln() - r2.ln_1p()).abs() * kernel(r2, n)
        });
        let e = rel(direct, reduced);
        ensure(e <= 1e-4, || format!("log kernel, n={n}: {direct} vs {reduced}"))?;
        worst = worst.max(e);
    }
    for (n, want) in [(1, 2.0), (2, 2.0 * PI), (3, 4.0 * PI)] {
        let got = sphere_area(n);
        ensure((got - want).abs() <= 1e-12, || format!("sphere_area({n}) = {got}"))?;
    }
    Ok(format!("max relative difference {worst:.2e}; sphere areas exact"))
}

fn criterion_5() -> Outcome {
    let q = QuadConfig::default();
    let mut worst_gap = f64::NEG_INFINITY;
    let mut worst_defect: f64 = 0.0;
    for (family, n, eps) in [
        (WeightFamily::LogGrowth { kappa: 1.0, c: 0.0 }, 3usize, 1.0),
        (WeightFamily::Bounded { m: 0.5 }, 2, 0.5),
    ] {
        let spec = ok(WeightSpec::new(family, n))?;
        let profile = ok(radial_profile(&spec))?;
        let f = ok(construct_minorant_1d(&profile, n, eps))?;
        let lifted = ok(LiftedRadialFunction::new(n, f.clone()))?;
        let radial_h = |x: &[f64]| lifted.abs_at_real(x).map_or(f64::NAN, |v| v * v);
        // a non-radial h below |f|²; its radial component is |F|²(1 - 1/(2n))
        let skew_h = |x: &[f64]| {
            let r = norm(x);
            let cos2 = if r > 0.0 { (x[0] / r).powi(2) } else { 0.0 };
            radial_h(x) * (1.0 - 0.5 * cos2)
        };
        let quad = SphericalQuadrature::MonteCarlo { samples: 4096, seed: 11 };
        let pts = sample_points(n, 100, 5, 1e-2, 1e2);
        let hs: [(&str, &(dyn Fn(&[f64]) -> f64 + Sync), f64); 2] =
            [("radial", &radial_h, 1.0), ("skewed", &skew_h, 1.0 - 0.5 / n as f64)];
        for (name, h, share) in hs {
            let mut max_se: f64 = 0.0;
            for x in &pts {
                let a = ok(haar_average(&h, x, &quad))?;
                let se = a.std_error.unwrap_or(0.0);
                max_se = max_se.max(se);
                let gap = a.mean - (-2.0 * ok(spec.eval(x))?).exp() - 3.0 * se;
                ensure(gap <= 0.0, || format!("{name} h, n={n}: average exceeds e^(-2Ω) + 3se by {gap:e} at {x:?}"))?;
                worst_gap = worst_gap.max(gap);
            }
            let avg = |x: &[f64]| haar_average(&h, x, &quad).map_or(f64::NAN, |a| a.mean);
            let outer = SphericalQuadrature::MonteCarlo { samples: 256, seed: 12 };
            let defect = ok(radiality_defect(&avg, n, &[0.3, 1.0, 3.0], &outer))?;
            // rounding floor for when h is exactly radial and every standard error vanishes
            let bound = 3.0 * max_se + 1e-12;
            ensure(defect <= bound, || format!("{name} h, n={n}: radiality defect {defect:e} > {bound:e}"))?;
            worst_defect = worst_defect.max(defect);
            let component = ok(f.squared().with_scale(f.c() * f.c() * share))?;
            finite(&ok(cartwright_log_integral(&component, n, &q))?, "log integral of the radial component")?;
        }
    }
    let cli = counter_direction()?;
    Ok(format!(
        "max(avg - e^(-2Ω) - 3se) = {worst_gap:.2e}, max radiality defect {worst_defect:.2e}; {cli}"
    ))
}

/// `Ω₀(r) = r` through the command-line tool: must report `+inf` with exit code 2.
fn counter_direction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let weight = dir.path().join("linear.json");
    std::fs::write(&weight, r#"{"family":"tabulated_radial","dim":1,"params":{"knots":[[0,0],[1e12,1e12]]}}"#)
        .map_err(|e| e.to_string())?;
    let out = dir.path().join("out");
    let status = Command::new(env!("CARGO_BIN_EXE_radial-bm"))
        .args(["admissibility", "--weight"])
        .arg(&weight)
        .arg("--out")
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(2), || format!("admissibility exited with {:?}", status.status.code()))?;
    let report: serde_json::Value =
        serde_json::from_str(&read(&out.join("admissibility_report.json"))?).map_err(|e| e.to_string())?;
    ensure(report["value"] == "+inf", || format!("value is {}", report["value"]))?;
    Ok("Ω₀(r) = r gives \"+inf\", exit 2".into())
}

fn read(p: &Path) -> Result<String, String> {
    std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn criterion_6() -> Outcome {
    let q = QuadConfig::default();
    let bases = [
        ("sinc", SincProduct::pure(1.0, &[(1.0, 1)]).unwrap()),
        ("x²·sinc", SincProduct::new(1.0, vec![radial_bm::SincFactor { delta: 1.0, p: 1 }], Some(vec![0.0, 0.0, 1.0])).unwrap()),
        (
            "poly4·sinc²",
            SincProduct::new(
                1.0,
                vec![radial_bm::SincFactor { delta: 0.5, p: 2 }],
                Some(vec![1.0, 0.0, 2.0, 0.0, 0.5]),
            )
            .unwrap(),
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut worst_type: f64 = 0.0;
    for (name, f0) in &bases {
        for eps in [0.3, 1.0] {
            let tag = format!("{name}, ε={eps}");
            let g = ok(construct_multiplier(f0, eps, None)).map_err(|e| format!("{tag}: {e}"))?;
            let product = g.multiply(f0);
            let mut grid = default_grid(&product, None);
            let x_max = *grid.last().unwrap();
            grid.extend((0..1_000_000).map(|i| x_max * i as f64 / 999_999.0));
            grid.sort_by(f64::total_cmp);
            let cert = ok(certify_product_bound(&g, f0, &grid))?;
            ensure(cert.pass, || format!("{tag}: {:?}", cert))?;
            worst = worst.max(cert.statistic);
            for n in [2usize, 3] {
                let lg = ok(LiftedRadialFunction::new(n, g.clone()))?;
                let lf = ok(LiftedRadialFunction::new(n, f0.clone()))?;
                for x in sample_points(n, 100_000, 21 + n as u64, 1e-3, x_max) {
                    let v = ok(lift_eval_real(&lg, &x))?.norm() * ok(lift_eval_real(&lf, &x))?.norm();
                    ensure(v <= 1.0 + 1e-12, || format!("{tag}, n={n}: |G f| = {v} at {x:?}"))?;
                    worst = worst.max(v);
                }
                finite(&ok(cartwright_log_integral(&g, n, &q))?, &format!("{tag}: log integral of G, n={n}"))?;
            }
            finite(&ok(cartwright_log_integral(&g, 1, &q))?, &format!("{tag}: log integral of G"))?;
            let t = ok(estimate_type(&EvenFunction::Sinc(g.clone()), &type_grid(&g)))?;
            ensure(t.slope <= eps + 0.1, || format!("{tag}: type estimate {}", t.slope))?;
            worst_type = worst_type.max(t.slope - eps);
        }
    }
    Ok(format!("max |G f| = {worst:.6}, max(type estimate - ε) = {worst_type:.3}"))
}

fn criterion_7() -> Outcome {
    let q = QuadConfig::default();
    let mut notes = Vec::new();
    for (formula, admissible) in [
        (radial_bm::weights::NonRadialFormula::AbsCoord { axis: 0 }, false),
        (radial_bm::weights::NonRadialFormula::LogCoord { axis: 0, kappa: 1.0 }, true),
    ] {
        let spec = ok(WeightSpec::new(WeightFamily::Nonradial(formula.clone()), 2))?;
        let majorant = ok(dyadic_radial_majorant(&spec, -4, 10, 2048, 9))?;
        let radial = |x: &[f64]| majorant.eval(norm(x));
        // radii between breakpoints
        let defect = ok(radiality_defect(&radial, 2, &[0.05, 0.75, 3.0, 100.0, 1500.0], &SphericalQuadrature::default_for(2)))?;
        ensure(defect <= 1e-12, || format!("{formula:?}: radiality defect {defect:e}"))?;
        for x in sample_points(2, 10_000, 13, 2f64.powi(-6), 2f64.powi(12)) {
            let (m, w) = (majorant.eval(norm(&x)), ok(spec.eval(&x))?);
            ensure(m >= w, || format!("{formula:?}: majorant {m} < Ω = {w} at {x:?}"))?;
        }
        let adm = ok(admissibility_integral(&majorant, 2, &q))?;
        if admissible {
            notes.push(format!("log(1+x₁²): finite ({:.4})", finite(&adm, "admissibility")?));
        } else {
            ensure(adm.is_infinite(), || format!("|x₁|: expected +inf, got {adm:?}"))?;
            notes.push("|x₁|: +inf".to_string());
        }
    }
    Ok(format!("radial, ≥ Ω at 10⁴ points; {}", notes.join(", ")))
}

fn criterion_8() -> Outcome {
    let mut worst_taylor: f64 = 0.0;
    let mut worst_paths: f64 = 0.0;
    let bases = [
        SincProduct::pure(1.0, &[(1.0, 1)]).unwrap(),
        SincProduct::pure(2.0, &[(0.5, 2)]).unwrap(),
        SincProduct::new(0.5, vec![radial_bm::SincFactor { delta: 0.3, p: 3 }], Some(vec![1.0, 0.0, -0.2])).unwrap(),
    ];
    for (k, f0) in bases.iter().enumerate() {
        let series = ok(taylor_coeffs(f0, 80))?;
        let radius = series.truncation_radius();
        let ef = EvenFunction::Series(series.clone());
        // points in the certified disc
        for (x, y) in sample_complex_points(1, 2000, 40 + k as u64, radius / 2f64.sqrt(), radius / 2f64.sqrt()) {
            let z = Complex64::new(x[0], y[0]);
            if z.norm() > radius {
                continue;
            }
            let want = f0.eval_complex(z);
            let got = ok(eval_even_1d(&ef, z))?;
            let e = (got - want).norm() / want.norm().max(1.0);
            ensure(e <= 1e-9, || format!("taylor vs closed form at {z}: {e:e}"))?;
            worst_taylor = worst_taylor.max(e);
        }
        for n in [2usize, 3] {
            let lifted = ok(LiftedRadialFunction::new(n, series.clone()))?;
            let reach = radius / (2.0 * n as f64).sqrt();
            for (x, y) in sample_complex_points(n, 2000, 50 + k as u64, reach, reach) {
                let z: Vec<Complex64> = x.iter().zip(&y).map(|(&a, &b)| Complex64::new(a, b)).collect();
                let a = ok(lift_eval_with(&lifted, &z, LiftPath::AtRoot))?;
                let b = ok(lift_eval_with(&lifted, &z, LiftPath::HornerInW))?;
                let e = (a - b).norm() / a.norm().max(1.0);
                ensure(e <= 1e-10, || format!("lift paths differ by {e:e} at {z:?}"))?;
                worst_paths = worst_paths.max(e);
            }
        }
    }
    let mut worst_type: f64 = 0.0;
    for sigma in [0.5, 1.0, 2.0] {
        for f in [SincProduct::pure(1.0, &[(sigma, 1)]).unwrap(), SincProduct::pure(1.0, &[(sigma / 3.0, 3)]).unwrap()] {
            let t = ok(estimate_type(&EvenFunction::Sinc(f.clone()), &type_grid(&f)))?;
            let e = (t.slope - sigma).abs() / sigma;
            ensure(e <= 0.05, || format!("type of {f:?}: {} vs {sigma}", t.slope))?;
            worst_type = worst_type.max(e);
        }
    }
    let mut worst_haar: f64 = 0.0;
    for n in [2usize, 3, 5] {
        for (i, r) in [0.5, 1.0, 3.0].into_iter().enumerate() {
            let quad = SphericalQuadrature::MonteCarlo { samples: 4096, seed: 60 + i as u64 };
            let mut x = vec![0.0; n];
            x[n - 1] = r;
            let a = ok(haar_average(&|p: &[f64]| p[0] * p[0], &x, &quad))?;
            let se = a.std_error.unwrap_or(0.0);
            let dev = (a.mean - r * r / n as f64).abs();
            ensure(dev <= 3.0 * se, || format!("haar x₁², n={n}, r={r}: {} vs {}", a.mean, r * r / n as f64))?;
            worst_haar = worst_haar.max(dev / se);
        }
    }
    Ok(format!(
        "taylor {worst_taylor:.1e}, lift paths {worst_paths:.1e}, type {:.1}%, haar {worst_haar:.2} se",
        100.0 * worst_type
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 square-root step", criterion_1, Duration::from_secs(5)),
        ("2 lifting bound", criterion_2, Duration::from_secs(30)),
        ("3 pipeline end-to-end", criterion_3, Duration::from_secs(300)),
        ("4 polar reduction", criterion_4, Duration::from_secs(600)),
        ("5 necessity", criterion_5, Duration::from_secs(600)),
        ("6 multiplier", criterion_6, Duration::from_secs(600)),
        ("7 dyadic majorant", criterion_7, Duration::from_secs(600)),
        ("8 oracle equivalences", criterion_8, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > limit => Err(format!("{msg}; took {took:.1?}, limit {limit:?}")),
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{:.2}s]", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{:.2}s]", took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
