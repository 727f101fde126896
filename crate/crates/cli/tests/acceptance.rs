//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::f64::consts::TAU;
use std::process::{Command, ExitCode};

use num_complex::Complex64;
use varregion::dieudonne::c2_rho2_dieudonne_explicit;
use varregion::oracle::{
    cauchy_derivatives, divided_difference_errors, random_dieudonne_data, random_hyperbolic_data,
    random_schur_tail, schur_parameters_by_algorithm, worst_ratio_deviation, Problem, RATIO_WINDOW,
};
use varregion::variability::c2_rho2_explicit;
use varregion::{
    coefficients_from_parameters, dieudonne_disk, disk_nth, extremal_h_series, extremal_series,
    f_poly, g_poly, hyperbolic_derivatives, parameters_from_coefficients, peschl_from_series,
    run_containment, BlaschkeProduct, BranchClass, DieudonneData, ExtremalSpec, HyperbolicData,
    SplitMix64, Tail, TrialConfig,
};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn sampling() -> TrialConfig {
    TrialConfig::default()
}

// 1. γ → a → γ
fn schur_roundtrip() -> Outcome {
    let mut rng = SplitMix64::new(1);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let n = 1 + i % 6;
        let gammas: Vec<Complex64> = (0..n).map(|_| rng.disk_point(0.9)).collect();
        let back = parameters_from_coefficients(&coefficients_from_parameters(&gammas)).unwrap();
        assert_eq!(back.degenerate_at, None);
        for (a, e) in back.gammas.iter().zip(&gammas) {
            worst = worst.max((a - e).norm());
        }
    }
    outcome(
        worst < 1e-10,
        format!("1000 draws, n ≤ 6, |γ| ≤ 0.9: max abs error {worst:.2e} (tol 1e-10)"),
    )
}

fn random_h0_blaschke(rng: &mut SplitMix64, degree: usize) -> BlaschkeProduct {
    let mut zeros = vec![ZERO];
    zeros.extend((1..degree).map(|_| rng.disk_point(0.8)));
    BlaschkeProduct::new(TAU * rng.next_f64(), zeros).unwrap()
}

// 2. a_n = F_n(γ1, …, γn) with γ from the classical Schur algorithm
fn lemma_coefficients() -> Outcome {
    let mut rng = SplitMix64::new(2);
    let (mut worst, mut worst_taylor) = (0.0f64, 0.0f64);
    for i in 0..200 {
        let degree = 1 + i % 6;
        let b = random_h0_blaschke(&mut rng, degree);
        let g = Tail::Blaschke(b.clone()).series(ZERO, degree + 2).unwrap();
        // Taylor coefficients checked against contour integrals of the pointwise product
        let by_contour = cauchy_derivatives(&|z| b.eval(z), ZERO, 0.5, degree, 128);
        for (k, d) in by_contour.iter().enumerate() {
            let factorial: f64 = (1..=k).map(|j| j as f64).product();
            worst_taylor = worst_taylor.max((d / factorial - g.coeff(k)).norm());
        }
        let gammas = schur_parameters_by_algorithm(&g, degree).unwrap();
        for k in 1..=gammas.len() {
            worst = worst.max((g.coeff(k) - f_poly(&gammas[..k])).norm());
        }
    }
    let pass = worst < 1e-9 && worst_taylor < 1e-9;
    outcome(
        pass,
        format!("200 Blaschke g ∈ H_0, degree ≤ 6: max |a_n − F_n(γ)| {worst:.2e}, Taylor vs contour {worst_taylor:.2e} (tol 1e-9)"),
    )
}

fn random_f(rng: &mut SplitMix64, n: usize) -> (HyperbolicData, varregion::TruncatedSeries) {
    let config = sampling();
    let data = random_hyperbolic_data(rng, &config, n);
    let tail = random_schur_tail(rng, &config);
    let series = extremal_series(&ExtremalSpec::new(data.clone(), tail), 6).unwrap();
    (data, series)
}

fn d2_display(z: Complex64, f: Complex64, f1: Complex64, f2: Complex64) -> Complex64 {
    let (w, v) = (1.0 - z.norm_sqr(), 1.0 - f.norm_sqr());
    w * w / v * (f2 - 2.0 * z.conj() * f1 / w + 2.0 * f.conj() * f1 * f1 / v)
}

/// The D_3 display, with the cross term exactly as printed (`−12 f̄ f'²/(wv)`)
/// or with the factor `z̄` that the definition produces.
fn d3_display(z: Complex64, f: Complex64, d: &[Complex64], with_zbar: bool) -> Complex64 {
    let (w, v) = (1.0 - z.norm_sqr(), 1.0 - f.norm_sqr());
    let (f1, f2, f3) = (d[0], d[1], d[2]);
    let (zb, fb) = (z.conj(), f.conj());
    let cross = if with_zbar { zb } else { c(1.0, 0.0) };
    w.powi(3) / v
        * (f3 - 6.0 * zb * f2 / w + 6.0 * fb * f1 * f2 / v + 6.0 * zb * zb * f1 / (w * w)
            - 12.0 * cross * fb * f1 * f1 / (w * v)
            + 6.0 * fb * fb * f1.powu(3) / (v * v))
}

fn h3_d_form(h: &[Complex64], d: &[Complex64]) -> Complex64 {
    (3.0 * h[0].conj() * h[1] * d[1] + d[2])
        / (6.0 - 6.0 * h[0].norm_sqr() - 3.0 * h[1].conj() * d[1])
}

/// `H³ = (D_3 − 3!·G_3)/(3!(1−|H¹|²)(1−|H²|²))` for a given `G_3`.
fn h3_g_form(h: &[Complex64], d: &[Complex64], g3: Complex64) -> Complex64 {
    (d[2] - 6.0 * g3) / (6.0 * (1.0 - h[0].norm_sqr()) * (1.0 - h[1].norm_sqr()))
}

fn g3_squared(g1: Complex64, g2: Complex64) -> Complex64 {
    -(1.0 - g1.norm_sqr()) * g1.conj() * g2 * g2
}

fn g3_printed(g1: Complex64, g2: Complex64) -> Complex64 {
    -(1.0 - g1.norm_sqr()) * g1.conj() * g2
}

// 3. printed closed forms against the general-n pipeline
fn printed_closed_forms() -> Outcome {
    let mut rng = SplitMix64::new(3);
    let config = sampling();
    let mut worst = [0.0f64; 8];
    let mut zero_f0_d3 = 0.0f64;
    for _ in 0..500 {
        let (data, f) = random_f(&mut rng, 3);
        let z0 = data.z0();
        let d = peschl_from_series(&f).unwrap();
        let ord = f.derivatives();
        let h = hyperbolic_derivatives(&f, 3).unwrap().gammas;
        worst[0] = worst[0].max(rel(d2_display(z0, f.value(), ord[0], ord[1]), d[1]));
        worst[1] = worst[1].max(rel(d3_display(z0, f.value(), &ord, false), d[2]));
        worst[2] = worst[2].max(rel(d3_display(z0, f.value(), &ord, true), d[2]));
        worst[3] = worst[3].max(rel(d[1] / (2.0 * (1.0 - h[0].norm_sqr())), h[1]));
        worst[4] = worst[4].max(rel(h3_d_form(&h, &d), h[2]));
        worst[5] = worst[5].max(rel(h3_g_form(&h, &d, g3_squared(h[0], h[1])), h[2]));
        let two = data.truncate(2);
        let (pipeline, explicit) = (
            disk_nth(&two).unwrap(),
            c2_rho2_explicit(z0, two.gammas()[0], two.gammas()[1]),
        );
        worst[6] = worst[6].max(
            rel(explicit.center, pipeline.center)
                .max((explicit.radius - pipeline.radius).abs() / pipeline.radius.max(1.0)),
        );
        let dd = random_dieudonne_data(&mut rng, &config, 2);
        let (pipeline, explicit) = (
            dieudonne_disk(&dd).unwrap(),
            c2_rho2_dieudonne_explicit(dd.z0(), dd.w0(), dd.gammas()[0]),
        );
        worst[7] = worst[7].max(
            rel(explicit.center, pipeline.center)
                .max((explicit.radius - pipeline.radius).abs() / pipeline.radius.max(1.0)),
        );
        // with f(z0) = 0 the cross term vanishes either way
        let mut centered = data.gammas().to_vec();
        centered[0] = ZERO;
        let centered = HyperbolicData::new(z0, centered).unwrap();
        let f0 = extremal_series(
            &ExtremalSpec::new(centered, Tail::Constant(rng.disk_point(0.8))),
            6,
        )
        .unwrap();
        let d0 = peschl_from_series(&f0).unwrap();
        zero_f0_d3 = zero_f0_d3.max(rel(
            d3_display(z0, f0.value(), &f0.derivatives(), false),
            d0[2],
        ));
    }
    let tol = 1e-9;
    let names = [
        "D_2",
        "D_3 as printed",
        "D_3 with z̄ cross term",
        "H²",
        "H³ (D form)",
        "H³ (G_3 form)",
        "c_2/ρ_2",
        "c'_2/ρ'_2",
    ];
    let listed: Vec<String> = names
        .iter()
        .zip(worst)
        .map(|(n, w)| format!("{n} {w:.1e}"))
        .collect();
    let printed_ok = worst.iter().enumerate().all(|(k, w)| k == 2 || *w < tol);
    let mut detail = format!(
        "500 inputs, |z0| ≤ 0.7, rel tol 1e-9: {}",
        listed.join(", ")
    );
    if !printed_ok {
        detail.push_str(&format!(
            ". The printed D_3 display omits z̄ in its −12·f̄·f'² term: it agrees only when f(z0) = 0 ({zero_f0_d3:.1e}) while the corrected display matches ({:.1e})",
            worst[2]
        ));
    }
    outcome(printed_ok, detail)
}

// 4. which G_3 monomial is right
fn g3_adjudication() -> Outcome {
    let mut rng = SplitMix64::new(4);
    let (mut err_sq, mut err_printed, mut err_lib) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..200 {
        let degree = 3 + i % 4;
        let g = Tail::Blaschke(random_h0_blaschke(&mut rng, degree))
            .series(ZERO, degree + 2)
            .unwrap();
        let gm = schur_parameters_by_algorithm(&g, 3).unwrap();
        let weight = (1.0 - gm[0].norm_sqr()) * (1.0 - gm[1].norm_sqr());
        err_sq = err_sq.max((weight * gm[2] + g3_squared(gm[0], gm[1]) - g.coeff(3)).norm());
        err_printed =
            err_printed.max((weight * gm[2] + g3_printed(gm[0], gm[1]) - g.coeff(3)).norm());
        err_lib = err_lib.max((g_poly(&gm[..2]) - g3_squared(gm[0], gm[1])).norm());
    }
    let mut rng = SplitMix64::new(40);
    let (mut h3_sq, mut h3_printed) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let (_, f) = random_f(&mut rng, 3);
        let d = peschl_from_series(&f).unwrap();
        let h = hyperbolic_derivatives(&f, 3).unwrap().gammas;
        h3_sq = h3_sq.max(rel(h3_g_form(&h, &d, g3_squared(h[0], h[1])), h[2]));
        h3_printed = h3_printed.max(rel(h3_g_form(&h, &d, g3_printed(h[0], h[1])), h[2]));
    }
    let pass = err_sq < 1e-12
        && err_printed > 1e-3
        && err_lib < 1e-15
        && h3_sq < 1e-9
        && h3_printed > 1e-3;
    outcome(
        pass,
        format!(
            "a_3 = (1−|γ1|²)(1−|γ2|²)γ3 + G_3: G_3 = −(1−|γ1|²)γ̄1γ2² fits to {err_sq:.1e}, the γ2-linear form misses by {err_printed:.1e}; \
             library G_3 matches the γ2² form ({err_lib:.1e}); H³ via γ2² form {h3_sq:.1e}, via γ2-linear form {h3_printed:.1e}"
        ),
    )
}

// 5. c_n against the ε = 0 extremal
fn center_consistency() -> Outcome {
    let mut rng = SplitMix64::new(5);
    let config = sampling();
    let (mut worst_series, mut worst_contour) = (0.0f64, 0.0f64);
    for i in 0..300 {
        let n = 1 + i % 5;
        let data = random_hyperbolic_data(&mut rng, &config, n);
        let center = disk_nth(&data).unwrap().center;
        let spec = ExtremalSpec::new(data.clone(), Tail::Constant(ZERO));
        let by_series = extremal_series(&spec, n + 2)
            .unwrap()
            .derivative_at_center(n)
            .unwrap();
        let radius = 0.5 * (1.0 - data.z0().norm());
        let by_contour =
            cauchy_derivatives(&|z| spec.eval(z).unwrap(), data.z0(), radius, n, 256)[n];
        worst_series = worst_series.max(rel(by_series, center));
        worst_contour = worst_contour.max(rel(by_contour, center));
    }
    outcome(
        worst_series < 1e-8 && worst_contour < 1e-8,
        format!("300 configurations, n ≤ 5: series {worst_series:.1e}, contour integral {worst_contour:.1e} (rel tol 1e-8)"),
    )
}

// 6. unimodular ε lands on the circle
fn boundary_attainment() -> Outcome {
    let mut rng = SplitMix64::new(6);
    let config = sampling();
    let (mut worst_f, mut worst_h) = (0.0f64, 0.0f64);
    for i in 0..20 {
        let n = 1 + i % 5;
        let problems = [
            Problem::SchwarzPick(random_hyperbolic_data(&mut rng, &config, n)),
            Problem::Dieudonne(random_dieudonne_data(&mut rng, &config, n)),
        ];
        for (k, problem) in problems.iter().enumerate() {
            let disk = problem.disk().unwrap();
            for _ in 0..100 {
                let v = problem
                    .nth_derivative(&Tail::Constant(rng.unit_point()))
                    .unwrap();
                let dev = ((v - disk.center).norm() / disk.radius - 1.0).abs();
                if k == 0 {
                    worst_f = worst_f.max(dev);
                } else {
                    worst_h = worst_h.max(dev);
                }
            }
        }
    }
    outcome(
        worst_f < 1e-8 && worst_h < 1e-8,
        format!("20 configurations each, 100 unimodular ε each: f {worst_f:.1e}, h {worst_h:.1e} (tol 1e-8)"),
    )
}

// 7. random Schur tails stay inside
fn containment() -> Outcome {
    let mut rng = SplitMix64::new(7);
    let base = sampling();
    let (mut violations, mut worst) = (0usize, f64::NEG_INFINITY);
    let mut configurations = 0;
    for i in 0..20 {
        let n = 1 + i % 5;
        let problem = if i % 2 == 0 {
            Problem::SchwarzPick(random_hyperbolic_data(&mut rng, &base, n))
        } else {
            Problem::Dieudonne(random_dieudonne_data(&mut rng, &base, n))
        };
        let config = TrialConfig {
            seed: 700 + i as u64,
            trials: 1000,
            ..base.clone()
        };
        let report = run_containment(&config, &problem).unwrap();
        configurations += 1;
        worst = worst.max(report.max_violation);
        if !report.pass {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!(
            "{configurations} configurations (f and h, n ≤ 5) × 1000 tails: max (|v − c|/ρ − 1) = {worst:.1e}, failing configurations {violations} (slack 1e-8)"
        ),
    )
}

// 8. degenerate data pin the derivative
fn degenerate_branch() -> Outcome {
    let mut rng = SplitMix64::new(8);
    let config = sampling();
    let (mut worst_radius, mut worst) = (0.0f64, 0.0f64);
    let mut cases = 0;
    for i in 0..60 {
        let j = 1 + i % 3;
        let n = j + 1 + i % 2;
        let z0 = rng.disk_point(0.7);
        let zeros: Vec<Complex64> = (0..j).map(|_| rng.disk_point(0.8)).collect();
        let b = BlaschkeProduct::new(TAU * rng.next_f64(), zeros).unwrap();
        let series = Tail::Blaschke(b.clone()).series(z0, n + 2).unwrap();
        let params = hyperbolic_derivatives(&series, j).unwrap();
        assert_eq!(params.degenerate_at, Some(j));
        let mut gammas = vec![series.value()];
        gammas.extend(&params.gammas);
        gammas.resize(n, ZERO);
        let data = HyperbolicData::new(z0, gammas).unwrap();
        assert_eq!(
            varregion::classify(&data).unwrap(),
            BranchClass::BlaschkeDegenerate(j)
        );
        let disk = disk_nth(&data).unwrap();
        worst_radius = worst_radius.max(disk.radius);
        // the Blaschke product itself, by series and by contour integral
        let by_blaschke = series.derivative_at_center(n).unwrap();
        let by_contour = cauchy_derivatives(&|z| b.eval(z), z0, 0.5 * (1.0 - z0.norm()), n, 256)[n];
        worst = worst
            .max(rel(by_blaschke, disk.center))
            .max(rel(by_contour, disk.center));
        // the nested construction with arbitrary tails
        for _ in 0..5 {
            let spec = ExtremalSpec::new(data.clone(), random_schur_tail(&mut rng, &config));
            let v = extremal_series(&spec, n + 2)
                .unwrap()
                .derivative_at_center(n)
                .unwrap();
            worst = worst.max(rel(v, disk.center));
        }
        cases += 1;
    }
    outcome(
        worst_radius == 0.0 && worst < 1e-8,
        format!("{cases} degree-j Blaschke data, j ≤ 3: radius {worst_radius}, max deviation from center {worst:.1e} (rel tol 1e-8)"),
    )
}

// 9. n = 1 origin-fixing radius at z0 = 0.5, w0 = 0
fn dieudonne_first_order() -> Outcome {
    let z0 = c(0.5, 0.0);
    let data = DieudonneData::new(z0, ZERO, vec![]).unwrap();
    let radius = dieudonne_disk(&data).unwrap().radius;
    let h = |z: Complex64| z * (z - z0) / (1.0 - z0 * z);
    let by_contour = cauchy_derivatives(&h, z0, 0.25, 1, 128)[1].norm();
    let by_series = extremal_h_series(&data, &Tail::Constant(c(1.0, 0.0)), 3)
        .unwrap()
        .derivative_at_center(1)
        .unwrap()
        .norm();
    let (r, s) = (0.5f64, 0.0f64);
    let printed = (r * r - s * s) / (r * (1.0 - s * s));
    let implemented = r / (1.0 - r * r);
    let pass = (radius - 2.0 / 3.0).abs() < 1e-12
        && (implemented - radius).abs() < 1e-12
        && (by_contour - 2.0 / 3.0).abs() < 1e-12
        && (by_series - 2.0 / 3.0).abs() < 1e-12
        && by_contour > printed + 0.1;
    outcome(
        pass,
        format!(
            "radius {radius:.15}, |h'(z0)| by contour {by_contour:.15}, by series {by_series:.15}; (r²−s²)/(r(1−s²)) = {printed} is exceeded"
        ),
    )
}

// 10. Δⁿ → Hⁿ at first order
fn divided_difference_convergence() -> Outcome {
    let config = sampling();
    let hs: Vec<f64> = (0..7).map(|m| 0.1 / 2f64.powi(m)).collect();
    let trials = 300;
    let mut excursions = Vec::new();
    let mut typical = Vec::with_capacity(trials);
    for i in 0..trials {
        let mut rng = SplitMix64::new(config.seed + i as u64);
        let n = 1 + i % 3;
        let data = random_hyperbolic_data(&mut rng, &config, n);
        let spec = ExtremalSpec::new(data, random_schur_tail(&mut rng, &config));
        let errs = divided_difference_errors(&spec, n, &hs).unwrap();
        typical.push(errs[0]);
        if worst_ratio_deviation(&errs) > RATIO_WINDOW {
            let m = errs
                .windows(2)
                .position(|w| (w[0] / w[1] - 2.0).abs() > RATIO_WINDOW)
                .unwrap();
            excursions.push(format!(
                "#{i} n={n} ratio {:.2} at h={:.1e}→{:.1e} (E(0.1)={:.1e})",
                errs[m] / errs[m + 1],
                hs[m],
                hs[m + 1],
                errs[0]
            ));
        }
    }
    typical.sort_by(f64::total_cmp);
    let mut detail = format!(
        "{trials} configurations, n ≤ 3, h = 0.1 … 1.6e-3: {} leave the window [1.5, 2.5]",
        excursions.len()
    );
    if !excursions.is_empty() {
        detail.push_str(&format!(
            " (median E(0.1) = {:.1e}; excursions have a small first-order error constant, so either the O(h²) term dominates at large h or, for n = 3, rounding dominates at small h): {}",
            typical[trials / 2],
            excursions.join("; ")
        ));
    }
    outcome(excursions.is_empty(), detail)
}

// 11. byte-identical verify reports
fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_varregion"))
            .args(["verify", "--seed", "42"])
            .env_remove("VARREGION_SEED")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        same,
        format!(
            "two runs of `verify --seed 42`: {} bytes each, identical: {same}, exit codes {:?}/{:?}",
            a.stdout.len(),
            a.status.code(),
            b.status.code()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Schur roundtrip", schur_roundtrip),
        (
            "coefficients are F_n of the Schur parameters",
            lemma_coefficients,
        ),
        ("printed closed forms", printed_closed_forms),
        ("G_3 adjudication", g3_adjudication),
        ("center consistency", center_consistency),
        ("boundary attainment", boundary_attainment),
        ("containment", containment),
        ("degenerate branch", degenerate_branch),
        ("first-order origin-fixing radius", dieudonne_first_order),
        (
            "divided-difference convergence",
            divided_difference_convergence,
        ),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let result = run();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", k + 1, result.detail);
        if !result.pass {
            failed.push(k + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
