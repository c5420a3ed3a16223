//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints its PASS/FAIL line.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_lempert::calg::scalar::fmt_complex;
use spectral_lempert::calg::{
    cubic_roots, cyclicity, elem_sym, mat_exp, mat_log, omega, Mat3, C64, DEFAULT_CYCLIC_TOL,
};
use spectral_lempert::discs::{full_lift, relation3_residual, weighted_disc, SIGMA_CHECK_SAMPLES};
use spectral_lempert::domains::{h_g3, weighted_scale};
use spectral_lempert::experiments::{
    base_matrices, example_run, explicit_disc, kappa_check, limit_certificate, prop_b_run, sigma_of_matrix_disc,
    step1_asymptotics, ExampleParams, Perturbation,
};
use spectral_lempert::Cubic;

fn verdict(n: u32, name: &str, pass: bool, detail: String) {
    println!("criterion {n} [{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn criterion_1_ratio_trend() {
    let start = Instant::now();
    let rows = prop_b_run(4..=14, &Perturbation::ConstantB);
    let elapsed = start.elapsed();
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio.unwrap_or(f64::NAN)).collect();
    let worst =
        rows.iter().zip(&ratios).map(|(r, x)| (x - (3.0 * 2f64.powi(-(r.j as i32))).sqrt()).abs()).fold(0.0, f64::max);
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let last = *ratios.last().unwrap();
    verdict(
        1,
        "ratio sqrt(3*2^-j), j = 4..14",
        rows.len() == 11 && worst <= 1e-9 && decreasing && last < 0.014 && elapsed < Duration::from_secs(1),
        format!("max deviation {worst:.2e}, final {last:.7}, {elapsed:?}"),
    );
}

fn criterion_2_step1() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut derogatory = true;
    for t in [0.3, 0.2, 0.1, 0.05, 0.01] {
        let (x, y) = step1_asymptotics(c(t)).unwrap();
        worst = worst.max((x - c(1.0)).norm()).max((y + c(2.0)).norm());
        let rep = cyclicity(&base_matrices().exceptional(c(t)), DEFAULT_CYCLIC_TOL);
        derogatory &= !rep.cyclic && rep.min_poly_degree == 2;
        worst =
            worst.max((rep.min_poly_coeffs[0] - c(-2.0 * t * t)).norm()).max((rep.min_poly_coeffs[1] - c(t)).norm());
    }
    let elapsed = start.elapsed();
    verdict(
        2,
        "minimal polynomial l^2 + t l - 2t^2",
        worst <= 1e-10 && derogatory && elapsed < Duration::from_secs(1),
        format!("max deviation {worst:.2e}, non-cyclic {derogatory}, {elapsed:?}"),
    );
}

fn criterion_3_lift_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pm = base_matrices();
    let (mut ok, mut worst_end, mut worst_sigma) = (0, 0.0f64, 0.0f64);
    let mut drawn = 0;
    while drawn < 100 {
        let t = rng.gen_range(0.01..0.1);
        let mut cm = pm.b0();
        for k in 0..3 {
            for l in 0..3 {
                cm[(k, l)] += C64::new(rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05));
            }
        }
        if (cm[(2, 1)] / t - c(3.0)).norm() <= 0.5 {
            continue;
        }
        drawn += 1;
        let m = pm.perturbed(c(t), &cm);
        let (phi, r) = weighted_disc(&elem_sym(&m));
        if let Ok(lifted) = full_lift(&phi, c(r), &m) {
            let e = lifted.endpoint_residual();
            let s = lifted.sigma_residual(SIGMA_CHECK_SAMPLES);
            worst_end = worst_end.max(e);
            worst_sigma = worst_sigma.max(s);
            if e < 1e-8 && s < 1e-8 {
                ok += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        3,
        "lift round trip on 100 cyclic targets",
        ok == 100 && elapsed < Duration::from_secs(10),
        format!("{ok}/100, endpoint {worst_end:.2e}, sigma {worst_sigma:.2e}, {elapsed:?}"),
    );
}

fn criterion_4_theta_relation() {
    let phi = sigma_of_matrix_disc(explicit_disc).unwrap();
    let worst = [0.1, 0.05, 0.02, 0.01]
        .iter()
        .map(|&t| relation3_residual(&phi, c(2.0 * t), c(t)).unwrap())
        .fold(0.0, f64::max);
    verdict(
        4,
        "explicit family satisfies the relation at alpha = 2t",
        worst <= 1e-12,
        format!("max residual {worst:.2e}"),
    );
}

fn criterion_5_example_band() {
    let start = Instant::now();
    let run = example_run(&[0.01], &ExampleParams::default()).unwrap();
    let row = &run.rows[0];
    let ratio = row.optimized_ratio.unwrap_or(f64::NAN);
    verdict(
        5,
        "optimized ratio at t = 0.01 in [0.97, 1.10], explicit ratio 2",
        (0.97..=1.10).contains(&ratio)
            && row.certificate_admissible
            && row.explicit_ratio == 2.0
            && row.explicit_valid
            && row.explicit_boundary_sup <= 1.0 + 1e-12,
        format!(
            "optimized {ratio:.6}, explicit {}, boundary sup {:.15}, {:?}",
            row.explicit_ratio,
            row.explicit_boundary_sup,
            start.elapsed()
        ),
    );
}

fn criterion_6_limit_certificate() {
    let w = omega();
    let good = limit_certificate(c(1.0), c(0.0));
    let expected = [c(1.0), w, w * w];
    let all_found = expected.iter().all(|z| good.roots.roots.iter().any(|r| (r - z).norm() < 1e-10));
    let bad = limit_certificate(c(1.0), c(-3.0));
    let has_minus_two = bad.roots.roots.iter().any(|r| (r - c(-2.0)).norm() < 1e-10);
    verdict(
        6,
        "limit polynomial certificates",
        good.admissible && all_found && !bad.admissible && has_minus_two,
        format!(
            "(1, 0) roots {}; (1, -3) max modulus {}",
            good.roots.roots.map(fmt_complex).join(" "),
            bad.max_modulus
        ),
    );
}

fn criterion_7_kappa_disc() {
    let k = kappa_check();
    verdict(
        7,
        "A + zB traceless with h = |z|",
        k.pass && k.samples == 192 && k.trace_b == c(0.0),
        format!("{} samples, max trace {:.1e}, max h error {:.2e}", k.samples, k.max_trace, k.max_h_error),
    );
}

fn durand_kerner(p: &Cubic) -> [C64; 3] {
    let f = |z: C64| ((z - p.e1) * z + p.e2) * z - p.e3;
    let s = 1.0 + p.e1.norm().max(p.e2.norm().sqrt()).max(p.e3.norm().cbrt());
    let g = C64::new(0.4, 0.9);
    let mut z = [g * s, g * g * s, g * g * g * s];
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..3 {
            let den: C64 = (0..3).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let step = f(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-17 * s {
            break;
        }
    }
    z
}

fn matched(a: &[C64; 3], b: &[C64; 3]) -> f64 {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .iter()
        .map(|p| (0..3).map(|i| (a[i] - b[p[i]]).norm()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

fn criterion_8_kernel_properties() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut rc = |s: f64| C64::new(rng.gen_range(-s..s), rng.gen_range(-s..s));

    let mut roots_worst = 0.0f64;
    for _ in 0..10_000 {
        let p = Cubic::new(rc(1.0), rc(1.0), rc(1.0));
        roots_worst = roots_worst.max(matched(&cubic_roots(&p).roots, &durand_kerner(&p)));
    }

    let mut homog_worst = 0.0f64;
    for _ in 0..1000 {
        let z = Cubic::new(rc(1.0), rc(1.0), rc(1.0));
        let t = rc(2.0);
        let rhs = t.norm() * h_g3(&z);
        homog_worst = homog_worst.max((h_g3(&weighted_scale(&z, t)) - rhs).abs() / (1.0 + rhs));
    }

    let mut log_worst = 0.0f64;
    for _ in 0..100 {
        let v = loop {
            let v: Vec<C64> = (0..9).map(|_| rc(0.6)).collect();
            let v = Mat3::identity() + Mat3::from_slice(&v).unwrap();
            if v.det().norm() > 0.2 {
                break v;
            }
        };
        let lam = [rc(1.0), rc(1.0), rc(1.0)];
        let x = v * Mat3::diag(lam) * v.inverse().unwrap();
        log_worst = log_worst.max(mat_log(&mat_exp(&x)).unwrap().max_abs_diff(&x));
    }
    let elapsed = start.elapsed();
    verdict(
        8,
        "cubic roots, homogeneity, exp/log",
        roots_worst < 1e-9 && homog_worst <= 1e-10 && log_worst < 1e-8,
        format!("roots {roots_worst:.2e}, homogeneity {homog_worst:.2e}, exp/log {log_worst:.2e}, {elapsed:?}"),
    );
}

fn criterion_9_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_spectral-lempert");
    let mut same = true;
    let mut detail = Vec::new();
    for (which, extra) in [("prop-b", vec!["--j", "4..14"]), ("example", vec!["--t", "0.01"])] {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let out = dir.path().join(format!("{which}-{k}.csv"));
            let status = Command::new(exe)
                .arg("reproduce")
                .arg(which)
                .args(&extra)
                .arg("--out")
                .arg(&out)
                .output()
                .unwrap()
                .status;
            assert!(status.code().is_some());
            outputs.push(std::fs::read(&out).unwrap());
        }
        same &= outputs[0] == outputs[1];
        detail.push(format!("{which}: {} bytes", outputs[0].len()));
    }
    verdict(9, "byte-identical CSVs across runs", same, detail.join(", "));
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("criterion_1_ratio_trend", criterion_1_ratio_trend),
        ("criterion_2_step1", criterion_2_step1),
        ("criterion_3_lift_round_trip", criterion_3_lift_round_trip),
        ("criterion_4_theta_relation", criterion_4_theta_relation),
        ("criterion_5_example_band", criterion_5_example_band),
        ("criterion_6_limit_certificate", criterion_6_limit_certificate),
        ("criterion_7_kappa_disc", criterion_7_kappa_disc),
        ("criterion_8_kernel_properties", criterion_8_kernel_properties),
        ("criterion_9_determinism", criterion_9_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        if std::panic::catch_unwind(f).is_err() {
            failed.push(name);
        }
    }
    println!("acceptance: {} failed, total {:?}", failed.len(), start.elapsed());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
