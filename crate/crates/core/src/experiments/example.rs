//! The exceptional family A + tB_t: explicit and optimized discs.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::matrices::BaseMatrices;
use super::Verdict;
use crate::calg::{elem_sym, Mat3, C64};
use crate::discs::{
    boundary_margin, optimize_disc, relation3_residual, DiscCertificate, DiscConstraints, PolyMap3,
    VERIFY_BOUNDARY_SAMPLES,
};
use crate::domains::{h_g3, spectral_radius};
use crate::error::{Error, Result};

/// Radii (all below 1) at which the explicit disc is checked against Ω₃.
pub const EXPLICIT_RADII: [f64; 6] = [0.25, 0.5, 0.75, 0.9, 0.99, 0.999];
pub const KAPPA_RADII: [f64; 3] = [0.25, 0.5, 0.9];
pub const KAPPA_ANGLES: usize = 64;
pub const DEFAULT_T_GRID: [f64; 4] = [0.1, 0.05, 0.02, 0.01];
const DFT_POINTS: usize = 16;
const DFT_SNAP: f64 = 1e-15;

/// ζ ↦ A + (ζ/2)·B_{ζ/2}, which passes through A + tB_t at ζ = 2t.
pub fn explicit_disc(z: C64) -> Mat3 {
    BaseMatrices::default().exceptional(z * 0.5)
}

/// Coefficients of σ∘f for a matrix polynomial f of degree ≤ 2, read off by
/// a discrete Fourier transform on the unit circle.
pub fn sigma_of_matrix_disc(f: impl Fn(C64) -> Mat3) -> Result<PolyMap3> {
    let n = DFT_POINTS;
    let values: Vec<[C64; 3]> =
        (0..n).map(|j| elem_sym(&f(C64::from_polar(1.0, TAU * j as f64 / n as f64))).as_array()).collect();
    let mut comps: [Vec<C64>; 3] = Default::default();
    for (i, comp) in comps.iter_mut().enumerate() {
        *comp = (0..n)
            .map(|k| {
                let s: C64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v[i] * C64::from_polar(1.0, -TAU * (j * k) as f64 / n as f64))
                    .sum();
                let c = s / n as f64;
                C64::new(snap(c.re), snap(c.im))
            })
            .collect();
        while comp.last().is_some_and(|c| c.norm() == 0.0) {
            comp.pop();
        }
    }
    PolyMap3::new(comps)
}

fn snap(x: f64) -> f64 {
    if x.abs() < DFT_SNAP {
        0.0
    } else {
        x
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaCheck {
    pub samples: usize,
    /// tr B, which must vanish exactly.
    pub trace_b: C64,
    /// max |tr(A + ζB)| as evaluated in floating point.
    pub max_trace: f64,
    /// max |h_G₃(σ(A + ζB)) − |ζ||.
    pub max_h_error: f64,
    pub pass: bool,
}

/// Checks that ζ ↦ A + ζB is a disc in the traceless slice with
/// h_G₃(σ(A + ζB)) = |ζ|.
pub fn kappa_check() -> KappaCheck {
    let pm = BaseMatrices::default();
    let b = pm.b0();
    let mut max_trace = 0.0f64;
    let mut max_h_error = 0.0f64;
    let mut samples = 0;
    for &r in &KAPPA_RADII {
        for k in 0..KAPPA_ANGLES {
            let z = C64::from_polar(r, TAU * (k as f64 + 0.5) / KAPPA_ANGLES as f64);
            let m = pm.a + b.scale(z);
            max_trace = max_trace.max(m.trace().norm());
            max_h_error = max_h_error.max((h_g3(&elem_sym(&m)) - r).abs());
            samples += 1;
        }
    }
    let trace_b = b.trace();
    let pass = trace_b == C64::new(0.0, 0.0) && max_trace < 1e-15 && max_h_error < 1e-12;
    KappaCheck { samples, trace_b, max_trace, max_h_error, pass }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub t: f64,
    /// |ζ|/t at the endpoint ζ = 2t of the explicit disc.
    pub explicit_ratio: f64,
    /// Explicit disc verified: endpoint, Ω₃ membership inside, sup h ≤ 1 on
    /// the boundary.
    pub explicit_valid: bool,
    pub explicit_boundary_sup: f64,
    /// Relation residual of σ∘(explicit disc) at α = 2t.
    pub relation3_residual: f64,
    /// |α|/t of the optimized disc through σ(D_t); `None` when no feasible
    /// disc was found.
    pub optimized_ratio: Option<f64>,
    pub certificate: Option<DiscCertificate>,
    pub certificate_admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleRun {
    pub rows: Vec<ExampleRow>,
    pub kappa: KappaCheck,
}

/// Optimizer and verification settings for an example run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleParams {
    pub degree: usize,
    pub seed: u64,
    /// Simplex iterations per restart.
    pub budget: usize,
    /// Angular samples per radius when validating the explicit disc.
    pub samples: usize,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams { degree: 3, seed: 42, budget: 2000, samples: VERIFY_BOUNDARY_SAMPLES }
    }
}

fn explicit_checks(t: f64, samples: usize) -> Result<(bool, f64, f64)> {
    let pm = BaseMatrices::default();
    let tc = C64::new(t, 0.0);
    let endpoint_ok = explicit_disc(tc * 2.0).max_abs_diff(&pm.exceptional(tc)) < 1e-15;
    let mut interior_ok = true;
    for &r in &EXPLICIT_RADII {
        for k in 0..samples {
            let z = C64::from_polar(r, TAU * k as f64 / samples as f64);
            let rho = spectral_radius(&explicit_disc(z));
            interior_ok &= rho < 1.0 && (rho - r).abs() < 1e-9;
        }
    }
    let phi = sigma_of_matrix_disc(explicit_disc)?;
    let sup = boundary_margin(&phi, samples);
    let residual = relation3_residual(&phi, tc * 2.0, tc)?;
    Ok((endpoint_ok && interior_ok && sup <= 1.0 + 1e-12, sup, residual))
}

fn example_row(t: f64, params: &ExampleParams, seed: u64) -> Result<ExampleRow> {
    let (explicit_valid, explicit_boundary_sup, relation3_residual) = explicit_checks(t, params.samples)?;
    let tc = C64::new(t, 0.0);
    let target = elem_sym(&BaseMatrices::default().d(tc));
    let constraints = DiscConstraints { phi3_flat: true, relation3: Some(tc) };
    let (optimized_ratio, certificate) = match optimize_disc(&target, params.degree, constraints, seed, params.budget) {
        Ok(o) => (Some(o.certificate.alpha.norm() / t), Some(o.certificate)),
        Err(Error::NoFeasiblePoint) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(ExampleRow {
        t,
        explicit_ratio: (tc * 2.0).norm() / t,
        explicit_valid,
        explicit_boundary_sup,
        relation3_residual,
        optimized_ratio,
        certificate_admissible: certificate.as_ref().is_some_and(|c| c.admissible),
        certificate,
    })
}

/// Rows in grid order; row `i` uses seed `params.seed + i`.
pub fn example_run(t_grid: &[f64], params: &ExampleParams) -> Result<ExampleRun> {
    if let Some(&t) = t_grid.iter().find(|&&t| !(t > 0.0 && t <= 0.2)) {
        return Err(Error::InvalidArgument(format!("t = {t} is outside (0, 0.2]")));
    }
    if params.samples < 64 {
        return Err(Error::InvalidArgument(format!("samples = {} is below 64", params.samples)));
    }
    let rows = t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| example_row(t, params, params.seed.wrapping_add(i as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExampleRun { rows, kappa: kappa_check() })
}

pub fn example_verdicts(run: &ExampleRun) -> Vec<Verdict> {
    let rows = &run.rows;
    let explicit_ok = rows.iter().all(|r| r.explicit_valid && (r.explicit_ratio - 2.0).abs() <= 1e-12);
    let worst_rel = rows.iter().map(|r| r.relation3_residual).fold(0.0, f64::max);
    let mut out = vec![
        Verdict::new(
            "explicit disc through A + tB_t has ratio 2",
            !rows.is_empty() && explicit_ok,
            format!("{} rows", rows.len()),
        ),
        Verdict::new(
            "explicit family satisfies the theta relation",
            !rows.is_empty() && worst_rel <= 1e-12,
            format!("max residual {worst_rel:.3e}"),
        ),
    ];
    let infeasible: Vec<f64> = rows.iter().filter(|r| !r.certificate_admissible).map(|r| r.t).collect();
    let ratios: Vec<String> = rows
        .iter()
        .map(|r| match r.optimized_ratio {
            Some(x) => format!("{}:{x:.4}", r.t),
            None => format!("{}:-", r.t),
        })
        .collect();
    out.push(Verdict::new(
        "optimized discs certified admissible",
        !rows.is_empty() && infeasible.is_empty(),
        if infeasible.is_empty() { ratios.join(" ") } else { format!("no certificate at t = {infeasible:?}") },
    ));
    if let Some(r) = rows.iter().find(|r| (r.t - 0.01).abs() < 1e-15) {
        let x = r.optimized_ratio.unwrap_or(f64::NAN);
        out.push(Verdict::new(
            "optimized ratio at t = 0.01 lies in [0.97, 1.10]",
            (0.97..=1.10).contains(&x),
            format!("ratio {x:.6}"),
        ));
    }
    out.push(Verdict::new(
        "A + zB stays traceless with h = |z|",
        run.kappa.pass,
        format!("max trace {:.1e}, max h error {:.3e}", run.kappa.max_trace, run.kappa.max_h_error),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calg::re;

    #[test]
    fn explicit_sigma_disc_coefficients() {
        let phi = sigma_of_matrix_disc(explicit_disc).unwrap();
        assert!(phi.component(0).is_empty());
        assert_eq!(phi.component(1), &[re(0.0), re(0.0), re(-0.75)]);
        assert_eq!(phi.component(2), &[re(0.0), re(0.0), re(0.0), re(-0.25)]);
    }

    #[test]
    fn explicit_checks_pass() {
        let (ok, sup, res) = explicit_checks(0.1, VERIFY_BOUNDARY_SAMPLES).unwrap();
        assert!(ok);
        assert!((sup - 1.0).abs() < 1e-12);
        assert!(res <= 1e-15);
    }

    #[test]
    fn kappa_disc() {
        let k = kappa_check();
        assert_eq!(k.samples, 192);
        assert!(k.pass, "{k:?}");
    }

    #[test]
    fn rejects_large_t() {
        let p = ExampleParams { budget: 10, ..Default::default() };
        assert!(matches!(example_run(&[0.6], &p), Err(Error::InvalidArgument(_))));
        assert!(matches!(example_run(&[0.0], &p), Err(Error::InvalidArgument(_))));
    }
}
