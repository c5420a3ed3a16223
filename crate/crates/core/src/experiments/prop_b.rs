//! Perturbations A + t_j·C_j of the base point along directions near B.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrices::BaseMatrices;
use super::Verdict;
use crate::calg::krylov::fit_annihilating;
use crate::calg::{cyclicity, elem_sym, Mat3, C64, DEFAULT_CYCLIC_TOL};
use crate::discs::lempert_upper;
use crate::domains::in_omega3;
use crate::error::{Error, Result};

const STEP1_FIT_TOL: f64 = 1e-8;

/// σ(A + tC) = (t·f₁, t·f₂, t²·f₃).
pub fn sigma_expansion(c: &Mat3, t: C64) -> Result<(C64, C64, C64)> {
    if t.norm() == 0.0 {
        return Err(Error::ZeroT);
    }
    let s = elem_sym(&BaseMatrices::default().perturbed(t, c));
    Ok((s.e1 / t, s.e2 / t, s.e3 / (t * t)))
}

/// Closed form of the expansion coefficients:
/// f₁ = tr C, f₂ = −c₃₂ + t·Σ minors(C), f₃ = −(c₁₁c₃₂ − c₁₂c₃₁) + t·det C.
pub fn sigma_expansion_closed_form(c: &Mat3, t: C64) -> (C64, C64, C64) {
    let f1 = c.trace();
    let f2 = -c[(2, 1)] + t * c.principal_minor_sum();
    let f3 = -(c[(0, 0)] * c[(2, 1)] - c[(0, 1)] * c[(2, 0)]) + t * c.det();
    (f1, f2, f3)
}

/// Normalized coefficients (x/t, y/t²) of the monic degree-2 annihilating
/// polynomial λ² + xλ + y of A + t·B_t.
pub fn step1_asymptotics(t: C64) -> Result<(C64, C64)> {
    if t.norm() == 0.0 {
        return Err(Error::ZeroT);
    }
    if t.norm() >= 0.5 {
        return Err(Error::InvalidArgument(format!("|t| = {} must be below 1/2", t.norm())));
    }
    let m = BaseMatrices::default().exceptional(t);
    let (coeffs, residual) = fit_annihilating(&m, 2).ok_or(Error::NotDegreeTwo(f64::INFINITY))?;
    if residual >= STEP1_FIT_TOL {
        return Err(Error::NotDegreeTwo(residual));
    }
    Ok((coeffs[1] / t, coeffs[0] / (t * t)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step1Row {
    pub t: C64,
    pub x_over_t: C64,
    pub y_over_t2: C64,
}

pub fn step1_run(ts: &[C64]) -> Result<Vec<Step1Row>> {
    ts.iter().map(|&t| step1_asymptotics(t).map(|(x, y)| Step1Row { t, x_over_t: x, y_over_t2: y })).collect()
}

pub fn step1_verdicts(rows: &[Step1Row]) -> Vec<Verdict> {
    let worst = rows
        .iter()
        .map(|r| (r.x_over_t - C64::new(1.0, 0.0)).norm().max((r.y_over_t2 + C64::new(2.0, 0.0)).norm()))
        .fold(0.0, f64::max);
    vec![Verdict::new(
        "minimal polynomial asymptotics (x/t, y/t^2) = (1, -2)",
        !rows.is_empty() && worst <= 1e-10,
        format!("max deviation {worst:.3e} over {} rows", rows.len()),
    )]
}

/// Direction sequence j ↦ C_j.
#[derive(Clone)]
pub enum Perturbation {
    /// C_j = B for all j.
    ConstantB,
    /// C_j = B + √t_j·E₃₂, so c₃₂/t_j → ∞.
    SqrtE32,
    /// A fixed direction.
    Constant(Mat3),
    /// Any j ↦ C_j.
    Custom(Arc<dyn Fn(u32) -> Mat3 + Send + Sync>),
}

impl fmt::Debug for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Perturbation::ConstantB => write!(f, "ConstantB"),
            Perturbation::SqrtE32 => write!(f, "SqrtE32"),
            Perturbation::Constant(m) => write!(f, "Constant({m:?})"),
            Perturbation::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl Perturbation {
    pub fn direction(&self, j: u32) -> Mat3 {
        let pm = BaseMatrices::default();
        match self {
            Perturbation::ConstantB => pm.b0(),
            Perturbation::SqrtE32 => pm.b0() + Mat3::unit(3, 2).scale(C64::new(t_of(j).re.sqrt(), 0.0)),
            Perturbation::Constant(m) => *m,
            Perturbation::Custom(f) => f(j),
        }
    }

    pub fn is_builtin(&self) -> bool {
        matches!(self, Perturbation::ConstantB | Perturbation::SqrtE32)
    }
}

/// t_j = 2^{−j}.
pub fn t_of(j: u32) -> C64 {
    C64::new(2f64.powi(-(j as i32)), 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowStatus {
    Ok,
    OutsideDomain,
    NotCyclic,
    NotAdmissible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropBRow {
    pub j: u32,
    pub t: C64,
    /// |c₃₂/t − 3|.
    pub c32_over_t_gap: f64,
    pub cyclic: bool,
    pub f1: C64,
    pub f2: C64,
    pub f3: C64,
    /// Upper bound for l(A, A + tC)/|t|; `None` when the row is flagged.
    pub ratio: Option<f64>,
    pub status: RowStatus,
}

fn prop_b_row(j: u32, c: &Mat3) -> PropBRow {
    let t = t_of(j);
    let pm = BaseMatrices::default();
    let m = pm.perturbed(t, c);
    let gap = (c[(2, 1)] / t - C64::new(3.0, 0.0)).norm();
    let cyclic = cyclicity(&m, DEFAULT_CYCLIC_TOL).cyclic;
    let (f1, f2, f3) = sigma_expansion(c, t).expect("t_j is nonzero");
    let (ratio, status) = if !in_omega3(&m) {
        (None, RowStatus::OutsideDomain)
    } else if !cyclic {
        (None, RowStatus::NotCyclic)
    } else {
        match lempert_upper(&m) {
            Ok(ub) => (Some(ub.value / t.norm()), RowStatus::Ok),
            Err(Error::NotCyclic { .. }) => (None, RowStatus::NotCyclic),
            Err(_) => (None, RowStatus::NotAdmissible),
        }
    };
    PropBRow { j, t, c32_over_t_gap: gap, cyclic, f1, f2, f3, ratio, status }
}

/// One row per j in `js` (inclusive range), in order.
pub fn prop_b_run(js: std::ops::RangeInclusive<u32>, perturbation: &Perturbation) -> Vec<PropBRow> {
    let js: Vec<u32> = js.collect();
    js.par_iter().map(|&j| prop_b_row(j, &perturbation.direction(j))).collect()
}

pub fn prop_b_verdicts(rows: &[PropBRow], perturbation: &Perturbation) -> Vec<Verdict> {
    let flagged: Vec<u32> = rows.iter().filter(|r| r.status != RowStatus::Ok).map(|r| r.j).collect();
    let mut out = vec![Verdict::new(
        "all rows cyclic, inside the spectral ball, admissible",
        !rows.is_empty() && flagged.is_empty(),
        if flagged.is_empty() { format!("{} rows", rows.len()) } else { format!("flagged j = {flagged:?}") },
    )];

    let trend: Vec<(u32, f64)> = rows.iter().filter_map(|r| r.ratio.map(|x| (r.j, x))).collect();
    let decreasing = trend.windows(2).all(|w| w[1].1 <= w[0].1);
    let last = trend.last().map(|p| p.1);
    out.push(Verdict::new(
        "ratio upper bounds l/|t| decrease toward 0",
        trend.len() >= 2 && decreasing,
        match last {
            Some(v) => format!("final ratio {v:.6e} at j = {}", trend.last().map(|p| p.0).unwrap_or(0)),
            None => "no admissible rows".into(),
        },
    ));

    let gap_min = rows.iter().map(|r| r.c32_over_t_gap).fold(f64::INFINITY, f64::min);
    out.push(Verdict::new("gap |c32/t - 3| bounded away from 0", gap_min > 0.5, format!("min gap {gap_min:.4}")));

    if matches!(perturbation, Perturbation::ConstantB) {
        let worst =
            rows.iter().filter_map(|r| r.ratio.map(|x| (x - (3.0 * r.t.norm()).sqrt()).abs())).fold(0.0, f64::max);
        out.push(Verdict::new(
            "ratio equals sqrt(3 t_j)",
            !trend.is_empty() && worst <= 1e-9,
            format!("max deviation {worst:.3e}"),
        ));
        if let Some(r) = rows.iter().find(|r| r.j == 14) {
            let x = r.ratio.unwrap_or(f64::NAN);
            out.push(Verdict::new("ratio at j = 14 below 0.014", x < 0.014, format!("ratio {x:.7}")));
        }
    }
    out
}
