//! Lifting discs from G₃ to Ω₃ through the base point A.
//!
//! The companion-type map
//!
//! ```text
//!          ⎛ 0          ζ      0  ⎞
//! ψ̃(ζ) =  ⎜ 0          0      1  ⎟
//!          ⎝ φ₃(ζ)/ζ   −φ₂(ζ)  φ₁(ζ) ⎠
//! ```
//!
//! satisfies ψ̃(0) = A and σ∘ψ̃ = φ. It is conjugated by exp(ζS/α) so that
//! the lift also hits a prescribed cyclic matrix at ζ = α.

use serde::{Deserialize, Serialize};

use super::polymap::PolyMap3;
use crate::calg::krylov::{check_similar, probe_smin, similarity_with_probe, PROBES};
use crate::calg::{elem_sym, mat_exp, mat_log, Mat3, C64, DEFAULT_CYCLIC_TOL};
use crate::error::{Error, Result};

const FLAT_TOL: f64 = 1e-14;
const ENDPOINT_TOL: f64 = 1e-8;
pub const SIGMA_CHECK_SAMPLES: usize = 32;

/// The matrix-valued map ψ̃ attached to a flat disc.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeLift {
    phi: PolyMap3,
}

pub fn tilde_lift(phi: &PolyMap3) -> Result<TildeLift> {
    let flat = phi.phi3_flatness();
    if flat > FLAT_TOL {
        return Err(Error::Phi3NotFlat(flat));
    }
    let off = phi.origin_offset();
    if off > FLAT_TOL {
        return Err(Error::NotThroughOrigin(off));
    }
    Ok(TildeLift { phi: phi.clone() })
}

impl TildeLift {
    pub fn phi(&self) -> &PolyMap3 {
        &self.phi
    }

    pub fn eval(&self, z: C64) -> Mat3 {
        let v = self.phi.eval(z);
        let o = C64::new(0.0, 0.0);
        Mat3::from_rows([[o, z, o], [o, o, C64::new(1.0, 0.0)], [self.phi.phi3_over_zeta(z), -v.e2, v.e1]])
    }
}

/// ψ(ζ) = exp(−ζS/α)·ψ̃(ζ)·exp(ζS/α).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedDisc {
    pub base: PolyMap3,
    pub alpha: C64,
    pub conjugator_log: Mat3,
    pub target: Mat3,
}

impl LiftedDisc {
    pub fn eval(&self, z: C64) -> Mat3 {
        let tilde = TildeLift { phi: self.base.clone() }.eval(z);
        let s = self.conjugator_log.scale(z / self.alpha);
        mat_exp(&-s) * tilde * mat_exp(&s)
    }

    /// max |ψ(α) − M| over entries.
    pub fn endpoint_residual(&self) -> f64 {
        self.eval(self.alpha).max_abs_diff(&self.target)
    }

    /// Max of |σ(ψ(ζ)) − φ(ζ)| over `samples` points of the circle |ζ| = |α|.
    ///
    /// The conjugator grows like exp(|ζ/α|·‖S‖), so the check stays on the
    /// circle through the endpoint.
    pub fn sigma_residual(&self, samples: usize) -> f64 {
        let r = self.alpha.norm();
        (0..samples)
            .map(|k| {
                let z = C64::from_polar(r, std::f64::consts::TAU * k as f64 / samples as f64);
                elem_sym(&self.eval(z)).max_diff(&self.base.eval(z))
            })
            .fold(0.0, f64::max)
    }
}

/// Rotate and scale P (which leaves P⁻¹NP unchanged) so that its spectrum
/// has unit geometric mean and sits as far from the negative real axis as
/// possible.
fn normalize_conjugator(p: &Mat3) -> Mat3 {
    let det = p.det();
    let scaled = p.scale(det.powf(-1.0 / 3.0));
    let eig = crate::calg::cubic_roots(&elem_sym(&scaled)).roots;
    let mut args: Vec<f64> = eig.iter().map(|z| z.arg()).collect();
    args.sort_by(f64::total_cmp);
    // widest circular gap between eigenvalue arguments
    let mut best = (args[0] + std::f64::consts::TAU - args[2], args[2]);
    for w in args.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    let gap_mid = best.1 + best.0 / 2.0;
    scaled.scale(C64::from_polar(1.0, std::f64::consts::PI - gap_mid))
}

pub fn full_lift(phi: &PolyMap3, alpha: C64, m: &Mat3) -> Result<LiftedDisc> {
    let tilde = tilde_lift(phi)?;
    if alpha.norm() == 0.0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    let gap = elem_sym(m).max_diff(&phi.eval(alpha));
    if gap >= ENDPOINT_TOL {
        return Err(Error::EndpointMismatch(gap));
    }
    let n = tilde.eval(alpha);
    match check_similar(m, &n, DEFAULT_CYCLIC_TOL) {
        Err(Error::SpectraMismatch { gap }) => return Err(Error::EndpointMismatch(gap)),
        other => other?,
    }

    // every admissible probe yields a valid conjugator; keep the most accurate
    let mut best: Option<(f64, LiftedDisc)> = None;
    let mut last_err = Error::NotCyclic { smin: 0.0, tol: DEFAULT_CYCLIC_TOL };
    for v in PROBES.iter() {
        if probe_smin(m, v) <= DEFAULT_CYCLIC_TOL || probe_smin(&n, v) <= DEFAULT_CYCLIC_TOL {
            continue;
        }
        let p = match similarity_with_probe(m, &n, v) {
            Ok(p) => normalize_conjugator(&p),
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let s = match mat_log(&p) {
            Ok(s) => s,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let lifted = LiftedDisc { base: tilde.phi.clone(), alpha, conjugator_log: s, target: *m };
        let res = lifted.endpoint_residual();
        if res.is_finite() && best.as_ref().is_none_or(|(b, _)| res < *b) {
            best = Some((res, lifted));
        }
    }
    match best {
        Some((res, lifted)) if res < ENDPOINT_TOL => Ok(lifted),
        Some((res, _)) => Err(Error::EndpointMismatch(res)),
        None => Err(last_err),
    }
}
