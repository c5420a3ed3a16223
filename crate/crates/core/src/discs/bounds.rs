//! Explicit discs, admissibility certificates and Lempert upper bounds.

use serde::{Deserialize, Serialize};

use super::polymap::PolyMap3;
use crate::calg::{cyclicity, elem_sym, Mat3, C64, DEFAULT_CYCLIC_TOL};
use crate::domains::{h_g3, SpecPoint};
use crate::error::{Error, Result};

pub const DEFAULT_BOUNDARY_SAMPLES: usize = 256;
pub const VERIFY_BOUNDARY_SAMPLES: usize = 1024;
const MIN_BOUNDARY_SAMPLES: usize = 64;
const ENDPOINT_ADMISSIBLE: f64 = 1e-8;
const FLAT_ADMISSIBLE: f64 = 1e-10;
const THETA_TOL: f64 = 1e-14;

/// Evidence that a disc φ with φ(0) = 0 reaches a target at ζ = α while
/// staying inside G₃.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscCertificate {
    pub alpha: C64,
    pub endpoint_residual: f64,
    pub phi3_deriv0_residual: f64,
    pub relation3_residual: Option<f64>,
    pub boundary_sup: f64,
    pub admissible: bool,
}

impl DiscCertificate {
    /// Checks `phi` against `target` at `alpha`, sampling the unit circle at
    /// `samples` points.
    pub fn check(phi: &PolyMap3, alpha: C64, target: &SpecPoint, relation_t: Option<C64>, samples: usize) -> Self {
        let endpoint_residual = phi.eval(alpha).max_diff(target);
        let phi3_deriv0_residual = phi.deriv(2, C64::new(0.0, 0.0)).norm();
        let relation3_residual = relation_t.and_then(|t| relation3_residual(phi, alpha, t).ok());
        let boundary_sup = boundary_margin(phi, samples);
        let admissible =
            endpoint_residual < ENDPOINT_ADMISSIBLE && phi3_deriv0_residual < FLAT_ADMISSIBLE && boundary_sup < 1.0;
        DiscCertificate { alpha, endpoint_residual, phi3_deriv0_residual, relation3_residual, boundary_sup, admissible }
    }
}

/// φ(ζ) = (ζa/r, ζb/r, ζ²c/r²) with r = max{3|a|, 3|b|, √(3|c|)}, so that
/// φ(r) = (a, b, c). The zero target gives the constant disc and r = 0.
pub fn weighted_disc(target: &SpecPoint) -> (PolyMap3, f64) {
    let r = (3.0 * target.e1.norm()).max(3.0 * target.e2.norm()).max((3.0 * target.e3.norm()).sqrt());
    if r == 0.0 {
        return (PolyMap3::zero(), 0.0);
    }
    let o = C64::new(0.0, 0.0);
    let phi = PolyMap3::new([vec![o, target.e1 / r], vec![o, target.e2 / r], vec![o, o, target.e3 / (r * r)]])
        .expect("finite target gives finite coefficients");
    (phi, r)
}

/// max of h_G₃(φ(ζ)) over `samples` equally spaced points of the unit circle.
///
/// For polynomial φ the maximum principle makes this the sup over the closed
/// disc, up to grid resolution. Fewer than 64 samples are raised to 64.
pub fn boundary_margin(phi: &PolyMap3, samples: usize) -> f64 {
    let n = samples.max(MIN_BOUNDARY_SAMPLES);
    if phi.degree() == 0 {
        return h_g3(&phi.eval(C64::new(0.0, 0.0)));
    }
    (0..n)
        .map(|k| h_g3(&phi.eval(C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))))
        .fold(0.0, f64::max)
}

/// φ(ρ·): coefficient k scaled by ρᵏ.
pub fn rescale_disc(phi: &PolyMap3, rho: f64) -> Result<PolyMap3> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::InvalidArgument(format!("rho must lie in (0, 1], got {rho}")));
    }
    Ok(phi.rescaled(rho))
}

/// |t³ − α²(α·θ₃′(α) − t·θ₂′(α) + t²·θ₁′(α))| where
/// φ = (ζθ₁, ζθ₂, ζ²θ₃).
pub fn relation3_residual(phi: &PolyMap3, alpha: C64, t: C64) -> Result<f64> {
    if alpha.norm() == 0.0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    for (i, k) in [(0, 0), (1, 0), (2, 0), (2, 1)] {
        let c = phi.coeff(i, k);
        if c.norm() > THETA_TOL {
            return Err(Error::ThetaFormViolated(format!("coefficient {k} of component {} is {c}", i + 1)));
        }
    }
    let inner = alpha * phi.theta_deriv(2, alpha) - t * phi.theta_deriv(1, alpha) + t * t * phi.theta_deriv(0, alpha);
    Ok((t * t * t - alpha * alpha * inner).norm())
}

/// Upper bound for l_Ω₃(A, M) with its disc and certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: f64,
    pub disc: PolyMap3,
    pub certificate: DiscCertificate,
}

/// The radius of the explicit disc through σ(M), certified at 1024
/// boundary samples.
pub fn lempert_upper(m: &Mat3) -> Result<UpperBound> {
    let report = cyclicity(m, DEFAULT_CYCLIC_TOL);
    if !report.cyclic {
        return Err(Error::NotCyclic { smin: report.krylov_smin, tol: DEFAULT_CYCLIC_TOL });
    }
    let target = elem_sym(m);
    let (disc, r) = weighted_disc(&target);
    let certificate = DiscCertificate::check(&disc, C64::new(r, 0.0), &target, None, VERIFY_BOUNDARY_SAMPLES);
    if r >= 1.0 {
        return Err(Error::NotAdmissible(format!("disc radius {r} is not inside the unit disc")));
    }
    if !certificate.admissible {
        return Err(Error::NotAdmissible(format!("boundary sup {}", certificate.boundary_sup)));
    }
    Ok(UpperBound { value: r, disc, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calg::{omega, re, Cubic};

    fn abt(s: f64) -> Mat3 {
        let w = omega();
        Mat3::unit(2, 3) + Mat3::diag([re(1.0), w, w * w]).scale(re(s))
    }

    #[test]
    fn weighted_disc_examples() {
        let (phi, r) = weighted_disc(&Cubic::new(re(0.0), re(0.0), re(0.001)));
        assert!((r - 0.0547722557505166).abs() < 1e-15);
        assert!((phi.coeff(2, 2) - re(1.0 / 3.0)).norm() < 1e-15);
        assert!(phi.eval(re(r)).max_diff(&Cubic::new(re(0.0), re(0.0), re(0.001))) < 1e-18);

        let (phi, r) = weighted_disc(&Cubic::new(re(0.001), re(0.0), re(0.0)));
        assert!((r - 0.003).abs() < 1e-18);
        assert!((phi.coeff(0, 1) - re(1.0 / 3.0)).norm() < 1e-15);

        let (phi, r) = weighted_disc(&Cubic::zero());
        assert_eq!(r, 0.0);
        assert_eq!(phi, PolyMap3::zero());
    }

    #[test]
    fn boundary_margin_examples() {
        let third = PolyMap3::new([vec![], vec![], vec![re(0.0), re(0.0), re(1.0 / 3.0)]]).unwrap();
        assert!((boundary_margin(&third, 256) - (1.0f64 / 3.0).cbrt()).abs() < 1e-12);
        assert_eq!(boundary_margin(&PolyMap3::zero(), 256), 0.0);
        let two = PolyMap3::new([vec![], vec![], vec![re(0.0), re(0.0), re(2.0)]]).unwrap();
        assert!((boundary_margin(&two, 256) - 2f64.cbrt()).abs() < 1e-12);
        let shrunk = rescale_disc(&two, 0.6).unwrap();
        assert!((shrunk.coeff(2, 2) - re(0.72)).norm() < 1e-15);
        assert!((boundary_margin(&shrunk, 256) - 0.72f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn rescale_rejects_bad_rho() {
        assert!(rescale_disc(&PolyMap3::zero(), 0.0).is_err());
        assert!(rescale_disc(&PolyMap3::zero(), 1.5).is_err());
        let phi = PolyMap3::new([vec![re(0.0), re(1.0)], vec![], vec![]]).unwrap();
        assert_eq!(rescale_disc(&phi, 1.0).unwrap(), phi);
        assert_eq!(rescale_disc(&phi, 0.5).unwrap().coeff(0, 1), re(0.5));
    }

    #[test]
    fn relation3_examples() {
        // σ∘(ζ ↦ A + (ζ/2)B_{ζ/2}) = (0, −3ζ²/4, −ζ³/4)
        let phi =
            PolyMap3::new([vec![], vec![re(0.0), re(0.0), re(-0.75)], vec![re(0.0), re(0.0), re(0.0), re(-0.25)]])
                .unwrap();
        assert!(relation3_residual(&phi, re(0.2), re(0.1)).unwrap() <= 1e-15);
        // t³ − α²(αθ₃′ − tθ₂′) = 0.008 − 0.04·(−0.05 + 0.15)
        assert!((relation3_residual(&phi, re(0.2), re(0.2)).unwrap() - 0.004).abs() < 1e-15);

        let cube = PolyMap3::new([vec![], vec![], vec![re(0.0), re(0.0), re(0.0), re(1.0)]]).unwrap();
        assert_eq!(relation3_residual(&cube, re(1.0), re(1.0)).unwrap(), 0.0);

        let bad = PolyMap3::new([vec![], vec![], vec![re(0.0), re(1.0)]]).unwrap();
        assert!(matches!(relation3_residual(&bad, re(0.2), re(0.1)), Err(Error::ThetaFormViolated(_))));
    }

    #[test]
    fn lempert_upper_examples() {
        let ub = lempert_upper(&abt(0.1)).unwrap();
        assert!((ub.value - 0.0547722557505166).abs() < 1e-12);
        assert!(ub.certificate.admissible);
        let ub = lempert_upper(&abt(0.01)).unwrap();
        assert!((ub.value - (3e-6f64).sqrt()).abs() < 1e-14);

        let w = omega();
        let mut bt = Mat3::diag([re(1.0), w, w * w]);
        bt[(2, 1)] = re(0.3);
        let derogatory = Mat3::unit(2, 3) + bt.scale(re(0.1));
        assert!(matches!(lempert_upper(&derogatory), Err(Error::NotCyclic { .. })));

        assert!(matches!(lempert_upper(&abt(1.0)), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn certificate_json_fields() {
        let (phi, r) = weighted_disc(&Cubic::new(re(0.0), re(0.0), re(0.001)));
        let cert = DiscCertificate::check(&phi, re(r), &Cubic::new(re(0.0), re(0.0), re(0.001)), None, 256);
        let v: serde_json::Value = serde_json::to_value(&cert).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for k in
            ["alpha", "endpoint_residual", "phi3_deriv0_residual", "relation3_residual", "boundary_sup", "admissible"]
        {
            assert!(keys.contains(&k.to_string()), "{k}");
        }
    }
}
