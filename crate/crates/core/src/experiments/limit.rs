use serde::{Deserialize, Serialize};

use crate::calg::{cubic_roots, Cubic, RootTriple, C64};

const ADMISSIBLE_SLACK: f64 = 1e-10;

/// Endpoint algebra of the limit disc: P(λ) = (λ − k)(λ² + kλ + k² + ρ₂(0)).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitCertificate {
    pub k: C64,
    pub rho2_0: C64,
    pub polynomial: Cubic,
    pub roots: RootTriple,
    pub max_modulus: f64,
    /// All zeros in the closed unit disc (up to 1e-10).
    pub admissible: bool,
    /// |k| ≤ 1 + 1e-10, so c = 1/k has |c| ≥ 1 − 1e-9.
    pub k_bounded: bool,
}

pub fn limit_certificate(k: C64, rho2_0: C64) -> LimitCertificate {
    // λ³ + ρ₂λ − (k³ + kρ₂)
    let polynomial = Cubic::new(C64::new(0.0, 0.0), rho2_0, k * k * k + k * rho2_0);
    let roots = cubic_roots(&polynomial);
    let max_modulus = roots.max_modulus();
    LimitCertificate {
        k,
        rho2_0,
        polynomial,
        roots,
        max_modulus,
        admissible: max_modulus <= 1.0 + ADMISSIBLE_SLACK,
        k_bounded: k.norm() <= 1.0 + ADMISSIBLE_SLACK,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calg::{omega, re};

    fn contains(roots: &RootTriple, z: C64, tol: f64) -> bool {
        roots.roots.iter().any(|r| (r - z).norm() < tol)
    }

    #[test]
    fn examples() {
        let c = limit_certificate(re(1.0), re(0.0));
        assert!(c.admissible && c.k_bounded);
        let w = omega();
        for z in [re(1.0), w, w * w] {
            assert!(contains(&c.roots, z, 1e-10));
        }

        let c = limit_certificate(re(1.0), re(-3.0));
        assert!(!c.admissible);
        assert!(contains(&c.roots, re(-2.0), 1e-10));
        assert!(contains(&c.roots, re(1.0), 1e-7));

        let c = limit_certificate(re(0.0), re(0.5));
        assert!(c.admissible);
        for z in [re(0.0), C64::new(0.0, 0.5f64.sqrt()), C64::new(0.0, -(0.5f64.sqrt()))] {
            assert!(contains(&c.roots, z, 1e-12));
        }
    }

    #[test]
    fn admissible_implies_k_bounded() {
        for (k, r) in [(0.9, 0.0), (1.0, -0.5), (1.2, 0.1), (0.5, 0.3)] {
            let c = limit_certificate(re(k), re(r));
            assert!(!c.admissible || c.k_bounded);
        }
    }
}
