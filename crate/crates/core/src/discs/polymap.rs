use serde::{Deserialize, Serialize};

use crate::calg::scalar::is_finite;
use crate::calg::{Cubic, C64};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 6;

/// Polynomial map ζ ↦ (φ₁(ζ), φ₂(ζ), φ₃(ζ)), coefficients in ascending degree.
///
/// Serializes as three JSON arrays of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyMap3 {
    components: [Vec<C64>; 3],
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Value at `z` of the derivative of `Σ c_k ζ^{k−shift}` (terms with
/// `k < shift` must vanish; they are ignored here).
fn shifted_deriv(coeffs: &[C64], shift: usize, z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in (shift + 1..coeffs.len()).rev() {
        acc = acc * z + coeffs[k] * ((k - shift) as f64);
    }
    acc
}

impl PolyMap3 {
    pub fn new(components: [Vec<C64>; 3]) -> Result<Self> {
        if components.iter().flatten().any(|c| !is_finite(*c)) {
            return Err(Error::InvalidArgument("non-finite disc coefficient".into()));
        }
        Ok(PolyMap3 { components })
    }

    pub fn zero() -> Self {
        PolyMap3 { components: [Vec::new(), Vec::new(), Vec::new()] }
    }

    pub fn components(&self) -> &[Vec<C64>; 3] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[C64] {
        &self.components[i]
    }

    /// Coefficient of ζ^k in component `i` (zero past the stored length).
    pub fn coeff(&self, i: usize, k: usize) -> C64 {
        self.components[i].get(k).copied().unwrap_or_default()
    }

    /// Highest stored power across components.
    pub fn degree(&self) -> usize {
        self.components.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn eval(&self, z: C64) -> Cubic {
        Cubic::new(horner(&self.components[0], z), horner(&self.components[1], z), horner(&self.components[2], z))
    }

    pub fn deriv(&self, i: usize, z: C64) -> C64 {
        shifted_deriv(&self.components[i], 0, z)
    }

    /// φ₃(ζ)/ζ as a polynomial value; the constant term of φ₃ is dropped.
    pub fn phi3_over_zeta(&self, z: C64) -> C64 {
        let c = &self.components[2];
        if c.len() <= 1 {
            C64::new(0.0, 0.0)
        } else {
            horner(&c[1..], z)
        }
    }

    /// θ′ᵢ(z) for θ₁ = φ₁/ζ, θ₂ = φ₂/ζ, θ₃ = φ₃/ζ².
    pub fn theta_deriv(&self, i: usize, z: C64) -> C64 {
        let shift = if i == 2 { 2 } else { 1 };
        shifted_deriv(&self.components[i], shift, z)
    }

    /// Precomposition with ζ ↦ ρζ.
    pub fn rescaled(&self, rho: f64) -> Self {
        let components = self.components.clone().map(|c| {
            let mut p = 1.0;
            c.into_iter()
                .map(|x| {
                    let y = x * p;
                    p *= rho;
                    y
                })
                .collect()
        });
        PolyMap3 { components }
    }

    /// |φ(0)| over the first two components.
    pub fn origin_offset(&self) -> f64 {
        self.coeff(0, 0).norm().max(self.coeff(1, 0).norm())
    }

    /// |c₀| + |c₁| of φ₃.
    pub fn phi3_flatness(&self) -> f64 {
        self.coeff(2, 0).norm() + self.coeff(2, 1).norm()
    }
}
