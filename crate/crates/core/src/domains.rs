//! The symmetrized three-disc G₃ and the spectral balls Ω₃, Ω̃₃.

use serde::{Deserialize, Serialize};

use crate::calg::{cubic_roots, elem_sym, Cubic, Mat3, C64};

/// Point of ℂ³ in σ coordinates; shares `Cubic`'s sign convention.
pub type SpecPoint = Cubic;

const TRACELESS_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    G3,
    Omega3,
    Omega3Traceless,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub inside: bool,
    pub margin: f64,
}

/// Operand of a membership query.
#[derive(Clone, Copy, Debug)]
pub enum Operand<'a> {
    Point(&'a SpecPoint),
    Matrix(&'a Mat3),
}

/// Minkowski functional of G₃: largest root modulus of
/// `λ³ − z1·λ² + z2·λ − z3`.
pub fn h_g3(z: &SpecPoint) -> f64 {
    cubic_roots(z).max_modulus()
}

/// Spectral radius of `m`.
pub fn spectral_radius(m: &Mat3) -> f64 {
    h_g3(&elem_sym(m))
}

/// Strict membership; the margin is `1 − h` (or `1 − ρ(M)` for matrices).
///
/// Returns `None` when the operand kind does not fit the domain
/// (G₃ takes points, the matrix balls take matrices).
pub fn membership(x: Operand<'_>, which: Domain) -> Option<MembershipVerdict> {
    match (x, which) {
        (Operand::Point(z), Domain::G3) => Some(verdict(1.0 - h_g3(z), true)),
        (Operand::Matrix(m), Domain::Omega3) => Some(verdict(1.0 - spectral_radius(m), true)),
        (Operand::Matrix(m), Domain::Omega3Traceless) => {
            Some(verdict(1.0 - spectral_radius(m), m.trace().norm() < TRACELESS_TOL))
        }
        _ => None,
    }
}

fn verdict(margin: f64, extra: bool) -> MembershipVerdict {
    MembershipVerdict { inside: margin > 0.0 && extra, margin }
}

pub fn in_g3(z: &SpecPoint) -> bool {
    h_g3(z) < 1.0
}

pub fn in_omega3(m: &Mat3) -> bool {
    spectral_radius(m) < 1.0
}

/// `(t·z1, t²·z2, t³·z3)`.
pub fn weighted_scale(z: &SpecPoint, t: C64) -> SpecPoint {
    Cubic::new(z.e1 * t, z.e2 * t * t, z.e3 * t * t * t)
}
