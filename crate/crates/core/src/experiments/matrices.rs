use serde::{Deserialize, Serialize};

use crate::calg::{omega, Mat3, C64};

/// The fixed matrices of the construction: the nilpotent base point A, the
/// family B_t and the diagonal D_t.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseMatrices {
    pub a: Mat3,
    pub omega: C64,
}

impl Default for BaseMatrices {
    fn default() -> Self {
        base_matrices()
    }
}

pub fn base_matrices() -> BaseMatrices {
    BaseMatrices { a: Mat3::unit(2, 3), omega: omega() }
}

impl BaseMatrices {
    /// Lower triangular, diagonal (1, ω, ω²), entry (3,2) equal to 3t.
    pub fn b(&self, t: C64) -> Mat3 {
        let w = self.omega;
        // ω² written as ω̄ so that 1 + ω + ω² sums to zero in floating point
        let mut m = Mat3::diag([C64::new(1.0, 0.0), w, w.conj()]);
        m[(2, 1)] = t * 3.0;
        m
    }

    /// B = B₀.
    pub fn b0(&self) -> Mat3 {
        self.b(C64::new(0.0, 0.0))
    }

    /// diag(t, t, −2t).
    pub fn d(&self, t: C64) -> Mat3 {
        Mat3::diag([t, t, t * -2.0])
    }

    /// A + t·B_t.
    pub fn exceptional(&self, t: C64) -> Mat3 {
        self.a + self.b(t).scale(t)
    }

    /// A + t·C.
    pub fn perturbed(&self, t: C64, c: &Mat3) -> Mat3 {
        self.a + c.scale(t)
    }
}
