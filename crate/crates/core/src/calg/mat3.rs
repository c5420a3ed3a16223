use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::scalar::{is_finite, C64};

/// Dense 3×3 complex matrix, `m[(row, col)]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[C64; 3]; 3]);

pub type Vec3 = [C64; 3];

impl Mat3 {
    pub fn zero() -> Self {
        Mat3([[C64::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag([C64::new(1.0, 0.0); 3])
    }

    pub fn diag(d: [C64; 3]) -> Self {
        let mut m = Self::zero();
        for (k, v) in d.into_iter().enumerate() {
            m.0[k][k] = v;
        }
        m
    }

    pub fn from_rows(rows: [[C64; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        let mut m = Self::zero();
        for (k, row) in rows.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                m.0[k][l] = C64::new(*v, 0.0);
            }
        }
        m
    }

    /// Row-major slice of nine entries.
    pub fn from_slice(v: &[C64]) -> Option<Self> {
        if v.len() != 9 {
            return None;
        }
        let mut m = Self::zero();
        for (i, z) in v.iter().enumerate() {
            m.0[i / 3][i % 3] = *z;
        }
        Some(m)
    }

    /// Matrix unit E_{kl} (1-based indices).
    pub fn unit(k: usize, l: usize) -> Self {
        let mut m = Self::zero();
        m.0[k - 1][l - 1] = C64::new(1.0, 0.0);
        m
    }

    pub fn entries(&self) -> impl Iterator<Item = &C64> {
        self.0.iter().flatten()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|z| is_finite(*z))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for z in m.0.iter_mut().flatten() {
            *z *= s;
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Sum of the three principal 2×2 minors.
    pub fn principal_minor_sum(&self) -> C64 {
        let m = &self.0;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1])
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Classical adjoint: transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        Mat3([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    /// Inverse via the adjugate; `None` for an exactly singular matrix or
    /// on overflow.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        let inv = self.adjugate().scale(det.inv());
        inv.is_finite().then_some(inv)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for k in 0..3 {
            for l in 0..3 {
                t.0[k][l] = self.0[l][k];
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        for z in t.0.iter_mut().flatten() {
            *z = z.conj();
        }
        t
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        let mut out = [C64::new(0.0, 0.0); 3];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.0[k][0] * v[0] + self.0[k][1] * v[1] + self.0[k][2] * v[2];
        }
        out
    }

    pub fn from_columns(cols: [Vec3; 3]) -> Self {
        let mut m = Self::zero();
        for (l, col) in cols.iter().enumerate() {
            for (k, v) in col.iter().enumerate() {
                m.0[k][l] = *v;
            }
        }
        m
    }

    pub fn column(&self, l: usize) -> Vec3 {
        [self.0[0][l], self.0[1][l], self.0[2][l]]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max row sum norm.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().map(|row| row.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat3) -> f64 {
        (*self - *other).max_abs()
    }
}

pub fn vec_norm(v: &Vec3) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Index<(usize, usize)> for Mat3 {
    type Output = C64;
    fn index(&self, (k, l): (usize, usize)) -> &C64 {
        &self.0[k][l]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (k, l): (usize, usize)) -> &mut C64 {
        &mut self.0[k][l]
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(mut self, rhs: Mat3) -> Mat3 {
        for k in 0..3 {
            for l in 0..3 {
                self.0[k][l] += rhs.0[k][l];
            }
        }
        self
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(mut self, rhs: Mat3) -> Mat3 {
        for k in 0..3 {
            for l in 0..3 {
                self.0[k][l] -= rhs.0[k][l];
            }
        }
        self
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = Mat3::zero();
        for k in 0..3 {
            for l in 0..3 {
                out.0[k][l] = self.0[k][0] * rhs.0[0][l] + self.0[k][1] * rhs.0[1][l] + self.0[k][2] * rhs.0[2][l];
            }
        }
        out
    }
}

impl Mul<Mat3> for C64 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        rhs.scale(self)
    }
}

impl Mul<Mat3> for f64 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        rhs.scale(C64::new(self, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calg::scalar::c;

    fn sample() -> Mat3 {
        Mat3([
            [c(1.0, 0.5), c(-2.0, 0.0), c(0.3, -1.0)],
            [c(0.0, 1.0), c(0.7, 0.2), c(1.1, 0.0)],
            [c(-0.4, 0.0), c(2.0, -0.3), c(0.9, 0.9)],
        ])
    }

    #[test]
    fn adjugate_identity() {
        let m = sample();
        let lhs = m * m.adjugate();
        let rhs = Mat3::identity().scale(m.det());
        assert!(lhs.max_abs_diff(&rhs) < 1e-12 * m.max_abs().powi(3));
    }

    #[test]
    fn inverse_round_trip() {
        let m = sample();
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_abs_diff(&Mat3::identity()) < 1e-13);
        assert!(Mat3::from_real([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]]).inverse().is_none());
    }

    #[test]
    fn unit_is_one_based() {
        assert_eq!(Mat3::unit(3, 2)[(2, 1)], c(1.0, 0.0));
    }
}
