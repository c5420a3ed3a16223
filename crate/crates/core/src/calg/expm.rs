//! Matrix exponential and principal logarithm for 3×3 complex matrices.

use super::cubic::{cubic_roots, elem_sym};
use super::mat3::{vec_norm, Mat3, Vec3};
use super::scalar::C64;
use crate::error::{Error, Result};

const EXP_SCALED_NORM: f64 = 0.5;
const EXP_MAX_TERMS: usize = 30;
const LOG_EIGEN_GAP: f64 = 1e-6;
const LOG_MAX_SQRTS: usize = 8;
const BRANCH_CUT_TOL: f64 = 1e-10;

/// Scaling and squaring with a truncated Taylor series.
pub fn mat_exp(s: &Mat3) -> Mat3 {
    let norm = s.norm_inf();
    let squarings = if norm > EXP_SCALED_NORM { (norm / EXP_SCALED_NORM).log2().ceil() as i32 } else { 0 };
    let x = s.scale(C64::new(0.5f64.powi(squarings), 0.0));

    let mut result = Mat3::identity();
    let mut term = Mat3::identity();
    for k in 1..=EXP_MAX_TERMS {
        term = (term * x).scale(C64::new(1.0 / k as f64, 0.0));
        result = result + term;
        if term.max_abs() <= f64::EPSILON * 1e-2 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result * result;
    }
    result
}

/// Principal matrix logarithm.
///
/// Uses an eigendecomposition when the spectrum is separated by more than
/// 1e−6, otherwise inverse scaling and squaring with at most 8 square roots.
pub fn mat_log(p: &Mat3) -> Result<Mat3> {
    if !p.is_finite() {
        return Err(Error::InvalidArgument("non-finite matrix".into()));
    }
    let eig = cubic_roots(&elem_sym(p)).roots;
    let scale = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || eig.iter().any(|z| z.norm() <= 1e-14 * scale) {
        return Err(Error::SingularInput);
    }
    for z in &eig {
        let dist = if z.re <= 0.0 { z.im.abs() } else { z.norm() };
        if dist < BRANCH_CUT_TOL {
            return Err(Error::BranchCut { re: z.re, im: z.im });
        }
    }
    let gap = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .map(|(i, j)| (eig[i] - eig[j]).norm())
        .fold(f64::INFINITY, f64::min);
    if gap > LOG_EIGEN_GAP {
        if let Some(l) = log_by_eigenvectors(p, &eig) {
            return Ok(l);
        }
    }
    log_inverse_scaling_squaring(p)
}

fn null_vector(m: &Mat3) -> Vec3 {
    // bilinear cross products of row pairs are orthogonal (unconjugated) to both rows
    let rows = [m.0[0], m.0[1], m.0[2]];
    let cross = |a: &Vec3, b: &Vec3| -> Vec3 {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let cands = [cross(&rows[0], &rows[1]), cross(&rows[0], &rows[2]), cross(&rows[1], &rows[2])];
    let best =
        cands.iter().max_by(|x, y| vec_norm(x).total_cmp(&vec_norm(y))).copied().unwrap_or([C64::new(0.0, 0.0); 3]);
    let n = vec_norm(&best);
    if n == 0.0 {
        best
    } else {
        best.map(|x| x / n)
    }
}

fn log_by_eigenvectors(p: &Mat3, eig: &[C64; 3]) -> Option<Mat3> {
    let cols = eig.map(|lambda| null_vector(&(*p - Mat3::identity().scale(lambda))));
    if cols.iter().any(|v| vec_norm(v) == 0.0) {
        return None;
    }
    let v = Mat3::from_columns(cols);
    let v_inv = v.inverse()?;
    let l = v * Mat3::diag(eig.map(|z| z.ln())) * v_inv;
    // ill-conditioned eigenbases fall through to the robust path
    let back = mat_exp(&l);
    (back.max_abs_diff(p) <= 1e-11 * p.max_abs().max(1.0)).then_some(l)
}

/// Denman–Beavers square root.
fn sqrtm(a: &Mat3) -> Option<Mat3> {
    let mut y = *a;
    let mut z = Mat3::identity();
    let half = C64::new(0.5, 0.0);
    for _ in 0..60 {
        let y_inv = y.inverse()?;
        let z_inv = z.inverse()?;
        let y_next = (y + z_inv).scale(half);
        let z_next = (z + y_inv).scale(half);
        let delta = y_next.max_abs_diff(&y);
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * y.max_abs() {
            break;
        }
    }
    y.is_finite().then_some(y)
}

fn log_inverse_scaling_squaring(p: &Mat3) -> Result<Mat3> {
    let mut x = *p;
    let mut roots = 0;
    while (x - Mat3::identity()).norm_inf() > 0.25 && roots < LOG_MAX_SQRTS {
        x = sqrtm(&x).ok_or(Error::LogNotConverged)?;
        roots += 1;
    }
    let e = x - Mat3::identity();
    if e.norm_inf() >= 0.9 {
        return Err(Error::LogNotConverged);
    }
    // log(I + E) = Σ (−1)^{k+1} E^k / k
    let mut acc = Mat3::zero();
    let mut pow = Mat3::identity();
    for k in 1..=200 {
        pow = pow * e;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let term = pow.scale(C64::new(sign / k as f64, 0.0));
        acc = acc + term;
        if term.max_abs() <= 1e-18 * acc.max_abs().max(1e-300) {
            break;
        }
    }
    Ok(acc.scale(C64::new(2f64.powi(roots as i32), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calg::scalar::{c, re};

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(mat_exp(&Mat3::zero()), Mat3::identity());
    }

    #[test]
    fn exp_of_diagonal() {
        let e = mat_exp(&Mat3::diag([re(2f64.ln()), re(0.0), re(0.0)]));
        assert!(e.max_abs_diff(&Mat3::diag([re(2.0), re(1.0), re(1.0)])) < 1e-15);
    }

    #[test]
    fn exp_of_nilpotent_terminates() {
        let a = Mat3::unit(2, 3);
        assert!(mat_exp(&a).max_abs_diff(&(Mat3::identity() + a)) < 1e-16);
    }

    #[test]
    fn log_of_identity_and_diagonal() {
        assert!(mat_log(&Mat3::identity()).unwrap().max_abs() < 1e-15);
        let l = mat_log(&Mat3::diag([re(2.0), re(1.0), re(1.0)])).unwrap();
        assert!(l.max_abs_diff(&Mat3::diag([re(2f64.ln()), re(0.0), re(0.0)])) < 1e-14);
    }

    #[test]
    fn log_branch_cut_and_singular() {
        assert!(matches!(mat_log(&Mat3::diag([re(-1.0), re(1.0), re(1.0)])), Err(Error::BranchCut { .. })));
        assert!(matches!(mat_log(&Mat3::diag([re(0.0), re(1.0), re(1.0)])), Err(Error::SingularInput)));
    }

    #[test]
    fn log_of_jordan_block_uses_square_roots() {
        // repeated eigenvalue: eigenvector path is skipped
        let p = Mat3::from_rows([
            [c(2.0, 0.5), re(1.0), re(0.0)],
            [re(0.0), c(2.0, 0.5), re(1.0)],
            [re(0.0), re(0.0), c(2.0, 0.5)],
        ]);
        let l = mat_log(&p).unwrap();
        assert!(mat_exp(&l).max_abs_diff(&p) < 1e-12);
    }
}
