//! Krylov bases `[v | Mv | M²v]`: cyclicity, minimal polynomials and
//! similarity of cyclic matrices.

use serde::{Deserialize, Serialize};

use super::cubic::{cubic_roots, elem_sym, Cubic};
use super::mat3::{vec_norm, Mat3, Vec3};
use super::scalar::C64;
use crate::error::{Error, Result};

pub const DEFAULT_CYCLIC_TOL: f64 = 1e-8;

const fn z(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Fixed probe table: e₃ first, then e₁, e₂, then four pseudo-random vectors.
pub const PROBES: [Vec3; 7] = [
    [z(0.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
    [z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0)],
    [z(0.0, 0.0), z(1.0, 0.0), z(0.0, 0.0)],
    [z(0.8287, -0.6031), z(-0.0380, 0.6399), z(-0.9194, 0.2201)],
    [z(0.0503, -0.1549), z(-0.2085, 0.3052), z(0.9606, 0.2624)],
    [z(0.3062, 0.9903), z(0.6613, 0.5794), z(-0.0047, 0.7050)],
    [z(-0.8838, -0.5317), z(-0.6401, 0.9816), z(-0.4576, -0.2974)],
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicityReport {
    pub cyclic: bool,
    pub min_poly_degree: usize,
    /// Non-leading coefficients of the monic minimal polynomial, ascending:
    /// `[c0, c1]` stands for `λ² + c1·λ + c0`.
    pub min_poly_coeffs: Vec<C64>,
    /// Best (largest over probes) smallest singular value of the
    /// column-normalized Krylov matrix.
    pub krylov_smin: f64,
}

pub fn krylov_matrix(m: &Mat3, v: &Vec3) -> Mat3 {
    let mv = m.mul_vec(v);
    let m2v = m.mul_vec(&mv);
    Mat3::from_columns([*v, mv, m2v])
}

/// Smallest singular value of a 3×3 matrix as |det| / ‖adj‖₂.
///
/// The singular values of adj(K) are σ₂σ₃, σ₁σ₃, σ₁σ₂, so the ratio is σ₃
/// without squaring the small singular value.
pub fn smallest_singular_value(k: &Mat3) -> f64 {
    let adj = k.adjugate();
    let adj_norm = spectral_norm(&adj);
    if adj_norm == 0.0 {
        return 0.0;
    }
    k.det().norm() / adj_norm
}

/// Largest singular value: square root of the top eigenvalue of KᴴK.
pub fn spectral_norm(k: &Mat3) -> f64 {
    let scale = k.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    let ks = k.scale(C64::new(1.0 / scale, 0.0));
    let h = ks.conj_transpose() * ks;
    let top = cubic_roots(&elem_sym(&h)).roots.iter().map(|r| r.re).fold(0.0, f64::max);
    top.max(0.0).sqrt() * scale
}

fn normalize_columns(k: &Mat3) -> Mat3 {
    let mut cols = [k.column(0), k.column(1), k.column(2)];
    for col in cols.iter_mut() {
        let n = vec_norm(col);
        if n > 0.0 {
            for x in col.iter_mut() {
                *x /= n;
            }
        }
    }
    Mat3::from_columns(cols)
}

/// Shift by the trace mean and scale to unit Frobenius norm; cyclicity is
/// invariant under both. `None` for scalar matrices.
fn normalized(m: &Mat3) -> Option<Mat3> {
    let mu = m.trace() / 3.0;
    let shifted = *m - Mat3::identity().scale(mu);
    let s = shifted.frobenius();
    (s > 0.0).then(|| shifted.scale(C64::new(1.0 / s, 0.0)))
}

/// Normalized Krylov smallest singular value for one probe.
pub fn probe_smin(m: &Mat3, v: &Vec3) -> f64 {
    match normalized(m) {
        Some(mn) => smallest_singular_value(&normalize_columns(&krylov_matrix(&mn, v))),
        None => 0.0,
    }
}

pub fn krylov_smin(m: &Mat3) -> f64 {
    PROBES.iter().map(|v| probe_smin(m, v)).fold(0.0, f64::max)
}

pub fn cyclicity(m: &Mat3, tol: f64) -> CyclicityReport {
    let smin = krylov_smin(m);
    if smin > tol {
        // Cayley–Hamilton: the characteristic polynomial is minimal
        let s = elem_sym(m);
        return CyclicityReport {
            cyclic: true,
            min_poly_degree: 3,
            min_poly_coeffs: vec![-s.e3, s.e2, -s.e1],
            krylov_smin: smin,
        };
    }
    let (deg, coeffs) = match fit_annihilating(m, 1) {
        Some((c, res)) if res < tol => (1, c),
        _ => (2, fit_annihilating(m, 2).map(|(c, _)| c).unwrap_or_default()),
    };
    CyclicityReport { cyclic: false, min_poly_degree: deg, min_poly_coeffs: coeffs, krylov_smin: smin }
}

fn vectorize(m: &Mat3) -> [C64; 9] {
    let mut out = [C64::new(0.0, 0.0); 9];
    for (i, x) in m.entries().enumerate() {
        out[i] = *x;
    }
    out
}

fn dot(a: &[C64; 9], b: &[C64; 9]) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn norm9(a: &[C64; 9]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Least-squares monic annihilating polynomial of the given degree (1 or 2)
/// over vec{I, M, M²}. Returns ascending non-leading coefficients and the
/// residual ‖M^d + Σ cₖMᵏ‖_F / (1 + ‖M‖_F^d).
pub fn fit_annihilating(m: &Mat3, degree: usize) -> Option<(Vec<C64>, f64)> {
    assert!((1..=2).contains(&degree));
    let powers = [Mat3::identity(), *m, *m * *m];
    let basis: Vec<[C64; 9]> = powers[..degree].iter().map(vectorize).collect();
    let rhs = vectorize(&powers[degree]).map(|x| -x);

    // modified Gram–Schmidt, R upper triangular
    let mut q: Vec<[C64; 9]> = Vec::with_capacity(degree);
    let mut r = [[C64::new(0.0, 0.0); 2]; 2];
    for (j, b) in basis.iter().enumerate() {
        let mut v = *b;
        for (i, qi) in q.iter().enumerate() {
            r[i][j] = dot(qi, &v);
            for k in 0..9 {
                v[k] -= qi[k] * r[i][j];
            }
        }
        let n = norm9(&v);
        if n == 0.0 {
            return None;
        }
        r[j][j] = C64::new(n, 0.0);
        q.push(v.map(|x| x / n));
    }
    let qtb: Vec<C64> = q.iter().map(|qi| dot(qi, &rhs)).collect();
    let mut coeffs = vec![C64::new(0.0, 0.0); degree];
    for i in (0..degree).rev() {
        let mut acc = qtb[i];
        for j in i + 1..degree {
            acc -= r[i][j] * coeffs[j];
        }
        coeffs[i] = acc / r[i][i];
    }
    let mut resid = vectorize(&powers[degree]);
    for (j, b) in basis.iter().enumerate() {
        for k in 0..9 {
            resid[k] += coeffs[j] * b[k];
        }
    }
    let scale = 1.0 + m.frobenius().powi(degree as i32);
    Some((coeffs, norm9(&resid) / scale))
}

/// P with P⁻¹·N·P = M, built as K_N·K_M⁻¹ from the first probe admissible
/// for both matrices.
pub fn similarity(m: &Mat3, n: &Mat3, tol: f64) -> Result<Mat3> {
    check_similar(m, n, tol)?;
    let v = PROBES
        .iter()
        .find(|v| probe_smin(m, v) > tol && probe_smin(n, v) > tol)
        .ok_or(Error::NotCyclic { smin: 0.0, tol })?;
    similarity_with_probe(m, n, v)
}

pub(crate) fn check_similar(m: &Mat3, n: &Mat3, tol: f64) -> Result<()> {
    for x in [m, n] {
        let smin = krylov_smin(x);
        if smin <= tol {
            return Err(Error::NotCyclic { smin, tol });
        }
    }
    let gap = elem_sym(m).max_diff(&elem_sym(n));
    if gap >= tol {
        return Err(Error::SpectraMismatch { gap });
    }
    Ok(())
}

pub(crate) fn similarity_with_probe(m: &Mat3, n: &Mat3, v: &Vec3) -> Result<Mat3> {
    let km = krylov_matrix(m, v);
    let kn = krylov_matrix(n, v);
    let km_inv = km.inverse().ok_or(Error::SingularInput)?;
    Ok(kn * km_inv)
}

/// Companion matrix with characteristic polynomial `p`, last row
/// `(e3, −e2, e1)`.
pub fn companion(p: &Cubic) -> Mat3 {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    Mat3::from_rows([[o, one, o], [o, o, one], [p.e3, -p.e2, p.e1]])
}
