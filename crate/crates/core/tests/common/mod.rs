#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_lempert::calg::{Mat3, C64};
use spectral_lempert::Cubic;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_c64(r: &mut ChaCha8Rng, scale: f64) -> C64 {
    C64::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale))
}

pub fn rand_mat(r: &mut ChaCha8Rng, scale: f64) -> Mat3 {
    let v: Vec<C64> = (0..9).map(|_| rand_c64(r, scale)).collect();
    Mat3::from_slice(&v).unwrap()
}

/// Random matrix with condition number kept moderate.
pub fn rand_invertible(r: &mut ChaCha8Rng) -> Mat3 {
    loop {
        let p = Mat3::identity() + rand_mat(r, 0.6);
        if p.det().norm() > 0.2 {
            return p;
        }
    }
}

/// Simultaneous Weierstrass iteration for λ³ − e1λ² + e2λ − e3.
pub fn durand_kerner(p: &Cubic) -> [C64; 3] {
    let f = |z: C64| ((z - p.e1) * z + p.e2) * z - p.e3;
    let s = 1.0 + p.e1.norm().max(p.e2.norm().sqrt()).max(p.e3.norm().cbrt());
    let seed = C64::new(0.4, 0.9);
    let mut z = [seed * s, seed * seed * s, seed * seed * seed * s];
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..3 {
            let mut den = C64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                z[i] += C64::new(1e-12 * s, 1e-12 * s);
                continue;
            }
            let step = f(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-17 * s {
            break;
        }
    }
    z
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Smallest max-distance over all pairings of `a` with `b`.
pub fn matched_distance(a: &[C64; 3], b: &[C64; 3]) -> f64 {
    PERMS.iter().map(|p| (0..3).map(|i| (a[i] - b[p[i]]).norm()).fold(0.0, f64::max)).fold(f64::INFINITY, f64::min)
}

pub fn v_diag_vinv(v: &Mat3, d: [C64; 3]) -> Mat3 {
    *v * Mat3::diag(d) * v.inverse().unwrap()
}
