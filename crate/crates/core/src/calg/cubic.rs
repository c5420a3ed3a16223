//! Monic cubics `λ³ − e1·λ² + e2·λ − e3` and their roots.

use serde::{Deserialize, Serialize};

use super::mat3::Mat3;
use super::scalar::{is_finite, omega, C64};

/// Coefficients of `λ³ − e1·λ² + e2·λ − e3`.
///
/// With this sign convention the coefficients are the elementary symmetric
/// functions of the roots, so `Cubic` doubles as a point of ℂ³ in
/// σ coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cubic {
    pub e1: C64,
    pub e2: C64,
    pub e3: C64,
}

impl Cubic {
    pub fn new(e1: C64, e2: C64, e3: C64) -> Self {
        Cubic { e1, e2, e3 }
    }

    pub fn zero() -> Self {
        let z = C64::new(0.0, 0.0);
        Cubic { e1: z, e2: z, e3: z }
    }

    pub fn as_array(&self) -> [C64; 3] {
        [self.e1, self.e2, self.e3]
    }

    pub fn from_array(a: [C64; 3]) -> Self {
        Cubic::new(a[0], a[1], a[2])
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|z| is_finite(*z))
    }

    /// Elementary symmetric functions of three values.
    pub fn from_roots(r: [C64; 3]) -> Self {
        Cubic::new(r[0] + r[1] + r[2], r[0] * r[1] + r[1] * r[2] + r[2] * r[0], r[0] * r[1] * r[2])
    }

    pub fn eval(&self, x: C64) -> C64 {
        ((x - self.e1) * x + self.e2) * x - self.e3
    }

    pub fn eval_deriv(&self, x: C64) -> C64 {
        (x * 3.0 - self.e1 * 2.0) * x + self.e2
    }

    /// Component-wise maximum modulus of the difference.
    pub fn max_diff(&self, other: &Cubic) -> f64 {
        let a = self.as_array();
        let b = other.as_array();
        (0..3).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max)
    }

    /// Weight-homogeneous size `max(|e1|, |e2|^½, |e3|^⅓)`; scales like a root.
    pub fn root_scale(&self) -> f64 {
        self.e1.norm().max(self.e2.norm().sqrt()).max(self.e3.norm().cbrt())
    }
}

/// Three roots sorted by modulus (descending), then phase (ascending).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootTriple {
    pub roots: [C64; 3],
}

impl RootTriple {
    pub fn max_modulus(&self) -> f64 {
        self.roots[0].norm().max(self.roots[1].norm()).max(self.roots[2].norm())
    }

    pub fn vieta_residual(&self, p: &Cubic) -> f64 {
        Cubic::from_roots(self.roots).max_diff(p)
    }
}

/// σ(M): trace, sum of principal 2×2 minors, determinant.
pub fn elem_sym(m: &Mat3) -> Cubic {
    Cubic::new(m.trace(), m.principal_minor_sum(), m.det())
}

const TRIPLE_ROOT_REL: f64 = 1e-14;
const POLISH_TARGET: f64 = 1e-11;

/// All three roots of a monic cubic (Cardano on the depressed cubic,
/// then Newton polishing).
pub fn cubic_roots(p: &Cubic) -> RootTriple {
    let scale = p.root_scale();
    if scale == 0.0 {
        return RootTriple { roots: [C64::new(0.0, 0.0); 3] };
    }
    let shift = p.e1 / 3.0;
    // λ = μ + shift gives μ³ + a·μ + b = 0
    let a = p.e2 - p.e1 * p.e1 / 3.0;
    let b = -p.e3 + p.e1 * p.e2 / 3.0 - p.e1 * p.e1 * p.e1 * (2.0 / 27.0);

    let mut roots = if a.norm() <= TRIPLE_ROOT_REL * scale * scale && b.norm() <= TRIPLE_ROOT_REL * scale.powi(3) {
        [shift; 3]
    } else {
        let disc = (b * b / 4.0 + a * a * a / 27.0).sqrt();
        // pick the sign that avoids cancellation in u³
        let u3 = {
            let plus = -b / 2.0 + disc;
            let minus = -b / 2.0 - disc;
            if plus.norm() >= minus.norm() {
                plus
            } else {
                minus
            }
        };
        let u = u3.cbrt();
        let w = omega();
        let w2 = w.conj();
        if u.norm() == 0.0 {
            [shift; 3]
        } else {
            let v = -a / (u * 3.0);
            [u + v + shift, w * u + w2 * v + shift, w2 * u + w * v + shift]
        }
    };

    polish(p, &mut roots);
    if Cubic::from_roots(roots).max_diff(p) > POLISH_TARGET * (1.0 + scale.powi(3)) {
        polish(p, &mut roots);
    }
    sort_roots(&mut roots);
    RootTriple { roots }
}

/// A few guarded Newton steps per root; a step is kept only if it lowers |p|.
fn polish(p: &Cubic, roots: &mut [C64; 3]) {
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let f = p.eval(*r);
            if f.norm() == 0.0 {
                break;
            }
            let d = p.eval_deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            let next = *r - f / d;
            if is_finite(next) && p.eval(next).norm() < f.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
}

fn phase_key(z: C64) -> f64 {
    if z.im.abs() <= 1e-14 * z.norm() {
        if z.re < 0.0 {
            std::f64::consts::PI
        } else {
            0.0
        }
    } else {
        z.arg()
    }
}

fn root_order(x: &C64, y: &C64) -> std::cmp::Ordering {
    let (mx, my) = (x.norm(), y.norm());
    if (mx - my).abs() > 1e-12 * mx.max(my) {
        my.total_cmp(&mx)
    } else {
        phase_key(*x).total_cmp(&phase_key(*y))
    }
}

fn sort_roots(roots: &mut [C64; 3]) {
    // insertion sort keeps the tolerance-aware comparison well defined on three items
    for i in 1..3 {
        let mut j = i;
        while j > 0 && root_order(&roots[j - 1], &roots[j]) == std::cmp::Ordering::Greater {
            roots.swap(j - 1, j);
            j -= 1;
        }
    }
}
