//! Search for small |α| over polynomial discs φ with φ(0) = 0 and
//! φ(α) = target.
//!
//! The interpolation constraints are eliminated exactly: the lowest free
//! coefficient of each component is solved from the endpoint equation (for
//! φ₃ together with the next one when the relation constraint is active).
//! Boundary feasibility is a quadratic penalty on the sampled sup of h_G₃.
//! α is real and positive, parametrized by its logarithm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{
    boundary_margin, weighted_disc, DiscCertificate, DEFAULT_BOUNDARY_SAMPLES, VERIFY_BOUNDARY_SAMPLES,
};
use super::polymap::{PolyMap3, DEFAULT_MAX_DEGREE};
use super::simplex;
use crate::calg::{Cubic, C64};
use crate::domains::{h_g3, SpecPoint};
use crate::error::{Error, Result};

pub const RESTARTS: usize = 8;
pub const BOUNDARY_SAFETY: f64 = 1e-3;
const PENALTY_WEIGHT: f64 = 1e4;
const SEED_SCAN_STEPS: i32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscConstraints {
    /// Require φ₃′(0) = 0 (liftable to Ω₃ through A).
    pub phi3_flat: bool,
    /// Enforce t³ = α²(αθ₃′(α) − tθ₂′(α) + t²θ₁′(α)) for this t.
    pub relation3: Option<C64>,
}

impl Default for DiscConstraints {
    fn default() -> Self {
        DiscConstraints { phi3_flat: true, relation3: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizedDisc {
    pub certificate: DiscCertificate,
    pub disc: PolyMap3,
    /// Index of the restart that produced the disc; `None` for the seed disc.
    pub restart: Option<usize>,
}

/// Free-coefficient layout for a given degree and constraint set.
struct Layout {
    target: SpecPoint,
    degree: usize,
    phi3_start: usize,
    relation_t: Option<C64>,
}

impl Layout {
    fn new(target: SpecPoint, degree: usize, constraints: &DiscConstraints) -> Result<Self> {
        let phi3_start = if constraints.phi3_flat { 2 } else { 1 };
        if constraints.relation3.is_some() && !constraints.phi3_flat {
            return Err(Error::InvalidArgument("the relation constraint needs a flat third component".into()));
        }
        let solved3 = if constraints.relation3.is_some() { 2 } else { 1 };
        if degree < phi3_start + solved3 - 1 || degree == 0 {
            return Err(Error::InvalidArgument(format!("degree {degree} too small for the requested constraints")));
        }
        Ok(Layout { target, degree, phi3_start, relation_t: constraints.relation3 })
    }

    fn solved3(&self) -> usize {
        if self.relation_t.is_some() {
            2
        } else {
            1
        }
    }

    /// Free complex coefficients per component: (component, power).
    fn free_slots(&self) -> Vec<(usize, usize)> {
        let mut slots = Vec::new();
        for i in 0..2 {
            slots.extend((2..=self.degree).map(|k| (i, k)));
        }
        slots.extend((self.phi3_start + self.solved3()..=self.degree).map(|k| (2, k)));
        slots
    }

    fn dim(&self) -> usize {
        1 + 2 * self.free_slots().len()
    }

    /// Builds φ and α from a parameter vector `[ln α, re, im, …]`.
    fn build(&self, x: &[f64]) -> Option<(PolyMap3, f64)> {
        let alpha = x[0].exp();
        if !(alpha.is_finite() && alpha > 0.0) {
            return None;
        }
        let a = C64::new(alpha, 0.0);
        let d = self.degree;
        let mut comps: [Vec<C64>; 3] =
            [vec![C64::default(); d + 1], vec![C64::default(); d + 1], vec![C64::default(); d + 1]];
        for (j, (i, k)) in self.free_slots().into_iter().enumerate() {
            comps[i][k] = C64::new(x[1 + 2 * j], x[2 + 2 * j]);
        }
        let powers: Vec<C64> = (0..=d).map(|k| a.powu(k as u32)).collect();
        let target = self.target.as_array();
        for i in 0..2 {
            let rest: C64 = (2..=d).map(|k| comps[i][k] * powers[k]).sum();
            comps[i][1] = (target[i] - rest) / a;
        }
        let s = self.phi3_start;
        match self.relation_t {
            None => {
                let rest: C64 = (s + 1..=d).map(|k| comps[2][k] * powers[k]).sum();
                comps[2][s] = (target[2] - rest) / powers[s];
            }
            Some(t) => {
                // endpoint: Σ cₖαᵏ = T₃; relation: Σ (k−2)cₖαᵏ = t³ + α²(tθ₂′ − t²θ₁′)
                let phi12 = PolyMap3::new([comps[0].clone(), comps[1].clone(), Vec::new()]).ok()?;
                let rhs_rel = t * t * t + a * a * (t * phi12.theta_deriv(1, a) - t * t * phi12.theta_deriv(0, a));
                let rest_end: C64 = (s + 2..=d).map(|k| comps[2][k] * powers[k]).sum();
                let rest_rel: C64 = (s + 2..=d).map(|k| comps[2][k] * powers[k] * (k as f64 - 2.0)).sum();
                // unknowns c_s, c_{s+1} with s = 2: [[α², α³], [0, α³]]
                let c_next = (rhs_rel - rest_rel) / powers[s + 1];
                comps[2][s + 1] = c_next;
                comps[2][s] = (target[2] - rest_end - c_next * powers[s + 1]) / powers[s];
            }
        }
        let phi = PolyMap3::new(comps).ok()?;
        Some((phi, alpha))
    }

    fn objective(&self, x: &[f64]) -> f64 {
        let Some((phi, _)) = self.build(x) else {
            return f64::INFINITY;
        };
        let sup = boundary_margin(&phi, DEFAULT_BOUNDARY_SAMPLES);
        let excess = (sup - (1.0 - BOUNDARY_SAFETY)).max(0.0);
        x[0] + PENALTY_WEIGHT * excess * excess
    }
}

/// Largest ρ ∈ (0, 1] (by bisection) for which φ(ρ·) verifies inside G₃;
/// returns the rescaled disc and α/ρ.
fn shrink_to_feasible(phi: &PolyMap3, alpha: f64) -> Option<(PolyMap3, f64)> {
    if boundary_margin(phi, VERIFY_BOUNDARY_SAMPLES) < 1.0 {
        return Some((phi.clone(), alpha));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if boundary_margin(&phi.rescaled(mid), VERIFY_BOUNDARY_SAMPLES) < 1.0 - 1e-9 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo > 0.0).then(|| (phi.rescaled(lo), alpha / lo))
}

fn certify(
    phi: PolyMap3,
    alpha: f64,
    target: &SpecPoint,
    relation_t: Option<C64>,
    restart: Option<usize>,
) -> Option<OptimizedDisc> {
    let (phi, alpha) = shrink_to_feasible(&phi, alpha)?;
    if alpha >= 1.0 {
        return None;
    }
    let certificate = DiscCertificate::check(&phi, C64::new(alpha, 0.0), target, relation_t, VERIFY_BOUNDARY_SAMPLES);
    certificate.admissible.then_some(OptimizedDisc { certificate, disc: phi, restart })
}

/// Derivative-free minimization of |α| with `RESTARTS` seeded restarts of
/// `budget` simplex iterations each; deterministic for fixed `seed`.
pub fn optimize_disc(
    target: &SpecPoint,
    degree: usize,
    constraints: DiscConstraints,
    seed: u64,
    budget: usize,
) -> Result<OptimizedDisc> {
    if degree > DEFAULT_MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("degree {degree} exceeds {DEFAULT_MAX_DEGREE}")));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    if !target.is_finite() {
        return Err(Error::InvalidArgument("non-finite target".into()));
    }
    let h = h_g3(target);
    if h >= 1.0 {
        return Err(Error::NoFeasiblePoint);
    }
    if h == 0.0 && target.max_diff(&Cubic::zero()) == 0.0 {
        let certificate =
            DiscCertificate::check(&PolyMap3::zero(), C64::new(0.0, 0.0), target, None, VERIFY_BOUNDARY_SAMPLES);
        return Ok(OptimizedDisc { certificate, disc: PolyMap3::zero(), restart: None });
    }
    let layout = Layout::new(*target, degree, &constraints)?;
    let dim = layout.dim();
    let relation_t = constraints.relation3;

    // candidates from a 1-D scan of α with all free coefficients zero
    let scale = h.max(target.root_scale());
    let mut scan: Vec<f64> = (-SEED_SCAN_STEPS..=SEED_SCAN_STEPS / 2)
        .map(|k| scale * 2f64.powf(k as f64 / 8.0))
        .filter(|a| *a < 1.0)
        .collect();
    let weighted = constraints.phi3_flat.then(|| weighted_disc(target)).filter(|(_, r)| *r > 0.0 && *r < 1.0);
    if let Some((_, r)) = &weighted {
        scan.push(*r);
    }
    let start_alpha = scan
        .iter()
        .map(|a| {
            let mut x = vec![0.0; dim];
            x[0] = a.ln();
            (layout.objective(&x), *a)
        })
        .min_by(|p, q| p.0.total_cmp(&q.0))
        .map(|(_, a)| a)
        .ok_or(Error::NoFeasiblePoint)?;

    let mut x0 = vec![0.0; dim];
    x0[0] = start_alpha.ln();

    let results: Vec<Option<OptimizedDisc>> = (0..RESTARTS)
        .into_par_iter()
        .map(|restart| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(restart as u64));
            let mut start = x0.clone();
            if restart > 0 {
                let spread = 0.5f64.powi(restart as i32 - 1) * 0.5;
                start[0] += rng.gen_range(-0.2..0.2);
                for v in start[1..].iter_mut() {
                    *v += spread * rng.gen_range(-1.0..1.0);
                }
            }
            let steps: Vec<f64> =
                start.iter().enumerate().map(|(i, v)| if i == 0 { 0.1 } else { (0.1 * v.abs()).max(0.02) }).collect();
            let res = simplex::minimize(|x| layout.objective(x), &start, &steps, budget);
            let (phi, alpha) = layout.build(&res.x)?;
            certify(phi, alpha, target, relation_t, Some(restart))
        })
        .collect();

    let mut best: Option<OptimizedDisc> = None;
    let mut consider = |cand: Option<OptimizedDisc>| {
        if let Some(c) = cand {
            if best.as_ref().is_none_or(|b| c.certificate.alpha.re < b.certificate.alpha.re) {
                best = Some(c);
            }
        }
    };
    if let Some((phi, r)) = weighted.filter(|_| relation_t.is_none()) {
        consider(certify(phi, r, target, None, None));
    }
    if let Some((phi, a)) = layout.build(&x0) {
        consider(certify(phi, a, target, relation_t, None));
    }
    for r in results {
        consider(r);
    }
    best.ok_or(Error::NoFeasiblePoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calg::re;
    use crate::discs::bounds::relation3_residual;

    #[test]
    fn layout_satisfies_constraints_exactly() {
        let target = Cubic::new(re(0.01), re(-3e-4), re(-2e-6));
        let cons = DiscConstraints { phi3_flat: true, relation3: Some(re(0.01)) };
        let layout = Layout::new(target, 4, &cons).unwrap();
        let x: Vec<f64> =
            (0..layout.dim()).map(|i| if i == 0 { 0.012f64.ln() } else { 0.01 * (i as f64).sin() }).collect();
        let (phi, alpha) = layout.build(&x).unwrap();
        assert!(phi.eval(re(alpha)).max_diff(&target) < 1e-15);
        assert_eq!(phi.phi3_flatness(), 0.0);
        assert!(relation3_residual(&phi, re(alpha), re(0.01)).unwrap() < 1e-15);
    }

    #[test]
    fn zero_free_coefficients_reproduce_near_extremal_family() {
        let t = 0.01;
        let target = Cubic::new(re(0.0), re(-3.0 * t * t), re(-2.0 * t * t * t));
        let cons = DiscConstraints { phi3_flat: true, relation3: Some(re(t)) };
        let layout = Layout::new(target, 3, &cons).unwrap();
        let mut x = vec![0.0; layout.dim()];
        x[0] = t.ln();
        let (phi, _) = layout.build(&x).unwrap();
        // (0, −3tζ, ζ³ − 3tζ²)
        assert!((phi.coeff(1, 1) - re(-3.0 * t)).norm() < 1e-15);
        assert!((phi.coeff(2, 2) - re(-3.0 * t)).norm() < 1e-12);
        assert!((phi.coeff(2, 3) - re(1.0)).norm() < 1e-10);
    }

    #[test]
    fn outside_target_is_infeasible() {
        let r = optimize_disc(&Cubic::new(re(0.0), re(0.0), re(2.0)), 3, DiscConstraints::default(), 42, 10);
        assert_eq!(r, Err(Error::NoFeasiblePoint));
    }

    #[test]
    fn zero_target_short_circuits() {
        let r = optimize_disc(&Cubic::zero(), 3, DiscConstraints::default(), 42, 10).unwrap();
        assert_eq!(r.certificate.alpha, re(0.0));
        assert_eq!(r.disc, PolyMap3::zero());
    }

    #[test]
    fn relation_needs_flatness_and_degree() {
        let target = Cubic::new(re(0.0), re(-3e-4), re(-2e-6));
        let cons = DiscConstraints { phi3_flat: false, relation3: Some(re(0.01)) };
        assert!(matches!(optimize_disc(&target, 3, cons, 42, 10), Err(Error::InvalidArgument(_))));
        let cons = DiscConstraints { phi3_flat: true, relation3: Some(re(0.01)) };
        assert!(matches!(optimize_disc(&target, 2, cons, 42, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(optimize_disc(&target, 7, cons, 42, 10), Err(Error::InvalidArgument(_))));
    }
}
