//! Complex 3×3 linear algebra kernel.

pub mod cubic;
pub mod expm;
pub mod krylov;
pub mod mat3;
pub mod scalar;

pub use cubic::{cubic_roots, elem_sym, Cubic, RootTriple};
pub use expm::{mat_exp, mat_log};
pub use krylov::{companion, cyclicity, similarity, CyclicityReport, DEFAULT_CYCLIC_TOL};
pub use mat3::{Mat3, Vec3};
pub use scalar::{c, omega, parse_complex, re, C64};

/// Classical adjoint of `m`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    m.adjugate()
}
