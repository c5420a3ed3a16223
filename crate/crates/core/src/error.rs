use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not cyclic (krylov smin {smin:.3e} <= tol {tol:.1e})")]
    NotCyclic { smin: f64, tol: f64 },

    #[error("spectra differ: max |sigma(M) - sigma(N)| = {gap:.3e}")]
    SpectraMismatch { gap: f64 },

    #[error("matrix is singular")]
    SingularInput,

    #[error("eigenvalue {re}+{im}i lies on the principal branch cut")]
    BranchCut { re: f64, im: f64 },

    #[error("inverse scaling and squaring did not reach the series radius")]
    LogNotConverged,

    #[error("third disc component is not flat at the origin (|c0|+|c1| = {0:.3e})")]
    Phi3NotFlat(f64),

    #[error("disc does not pass through the origin (|phi(0)| = {0:.3e})")]
    NotThroughOrigin(f64),

    #[error("disc endpoint misses the target by {0:.3e}")]
    EndpointMismatch(f64),

    #[error("disc is not admissible: {0}")]
    NotAdmissible(String),

    #[error("disc is not in theta form: {0}")]
    ThetaFormViolated(String),

    #[error("no admissible disc found within the budget")]
    NoFeasiblePoint,

    #[error("parameter t must be nonzero")]
    ZeroT,

    #[error("degree-two annihilating polynomial fit failed (residual {0:.3e})")]
    NotDegreeTwo(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse complex literal {0:?}")]
    Parse(String),
}
