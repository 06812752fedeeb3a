use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not orthogonal (max |S^T S - I| = {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("linear system is singular")]
    SingularSystem,

    /// Newton iteration ran out of iterations.
    #[error(
        "Riccati iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    /// A symmetric Riccati solution was found but it is not an HHD.
    #[error("Riccati solution violates tr(P) = -tr(A) (gap {trace_gap:e}, residual {residual:e})")]
    TraceViolation { trace_gap: f64, residual: f64 },

    #[error("DU is not symmetric (D does not commute with U; asymmetry {asymmetry:e})")]
    AsymmetricDu { asymmetry: f64 },

    #[error("gradient part P is singular (condition estimate {condition:e})")]
    SingularGradient { condition: f64 },

    #[error("no skew-symmetric Q satisfies QP + HD = O (residual {residual:e})")]
    NoSkewSolution { residual: f64 },

    #[error("D does not commute with P (max |DP - PD| = {commutator:e})")]
    NonCommuting { commutator: f64 },

    #[error("gauge term has a z-dependent monomial z^{m} zbar^{k}")]
    NotAntiholomorphic { m: u32, k: u32 },

    #[error("no strictly orthogonal HHD by the cubic construction: condition value {value:e}")]
    QuadraticCondition { value: f64 },

    #[error("b = 0 branch: no single-term gauge works (|c| = {c_abs:e})")]
    QuadraticDegenerate { c_abs: f64 },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("empty sampling grid")]
    EmptyGrid,

    #[error("invalid field specification: {0}")]
    InvalidSpec(String),
}
