use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Gamma function evaluated within machine tolerance of a pole
    /// (z = 0, -1, -2, ...).
    #[error("gamma pole at z = {re}{im:+}i (nonpositive integer)")]
    GammaPole { re: f64, im: f64 },

    /// Polynomial degree beyond what the explicit-sum evaluation supports.
    #[error("polynomial degree {n} exceeds supported maximum {max}")]
    DegreeTooLarge { n: i64, max: i64 },

    /// The exceptional-polynomial prefactor 1/(alpha + 1 + n) is singular.
    #[error("degenerate prefactor: alpha + 1 + n = {value:e} vanishes")]
    DegeneratePrefactor { value: f64 },

    /// Deformation parameter inside the forbidden interval [-1, 0].
    #[error("lambda = {lambda} lies in the excluded interval [-1, 0]")]
    InvalidLambda { lambda: f64 },

    /// A polynomial denominator vanishes on the requested domain.
    #[error("denominator vanishes near x = {x} (|P| = {magnitude:e})")]
    SingularDenominator { x: f64, magnitude: f64 },

    /// The requested operation is not defined for this potential family.
    #[error("not defined for this potential family: {0}")]
    Unsupported(String),

    /// Bound-state index at or beyond the number of bound states.
    #[error("state index {n} out of range; family has {count} bound states")]
    IndexOutOfRange { n: u32, count: u32 },

    /// Malformed argument (non-finite value, empty grid, bad step, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Scattering channel is evanescent: k^2 must exceed both asymptotic
    /// superpotential values squared.
    #[error("evanescent channel: k^2 = {k_sq} does not exceed max(W_-^2, W_+^2) = {w_sq}")]
    EvanescentChannel { k_sq: f64, w_sq: f64 },

    /// The potential has not decayed enough at the integration boundary.
    #[error("integration box too small: |V(+-{l})| = {tail:e} exceeds {bound:e} at k = {k}")]
    DomainTooSmall {
        l: f64,
        tail: f64,
        bound: f64,
        k: f64,
    },

    /// Halving the step changed the scattering amplitudes too much.
    #[error("step-halving check failed for {quantity}: |delta| = {delta:e} at k = {k}")]
    NoConvergence {
        quantity: &'static str,
        delta: f64,
        k: f64,
    },

    /// Adaptive quadrature hit its depth limit before reaching tolerance.
    #[error("quadrature failed to reach tolerance {tol:e} (residual estimate {best:e})")]
    QuadratureFailure { tol: f64, best: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
