use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Division by a dual number whose real part is zero.
    #[error("divisor has zero real part and is not invertible")]
    DivisorNotInvertible,
    /// A lifted real function was evaluated outside its domain.
    #[error("{func} is undefined at real part {arg}")]
    DomainError { func: &'static str, arg: f64 },
    /// An operation produced NaN or infinity; silent propagation is forbidden.
    #[error("non-finite value produced in {context}")]
    NonFinite { context: &'static str },
    /// A direction vector required to be timelike was not.
    #[error("direction is not timelike")]
    NotTimelike,
    /// The dual vector is not a unit timelike point of the dual hyperbolic sphere.
    #[error("dual vector is not on the dual hyperbolic unit sphere")]
    NotOnH2,
    /// The dual vector is on neither dual unit sphere, so it represents no line.
    #[error("dual vector is not a unit point of either dual sphere")]
    NotUnitDual,
    /// sinh^2(psi) + tanh^2(sigma) vanished; the moving frame is undefined there.
    #[error("degenerate configuration: sinh^2(psi) + tanh^2(sigma) is not positive")]
    DegenerateConfiguration,
    /// A closed form with a coth(psi) term was evaluated at psi = 0.
    #[error("formula is singular at psi = 0")]
    SingularAtPsiZero,
    /// An inverse hyperbolic tangent argument left the open interval (-1, 1).
    #[error("argument {value} outside the open interval (-1, 1)")]
    OutOfDomain { value: f64 },
    /// A sample set cannot be tessellated into a surface mesh.
    #[error("sample grid does not form a complete 2-d slice: {reason}")]
    IncompleteSlice { reason: String },
    /// A grid axis specification is unusable.
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
