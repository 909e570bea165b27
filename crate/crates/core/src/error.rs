//! Error type shared by every solver module.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All the ways a solver operation can refuse or fail.
///
/// Variants split into two rough classes: *rejections* of invalid input
/// (bad quantum numbers, unsupported potential/coupling combinations,
/// supercritical couplings) and *numerical failures* at runtime (no bound
/// state found, quadrature or iteration did not converge). Callers that map
/// errors to process exit codes can rely on that split.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the operation's domain (negative radius,
    /// energy above the continuum threshold, bad tolerance, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Quantum-number constraints violated (e.g. m > l).
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    /// Potential parameters violate the model invariants
    /// (negative coupling, missing string tension, ...).
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    /// A vector-coupled Coulomb term with alpha > l + 1/2 has no real
    /// centrifugal index; every solver operation rejects it.
    #[error("supercritical coupling: alpha = {alpha} exceeds l + 1/2 = {limit}")]
    SupercriticalCoupling { alpha: f64, limit: f64 },

    /// A confining potential added to the full energy (vector coupling)
    /// leaves no decaying solution at large r.
    #[error("non-normalizable (vector confinement)")]
    VectorConfinement,

    /// The effective squared momentum is non-positive everywhere at this
    /// trial energy: there is nothing to quantize.
    #[error("no bound region at this E = {energy}")]
    NoBoundRegion { energy: f64 },

    /// The eigenvalue search exhausted its energy window.
    #[error("no bound state with these quantum numbers: {0}")]
    NoBoundState(String),

    /// Panel-doubling quadrature hit its refinement cap before reaching the
    /// requested tolerance; the achieved error estimate is carried along.
    #[error("quadrature did not converge (error estimate {estimate:e})")]
    QuadratureNonConvergence { estimate: f64 },

    /// An iterative scheme (root polish, fixed point, shooting) ran out of
    /// iterations.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// A closed form produced a value outside its physical range
    /// (e.g. negative squared mass after the constituent shift).
    #[error("unphysical result: {0}")]
    Unphysical(String),

    /// Least-squares fit attempted on data without enough independent
    /// abscissas.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    /// Malformed record data (CSV ingestion).
    #[error("invalid record: {0}")]
    InvalidRecord(String),

    /// An operation was called on a state it does not support
    /// (e.g. standing-wave form outside the scalar Coulomb case).
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors caused by invalid *input* (as opposed to numerical
    /// failure at runtime). Used by front ends to pick exit codes.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::InvalidQuantumNumbers(_)
                | Error::InvalidPotential(_)
                | Error::SupercriticalCoupling { .. }
                | Error::VectorConfinement
                | Error::InvalidRecord(_)
                | Error::Unsupported(_)
        )
    }
}
