use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid mass {0}: must be strictly positive and finite")]
    InvalidMass(f64),

    #[error("momentum is not on shell: p.p = {dot}, expected {expected}")]
    InconsistentMomentum { dot: f64, expected: f64 },

    #[error("axis {0:?} is not a unit vector")]
    InvalidAxis([f64; 3]),

    #[error("invalid rapidity {0}: must be finite and non-negative")]
    InvalidRapidity(f64),

    #[error("omega is not antisymmetric (max |w + w^T| = {0:e})")]
    InvalidOmega(f64),

    #[error("matrix is not a proper orthochronous Lorentz transformation: {0}")]
    NotLorentz(String),

    #[error("polar decomposition failed: rotation residual {0:e}")]
    DecompositionFailure(f64),

    #[error("index {0} out of range 0..=3")]
    IndexOutOfRange(usize),

    #[error("matrix is not in SU(2): {0}")]
    NotSu2(String),

    #[error(
        "both particles occupy the same mode; the symmetric Bell components vanish by exclusion"
    )]
    PauliDegenerate,

    #[error("matrix is not antisymmetric (max |C + C^T| = {0:e})")]
    NotAntisymmetric(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("distinct momenta collapsed onto the same grid point {0:?}; refine the grid step")]
    GridCollision([i64; 3]),

    #[error("state has {found} particles in a term, limit is {limit}")]
    TooManyParticles { found: usize, limit: usize },

    #[error("state does not have a fixed particle number")]
    MixedParticleNumber,

    #[error("cannot reduce an {n}-particle density matrix to {m} particles")]
    InvalidReduction { n: usize, m: usize },

    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),

    #[error("state normalization violated: {0}")]
    Normalization(String),

    #[error("alpha must be non-zero")]
    ZeroAlpha,

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error(
        "wavefunction leaks through the grid boundary (max amplitude {0:e} on the outer shells)"
    )]
    BoundaryLeak(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("analytic derivatives requested but the wavefunction carries no closure")]
    MissingClosure,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown tolerance name `{0}`")]
    UnknownTolerance(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
