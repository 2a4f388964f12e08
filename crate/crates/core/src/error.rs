use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error(
        "Hilbert-space dimension {dim} exceeds the configured maximum {max} \
         (dense storage would need about {mib} MiB)"
    )]
    DimensionOverflow { dim: usize, max: usize, mib: usize },

    #[error("Fock cutoff n_max={n_max} too small for coherent amplitude |alpha|={alpha:.3}; need n_max >= {required}")]
    CutoffTooSmall {
        n_max: usize,
        alpha: f64,
        required: usize,
    },

    #[error("iterative eigensolver did not converge: {0}")]
    NonConvergence(String),

    #[error("ambiguous ground-manifold grouping: candidate sizes {primary} and {alternate}")]
    AmbiguousManifold { primary: usize, alternate: usize },

    #[error("ground-manifold tracking lost at loop step {step}: best overlap {overlap:.4} < 0.7")]
    TrackingLoss { step: usize, overlap: f64 },

    #[error("gapless point, energy formula's zero-point sum ill-conditioned")]
    GaplessEnergy,

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
