use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    // Configuration
    #[error("missing required field `{0}`")]
    MissingField(String),
    #[error("invalid range for `{field}`: {message}")]
    InvalidRange { field: String, message: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    // Datasets
    #[error("bad magic number {found:#010x}, expected {expected:#010x}")]
    BadMagic { found: u32, expected: u32 },
    #[error("truncated file: {0}")]
    TruncatedFile(String),
    #[error("image count {images} does not match label count {labels}")]
    CountMismatch { images: usize, labels: usize },
    #[error("dataset has {examples} examples but {devices} devices")]
    TooFewExamples { examples: usize, devices: usize },
    #[error("shard is empty")]
    EmptyShard,

    // Model
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch between model updates")]
    ShapeMismatch,
    #[error("empty update list")]
    EmptyList,
    #[error("invalid aggregation weights: {0}")]
    InvalidWeights(String),

    // Topology / latency
    #[error("unknown device id {0}")]
    UnknownDevice(usize),
    #[error("probability {0} outside (0, 1)")]
    InvalidProbability(f64),
    #[error("self link {0} -> {0}")]
    SelfLink(usize),

    // Fitting
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("degenerate samples: all values equal")]
    DegenerateSamples,

    // Devices
    #[error("device type count {count} outside 1..={max}")]
    CountOutOfRange { count: usize, max: usize },

    // Selection / consensus
    #[error("empty candidate set")]
    EmptyCandidates,
    #[error("no stress sample for device {0}")]
    MissingStress(usize),
    #[error("participants {k} exceed network size {n}")]
    KExceedsN { k: usize, n: usize },
    #[error("no solution found within {0} attempts")]
    NotFound(u64),

    #[error("missing column `{0}`")]
    MissingColumns(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
