use thiserror::Error;

/// Errors produced by the solver, the frame builders, the generators and the
/// file readers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty input: at least one disk is required")]
    EmptyInput,

    #[error("point ({x}, {y}) is not on the disk boundary (off by {offset:e})")]
    NotOnBoundary { x: f64, y: f64, offset: f64 },

    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("degenerate basis: {size} tangent disk(s), three are required")]
    DegenerateBasis { size: usize },

    #[error("d* has non-positive radius; the instance is in the common-intersection case")]
    NotFramed,

    #[error("pivot disk {index} contains the center of d* (delta = {delta:e})")]
    PivotContainsCenter { index: usize, delta: f64 },

    #[error("index {index} out of range for {len} disks")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid disk: {0}")]
    InvalidDisk(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("generation exhausted after {attempts} attempts")]
    GenerationExhausted { attempts: u64 },

    #[error("sampler exhausted after {attempts} rejections")]
    SamplerExhausted { attempts: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
