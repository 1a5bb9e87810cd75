use thiserror::Error;

/// Errors raised by grids, models, candidates, integrators and diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("field length {len} does not match grid size {n}")]
    FieldLength { len: usize, n: usize },
    #[error("spectral derivatives need a periodic grid")]
    SpectralOnNonPeriodic,
    #[error("derivative order {0} is not supported")]
    OrderUnsupported(u8),
    #[error("field is incompatible with model: {0}")]
    IncompatibleField(String),
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("threshold a = {0} must lie in (0, 1)")]
    ThresholdOutOfRange(f64),
    #[error("asymptotes reversed: f_plus = {f_plus} < f_minus = {f_minus}")]
    ReversedAsymptotes { f_plus: f64, f_minus: f64 },
    #[error("speed must be positive, got {0}")]
    NonpositiveSpeed(f64),
    #[error("amplitude must be positive, got {0}")]
    NonpositiveAmplitude(f64),
    #[error("invalid horizon: T = {horizon}, n_steps = {n_steps}")]
    InvalidHorizon { horizon: f64, n_steps: usize },
    #[error("time {t} outside path horizon [0, {horizon}]")]
    OutOfHorizon { t: f64, horizon: f64 },
    #[error("blow-up at t = {time}: {detail}")]
    Blowup { time: f64, detail: String },
    #[error("at least 3 refinement levels are required, got {0}")]
    InsufficientLevels(usize),
    #[error("candidate `{candidate}` does not belong to this model: {reason}")]
    CandidateModelMismatch { candidate: String, reason: String },
    #[error("missing parameters: {0}")]
    MissingParameters(String),
    #[error("stepper {scheme} cannot integrate a {interpretation} model")]
    InterpretationMismatch {
        scheme: &'static str,
        interpretation: &'static str,
    },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("stepper dt = {dt} does not match path step {path_dt}")]
    PathMismatch { dt: f64, path_dt: f64 },
    #[error("candidate has no ground truth (expected verdict is not Valid)")]
    NoGroundTruth,
    #[error("field never crosses level {0}")]
    NoCrossing(f64),
    #[error("no peak above the background")]
    NoPeak,
    #[error("zero modulus at reference point")]
    ZeroModulus,
    #[error("ensemble needs at least {required} paths, got {got}")]
    TooFewPaths { required: usize, got: usize },
    #[error("path {path_index}: {source}")]
    InPath {
        path_index: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True when this error (or the error it wraps) is a numerical blow-up.
    pub fn is_blowup(&self) -> bool {
        match self {
            Error::Blowup { .. } => true,
            Error::InPath { source, .. } => source.is_blowup(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
