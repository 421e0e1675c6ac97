use thiserror::Error;

/// Everything that can go wrong across the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// The input samples cannot form a usable signal.
    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    /// A probability vector violates the distribution invariants.
    #[error("invalid energy distribution: {0}")]
    InvalidDistribution(String),

    /// The band maps to an empty bin range on this spectrum.
    #[error("band {f_lo_hz}:{f_hi_hz} Hz covers no spectrum bins")]
    ZeroWidthBand { f_lo_hz: f64, f_hi_hz: f64 },

    /// The band maps to fewer than two bins, too few for an entropy.
    #[error("band {f_lo_hz}:{f_hi_hz} Hz covers fewer than two spectrum bins")]
    DegenerateBand { f_lo_hz: f64, f_hi_hz: f64 },

    /// The band holds no energy at all.
    #[error("band {f_lo_hz}:{f_hi_hz} Hz carries zero energy")]
    ZeroEnergyBand { f_lo_hz: f64, f_hi_hz: f64 },

    /// The requested decomposition level splits some band below two bins.
    #[error("level {requested} is too deep for this spectrum; deepest supported level is {max}")]
    LevelTooDeep { requested: u32, max: u32 },

    /// A parameter or option is out of range or missing.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A text input failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A binary input is in a shape this tool does not read.
    #[error("unsupported format: {0}")]
    Format(String),

    /// A report was written by an incompatible tool generation.
    #[error("unsupported report schema version {found}; this build reads major version {expected}")]
    SchemaVersion { found: String, expected: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
