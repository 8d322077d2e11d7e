use thiserror::Error;

/// Everything that can go wrong, split by the exit-code class the CLI maps it
/// to: [`Error::is_input_error`] means bad data (exit 2), the rest are
/// computational mismatches (exit 1).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid group: {0}")]
    Group(String),

    #[error("invalid module: {0}")]
    Module(String),

    #[error("d^2 != 0 at degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("differential at degree {degree} is not equivariant")]
    NotEquivariant { degree: i64 },

    #[error("invalid filtration: {0}")]
    Filtration(String),

    #[error("double complex invariant fails: {0}")]
    DoubleComplex(String),

    #[error("inconsistent spectral sequence pages: {0}")]
    Pages(String),

    #[error("invalid arrangement: {0}")]
    Arrangement(String),

    #[error("d1^2 != 0 at cell (p={p}, q={q})")]
    D1Squared { p: usize, q: usize },

    #[error("missing Gysin data for rows {rows:?}: {detail}")]
    MissingGysin { rows: Vec<usize>, detail: String },

    #[error("Gysin map mixes Hodge types: {0}")]
    HodgeMixing(String),

    #[error("invalid cover: {0}")]
    Cover(String),

    #[error("cocycle condition fails on 2-cell {0:?}")]
    Cocycle(Vec<usize>),

    #[error("Euler characteristics disagree: base {base}, l2 {l2}")]
    EulerMismatch { base: String, l2: String },

    #[error("equivariant and total-space cohomology disagree in degree {degree}: {equivariant} vs {total}")]
    CoverMismatch {
        degree: i64,
        equivariant: usize,
        total: usize,
    },

    #[error("not a subcomplex: {0}")]
    Subcomplex(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::EulerMismatch { .. } | Error::CoverMismatch { .. } | Error::Pages(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
