use std::path::PathBuf;

/// Errors surfaced by fallible operations.
///
/// Structural misuse inside the algebra (mixing moduli in scalar
/// arithmetic, composing relations with mismatched dimensions) panics
/// instead; those are programming errors, not recoverable conditions.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^16")]
    ModulusTooLarge(u64),
    #[error("cannot invert zero in GF({0})")]
    ZeroInverse(u32),
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("entry {value} out of range for GF({p})")]
    EntryOutOfRange { value: i64, p: u32 },
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("relation is not single-valued and total, cannot extract a matrix")]
    NotAMapping,
    #[error(
        "relation has domain dimension {dom} and codomain dimension {cod}, not an endorelation"
    )]
    NotEndo { dom: usize, cod: usize },
    #[error("relation does not commute with the endomorphisms, not a morphism between the given objects")]
    NotAMorphism,
    #[error("objects live over different fields: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("spider orbit bound {0} outside the supported range 1..=8")]
    SpiderOrbitBound(usize),
    #[error("power index {k} outside the checkable range 1..={max}")]
    SpiderPowerRange { k: usize, max: usize },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
