use alloc::string::String;

/// Every failure the library reports. [`Error::name`] gives the stable
/// identifier printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dart {dart} appears {count} times (expected exactly once) in the {part}")]
    DartMultiplicity { dart: u32, count: usize, part: &'static str },
    #[error("vertex {vertex} lists {found} darts, expected 4")]
    BadDegree { vertex: usize, found: usize },
    #[error("Euler characteristic {chi} is not that of a closed oriented surface of genus >= 1")]
    BadEuler { chi: i64 },
    #[error("the rotation system has {components} connected components")]
    Disconnected { components: usize },
    #[error("a wall system needs at least one vertex")]
    NoVertices,
    #[error("first homology has torsion or wrong rank ({detail})")]
    TorsionDetected { detail: String },
    #[error("walk is not closed at step {step}")]
    OpenWalk { step: usize },
    #[error("walk refers to edge {edge}, but the map has {edges} edges")]
    UnknownEdge { edge: usize, edges: usize },
    #[error("the given cycles do not form a basis of H1 (determinant {determinant})")]
    NotABasis { determinant: String },
    #[error("expected {expected} values, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("resource limit reached: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("coorientation is not Eulerian at vertex {vertex}")]
    NotEulerian { vertex: usize },
    #[error("the dual graph is not bipartite: [gamma]_2 is nonzero")]
    NotBipartite,
    #[error("the class set spans dimension {dim}, expected {expected}")]
    DegenerateBall { dim: usize, expected: usize },
    #[error("no closed walk of the requested class inside truncation radius {radius}")]
    BoxExceeded { radius: usize },
    #[error("oracle value still changing at truncation radius {radius}")]
    UnstableTruncation { radius: usize },
    #[error("class is not realizable: {reason}")]
    NotRealizable { reason: NotRealizableReason },
    #[error("operation needs a genus-1 map, got rank {rank}")]
    WrongGenus { rank: usize },
    #[error("the class set is empty")]
    EmptyClassSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotRealizableReason {
    OutsideBall,
    Parity,
    /// Eikonal construction did not verify and lookup was disabled.
    EikonalFailed,
}

impl core::fmt::Display for NotRealizableReason {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            NotRealizableReason::OutsideBall => "outside-ball",
            NotRealizableReason::Parity => "parity",
            NotRealizableReason::EikonalFailed => "eikonal-failed",
        })
    }
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::DartMultiplicity { .. } => "DartMultiplicity",
            Error::BadDegree { .. } => "BadDegree",
            Error::BadEuler { .. } => "BadEuler",
            Error::Disconnected { .. } => "Disconnected",
            Error::NoVertices => "NoVertices",
            Error::TorsionDetected { .. } => "TorsionDetected",
            Error::OpenWalk { .. } => "OpenWalk",
            Error::UnknownEdge { .. } => "UnknownEdge",
            Error::NotABasis { .. } => "NotABasis",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::NotEulerian { .. } => "NotEulerian",
            Error::NotBipartite => "NotBipartite",
            Error::DegenerateBall { .. } => "DegenerateBall",
            Error::BoxExceeded { .. } => "BoxExceeded",
            Error::UnstableTruncation { .. } => "UnstableTruncation",
            Error::NotRealizable { .. } => "NotRealizable",
            Error::WrongGenus { .. } => "WrongGenus",
            Error::EmptyClassSet => "EmptyClassSet",
        }
    }
}
