use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relation {index} is not in the span of the generators")]
    RelationNotInSpan { index: usize },
    #[error("matrix is not an involution over F2")]
    NotInvolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("generator has order {actual:?}, expected {expected}")]
    WrongOrder { expected: usize, actual: Option<usize> },
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("generated group exceeds {cap} elements")]
    NotFinite { cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not cyclic on the given generator")]
    NotCyclic,
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("element is not a unit (determinant {det})")]
    NotAUnit { det: String },
    #[error("lattice is not cyclotomic")]
    NotCyclotomic,
    #[error("coinvariant quotient is not an elementary abelian p-group")]
    NotElementary,

    #[error("structure has an infinite cyclic factor")]
    InfiniteFactor,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain is not a 2-cycle")]
    NotA2Cycle,
    #[error("coefficients are not integral")]
    NonIntegralCoefficients,

    #[error("phase function violates the group-compatibility condition at ({g}, {h})")]
    NotACocycle { g: String, h: String },
    #[error("class is not killed by {modulus}; no representative with that modulus")]
    NotKilled { modulus: u64 },
    #[error("phase at {element} is nonzero on a vector it fixes")]
    HypothesisFails { element: String },
    #[error("translation vector q has q·g − q ∉ L for g = {element}")]
    NotIntegralTranslation { element: String },
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("moduli are incompatible: {0}")]
    ModulusMismatch(String),

    #[error("lattice has no embedding")]
    NoEmbedding,
    #[error("descriptor: {0}")]
    Descriptor(String),
}
