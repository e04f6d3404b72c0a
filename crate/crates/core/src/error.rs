use thiserror::Error;

#[derive(Debug, Error)]
pub enum SkeinError {
    #[error("slot underflow at event {event}: position {pos} needs two strands but only {count} present")]
    SlotUnderflow { event: usize, pos: usize, count: usize },

    #[error("slot overflow at event {event}: position {pos} is out of range for {count} strands")]
    SlotOverflow { event: usize, pos: usize, count: usize },

    #[error("puncture gap {gap} at event {event} is out of range for {count} strands")]
    GapOutOfRange { event: usize, gap: usize, count: usize },

    #[error("puncture gaps at event {event} must be strictly increasing")]
    UnsortedGaps { event: usize },

    #[error("strand count mismatch: diagram ends with {found} strands but top arity is {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("orientation inconsistency: {0}")]
    OrientationInconsistent(String),

    #[error("unbalanced marking: {incoming} incoming and {outgoing} outgoing endpoints")]
    UnbalancedMarking { incoming: usize, outgoing: usize },

    #[error("diagram is not oriented")]
    Unoriented,

    #[error("event {event} is not a crossing")]
    NotACrossing { event: usize },

    #[error("diagram has crossings; a crossingless diagram is required")]
    NotCrossingless,

    #[error("winding number {winding} of component {component} around puncture {puncture} is not in {{-1, 0, 1}}")]
    WindingOutOfRange { component: usize, puncture: usize, winding: i64 },

    #[error("tangles with boundary are only supported without punctures (found {genus} punctures)")]
    TangleWithPunctures { genus: usize },

    #[error("operation requires a closed diagram")]
    NotClosed,

    #[error("operation requires a diagram without punctures")]
    NotPlanar,

    #[error("crossing count {count} exceeds the bound {bound}")]
    CrossingBound { count: usize, bound: usize },

    #[error("classical normalization is undefined for the empty diagram")]
    EmptyNormalization,

    #[error("non-integral half-power of t: exponent {exponent} of A is odd")]
    NonIntegralHalfPower { exponent: i64 },

    #[error("{m} does not divide {n}")]
    NotADivisor { n: u64, m: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported gluing: {0}")]
    UnsupportedGluing(String),

    #[error("gluing mismatch: {0}")]
    GlueMismatch(String),

    #[error("invalid location: {0}")]
    InvalidLocation(String),

    #[error("pattern mismatch at event {event}: expected {expected}")]
    PatternMismatch { event: usize, expected: &'static str },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SkeinError>;
