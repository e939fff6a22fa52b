use thiserror::Error;

/// Errors produced by hypergraph operations, generators, solvers and bound
/// calculators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An edge does not contain exactly one vertex per part.
    #[error("edge {edge_index} has {got} offsets, expected one per part (k = {expected})")]
    EdgeArityMismatch {
        edge_index: usize,
        expected: usize,
        got: usize,
    },

    /// A vertex offset exceeds the size of its part.
    #[error("offset {offset} out of range for part {part} (size {size})")]
    OffsetOutOfRange {
        part: usize,
        offset: usize,
        size: usize,
    },

    /// A vertex subset contains two vertices of the same part.
    #[error("malformed subset: parts must be distinct, part {part} repeated")]
    MalformedSubset { part: usize },

    /// A subset-size argument lies outside its valid range.
    #[error("arity out of range: {what} = {got} not in [{min}, {max}]")]
    ArityOutOfRange {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },

    /// An operation that peels off a part was applied to a 1-partite instance.
    #[error("arity too small: operation requires k >= 2, instance has k = 1")]
    ArityTooSmall,

    /// A prefix length exceeds the size of the selection part.
    #[error("prefix too long: requested {requested} heaviest vertices, part has {part_size}")]
    PrefixTooLong {
        requested: usize,
        part_size: usize,
    },

    /// The instance violates a non-increasing part-size precondition.
    #[error("instance not normalized: part sizes must be non-increasing")]
    NotNormalized,

    /// The exact solver exceeded its node budget.
    #[error("node budget exceeded: {budget} branch nodes explored without closing the search")]
    BudgetExceeded { budget: u64 },

    /// The padding construction would require a fractional vertex count.
    #[error(
        "non-integral padding: eps/(1-eps) * n/k = {num}/{den} vertices per part; \
         nearest feasible eps is {suggestion}"
    )]
    NonIntegralPadding {
        num: String,
        den: String,
        suggestion: String,
    },

    /// The padding construction requires a balanced input.
    #[error("not balanced: all parts must have equal size, got {sizes:?}")]
    NotBalanced { sizes: Vec<usize> },

    /// A numeric parameter lies outside the formula's stated domain.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
