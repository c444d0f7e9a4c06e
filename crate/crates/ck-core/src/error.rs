use thiserror::Error;

/// Errors raised by the exact-algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CkError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("element is not invertible: unit part vanishes")]
    NotInvertible,
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is not nilpotent; exponential series does not terminate")]
    NotNilpotent,
    #[error("invalid permutation of {0} symbols")]
    InvalidPermutation(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid root label for this family")]
    InvalidLabel,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operation on null relation")]
    NullRelation,
    #[error("dimension mismatch composing relations: {0} vs {1}")]
    RelationDimMismatch(usize, usize),
    #[error("subspace is not maximal isotropic")]
    NotMaximalIsotropic,
    #[error("contraction spec not admissible: {0}")]
    InadmissibleSpec(String),
    #[error("bilinear form symmetry tags differ")]
    FormTagMismatch,
    #[error("spin solution space has dimension {0}, expected 1")]
    SpinDegenerate(usize),
    #[error("operator size {0} exceeds configured cap {1}")]
    DimensionCap(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not j-orthogonal")]
    NotOrthogonal,
}

pub type Result<T> = std::result::Result<T, CkError>;
