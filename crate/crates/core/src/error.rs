use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation {text:?}: {reason}")]
    MalformedCycle { text: String, reason: String },
    #[error("point {point} out of range [1, {degree}]")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection on [1, {0}]")]
    NotABijection(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("degree {degree} exceeds cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("group is not transitive on [1, {0}]")]
    NotTransitive(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("invalid coset ordering: {0}")]
    InvalidOrdering(String),
    #[error("degenerate coset system: {0}")]
    Degenerate(String),
    #[error("index {index} out of range [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("trivial group has no non-identity elements")]
    TrivialGroup,
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("point has {found} coordinates, polynomial has {expected} variables")]
    PointLengthMismatch { expected: usize, found: usize },
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("exponent vector has length {found}, expected r = {expected}")]
    VectorLengthMismatch { expected: usize, found: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("coordinate bound {bound} is below 2 * degree bound {degree}")]
    BoundTooSmall { bound: String, degree: usize },
    #[error("symbolic determinant gate exceeded: n = {n} > {gate}")]
    GateExceeded { n: usize, gate: usize },
    #[error("malformed certificate: {0}")]
    Certificate(String),
}
