use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generators must be positive, got {0}")]
    NonPositiveGenerator(i64),
    #[error("gcd of generators is {0}, expected 1")]
    GcdNotOne(i64),
    #[error("{0} is not a member of the semigroup")]
    NotAMember(i64),
    #[error("genus {genus} exceeds the oversemigroup enumeration limit {limit}")]
    TooManyGaps { genus: usize, limit: usize },
    #[error("set is not closed under addition: {0}")]
    NotClosed(String),
    #[error("gluing parameter {0} must be odd")]
    AlphaEven(i64),
    #[error("gluing parameter {0} is not in the base semigroup")]
    AlphaNotInH1(i64),
    #[error("gluing parameter {0} is a minimal generator of the base semigroup")]
    AlphaIsGenerator(i64),
    #[error("relative ideals live over different semigroups")]
    BaseMismatch,
    #[error("relative ideal is empty")]
    EmptyIdeal,
    #[error("second ideal is not contained in the first (witness {0})")]
    NotContained(i64),
    #[error("ideal is not contained in the ring (witness {0})")]
    NotIntegral(i64),
    #[error("ideal is not primary to the maximal ideal")]
    NotPrimary,
    #[error("conditions of the 2-AGL characterization disagree: {0}")]
    InconsistentTheorem12(String),
    #[error("ring is not 2-AGL (Sally rank {0})")]
    NotTwoAgl(i64),
    #[error("ring is Gorenstein")]
    Gorenstein,
    #[error("ring is not Gorenstein")]
    NotGorenstein,
    #[error("overring is not admissible: {0}")]
    NotAdmissible(String),
    #[error("quasi-trivial extension is not local: {0}")]
    NotLocal(String),
    #[error("truncation order {n} is too small (need at least {needed})")]
    TruncationTooSmall { n: i64, needed: i64 },
    #[error("stabilization certificate failed: {0}")]
    StabilizationFailed(String),
    #[error("no reduction element found among {0} candidates")]
    NoReductionFound(usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree bound {0} exceeds the Macaulay matrix budget")]
    DegreeTooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element has a term t^{0} outside the ring")]
    NotInRing(i64),
    #[error("algebra axiom violated: {0}")]
    AlgebraAxiom(String),
    #[error("malformed corpus case {id}: {reason}")]
    MalformedCase { id: String, reason: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
