use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    MalformedModulus { expected: u32, p: u32 },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("field of order {p}^{h} is too large")]
    FieldTooLarge { p: u32, h: u32 },
    #[error("malformed matrix: {rows}x{cols} with {len} entries")]
    MalformedMatrix { rows: usize, cols: usize, len: usize },
    #[error("matrix entry {value} is not a residue mod {p}")]
    NonCanonicalEntry { value: u32, p: u32 },

    #[error("projective dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("{what} count {count} exceeds the cap of {cap}")]
    ResourceCap { what: &'static str, count: u128, cap: u128 },
    #[error("vector has wrong length or is zero")]
    BadVector,
    #[error("points are identical")]
    SamePoint,
    #[error("basis points are linearly dependent")]
    DependentBasis,
    #[error("index {index} out of range for {what} (size {size})")]
    IndexOutOfRange { what: &'static str, index: u64, size: u64 },

    #[error("characteristic {0} does not fit the codeword alphabet (p < 256 required)")]
    UnsupportedCharacteristic(u32),
    #[error("codeword length {got} does not match space size {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("hyperplane {0} is not a term of the decomposition")]
    NotATerm(u32),

    #[error("bound functions need h >= 2 (got h = {0})")]
    PrimeFieldBounds(u32),
    #[error("parameter {name} = {value} outside {range}")]
    ParameterRange { name: &'static str, value: i64, range: String },
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("no decomposition: residual weight {residual_weight} after {peels} peels")]
    NoDecomposition { residual_weight: usize, peels: usize },
    #[error("partition does not cover the decomposition's hyperplanes exactly")]
    MalformedPartition,
    #[error("witness precondition violated: {holes} exceptional holes, {blocks} blocks")]
    WitnessPrecondition { holes: usize, blocks: usize },
    #[error("internal invariant failed: {0}")]
    Internal(&'static str),
    #[error("fixture needs {0}")]
    FixtureParameters(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
