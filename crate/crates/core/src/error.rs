use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial division by the zero polynomial")]
    ZeroPolynomialDivisor,

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("cyclotomic order must be positive")]
    ZeroOrder,

    #[error("cyclotomic orders differ ({0} vs {1}) and neither operand is rational")]
    OrderMismatch(usize, usize),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("representative is not coprime to the cyclotomic polynomial of order {0}")]
    NonUnitGcd(usize),

    #[error("exponent {exponent} is not a unit modulo {order}")]
    NotAUnit { exponent: i64, order: usize },

    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(usize),

    #[error("argument lies within the pole margin: {0}")]
    NearPole(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    /// The parameters fall outside the hypotheses of the identity.
    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("could not parse {0:?}")]
    Parse(String),
}
