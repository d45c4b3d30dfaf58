use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}, got {got} coefficients")]
    ModulusShape { expected: u32, got: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("modulus coefficient {0} is not a residue modulo p")]
    ModulusDigit(u32),
    #[error("field of size {p}^{k} exceeds the supported limit 2^20")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("element encoding {0} is out of range for the field")]
    ElementOutOfRange(u64),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("a nonconstant polynomial is required")]
    ConstantPolynomial,
    #[error("degree {got} is below the required minimum {min}")]
    DegreeTooSmall { got: usize, min: usize },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("{what} = {got} exceeds the supported limit {limit}")]
    OverContract {
        what: &'static str,
        got: u64,
        limit: u64,
    },
    #[error("target field degree {target} is not a multiple of source degree {source_degree}")]
    EmbeddingDegree { source_degree: u32, target: u32 },
    #[error("resultant vanishes identically: the inputs share a common factor {0}")]
    ResidualCommonFactor(String),
    #[error("polynomial is affine linearized")]
    AffineLinearized,
    #[error("second Hasse derivative vanishes")]
    SecondHasseZero,
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
