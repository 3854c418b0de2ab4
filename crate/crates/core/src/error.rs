use thiserror::Error;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is outside the supported range [2, 2^61)")]
    PrimeOutOfRange(u64),
    #[error("invalid reduction polynomial: {0}")]
    InvalidReductionPoly(&'static str),
    #[error("reduction polynomial is reducible over the prime field")]
    ReduciblePoly,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("0^0 is undefined")]
    ZeroToTheZero,
    #[error("curve is singular (4a^3 + 27b^2 = 0)")]
    SingularCurve,
    #[error("short Weierstrass form needs characteristic > 3")]
    UnsupportedCharacteristic,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("{what} is too large for desk-scale computation")]
    TooLarge { what: &'static str },
    #[error("evaluation point lies in the support of the line function")]
    SupportCollision,
    #[error("element has a non-zero A-component and is not in the image of iota")]
    NotInImage,
    #[error("invalid modulus: {0}")]
    InvalidModulus(&'static str),
    #[error("group order is inconsistent with the element (n*P != 0)")]
    OrderMismatch,
    #[error("invalid factorization: {0}")]
    InvalidFactorization(&'static str),
    #[error("cocycle is not normalized (g(0) != 0)")]
    NotNormalized,
    #[error("coboundary table has no entry for an element")]
    MissingTableEntry,
    #[error("generator does not have prime order {0}")]
    NotOfPrimeOrder(u64),
    #[error("target is not in the subgroup generated by the base")]
    NoSolution,
    #[error("m*(P,1) did not land in the image of iota; order data is wrong")]
    ChainNotClosed,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
