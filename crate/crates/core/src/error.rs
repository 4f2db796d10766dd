use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u64),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { modulus: u64, n: u32 },
    #[error("extension degree {0} is outside the supported range 1..=32")]
    FieldTooLarge(u32),
    #[error("subfield degree {d} does not divide extension degree {n}")]
    BadSubfield { d: u32, n: u32 },
    #[error("element {0:#x} does not belong to the field")]
    BadElement(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("a line needs two distinct points")]
    SamePoint,
    #[error("three of the frame points are collinear")]
    DegenerateFrame,
    #[error("lambda must lie outside {{0, 1}}")]
    BadLambda,
    #[error("q = {0} is too small (need q >= 4)")]
    SmallQ(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("line is a component of the curve")]
    LineInCurve,
    #[error("point is not on the line")]
    PointNotOnLine,
    #[error("curve is singular")]
    SingularCurve,
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator does not stabilize the curve")]
    BadGenerator,
    #[error("search space of {0} elements exceeds the enumeration guard")]
    TooLarge(u128),
    #[error("group element does not stabilize the line")]
    LineNotStable,
    #[error("no automorphism restricts to the given line map")]
    NoLift,
    #[error("Deuring-Shafarevich formula gives a non-integer p-rank")]
    NonIntegerResult,
    #[error("Deuring-Shafarevich formula gives a negative p-rank")]
    NegativePrank,
    #[error("genus {0} is below 2")]
    GenusTooSmall(u64),
    #[error("curve degree {0} is too small")]
    DegreeTooSmall(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
