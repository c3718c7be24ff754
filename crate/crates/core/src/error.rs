use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyFactorList,
    TooFewLevels { factor: usize, count: usize },
    DuplicateLevel { factor: usize, level: String },
    IndexOutOfRange { factor: usize, index: usize, levels: usize },
    DimensionMismatch { expected: usize, found: usize },
    SingularMatrix,
    UnknownLevel { factor: usize, level: String },
    DuplicatePoint { point: String },
    WrongArity { expected: usize, found: usize },
    NotAnIndicator { run: usize, value: String },
    SupportOutsideDesign { exponents: String },
    ExponentTooLarge { exponents: String },
    InvalidStrength { strength: usize, factors: usize },
    IncompatibleSize { size: usize, strength: usize },
    DuplicateFraction,
    InvalidGroupElement(&'static str),
    UnknownFormat(String),
    ParseRational(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyFactorList => write!(f, "a design needs at least one factor"),
            Error::TooFewLevels { factor, count } => {
                write!(f, "factor {} has {} level(s); at least 2 are required", factor + 1, count)
            }
            Error::DuplicateLevel { factor, level } => {
                write!(f, "factor {} lists level {} more than once", factor + 1, level)
            }
            Error::IndexOutOfRange { factor, index, levels } => {
                write!(f, "index {} of factor {} is outside 1..={}", index, factor + 1, levels)
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}, found {}", expected, found)
            }
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::UnknownLevel { factor, level } => {
                write!(f, "{} is not a level of factor {}", level, factor + 1)
            }
            Error::DuplicatePoint { point } => write!(f, "design point {} is listed twice", point),
            Error::WrongArity { expected, found } => {
                write!(f, "expected {} coordinates per point, found {}", expected, found)
            }
            Error::NotAnIndicator { run, value } => {
                write!(f, "not an indicator function: value {} at run {}", value, run + 1)
            }
            Error::SupportOutsideDesign { exponents } => {
                write!(f, "monomial {} is not a standard monomial of the design", exponents)
            }
            Error::ExponentTooLarge { exponents } => {
                write!(f, "exponent vector {} cannot be named with single digits", exponents)
            }
            Error::InvalidStrength { strength, factors } => {
                write!(f, "strength {} is outside 0..={}", strength, factors)
            }
            Error::IncompatibleSize { size, strength } => write!(
                f,
                "incompatible size: {} is not a common multiple of the level-count products of \
                 every {} factor(s)",
                size, strength
            ),
            Error::DuplicateFraction => write!(f, "the same fraction appears more than once"),
            Error::InvalidGroupElement(why) => write!(f, "invalid group element: {}", why),
            Error::UnknownFormat(name) => write!(f, "unknown format {:?}", name),
            Error::ParseRational(s) => write!(f, "cannot parse {:?} as a rational number", s),
        }
    }
}

impl core::error::Error for Error {}
