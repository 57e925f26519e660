use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),

    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),

    #[error("literal `{literal}` is not an element of {field}")]
    LiteralNotInField { literal: String, field: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator index {index} out of range for degree {degree}")]
    IndexOutOfRange { degree: usize, index: usize },

    #[error("differential is undefined in degree 0")]
    DegreeZeroDifferential,

    #[error("slot {slot} of a degree-{degree} cochain must lie in e{origin}·Λ·e{terminus}, got `{value}`")]
    SlotTyping {
        degree: usize,
        slot: usize,
        origin: u8,
        terminus: u8,
        value: String,
    },

    #[error("a degree-{degree} cochain has {expected} slots, got {got}")]
    SlotCount { degree: usize, expected: usize, got: usize },

    #[error("cochain of degree {0} is not a cocycle")]
    NotCocycle(usize),

    #[error("degree {requested} exceeds the cap of {cap}")]
    DegreeTooLarge { requested: usize, cap: usize },

    #[error("the monomial map needs q = 1 or q = -1")]
    QNotPlusMinusOne,

    #[error("nilpotent class has no monomial")]
    NilpotentClass,

    #[error("class has e1-support in slots {0:?}, which map outside k ⊕ k[x^2,y^2]y^2")]
    OutsideMonomialImage(Vec<usize>),

    #[error("bar word `{0}` is not vertex-composable")]
    NotComposable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
