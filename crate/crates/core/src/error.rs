use thiserror::Error;

/// Errors raised by the arithmetic, character and regulator routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {modulus}: {reason}")]
    InvalidModulus { modulus: u64, reason: &'static str },

    #[error("{value} is not coprime to the modulus {modulus}")]
    NotCoprime { value: i64, modulus: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("modulus {0} is even; an odd prime power is required")]
    EvenModulus(u64),

    #[error("modulus {0} is congruent to 2 mod 4")]
    ModulusTwoMod4(u64),

    #[error("character {0} is not primitive")]
    ImprimitiveCharacter(String),

    #[error("character {0} is principal")]
    PrincipalCharacter(String),

    #[error("character {label} is invalid: {reason}")]
    InvalidCharacter { label: String, reason: String },

    #[error("cannot parse character label {0:?}")]
    ParseLabel(String),

    #[error("series did not reach tolerance {tolerance:e} within {budget} terms (error estimate {estimate:e})")]
    ConvergenceBudget {
        tolerance: f64,
        budget: usize,
        estimate: f64,
    },

    #[error("series for character {0} does not converge")]
    Divergent(String),

    #[error("group of order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },

    #[error("function has {got} values but the group has order {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("character {label} has conductor {conductor}, equal to the modulus")]
    AlreadyPrimitive { label: String, conductor: u64 },

    #[error("character {0} is odd; an even character is required")]
    OddCharacter(String),

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
