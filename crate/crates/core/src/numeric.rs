//! Scalar types used by the regulator and determinant code.
//!
//! Regulator determinants at larger moduli lose many digits to cancellation,
//! so the log-embedding and determinant paths are generic over [`Real`] and
//! run either in `f64` or in an extended binary precision backed by
//! `astro-float`.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Field operations needed by Gaussian elimination.
pub trait Scalar: Clone + fmt::Debug {
    /// Construction context (working precision for extended values).
    type Ctx: Copy + fmt::Debug;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Absolute value, rounded to `f64` (used for pivot choice and norms).
    fn magnitude(&self) -> f64;
    fn is_zero(&self) -> bool;
}

/// Real scalars with the transcendental functions needed for log embeddings.
pub trait Real: Scalar + PartialOrd {
    fn from_f64(x: f64, ctx: Self::Ctx) -> Self;
    /// The rational `num/den`, correctly rounded at the working precision.
    fn from_ratio(num: i64, den: i64, ctx: Self::Ctx) -> Self;
    fn pi(ctx: Self::Ctx) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    type Ctx = ();

    fn zero(_: ()) -> Self {
        0.0
    }
    fn one(_: ()) -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _: ()) -> Self {
        x
    }
    fn from_ratio(num: i64, den: i64, _: ()) -> Self {
        num as f64 / den as f64
    }
    fn pi(_: ()) -> Self {
        std::f64::consts::PI
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Complex64 {
    type Ctx = ();

    fn zero(_: ()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one(_: ()) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

const ROUNDING: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

/// Arbitrary-precision real with a fixed binary precision in bits.
#[derive(Clone, Debug)]
pub struct Extended {
    value: BigFloat,
    bits: usize,
}

impl Extended {
    pub fn bits(&self) -> usize {
        self.bits
    }

    fn wrap(&self, value: BigFloat) -> Self {
        Self {
            value,
            bits: self.bits,
        }
    }

    fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
        CONSTS.with(|cc| f(&mut cc.borrow_mut()))
    }
}

impl PartialEq for Extended {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl Scalar for Extended {
    type Ctx = usize;

    fn zero(bits: usize) -> Self {
        Self {
            value: BigFloat::from_f64(0.0, bits),
            bits,
        }
    }
    fn one(bits: usize) -> Self {
        Self {
            value: BigFloat::from_f64(1.0, bits),
            bits,
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        self.wrap(self.value.add(&rhs.value, self.bits, ROUNDING))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.wrap(self.value.sub(&rhs.value, self.bits, ROUNDING))
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.wrap(self.value.mul(&rhs.value, self.bits, ROUNDING))
    }
    fn div(&self, rhs: &Self) -> Self {
        self.wrap(self.value.div(&rhs.value, self.bits, ROUNDING))
    }
    fn neg(&self) -> Self {
        self.wrap(self.value.neg())
    }
    fn magnitude(&self) -> f64 {
        Real::to_f64(self).abs()
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl Real for Extended {
    fn from_f64(x: f64, bits: usize) -> Self {
        Self {
            value: BigFloat::from_f64(x, bits),
            bits,
        }
    }
    fn from_ratio(num: i64, den: i64, bits: usize) -> Self {
        let n = BigFloat::from_i64(num, bits);
        let d = BigFloat::from_i64(den, bits);
        Self {
            value: n.div(&d, bits, ROUNDING),
            bits,
        }
    }
    fn pi(bits: usize) -> Self {
        Self {
            value: Self::with_consts(|cc| cc.pi(bits, ROUNDING)),
            bits,
        }
    }
    fn ln(&self) -> Self {
        self.wrap(Self::with_consts(|cc| {
            self.value.ln(self.bits, ROUNDING, cc)
        }))
    }
    fn sin(&self) -> Self {
        self.wrap(Self::with_consts(|cc| {
            self.value.sin(self.bits, ROUNDING, cc)
        }))
    }
    fn cos(&self) -> Self {
        self.wrap(Self::with_consts(|cc| {
            self.value.cos(self.bits, ROUNDING, cc)
        }))
    }
    fn abs(&self) -> Self {
        self.wrap(self.value.abs())
    }
    fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_inf_neg() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        let Some((words, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        // value = 0.mantissa * 2^exponent, top word holds the leading 64 bits
        let magnitude = top as f64 * 2f64.powi(exponent - 64);
        if sign == Sign::Neg {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// Working precision for regulator computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    /// At least this many significant decimal digits.
    Extended { digits: u32 },
}

impl Precision {
    /// `Double` up to 15 digits, extended above.
    pub fn from_digits(digits: u32) -> Result<Self> {
        match digits {
            0 => Err(Error::InvalidPrecision("digits must be positive".into())),
            1..=15 => Ok(Self::Double),
            16..=10_000 => Ok(Self::Extended { digits }),
            _ => Err(Error::InvalidPrecision(format!(
                "{digits} digits is too many"
            ))),
        }
    }

    /// Binary precision in bits: digits·log2(10) plus 32 guard bits, rounded up to whole words.
    pub fn bits(self) -> usize {
        match self {
            Self::Double => 53,
            Self::Extended { digits } => {
                let raw = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32;
                raw.div_ceil(64) * 64
            }
        }
    }

    pub fn digits(self) -> u32 {
        match self {
            Self::Double => 15,
            Self::Extended { digits } => digits,
        }
    }
}
