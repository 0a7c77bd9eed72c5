use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::modular::gcd;

/// Reduced fraction `num/den` in `[0, 1)` standing for `exp(2πi·num/den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle {
    num: u64,
    den: u64,
}

impl RationalAngle {
    pub const ZERO: Self = Self { num: 0, den: 1 };
    pub const HALF: Self = Self { num: 1, den: 2 };

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "angle denominator must be positive");
        let n = num.rem_euclid(den as i64) as u64;
        if n == 0 {
            return Self::ZERO;
        }
        let g = gcd(n, den);
        Self {
            num: n / g,
            den: den / g,
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Multiplies the angle by an integer (raises the root of unity to a power).
    pub fn scale(self, k: i64) -> Self {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Self::new(n as i64, self.den)
    }

    /// Complex embedding; exact for the fourth roots of unity.
    pub fn to_complex(self) -> Complex64 {
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            (n, d) => {
                // angles above 1/2 are taken as negative so conjugates embed symmetrically
                let signed = if 2 * n > d {
                    n as f64 - d as f64
                } else {
                    n as f64
                };
                let theta = TAU * signed / d as f64;
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }
}

impl Add for RationalAngle {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let den = self.den / gcd(self.den, rhs.den) * rhs.den;
        let num =
            self.num as u128 * (den / self.den) as u128 + rhs.num as u128 * (den / rhs.den) as u128;
        Self::new((num % den as u128) as i64, den)
    }
}

impl Neg for RationalAngle {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }
}

impl Sub for RationalAngle {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalisation() {
        assert_eq!(RationalAngle::new(2, 4), RationalAngle::HALF);
        assert_eq!(RationalAngle::new(-1, 3), RationalAngle::new(2, 3));
        assert_eq!(RationalAngle::new(6, 3), RationalAngle::ZERO);
        assert_eq!(RationalAngle::ZERO.denominator(), 1);
        assert_eq!(RationalAngle::new(3, 4).to_string(), "3/4");
    }

    #[test]
    fn exact_embeddings() {
        assert_eq!(RationalAngle::HALF.to_complex(), Complex64::new(-1.0, 0.0));
        assert_eq!(
            RationalAngle::new(1, 4).to_complex(),
            Complex64::new(0.0, 1.0)
        );
        let w = RationalAngle::new(1, 3).to_complex();
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn addition_matches_multiplication_of_roots(a in -500i64..500, b in -500i64..500, d1 in 1u64..60, d2 in 1u64..60) {
            let x = RationalAngle::new(a, d1);
            let y = RationalAngle::new(b, d2);
            let lhs = (x + y).to_complex();
            let rhs = x.to_complex() * y.to_complex();
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert_eq!(x - x, RationalAngle::ZERO);
            prop_assert!(((-x).to_complex() - x.to_complex().conj()).norm() == 0.0);
        }
    }
}
