//! Scalar abstraction shared by every algebraic routine in the crate.
//!
//! The formulas, polynomials and linear algebra are written once against
//! [`Field`]. Exact work uses [`BigRational`] or the cyclotomic extension
//! [`crate::cyclo::Cyclo`] over it; `f64` is supported for quick approximate
//! evaluation.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative field with owned and by-reference arithmetic.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    /// Whether equality in this field is exact (false for floats).
    fn is_exact() -> bool {
        true
    }

    /// `self / rhs`, `None` when `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Whether `self` should be treated as zero when pivoting.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

/// Fields containing a primitive cube root of unity `ω`.
pub trait CubeRootField: Field {
    fn omega() -> Self;

    /// `ω^k` for any integer `k` (period 3).
    fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::omega(),
            _ => Self::omega() * Self::omega(),
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn is_exact() -> bool {
        false
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-12
    }
}

/// Conversion of exact rationals into an arbitrary field.
pub trait FromRational: Field {
    fn from_rational(r: &BigRational) -> Self;
}

impl FromRational for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl FromRational for f64 {
    fn from_rational(r: &BigRational) -> Self {
        use num_traits::ToPrimitive;
        r.to_f64().unwrap_or(f64::NAN)
    }
}

/// Rational `p/q` from machine integers.
pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optional sign on `p`).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rational(2, 3).pow(5), rational(32, 243));
        assert_eq!(rational(7, 1).pow(0), rational(1, 1));
        assert_eq!(3.0f64.pow(4), 81.0);
    }

    #[test]
    fn rational_text_round_trip() {
        for r in [rational(0, 1), rational(-3, 4), rational(12, 1)] {
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("2/-3"), None);
    }
}
