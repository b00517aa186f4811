//! The quadratic extension `K(ω)` with `ω² + ω + 1 = 0`.
//!
//! Elements are stored as `re + om·ω`. Over the rationals this is the field
//! `Q(e^{2iπ/3})` in which every loop-model weight lives.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, CubeRootField, Field, FromRational};

/// `re + om·ω` over the base field `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cyclo<T> {
    pub re: T,
    pub om: T,
}

impl<T: Field> Cyclo<T> {
    pub fn new(re: T, om: T) -> Self {
        Cyclo { re, om }
    }

    pub fn from_base(re: T) -> Self {
        Cyclo { re, om: T::zero() }
    }

    /// Complex conjugate `re + om·ω²`.
    pub fn conj(&self) -> Self {
        Cyclo {
            re: self.re.clone() - &self.om,
            om: -self.om.clone(),
        }
    }

    /// `|x|² = re² − re·om + om²`, multiplicative.
    pub fn norm_sq(&self) -> T {
        self.re.clone() * &self.re - self.re.clone() * &self.om + self.om.clone() * &self.om
    }

    /// Multiplication by `ω`, cheaper than a full product.
    pub fn mul_omega(&self) -> Self {
        // (a + bω)ω = aω + b(−1 − ω)
        Cyclo {
            re: -self.om.clone(),
            om: self.re.clone() - &self.om,
        }
    }
}

/// `q^k` with `q = ω`.
pub fn q_power<T: Field>(k: i64) -> Cyclo<T> {
    match k.rem_euclid(3) {
        0 => Cyclo::one(),
        1 => Cyclo::new(T::zero(), T::one()),
        _ => Cyclo::new(-T::one(), -T::one()),
    }
}

/// Squared modulus, see [`Cyclo::norm_sq`].
pub fn cyclo_norm_sq<T: Field>(x: &Cyclo<T>) -> T {
    x.norm_sq()
}

/// Inverse with an explicit error on zero.
pub fn cyclo_inv<T: Field>(x: &Cyclo<T>) -> Result<Cyclo<T>> {
    x.inv().ok_or(Error::DivisionByZero)
}

impl<T: Field> Zero for Cyclo<T> {
    fn zero() -> Self {
        Cyclo::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }
}

impl<T: Field> One for Cyclo<T> {
    fn one() -> Self {
        Cyclo::new(T::one(), T::zero())
    }
}

impl<T: Field> Neg for Cyclo<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclo::new(-self.re, -self.om)
    }
}

impl<'a, T: Field> Add<&'a Cyclo<T>> for Cyclo<T> {
    type Output = Self;
    fn add(mut self, rhs: &'a Cyclo<T>) -> Self {
        self.re += &rhs.re;
        self.om += &rhs.om;
        self
    }
}

impl<'a, T: Field> Sub<&'a Cyclo<T>> for Cyclo<T> {
    type Output = Self;
    fn sub(mut self, rhs: &'a Cyclo<T>) -> Self {
        self.re -= &rhs.re;
        self.om -= &rhs.om;
        self
    }
}

impl<'a, T: Field> Mul<&'a Cyclo<T>> for Cyclo<T> {
    type Output = Self;
    fn mul(self, rhs: &'a Cyclo<T>) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let bd = self.om.clone() * &rhs.om;
        let re = self.re.clone() * &rhs.re - &bd;
        let om = self.re * &rhs.om + self.om * &rhs.re - bd;
        Cyclo::new(re, om)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident $atr:ident $am:ident),*) => {$(
        impl<T: Field> $tr for Cyclo<T> {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                $tr::$m(self, &rhs)
            }
        }
        impl<T: Field> $atr for Cyclo<T> {
            fn $am(&mut self, rhs: Self) {
                let lhs = take_zero(self);
                *self = $tr::$m(lhs, &rhs);
            }
        }
        impl<'a, T: Field> $atr<&'a Cyclo<T>> for Cyclo<T> {
            fn $am(&mut self, rhs: &'a Cyclo<T>) {
                let lhs = take_zero(self);
                *self = $tr::$m(lhs, rhs);
            }
        }
    )*};
}

fn take_zero<T: Field>(slot: &mut Cyclo<T>) -> Cyclo<T> {
    std::mem::replace(slot, Cyclo::zero())
}

forward_owned!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl<T: Field> Field for Cyclo<T> {
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq().inv()?;
        let c = self.conj();
        Some(Cyclo::new(c.re * &n, c.om * &n))
    }

    fn from_i64(n: i64) -> Self {
        Cyclo::from_base(T::from_i64(n))
    }

    fn is_exact() -> bool {
        T::is_exact()
    }

    fn is_negligible(&self) -> bool {
        self.re.is_negligible() && self.om.is_negligible()
    }
}

impl<T: Field> CubeRootField for Cyclo<T> {
    fn omega() -> Self {
        Cyclo::new(T::zero(), T::one())
    }
}

impl<T: FromRational> FromRational for Cyclo<T> {
    fn from_rational(r: &BigRational) -> Self {
        Cyclo::from_base(T::from_rational(r))
    }
}

impl Cyclo<BigRational> {
    /// Lossy conversion for display and float cross-checks.
    pub fn to_f64(&self) -> Cyclo<f64> {
        Cyclo::new(f64::from_rational(&self.re), f64::from_rational(&self.om))
    }
}

/// Text form `p/q+r/s*w`; zero parts are omitted and `0` is `"0"`.
impl fmt::Display for Cyclo<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.om.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}*w", format_rational(&self.om)),
            (false, false) => {
                let om = format_rational(&self.om);
                if om.starts_with('-') {
                    write!(f, "{}{}*w", format_rational(&self.re), om)
                } else {
                    write!(f, "{}+{}*w", format_rational(&self.re), om)
                }
            }
        }
    }
}

impl FromStr for Cyclo<BigRational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a cyclotomic number: `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix("*w") else {
            return Ok(Cyclo::from_base(parse_rational(&t).ok_or_else(bad)?));
        };
        // the ω coefficient starts at the first sign past position 0
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .next();
        let (re, om) = match split {
            Some(i) => {
                let (re, rest) = body.split_at(i);
                let om = rest.strip_prefix('+').unwrap_or(rest);
                (parse_rational(re).ok_or_else(bad)?, om)
            }
            None => (BigRational::zero(), body),
        };
        Ok(Cyclo::new(re, parse_rational(om).ok_or_else(bad)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::CycloNum;

    fn c(a: i64, b: i64) -> CycloNum {
        Cyclo::new(rational(a, 1), rational(b, 1))
    }

    #[test]
    fn products() {
        let w = c(0, 1);
        assert_eq!(w.clone() * &w, c(-1, -1));
        assert_eq!(w.clone() * &(w.clone() * &w), c(1, 0));
        let w2 = w.clone() * &w;
        assert_eq!(c(2, 1) * (c(2, 0) + w2), c(3, 0));
        assert_eq!(w.mul_omega(), c(-1, -1));
    }

    #[test]
    fn inverses() {
        assert_eq!(cyclo_inv(&c(0, 1)).unwrap(), c(-1, -1));
        assert_eq!(cyclo_inv(&c(1, 1)).unwrap(), c(0, -1));
        assert_eq!(cyclo_inv(&c(0, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers_of_q() {
        assert_eq!(q_power::<BigRational>(1), c(0, 1));
        assert_eq!(q_power::<BigRational>(-1), c(-1, -1));
        assert_eq!(q_power::<BigRational>(3), c(1, 0));
        assert_eq!(CycloNum::omega_pow(-4), q_power(-4));
    }

    #[test]
    fn norms() {
        assert_eq!(c(0, 1).norm_sq(), rational(1, 1));
        assert_eq!(c(2, 1).norm_sq(), rational(3, 1));
        assert_eq!(c(0, 0).norm_sq(), rational(0, 1));
    }

    #[test]
    fn loop_weight_is_one() {
        let q = q_power::<BigRational>(1);
        let qi = q_power::<BigRational>(-1);
        assert_eq!(-q.clone() - qi, c(1, 0));
        assert!((c(1, 0) + q.clone() + q.clone() * &q).is_zero());
    }

    #[test]
    fn text_form() {
        assert_eq!(c(2, 1).to_string(), "2+1*w");
        assert_eq!(c(0, 0).to_string(), "0");
        assert_eq!(c(0, -3).to_string(), "-3*w");
        assert_eq!(c(-5, 0).to_string(), "-5");
        let x = Cyclo::new(rational(-1, 2), rational(-7, 3));
        assert_eq!(x.to_string(), "-1/2-7/3*w");
        for s in ["2+1*w", "0", "-3*w", "-1/2-7/3*w", "4/9"] {
            assert_eq!(s.parse::<CycloNum>().unwrap().to_string(), s);
        }
        assert_eq!("2+-1*w".parse::<CycloNum>().unwrap(), c(2, -1));
        assert!("w".parse::<CycloNum>().is_err());
        assert!("1/0".parse::<CycloNum>().is_err());
    }
}
