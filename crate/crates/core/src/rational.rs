//! Arbitrary-precision exact rational arithmetic.
//!
//! `Rational` is the coefficient field for every polynomial in this crate.
//! Values are always kept in canonical form: positive denominator, fully
//! reduced, zero stored as 0/1. No operation ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("square root of a negative rational")]
    NegativeSqrt,
    #[error("invalid rational literal: {0}")]
    InvalidLiteral(String),
}

/// An exact rational number `num/den` with `den > 0` and `gcd(|num|, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    /// Builds `num/den` in canonical form. Errors when `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithmeticError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithmeticError::ZeroDenominator);
        }
        Ok(Self::reduced(num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Canonicalizes sign and common factors. `den` must be nonzero.
    fn reduced(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rational { num, den }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.num.is_negative() {
            -1
        } else if self.num.is_zero() {
            0
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithmeticError> {
        if rhs.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self::reduced(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self, ArithmeticError> {
        if exp == 0 {
            return Ok(Self::one());
        }
        let e = exp.unsigned_abs();
        let e = u32::try_from(e).expect("exponent out of range");
        let p = Rational {
            num: self.num.pow(e),
            den: self.den.pow(e),
        };
        if exp < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor_int(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    /// The rational with the smallest denominator (then smallest numerator
    /// magnitude) inside the closed interval `[lo, hi]`; Stern-Brocot descent.
    pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
        assert!(lo <= hi, "empty interval");
        if lo.is_positive() {
            Self::simplest_positive(lo, hi)
        } else if hi.is_negative() {
            -Self::simplest_positive(&-hi, &-lo)
        } else {
            Self::zero()
        }
    }

    fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
        let fl = lo.floor_int();
        let ceil_lo = if lo.is_integer() { fl.clone() } else { &fl + 1 };
        let ceil_rat = Rational::from_integer(ceil_lo.clone());
        if ceil_rat <= *hi {
            return ceil_rat;
        }
        // Same integer part; recurse on the inverted fractional parts.
        let n = Rational::from_integer(fl);
        let inner = Self::simplest_positive(
            &(hi - &n).recip().expect("nonzero fractional part"),
            &(lo - &n).recip().expect("nonzero fractional part"),
        );
        n + inner.recip().expect("positive")
    }

    /// An enclosure `[lo, hi]` of the square root with `hi - lo <= 10^-digits`.
    /// Returns `lo == hi` when the root is exactly representable at the
    /// working scale (in particular for perfect squares).
    pub fn sqrt_enclosure(&self, digits: u32) -> Result<(Self, Self), ArithmeticError> {
        if self.is_negative() {
            return Err(ArithmeticError::NegativeSqrt);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let scale = BigInt::from(10).pow(digits);
        let scaled = (&self.num * &scale * &scale).div_floor(&self.den);
        let root = scaled.sqrt();
        let lo = Self::reduced(root.clone(), scale.clone());
        if &lo * &lo == *self {
            return Ok((lo.clone(), lo));
        }
        let hi = Self::reduced(root + 1, scale);
        Ok((lo, hi))
    }

    /// Decimal exponent `e` with `10^e <= |self| < 10^(e+1)`; requires nonzero.
    fn decimal_exponent(&self) -> i64 {
        debug_assert!(!self.is_zero());
        let num = self.num.abs();
        let nd = num.to_string().len() as i64;
        let dd = self.den.to_string().len() as i64;
        let mut e = nd - dd;
        // The digit-count estimate is off by at most one in either direction.
        while Self::cmp_pow10(&num, &self.den, e) == Ordering::Less {
            e -= 1;
        }
        while Self::cmp_pow10(&num, &self.den, e + 1) != Ordering::Less {
            e += 1;
        }
        e
    }

    /// Compares `num/den` against `10^e` for nonnegative `num`, positive `den`.
    fn cmp_pow10(num: &BigInt, den: &BigInt, e: i64) -> Ordering {
        if e >= 0 {
            num.cmp(&(den * BigInt::from(10).pow(e as u32)))
        } else {
            (num * BigInt::from(10).pow((-e) as u32)).cmp(den)
        }
    }

    /// Formats with `sig` significant digits, rounding half to even.
    /// Output is locale-independent and keeps trailing zeros so the digit
    /// count is explicit, e.g. `to_decimal(2/3, 5) == "0.66667"`.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig >= 1, "need at least one significant digit");
        if self.is_zero() {
            return if sig == 1 {
                "0".to_string()
            } else {
                format!("0.{}", "0".repeat(sig - 1))
            };
        }
        let mut e = self.decimal_exponent();
        // Round |self| / 10^(e - sig + 1) half-even to an integer.
        let shift = e - sig as i64 + 1;
        let (num, den) = if shift <= 0 {
            (self.num.abs() * BigInt::from(10).pow((-shift) as u32), self.den.clone())
        } else {
            (self.num.abs(), &self.den * BigInt::from(10).pow(shift as u32))
        };
        let (q, r) = num.div_rem(&den);
        let mut q = q;
        let twice: BigInt = &r * BigInt::from(2);
        let round_up = match twice.cmp(&den) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => q.is_odd(),
        };
        if round_up {
            q += 1;
        }
        let mut digits = q.to_string();
        if digits.len() > sig {
            // Carry rippled past the leading digit (e.g. 9.99 -> 10.0).
            digits.truncate(sig);
            e += 1;
        }
        debug_assert_eq!(digits.len(), sig);
        let sign = if self.is_negative() { "-" } else { "" };
        if e >= 0 {
            let ip = e as usize + 1;
            if ip >= sig {
                let body = format!("{}{}", digits, "0".repeat(ip - sig));
                format!("{sign}{body}")
            } else {
                format!("{sign}{}.{}", &digits[..ip], &digits[ip..])
            }
        } else {
            format!("{sign}0.{}{}", "0".repeat((-e - 1) as usize), digits)
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational::reduced(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}
forward_binop!(Add, add);

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational::reduced(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}
forward_binop!(Sub, sub);

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}
forward_binop!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl FromStr for Rational {
    type Err = ArithmeticError;

    /// Accepts `p`, `p/q`, decimals like `-0.25`, and exponents like `1e-12`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithmeticError::InvalidLiteral(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            return Rational::new(num, den);
        }
        let (mantissa, exp) = match t.split_once(['e', 'E']) {
            Some((m, e)) => (m, i64::from_str(e).map_err(|_| bad())?),
            None => (t, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if frac_part.chars().any(|c| !c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() || digits == "-" || digits == "+" {
            return Err(bad());
        }
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let scale = frac_part.len() as i64 - exp;
        let value = if scale >= 0 {
            Rational::new(num, BigInt::from(10).pow(scale as u32))?
        } else {
            Rational::from_integer(num * BigInt::from(10).pow((-scale) as u32))
        };
        Ok(value)
    }
}
