//! Gaussian rationals `re + im·i` with arbitrary-precision parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::real(rat(num, den))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, always a rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        if self.is_real() {
            return Scalar::real(self.re.recip());
        }
        let n = self.norm_sqr();
        Scalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// `self^k` for a non-negative exponent.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `i^k`.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Scalar::from_int(1),
            1 => Scalar::i(),
            2 => Scalar::from_int(-1),
            _ => -Scalar::i(),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self.is_real(), rhs.is_real()) {
            (true, true) => Scalar::real(&self.re * &rhs.re),
            (true, false) => Scalar {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => Scalar {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => Scalar {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.is_real() {
            assert!(!rhs.re.is_zero(), "division by zero scalar");
            return Scalar {
                re: &self.re / &rhs.re,
                im: &self.im / &rhs.re,
            };
        }
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.clone().neg()
    }
}

fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serialized as `num/den+num/den·i`; the imaginary numerator carries its own sign.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}·i", fmt_rational(&self.re), fmt_rational(&self.im))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("expected num/den, got {s:?}")))?;
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_suffix("·i")
            .ok_or_else(|| Error::Parse(format!("scalar must end in ·i: {s:?}")))?;
        let (re, im) = body
            .split_once('+')
            .ok_or_else(|| Error::Parse(format!("scalar missing '+': {s:?}")))?;
        Ok(Scalar::new(parse_rational(re)?, parse_rational(im)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(Scalar::i_pow(3), -Scalar::i());
    }

    #[test]
    fn division_roundtrip() {
        let a = Scalar::new(rat(3, 4), rat(-5, 7));
        let b = Scalar::new(rat(1, 2), rat(2, 3));
        assert_eq!(&(&a / &b) * &b, a);
    }

    #[test]
    fn text_roundtrip() {
        let a = Scalar::new(rat(-3, 4), rat(-5, 7));
        assert_eq!(a.to_string(), "-3/4+-5/7·i");
        assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        assert!("1/2".parse::<Scalar>().is_err());
        assert!("1/0+0/1·i".parse::<Scalar>().is_err());
    }

    #[test]
    fn canonical_rationals() {
        let a: Scalar = "4/-8+0/5·i".parse().unwrap();
        assert_eq!(a, Scalar::from_ratio(-1, 2));
        assert!(a.re.denom().is_positive());
    }
}
