use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{field_ops, Field, PrintSign};
use crate::error::{Error, Result};

/// A reduced fraction of big integers with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics on a zero denominator.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn new_i64(num: i64, den: i64) -> Self {
        Rational::new(num.into(), den.into())
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.0.is_integer() && o.0.is_integer() {
            return Rational::from_integer(self.0.numer() + o.0.numer());
        }
        Rational(&self.0 + &o.0)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        if self.0.is_integer() && o.0.is_integer() {
            return Rational::from_integer(self.0.numer() - o.0.numer());
        }
        Rational(&self.0 - &o.0)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.0.is_integer() && o.0.is_integer() {
            return Rational::from_integer(self.0.numer() * o.0.numer());
        }
        Rational(&self.0 * &o.0)
    }

    fn neg_ref(&self) -> Self {
        Rational(-&self.0)
    }

    fn add_assign_ref(&mut self, o: &Self) {
        if self.0.is_integer() && o.0.is_integer() {
            let n = self.0.numer() + o.0.numer();
            self.0 = BigRational::from_integer(n);
        } else {
            self.0 += &o.0;
        }
    }

    fn sub_assign_ref(&mut self, o: &Self) {
        if self.0.is_integer() && o.0.is_integer() {
            let n = self.0.numer() - o.0.numer();
            self.0 = BigRational::from_integer(n);
        } else {
            self.0 -= &o.0;
        }
    }

    fn mul_assign_ref(&mut self, o: &Self) {
        *self = self.mul_ref(o);
    }
}

field_ops!(impl[] Rational);

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }

    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn rational_components(&self) -> Option<Vec<Rational>> {
        Some(vec![self.clone()])
    }

    fn scale_rational(&self, q: &Rational) -> Self {
        self.mul_ref(q)
    }

    fn print_sign(&self) -> PrintSign {
        if self.is_negative() {
            PrintSign::Negative
        } else {
            PrintSign::Positive
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_i64(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
        let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rational::new(n, d))
    }
}
