//! Exact scalar fields.
//!
//! Three concrete fields implement [`Field`]: [`Rational`] (big-integer
//! rationals), [`QuadExt`] (a quadratic extension of any field, tagged by its
//! radicand) and [`Fp`] (a word-sized prime field used for fast screening).

pub mod arith;
mod prime;
mod quadratic;
mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;

pub use prime::{Fp, F61, DEFAULT_PRIME};
pub use quadratic::{sqrt_or_extend, Extension, ExtensionRecord, QuadExt};
pub use rational::Rational;

/// Q(√m) with m a square-free integer.
pub type Quad = QuadExt<Rational>;
/// A quadratic extension of some Q(√m).
pub type Biquad = QuadExt<Quad>;

/// An exact commutative field.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self) -> Result<Self>;

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.inv()?)
    }

    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;

    /// Image of a rational number. Panics in a prime field when the
    /// denominator vanishes modulo the characteristic.
    fn from_rational(q: &Rational) -> Self;

    /// 0 for characteristic zero.
    fn characteristic() -> u64 {
        0
    }

    /// Coordinates over Q, when the field is a finite extension of Q.
    fn rational_components(&self) -> Option<Vec<Rational>>;

    /// Multiplication by a rational scalar.
    fn scale_rational(&self, q: &Rational) -> Self {
        self.clone() * &Self::from_rational(q)
    }

    /// Whether the value prints without surrounding parentheses inside a
    /// product, and if so whether it prints with a leading minus sign.
    fn print_sign(&self) -> PrintSign;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Integer power allowing negative exponents.
    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }
}

/// How a scalar renders as a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrintSign {
    Positive,
    Negative,
    Compound,
}

/// Rescales `v` in place so that its rational coordinates form a primitive
/// integer vector, returning the factor applied. With `positive_lead` the
/// first nonzero coordinate is made positive; otherwise the original sign is
/// kept. Fields without rational coordinates are scaled so that the first
/// nonzero entry is one.
pub fn normalize_primitive<F: Field>(v: &mut [F], positive_lead: bool) -> F {
    let Some(first) = v.iter().position(|c| !c.is_zero()) else {
        return F::one();
    };
    let comps: Option<Vec<Vec<Rational>>> = v.iter().map(|c| c.rational_components()).collect();
    let Some(comps) = comps else {
        let s = v[first].inv().expect("nonzero entry");
        for c in v.iter_mut() {
            *c *= &s;
        }
        return s;
    };
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for q in comps.iter().flatten() {
        den = den.lcm(q.denom());
    }
    for q in comps.iter().flatten() {
        num = num.gcd(&(q.numer() * (&den / q.denom())));
    }
    let mut scale = Rational::new(den, num);
    if positive_lead {
        let lead = comps[first].iter().find(|q| !q.is_zero()).expect("nonzero entry");
        if lead.is_negative() {
            scale = -scale;
        }
    }
    for c in v.iter_mut() {
        *c = c.scale_rational(&scale);
    }
    F::from_rational(&scale)
}

macro_rules! field_ops {
    (impl[$($gen:tt)*] $t:ty) => {
        impl<$($gen)*> std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t { self.add_ref(&o) }
        }
        impl<'a, $($gen)*> std::ops::Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t { self.add_ref(o) }
        }
        impl<'a, 'b, $($gen)*> std::ops::Add<&'b $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'b $t) -> $t { self.add_ref(o) }
        }
        impl<$($gen)*> std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t { self.sub_ref(&o) }
        }
        impl<'a, $($gen)*> std::ops::Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t { self.sub_ref(o) }
        }
        impl<'a, 'b, $($gen)*> std::ops::Sub<&'b $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'b $t) -> $t { self.sub_ref(o) }
        }
        impl<$($gen)*> std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t { self.mul_ref(&o) }
        }
        impl<'a, $($gen)*> std::ops::Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, o: &'a $t) -> $t { self.mul_ref(o) }
        }
        impl<'a, 'b, $($gen)*> std::ops::Mul<&'b $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &'b $t) -> $t { self.mul_ref(o) }
        }
        impl<$($gen)*> std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { self.neg_ref() }
        }
        impl<'a, $($gen)*> std::ops::AddAssign<&'a $t> for $t {
            fn add_assign(&mut self, o: &'a $t) { self.add_assign_ref(o) }
        }
        impl<'a, $($gen)*> std::ops::SubAssign<&'a $t> for $t {
            fn sub_assign(&mut self, o: &'a $t) { self.sub_assign_ref(o) }
        }
        impl<'a, $($gen)*> std::ops::MulAssign<&'a $t> for $t {
            fn mul_assign(&mut self, o: &'a $t) { self.mul_assign_ref(o) }
        }
        impl<$($gen)*> std::ops::AddAssign for $t {
            fn add_assign(&mut self, o: $t) { self.add_assign_ref(&o) }
        }
        impl<$($gen)*> std::ops::SubAssign for $t {
            fn sub_assign(&mut self, o: $t) { self.sub_assign_ref(&o) }
        }
        impl<$($gen)*> std::ops::MulAssign for $t {
            fn mul_assign(&mut self, o: $t) { self.mul_assign_ref(&o) }
        }
    };
}
pub(crate) use field_ops;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_normalization_keeps_sign_unless_asked() {
        let mut v = vec![Rational::from_i64(-4), Rational::new_i64(6, 5), Rational::zero()];
        normalize_primitive(&mut v, false);
        assert_eq!(v, vec![Rational::from_i64(-10), Rational::from_i64(3), Rational::zero()]);
        normalize_primitive(&mut v, true);
        assert_eq!(v, vec![Rational::from_i64(10), Rational::from_i64(-3), Rational::zero()]);
    }

    #[test]
    fn primitive_normalization_in_prime_field_makes_lead_one() {
        let mut v = vec![F61::zero(), F61::from_i64(3), F61::from_i64(6)];
        normalize_primitive(&mut v, true);
        assert_eq!(v[1], F61::one());
        assert_eq!(v[2], F61::from_i64(2));
    }

    #[test]
    fn negative_powers() {
        let x = Rational::new_i64(2, 3);
        assert_eq!(x.powi(-2).unwrap(), Rational::new_i64(9, 4));
        assert!(Rational::zero().powi(-1).is_err());
    }
}
