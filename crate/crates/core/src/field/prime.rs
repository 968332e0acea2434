use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{field_ops, Field, PrintSign, Rational};
use crate::error::{Error, Result};

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// Integers modulo a prime `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

/// The default screening field.
pub type F61 = Fp<DEFAULT_PRIME>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduction of a rational, or `None` when the denominator vanishes mod P.
    pub fn try_from_rational(q: &Rational) -> Option<Self> {
        let d = reduce_bigint::<P>(q.denom());
        if d.0 == 0 {
            return None;
        }
        Some(reduce_bigint::<P>(q.numer()).mul_ref(&d.inv().ok()?))
    }

    fn add_ref(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }

    fn sub_ref(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }

    fn mul_ref(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }

    fn neg_ref(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }

    fn sub_assign_ref(&mut self, o: &Self) {
        *self = self.sub_ref(o);
    }

    fn mul_assign_ref(&mut self, o: &Self) {
        *self = self.mul_ref(o);
    }
}

fn reduce_bigint<const P: u64>(n: &BigInt) -> Fp<P> {
    let r = n % BigInt::from(P);
    let r = if r < BigInt::zero() { r + BigInt::from(P) } else { r };
    Fp(r.to_u64().expect("reduced residue fits"))
}

field_ops!(impl[const P: u64] Fp<P>);

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1 % P)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(P - 2))
    }

    fn from_i64(n: i64) -> Self {
        Fp((n as i128).rem_euclid(P as i128) as u64)
    }

    fn from_bigint(n: &BigInt) -> Self {
        reduce_bigint::<P>(n)
    }

    fn from_rational(q: &Rational) -> Self {
        Self::try_from_rational(q).expect("denominator divisible by the characteristic")
    }

    fn characteristic() -> u64 {
        P
    }

    fn rational_components(&self) -> Option<Vec<Rational>> {
        None
    }

    fn print_sign(&self) -> PrintSign {
        PrintSign::Positive
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}
