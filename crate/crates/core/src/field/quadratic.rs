use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::arith::squarefree_decompose;
use super::{field_ops, Field, PrintSign, Rational};
use crate::error::{Error, Result};

/// `a + b·√m` over a base field `B`, with `m` a non-square of `B`.
///
/// Canonical form: when `b = 0` the radicand is stored as 1, so equal values
/// have identical representations. Combining two elements with different
/// nontrivial radicands panics in the operators and yields `MixedField` from
/// the `checked_*` methods.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt<B> {
    a: B,
    b: B,
    m: B,
}

impl<B: Field> QuadExt<B> {
    pub fn new(a: B, b: B, m: B) -> Self {
        QuadExt { a, b, m }.canonical()
    }

    pub fn from_base(a: B) -> Self {
        QuadExt { a, b: B::zero(), m: B::one() }
    }

    /// √m itself.
    pub fn sqrt_of(m: B) -> Self {
        QuadExt::new(B::zero(), B::one(), m)
    }

    pub fn a(&self) -> &B {
        &self.a
    }

    pub fn b(&self) -> &B {
        &self.b
    }

    /// The radicand, or `None` for elements of the base field.
    pub fn radicand(&self) -> Option<&B> {
        (!self.b.is_zero()).then_some(&self.m)
    }

    pub fn to_base(&self) -> Option<B> {
        self.b.is_zero().then(|| self.a.clone())
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), m: self.m.clone() }
    }

    /// a² − m b², an element of the base field.
    pub fn norm(&self) -> B {
        self.a.clone() * &self.a - self.m.clone() * &self.b * &self.b
    }

    fn canonical(mut self) -> Self {
        if self.b.is_zero() {
            self.m = B::one();
        }
        self
    }

    fn common_radicand(&self, o: &Self) -> Result<B> {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => Ok(B::one()),
            (false, true) => Ok(self.m.clone()),
            (true, false) => Ok(o.m.clone()),
            (false, false) if self.m == o.m => Ok(self.m.clone()),
            _ => Err(Error::MixedField),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let m = self.common_radicand(o)?;
        Ok(QuadExt { a: self.a.clone() + &o.a, b: self.b.clone() + &o.b, m }.canonical())
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        let m = self.common_radicand(o)?;
        Ok(QuadExt { a: self.a.clone() - &o.a, b: self.b.clone() - &o.b, m }.canonical())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let m = self.common_radicand(o)?;
        let a = self.a.clone() * &o.a + m.clone() * &self.b * &o.b;
        let b = self.a.clone() * &o.b + self.b.clone() * &o.a;
        Ok(QuadExt { a, b, m }.canonical())
    }

    fn add_ref(&self, o: &Self) -> Self {
        self.checked_add(o).expect("mixed quadratic radicands")
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("mixed quadratic radicands")
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("mixed quadratic radicands")
    }

    fn neg_ref(&self) -> Self {
        QuadExt { a: -self.a.clone(), b: -self.b.clone(), m: self.m.clone() }
    }

    fn add_assign_ref(&mut self, o: &Self) {
        if o.b.is_zero() {
            self.a += &o.a;
        } else {
            *self = self.add_ref(o);
        }
    }

    fn sub_assign_ref(&mut self, o: &Self) {
        if o.b.is_zero() {
            self.a -= &o.a;
        } else {
            *self = self.sub_ref(o);
        }
    }

    fn mul_assign_ref(&mut self, o: &Self) {
        *self = self.mul_ref(o);
    }
}

field_ops!(impl[B: Field] QuadExt<B>);

impl<B: Field> Field for QuadExt<B> {
    fn zero() -> Self {
        QuadExt::from_base(B::zero())
    }

    fn one() -> Self {
        QuadExt::from_base(B::one())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ni = n.inv()?;
        Ok(QuadExt { a: self.a.clone() * &ni, b: -(self.b.clone() * &ni), m: self.m.clone() }
            .canonical())
    }

    fn from_i64(n: i64) -> Self {
        QuadExt::from_base(B::from_i64(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        QuadExt::from_base(B::from_bigint(n))
    }

    fn from_rational(q: &Rational) -> Self {
        QuadExt::from_base(B::from_rational(q))
    }

    fn characteristic() -> u64 {
        B::characteristic()
    }

    fn rational_components(&self) -> Option<Vec<Rational>> {
        let mut v = self.a.rational_components()?;
        v.extend(self.b.rational_components()?);
        Some(v)
    }

    fn scale_rational(&self, q: &Rational) -> Self {
        QuadExt { a: self.a.scale_rational(q), b: self.b.scale_rational(q), m: self.m.clone() }
            .canonical()
    }

    fn print_sign(&self) -> PrintSign {
        if self.b.is_zero() {
            self.a.print_sign()
        } else {
            PrintSign::Compound
        }
    }
}

fn paren<B: Field>(x: &B) -> String {
    match x.print_sign() {
        PrintSign::Compound => format!("({x})"),
        _ => x.to_string(),
    }
}

impl<B: Field> fmt::Display for QuadExt<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.m);
        let (neg, mag) = match self.b.print_sign() {
            PrintSign::Negative => (true, -self.b.clone()),
            _ => (false, self.b.clone()),
        };
        let term = if mag.is_one() { root } else { format!("{}*{}", paren(&mag), root) };
        if self.a.is_zero() {
            if neg {
                write!(f, "-{term}")
            } else {
                write!(f, "{term}")
            }
        } else {
            write!(f, "{} {} {}", paren(&self.a), if neg { "-" } else { "+" }, term)
        }
    }
}

impl<B: Field> fmt::Debug for QuadExt<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One adjoined square root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    /// Square-free part of the adjoined square, as printed by the field.
    pub radicand: String,
    pub reason: String,
}

/// The square roots adjoined during a computation, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtensionRecord {
    pub entries: Vec<Extension>,
}

impl ExtensionRecord {
    pub fn new() -> Self {
        ExtensionRecord::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, radicand: impl fmt::Display, reason: impl Into<String>) {
        self.entries.push(Extension { radicand: radicand.to_string(), reason: reason.into() });
    }

    pub fn extend(&mut self, other: &ExtensionRecord) {
        self.entries.extend(other.entries.iter().cloned());
    }
}

/// √a for a nonzero rational: rational when `a` is a square, otherwise in
/// Q(√m) with m the square-free part of `a`, together with the record of the
/// adjoined root. Panics on zero.
pub fn sqrt_or_extend(a: &Rational) -> (QuadExt<Rational>, ExtensionRecord) {
    assert!(!a.is_zero(), "square root of zero requested");
    // a = n/d = n·d / d²
    let nd = a.numer() * a.denom();
    let dec = squarefree_decompose(&nd);
    let coeff = Rational::new(BigInt::from(dec.root.clone()), a.denom().clone());
    let mut rec = ExtensionRecord::new();
    if dec.core.is_one() {
        return (QuadExt::from_base(coeff), rec);
    }
    let m = Rational::from_integer(dec.core.clone());
    rec.push(&dec.core, "square root of a non-square");
    (QuadExt::new(Rational::zero(), coeff, m), rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn norm_form_in_sqrt2() {
        let x = QuadExt::new(q(1), q(1), q(2));
        let y = QuadExt::new(q(1), q(-1), q(2));
        assert_eq!(x * y, QuadExt::from_i64(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = QuadExt::new(Q::new_i64(3, 2), q(-5), q(7));
        assert_eq!(x.clone() * x.inv().unwrap(), QuadExt::one());
    }

    #[test]
    fn canonical_radicand_after_cancellation() {
        let x = QuadExt::new(q(2), q(3), q(5));
        let y = QuadExt::new(q(1), q(3), q(5));
        let d = x - y;
        assert_eq!(d, QuadExt::from_i64(1));
        assert_eq!(d.radicand(), None);
    }

    #[test]
    fn mixing_radicands_is_an_error() {
        let x = QuadExt::sqrt_of(q(2));
        let y = QuadExt::sqrt_of(q(3));
        assert_eq!(x.checked_add(&y), Err(Error::MixedField));
        assert_eq!(x.checked_mul(&y), Err(Error::MixedField));
        assert!(x.checked_mul(&QuadExt::from_i64(4)).is_ok());
    }

    #[test]
    fn conjugation_is_an_involution_fixing_base() {
        let x = QuadExt::new(q(2), q(3), q(5));
        assert_eq!(x.conj().conj(), x);
        assert_ne!(x.conj(), x);
        let r = QuadExt::<Q>::from_i64(4);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn sqrt_or_extend_examples() {
        let (r, rec) = sqrt_or_extend(&Q::new_i64(9, 4));
        assert_eq!(r, QuadExt::from_base(Q::new_i64(3, 2)));
        assert!(rec.is_empty());

        let (r, rec) = sqrt_or_extend(&q(2));
        assert_eq!(r, QuadExt::sqrt_of(q(2)));
        assert_eq!(rec.entries.len(), 1);

        let (r, rec) = sqrt_or_extend(&Q::new_i64(8, 9));
        assert_eq!(r, QuadExt::new(q(0), Q::new_i64(2, 3), q(2)));
        assert_eq!(rec.entries[0].radicand, "2");
        assert_eq!(r.clone() * r, QuadExt::from_base(Q::new_i64(8, 9)));
    }

    #[test]
    fn display() {
        assert_eq!(QuadExt::new(q(1), q(-3), q(2)).to_string(), "1 - 3*sqrt(2)");
        assert_eq!(QuadExt::new(q(0), q(1), q(-1)).to_string(), "sqrt(-1)");
        assert_eq!(QuadExt::new(Q::new_i64(1, 2), q(1), q(3)).to_string(), "1/2 + sqrt(3)");
    }

    #[test]
    fn tower_arithmetic() {
        let i = QuadExt::<QuadExt<Q>>::sqrt_of(QuadExt::from_i64(-1));
        let s5 = QuadExt::<QuadExt<Q>>::from_base(QuadExt::sqrt_of(q(5)));
        let z = i.clone() * &s5;
        assert_eq!(z.clone() * z, QuadExt::from_i64(-5));
        assert_eq!(i.clone() * i, QuadExt::from_i64(-1));
    }
}
