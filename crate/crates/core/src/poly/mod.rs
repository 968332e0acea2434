//! Sparse multivariate polynomials and homogeneous forms over declared
//! variable spaces, with the apolarity contraction.

pub mod combinatorics;
mod form;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::field::Field;

pub use form::{apolar_pair, apolar_pair_multi, segre_pullback, Form, Group, Space, VarKind};
pub use parse::{parse_form, parse_form_auto, parse_form_of_degree, parse_terms, ParsedTerm};

/// Upper bound on the number of variables of one polynomial ring.
pub const MAX_VARS: usize = 12;

/// An exponent vector. The derived order is lexicographic with variable 0
/// most significant, so `x0^d` is the largest monomial of degree `d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = [0u8; MAX_VARS];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent overflow");
        }
        Monomial(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.0[i] = 1;
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn set_exp(&mut self, i: usize, e: u32) {
        self.0[i] = u8::try_from(e).expect("exponent overflow");
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, vars: std::ops::Range<usize>) -> u32 {
        self.0[vars].iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            m[i] = self.0[i].checked_add(o.0[i]).expect("exponent overflow");
        }
        Monomial(m)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut m = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            m[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(Monomial(m))
    }

    /// Π βᵢ!/(βᵢ−αᵢ)! for β = self, α = o, i.e. the scalar produced by ∂^α x^β.
    pub fn falling(&self, o: &Monomial) -> BigInt {
        let mut acc: u128 = 1;
        let mut big: Option<BigInt> = None;
        for i in 0..MAX_VARS {
            let b = self.0[i] as u128;
            for t in 0..o.0[i] as u128 {
                let f = b - t;
                match acc.checked_mul(f) {
                    Some(v) => acc = v,
                    None => {
                        let cur = big.take().unwrap_or_else(|| BigInt::from(1u8));
                        big = Some(cur * BigInt::from(acc) * BigInt::from(f));
                        acc = 1;
                    }
                }
            }
        }
        match big {
            Some(b) => b * BigInt::from(acc),
            None => BigInt::from(acc),
        }
    }

    /// α! = Π αᵢ!.
    pub fn factorial(&self) -> BigInt {
        self.falling(self)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

pub(crate) fn scalar_from_bigint<F: Field>(n: &BigInt) -> F {
    match i64::try_from(n) {
        Ok(v) => F::from_i64(v),
        Err(_) => F::from_bigint(n),
    }
}

/// A sparse polynomial in `nvars` variables; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        Poly::term(Monomial::one(), c, nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        Poly::term(Monomial::var(i), F::one(), nvars)
    }

    pub fn term(m: Monomial, c: F, nvars: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly<F>) -> Poly<F> {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Poly<F>) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub(&self, o: &Poly<F>) -> Poly<F> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly<F> {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &F) -> Poly<F> {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        self.map_coeffs(|c| c.clone() * s)
    }

    pub fn mul(&self, o: &Poly<F>) -> Poly<F> {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.clone() * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly<F> {
        let mut acc = Poly::constant(F::one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Poly<F> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Coefficient-wise image in another field.
    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// ∂^α applied to the polynomial.
    pub fn derive(&self, alpha: &Monomial) -> Poly<F> {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(q) = m.div(alpha) {
                r.add_term(q, c.clone() * &scalar_from_bigint::<F>(&m.falling(alpha)));
            }
        }
        r
    }

    /// Total degree of the leading terms, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Replaces variable `i` by `images[i]`; all images share one ring.
    pub fn compose(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Poly<F>>> =
            images.iter().map(|p| vec![Poly::constant(F::one(), p.nvars)]).collect();
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), target);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().expect("nonempty").mul(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            r.add_assign(&t);
        }
        r
    }

    /// Reinterprets the polynomial in a ring with more variables, moving
    /// variable `i` to `map[i]`.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Poly<F> {
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut n = Monomial::one();
                for (i, &j) in map.iter().enumerate() {
                    n.set_exp(j, n.exp(j) + m.exp(i));
                }
                (n, c.clone())
            }),
        )
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}
