//! Integer number theory used by the extension and conic code: square-free
//! parts, probable primes, bounded factoring and modular square roots.
//!
//! Factoring is bounded (trial division by small primes, then Pollard–Brent
//! with a fixed iteration budget), so results carry a completeness flag.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

const TRIAL_LIMIT: u32 = 1 << 16;
const RHO_BUDGET: u64 = 1 << 17;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                let mut j = i * i;
                while j < n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Exact integer square root of a nonnegative integer, if it is a square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

/// Miller–Rabin with the first twelve prime bases (deterministic below
/// 3.3·10^24, probabilistic beyond).
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if *n == BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u32) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut iters: u64 = 0;
    const BATCH: u64 = 64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
            iters += BATCH;
            if iters > RHO_BUDGET {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// A possibly partial factorization `n = Π pᵢ^eᵢ · residue` where `residue`
/// is 1 when factoring succeeded and otherwise a composite that resisted the
/// bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(BigUint, u32)>,
    pub residue: BigUint,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.residue.is_one()
    }
}

pub fn factor(n: &BigUint) -> Factorization {
    factor_with(n, &[])
}

/// `n = r^k` with `k ≥ 2` maximal, if `n > 1` is a perfect power.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if *n <= BigUint::one() {
        return None;
    }
    (2..=n.bits() as u32).rev().find_map(|k| {
        let r = n.nth_root(k);
        (r > BigUint::one() && r.pow(k) == *n).then_some((r, k))
    })
}

/// Like [`factor`], but first splits off common factors with each of the
/// `hints`, which need not be prime. Factors shared between related
/// integers are found this way even when they are out of reach of rho.
pub fn factor_with(n: &BigUint, hints: &[BigUint]) -> Factorization {
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut residue = BigUint::one();
    if n.is_zero() {
        return Factorization { primes, residue: BigUint::zero() };
    }
    let mut m = n.clone();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((pb, e));
        }
    }
    let mut stack = vec![(m, 1u32)];
    'next: while let Some((c, mult)) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if c.to_u64().is_some_and(|v| v < (TRIAL_LIMIT as u64) * (TRIAL_LIMIT as u64))
            || is_probable_prime(&c)
        {
            primes.push((c, mult));
            continue;
        }
        if let Some((r, k)) = perfect_power(&c) {
            stack.push((r, k * mult));
            continue;
        }
        for h in hints {
            let g = c.gcd(h);
            if !g.is_one() && g != c {
                let e = &c / &g;
                stack.push((g, mult));
                stack.push((e, mult));
                continue 'next;
            }
        }
        let split = (1..=3).find_map(|k| pollard_brent(&c, k));
        match split {
            Some(d) => {
                let e = &c / &d;
                stack.push((d, mult));
                stack.push((e, mult));
            }
            None => residue *= c.pow(mult),
        }
    }
    primes.sort();
    let mut merged: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in primes {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Factorization { primes: merged, residue }
}

/// `n = core · root²` with `core` square-free (up to an unfactored residue,
/// flagged by `complete = false`) and carrying the sign of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub core: BigInt,
    pub root: BigUint,
    pub complete: bool,
}

/// Panics on zero.
pub fn squarefree_decompose(n: &BigInt) -> SquarefreeDecomposition {
    squarefree_decompose_with(n, &[])
}

/// [`squarefree_decompose`] with factoring hints as in [`factor_with`].
pub fn squarefree_decompose_with(n: &BigInt, hints: &[BigUint]) -> SquarefreeDecomposition {
    assert!(!n.is_zero(), "square-free part of zero");
    let fac = factor_with(n.magnitude(), hints);
    let mut core = fac.residue.clone();
    let mut root = BigUint::one();
    for (p, e) in &fac.primes {
        if e % 2 == 1 {
            core *= p;
        }
        root *= p.pow(e / 2);
    }
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    SquarefreeDecomposition {
        core: BigInt::from_biguint(sign, core),
        root,
        complete: fac.is_complete(),
    }
}

/// Square-free part of a nonzero rational, as an integer of the same sign.
pub fn squarefree_part(q: &Rational) -> BigInt {
    squarefree_decompose(&(q.numer() * q.denom())).core
}

/// Square root of `a` modulo an odd prime or 2, if `a` is a residue.
pub fn sqrt_mod_prime(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let a = a % p;
    if a.is_zero() {
        return Some(BigUint::zero());
    }
    let two = BigUint::from(2u32);
    if *p == two {
        return Some(a);
    }
    let pm1 = p - 1u32;
    let half = &pm1 >> 1;
    if a.modpow(&half, p) != BigUint::one() {
        return None;
    }
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    if s == 1 {
        return Some(a.modpow(&((p + 1u32) >> 2), p));
    }
    let mut z = two;
    while z.modpow(&half, p) != pm1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// Outcome of a modular square root over a composite modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModSqrt {
    Root(BigUint),
    NoRoot,
    /// The modulus could not be factored within budget.
    Unknown,
}

/// A square root of `a` modulo a square-free `n > 0`, by factoring `n` and
/// combining prime roots with the Chinese remainder theorem.
pub fn sqrt_mod(a: &BigInt, n: &BigUint) -> ModSqrt {
    sqrt_mod_with(a, n, &[])
}

/// [`sqrt_mod`] with factoring hints as in [`factor_with`].
pub fn sqrt_mod_with(a: &BigInt, n: &BigUint, hints: &[BigUint]) -> ModSqrt {
    if n.is_one() {
        return ModSqrt::Root(BigUint::zero());
    }
    let fac = factor_with(n, hints);
    if !fac.is_complete() {
        return ModSqrt::Unknown;
    }
    let nn = BigInt::from(n.clone());
    let a = a.mod_floor(&nn).to_biguint().expect("nonnegative residue");
    let mut root = BigUint::zero();
    let mut modulus = BigUint::one();
    for (p, e) in &fac.primes {
        if *e > 1 {
            return ModSqrt::Unknown;
        }
        let Some(r) = sqrt_mod_prime(&a, p) else {
            return ModSqrt::NoRoot;
        };
        root = crt(&root, &modulus, &r, p);
        modulus *= p;
    }
    ModSqrt::Root(root)
}

fn crt(r1: &BigUint, m1: &BigUint, r2: &BigUint, m2: &BigUint) -> BigUint {
    let m1i = BigInt::from(m1.clone());
    let m2i = BigInt::from(m2.clone());
    let eg = m1i.extended_gcd(&m2i);
    let m = &m1i * &m2i;
    let r1 = BigInt::from(r1.clone());
    let r2 = BigInt::from(r2.clone());
    let x = &r1 + (&r2 - &r1) * &eg.x * &m1i;
    x.mod_floor(&m).to_biguint().expect("nonnegative residue")
}

/// Bezout coefficients `e` with `Σ eᵢ·vᵢ = gcd(v)`, together with the gcd.
pub fn bezout(values: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = Vec::with_capacity(values.len());
    for &v in values {
        let eg = g.extended_gcd(&v);
        for c in coeffs.iter_mut() {
            *c *= eg.x;
        }
        coeffs.push(eg.y);
        g = eg.gcd;
    }
    if g < 0 {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -*c;
        }
    }
    (g, coeffs)
}
