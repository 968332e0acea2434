//! Rational points on diagonal conics `a·x² + b·y² + c·z² = 0` by Legendre
//! reduction followed by lattice reduction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use num_rational::BigRational;

use crate::field::arith::{squarefree_decompose_with, sqrt_mod_with, ModSqrt};
use crate::field::{Field, Rational};

/// Outcome of the descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Legendre {
    /// A primitive integer solution.
    Solution([BigInt; 3]),
    /// The conic has no rational point.
    NoSolution,
    /// An integer could not be factored within budget.
    Undecided,
}

/// Solves `a·x² + b·y² + c·z² = 0` over the rationals.
pub fn solve_diagonal(coeffs: &[Rational; 3]) -> Legendre {
    if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
        let mut v = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        v[i] = BigInt::one();
        return Legendre::Solution(v);
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut c: Vec<BigInt> = coeffs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let hints: Vec<BigUint> =
        coeffs.iter().flat_map(|q| [q.numer().magnitude().clone(), q.denom().magnitude().clone()]).collect();
    // original variable = reduced variable · mult
    let mut mult = vec![Rational::from_i64(1); 3];
    loop {
        let g = c[0].gcd(&c[1]).gcd(&c[2]);
        if !g.is_one() {
            c.iter_mut().for_each(|x| *x = &*x / &g);
        }
        let mut changed = false;
        for i in 0..3 {
            let dec = squarefree_decompose_with(&c[i], &hints);
            if !dec.complete {
                return Legendre::Undecided;
            }
            if !dec.root.is_one() {
                c[i] = dec.core;
                mult[i] = mult[i].clone() * &Rational::new(BigInt::one(), BigInt::from(dec.root));
                changed = true;
            }
        }
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let g = c[i].gcd(&c[j]);
            if !g.is_one() {
                c[i] = &c[i] / &g;
                c[j] = &c[j] / &g;
                c[k] = &c[k] * &g;
                let inv = Rational::new(BigInt::one(), g);
                mult[i] = mult[i].clone() * &inv;
                mult[j] = mult[j].clone() * &inv;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if c.iter().all(|x| x.is_positive()) || c.iter().all(|x| x.is_negative()) {
        return Legendre::NoSolution;
    }
    let reduced = match lattice_point(&c, &hints) {
        Ok(Some(v)) => v,
        Ok(None) => return Legendre::NoSolution,
        Err(()) => return Legendre::Undecided,
    };
    let mut v: Vec<Rational> =
        reduced.iter().zip(&mult).map(|(r, m)| Rational::from_integer(r.clone()) * m).collect();
    crate::field::normalize_primitive(&mut v, true);
    let out = [v[0].numer().clone(), v[1].numer().clone(), v[2].numer().clone()];
    let check = coeffs
        .iter()
        .zip(&out)
        .fold(Rational::from_i64(0), |acc, (a, x)| acc + a.clone() * &Rational::from_integer(x * x));
    assert!(check.is_zero(), "descent produced a non-solution");
    Legendre::Solution(out)
}

const BOX: i64 = 6;

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.mod_floor(m).extended_gcd(m);
    eg.x.mod_floor(m)
}

/// For square-free, pairwise coprime `c` of mixed signs: the lattice on which
/// `Σ cᵢvᵢ²` vanishes modulo `c₀c₁c₂` is reduced for the weights `|cᵢ|`, and
/// a zero is sought among small combinations of the reduced basis. `Ok(None)`
/// when a local condition fails, `Err` when a modulus could not be factored
/// or the search came up empty.
fn lattice_point(c: &[BigInt], hints: &[BigUint]) -> Result<Option<[BigInt; 3]>, ()> {
    let moduli: Vec<BigInt> = c.iter().map(|x| x.abs()).collect();
    let n: BigInt = moduli.iter().product();
    let mut u = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let m = &moduli[i];
        if m.is_one() {
            continue;
        }
        // modulo cᵢ: vⱼ ≡ λ·vₖ with λ² ≡ −cₖ/cⱼ
        let r = (-&c[k] * mod_inverse(&c[j], m)).mod_floor(m);
        let lambda = match sqrt_mod_with(&r, m.magnitude(), hints) {
            ModSqrt::Root(l) => BigInt::from(l),
            ModSqrt::NoRoot => return Ok(None),
            ModSqrt::Unknown => return Err(()),
        };
        let cof = &n / m;
        let e = &cof * mod_inverse(&cof, m);
        u[j] += &e;
        u[k] -= &e * &lambda;
    }
    let basis = kernel_mod(&u, &n);
    let weights: Vec<BigInt> = moduli.clone();
    let reduced = lll(basis, &weights);
    let value = |v: &[BigInt; 3]| (0..3).fold(BigInt::zero(), |acc, i| acc + &c[i] * &v[i] * &v[i]);
    let mut best: Option<(BigInt, [BigInt; 3])> = None;
    for x in -BOX..=BOX {
        for y in -BOX..=BOX {
            for z in -BOX..=BOX {
                if (x, y, z) <= (0, 0, 0) {
                    continue;
                }
                let v: [BigInt; 3] =
                    std::array::from_fn(|i| &reduced[0][i] * x + &reduced[1][i] * y + &reduced[2][i] * z);
                if value(&v).is_zero() {
                    let norm = (0..3).fold(BigInt::zero(), |acc, i| acc + &weights[i] * &v[i] * &v[i]);
                    if best.as_ref().is_none_or(|(b, _)| norm < *b) {
                        best = Some((norm, v));
                    }
                }
            }
        }
    }
    best.map(|(_, v)| Some(v)).ok_or(())
}

/// A basis of `{v ∈ ℤ³ : u·v ≡ 0 mod n}`, read off a unimodular column
/// reduction of the row `(u, −n)`.
fn kernel_mod(u: &[BigInt; 3], n: &BigInt) -> Vec<[BigInt; 3]> {
    let mut row = vec![u[0].clone(), u[1].clone(), u[2].clone(), -n];
    let mut cols: Vec<Vec<BigInt>> =
        (0..4).map(|i| (0..4).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    for i in 1..4 {
        if row[i].is_zero() {
            continue;
        }
        if row[0].is_zero() {
            row.swap(0, i);
            cols.swap(0, i);
            continue;
        }
        let eg = row[0].extended_gcd(&row[i]);
        let (a, b) = (&row[0] / &eg.gcd, &row[i] / &eg.gcd);
        let c0: Vec<BigInt> = (0..4).map(|r| &eg.x * &cols[0][r] + &eg.y * &cols[i][r]).collect();
        let ci: Vec<BigInt> = (0..4).map(|r| &b * &cols[0][r] - &a * &cols[i][r]).collect();
        cols[0] = c0;
        cols[i] = ci;
        row[0] = eg.gcd;
        row[i] = BigInt::zero();
    }
    cols[1..].iter().map(|col| [col[0].clone(), col[1].clone(), col[2].clone()]).collect()
}

/// LLL reduction with `δ = 3/4` for the form `Σ wᵢvᵢ²`.
fn lll(mut b: Vec<[BigInt; 3]>, w: &[BigInt]) -> Vec<[BigInt; 3]> {
    let gram_schmidt = |b: &[[BigInt; 3]]| {
        let n = b.len();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut norms: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<BigRational> = b[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
            for j in 0..i {
                let num = (0..3).fold(BigRational::zero(), |acc, t| {
                    acc + BigRational::from_integer(&w[t] * &b[i][t]) * &star[j][t]
                });
                mu[i][j] = num / &norms[j];
                for t in 0..3 {
                    v[t] = &v[t] - &mu[i][j] * &star[j][t];
                }
            }
            norms.push((0..3).fold(BigRational::zero(), |acc, t| {
                acc + BigRational::from_integer(w[t].clone()) * &v[t] * &v[t]
            }));
            star.push(v);
        }
        (mu, norms)
    };
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < b.len() {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&b);
            let r = mu[k][j].round().to_integer();
            if !r.is_zero() {
                let bj = b[j].clone();
                for t in 0..3 {
                    b[k][t] -= &r * &bj[t];
                }
            }
        }
        let (mu, norms) = gram_schmidt(&b);
        let m = &mu[k][k - 1];
        if norms[k] >= (&delta - m * m) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn solve(a: i64, b: i64, c: i64) -> Legendre {
        solve_diagonal(&[Rational::from_i64(a), Rational::from_i64(b), Rational::from_i64(c)])
    }

    fn holds(a: i64, b: i64, c: i64, s: &[BigInt; 3]) -> bool {
        let v = BigInt::from(a) * &s[0] * &s[0] + BigInt::from(b) * &s[1] * &s[1] + BigInt::from(c) * &s[2] * &s[2];
        v.is_zero() && s.iter().any(|x| !x.is_zero())
    }

    #[test]
    fn classical_cases() {
        assert_eq!(solve(1, 1, 1), Legendre::NoSolution);
        assert_eq!(solve(1, 1, -3), Legendre::NoSolution);
        assert_eq!(solve(3, 5, -7), Legendre::NoSolution);
        for (a, b, c) in [(1, 1, -2), (1, 1, -5), (3, -5, 2), (5, 79, -101), (12, 18, -50), (1, -1, 7)] {
            match solve(a, b, c) {
                Legendre::Solution(s) => assert!(holds(a, b, c, &s), "({a},{b},{c})"),
                other => panic!("({a},{b},{c}) gave {other:?}"),
            }
        }
    }

    #[test]
    fn rational_coefficients() {
        let c = [Rational::new_i64(1, 2), Rational::new_i64(-3, 4), Rational::from_i64(1)];
        assert!(matches!(solve_diagonal(&c), Legendre::Solution(_)));
    }

    fn brute_force_has_point(a: i64, b: i64, c: i64) -> bool {
        for x in -12i64..=12 {
            for y in -12i64..=12 {
                for z in 0i64..=12 {
                    if (x, y, z) != (0, 0, 0) && a * x * x + b * y * y + c * z * z == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    proptest! {
        #[test]
        fn descent_agrees_with_search(a in -30i64..=30, b in -30i64..=30, c in -30i64..=30) {
            prop_assume!(a != 0 && b != 0 && c != 0);
            match solve(a, b, c) {
                Legendre::Solution(s) => prop_assert!(holds(a, b, c, &s)),
                Legendre::NoSolution => prop_assert!(!brute_force_has_point(a, b, c)),
                Legendre::Undecided => prop_assert!(false, "small inputs always factor"),
            }
        }
    }
}
