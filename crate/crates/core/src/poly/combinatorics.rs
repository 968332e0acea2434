//! Counting helpers and the brute-force multinomial identity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0u8);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// (Σ parts)! / Π partsᵢ!.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let total: u32 = parts.iter().sum();
    parts.iter().fold(factorial(total), |acc, &p| acc / factorial(p))
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative
/// integers, in descending lex order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Checks, for every exponent vector α of total degree k·d in n+1
/// variables, that summing Π_rows multinomial(row) over the k×(n+1)
/// nonnegative matrices with row sums d and column sums α gives
/// multinomial(α).
pub fn multinomial_check(k: u32, d: u32, n: u32) -> bool {
    let rows = compositions(d, n as usize + 1);
    let weights: Vec<BigInt> = rows.iter().map(|r| multinomial(r)).collect();
    let mut sums: HashMap<Vec<u32>, BigInt> = HashMap::new();
    let mut idx = vec![0usize; k as usize];
    loop {
        let mut alpha = vec![0u32; n as usize + 1];
        let mut w = BigInt::one();
        for &i in &idx {
            for (a, e) in alpha.iter_mut().zip(&rows[i]) {
                *a += e;
            }
            w *= &weights[i];
        }
        *sums.entry(alpha).or_insert_with(|| BigInt::from(0u8)) += w;
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return compositions(k * d, n as usize + 1)
                    .iter()
                    .all(|a| sums.get(a).is_some_and(|s| *s == multinomial(a)));
            }
            idx[pos] += 1;
            if idx[pos] < rows.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(multinomial(&[1, 1]), BigInt::from(2));
        assert_eq!(multinomial(&[3, 3]), BigInt::from(20));
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
    }

    #[test]
    fn composition_order_and_count() {
        let c = compositions(2, 2);
        assert_eq!(c, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn identity_holds_on_examples() {
        assert!(multinomial_check(2, 1, 1));
        assert!(multinomial_check(1, 3, 2));
        assert!(multinomial_check(3, 2, 1));
    }
}
