//! Seeded random inputs for tests, batteries and self-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::poly::{Form, Space};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A dense form with independent integer coefficients in `[−bound, bound]`.
pub fn random_form(space: &Space, degree: &[u32], bound: i64, rng: &mut SampleRng) -> Form<Rational> {
    let n = space.basis(degree).len();
    let coeffs: Vec<Rational> = (0..n).map(|_| Rational::from_i64(rng.gen_range(-bound..=bound))).collect();
    Form::from_coefficients(space.clone(), degree.to_vec(), &coeffs)
}

/// A random integer matrix of determinant one: a product of elementary
/// transvections with multipliers in `[−bound, bound]`.
pub fn random_unimodular(n: usize, bound: i64, rng: &mut SampleRng) -> Matrix<Rational> {
    let mut m = Matrix::<Rational>::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = Rational::from_i64(rng.gen_range(-bound..=bound));
        for col in 0..n {
            let v = m.get(i, col).clone() + c.clone() * m.get(j, col);
            m.set(i, col, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_repeat() {
        let a = random_form(&Space::binary(), &[5], 20, &mut rng(7));
        let b = random_form(&Space::binary(), &[5], 20, &mut rng(7));
        assert_eq!(a, b);
        assert_eq!(a.degree(), [5]);
    }

    #[test]
    fn unimodular_has_unit_determinant() {
        let m = random_unimodular(3, 4, &mut rng(1));
        assert_eq!(m.det().unwrap(), Rational::from_i64(1));
    }
}
