//! Seeded inputs shared by the kernel benchmarks.

use apolar_core::poly::Space;
use apolar_core::sample::{random_form, rng};
use apolar_core::{Form, Rational};

/// A dense binary form of the given degree with coefficients in `[−20, 20]`.
pub fn binary(degree: u32, seed: u64) -> Form<Rational> {
    random_form(&Space::binary(), &[degree], 20, &mut rng(seed))
}

/// A dense ternary quartic with coefficients in `[−20, 20]`.
pub fn ternary_quartic(seed: u64) -> Form<Rational> {
    random_form(&Space::primal(3), &[4], 20, &mut rng(seed))
}

/// A dense bicubic on `P¹×P¹`.
pub fn bicubic(seed: u64) -> Form<Rational> {
    random_form(&Space::double_binary(), &[3, 3], 20, &mut rng(seed))
}

/// The diagonal conic `a·X0² + b·X1² + c·X2²`.
pub fn diagonal_conic(a: i64, b: i64, c: i64) -> Form<Rational> {
    let sp = Space::lift(3);
    let term = |i: usize, v: i64| {
        let mut e = [0; 3];
        e[i] = 2;
        Form::monomial(sp.clone(), &e, Rational::new_i64(v, 1))
    };
    term(0, a).add(&term(1, b)).and_then(|f| f.add(&term(2, c))).expect("terms share a space")
}
