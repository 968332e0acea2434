//! The generic reconstruction machinery: the Taylor-like identity, lifts
//! built from dual families, quadratic relations of the image, and
//! parametrizations of conics and rank-4 quadrics.

pub mod conic;
mod identity;
pub mod legendre;
mod lift;
pub mod quadric;

pub use conic::{parametrize_conic, ConicParametrization, PointMethod, DEFAULT_HEIGHT_BOUND};
pub use identity::{canonical_dual_basis, dual_basis, taylor_factor, taylor_identity_check, taylor_sum};
pub use lift::{
    build_lift, dual_from_pair, lift_as_form, multisets, pairing_to_dual, quadric_relations, transvectant_lift,
};
pub use quadric::{quadric_normal_form, NormalForm, NormalFormMethod};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::poly::{Form, Space};

/// Symmetric matrix `A` of a quadratic form, with `q(X) = Xᵗ·A·X`.
pub fn quadric_matrix<F: Field>(q: &Form<F>) -> Result<Matrix<F>> {
    if q.space().groups().len() != 1 || q.degree() != [2] {
        return Err(Error::DegreeMismatch("expected a quadratic form in one group of variables".into()));
    }
    let n = q.space().nvars();
    let half = F::from_rational(&Rational::new_i64(1, 2));
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            let c = q.coeff(&e);
            if i == j {
                a.set(i, i, c);
            } else {
                let h = c * &half;
                a.set(i, j, h.clone());
                a.set(j, i, h);
            }
        }
    }
    Ok(a)
}

/// The quadratic form `Xᵗ·A·X` over the given space.
pub fn quadric_from_matrix<F: Field>(a: &Matrix<F>, space: &Space) -> Form<F> {
    let n = a.rows();
    let mut q = Form::zero(space.clone(), vec![2]);
    for i in 0..n {
        for j in i..n {
            let c = if i == j { a.get(i, i).clone() } else { a.get(i, j).clone() + a.get(j, i) };
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            q = q.add(&Form::monomial(space.clone(), &e, c)).expect("same space");
        }
    }
    q
}

/// `B(u, v) = uᵗ·A·v`.
pub fn bilinear<F: Field>(a: &Matrix<F>, u: &[F], v: &[F]) -> F {
    let av = a.mul_vec(v);
    u.iter().zip(&av).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y)
}

/// A congruence `T` with `Tᵗ·A·T` diagonal; returns the diagonal and `T`.
pub fn diagonalize<F: Field>(a: &Matrix<F>) -> (Vec<F>, Matrix<F>) {
    let n = a.rows();
    let mut t = Matrix::<F>::identity(n);
    let cur = |t: &Matrix<F>| t.transpose().mul(a).and_then(|m| m.mul(t)).expect("square");
    for k in 0..n {
        let c = cur(&t);
        if c.get(k, k).is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !c.get(i, i).is_zero()) {
                swap_cols(&mut t, k, i);
            } else if let Some(j) = (k + 1..n).find(|&j| !c.get(k, j).is_zero()) {
                add_col(&mut t, k, j, &F::one());
            } else if let Some((i, j)) =
                (k + 1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !c.get(i, j).is_zero())
            {
                add_col(&mut t, i, j, &F::one());
                swap_cols(&mut t, k, i);
            } else {
                continue;
            }
        }
        let c = cur(&t);
        let inv = c.get(k, k).inv().expect("nonzero pivot");
        for j in k + 1..n {
            let f = -(c.get(k, j).clone() * &inv);
            if !f.is_zero() {
                add_col(&mut t, j, k, &f);
            }
        }
    }
    let c = cur(&t);
    ((0..n).map(|i| c.get(i, i).clone()).collect(), t)
}

fn swap_cols<F: Field>(t: &mut Matrix<F>, a: usize, b: usize) {
    for r in 0..t.rows() {
        let (x, y) = (t.get(r, a).clone(), t.get(r, b).clone());
        t.set(r, a, y);
        t.set(r, b, x);
    }
}

/// Column `dst += f · column src`.
fn add_col<F: Field>(t: &mut Matrix<F>, dst: usize, src: usize, f: &F) {
    for r in 0..t.rows() {
        let v = t.get(r, dst).clone() + f.clone() * t.get(r, src);
        t.set(r, dst, v);
    }
}

/// Substitutes `X ↦ T·Y` in a form over a single group of variables.
pub fn change_variables<F: Field>(q: &Form<F>, t: &Matrix<F>) -> Form<F> {
    q.transform(&t.to_rows())
}

/// Limit on the number of lift variables handled by the parametrization
/// step.
pub fn rebase_veronese(quadrics: &[Form<Rational>], r: usize) -> Result<Rebase> {
    match (r, quadrics) {
        (2, [q]) => Ok(Rebase::Conic(parametrize_conic(q, DEFAULT_HEIGHT_BOUND)?)),
        (3, [q]) => Ok(Rebase::Quadric(quadric_normal_form(q)?)),
        _ => Err(Error::Unsupported(format!(
            "re-basing the Veronese image for r = {r} with {} quadrics needs a general Noether normalization",
            quadrics.len()
        ))),
    }
}

/// The parametrization chosen for a Veronese image.
#[derive(Debug, Clone)]
pub enum Rebase {
    Conic(ConicParametrization),
    Quadric(NormalForm),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;
    use proptest::prelude::*;

    fn lift3(s: &str) -> Form<Rational> {
        parse_form(s, &Space::lift(3)).unwrap()
    }

    #[test]
    fn matrix_round_trip() {
        let q = lift3("X0^2-3*X0*X1+5*X1*X2-X2^2");
        let a = quadric_matrix(&q).unwrap();
        assert_eq!(a.get(0, 1), &Rational::new_i64(-3, 2));
        assert_eq!(quadric_from_matrix(&a, &Space::lift(3)), q);
    }

    #[test]
    fn diagonalizes_forms_without_squares() {
        let q = lift3("X0*X1+X1*X2");
        let (d, t) = diagonalize(&quadric_matrix(&q).unwrap());
        let qt = change_variables(&q, &t);
        let diag = quadric_from_matrix(&Matrix::from_rows((0..3).map(|i| (0..3).map(|j| if i == j { d[i].clone() } else { Rational::from_i64(0) }).collect()).collect()), &Space::lift(3));
        assert_eq!(qt, diag);
        assert_eq!(d.iter().filter(|c| c.is_zero()).count(), 1);
    }

    #[test]
    fn rebase_contract() {
        let conic = lift3("X0*X2-X1^2");
        assert!(matches!(rebase_veronese(&[conic.clone()], 2), Ok(Rebase::Conic(_))));
        let quad = parse_form("X0*X3-X1*X2", &Space::lift(4)).unwrap();
        assert!(matches!(rebase_veronese(&[quad], 3), Ok(Rebase::Quadric(_))));
        assert!(matches!(rebase_veronese(&[conic], 5), Err(Error::Unsupported(_))));
    }

    proptest! {
        #[test]
        fn congruence_diagonalization(c in proptest::collection::vec(-6i64..=6, 10)) {
            let sp = Space::lift(4);
            let mut q = Form::zero(sp.clone(), vec![2]);
            let mut idx = 0;
            for i in 0..4 {
                for j in i..4 {
                    let mut e = vec![0u32; 4];
                    e[i] += 1;
                    e[j] += 1;
                    q = q.add(&Form::monomial(sp.clone(), &e, Rational::from_i64(c[idx]))).unwrap();
                    idx += 1;
                }
            }
            let a = quadric_matrix(&q).unwrap();
            let (d, t) = diagonalize(&a);
            let m = t.transpose().mul(&a).unwrap().mul(&t).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let expect = if i == j { d[i].clone() } else { Rational::from_i64(0) };
                    prop_assert_eq!(m.get(i, j), &expect);
                }
            }
            prop_assert!(!t.det().unwrap().is_zero());
        }
    }
}
