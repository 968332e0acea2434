//! Lifts of a form to the space of its coordinates with respect to a family,
//! and the quadratic relations satisfied by a family.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{pairing_matrix, Matrix};
use crate::poly::combinatorics::{compositions, multinomial};
use crate::poly::{apolar_pair, scalar_from_bigint, Form, Space};
use crate::transvectant::transvect_levels;

/// Exponent vectors of the multisets of size `k` drawn from `r1` indices,
/// in descending lex order.
pub fn multisets(r1: usize, k: u32) -> Vec<Vec<u32>> {
    compositions(k, r1)
}

/// `Π formsᵢ^mᵢ`, the empty product being the constant 1 in the forms'
/// space.
pub(crate) fn product_power<F: Field>(forms: &[Form<F>], m: &[u32]) -> Result<Form<F>> {
    let first = forms.first().ok_or(Error::ArityMismatch { expected: m.len(), got: 0 })?;
    let mut acc = Form::constant(first.space().clone(), F::one());
    for (g, &e) in forms.iter().zip(m) {
        if e > 0 {
            acc = acc.mul(&g.pow(e))?;
        }
    }
    Ok(acc)
}

fn scalar_of<F: Field>(v: Form<F>) -> Result<F> {
    v.to_scalar().ok_or_else(|| Error::DegreeMismatch(format!("pairing of degree {:?} is not a scalar", v.degree())))
}

fn assemble<F: Field>(r1: usize, k: u32, mut coeff: impl FnMut(&[u32]) -> Result<F>) -> Result<Form<F>> {
    let sp = Space::lift(r1);
    let mut acc = Form::zero(sp.clone(), vec![k]);
    for m in multisets(r1, k) {
        let c = coeff(&m)?;
        if c.is_zero() {
            continue;
        }
        let w = c * &scalar_from_bigint::<F>(&multinomial(&m));
        acc = acc.add(&Form::monomial(sp.clone(), &m, w))?;
    }
    Ok(acc)
}

fn lift_degree<F: Field>(f: &Form<F>, family: &[Form<F>]) -> Result<u32> {
    let d = family.first().ok_or(Error::ArityMismatch { expected: 1, got: 0 })?.total_degree();
    if d == 0 || f.total_degree() % d != 0 {
        return Err(Error::DegreeMismatch(format!(
            "family degree {d} does not divide the degree {} of the form",
            f.total_degree()
        )));
    }
    Ok(f.total_degree() / d)
}

/// `Σ D(pᵢ₁⋯pᵢₖ, f)·Xᵢ₁⋯Xᵢₖ` over ordered index tuples, for a family `p`
/// of forms in the dual space of `f`.
pub fn build_lift<F: Field>(f: &Form<F>, p: &[Form<F>]) -> Result<Form<F>> {
    let k = lift_degree(f, p)?;
    assemble(p.len(), k, |m| scalar_of(apolar_pair(&product_power(p, m)?, f)?))
}

/// `Σ (qᵢ₁⋯qᵢₖ, f)·Xᵢ₁⋯Xᵢₖ` with the full transvectant in every group, for
/// a family `q` of covariants in the space of `f`.
pub fn transvectant_lift<F: Field>(f: &Form<F>, q: &[Form<F>]) -> Result<Form<F>> {
    let k = lift_degree(f, q)?;
    let levels = f.degree().to_vec();
    assemble(q.len(), k, |m| scalar_of(transvect_levels(&product_power(q, m)?, f, &levels)?))
}

/// The family `q* = M⁻ᵀ·q` with `M = (D(pᵢ, qⱼ))`, so that
/// `D(pᵢ, q*ⱼ) = δᵢⱼ`; also returns `M`.
pub fn dual_from_pair<F: Field>(p: &[Form<F>], q: &[Form<F>]) -> Result<(Vec<Form<F>>, Matrix<F>)> {
    let m = pairing_matrix(p, q)?;
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let inv = m.inverse()?;
    let duals = (0..q.len())
        .map(|j| {
            q.iter().enumerate().try_fold(Form::zero(q[0].space().clone(), q[0].degree().to_vec()), |acc, (l, ql)| {
                acc.add(&ql.scale(inv.get(l, j)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((duals, m))
}

/// `R(Mᵗ·X)`: the relation satisfied by `M⁻ᵀ·q` when `R(q) = 0`.
pub fn pairing_to_dual<F: Field>(r: &Form<F>, m: &Matrix<F>) -> Form<F> {
    r.transform(&m.transpose().to_rows())
}

/// Quadratic forms `R` in the lift variables with `R(q) = 0`, read off the
/// right kernel of `(D(pᵢpⱼ, qₗqₘ))` over pairs `i ≤ j`, `l ≤ m`.
pub fn quadric_relations<F: Field>(p: &[Form<F>], q: &[Form<F>]) -> Result<Vec<Form<F>>> {
    if p.len() != q.len() {
        return Err(Error::ArityMismatch { expected: p.len(), got: q.len() });
    }
    let r1 = q.len();
    let pairs: Vec<(usize, usize)> = (0..r1).flat_map(|i| (i..r1).map(move |j| (i, j))).collect();
    let pp: Vec<Form<F>> = pairs.iter().map(|&(i, j)| p[i].mul(&p[j])).collect::<Result<_>>()?;
    let qq: Vec<Form<F>> = pairs.iter().map(|&(i, j)| q[i].mul(&q[j])).collect::<Result<_>>()?;
    let g = pairing_matrix(&pp, &qq)?;
    let sp = Space::lift(r1);
    Ok(g.right_kernel()
        .into_iter()
        .map(|v| {
            let r = pairs.iter().zip(&v).fold(Form::zero(sp.clone(), vec![2]), |acc, (&(i, j), c)| {
                let mut e = vec![0u32; r1];
                e[i] += 1;
                e[j] += 1;
                acc.add(&Form::monomial(sp.clone(), &e, c.clone())).expect("same space")
            });
            r.primitive(true).0
        })
        .collect())
}

/// Reads a lift in `X0..Xr` as a form over another space with the same
/// number of variables.
pub fn lift_as_form<F: Field>(lift: &Form<F>, space: &Space) -> Result<Form<F>> {
    lift.with_space(space.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::parse_form;
    use crate::recon::identity::{canonical_dual_basis, taylor_factor};
    use crate::transvectant::{tau, tau2};

    fn canonical(space: &Space, degree: &[u32]) -> Vec<Form<Rational>> {
        space
            .basis(degree)
            .into_iter()
            .map(|m| Form::monomial(space.clone(), &m.exps(space.nvars()), Rational::from_i64(1)))
            .collect()
    }

    fn relation_count(space: &Space, degree: &[u32]) -> usize {
        let q = canonical(space, degree);
        let p = canonical_dual_basis::<Rational>(space, degree);
        quadric_relations(&p, &q).unwrap().len()
    }

    #[test]
    fn veronese_conic() {
        let rel = quadric_relations(
            &canonical_dual_basis::<Rational>(&Space::binary(), &[2]),
            &canonical(&Space::binary(), &[2]),
        )
        .unwrap();
        assert_eq!(rel, vec![parse_form("X0*X2-X1^2", &Space::lift(3)).unwrap()]);
    }

    #[test]
    fn dimension_law() {
        assert_eq!(relation_count(&Space::binary(), &[2]), 6 - 5);
        assert_eq!(relation_count(&Space::binary(), &[3]), 10 - 7);
        assert_eq!(relation_count(&Space::primal(3), &[2]), 21 - 15);
        assert_eq!(relation_count(&Space::double_binary(), &[1, 1]), 10 - 9);
    }

    #[test]
    fn relations_annihilate_the_family() {
        let sp = Space::binary();
        let q: Vec<_> =
            ["x0^2-x1^2", "x0*x1+2*x1^2", "3*x0^2+x0*x1"].iter().map(|s| parse_form(s, &sp).unwrap()).collect();
        let p: Vec<_> = q.iter().map(|g| tau(g).unwrap()).collect();
        let rel = quadric_relations(&p, &q).unwrap();
        assert_eq!(rel.len(), 1);
        assert!(rel[0].substitute(&q).unwrap().is_zero());
        let (duals, m) = dual_from_pair(&p, &q).unwrap();
        assert!(pairing_to_dual(&rel[0], &m).substitute(&duals).unwrap().is_zero());
    }

    #[test]
    fn lift_evaluated_at_duals_recovers_the_form() {
        let sp = Space::binary();
        let q: Vec<_> = ["x0^2+x1^2", "x0*x1-x1^2", "x0^2-3*x0*x1"].iter().map(|s| parse_form(s, &sp).unwrap()).collect();
        let p: Vec<_> = q.iter().map(|g| tau(g).unwrap()).collect();
        let f = parse_form("x0^6-2*x0^5*x1+7*x0^2*x1^4-x1^6", &sp).unwrap();
        let (duals, _) = dual_from_pair(&p, &q).unwrap();
        let lift = build_lift(&f, &p).unwrap();
        let back = lift.substitute(&duals).unwrap();
        let c = Rational::from_integer(taylor_factor(3, 2));
        assert_eq!(back, f.scale(&c));
    }

    #[test]
    fn transvectant_lift_is_a_multiple_of_the_pairing_lift() {
        let sp = Space::binary();
        let q: Vec<_> = ["2*x0+x1", "x0-x1"].iter().map(|s| parse_form(s, &sp).unwrap()).collect();
        let p: Vec<_> = q.iter().map(|g| tau(g).unwrap()).collect();
        let f = parse_form("x0^5+3*x0^2*x1^3-x1^5", &sp).unwrap();
        let t = transvectant_lift(&f, &q).unwrap();
        let d = build_lift(&f, &p).unwrap();
        assert_eq!(d.ratio_to(&t), Some(Rational::from_integer(taylor_factor(5, 1))));

        let sp2 = Space::double_binary();
        let q2: Vec<_> = ["x0*u0+x1*u1", "x0*u1", "x1*u0-x0*u0", "x1*u1+x0*u1"]
            .iter()
            .map(|s| parse_form(s, &sp2).unwrap())
            .collect();
        let p2: Vec<_> = q2.iter().map(|g| tau2(g).unwrap()).collect();
        let f2 = parse_form("x0^2*x1*u0^3-x1^3*u0*u1^2+2*x0^3*u1^3", &sp2).unwrap();
        let t2 = transvectant_lift(&f2, &q2).unwrap();
        let d2 = build_lift(&f2, &p2).unwrap();
        assert_eq!(d2.ratio_to(&t2), Some(Rational::from_i64(36)));
    }

    #[test]
    fn order_one_lift_is_the_form_itself() {
        let sp = Space::binary();
        let f = parse_form("x0^5-4*x0*x1^4", &sp).unwrap();
        let p = canonical_dual_basis::<Rational>(&sp, &[1]);
        let lift = build_lift(&f, &p).unwrap();
        assert_eq!(lift_as_form(&lift, &sp).unwrap(), f.scale(&Rational::from_i64(120)));
    }
}
