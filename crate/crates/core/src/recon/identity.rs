//! The Taylor-like identity relating a form to its pairings against
//! products of a dual basis.

use num_bigint::BigInt;

use super::lift::{multisets, product_power};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::combinatorics::{factorial, multinomial};
use crate::poly::{apolar_pair, scalar_from_bigint, Form, Space};

/// (k·d)! / (d!)^k.
pub fn taylor_factor(k: u32, d: u32) -> BigInt {
    factorial(k * d) / factorial(d).pow(k)
}

/// The dual monomials `w^α / α!` of the given degree, in the order of
/// `space.basis(degree)`.
pub fn canonical_dual_basis<F: Field>(space: &Space, degree: &[u32]) -> Vec<Form<F>> {
    let dual = space.dual();
    space
        .basis(degree)
        .into_iter()
        .map(|m| {
            let c = F::one().checked_div(&scalar_from_bigint::<F>(&m.factorial())).expect("nonzero factorial");
            Form::monomial(dual.clone(), &m.exps(space.nvars()), c)
        })
        .collect()
}

/// The dual basis `q*` of a basis `q` of a space of forms, with
/// `D(q*ᵢ, qⱼ) = δᵢⱼ`.
pub fn dual_basis<F: Field>(basis: &[Form<F>]) -> Result<Vec<Form<F>>> {
    let first = basis.first().ok_or(Error::DependentBasis)?;
    let (space, degree) = (first.space().clone(), first.degree().to_vec());
    if basis.iter().any(|q| *q.space() != space || q.degree() != degree) {
        return Err(Error::InhomogeneousImages);
    }
    let canon = canonical_dual_basis::<F>(&space, &degree);
    if canon.len() != basis.len() {
        return Err(Error::DependentBasis);
    }
    let c = Matrix::from_rows(basis.iter().map(|q| q.coefficients()).collect());
    let p = c.transpose().inverse().map_err(|_| Error::DependentBasis)?;
    Ok((0..basis.len())
        .map(|i| {
            let row = p.row(i);
            canon.iter().zip(row).fold(Form::zero(space.dual(), degree.clone()), |acc, (u, s)| {
                acc.add(&u.scale(s)).expect("same space")
            })
        })
        .collect())
}

/// `Σ D(q*ᵢ₁⋯q*ᵢₖ, f)·qᵢ₁⋯qᵢₖ` over all ordered index tuples.
pub fn taylor_sum<F: Field>(f: &Form<F>, basis: &[Form<F>], duals: &[Form<F>]) -> Result<Form<F>> {
    let d = basis.first().ok_or(Error::DependentBasis)?.total_degree();
    if d == 0 || f.total_degree() % d != 0 {
        return Err(Error::DegreeMismatch(format!("degree {} is not a multiple of {d}", f.total_degree())));
    }
    let k = f.total_degree() / d;
    let mut acc = Form::zero(f.space().clone(), f.degree().to_vec());
    for m in multisets(basis.len(), k) {
        let pairing = apolar_pair(&product_power(duals, &m)?, f)?;
        let c = pairing.to_scalar().ok_or_else(|| Error::DegreeMismatch("pairing is not a scalar".into()))?;
        if c.is_zero() {
            continue;
        }
        let w = c * &scalar_from_bigint::<F>(&multinomial(&m));
        acc = acc.add(&product_power(basis, &m)?.scale(&w))?;
    }
    Ok(acc)
}

/// Whether `taylor_sum(f, basis, dual_basis(basis))` equals
/// `((k·d)!/d!^k)·f`.
pub fn taylor_identity_check<F: Field>(f: &Form<F>, basis: &[Form<F>]) -> Result<bool> {
    let duals = dual_basis(basis)?;
    let sum = taylor_sum(f, basis, &duals)?;
    let d = basis[0].total_degree();
    let factor = scalar_from_bigint::<F>(&taylor_factor(f.total_degree() / d, d));
    Ok(sum == f.scale(&factor))
}
