//! Symbolic covariants: expression trees, their evaluation, the catalogs
//! used by the pipelines and the order-one search for odd binary forms.

pub mod catalog;
mod expr;
mod search;

pub use catalog::Catalog;
pub use expr::{
    constant, evaluate, input, named, omega, pair, power, product, rehomogenize, restrict, tau, transvect,
    transvect2, Cov, Evaluator, Expr, Node, Shape, Signature, Value,
};
pub use search::{search_order1_binary, Candidate, SearchBounds, SearchOutcome};

use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::Form;

/// Linear independence of evaluated family members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Independence<F> {
    pub independent: bool,
    pub rank: usize,
    /// Determinant of the coefficient matrix when it is square.
    pub det: Option<F>,
}

/// Independence of forms of one common degree, from the matrix of their
/// coefficients in the canonical monomial basis.
pub fn independence_at<F: Field>(values: &[Form<F>]) -> Independence<F> {
    let rows: Vec<Vec<F>> = values.iter().map(|v| v.coefficients()).collect();
    let same = values.windows(2).all(|w| w[0].space() == w[1].space() && w[0].degree() == w[1].degree());
    if !same || rows.is_empty() {
        return Independence { independent: false, rank: 0, det: None };
    }
    let m = Matrix::from_rows(rows);
    let rank = m.rank();
    let det = if m.is_square() { m.det().ok() } else { None };
    Independence { independent: rank == values.len(), rank, det }
}

/// Evaluates every member of a catalog family at the inputs.
pub fn evaluate_family<F: Field>(cat: &Catalog, inputs: &[Form<F>]) -> crate::Result<Vec<Form<F>>> {
    let mut ev = Evaluator::new(inputs.to_vec());
    cat.family.iter().map(|e| ev.form(e)).collect()
}
