//! Dense exact linear algebra.
//!
//! Determinants use fraction-free (Bareiss) elimination after clearing the
//! rational denominators of each row; inverses and kernels use Gauss–Jordan
//! reduction over the field. Kernel vectors come out as primitive integer
//! vectors with a positive first nonzero entry.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{normalize_primitive, Field, Fp, Rational, DEFAULT_PRIME};
use crate::poly::{apolar_pair, Form};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != o.rows {
            return Err(Error::DegreeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut r: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = r.get(i, j).clone() + &(a.clone() * o.get(k, j));
                    r.set(i, j, v);
                }
            }
        }
        Ok(r)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += &(a.clone() * b);
                }
                acc
            })
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut m = self.to_rows();
        let mut scale = F::one();
        for row in m.iter_mut() {
            scale *= &clear_denominators(row);
        }
        let mut sign = false;
        let mut prev = F::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(F::zero());
                };
                m.swap(k, p);
                sign = !sign;
            }
            let prev_inv = prev.inv()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m[i][j].clone() * &m[k][k] - m[i][k].clone() * &m[k][j]) * &prev_inv;
                    m[i][j] = v;
                }
                m[i][k] = F::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone() * &scale.inv()?;
        Ok(if sign { -d } else { d })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("nonzero pivot");
            for v in m[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &(f.clone() * pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows_sized(m, self.rows, self.cols), pivots)
    }

    fn from_rows_sized(rows: Vec<Vec<F>>, r: usize, c: usize) -> Self {
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// A basis of `{v : M·v = 0}`, each vector normalized to a primitive
    /// integer vector with positive first nonzero entry.
    pub fn right_kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                normalize_primitive(&mut v, true);
                v
            })
            .collect()
    }
}

/// Multiplies a row by the lcm of the denominators of its rational
/// coordinates, returning the multiplier.
fn clear_denominators<F: Field>(row: &mut [F]) -> F {
    let mut den = BigInt::one();
    for c in row.iter() {
        match c.rational_components() {
            Some(comps) => {
                for q in comps {
                    den = den.lcm(q.denom());
                }
            }
            None => return F::one(),
        }
    }
    if den.is_one() {
        return F::one();
    }
    let s = Rational::from_integer(den);
    for c in row.iter_mut() {
        *c = c.scale_rational(&s);
    }
    F::from_rational(&s)
}

impl Matrix<Rational> {
    /// Rank modulo the default screening prime, or `None` when a
    /// denominator vanishes there. The rank mod p never exceeds the true
    /// rank, so a full rank mod p certifies full rank.
    pub fn rank_mod_p(&self) -> Option<usize> {
        let data: Option<Vec<Fp<DEFAULT_PRIME>>> = self.data.iter().map(Fp::try_from_rational).collect();
        Some(Matrix { rows: self.rows, cols: self.cols, data: data? }.rank())
    }
}

/// The matrix `(D(pᵢ, qⱼ))` of scalar pairings between a dual family and a
/// primal family of equal degree.
pub fn pairing_matrix<F: Field>(p: &[Form<F>], q: &[Form<F>]) -> Result<Matrix<F>> {
    let mut m = Matrix::zeros(p.len(), q.len());
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            let v = apolar_pair(pi, qj)?;
            let s = v.to_scalar().ok_or_else(|| {
                Error::DegreeMismatch(format!(
                    "pairing of degree {:?} with {:?} is not a scalar",
                    pi.degree(),
                    qj.degree()
                ))
            })?;
            m.set(i, j, s);
        }
    }
    Ok(m)
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Quad, F61};
    use crate::poly::{parse_form, Space};
    use proptest::prelude::*;

    type M = Matrix<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor: Vec<Vec<Rational>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
            let t = m[0][j].clone() * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        acc
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(M::identity(3).det().unwrap(), q(1));
        assert_eq!(M::from_i64(&[vec![0, 1], vec![1, 0]]).det().unwrap(), q(-1));
        assert!(matches!(M::zeros(2, 3).det(), Err(Error::NotSquare { .. })));
        let h = M::from_rows(vec![
            vec![Rational::new_i64(1, 2), Rational::new_i64(1, 3)],
            vec![Rational::new_i64(1, 3), Rational::new_i64(1, 4)],
        ]);
        assert_eq!(h.det().unwrap(), Rational::new_i64(1, 72));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(M::identity(3).inverse().unwrap(), M::identity(3));
        let a = M::from_i64(&[vec![2, 1], vec![5, 3]]);
        assert_eq!(a.inverse().unwrap(), M::from_i64(&[vec![3, -1], vec![-5, 2]]));
        let d = M::from_i64(&[vec![2, 0], vec![0, 4]]);
        assert_eq!(
            d.inverse().unwrap(),
            M::from_rows(vec![vec![Rational::new_i64(1, 2), q(0)], vec![q(0), Rational::new_i64(1, 4)]])
        );
        assert_eq!(M::from_i64(&[vec![1, 2], vec![2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(M::from_i64(&[vec![1, 1]]).right_kernel(), vec![vec![q(1), q(-1)]]);
        assert!(M::identity(3).right_kernel().is_empty());
        let k = M::from_i64(&[vec![2, 4, 6]]).right_kernel();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![q(2), q(-1), q(0)]);
    }

    #[test]
    fn pairing_matrix_examples() {
        let d2 = Space::dual_space(2);
        let p2 = Space::binary();
        let pf = |s: &str, sp: &Space| parse_form(s, sp).unwrap();
        let p = [pf("1/2*w0^2", &d2), pf("w0*w1", &d2), pf("1/2*w1^2", &d2)];
        let qq = [pf("x0^2", &p2), pf("x0*x1", &p2), pf("x1^2", &p2)];
        assert_eq!(pairing_matrix(&p, &qq).unwrap(), M::identity(3));
        assert_eq!(pairing_matrix(&p[..2], &qq[..2]).unwrap(), M::identity(2));
        let deficient = [pf("w0^2", &d2), pf("2*w0^2", &d2), pf("w1^2", &d2)];
        assert_eq!(pairing_matrix(&deficient, &qq).unwrap().det().unwrap(), q(0));
    }

    #[test]
    fn quadratic_field_determinant() {
        let r2 = Quad::sqrt_of(q(2));
        let m = Matrix::from_rows(vec![vec![r2.clone(), Quad::from_i64(1)], vec![Quad::from_i64(1), r2]]);
        assert_eq!(m.det().unwrap(), Quad::from_i64(1));
    }

    #[test]
    fn prime_screen_agrees() {
        let a = M::from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(a.rank_mod_p(), Some(2));
        assert_eq!(a.map(|v| F61::from_rational(v)).rank(), 2);
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=4, seed in proptest::collection::vec(-9i64..=9, 16)) {
            let rows: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| q(seed[i * 4 + j])).collect()).collect();
            let m = M::from_rows(rows.clone());
            prop_assert_eq!(m.det().unwrap(), cofactor_det(&rows));
        }

        #[test]
        fn inverse_is_two_sided(seed in proptest::collection::vec(-9i64..=9, 9)) {
            let m = M::from_rows((0..3).map(|i| (0..3).map(|j| Rational::new_i64(seed[i * 3 + j], 1 + (i + j) as i64)).collect()).collect());
            match m.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(m.mul(&inv).unwrap(), M::identity(3));
                    prop_assert_eq!(inv.mul(&m).unwrap(), M::identity(3));
                }
                Err(_) => prop_assert_eq!(m.det().unwrap(), q(0)),
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(seed in proptest::collection::vec(-5i64..=5, 12)) {
            let m = M::from_rows((0..3).map(|i| (0..4).map(|j| q(seed[i * 4 + j])).collect()).collect());
            let k = m.right_kernel();
            prop_assert_eq!(k.len(), 4 - m.rank());
            for v in k {
                prop_assert!(m.mul_vec(&v).iter().all(|c| c.is_zero()));
                let lead = v.iter().find(|c| !c.is_zero()).unwrap();
                prop_assert!(!lead.is_negative());
                prop_assert!(v.iter().all(|c| c.is_integer()));
            }
        }
    }
}
