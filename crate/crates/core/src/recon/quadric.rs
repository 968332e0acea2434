//! Normal form `X0·X3 − X1·X2` of a nondegenerate quadric in four
//! variables, by hyperbolic-pair extraction.

use num_bigint::BigInt;
use num_traits::Signed;

use super::legendre::{solve_diagonal, Legendre};
use super::{bilinear, change_variables, diagonalize, quadric_from_matrix, quadric_matrix};
use crate::error::{Error, Result};
use crate::field::arith::{rational_sqrt, squarefree_part};
use crate::field::{sqrt_or_extend, Biquad, ExtensionRecord, Field, Quad, QuadExt, Rational};
use crate::linalg::Matrix;
use crate::poly::Form;

/// How the normal form was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalFormMethod {
    /// The quadric was already a multiple of the normal form.
    Identity,
    /// A rational isotropic vector of small height.
    Search,
    /// A rational isotropic vector from a ternary subform.
    Descent,
    /// Hyperbolic planes from a splitting of the diagonalized form.
    Partition,
}

impl NormalFormMethod {
    pub fn name(self) -> &'static str {
        match self {
            NormalFormMethod::Identity => "identity",
            NormalFormMethod::Search => "search",
            NormalFormMethod::Descent => "descent",
            NormalFormMethod::Partition => "partition",
        }
    }
}

/// A change of variables `T` with `Q(T·y) = scale·(y0·y3 − y1·y2)`.
#[derive(Debug, Clone)]
pub enum NormalForm {
    Rational { transform: Matrix<Rational>, scale: Rational, method: NormalFormMethod },
    Quad { transform: Matrix<Quad>, scale: Quad, method: NormalFormMethod, record: ExtensionRecord },
    Biquad { transform: Matrix<Biquad>, scale: Biquad, record: ExtensionRecord },
}

impl NormalForm {
    pub fn method(&self) -> NormalFormMethod {
        match self {
            NormalForm::Rational { method, .. } | NormalForm::Quad { method, .. } => *method,
            NormalForm::Biquad { .. } => NormalFormMethod::Partition,
        }
    }

    pub fn record(&self) -> ExtensionRecord {
        match self {
            NormalForm::Rational { .. } => ExtensionRecord::new(),
            NormalForm::Quad { record, .. } | NormalForm::Biquad { record, .. } => record.clone(),
        }
    }
}

/// The normal form of a rank-4 quadric over the smallest tower this module
/// can reach: the rationals when a rational isotropic vector is found and
/// its complement splits, one square root when only the complement needs
/// it or when a splitting of the diagonal form shares one radicand, and two
/// otherwise.
pub fn quadric_normal_form(q: &Form<Rational>) -> Result<NormalForm> {
    if q.space().nvars() != 4 {
        return Err(Error::WrongArity(format!("a quadric surface needs 4 variables, got {}", q.space().nvars())));
    }
    let a = quadric_matrix(q)?;
    let rank = a.rank();
    if rank != 4 {
        return Err(Error::WrongRank(rank));
    }
    let c = q.coeff(&[1, 0, 0, 1]);
    if !c.is_zero() && *q == normal_quadric(q.space(), &c) {
        return Ok(NormalForm::Rational { transform: Matrix::identity(4), scale: c, method: NormalFormMethod::Identity });
    }
    let found = search_isotropic(&a)
        .map(|e| (e, NormalFormMethod::Search))
        .or_else(|| descent_isotropic(&a).map(|e| (e, NormalFormMethod::Descent)));
    let out = match found {
        Some((e, method)) => from_isotropic(&a, e, method),
        None => by_partition(&a),
    };
    verify(q, &out)?;
    Ok(out)
}

fn normal_quadric<F: Field>(space: &crate::poly::Space, c: &F) -> Form<F> {
    let xt = Form::monomial(space.clone(), &[1, 0, 0, 1], c.clone());
    let yz = Form::monomial(space.clone(), &[0, 1, 1, 0], c.clone());
    xt.sub(&yz).expect("same space")
}

fn check<F: Field>(q: &Form<F>, t: &Matrix<F>, scale: &F) -> Result<()> {
    if change_variables(q, t) == normal_quadric(q.space(), scale) {
        Ok(())
    } else {
        Err(Error::Unsupported("normal form failed its substitution check".into()))
    }
}

fn verify(q: &Form<Rational>, nf: &NormalForm) -> Result<()> {
    match nf {
        NormalForm::Rational { transform, scale, .. } => check(q, transform, scale),
        NormalForm::Quad { transform, scale, .. } => check(&q.convert(|c| Quad::from_base(c.clone())), transform, scale),
        NormalForm::Biquad { transform, scale, .. } => {
            check(&q.convert(|c| Biquad::from_base(Quad::from_base(c.clone()))), transform, scale)
        }
    }
}

/// First vector with entries in `[−2, 2]` and positive leading entry on the
/// quadric.
fn search_isotropic(a: &Matrix<Rational>) -> Option<Vec<Rational>> {
    let range: Vec<i64> = vec![0, 1, -1, 2, -2];
    for i0 in &range {
        for i1 in &range {
            for i2 in &range {
                for i3 in &range {
                    let v = [*i0, *i1, *i2, *i3];
                    let lead = v.iter().find(|x| **x != 0);
                    if lead.is_none_or(|l| *l < 0) {
                        continue;
                    }
                    let v: Vec<Rational> = v.iter().map(|&x| Rational::from_i64(x)).collect();
                    if bilinear(a, &v, &v).is_zero() {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

/// An isotropic vector of one of the four coordinate ternary subforms.
fn descent_isotropic(a: &Matrix<Rational>) -> Option<Vec<Rational>> {
    for drop in (0..4).rev() {
        let idx: Vec<usize> = (0..4).filter(|&i| i != drop).collect();
        let sub = Matrix::from_rows(idx.iter().map(|&i| idx.iter().map(|&j| a.get(i, j).clone()).collect()).collect());
        let y = if sub.det().ok()?.is_zero() {
            sub.right_kernel().into_iter().next()?
        } else {
            let (d, t) = diagonalize(&sub);
            let Legendre::Solution(s) = solve_diagonal(&[d[0].clone(), d[1].clone(), d[2].clone()]) else {
                continue;
            };
            t.mul_vec(&s.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>())
        };
        let mut v = vec![Rational::from_i64(0); 4];
        for (k, &i) in idx.iter().enumerate() {
            v[i] = y[k].clone();
        }
        return Some(v);
    }
    None
}

fn scaled<F: Field>(v: &[F], s: &F) -> Vec<F> {
    v.iter().map(|x| x.clone() * s).collect()
}

fn axpy<F: Field>(s: &F, x: &[F], y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(a, b)| s.clone() * a + b).collect()
}

/// Completes an isotropic `e` to a hyperbolic pair `(e, f)` with
/// `B(e, f) = 1/2` inside the span of `e` and `g`, where `B(e, g) ≠ 0`.
fn partner<F: Field>(a: &Matrix<F>, e: &[F], g: &[F]) -> Vec<F> {
    let two = F::from_i64(2);
    let beg = bilinear(a, e, g);
    let s = -(bilinear(a, g, g) * &(two.clone() * &beg).inv().expect("nonzero pairing"));
    let f = axpy(&s, e, g);
    let b = bilinear(a, e, &f);
    scaled(&f, &(two * &b).inv().expect("nonzero pairing"))
}

fn units<F: Field>() -> Vec<Vec<F>> {
    (0..4).map(|i| (0..4).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

/// Columns `[e1, e2, −f2, f1]` for hyperbolic pairs `(e1, f1)`, `(e2, f2)`.
fn assemble<F: Field>(e1: &[F], f1: &[F], e2: &[F], f2: &[F]) -> Matrix<F> {
    let neg: Vec<F> = f2.iter().map(|x| -x.clone()).collect();
    let cols = [e1.to_vec(), e2.to_vec(), neg, f1.to_vec()];
    Matrix::from_rows((0..4).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
}

/// The orthogonal complement of the hyperbolic plane of `e` and the pair
/// inside it.
fn split_off<F: Field>(a: &Matrix<F>, e: &[F]) -> (Vec<F>, Vec<F>, Vec<F>) {
    let g = units::<F>().into_iter().find(|u| !bilinear(a, e, u).is_zero()).expect("nondegenerate form");
    let f = partner(a, e, &g);
    let rows = Matrix::from_rows(vec![a.mul_vec(e), a.mul_vec(&f)]);
    let mut w = rows.right_kernel().into_iter();
    let (w1, w2) = (w.next().expect("complement"), w.next().expect("complement"));
    (f, w1, w2)
}

/// A hyperbolic pair in the plane spanned by `w1`, `w2`, given a square
/// root of the discriminant of the restricted form when needed.
fn plane_pair<F: Field>(a: &Matrix<F>, w1: &[F], w2: &[F], sqrt_disc: Option<F>) -> (Vec<F>, Vec<F>) {
    let (al, be, ga) = (bilinear(a, w1, w1), bilinear(a, w1, w2) * &F::from_i64(2), bilinear(a, w2, w2));
    let e2 = if al.is_zero() {
        w1.to_vec()
    } else if ga.is_zero() {
        w2.to_vec()
    } else {
        let root = sqrt_disc.expect("square root of the discriminant");
        let x = (root - &be) * &(F::from_i64(2) * &al).inv().expect("nonzero");
        axpy(&x, w1, w2)
    };
    let g = if bilinear(a, &e2, w1).is_zero() { w2 } else { w1 };
    let f2 = partner(a, &e2, g);
    (e2, f2)
}

fn plane_discriminant(a: &Matrix<Rational>, w1: &[Rational], w2: &[Rational]) -> Rational {
    let (al, be, ga) = (bilinear(a, w1, w1), bilinear(a, w1, w2) * &Rational::from_i64(2), bilinear(a, w2, w2));
    be.clone() * &be - Rational::from_i64(4) * &al * &ga
}

fn to_quad(v: &[Rational]) -> Vec<Quad> {
    v.iter().map(|c| Quad::from_base(c.clone())).collect()
}

fn from_isotropic(a: &Matrix<Rational>, e: Vec<Rational>, method: NormalFormMethod) -> NormalForm {
    let (f1, w1, w2) = split_off(a, &e);
    let disc = plane_discriminant(a, &w1, &w2);
    let needs_root = !bilinear(a, &w1, &w1).is_zero() && !bilinear(a, &w2, &w2).is_zero();
    match needs_root.then(|| rational_sqrt(&disc)) {
        None | Some(Some(_)) => {
            let root = needs_root.then(|| rational_sqrt(&disc).expect("square"));
            let (e2, f2) = plane_pair(a, &w1, &w2, root);
            NormalForm::Rational { transform: assemble(&e, &f1, &e2, &f2), scale: Rational::from_i64(1), method }
        }
        Some(None) => {
            let (root, mut record) = sqrt_or_extend(&disc);
            for ext in record.entries.iter_mut() {
                ext.reason = "complement of a rational hyperbolic plane is anisotropic".into();
            }
            let aq = a.map(|c| Quad::from_base(c.clone()));
            let (e2, f2) = plane_pair(&aq, &to_quad(&w1), &to_quad(&w2), Some(root));
            let transform = assemble(&to_quad(&e), &to_quad(&f1), &e2, &f2);
            NormalForm::Quad { transform, scale: Quad::from_i64(1), method, record }
        }
    }
}

/// Hyperbolic pair `(s·e_i + e_j, (−s·e_i + e_j)/(4·d_j))` of
/// `d_i·y_i² + d_j·y_j²` with `s² = −d_j/d_i`.
fn diagonal_pair<F: Field>(i: usize, j: usize, dj: &Rational, s: F) -> (Vec<F>, Vec<F>) {
    let mut e = vec![F::zero(); 4];
    let mut f = vec![F::zero(); 4];
    e[i] = s.clone();
    e[j] = F::one();
    f[i] = -s;
    f[j] = F::one();
    let inv = F::from_rational(&(Rational::from_i64(4) * dj).inv().expect("nonzero"));
    (e, scaled(&f, &inv))
}

fn by_partition(a: &Matrix<Rational>) -> NormalForm {
    let (d, t0) = diagonalize(a);
    let radicand = |i: usize, j: usize| squarefree_part(&(-(d[i].clone() * &d[j])));
    let one = BigInt::from(1);
    let partitions = [[(0usize, 1usize), (2usize, 3usize)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let key = |p: &[(usize, usize); 2]| {
        let (m1, m2) = (radicand(p[0].0, p[0].1), radicand(p[1].0, p[1].1));
        let distinct = [&m1, &m2].iter().filter(|m| ***m != one).count() - usize::from(m1 == m2 && m1 != one);
        (distinct, m1.abs().max(m2.abs()))
    };
    let best = partitions.iter().min_by_key(|p| key(p)).expect("three partitions");
    let [(i1, j1), (i2, j2)] = *best;
    let ratio = |i: usize, j: usize| -(d[j].clone() * &d[i].inv().expect("nondegenerate"));
    let (s1, rec1) = sqrt_or_extend(&ratio(i1, j1));
    let (s2, rec2) = sqrt_or_extend(&ratio(i2, j2));
    let mut record = ExtensionRecord::new();
    for ext in rec1.entries.iter().chain(&rec2.entries) {
        record.push(&ext.radicand, "no rational isotropic vector was found");
    }
    let same_field = s1.radicand().is_none() || s2.radicand().is_none() || s1.radicand() == s2.radicand();
    if same_field {
        let (e1, f1) = diagonal_pair(i1, j1, &d[j1], s1);
        let (e2, f2) = diagonal_pair(i2, j2, &d[j2], s2);
        let tq = t0.map(|c| Quad::from_base(c.clone()));
        let transform = tq.mul(&assemble(&e1, &f1, &e2, &f2)).expect("4x4");
        if record.is_empty() {
            let transform = transform.map(|c| c.to_base().expect("rational entries"));
            return NormalForm::Rational { transform, scale: Rational::from_i64(1), method: NormalFormMethod::Partition };
        }
        record.entries.dedup();
        return NormalForm::Quad { transform, scale: Quad::from_i64(1), method: NormalFormMethod::Partition, record };
    }
    let top = QuadExt::new(Quad::from_i64(0), Quad::from_base(s2.b().clone()), Quad::from_base(s2.radicand().expect("irrational").clone()));
    let (e1, f1) = diagonal_pair(i1, j1, &d[j1], Biquad::from_base(s1));
    let (e2, f2) = diagonal_pair(i2, j2, &d[j2], top);
    let tb = t0.map(|c| Biquad::from_base(Quad::from_base(c.clone())));
    let transform = tb.mul(&assemble(&e1, &f1, &e2, &f2)).expect("4x4");
    NormalForm::Biquad { transform, scale: Biquad::from_i64(1), record }
}

/// `Xᵗ·A·X` for a matrix given over the rationals, as a form over the lift
/// space of four variables.
pub fn quadric_of(a: &Matrix<Rational>) -> Form<Rational> {
    quadric_from_matrix(a, &crate::poly::Space::lift(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_form, Space};

    fn quadric(s: &str) -> Form<Rational> {
        parse_form(s, &Space::lift(4)).unwrap()
    }

    #[test]
    fn normal_form_is_fixed() {
        let nf = quadric_normal_form(&quadric("X0*X3-X1*X2")).unwrap();
        let NormalForm::Rational { transform, scale, method } = nf else { panic!("rational expected") };
        assert_eq!(method, NormalFormMethod::Identity);
        assert_eq!(transform, Matrix::identity(4));
        assert_eq!(scale, Rational::from_i64(1));
    }

    #[test]
    fn lorentzian_form_needs_sqrt_minus_one() {
        // signature (3,1) cannot become X0·X3 − X1·X2 over the reals
        let nf = quadric_normal_form(&quadric("X0^2+X1^2+X2^2-X3^2")).unwrap();
        let NormalForm::Quad { record, method, .. } = nf else { panic!("one root expected") };
        assert_eq!(method, NormalFormMethod::Search);
        assert_eq!(record.entries[0].radicand, "-1");
    }

    #[test]
    fn complement_over_a_quadratic_field() {
        let nf = quadric_normal_form(&quadric("X0*X1+X2^2+X3^2")).unwrap();
        assert!(matches!(nf, NormalForm::Rational { .. } | NormalForm::Quad { .. }));
        let nf = quadric_normal_form(&quadric("X0*X1+X2^2+3*X3^2+X2*X3")).unwrap();
        assert!(matches!(nf, NormalForm::Quad { .. }));
        assert_eq!(nf.record().entries.len(), 1);
    }

    #[test]
    fn definite_form_needs_two_roots() {
        let q = quadric("2*X0^2+2*X1^2+2*X2^2+2*X3^2+2*X0*X1+2*X0*X2+2*X0*X3+2*X1*X2+2*X1*X3+2*X2*X3");
        let nf = quadric_normal_form(&q).unwrap();
        assert!(matches!(nf, NormalForm::Biquad { .. }));
        assert_eq!(nf.record().entries.len(), 2);
    }

    #[test]
    fn sum_of_four_squares_needs_one_root() {
        let nf = quadric_normal_form(&quadric("X0^2+X1^2+X2^2+X3^2")).unwrap();
        let NormalForm::Quad { record, .. } = nf else { panic!("one root expected") };
        assert_eq!(record.entries.len(), 1);
    }

    #[test]
    fn rank_is_checked() {
        assert_eq!(quadric_normal_form(&quadric("X0*X1-X2^2")).unwrap_err(), Error::WrongRank(3));
    }

    #[test]
    fn large_quadric_needs_at_most_one_root() {
        let q = quadric(
            "646*X0^2-6536*X0*X1-130084*X0*X2-1923144*X0*X3-19264*X1^2-549500*X1*X2-6275840*X1*X3-4598186*X2^2-78659100*X2*X3-143255872*X3^2",
        );
        let nf = quadric_normal_form(&q).unwrap();
        assert!(nf.record().entries.len() <= 1);
    }
}
