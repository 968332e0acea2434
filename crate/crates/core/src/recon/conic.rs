//! Points on plane conics and their parametrization by the pencil of lines
//! through a point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::legendre::{solve_diagonal, Legendre};
use super::{bilinear, diagonalize, quadric_matrix};
use crate::error::{Error, Result};
use crate::field::arith::{exact_sqrt, squarefree_part};
use crate::field::{normalize_primitive, sqrt_or_extend, ExtensionRecord, Field, Quad, QuadExt, Rational};
use crate::linalg::Matrix;
use crate::poly::{Form, Space};

pub const DEFAULT_HEIGHT_BOUND: u64 = 10_000;
/// Heights tried before the descent.
const SMALL_HEIGHT: u64 = 12;

/// How the base point of a parametrization was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointMethod {
    /// A coordinate vertex lies on the conic.
    Coordinate,
    /// Enumeration by height on the diagonalized conic.
    Search,
    /// Legendre descent.
    Descent,
    /// A point over a quadratic extension.
    Extension,
}

impl PointMethod {
    pub fn name(self) -> &'static str {
        match self {
            PointMethod::Coordinate => "coordinate",
            PointMethod::Search => "search",
            PointMethod::Descent => "descent",
            PointMethod::Extension => "extension",
        }
    }
}

/// Three binary quadrics in `x0, x1` whose substitution annihilates the
/// conic.
#[derive(Debug, Clone)]
pub enum ConicParametrization {
    Rational { images: Vec<Form<Rational>>, point: Vec<Rational>, method: PointMethod },
    Extended { images: Vec<Form<Quad>>, point: Vec<Quad>, record: ExtensionRecord },
}

impl ConicParametrization {
    pub fn method(&self) -> PointMethod {
        match self {
            ConicParametrization::Rational { method, .. } => *method,
            ConicParametrization::Extended { .. } => PointMethod::Extension,
        }
    }

    pub fn record(&self) -> ExtensionRecord {
        match self {
            ConicParametrization::Rational { .. } => ExtensionRecord::new(),
            ConicParametrization::Extended { record, .. } => record.clone(),
        }
    }
}

/// Parametrizes a nondegenerate conic in three lift variables. The base
/// point comes from a coordinate vertex, a search of small heights, the
/// Legendre descent, a search up to `height_bound` when the descent could
/// not decide, and otherwise from a quadratic extension.
pub fn parametrize_conic(q: &Form<Rational>, height_bound: u64) -> Result<ConicParametrization> {
    if q.space().nvars() != 3 {
        return Err(Error::WrongArity(format!("a conic needs 3 variables, got {}", q.space().nvars())));
    }
    let a = quadric_matrix(q)?;
    if a.det()?.is_zero() {
        return Err(Error::DegenerateConic);
    }
    let rational = |point: Vec<Rational>, method| {
        let images = pencil(&a, &point);
        ConicParametrization::Rational { images, point, method }
    };
    if let Some(i) = (0..3).find(|&i| a.get(i, i).is_zero()) {
        let mut p = vec![Rational::from_i64(0); 3];
        p[i] = Rational::from_i64(1);
        return Ok(rational(p, PointMethod::Coordinate));
    }
    let (d, t) = diagonalize(&a);
    let lift = |y: Vec<Rational>| {
        let mut p = t.mul_vec(&y);
        normalize_primitive(&mut p, true);
        p
    };
    if let Some(y) = search_diagonal(&d, SMALL_HEIGHT.min(height_bound)) {
        return Ok(rational(lift(y), PointMethod::Search));
    }
    let dd = [d[0].clone(), d[1].clone(), d[2].clone()];
    let reason = match solve_diagonal(&dd) {
        Legendre::Solution(s) => {
            let y = s.iter().map(|x| Rational::from_integer(x.clone())).collect();
            return Ok(rational(lift(y), PointMethod::Descent));
        }
        Legendre::NoSolution => "the conic has no rational point".to_string(),
        Legendre::Undecided => {
            if let Some(y) = search_diagonal(&d, height_bound) {
                return Ok(rational(lift(y), PointMethod::Search));
            }
            format!("no rational point of height at most {height_bound} and the descent was undecided")
        }
    };
    let (y, record) = extension_point(&d, &reason);
    let tq = t.map(|c| Quad::from_base(c.clone()));
    let mut p = tq.mul_vec(&y);
    normalize_primitive(&mut p, true);
    let aq = a.map(|c| Quad::from_base(c.clone()));
    let images = pencil(&aq, &p);
    Ok(ConicParametrization::Extended { images, point: p, record })
}

/// A point `(√(−dⱼ/dᵢ), 1)` on the pair `(i, j)` whose radicand is smallest,
/// real radicands first.
fn extension_point(d: &[Rational], reason: &str) -> (Vec<Quad>, ExtensionRecord) {
    let mut best: Option<(bool, BigInt, usize, usize)> = None;
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let m = squarefree_part(&(-(d[i].clone() * &d[j])));
        let key = (m.is_negative(), m.abs(), i, j);
        if best.as_ref().is_none_or(|b| (key.0, &key.1) < (b.0, &b.1)) {
            best = Some(key);
        }
    }
    let (_, _, i, j) = best.expect("three pairs");
    let ratio = -(d[j].clone() * &d[i].inv().expect("nondegenerate"));
    let (root, mut rec) = sqrt_or_extend(&ratio);
    let mut record = ExtensionRecord::new();
    for e in rec.entries.drain(..) {
        record.push(e.radicand, reason);
    }
    let mut y = vec![Quad::from_i64(0); 3];
    y[i] = root;
    y[j] = Quad::from_i64(1);
    (y, record)
}

/// A nonzero solution of `Σ dᵢ·yᵢ² = 0` with the two free coordinates of
/// height at most `bound`, enumerated by ascending height.
fn search_diagonal(d: &[Rational], bound: u64) -> Option<Vec<Rational>> {
    let den = d.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = d.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let solved = (0..3).max_by_key(|&i| (ints[i].abs(), std::cmp::Reverse(i))).expect("three coefficients");
    let free: Vec<usize> = (0..3).filter(|&i| i != solved).collect();
    let small: Option<Vec<i128>> = ints.iter().map(|c| c.to_i128().filter(|v| v.abs() < 1 << 60)).collect();
    let found = match small {
        Some(c) if bound <= 1_000_000 => search_i128(c[solved], c[free[0]], c[free[1]], bound as i64),
        _ => search_big(&ints[solved], &ints[free[0]], &ints[free[1]], bound as i64),
    }?;
    let mut y = vec![Rational::from_i64(0); 3];
    y[solved] = Rational::from_integer(found.0);
    y[free[0]] = Rational::from_i64(found.1);
    y[free[1]] = Rational::from_i64(found.2);
    Some(y)
}

/// Free coordinates `(u, v)` with `max(|u|, |v|) = h`, `u ≥ 0`, in a fixed
/// order; the sign of a solution is irrelevant.
fn shell(h: i64) -> impl Iterator<Item = (i64, i64)> {
    let vs = move || std::iter::once(0).chain((1..=h).flat_map(|v| [v, -v]));
    (0..=h).flat_map(move |u| vs().map(move |v| (u, v))).filter(move |&(u, v)| {
        u.max(v.abs()) == h && !(u == 0 && v < 0) && u.gcd(&v) == 1
    })
}

fn search_i128(a: i128, b: i128, c: i128, bound: i64) -> Option<(BigInt, i64, i64)> {
    for h in 1..=bound {
        for (u, v) in shell(h) {
            let s = -(b * (u as i128) * (u as i128) + c * (v as i128) * (v as i128));
            if s % a != 0 {
                continue;
            }
            let r = s / a;
            if r < 0 {
                continue;
            }
            let mut x = (r as f64).sqrt() as i128;
            while x * x > r {
                x -= 1;
            }
            while (x + 1) * (x + 1) <= r {
                x += 1;
            }
            if x * x == r {
                return Some((BigInt::from(x), u, v));
            }
        }
    }
    None
}

fn search_big(a: &BigInt, b: &BigInt, c: &BigInt, bound: i64) -> Option<(BigInt, i64, i64)> {
    for h in 1..=bound {
        for (u, v) in shell(h) {
            let s = -(b * u * u + c * v * v);
            let (r, rem) = s.div_rem(a);
            if !rem.is_zero() || r.is_negative() {
                continue;
            }
            if let Some(x) = exact_sqrt(&r) {
                return Some((x, u, v));
            }
        }
    }
    None
}

/// Lines through `p` meet the conic `Xᵗ·A·X` again at
/// `−Q(W)·p + 2·B(p, W)·W` with `W = x0·U + x1·V`.
fn pencil<F: Field>(a: &Matrix<F>, p: &[F]) -> Vec<Form<F>> {
    let pivot = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let unit = |i: usize| (0..3).map(|j| if i == j { F::one() } else { F::zero() }).collect::<Vec<F>>();
    let (u, v) = (unit(others[0]), unit(others[1]));
    let two = F::from_i64(2);
    let (quu, quv, qvv) = (bilinear(a, &u, &u), bilinear(a, &u, &v), bilinear(a, &v, &v));
    let (bpu, bpv) = (bilinear(a, p, &u), bilinear(a, p, &v));
    let sp = Space::binary();
    let mut images: Vec<Form<F>> = (0..3)
        .map(|k| {
            let s2 = -(quu.clone() * &p[k]) + two.clone() * &bpu * &u[k];
            let st = -(two.clone() * &quv * &p[k]) + two.clone() * &bpu * &v[k] + two.clone() * &bpv * &u[k];
            let t2 = -(qvv.clone() * &p[k]) + two.clone() * &bpv * &v[k];
            Form::from_coefficients(sp.clone(), vec![2], &[s2, st, t2])
        })
        .collect();
    let mut all: Vec<F> = images.iter().flat_map(|g| g.coefficients()).collect();
    let s = normalize_primitive(&mut all, true);
    for g in images.iter_mut() {
        *g = g.scale(&s);
    }
    images
}

/// Substitutes a parametrization into a conic over the field of the
/// parametrization.
pub fn substitute_rational(q: &Form<Rational>, images: &[Form<Rational>]) -> Result<Form<Rational>> {
    q.substitute(images)
}

pub fn substitute_quad(q: &Form<Rational>, images: &[Form<Quad>]) -> Result<Form<Quad>> {
    q.convert(|c| QuadExt::from_base(c.clone())).substitute(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;

    fn conic(s: &str) -> Form<Rational> {
        parse_form(s, &Space::lift(3)).unwrap()
    }

    fn annihilates(q: &Form<Rational>, p: &ConicParametrization) -> bool {
        match p {
            ConicParametrization::Rational { images, .. } => substitute_rational(q, images).unwrap().is_zero(),
            ConicParametrization::Extended { images, .. } => substitute_quad(q, images).unwrap().is_zero(),
        }
    }

    #[test]
    fn veronese_conic_gives_the_canonical_map() {
        let p = parametrize_conic(&conic("X0*X2-X1^2"), DEFAULT_HEIGHT_BOUND).unwrap();
        let ConicParametrization::Rational { images, point, method } = p else { panic!("rational expected") };
        assert_eq!(method, PointMethod::Coordinate);
        assert_eq!(point, vec![Rational::from_i64(1), Rational::from_i64(0), Rational::from_i64(0)]);
        let sp = Space::binary();
        let want: Vec<_> = ["x0^2", "x0*x1", "x1^2"].iter().map(|s| parse_form(s, &sp).unwrap()).collect();
        assert_eq!(images, want);
    }

    #[test]
    fn rational_point_by_search() {
        let q = conic("X0^2+X1^2-2*X2^2");
        let p = parametrize_conic(&q, DEFAULT_HEIGHT_BOUND).unwrap();
        let ConicParametrization::Rational { point, method, .. } = &p else { panic!("rational expected") };
        assert_eq!(*method, PointMethod::Search);
        assert_eq!(point, &vec![Rational::from_i64(1); 3]);
        assert!(annihilates(&q, &p));
    }

    #[test]
    fn anisotropic_conic_needs_sqrt3() {
        let q = conic("X0^2+X1^2-3*X2^2");
        let p = parametrize_conic(&q, DEFAULT_HEIGHT_BOUND).unwrap();
        let ConicParametrization::Extended { point, record, .. } = &p else { panic!("extension expected") };
        assert_eq!(record.entries.len(), 1);
        assert_eq!(record.entries[0].radicand, "3");
        assert_eq!(point, &vec![Quad::sqrt_of(Rational::from_i64(3)), Quad::from_i64(0), Quad::from_i64(1)]);
        assert!(annihilates(&q, &p));
    }

    #[test]
    fn large_point_by_descent() {
        let q = conic("5*X0^2+79*X1^2-101*X2^2");
        let p = parametrize_conic(&q, DEFAULT_HEIGHT_BOUND).unwrap();
        assert_eq!(p.method(), PointMethod::Descent);
        assert!(annihilates(&q, &p));
    }

    #[test]
    fn degenerate_conic_is_rejected() {
        let q = conic("X0^2-X1^2");
        assert!(matches!(parametrize_conic(&q, 100), Err(Error::DegenerateConic)));
    }

    #[test]
    fn general_conics_are_annihilated() {
        for s in ["3*X0^2-X0*X1+5*X1*X2-7*X2^2+X0*X2", "X0*X1+X1*X2+X0*X2", "2*X0^2+6*X1^2+X2^2-4*X0*X2"] {
            let q = conic(s);
            let p = parametrize_conic(&q, DEFAULT_HEIGHT_BOUND).unwrap();
            assert!(annihilates(&q, &p), "{s}");
        }
    }
}
