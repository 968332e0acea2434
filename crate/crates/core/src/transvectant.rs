//! Transvectants and the maps that turn covariants into contravariants.
//!
//! Binary and bi-level transvectants act on forms whose variable groups all
//! have dimension two; the ternary Ω-process acts on three forms in three
//! variables. [`Restricted`] carries a ternary form restricted to a variable
//! line, which is how the prime operation on plane quartics is evaluated.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::combinatorics::{binomial, compositions, factorial, multinomial};
use crate::poly::{scalar_from_bigint, Form, Group, Monomial, Poly, Space, VarKind};

fn guard_characteristic<F: Field>(degree: u32) -> Result<()> {
    let p = F::characteristic();
    if p != 0 && p <= degree as u64 {
        return Err(Error::CharacteristicGuard { p, degree });
    }
    Ok(())
}

/// One transvection direction: the variable pair `(a, b)` and its level.
#[derive(Debug, Clone, Copy)]
struct Direction {
    a: usize,
    b: usize,
    level: u32,
}

/// Σ over index tuples of Π (−1)^iₜ C(lₜ, iₜ) · ∂f · ∂g, with ∂f taking
/// `a^i b^(l−i)` and ∂g taking `a^(l−i) b^i` in each direction.
fn transvect_poly<F: Field>(f: &Poly<F>, g: &Poly<F>, dirs: &[Direction]) -> Poly<F> {
    let n = f.nvars();
    if dirs.iter().all(|d| d.level == 0) {
        return f.mul(g);
    }
    let mut out = Poly::zero(n);
    let mut idx = vec![0u32; dirs.len()];
    loop {
        let mut alpha = Monomial::one();
        let mut beta = Monomial::one();
        let mut coeff = num_bigint::BigInt::from(1);
        let mut odd = false;
        for (d, &i) in dirs.iter().zip(&idx) {
            alpha.set_exp(d.a, alpha.exp(d.a) + i);
            alpha.set_exp(d.b, alpha.exp(d.b) + d.level - i);
            beta.set_exp(d.a, beta.exp(d.a) + d.level - i);
            beta.set_exp(d.b, beta.exp(d.b) + i);
            coeff *= binomial(d.level, i);
            odd ^= i % 2 == 1;
        }
        let df = f.derive(&alpha);
        if !df.is_zero() {
            let dg = g.derive(&beta);
            if !dg.is_zero() {
                let mut c: F = scalar_from_bigint(&coeff);
                if odd {
                    c = -c;
                }
                out.add_assign(&df.mul(&dg).scale(&c));
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] <= dirs[pos].level {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn check_binary_groups(space: &Space) -> Result<()> {
    if space.groups().iter().all(|g| g.dim == 2) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch("transvectants need variable groups of dimension 2".into()))
    }
}

/// The transvectant with one level per variable group.
pub fn transvect_levels<F: Field>(f: &Form<F>, g: &Form<F>, levels: &[u32]) -> Result<Form<F>> {
    if f.space() != g.space() {
        return Err(Error::SpaceMismatch("transvectant arguments live in different spaces".into()));
    }
    check_binary_groups(f.space())?;
    if levels.len() != f.degree().len() {
        return Err(Error::WrongArity(format!(
            "{} levels for {} variable groups",
            levels.len(),
            f.degree().len()
        )));
    }
    let mut degree = Vec::with_capacity(levels.len());
    let mut dirs = Vec::with_capacity(levels.len());
    for ((&l, (&df, &dg)), r) in levels.iter().zip(f.degree().iter().zip(g.degree())).zip(f.space().ranges()) {
        if l > df.min(dg) {
            return Err(Error::LevelTooHigh { level: l, degree: df.min(dg) });
        }
        degree.push(df + dg - 2 * l);
        dirs.push(Direction { a: r.start, b: r.start + 1, level: l });
    }
    guard_characteristic::<F>(f.total_degree().max(g.total_degree()))?;
    Form::new(f.space().clone(), degree, transvect_poly(f.poly(), g.poly(), &dirs))
}

/// `(f, g)_l` for binary forms.
pub fn transvect<F: Field>(f: &Form<F>, g: &Form<F>, l: u32) -> Result<Form<F>> {
    if f.space().groups().len() != 1 {
        return Err(Error::SpaceMismatch("expected a binary form".into()));
    }
    transvect_levels(f, g, &[l])
}

/// `(f, g)_{l,m}` for forms on a product of two binary spaces.
pub fn transvect2<F: Field>(f: &Form<F>, g: &Form<F>, l: u32, m: u32) -> Result<Form<F>> {
    if f.space().groups().len() != 2 {
        return Err(Error::SpaceMismatch("expected a bihomogeneous form".into()));
    }
    transvect_levels(f, g, &[l, m])
}

const S3: [([usize; 3], bool); 6] = [
    ([0, 1, 2], false),
    ([0, 2, 1], true),
    ([1, 0, 2], true),
    ([1, 2, 0], false),
    ([2, 0, 1], false),
    ([2, 1, 0], true),
];

/// The ternary Ω-process `(f, g, h)_l`: the operator determinant
/// det(∂/∂x_i^(j)) applied `l` times to f(x⁽¹⁾)g(x⁽²⁾)h(x⁽³⁾), after which
/// the three copies are identified.
pub fn omega<F: Field>(f: &Form<F>, g: &Form<F>, h: &Form<F>, l: u32) -> Result<Form<F>> {
    let sp = f.space();
    if sp != g.space() || sp != h.space() {
        return Err(Error::SpaceMismatch("Ω-process arguments live in different spaces".into()));
    }
    if sp.groups().len() != 1 || sp.nvars() != 3 {
        return Err(Error::SpaceMismatch("the Ω-process needs ternary forms".into()));
    }
    let min = f.total_degree().min(g.total_degree()).min(h.total_degree());
    if l > min {
        return Err(Error::LevelTooHigh { level: l, degree: min });
    }
    guard_characteristic::<F>(f.total_degree().max(g.total_degree()).max(h.total_degree()))?;
    let mut out = Poly::zero(3);
    let mut df_cache: HashMap<[u32; 3], Poly<F>> = HashMap::new();
    let mut dg_cache: HashMap<[u32; 3], Poly<F>> = HashMap::new();
    let mut dh_cache: HashMap<[u32; 3], Poly<F>> = HashMap::new();
    for k in compositions(l, 6) {
        let (mut a, mut b, mut c) = ([0u32; 3], [0u32; 3], [0u32; 3]);
        let mut odd = false;
        for (&kp, (perm, neg)) in k.iter().zip(S3.iter()) {
            a[perm[0]] += kp;
            b[perm[1]] += kp;
            c[perm[2]] += kp;
            odd ^= *neg && kp % 2 == 1;
        }
        let pf = df_cache.entry(a).or_insert_with(|| f.poly().derive(&Monomial::from_exps(&a)));
        if pf.is_zero() {
            continue;
        }
        let pf = pf.clone();
        let pg = dg_cache.entry(b).or_insert_with(|| g.poly().derive(&Monomial::from_exps(&b)));
        if pg.is_zero() {
            continue;
        }
        let pg = pg.clone();
        let ph = dh_cache.entry(c).or_insert_with(|| h.poly().derive(&Monomial::from_exps(&c)));
        if ph.is_zero() {
            continue;
        }
        let mut s: F = scalar_from_bigint(&multinomial(&k));
        if odd {
            s = -s;
        }
        out.add_assign(&pf.mul(&pg).mul(ph).scale(&s));
    }
    let degree = f.total_degree() + g.total_degree() + h.total_degree() - 3 * l;
    Form::new(sp.clone(), vec![degree], out)
}

/// The linear map sending a form of per-group degrees rₜ on binary groups
/// to the dual space, monomial by monomial:
/// Πₜ a_t^i b_t^j ↦ Πₜ rₜ!·(−1)^i·a*_t^j b*_t^i.
///
/// It satisfies D(τ(C), C′) = (C, C′) at full levels.
pub fn tau<F: Field>(c: &Form<F>) -> Result<Form<F>> {
    check_binary_groups(c.space())?;
    guard_characteristic::<F>(c.total_degree())?;
    let ranges = c.space().ranges();
    let scale = c.degree().iter().fold(num_bigint::BigInt::from(1), |acc, &r| acc * factorial(r));
    let scale: F = scalar_from_bigint(&scale);
    let n = c.space().nvars();
    let mut poly = Poly::zero(n);
    for (m, coeff) in c.poly().terms() {
        let mut img = Monomial::one();
        let mut odd = false;
        for r in &ranges {
            let (i, j) = (m.exp(r.start), m.exp(r.start + 1));
            img.set_exp(r.start, j);
            img.set_exp(r.start + 1, i);
            odd ^= i % 2 == 1;
        }
        let mut v = coeff.clone() * &scale;
        if odd {
            v = -v;
        }
        poly.add_term(img, v);
    }
    Form::new(c.space().dual(), c.degree().to_vec(), poly)
}

/// The bihomogeneous τ on Sym^d ⊗ Sym^e.
pub fn tau2<F: Field>(c: &Form<F>) -> Result<Form<F>> {
    if c.space().groups().len() != 2 {
        return Err(Error::SpaceMismatch("expected a bihomogeneous form".into()));
    }
    tau(c)
}

/// A ternary form of one variable kind restricted to the line
/// `t0·p0 + t1·p1 + t2 = 0`, where `t` are its own variables and `p` the
/// dual coordinates of the line. Variables are ordered `t0, t1, p0, p1`;
/// the polynomial is homogeneous in `t` but not in `p`.
#[derive(Clone, PartialEq, Eq)]
pub struct Restricted<F> {
    kind: VarKind,
    degree: u32,
    poly: Poly<F>,
}

impl<F: Field> Restricted<F> {
    /// Substitutes `t2 = −(p0·t0 + p1·t1)`.
    pub fn of(f: &Form<F>) -> Result<Restricted<F>> {
        let sp = f.space();
        if sp.groups().len() != 1 || sp.nvars() != 3 {
            return Err(Error::SpaceMismatch("line restriction needs a ternary form".into()));
        }
        let v = |i| Poly::var(i, 4);
        let t2 = v(2).mul(&v(0)).add(&v(3).mul(&v(1))).neg();
        let poly = f.poly().compose(&[v(0), v(1), t2]);
        Ok(Restricted { kind: sp.groups()[0].kind, degree: f.total_degree(), poly })
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.poly
    }

    /// Binary transvectant in `t0, t1`, with `p0, p1` as parameters.
    pub fn transvect(&self, o: &Restricted<F>, l: u32) -> Result<Restricted<F>> {
        if self.kind != o.kind {
            return Err(Error::SpaceMismatch("restricted forms of different kinds".into()));
        }
        let min = self.degree.min(o.degree);
        if l > min {
            return Err(Error::LevelTooHigh { level: l, degree: min });
        }
        guard_characteristic::<F>(self.degree.max(o.degree))?;
        let poly = transvect_poly(&self.poly, &o.poly, &[Direction { a: 0, b: 1, level: l }]);
        Ok(Restricted { kind: self.kind, degree: self.degree + o.degree - 2 * l, poly })
    }

    /// For a restriction of degree zero in `t`, multiplies each term by the
    /// power of `p2` making it homogeneous of degree `order` in the line
    /// coordinates, giving a ternary form of the dual kind.
    pub fn rehomogenize(&self, order: u32) -> Result<Form<F>> {
        if self.degree != 0 {
            return Err(Error::DegreeMismatch(format!(
                "rehomogenizing a restriction of degree {} in the line variables",
                self.degree
            )));
        }
        let mut poly = Poly::zero(3);
        for (m, c) in self.poly.terms() {
            let (a, b) = (m.exp(2), m.exp(3));
            if a + b > order {
                return Err(Error::DegreeMismatch(format!(
                    "term of degree {} exceeds the declared order {order}",
                    a + b
                )));
            }
            poly.add_term(Monomial::from_exps(&[a, b, order - a - b]), c.clone());
        }
        let space = Space::new(vec![Group { kind: self.kind.dual(), dim: 3 }]);
        Form::new(space, vec![order], poly)
    }
}

impl<F: Field> std::fmt::Debug for Restricted<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Restricted<{:?}; {}>({:?})", self.kind, self.degree, self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, F61};
    use crate::poly::{apolar_pair, parse_form};
    use proptest::prelude::*;

    fn b(s: &str) -> Form<Rational> {
        parse_form(s, &Space::binary()).unwrap()
    }

    fn t(s: &str) -> Form<Rational> {
        parse_form(s, &Space::primal(3)).unwrap()
    }

    fn bb(s: &str) -> Form<Rational> {
        parse_form(s, &Space::double_binary()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn binary_from(coeffs: &[i64]) -> Form<Rational> {
        let d = coeffs.len() as u32 - 1;
        let c: Vec<Rational> = coeffs.iter().map(|&v| q(v)).collect();
        Form::from_coefficients(Space::binary(), vec![d], &c)
    }

    fn double_from(d: u32, e: u32, coeffs: &[i64]) -> Form<Rational> {
        let n = ((d + 1) * (e + 1)) as usize;
        let c: Vec<Rational> = coeffs.iter().take(n).map(|&v| q(v)).collect();
        Form::from_coefficients(Space::double_binary(), vec![d, e], &c)
    }

    #[test]
    fn binary_examples() {
        let f = b("x0^3+2*x0^2*x1-x1^3");
        assert!(transvect(&f, &f, 1).unwrap().is_zero());
        assert_eq!(transvect(&b("x0^2"), &b("x1^2"), 2).unwrap().to_scalar(), Some(q(4)));
        assert_eq!(transvect(&b("x0"), &b("x1"), 1).unwrap().to_scalar(), Some(q(-1)));
        let fermat = b("x0^3+x1^3");
        assert_eq!(transvect(&fermat, &fermat, 2).unwrap(), b("72*x0*x1"));
        assert!(matches!(transvect(&b("x0^2"), &b("x1"), 2), Err(Error::LevelTooHigh { .. })));
    }

    #[test]
    fn zero_level_is_the_product() {
        let f = bb("x0*u0+x1*u1");
        let g = bb("x0^2*u1-3*x1^2*u0");
        assert_eq!(transvect2(&f, &g, 0, 0).unwrap(), f.mul(&g).unwrap());
    }

    #[test]
    fn omega_examples() {
        let (f, g, h) = (t("x0^2+x1*x2"), t("x1"), t("x0-x2"));
        assert_eq!(omega(&f, &g, &h, 0).unwrap(), f.mul(&g).unwrap().mul(&h).unwrap());
        assert_eq!(omega(&t("x0"), &t("x1"), &t("x2"), 1).unwrap().to_scalar(), Some(q(1)));
        assert_eq!(omega(&t("x1"), &t("x0"), &t("x2"), 1).unwrap().to_scalar(), Some(q(-1)));
        let fermat = t("x0^3+x1^3+x2^3");
        let hess = omega(&fermat, &fermat, &fermat, 2).unwrap();
        assert_eq!(hess, t("1296*x0*x1*x2"));
    }

    #[test]
    fn omega_of_fermat_matches_hessian_up_to_scale() {
        let f = t("x0^3+x1^3+x2^3-2*x0*x1*x2+x0^2*x1");
        let h = omega(&f, &f, &f, 2).unwrap();
        let d = |i: usize, j: usize| {
            let mut a = [0u32; 3];
            a[i] += 1;
            a[j] += 1;
            f.derive(&a)
        };
        let m = |i, j| d(i, j);
        let det = m(0, 0)
            .mul(&m(1, 1).mul(&m(2, 2)).unwrap().sub(&m(1, 2).mul(&m(2, 1)).unwrap()).unwrap())
            .unwrap()
            .sub(&m(0, 1).mul(&m(1, 0).mul(&m(2, 2)).unwrap().sub(&m(1, 2).mul(&m(2, 0)).unwrap()).unwrap()).unwrap())
            .unwrap()
            .add(&m(0, 2).mul(&m(1, 0).mul(&m(2, 1)).unwrap().sub(&m(1, 1).mul(&m(2, 0)).unwrap()).unwrap()).unwrap())
            .unwrap();
        assert_eq!(det.ratio_to(&h), Some(q(6)));
    }

    #[test]
    fn tau_examples() {
        let w = |s: &str| parse_form(s, &Space::dual_space(2)).unwrap();
        assert_eq!(tau(&b("x0")).unwrap(), w("-w1"));
        assert_eq!(tau(&b("x1")).unwrap(), w("w0"));
        assert_eq!(tau(&b("x0^2*x1")).unwrap(), w("6*w0*w1^2"));
        let c = Form::constant(Space::double_binary(), q(5));
        assert_eq!(tau2(&c).unwrap().to_scalar(), Some(q(5)));
        let v = |s: &str| parse_form(s, &Space::double_binary().dual()).unwrap();
        assert_eq!(tau2(&bb("x0*x1*u0")).unwrap(), v("2*w0*w1*v1"));
        assert_eq!(tau2(&bb("x0^2*u1^2")).unwrap(), v("4*w1^2*v0^2"));
    }

    #[test]
    fn tau_is_multiplicative_up_to_factorials() {
        let (q1, q2) = (b("x0^2-x0*x1+3*x1^2"), b("2*x0^2+x1^2"));
        let lhs = tau(&q1.mul(&q2).unwrap()).unwrap();
        let rhs = tau(&q1).unwrap().mul(&tau(&q2).unwrap()).unwrap().scale(&q(6));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_and_rehomogenization() {
        let r = Restricted::of(&t("x0*x2")).unwrap();
        let s = r.transvect(&r, 2).unwrap();
        let form = s.rehomogenize(2).unwrap();
        let w = |s: &str| parse_form(s, &Space::dual_space(3)).unwrap();
        assert_eq!(form, w("-2*w1^2"));
        assert!(s.rehomogenize(1).is_err());
    }

    #[test]
    fn characteristic_guard_in_prime_field() {
        let f = b("x0^3+x1^3").convert(|c| F61::from_rational(c));
        assert!(transvect(&f, &f, 2).is_ok());
    }

    proptest! {
        #[test]
        fn binary_bridge(a in proptest::collection::vec(-9i64..=9, 7), c in proptest::collection::vec(-9i64..=9, 7), d in 0usize..=6) {
            let f = binary_from(&a[..=d]);
            let g = binary_from(&c[..=d]);
            let lhs = apolar_pair(&tau(&f).unwrap(), &g).unwrap();
            prop_assert_eq!(lhs, transvect(&f, &g, d as u32).unwrap());
        }

        #[test]
        fn double_bridge(a in proptest::collection::vec(-9i64..=9, 16), c in proptest::collection::vec(-9i64..=9, 16), d in 0u32..=3, e in 0u32..=3) {
            let f = double_from(d, e, &a);
            let g = double_from(d, e, &c);
            let lhs = apolar_pair(&tau2(&f).unwrap(), &g).unwrap();
            prop_assert_eq!(lhs, transvect2(&f, &g, d, e).unwrap());
        }

        #[test]
        fn symmetry_sign(a in proptest::collection::vec(-9i64..=9, 5), c in proptest::collection::vec(-9i64..=9, 4), l in 0u32..=3) {
            let f = binary_from(&a);
            let g = binary_from(&c);
            let fg = transvect(&f, &g, l).unwrap();
            let gf = transvect(&g, &f, l).unwrap();
            prop_assert_eq!(if l % 2 == 1 { gf.neg() } else { gf }, fg);
            if l % 2 == 1 {
                prop_assert!(transvect(&f, &f, l).unwrap().is_zero());
            }
        }

        #[test]
        fn sl2_equivariance(a in proptest::collection::vec(-9i64..=9, 5), c in proptest::collection::vec(-9i64..=9, 5), m in -4i64..=4, n in -4i64..=4, l in 0u32..=4) {
            // [[1, m], [0, 1]]·[[1, 0], [n, 1]] has determinant one.
            let mat = vec![vec![q(1 + m * n), q(m)], vec![q(n), q(1)]];
            let f = binary_from(&a);
            let g = binary_from(&c);
            let lhs = transvect(&f.transform(&mat), &g.transform(&mat), l).unwrap();
            prop_assert_eq!(lhs, transvect(&f, &g, l).unwrap().transform(&mat));
        }

        #[test]
        fn bilinear(a in proptest::collection::vec(-9i64..=9, 4), c in proptest::collection::vec(-9i64..=9, 4), e in proptest::collection::vec(-9i64..=9, 4), s in -5i64..=5) {
            let (f, g, h) = (binary_from(&a), binary_from(&c), binary_from(&e));
            let lhs = transvect(&f.scale(&q(s)).add(&g).unwrap(), &h, 2).unwrap();
            let rhs = transvect(&f, &h, 2).unwrap().scale(&q(s)).add(&transvect(&g, &h, 2).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
