use std::fmt;
use std::ops::Range;

use super::{scalar_from_bigint, Monomial, Poly, MAX_VARS};
use crate::error::{Error, Result};
use crate::field::{Field, PrintSign};

/// The role of a group of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// `x` variables: coordinates on the dual space, forms are Sym^d(W*).
    Primal,
    /// `w` variables: forms in Sym^d(W).
    Dual,
    /// `X` variables of the lift.
    Lift,
    /// `u` variables: second binary factor of a bihomogeneous form.
    Primal2,
    /// `v` variables: dual of the second binary factor.
    Dual2,
}

impl VarKind {
    pub fn letter(self) -> char {
        match self {
            VarKind::Primal => 'x',
            VarKind::Dual => 'w',
            VarKind::Lift => 'X',
            VarKind::Primal2 => 'u',
            VarKind::Dual2 => 'v',
        }
    }

    pub fn from_letter(c: char) -> Option<VarKind> {
        Some(match c {
            'x' => VarKind::Primal,
            'w' => VarKind::Dual,
            'X' => VarKind::Lift,
            'u' => VarKind::Primal2,
            'v' => VarKind::Dual2,
            _ => return None,
        })
    }

    /// The kind paired against this one by the apolarity contraction.
    pub fn dual(self) -> VarKind {
        match self {
            VarKind::Primal => VarKind::Dual,
            VarKind::Dual => VarKind::Primal,
            VarKind::Primal2 => VarKind::Dual2,
            VarKind::Dual2 => VarKind::Primal2,
            VarKind::Lift => VarKind::Lift,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Group {
    pub kind: VarKind,
    pub dim: usize,
}

/// An ordered list of variable groups; a form is homogeneous in each group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    groups: Vec<Group>,
}

impl Space {
    pub fn new(groups: Vec<Group>) -> Self {
        assert!(groups.iter().map(|g| g.dim).sum::<usize>() <= MAX_VARS, "too many variables");
        for (i, g) in groups.iter().enumerate() {
            assert!(g.dim > 0, "empty variable group");
            assert!(!groups[..i].iter().any(|h| h.kind == g.kind), "repeated variable kind");
        }
        Space { groups }
    }

    pub fn single(kind: VarKind, dim: usize) -> Self {
        Space::new(vec![Group { kind, dim }])
    }

    pub fn primal(dim: usize) -> Self {
        Space::single(VarKind::Primal, dim)
    }

    pub fn dual_space(dim: usize) -> Self {
        Space::single(VarKind::Dual, dim)
    }

    pub fn lift(dim: usize) -> Self {
        Space::single(VarKind::Lift, dim)
    }

    pub fn binary() -> Self {
        Space::primal(2)
    }

    /// (x0, x1) × (u0, u1).
    pub fn double_binary() -> Self {
        Space::new(vec![
            Group { kind: VarKind::Primal, dim: 2 },
            Group { kind: VarKind::Primal2, dim: 2 },
        ])
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn nvars(&self) -> usize {
        self.groups.iter().map(|g| g.dim).sum()
    }

    /// Variable index ranges of the groups.
    pub fn ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.groups
            .iter()
            .map(|g| {
                let r = start..start + g.dim;
                start += g.dim;
                r
            })
            .collect()
    }

    pub fn dual(&self) -> Space {
        Space::new(self.groups.iter().map(|g| Group { kind: g.kind.dual(), dim: g.dim }).collect())
    }

    /// Global index of variable `idx` of the group of the given kind.
    pub fn locate(&self, kind: VarKind, idx: usize) -> Option<usize> {
        let mut start = 0;
        for g in &self.groups {
            if g.kind == kind {
                return (idx < g.dim).then_some(start + idx);
            }
            start += g.dim;
        }
        None
    }

    pub fn var_name(&self, i: usize) -> String {
        let mut start = 0;
        for g in &self.groups {
            if i < start + g.dim {
                return format!("{}{}", g.kind.letter(), i - start);
            }
            start += g.dim;
        }
        panic!("variable index out of range")
    }

    /// Per-group degrees of a monomial.
    pub fn degrees_of(&self, m: &Monomial) -> Vec<u32> {
        self.ranges().into_iter().map(|r| m.degree_in(r)).collect()
    }

    /// All monomials of the given per-group degrees, in descending lex order.
    pub fn basis(&self, degree: &[u32]) -> Vec<Monomial> {
        assert_eq!(degree.len(), self.groups.len(), "one degree per group");
        let mut out = vec![Monomial::one()];
        for (r, &d) in self.ranges().into_iter().zip(degree) {
            let parts = super::combinatorics::compositions(d, r.len());
            let mut next = Vec::with_capacity(out.len() * parts.len());
            for m in &out {
                for c in &parts {
                    let mut n = *m;
                    for (k, &e) in c.iter().enumerate() {
                        n.set_exp(r.start + k, e);
                    }
                    next.push(n);
                }
            }
            out = next;
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn describe(&self) -> String {
        self.groups.iter().map(|g| format!("{}[{}]", g.kind.letter(), g.dim)).collect::<Vec<_>>().join("x")
    }
}

/// A polynomial homogeneous in each variable group of its space.
#[derive(Clone, PartialEq, Eq)]
pub struct Form<F> {
    space: Space,
    degree: Vec<u32>,
    poly: Poly<F>,
}

impl<F: Field> Form<F> {
    /// Checks that every term has the declared per-group degrees.
    pub fn new(space: Space, degree: Vec<u32>, poly: Poly<F>) -> Result<Self> {
        if poly.nvars() != space.nvars() || degree.len() != space.groups().len() {
            return Err(Error::SpaceMismatch(format!(
                "polynomial does not live in {}",
                space.describe()
            )));
        }
        for (m, _) in poly.terms() {
            let got = space.degrees_of(m);
            if got != degree {
                return Err(Error::DegreeMismatch(format!(
                    "term of degree {got:?} in a form of degree {degree:?}"
                )));
            }
        }
        Ok(Form { space, degree, poly })
    }

    /// Infers the degree from the terms; fails on the zero polynomial.
    pub fn from_poly(space: Space, poly: Poly<F>) -> Result<Self> {
        let Some((m, _)) = poly.terms().next() else {
            return Err(Error::DegreeMismatch("the zero polynomial has no degree".into()));
        };
        let degree = space.degrees_of(m);
        Form::new(space, degree, poly)
    }

    pub fn zero(space: Space, degree: Vec<u32>) -> Self {
        assert_eq!(degree.len(), space.groups().len());
        let n = space.nvars();
        Form { space, degree, poly: Poly::zero(n) }
    }

    pub fn constant(space: Space, c: F) -> Self {
        let n = space.nvars();
        let degree = vec![0; space.groups().len()];
        Form { space, degree, poly: Poly::constant(c, n) }
    }

    pub fn var(space: Space, i: usize) -> Self {
        let n = space.nvars();
        Form::from_poly(space, Poly::var(i, n)).expect("a variable is homogeneous")
    }

    /// `c·x^exps`.
    pub fn monomial(space: Space, exps: &[u32], c: F) -> Self {
        let n = space.nvars();
        let m = Monomial::from_exps(exps);
        let degree = space.degrees_of(&m);
        Form { space, degree, poly: Poly::term(m, c, n) }
    }

    pub fn from_coefficients(space: Space, degree: Vec<u32>, coeffs: &[F]) -> Self {
        let basis = space.basis(&degree);
        assert_eq!(basis.len(), coeffs.len(), "one coefficient per basis monomial");
        let n = space.nvars();
        let poly = Poly::from_terms(n, basis.into_iter().zip(coeffs.iter().cloned()));
        Form { space, degree, poly }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn total_degree(&self) -> u32 {
        self.degree.iter().sum()
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<F> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.poly.coeff(&Monomial::from_exps(exps))
    }

    /// Coefficients in the canonical monomial basis (descending lex).
    pub fn coefficients(&self) -> Vec<F> {
        self.space.basis(&self.degree).iter().map(|m| self.poly.coeff(m)).collect()
    }

    /// The value of a degree-0 form.
    pub fn to_scalar(&self) -> Option<F> {
        self.degree.iter().all(|&d| d == 0).then(|| self.poly.coeff(&Monomial::one()))
    }

    /// The first nonzero coefficient in descending lex order.
    pub fn leading_coeff(&self) -> Option<F> {
        self.poly.terms().next_back().map(|(_, c)| c.clone())
    }

    fn check_same(&self, o: &Form<F>) -> Result<()> {
        if self.space != o.space {
            return Err(Error::SpaceMismatch(format!(
                "{} vs {}",
                self.space.describe(),
                o.space.describe()
            )));
        }
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch(format!("{:?} vs {:?}", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Form<F>) -> Result<Form<F>> {
        self.check_same(o)?;
        Ok(Form { space: self.space.clone(), degree: self.degree.clone(), poly: self.poly.add(&o.poly) })
    }

    pub fn sub(&self, o: &Form<F>) -> Result<Form<F>> {
        self.check_same(o)?;
        Ok(Form { space: self.space.clone(), degree: self.degree.clone(), poly: self.poly.sub(&o.poly) })
    }

    pub fn neg(&self) -> Form<F> {
        Form { space: self.space.clone(), degree: self.degree.clone(), poly: self.poly.neg() }
    }

    pub fn scale(&self, s: &F) -> Form<F> {
        Form { space: self.space.clone(), degree: self.degree.clone(), poly: self.poly.scale(s) }
    }

    pub fn mul(&self, o: &Form<F>) -> Result<Form<F>> {
        if self.space != o.space {
            return Err(Error::SpaceMismatch(format!(
                "{} vs {}",
                self.space.describe(),
                o.space.describe()
            )));
        }
        let degree = self.degree.iter().zip(&o.degree).map(|(a, b)| a + b).collect();
        Ok(Form { space: self.space.clone(), degree, poly: self.poly.mul(&o.poly) })
    }

    pub fn pow(&self, e: u32) -> Form<F> {
        let degree = self.degree.iter().map(|d| d * e).collect();
        Form { space: self.space.clone(), degree, poly: self.poly.pow(e) }
    }

    /// ∂^α.
    pub fn derive(&self, alpha: &[u32]) -> Form<F> {
        let a = Monomial::from_exps(alpha);
        let da = self.space.degrees_of(&a);
        let degree = self.degree.iter().zip(&da).map(|(d, e)| d.saturating_sub(*e)).collect();
        Form { space: self.space.clone(), degree, poly: self.poly.derive(&a) }
    }

    /// Same coefficients over a space of identical shape but other kinds.
    pub fn with_space(&self, space: Space) -> Result<Form<F>> {
        let same_shape = space.groups().len() == self.space.groups().len()
            && space.groups().iter().zip(self.space.groups()).all(|(a, b)| a.dim == b.dim);
        if !same_shape {
            return Err(Error::SpaceMismatch(format!(
                "cannot view {} as {}",
                self.space.describe(),
                space.describe()
            )));
        }
        Ok(Form { space, degree: self.degree.clone(), poly: self.poly.clone() })
    }

    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> Form<G> {
        Form { space: self.space.clone(), degree: self.degree.clone(), poly: self.poly.convert(f) }
    }

    /// `f(A·x)`: variable `i` becomes `Σⱼ A[i][j]·xⱼ`. `A` acts on all
    /// variables of the space and must preserve the groups.
    pub fn transform(&self, a: &[Vec<F>]) -> Form<F> {
        let n = self.space.nvars();
        assert_eq!(a.len(), n, "matrix size");
        let images: Vec<Poly<F>> = a
            .iter()
            .map(|row| {
                Poly::from_terms(n, row.iter().enumerate().map(|(j, c)| (Monomial::var(j), c.clone())))
            })
            .collect();
        Form { space: self.space.clone(), degree: self.degree.clone(), poly: self.poly.compose(&images) }
    }

    /// Formal substitution of `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Form<F>]) -> Result<Form<F>> {
        if images.len() != self.space.nvars() {
            return Err(Error::ArityMismatch { expected: self.space.nvars(), got: images.len() });
        }
        if self.space.groups().len() != 1 {
            return Err(Error::WrongArity("substitution needs a single-group form".into()));
        }
        let first = images.first().ok_or(Error::InhomogeneousImages)?;
        if images.iter().any(|g| g.space != first.space || g.degree != first.degree) {
            return Err(Error::InhomogeneousImages);
        }
        let k = self.degree[0];
        let degree = first.degree.iter().map(|d| d * k).collect();
        let polys: Vec<Poly<F>> = images.iter().map(|g| g.poly.clone()).collect();
        Ok(Form { space: first.space.clone(), degree, poly: self.poly.compose(&polys) })
    }

    /// Divides by the positive content, making the rational coordinates a
    /// primitive integer vector; with `positive_lead` the leading coefficient
    /// is also made positive. Returns the normalized form and the factor.
    pub fn primitive(&self, positive_lead: bool) -> (Form<F>, F) {
        let terms: Vec<(Monomial, F)> =
            self.poly.terms().rev().map(|(m, c)| (*m, c.clone())).collect();
        let mut coeffs: Vec<F> = terms.iter().map(|(_, c)| c.clone()).collect();
        let s = crate::field::normalize_primitive(&mut coeffs, positive_lead);
        let poly = Poly::from_terms(self.space.nvars(), terms.iter().map(|(m, _)| *m).zip(coeffs));
        (Form { space: self.space.clone(), degree: self.degree.clone(), poly }, s)
    }

    /// `Some(λ)` with `other = λ·self`, solved from the first nonzero pair and
    /// checked on every coefficient.
    pub fn ratio_to(&self, other: &Form<F>) -> Option<F> {
        if self.space != other.space || self.degree != other.degree {
            return None;
        }
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (m, c) = self.poly.terms().next_back()?;
        let lambda = other.poly.coeff(m).checked_div(c).ok()?;
        if lambda.is_zero() {
            return None;
        }
        (self.scale(&lambda) == *other).then_some(lambda)
    }
}

fn check_pairing<F: Field>(u: &Form<F>, f: &Form<F>) -> Result<Vec<u32>> {
    if u.space != f.space.dual() {
        return Err(Error::SpaceMismatch(format!(
            "cannot pair {} against {}",
            u.space.describe(),
            f.space.describe()
        )));
    }
    u.degree
        .iter()
        .zip(&f.degree)
        .map(|(&du, &df)| {
            if du > df {
                Err(Error::DegreeTooHigh { dual: du, primal: df })
            } else {
                Ok(df - du)
            }
        })
        .collect()
}

/// The apolarity contraction D(u, f): each monomial `w^α` of `u` acts on `f`
/// as `∂^α`. The result lives in the space of `f`. The arguments may be
/// given in either orientation as long as their spaces are dual.
pub fn apolar_pair<F: Field>(u: &Form<F>, f: &Form<F>) -> Result<Form<F>> {
    let degree = check_pairing(u, f)?;
    let n = f.space.nvars();
    let mut r = Poly::zero(n);
    for (a, ca) in u.poly.terms() {
        for (b, cb) in f.poly.terms() {
            if let Some(q) = b.div(a) {
                let s = scalar_from_bigint::<F>(&b.falling(a));
                r.add_term(q, ca.clone() * cb * &s);
            }
        }
    }
    Ok(Form { space: f.space.clone(), degree, poly: r })
}

/// The contraction on a product of spaces, acting in each group
/// independently.
pub fn apolar_pair_multi<F: Field>(u: &Form<F>, f: &Form<F>) -> Result<Form<F>> {
    apolar_pair(u, f)
}

/// Pullback along [x:y]×[u:v] ↦ [xu : xv : yu : yv].
pub fn segre_pullback<F: Field>(e: &Form<F>) -> Result<Form<F>> {
    if e.space.groups().len() != 1 || e.space.nvars() != 4 {
        return Err(Error::WrongArity(format!("expected 4 variables, got {}", e.space.describe())));
    }
    let sp = Space::double_binary();
    let m = |exps: &[u32]| Form::monomial(sp.clone(), exps, F::one());
    let images = [m(&[1, 0, 1, 0]), m(&[1, 0, 0, 1]), m(&[0, 1, 1, 0]), m(&[0, 1, 0, 1])];
    let k = e.degree[0];
    let poly = e.poly.compose(&images.iter().map(|g| g.poly.clone()).collect::<Vec<_>>());
    Ok(Form { space: sp, degree: vec![k, k], poly })
}

impl<F: Field> fmt::Display for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms().rev() {
            let mono: Vec<String> = (0..self.space.nvars())
                .filter(|&i| m.exp(i) > 0)
                .map(|i| {
                    let name = self.space.var_name(i);
                    if m.exp(i) == 1 {
                        name
                    } else {
                        format!("{}^{}", name, m.exp(i))
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, mag) = match c.print_sign() {
                PrintSign::Negative => (true, format!("{}", -c.clone())),
                PrintSign::Positive => (false, c.to_string()),
                PrintSign::Compound => (false, format!("({c})")),
            };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let unit = matches!(c.print_sign(), PrintSign::Positive | PrintSign::Negative)
                && (c.is_one() || (-c.clone()).is_one());
            match (mono.is_empty(), unit) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form<{}; {:?}>({})", self.space.describe(), self.degree, self)
    }
}
