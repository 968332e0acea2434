use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::poly::{apolar_pair, Form, Space, VarKind};
use crate::transvectant::{self, Restricted};

/// A shared covariant expression.
pub type Cov = Arc<Expr>;

#[derive(Debug)]
pub enum Node {
    /// The input form in argument slot `slot`.
    Input { slot: usize, name: String },
    /// A fixed form with rational coefficients.
    Const(Form<Rational>),
    /// Transvectant with one level per variable group.
    Transvect(Cov, Cov, Vec<u32>),
    /// Ternary Ω-process.
    Omega(Cov, Cov, Cov, u32),
    /// Apolarity contraction; the argument of smaller total degree acts on
    /// the other one.
    Pair(Cov, Cov),
    Product(Cov, Cov),
    Power(Cov, u32),
    Tau(Cov),
    /// Restriction of a ternary form to a variable line.
    Restrict(Cov),
    /// Rehomogenization of a degree-zero restricted value to the given order.
    Rehomogenize(Cov, u32),
}

#[derive(Debug)]
pub struct Expr {
    node: Node,
    name: Option<String>,
}

pub fn input(slot: usize, name: &str) -> Cov {
    Arc::new(Expr { node: Node::Input { slot, name: name.into() }, name: None })
}

pub fn constant(form: Form<Rational>) -> Cov {
    Arc::new(Expr { node: Node::Const(form), name: None })
}

pub fn transvect(a: &Cov, b: &Cov, l: u32) -> Cov {
    Arc::new(Expr { node: Node::Transvect(a.clone(), b.clone(), vec![l]), name: None })
}

pub fn transvect2(a: &Cov, b: &Cov, l: u32, m: u32) -> Cov {
    Arc::new(Expr { node: Node::Transvect(a.clone(), b.clone(), vec![l, m]), name: None })
}

pub fn omega(a: &Cov, b: &Cov, c: &Cov, l: u32) -> Cov {
    Arc::new(Expr { node: Node::Omega(a.clone(), b.clone(), c.clone(), l), name: None })
}

pub fn pair(a: &Cov, b: &Cov) -> Cov {
    Arc::new(Expr { node: Node::Pair(a.clone(), b.clone()), name: None })
}

pub fn product(a: &Cov, b: &Cov) -> Cov {
    Arc::new(Expr { node: Node::Product(a.clone(), b.clone()), name: None })
}

pub fn power(a: &Cov, e: u32) -> Cov {
    Arc::new(Expr { node: Node::Power(a.clone(), e), name: None })
}

pub fn tau(a: &Cov) -> Cov {
    Arc::new(Expr { node: Node::Tau(a.clone()), name: None })
}

pub fn restrict(a: &Cov) -> Cov {
    Arc::new(Expr { node: Node::Restrict(a.clone()), name: None })
}

pub fn rehomogenize(a: &Cov, order: u32) -> Cov {
    Arc::new(Expr { node: Node::Rehomogenize(a.clone(), order), name: None })
}

/// Attaches a display name to an expression.
pub fn named(name: &str, e: Cov) -> Cov {
    let e = Arc::try_unwrap(e).unwrap_or_else(|shared| Expr { node: shared.node.clone_shallow(), name: None });
    Arc::new(Expr { node: e.node, name: Some(name.into()) })
}

impl Node {
    fn clone_shallow(&self) -> Node {
        match self {
            Node::Input { slot, name } => Node::Input { slot: *slot, name: name.clone() },
            Node::Const(f) => Node::Const(f.clone()),
            Node::Transvect(a, b, l) => Node::Transvect(a.clone(), b.clone(), l.clone()),
            Node::Omega(a, b, c, l) => Node::Omega(a.clone(), b.clone(), c.clone(), *l),
            Node::Pair(a, b) => Node::Pair(a.clone(), b.clone()),
            Node::Product(a, b) => Node::Product(a.clone(), b.clone()),
            Node::Power(a, e) => Node::Power(a.clone(), *e),
            Node::Tau(a) => Node::Tau(a.clone()),
            Node::Restrict(a) => Node::Restrict(a.clone()),
            Node::Rehomogenize(a, o) => Node::Rehomogenize(a.clone(), *o),
        }
    }
}

/// Space and per-slot degrees of an input form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub space: Space,
    pub degree: Vec<u32>,
}

impl Shape {
    pub fn of<F: Field>(f: &Form<F>) -> Shape {
        Shape { space: f.space().clone(), degree: f.degree().to_vec() }
    }
}

/// Bottom-up bookkeeping of an expression: where its value lives, its
/// order in each variable group and its degree in each input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub space: Space,
    pub order: Vec<u32>,
    pub degree: Vec<u32>,
    /// Set for values restricted to a line; `space` is then the ternary
    /// space before restriction and `order` the degree in the line variables.
    pub restricted: bool,
}

impl Signature {
    fn mismatch(msg: impl Into<String>) -> Error {
        Error::DegreeMismatch(msg.into())
    }

    pub fn is_covariant(&self) -> bool {
        self.space.groups().iter().all(|g| matches!(g.kind, VarKind::Primal | VarKind::Primal2))
    }

    /// Weight in each variable group: (Σ input degree · input order ∓ order)
    /// divided by the group dimension, with − for covariants and + for
    /// contravariants. `None` when some weight is not an integer.
    pub fn weights(&self, inputs: &[Shape]) -> Option<Vec<i64>> {
        let cov = self.is_covariant();
        self.space
            .groups()
            .iter()
            .enumerate()
            .map(|(g, grp)| {
                let load: i64 =
                    inputs.iter().zip(&self.degree).map(|(s, &d)| s.degree[g] as i64 * d as i64).sum();
                let o = self.order[g] as i64;
                let num = if cov { load - o } else { load + o };
                (num % grp.dim as i64 == 0).then_some(num / grp.dim as i64)
            })
            .collect()
    }
}

impl Expr {
    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn signature(&self, inputs: &[Shape]) -> Result<Signature> {
        let plain = |sig: Signature, what: &str| {
            if sig.restricted {
                Err(Signature::mismatch(format!("{what} of a restricted value")))
            } else {
                Ok(sig)
            }
        };
        match &self.node {
            Node::Input { slot, .. } => {
                let s = inputs
                    .get(*slot)
                    .ok_or_else(|| Error::WrongArity(format!("no input in slot {slot}")))?;
                let mut degree = vec![0; inputs.len()];
                degree[*slot] = 1;
                Ok(Signature { space: s.space.clone(), order: s.degree.clone(), degree, restricted: false })
            }
            Node::Const(f) => Ok(Signature {
                space: f.space().clone(),
                order: f.degree().to_vec(),
                degree: vec![0; inputs.len()],
                restricted: false,
            }),
            Node::Transvect(a, b, levels) => {
                let (sa, sb) = (a.signature(inputs)?, b.signature(inputs)?);
                if sa.space != sb.space || sa.restricted != sb.restricted {
                    return Err(Signature::mismatch("transvectant arguments in different spaces"));
                }
                let nlev = if sa.restricted { 1 } else { sa.order.len() };
                if levels.len() != nlev {
                    return Err(Signature::mismatch("one level per variable group"));
                }
                let mut order = Vec::new();
                for ((&l, &oa), &ob) in levels.iter().zip(&sa.order).zip(&sb.order) {
                    if l > oa.min(ob) {
                        return Err(Error::LevelTooHigh { level: l, degree: oa.min(ob) });
                    }
                    order.push(oa + ob - 2 * l);
                }
                Ok(Signature { order, degree: add(&sa.degree, &sb.degree), ..sa })
            }
            Node::Omega(a, b, c, l) => {
                let sa = plain(a.signature(inputs)?, "Ω-process")?;
                let sb = plain(b.signature(inputs)?, "Ω-process")?;
                let sc = plain(c.signature(inputs)?, "Ω-process")?;
                if sa.space != sb.space || sa.space != sc.space || sa.space.nvars() != 3 {
                    return Err(Signature::mismatch("Ω-process needs three ternary arguments"));
                }
                let min = sa.order[0].min(sb.order[0]).min(sc.order[0]);
                if *l > min {
                    return Err(Error::LevelTooHigh { level: *l, degree: min });
                }
                let order = vec![sa.order[0] + sb.order[0] + sc.order[0] - 3 * l];
                Ok(Signature { order, degree: add(&add(&sa.degree, &sb.degree), &sc.degree), ..sa })
            }
            Node::Pair(a, b) => {
                let sa = plain(a.signature(inputs)?, "pairing")?;
                let sb = plain(b.signature(inputs)?, "pairing")?;
                if sa.space.dual() != sb.space {
                    return Err(Signature::mismatch("paired arguments must live in dual spaces"));
                }
                let (lo, hi) = if total(&sa.order) <= total(&sb.order) { (&sa, &sb) } else { (&sb, &sa) };
                let mut order = Vec::new();
                for (&o1, &o2) in lo.order.iter().zip(&hi.order) {
                    if o1 > o2 {
                        return Err(Error::DegreeTooHigh { dual: o1, primal: o2 });
                    }
                    order.push(o2 - o1);
                }
                Ok(Signature {
                    space: hi.space.clone(),
                    order,
                    degree: add(&sa.degree, &sb.degree),
                    restricted: false,
                })
            }
            Node::Product(a, b) => {
                let sa = plain(a.signature(inputs)?, "product")?;
                let sb = plain(b.signature(inputs)?, "product")?;
                if sa.space != sb.space {
                    return Err(Signature::mismatch("product factors in different spaces"));
                }
                Ok(Signature { order: add(&sa.order, &sb.order), degree: add(&sa.degree, &sb.degree), ..sa })
            }
            Node::Power(a, e) => {
                let sa = plain(a.signature(inputs)?, "power")?;
                Ok(Signature {
                    order: sa.order.iter().map(|o| o * e).collect(),
                    degree: sa.degree.iter().map(|d| d * e).collect(),
                    ..sa
                })
            }
            Node::Tau(a) => {
                let sa = plain(a.signature(inputs)?, "τ")?;
                if sa.space.groups().iter().any(|g| g.dim != 2) {
                    return Err(Signature::mismatch("τ needs binary variable groups"));
                }
                Ok(Signature { space: sa.space.dual(), ..sa })
            }
            Node::Restrict(a) => {
                let sa = plain(a.signature(inputs)?, "restriction")?;
                if sa.space.groups().len() != 1 || sa.space.nvars() != 3 {
                    return Err(Signature::mismatch("restriction needs a ternary value"));
                }
                Ok(Signature { restricted: true, ..sa })
            }
            Node::Rehomogenize(a, o) => {
                let sa = a.signature(inputs)?;
                if !sa.restricted || sa.order != [0] {
                    return Err(Signature::mismatch("rehomogenization needs a restricted value of degree 0"));
                }
                Ok(Signature { space: sa.space.dual(), order: vec![*o], degree: sa.degree, restricted: false })
            }
        }
    }

    /// The defining formula, with named children shown by name.
    pub fn definition(&self) -> String {
        let mut s = String::new();
        self.write_node(&mut s).expect("writing to a string");
        s
    }

    fn write_node(&self, out: &mut impl fmt::Write) -> fmt::Result {
        let levels = |l: &[u32]| match l {
            [one] => one.to_string(),
            many => format!("{{{}}}", many.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
        };
        match &self.node {
            Node::Input { name, .. } => write!(out, "{name}"),
            Node::Const(f) => write!(out, "[{f}]"),
            Node::Transvect(a, b, l) => write!(out, "({a},{b})_{}", levels(l)),
            Node::Omega(a, b, c, l) => write!(out, "({a},{b},{c})_{l}"),
            Node::Pair(a, b) => write!(out, "D({a},{b})"),
            Node::Product(a, b) => write!(out, "{a}*{b}"),
            Node::Power(a, e) => {
                if a.name.is_some() || matches!(a.node, Node::Input { .. }) {
                    write!(out, "{a}^{e}")
                } else {
                    write!(out, "({a})^{e}")
                }
            }
            Node::Tau(a) => write!(out, "tau({a})"),
            Node::Restrict(a) => write!(out, "{a}'"),
            Node::Rehomogenize(a, o) => write!(out, "[{a}]^{o}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => self.write_node(f),
        }
    }
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn total(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// The value of an expression at a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value<F: Field> {
    Form(Form<F>),
    Restricted(Restricted<F>),
}

impl<F: Field> Value<F> {
    pub fn into_form(self) -> Result<Form<F>> {
        match self {
            Value::Form(f) => Ok(f),
            Value::Restricted(_) => Err(Error::DegreeMismatch("value is restricted to a line".into())),
        }
    }

    fn as_form(&self) -> Result<&Form<F>> {
        match self {
            Value::Form(f) => Ok(f),
            Value::Restricted(_) => Err(Error::DegreeMismatch("value is restricted to a line".into())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Form(f) => f.is_zero(),
            Value::Restricted(r) => r.poly().is_zero(),
        }
    }
}

/// Evaluates expressions at fixed input forms, caching shared subtrees.
pub struct Evaluator<F: Field> {
    inputs: Vec<Form<F>>,
    shapes: Vec<Shape>,
    memo: HashMap<usize, (Cov, Value<F>)>,
}

impl<F: Field> Evaluator<F> {
    pub fn new(inputs: Vec<Form<F>>) -> Self {
        let shapes = inputs.iter().map(Shape::of).collect();
        Evaluator { inputs, shapes, memo: HashMap::new() }
    }

    pub fn inputs(&self) -> &[Form<F>] {
        &self.inputs
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    /// Checks the signature, evaluates, and confirms the declared order.
    pub fn form(&mut self, e: &Cov) -> Result<Form<F>> {
        let sig = e.signature(&self.shapes)?;
        if sig.restricted {
            return Err(Error::DegreeMismatch(format!("{e} is restricted to a line")));
        }
        let f = self.value(e)?.into_form()?;
        debug_assert_eq!(f.degree(), &sig.order[..]);
        Ok(f)
    }

    pub fn value(&mut self, e: &Cov) -> Result<Value<F>> {
        let key = Arc::as_ptr(e) as usize;
        if let Some((_, v)) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(e)?;
        self.memo.insert(key, (e.clone(), v.clone()));
        Ok(v)
    }

    fn compute(&mut self, e: &Cov) -> Result<Value<F>> {
        Ok(match &e.node {
            Node::Input { slot, .. } => Value::Form(
                self.inputs
                    .get(*slot)
                    .cloned()
                    .ok_or_else(|| Error::WrongArity(format!("no input in slot {slot}")))?,
            ),
            Node::Const(f) => Value::Form(f.convert(F::from_rational)),
            Node::Transvect(a, b, levels) => match (self.value(a)?, self.value(b)?) {
                (Value::Form(x), Value::Form(y)) => Value::Form(transvectant::transvect_levels(&x, &y, levels)?),
                (Value::Restricted(x), Value::Restricted(y)) if levels.len() == 1 => {
                    Value::Restricted(x.transvect(&y, levels[0])?)
                }
                _ => return Err(Error::DegreeMismatch(format!("cannot evaluate {e}"))),
            },
            Node::Omega(a, b, c, l) => {
                let (x, y, z) = (self.value(a)?, self.value(b)?, self.value(c)?);
                Value::Form(transvectant::omega(x.as_form()?, y.as_form()?, z.as_form()?, *l)?)
            }
            Node::Pair(a, b) => {
                let (x, y) = (self.value(a)?, self.value(b)?);
                let (x, y) = (x.as_form()?, y.as_form()?);
                if x.total_degree() <= y.total_degree() {
                    Value::Form(apolar_pair(x, y)?)
                } else {
                    Value::Form(apolar_pair(y, x)?)
                }
            }
            Node::Product(a, b) => {
                let (x, y) = (self.value(a)?, self.value(b)?);
                Value::Form(x.as_form()?.mul(y.as_form()?)?)
            }
            Node::Power(a, k) => Value::Form(self.value(a)?.as_form()?.pow(*k)),
            Node::Tau(a) => Value::Form(transvectant::tau(self.value(a)?.as_form()?)?),
            Node::Restrict(a) => Value::Restricted(Restricted::of(self.value(a)?.as_form()?)?),
            Node::Rehomogenize(a, o) => match self.value(a)? {
                Value::Restricted(r) => Value::Form(r.rehomogenize(*o)?),
                Value::Form(_) => return Err(Error::DegreeMismatch(format!("cannot evaluate {e}"))),
            },
        })
    }
}

/// One-shot evaluation of an expression at the given inputs.
pub fn evaluate<F: Field>(e: &Cov, inputs: &[Form<F>]) -> Result<Form<F>> {
    Evaluator::new(inputs.to_vec()).form(e)
}
