//! Invariant fingerprints and their weighted-projective comparison.
//!
//! A battery is a fixed list of order-zero expressions for one input shape.
//! Binary, paired and bicubic batteries are grown breadth-first from
//! transvectants of the inputs; the ternary battery pairs the contravariants
//! of the plane-quartic catalog against its covariants. In both cases a
//! candidate is kept when its values at a fixed set of seeded sample inputs
//! are linearly independent from the invariants of the same degree kept
//! before it, so each battery is deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::covariant::{self, catalog, Cov, Evaluator, Shape};
use crate::error::{Error, Result};
use crate::field::arith::bezout;
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::poly::{Form, Space, VarKind};
use crate::sample::{random_form, rng};
use crate::transvectant::transvect_levels;

/// One invariant of a battery.
#[derive(Debug, Clone)]
pub struct Member {
    pub expr: Cov,
    /// Degree in each input.
    pub degree: Vec<u32>,
    pub weight: i64,
}

#[derive(Debug)]
pub struct Battery {
    pub id: String,
    pub shapes: Vec<Shape>,
    pub members: Vec<Member>,
}

impl Battery {
    /// One line per invariant: degree, weight and expression.
    pub fn describe(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|m| format!("degree {:?} weight {}: {}", m.degree, m.weight, m.expr))
            .collect()
    }
}

/// Identifier of the battery for a tuple of input shapes.
pub fn battery_id(shapes: &[Shape]) -> Result<String> {
    let primal = |s: &Shape| s.space.groups().iter().all(|g| matches!(g.kind, VarKind::Primal | VarKind::Primal2));
    let describe = || shapes.iter().map(|s| format!("{} of degree {:?}", s.space.describe(), s.degree)).collect::<Vec<_>>().join(", ");
    if !shapes.iter().all(primal) {
        return Err(Error::BatteryUndefined(describe()));
    }
    match shapes {
        [s] if s.space == Space::binary() && s.degree[0] >= 3 => Ok(format!("binary-{}", s.degree[0])),
        [s] if s.space == Space::primal(3) && s.degree == [4] => Ok("ternary-4".into()),
        [s] if s.space == Space::double_binary() && s.degree == [3, 3] => Ok("bicubic-3-3".into()),
        [a, b] if a.space == Space::binary() && b.space == Space::binary() && a.degree == [6] && b.degree == [4] => {
            Ok("sum-6-4".into())
        }
        _ => Err(Error::BatteryUndefined(describe())),
    }
}

/// The battery for the given shapes, built once per process.
pub fn battery_for(shapes: &[Shape]) -> Result<Arc<Battery>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Battery>>>> = OnceLock::new();
    let id = battery_id(shapes)?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("battery cache").get(&id) {
        return Ok(b.clone());
    }
    let built = Arc::new(build(&id, shapes)?);
    cache.lock().expect("battery cache").entry(id).or_insert(built.clone());
    Ok(built)
}

const SAMPLES: usize = 8;
const SAMPLE_SEED: u64 = 0xf1f0;

fn samples(shapes: &[Shape]) -> Vec<Vec<Form<Rational>>> {
    let mut r = rng(SAMPLE_SEED);
    (0..SAMPLES).map(|_| shapes.iter().map(|s| random_form(&s.space, &s.degree, 3, &mut r)).collect()).collect()
}

struct Limits {
    max_degree: u32,
    max_order: u32,
    max_pool: usize,
    rounds: usize,
    target: usize,
}

fn build(id: &str, shapes: &[Shape]) -> Result<Battery> {
    let members = match id {
        "ternary-4" => ternary(shapes)?,
        "bicubic-3-3" => grow(shapes, Limits { max_degree: 8, max_order: 6, max_pool: 16, rounds: 3, target: 10 })?,
        "sum-6-4" => grow(shapes, Limits { max_degree: 6, max_order: 8, max_pool: 20, rounds: 3, target: 12 })?,
        _ => {
            let k = shapes[0].degree[0];
            grow(shapes, Limits { max_degree: 16, max_order: k + 2, max_pool: 20, rounds: 4, target: 10 })?
        }
    };
    Ok(Battery { id: id.into(), shapes: shapes.to_vec(), members })
}

/// Keeps invariants whose sample vectors raise the rank within their
/// degree.
struct Selector {
    rows: HashMap<Vec<u32>, Vec<Vec<Rational>>>,
    members: Vec<Member>,
}

impl Selector {
    fn offer(&mut self, expr: Cov, degree: Vec<u32>, values: Vec<Rational>, shapes: &[Shape]) -> Result<bool> {
        if values.iter().all(|v| v.is_zero()) {
            return Ok(false);
        }
        let rows = self.rows.entry(degree.clone()).or_default();
        let mut trial = rows.clone();
        trial.push(values);
        if Matrix::from_rows(trial.clone()).rank() < trial.len() {
            return Ok(false);
        }
        *rows = trial;
        let sig = expr.signature(shapes)?;
        let weight = sig
            .weights(shapes)
            .and_then(|w| w.first().copied())
            .ok_or_else(|| Error::DegreeMismatch(format!("{expr} has a fractional weight")))?;
        self.members.push(Member { expr, degree, weight });
        Ok(true)
    }

    fn finish(mut self) -> Vec<Member> {
        let mut indexed: Vec<(usize, Member)> = self.members.drain(..).enumerate().collect();
        indexed.sort_by_key(|(i, m)| (m.degree.iter().sum::<u32>(), *i));
        indexed.into_iter().map(|(_, m)| m).collect()
    }
}

struct Entry {
    expr: Cov,
    order: Vec<u32>,
    degree: Vec<u32>,
    born: usize,
    values: Vec<Form<Rational>>,
}

/// All level vectors up to `bound` per group, except the zero vector.
fn level_vectors(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out.into_iter().flat_map(|v: Vec<u32>| (0..=b).map(move |l| [v.clone(), vec![l]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&l| l > 0));
    out
}

fn grow(shapes: &[Shape], lim: Limits) -> Result<Vec<Member>> {
    let samples = samples(shapes);
    let mut pool: Vec<Entry> = shapes
        .iter()
        .enumerate()
        .map(|(slot, s)| {
            let mut degree = vec![0; shapes.len()];
            degree[slot] = 1;
            let name = if shapes.len() == 1 { "f".to_string() } else { format!("f{}", s.degree[0]) };
            Entry {
                expr: covariant::input(slot, &name),
                order: s.degree.clone(),
                degree,
                born: 0,
                values: samples.iter().map(|inp| inp[slot].clone()).collect(),
            }
        })
        .collect();
    let mut sel = Selector { rows: HashMap::new(), members: Vec::new() };
    for round in 1..=lim.rounds {
        let mut fresh = Vec::new();
        for i in 0..pool.len() {
            for j in i..pool.len() {
                let (a, b) = (&pool[i], &pool[j]);
                if a.born + 1 != round && b.born + 1 != round {
                    continue;
                }
                let degree: Vec<u32> = a.degree.iter().zip(&b.degree).map(|(x, y)| x + y).collect();
                if degree.iter().sum::<u32>() > lim.max_degree {
                    continue;
                }
                let bound: Vec<u32> = a.order.iter().zip(&b.order).map(|(x, y)| *x.min(y)).collect();
                for levels in level_vectors(&bound) {
                    if i == j && levels.iter().sum::<u32>() % 2 == 1 {
                        continue;
                    }
                    let order: Vec<u32> =
                        a.order.iter().zip(&b.order).zip(&levels).map(|((x, y), l)| x + y - 2 * l).collect();
                    if order.iter().any(|&o| o > lim.max_order) {
                        continue;
                    }
                    let invariant = order.iter().all(|&o| o == 0);
                    let first = transvect_levels(&a.values[0], &b.values[0], &levels)?;
                    if first.is_zero() && !invariant {
                        continue;
                    }
                    let mut values = vec![first];
                    for s in 1..SAMPLES {
                        values.push(transvect_levels(&a.values[s], &b.values[s], &levels)?);
                    }
                    let expr = match levels[..] {
                        [l] => covariant::transvect(&a.expr, &b.expr, l),
                        [l, m] => covariant::transvect2(&a.expr, &b.expr, l, m),
                        _ => unreachable!("at most two variable groups"),
                    };
                    if invariant {
                        let scalars = values.iter().map(|v| v.to_scalar().expect("order zero")).collect();
                        sel.offer(expr, degree.clone(), scalars, shapes)?;
                        if sel.members.len() >= lim.target {
                            return Ok(sel.finish());
                        }
                    } else {
                        fresh.push(Entry { expr, order, degree: degree.clone(), born: round, values });
                    }
                }
            }
        }
        fresh.sort_by_key(|e| (e.degree.iter().sum::<u32>(), e.order.iter().sum::<u32>()));
        for e in fresh {
            if pool.len() >= lim.max_pool {
                break;
            }
            let same: Vec<Vec<Rational>> = pool
                .iter()
                .filter(|p| p.order == e.order && p.degree == e.degree)
                .map(|p| p.values[0].coefficients())
                .collect();
            let mut rows = same.clone();
            rows.push(e.values[0].coefficients());
            if Matrix::from_rows(rows).rank() == same.len() + 1 {
                pool.push(e);
            }
        }
    }
    Ok(sel.finish())
}

fn ternary(shapes: &[Shape]) -> Result<Vec<Member>> {
    let cat = catalog::genus3();
    let node = |n: &str| cat.get(n).cloned().expect("catalog node");
    let f = covariant::input(0, "F");
    let covs: Vec<Cov> = vec![f, node("H"), node("C44"), node("C52"), node("C85")];
    let contras: Vec<Cov> = vec![node("sigma"), node("psi"), node("rho"), node("c54"), node("c123")];
    let products = |base: &[Cov]| {
        let mut out: Vec<Cov> = base.to_vec();
        for i in 0..base.len() {
            for j in i..base.len() {
                out.push(if i == j { covariant::power(&base[i], 2) } else { covariant::product(&base[i], &base[j]) });
            }
        }
        out
    };
    let (covs, contras) = (products(&covs), products(&contras));
    let mut cands: Vec<(u32, usize, Cov)> = Vec::new();
    for a in &contras {
        let sa = a.signature(shapes)?;
        for b in &covs {
            let sb = b.signature(shapes)?;
            let deg = sa.degree[0] + sb.degree[0];
            if sa.order == sb.order && deg <= 15 {
                cands.push((deg, cands.len(), covariant::pair(a, b)));
            }
        }
    }
    cands.sort_by_key(|(d, i, _)| (*d, *i));
    let samples = samples(shapes);
    let mut evals: Vec<Evaluator<Rational>> = samples.into_iter().map(Evaluator::new).collect();
    let mut sel = Selector { rows: HashMap::new(), members: Vec::new() };
    for (deg, _, e) in cands {
        let values = evals
            .iter_mut()
            .map(|ev| ev.form(&e).map(|v| v.to_scalar().expect("order zero")))
            .collect::<Result<Vec<_>>>()?;
        sel.offer(e, vec![deg], values, shapes)?;
        if sel.members.len() >= 12 {
            break;
        }
    }
    Ok(sel.finish())
}

/// Invariant values of one input tuple.
#[derive(Clone, PartialEq, Eq)]
pub struct Fingerprint<F: Field> {
    pub battery: String,
    pub entries: Vec<FingerprintEntry<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintEntry<F: Field> {
    pub value: F,
    pub weight: i64,
    pub degree: u32,
}

impl<F: Field> Fingerprint<F> {
    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> Fingerprint<G> {
        Fingerprint {
            battery: self.battery.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| FingerprintEntry { value: f(&e.value), weight: e.weight, degree: e.degree })
                .collect(),
        }
    }
}

impl<F: Field> fmt::Debug for Fingerprint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fingerprint {}", self.battery)?;
        for e in &self.entries {
            writeln!(f, "  w{} d{}: {}", e.weight, e.degree, e.value)?;
        }
        Ok(())
    }
}

/// Evaluates the battery for the shapes of `inputs`.
pub fn fingerprint<F: Field>(inputs: &[Form<F>]) -> Result<Fingerprint<F>> {
    let shapes: Vec<Shape> = inputs.iter().map(Shape::of).collect();
    let battery = battery_for(&shapes)?;
    let mut ev = Evaluator::new(inputs.to_vec());
    let entries = battery
        .members
        .iter()
        .map(|m| {
            let v = ev.form(&m.expr)?;
            let value = v.to_scalar().ok_or_else(|| Error::DegreeMismatch(format!("{} is not invariant", m.expr)))?;
            Ok(FingerprintEntry { value, weight: m.weight, degree: m.degree.iter().sum() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fingerprint { battery: battery.id.clone(), entries })
}

/// Result of a weighted-projective comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintMatch<F> {
    pub equal: bool,
    /// `(λ^g, g)` with `g` the gcd of the weights of the nonvanishing
    /// entries, when the comparison succeeded and some entry is nonzero.
    pub scale: Option<(F, i64)>,
}

/// Whether `b = λ^weight · a` entrywise for a single `λ ≠ 0`. The vanishing
/// patterns must agree; `λ^g` is solved from the ratios by a Bézout
/// combination of the weights and then checked on every entry.
pub fn fingerprint_match<F: Field>(a: &Fingerprint<F>, b: &Fingerprint<F>) -> Result<FingerprintMatch<F>> {
    if a.battery != b.battery || a.entries.len() != b.entries.len() {
        return Err(Error::BatteryMismatch);
    }
    let mut ratios = Vec::new();
    let mut weights = Vec::new();
    for (x, y) in a.entries.iter().zip(&b.entries) {
        match (x.value.is_zero(), y.value.is_zero()) {
            (true, true) => {}
            (false, false) => {
                ratios.push(y.value.checked_div(&x.value)?);
                weights.push(x.weight);
            }
            _ => return Ok(FingerprintMatch { equal: false, scale: None }),
        }
    }
    if ratios.is_empty() {
        return Ok(FingerprintMatch { equal: true, scale: None });
    }
    let (g, coeffs) = bezout(&weights);
    let mut mu = F::one();
    for (r, &e) in ratios.iter().zip(&coeffs) {
        mu *= &r.powi(e)?;
    }
    let equal = ratios.iter().zip(&weights).all(|(r, &w)| mu.powi(w / g).is_ok_and(|p| p == *r));
    Ok(FingerprintMatch { equal, scale: equal.then_some((mu, g)) })
}

pub fn fingerprint_equal<F: Field>(a: &Fingerprint<F>, b: &Fingerprint<F>) -> Result<bool> {
    Ok(fingerprint_match(a, b)?.equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;
    use crate::sample::random_unimodular;

    fn b(s: &str) -> Form<Rational> {
        parse_form(s, &Space::binary()).unwrap()
    }

    #[test]
    fn battery_sizes() {
        for (shapes, lo) in [
            (vec![Shape { space: Space::binary(), degree: vec![5] }], 6),
            (vec![Shape { space: Space::binary(), degree: vec![6] }], 8),
            (
                vec![Shape { space: Space::binary(), degree: vec![6] }, Shape { space: Space::binary(), degree: vec![4] }],
                8,
            ),
        ] {
            let bat = battery_for(&shapes).unwrap();
            assert!(bat.members.len() >= lo && bat.members.len() <= 15, "{}: {:#?}", bat.id, bat.describe());
        }
    }

    #[test]
    fn sextic_battery_starts_with_the_quadratic_invariant() {
        let bat = battery_for(&[Shape { space: Space::binary(), degree: vec![6] }]).unwrap();
        assert_eq!(bat.members[0].expr.to_string(), "(f,f)_6");
        assert_eq!(bat.members[0].weight, 6);
    }

    #[test]
    fn homogeneity() {
        let f = b("3*x0^6-x0^5*x1+2*x0^3*x1^3-7*x0*x1^5+x1^6");
        let fp = fingerprint(&[f.clone()]).unwrap();
        let fp2 = fingerprint(&[f.scale(&Rational::from_i64(2))]).unwrap();
        for (x, y) in fp.entries.iter().zip(&fp2.entries) {
            assert_eq!(y.value, x.value.clone() * &Rational::from_i64(2).pow(x.degree as u64));
        }
        assert!(fingerprint_equal(&fp, &fp2).unwrap());
    }

    #[test]
    fn unimodular_invariance_and_diagonal_equivalence() {
        let f = b("x0^5-2*x0^4*x1+3*x0^2*x1^3+x0*x1^4-5*x1^5");
        let fp = fingerprint(&[f.clone()]).unwrap();
        let a = random_unimodular(2, 3, &mut rng(4));
        assert_eq!(fingerprint(&[f.transform(&a.to_rows())]).unwrap(), fp);
        let d = vec![
            vec![Rational::from_i64(2), Rational::from_i64(0)],
            vec![Rational::from_i64(0), Rational::new_i64(1, 2)],
        ];
        let m = fingerprint_match(&fp, &fingerprint(&[f.transform(&d)]).unwrap()).unwrap();
        assert!(m.equal);
        let g = f.add(&b("x0^5")).unwrap();
        assert!(!fingerprint_equal(&fp, &fingerprint(&[g]).unwrap()).unwrap());
    }

    #[test]
    fn general_linear_change_scales_by_determinant_powers() {
        let f = b("2*x0^6+x0^4*x1^2-x0^3*x1^3+4*x0*x1^5-x1^6");
        let a = vec![vec![Rational::from_i64(1), Rational::from_i64(2)], vec![Rational::from_i64(-1), Rational::from_i64(3)]];
        let m = fingerprint_match(&fingerprint(&[f.clone()]).unwrap(), &fingerprint(&[f.transform(&a)]).unwrap()).unwrap();
        assert!(m.equal);
        let (mu, g) = m.scale.unwrap();
        assert_eq!(mu, Rational::from_i64(5).pow(g as u64));
    }

    #[test]
    fn bicubic_invariance_under_both_factors() {
        let space = Space::double_binary();
        let f = random_form(&space, &[3, 3], 4, &mut rng(11));
        let (a, c) = (random_unimodular(2, 2, &mut rng(1)), random_unimodular(2, 2, &mut rng(2)));
        let z = Rational::from_i64(0);
        let mut t = vec![vec![z.clone(); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                t[i][j] = a.get(i, j).clone();
                t[i + 2][j + 2] = c.get(i, j).clone();
            }
        }
        let fp = fingerprint(&[f.clone()]).unwrap();
        assert_eq!(fp.entries.len(), 10);
        assert_eq!(fingerprint(&[f.transform(&t)]).unwrap(), fp);
    }

    #[test]
    fn mismatched_batteries() {
        let f5 = fingerprint(&[b("x0^5+x1^5+x0*x1^4")]).unwrap();
        let f6 = fingerprint(&[b("x0^6+x1^6")]).unwrap();
        assert_eq!(fingerprint_equal(&f5, &f6), Err(Error::BatteryMismatch));
        assert!(matches!(battery_id(&[Shape { space: Space::primal(3), degree: vec![3] }]), Err(Error::BatteryUndefined(_))));
    }
}
