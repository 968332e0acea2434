//! Seeded self-check suites over the core identities, shared by the command
//! line self-test and the acceptance tests.

use rand::Rng;

use crate::covariant::{catalog, evaluate_family};
use crate::error::Result;
use crate::field::{Field, Rational};
use crate::poly::combinatorics::{binomial, multinomial_check};
use crate::poly::{apolar_pair, Form, Space};
use crate::recon::{
    canonical_dual_basis, conic, dual_basis, parametrize_conic, quadric_relations, taylor_identity_check,
    ConicParametrization,
};
use crate::sample::{random_form, random_unimodular, SampleRng};
use crate::transvectant::{tau, tau2, transvect, transvect2};

/// `(n, d, k)`: forms of degree `k·d` in `n + 1` variables expanded over a
/// basis of degree `d`.
pub const TAYLOR_CONFIGS: [(u32, u32, u32); 6] = [(1, 1, 5), (1, 2, 3), (1, 2, 4), (2, 1, 4), (2, 2, 2), (3, 1, 3)];

/// Extra configurations beyond `k·d = 8`.
pub const TAYLOR_CONFIGS_LARGE: [(u32, u32, u32); 2] = [(1, 2, 5), (1, 3, 3)];

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: Result<bool>, label: impl FnOnce() -> String) {
        self.cases += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => self.failures.push(label()),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn space(n: u32) -> Space {
    if n == 1 {
        Space::binary()
    } else {
        Space::primal(n as usize + 1)
    }
}

/// The multinomial convolution identity for every `k·d ≤ max_kd`,
/// `0 ≤ n ≤ max_n`.
pub fn multinomial_suite(max_kd: u32, max_n: u32) -> SuiteReport {
    let mut report = SuiteReport::new("multinomial identity");
    for n in 0..=max_n {
        for d in 1..=max_kd {
            for k in 1..=max_kd / d {
                report.record(Ok(multinomial_check(k, d, n)), || format!("k={k} d={d} n={n}"));
            }
        }
    }
    report
}

/// A random basis of the forms of degree `d`, redrawn until independent.
fn random_basis(sp: &Space, d: u32, rng: &mut SampleRng) -> Vec<Form<Rational>> {
    let dim = sp.basis(&[d]).len();
    loop {
        let basis: Vec<Form<Rational>> = (0..dim).map(|_| random_form(sp, &[d], 3, rng)).collect();
        if dual_basis(&basis).is_ok() {
            return basis;
        }
    }
}

/// The Taylor identity `Σ D(q*…, f)·q… = ((kd)!/d!^k)·f` on `samples`
/// random forms per configuration, each against a fresh random basis.
pub fn taylor_suite(configs: &[(u32, u32, u32)], samples: usize, rng: &mut SampleRng) -> SuiteReport {
    let mut report = SuiteReport::new("Taylor identity");
    for &(n, d, k) in configs {
        let sp = space(n);
        for i in 0..samples {
            let f = random_form(&sp, &[k * d], 20, rng);
            let basis = random_basis(&sp, d, rng);
            report.record(taylor_identity_check(&f, &basis), || format!("(n,d,k)=({n},{d},{k}) sample {i}"));
        }
    }
    report
}

/// `D(τ(C), C′) = (C, C′)` at full level on random binary pairs of degrees
/// at most 6 and double-binary pairs of bidegree at most (3, 3).
pub fn bridge_suite(binary: usize, double: usize, rng: &mut SampleRng) -> SuiteReport {
    let mut report = SuiteReport::new("tau bridge");
    for i in 0..binary {
        let s = rng.gen_range(0..=6u32);
        let r = rng.gen_range(0..=s);
        let c = random_form(&Space::binary(), &[r], 20, rng);
        let c2 = random_form(&Space::binary(), &[s], 20, rng);
        let ok = tau(&c).and_then(|t| Ok(apolar_pair(&t, &c2)? == transvect(&c, &c2, r)?));
        report.record(ok, || format!("binary pair {i}, degrees ({r}, {s})"));
    }
    for i in 0..double {
        let (s1, s2) = (rng.gen_range(0..=3u32), rng.gen_range(0..=3u32));
        let (r1, r2) = (rng.gen_range(0..=s1), rng.gen_range(0..=s2));
        let c = random_form(&Space::double_binary(), &[r1, r2], 20, rng);
        let c2 = random_form(&Space::double_binary(), &[s1, s2], 20, rng);
        let ok = tau2(&c).and_then(|t| Ok(apolar_pair(&t, &c2)? == transvect2(&c, &c2, r1, r2)?));
        report.record(ok, || format!("double pair {i}, bidegrees ({r1},{r2}), ({s1},{s2})"));
    }
    report
}

/// Under a unimodular change `A`, transvectants and the even-sextic
/// covariant family commute with `A`.
pub fn equivariance_suite(samples: usize, rng: &mut SampleRng) -> SuiteReport {
    let mut report = SuiteReport::new("equivariance");
    let family = catalog::binary_even(6);
    for i in 0..samples {
        let a = random_unimodular(2, 3, rng).to_rows();
        let f = random_form(&Space::binary(), &[6], 9, rng);
        let g = random_form(&Space::binary(), &[4], 9, rng);
        let l = rng.gen_range(0..=4u32);
        let ok = transvect(&f, &g, l)
            .and_then(|h| Ok(transvect(&f.transform(&a), &g.transform(&a), l)? == h.transform(&a)));
        report.record(ok, || format!("transvectant sample {i}, level {l}"));
        let ok = evaluate_family(&family, &[f.clone()]).and_then(|before| {
            let after = evaluate_family(&family, &[f.transform(&a)])?;
            Ok(before.iter().zip(&after).all(|(b, c)| b.transform(&a) == *c))
        });
        report.record(ok, || format!("sextic family sample {i}"));
    }
    report
}

/// Independent quadratic relations among the monomials of degree `d`
/// against `dim Sym²(Sym^d) − dim Sym^{2d}`.
pub fn dimension_law_suite() -> SuiteReport {
    let mut report = SuiteReport::new("dimension law");
    let configs: [(Space, Vec<u32>); 4] = [
        (Space::binary(), vec![2]),
        (Space::binary(), vec![3]),
        (Space::primal(3), vec![2]),
        (Space::double_binary(), vec![1, 1]),
    ];
    for (sp, degree) in configs {
        let q: Vec<Form<Rational>> = sp
            .basis(&degree)
            .into_iter()
            .map(|m| Form::monomial(sp.clone(), &m.exps(sp.nvars()), Rational::one()))
            .collect();
        let p = canonical_dual_basis::<Rational>(&sp, &degree);
        let n = q.len() as u32;
        let doubled: Vec<u32> = degree.iter().map(|d| 2 * d).collect();
        let expected = binomial(n + 1, 2) - num_bigint::BigInt::from(sp.basis(&doubled).len());
        let ok = quadric_relations(&p, &q).map(|r| num_bigint::BigInt::from(r.len()) == expected);
        report.record(ok, || format!("{} degree {degree:?}", sp.describe()));
    }
    report
}

/// Whether the conic has a nonzero integer point with coordinates in
/// `[−h, h]`.
fn has_small_point(q: &Form<Rational>, h: i64) -> bool {
    let terms: Vec<(Vec<u32>, i64)> = q
        .space()
        .basis(&[2])
        .into_iter()
        .map(|m| {
            let e = m.exps(3);
            let c = q.coeff(&e);
            (e, c.numer().try_into().expect("small integer conic"))
        })
        .collect();
    let r = -h..=h;
    r.clone().any(|x| {
        r.clone().any(|y| {
            r.clone().any(|z| {
                let v = [x, y, z];
                v != [0, 0, 0]
                    && terms.iter().map(|(e, c)| c * (0..3).map(|i| v[i].pow(e[i])).product::<i64>()).sum::<i64>() == 0
            })
        })
    })
}

/// Random nondegenerate conics with integer coefficients: the
/// parametrization substituted into the conic vanishes, and an extension is
/// used only for conics with no point of small height.
pub fn conic_suite(count: usize, height_bound: u64, rng: &mut SampleRng) -> SuiteReport {
    let mut report = SuiteReport::new("conic parametrization");
    let sp = Space::lift(3);
    let mut done = 0;
    while done < count {
        let bound = if done % 2 == 0 { 3 } else { 30 };
        let q = random_form(&sp, &[2], bound, rng);
        let param = match parametrize_conic(&q, height_bound) {
            Err(crate::error::Error::DegenerateConic) => continue,
            other => other,
        };
        done += 1;
        let ok = param.and_then(|p| {
            Ok(match &p {
                ConicParametrization::Rational { images, .. } => conic::substitute_rational(&q, images)?.is_zero(),
                ConicParametrization::Extended { images, .. } => {
                    conic::substitute_quad(&q, images)?.is_zero() && !has_small_point(&q, 12)
                }
            })
        });
        report.record(ok, || format!("conic {q}"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::rng;

    #[test]
    fn suites_pass_on_small_runs() {
        let mut r = rng(0);
        for report in [
            multinomial_suite(6, 2),
            taylor_suite(&TAYLOR_CONFIGS[..3], 2, &mut r),
            bridge_suite(5, 3, &mut r),
            equivariance_suite(2, &mut r),
            dimension_law_suite(),
            conic_suite(4, 100, &mut r),
        ] {
            assert!(report.passed(), "{report:?}");
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn failures_are_collected() {
        let mut report = SuiteReport::new("t");
        report.record(Ok(false), || "case".into());
        report.record(Err(crate::error::Error::Singular), || "err".into());
        assert_eq!(report.cases, 2);
        assert_eq!(report.failures, vec!["case".to_string(), "err: matrix is singular".to_string()]);
    }
}
