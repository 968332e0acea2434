//! Binary forms, pairs of binary forms and the rank-3 genus-4 model.

use super::{certify, evaluate_independent, family_values, AnyForm, Certificate, Options, Reconstruction, NORMALIZATION};
use crate::covariant::{catalog, search_order1_binary, SearchBounds};
use crate::error::{Error, Result};
use crate::field::{ExtensionRecord, Field, Quad, Rational};
use crate::poly::{Form, Space};
use crate::recon::{lift_as_form, parametrize_conic, quadric_from_matrix, transvectant_lift, ConicParametrization};
use crate::transvectant::transvect_levels;
use crate::Matrix;

fn binary_degree(f: &Form<Rational>) -> Result<u32> {
    if *f.space() != Space::binary() {
        return Err(Error::SpaceMismatch(format!("expected a binary form in x0, x1, got {}", f.space().describe())));
    }
    Ok(f.total_degree())
}

/// `Σ (qᵢ, qⱼ)_levels Xᵢ Xⱼ` for a family of covariants of equal order.
pub(super) fn gram_quadric<F: Field>(q: &[Form<F>], levels: &[u32]) -> Result<Form<F>> {
    let n = q.len();
    let mut g = Matrix::from_rows(vec![vec![F::zero(); n]; n]);
    for i in 0..n {
        for j in i..n {
            let v = transvect_levels(&q[i], &q[j], levels)?
                .to_scalar()
                .ok_or_else(|| Error::DegreeMismatch("family members of different orders".into()))?;
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    Ok(quadric_from_matrix(&g, &Space::lift(n)))
}

/// Odd degree `k ≥ 5`: two order-one covariants from the search, then
/// `Σ C(k,i)·(q₀ⁱq₁^{k−i}, f)_k·X₀ⁱX₁^{k−i}` read back in `x0, x1`.
pub fn reconstruct_binary_odd(f: &Form<Rational>, opts: &Options) -> Result<Reconstruction> {
    let k = binary_degree(f)?;
    let bounds = opts.search.clone().unwrap_or_else(|| SearchBounds::for_degree(k));
    let found = search_order1_binary(f, &bounds).map_err(|e| match e {
        Error::NotIndependent | Error::SearchExhausted(_) => {
            Error::NotIndependentAtF { family: format!("binary{k} order-one search"), det: "0".into() }
        }
        e => e,
    })?;
    let q: Vec<Form<Rational>> = found.chosen.iter().map(|c| c.value.clone()).collect();
    let lift = transvectant_lift(f, &q)?;
    let out = AnyForm::Rational(lift_as_form(&lift, &Space::binary())?).normalized();
    let certificate = certify(&[f.clone()], &[out.clone()])?;
    let covariants = found
        .chosen
        .iter()
        .enumerate()
        .map(|(i, c)| (format!("q{i}"), AnyForm::Rational(c.value.clone())))
        .collect();
    let steps = vec![
        ("family".into(), found.chosen.iter().map(|c| c.expr.to_string()).collect::<Vec<_>>().join("; ")),
        ("search".into(), format!("{} order-one candidates met", found.candidates)),
        ("normalization".into(), NORMALIZATION.into()),
    ];
    Ok(Reconstruction {
        pipeline: "binary-odd",
        outputs: vec![("f".into(), out)],
        covariants,
        record: ExtensionRecord::new(),
        certificate,
        steps,
    })
}

/// Pulls lifts in `X0..X2` back along a parametrization of the conic.
struct ConicStage {
    conic: Form<Rational>,
    images: Vec<AnyForm>,
    pulled: Vec<AnyForm>,
    record: ExtensionRecord,
    method: &'static str,
}

fn conic_stage(lifts: &[Form<Rational>], q: &[Form<Rational>], opts: &Options) -> Result<ConicStage> {
    let conic = gram_quadric(q, &[2])?.primitive(true).0;
    let param = parametrize_conic(&conic, opts.height_bound)?;
    let method = param.method().name();
    let record = param.record();
    let (images, pulled) = match &param {
        ConicParametrization::Rational { images, .. } => (
            images.iter().cloned().map(AnyForm::Rational).collect(),
            lifts.iter().map(|l| l.substitute(images).map(AnyForm::Rational)).collect::<Result<Vec<_>>>()?,
        ),
        ConicParametrization::Extended { images, .. } => (
            images.iter().cloned().map(AnyForm::Quad).collect(),
            lifts
                .iter()
                .map(|l| l.convert(|c| Quad::from_base(c.clone())).substitute(images).map(AnyForm::Quad))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(ConicStage { conic, images, pulled, record, method })
}

/// Even degree `k ≥ 6`: three order-two covariants, the conic
/// `Σ (qᵢ, qⱼ)₂ XᵢXⱼ` and the lift `Σ (qᵢ₁⋯q_{i_{k/2}}, f)_k X…`, pulled back
/// along a parametrization of the conic. Each covariant is first scaled to a
/// primitive vector keeping its sign.
pub fn reconstruct_binary_even(f: &Form<Rational>, opts: &Options) -> Result<Reconstruction> {
    let k = binary_degree(f)?;
    if k < 6 || k % 2 == 1 {
        return Err(Error::DegreeMismatch(format!("expected an even degree at least 6, got {k}")));
    }
    let cat = catalog::binary_even(k);
    let q: Vec<Form<Rational>> =
        evaluate_independent(&cat, &[f.clone()])?.iter().map(|c| c.primitive(false).0).collect();
    let lift = transvectant_lift(f, &q)?;
    let stage = conic_stage(&[lift], &q, opts)?;
    let out = stage.pulled[0].normalized();
    let certificate = certify(&[f.clone()], &[out.clone()])?;
    Ok(Reconstruction {
        pipeline: "binary-even",
        outputs: vec![("f".into(), out), ("conic".into(), AnyForm::Rational(stage.conic.clone()))],
        covariants: family_values(&cat, &q),
        record: stage.record,
        certificate,
        steps: vec![
            ("family".into(), cat.id.clone()),
            ("conic point".into(), stage.method.into()),
            ("parametrization".into(), join(&stage.images)),
            ("normalization".into(), NORMALIZATION.into()),
        ],
    })
}

fn join(forms: &[AnyForm]) -> String {
    forms.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

/// Lifts of `f6` and `f4` divided by 8100 and 36, the squares of the lift
/// constants, so that the pair keeps its weighted scaling.
struct PairLifts {
    q: Vec<Form<Rational>>,
    f6: Form<Rational>,
    f4: Form<Rational>,
}

fn pair_lifts(f6: &Form<Rational>, f4: &Form<Rational>) -> Result<PairLifts> {
    if binary_degree(f6)? != 6 || binary_degree(f4)? != 4 {
        return Err(Error::DegreeMismatch("expected a binary sextic and a binary quartic".into()));
    }
    let q = evaluate_independent(&catalog::sum64(), &[f6.clone(), f4.clone()])?;
    let l6 = transvectant_lift(f6, &q)?.scale(&Rational::new_i64(1, 8100));
    let l4 = transvectant_lift(f4, &q)?.scale(&Rational::new_i64(1, 36));
    Ok(PairLifts { q, f6: l6, f4: l4 })
}

const PAIR_SCALING: &str = "lifts divided by 8100 and 36; pair not normalized separately";

/// A sextic and a quartic through one conic and one parametrization.
pub fn reconstruct_sum_6_4(f6: &Form<Rational>, f4: &Form<Rational>, opts: &Options) -> Result<Reconstruction> {
    let lifts = pair_lifts(f6, f4)?;
    let stage = conic_stage(&[lifts.f6.clone(), lifts.f4.clone()], &lifts.q, opts)?;
    let certificate = certify(&[f6.clone(), f4.clone()], &stage.pulled)?;
    Ok(Reconstruction {
        pipeline: "sum64",
        outputs: vec![
            ("f6".into(), stage.pulled[0].clone()),
            ("f4".into(), stage.pulled[1].clone()),
            ("conic".into(), AnyForm::Rational(stage.conic.clone())),
        ],
        covariants: family_values(&catalog::sum64(), &lifts.q),
        record: stage.record,
        certificate,
        steps: vec![
            ("family".into(), "sum64".into()),
            ("conic point".into(), stage.method.into()),
            ("parametrization".into(), join(&stage.images)),
            ("normalization".into(), PAIR_SCALING.into()),
        ],
    })
}

/// Re-reads a form in `X0..X2` in the variables `X0..X3`.
fn widen(f: &Form<Rational>) -> Form<Rational> {
    let sp = Space::lift(4);
    f.poly().terms().fold(Form::zero(sp.clone(), f.degree().to_vec()), |acc, (m, c)| {
        let mut e = m.exps(3);
        e.push(0);
        acc.add(&Form::monomial(sp.clone(), &e, c.clone())).expect("same space")
    })
}

/// The coefficient of `X3^j` of a form in `X0..X3`, as a form in `X0..X2`.
fn slice_last(f: &Form<Rational>, j: u32) -> Form<Rational> {
    let sp = Space::lift(3);
    let degree = f.total_degree() - j;
    f.poly().terms().filter(|(m, _)| m.exp(3) == j).fold(Form::zero(sp.clone(), vec![degree]), |acc, (m, c)| {
        acc.add(&Form::monomial(sp.clone(), &m.exps(3), c.clone())).expect("same space")
    })
}

/// The weighted model `w³ + w·f4 + f6` as the conic `Q` in `X0..X2` and the
/// cubic `E = X3³ + X3·f̂4 + f̂6` in `X0..X3`. Certified by pulling the
/// coefficients of `X3⁰` and `X3¹` back along the conic and comparing with
/// `(f6, f4)`.
pub fn reconstruct_genus4_rank3(f6: &Form<Rational>, f4: &Form<Rational>, opts: &Options) -> Result<Reconstruction> {
    let lifts = pair_lifts(f6, f4)?;
    let conic = gram_quadric(&lifts.q, &[2])?.primitive(true).0;
    let x3 = Form::monomial(Space::lift(4), &[0, 0, 0, 1], Rational::from_i64(1));
    let e = x3.pow(3).add(&x3.mul(&widen(&lifts.f4))?)?.add(&widen(&lifts.f6))?;
    let stage = conic_stage(&[slice_last(&e, 0), slice_last(&e, 1)], &lifts.q, opts)?;
    let certificate = certify(&[f6.clone(), f4.clone()], &stage.pulled)?;
    let certificate = Certificate { method: "pullback along the conic, fingerprint".into(), ..certificate };
    Ok(Reconstruction {
        pipeline: "genus4-rank3",
        outputs: vec![("Q".into(), AnyForm::Rational(widen(&conic))), ("E".into(), AnyForm::Rational(e))],
        covariants: family_values(&catalog::sum64(), &lifts.q),
        record: stage.record,
        certificate,
        steps: vec![
            ("family".into(), "sum64".into()),
            ("conic point".into(), stage.method.into()),
            ("parametrization".into(), join(&stage.images)),
            ("normalization".into(), PAIR_SCALING.into()),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariant::evaluate_family;
    use crate::poly::parse_form;
    use crate::recon::{dual_from_pair, pairing_to_dual, quadric_relations};
    use crate::sample::{random_form, rng};
    use crate::transvectant::tau;

    fn b(s: &str) -> Form<Rational> {
        parse_form(s, &Space::binary()).unwrap()
    }

    #[test]
    fn gram_conic_is_the_relation_of_the_dual_family() {
        let f = random_form(&Space::binary(), &[6], 9, &mut rng(3));
        let q = evaluate_family(&catalog::binary_even(6), &[f]).unwrap();
        let p: Vec<_> = q.iter().map(|x| tau(x).unwrap()).collect();
        let (duals, m) = dual_from_pair(&p, &q).unwrap();
        let rel = quadric_relations(&p, &q).unwrap();
        assert_eq!(rel.len(), 1);
        let expected = pairing_to_dual(&rel[0], &m);
        let gram = gram_quadric(&q, &[2]).unwrap();
        assert!(gram.ratio_to(&expected).is_some());
        assert!(gram.substitute(&duals).unwrap().is_zero());
    }

    #[test]
    fn conic_matrix_is_symmetric() {
        let f = random_form(&Space::binary(), &[8], 5, &mut rng(8));
        let q = evaluate_family(&catalog::binary_even(8), &[f]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    transvect_levels(&q[i], &q[j], &[2]).unwrap(),
                    transvect_levels(&q[j], &q[i], &[2]).unwrap()
                );
            }
        }
    }

    #[test]
    fn odd_round_trip() {
        let f = b("x0^5-3*x0^4*x1+2*x0^3*x1^2+7*x0*x1^4-x1^5");
        let r = reconstruct_binary_odd(&f, &Options::default()).unwrap();
        assert!(r.certificate.verified);
        assert!(r.record.is_empty());
        assert!(r.output("f").unwrap().as_rational().is_some());
    }

    #[test]
    fn unstable_quintic_fails() {
        let e = reconstruct_binary_odd(&b("x0^5"), &Options::default()).unwrap_err();
        assert!(matches!(e, Error::NotIndependentAtF { .. }), "{e:?}");
    }

    #[test]
    fn even_round_trip() {
        let f = b("x0^6+2*x0^5*x1-x0^4*x1^2+3*x0^3*x1^3-5*x0*x1^5+x1^6");
        let r = reconstruct_binary_even(&f, &Options::default()).unwrap();
        assert!(r.certificate.verified, "{r:?}");
    }

    #[test]
    fn pair_round_trip_and_degenerate_quartic() {
        let f6 = b("x0^6-x0^4*x1^2+2*x0^3*x1^3+x0*x1^5+3*x1^6");
        let f4 = b("x0^4+x0^3*x1-2*x0*x1^3+x1^4");
        let r = reconstruct_sum_6_4(&f6, &f4, &Options::default()).unwrap();
        assert!(r.certificate.verified, "{r:?}");
        let zero = Form::zero(Space::binary(), vec![4]);
        assert!(matches!(reconstruct_sum_6_4(&f6, &zero, &Options::default()), Err(Error::NotIndependentAtF { .. })));
    }

    #[test]
    fn rank3_model_shape() {
        let f6 = b("x0^6-x0^4*x1^2+2*x0^3*x1^3+x0*x1^5+3*x1^6");
        let f4 = b("x0^4+x0^3*x1-2*x0*x1^3+x1^4");
        let r = reconstruct_genus4_rank3(&f6, &f4, &Options::default()).unwrap();
        assert!(r.certificate.verified);
        let e = r.output("E").unwrap().as_rational().unwrap();
        assert_eq!(e.coeff(&[0, 0, 0, 3]), Rational::from_i64(1));
        assert_eq!(e.coeff(&[0, 0, 1, 2]), Rational::from_i64(0));
        let q = r.output("Q").unwrap().as_rational().unwrap();
        assert!(q.poly().terms().all(|(m, _)| m.exp(3) == 0));
    }

    #[test]
    fn pair_and_even_paths_share_the_conic_code() {
        let f = b("x0^6+2*x0^5*x1-x0^4*x1^2+3*x0^3*x1^3-5*x0*x1^5+x1^6");
        let q = evaluate_family(&catalog::binary_even(6), &[f.clone()]).unwrap();
        let lift = transvectant_lift(&f, &q).unwrap();
        let stage = conic_stage(&[lift.clone(), lift], &q, &Options::default()).unwrap();
        assert_eq!(stage.pulled[0], stage.pulled[1]);
    }
}
