//! Canonical genus-4 curves on a rank-4 quadric.

use super::binary::gram_quadric;
use super::{compare_fingerprints, evaluate_independent, family_values, AnyForm, Certificate, Embed, Options, Reconstruction, NORMALIZATION};
use crate::covariant::catalog;
use crate::error::{Error, Result};
use crate::field::{Biquad, Field, Quad, Rational};
use crate::linalg::Matrix;
use crate::poly::{segre_pullback, Form, Space};
use crate::recon::{quadric_normal_form, transvectant_lift, NormalForm};
use crate::transvectant::transvect_levels;

/// The values of the four bi-(1,1) covariants at a bicubic `f`, each scaled
/// to a primitive vector keeping its sign, the quadric
/// `Σ (qᵢ, qⱼ)_{1,1} XᵢXⱼ` and the cubic `Σ (qᵢqⱼqₗ, f)_{3,3} XᵢXⱼXₗ`.
pub fn genus4_outputs<F: Field>(f: &Form<F>) -> Result<(Vec<Form<F>>, Form<F>, Form<F>)> {
    if *f.space() != Space::double_binary() || f.degree() != [3, 3] {
        return Err(Error::DegreeMismatch(format!("expected a bicubic form, got degree {:?}", f.degree())));
    }
    let q: Vec<Form<F>> =
        evaluate_independent(&catalog::genus4(), &[f.clone()])?.iter().map(|c| c.primitive(false).0).collect();
    let quadric = gram_quadric(&q, &[1, 1])?;
    let cubic = transvectant_lift(f, &q)?;
    Ok((q, quadric, cubic))
}

/// `E ∘ T` pulled back along the Segre map.
fn pull<F: Field>(e: &Form<Rational>, t: &Matrix<F>, embed: impl Fn(&Rational) -> F) -> Result<Form<F>> {
    segre_pullback(&e.convert(embed).transform(&t.to_rows()))
}

fn pull_any(e: &Form<Rational>, nf: &NormalForm) -> Result<AnyForm> {
    Ok(match nf {
        NormalForm::Rational { transform, .. } => AnyForm::Rational(pull(e, transform, |c| c.clone())?),
        NormalForm::Quad { transform, .. } => AnyForm::Quad(pull(e, transform, |c| Quad::from_base(c.clone()))?),
        NormalForm::Biquad { transform, .. } => {
            AnyForm::Biquad(pull(e, transform, |c| Biquad::from_base(Quad::from_base(c.clone())))?)
        }
    })
}

/// The bicubic obtained from `E` through the normal form of `Q`.
pub fn genus4_bicubic(q: &Form<Rational>, e: &Form<Rational>) -> Result<AnyForm> {
    let (q, e) = (as_lift4(q, "the quadric", 2)?, as_lift4(e, "the cubic", 3)?);
    pull_any(&e, &quadric_normal_form(&q)?)
}

fn as_lift4(f: &Form<Rational>, what: &str, deg: u32) -> Result<Form<Rational>> {
    if f.space().groups().len() != 1 || f.space().nvars() != 4 || f.degree() != [deg] {
        return Err(Error::DegreeMismatch(format!("{what} must be a form of degree {deg} in 4 variables")));
    }
    f.with_space(Space::lift(4))
}

/// Exchanges the two rulings of a bicubic form.
pub fn swap_rulings(f: &AnyForm) -> AnyForm {
    fn perm<F: Field>() -> Vec<Vec<F>> {
        let (o, z) = (F::one, F::zero);
        vec![vec![z(), z(), o(), z()], vec![z(), z(), z(), o()], vec![o(), z(), z(), z()], vec![z(), o(), z(), z()]]
    }
    match f {
        AnyForm::Rational(g) => AnyForm::Rational(g.transform(&perm())),
        AnyForm::Quad(g) => AnyForm::Quad(g.transform(&perm())),
        AnyForm::Biquad(g) => AnyForm::Biquad(g.transform(&perm())),
    }
}

/// With `q*` the family dual to `q` under `(·,·)_{1,1}`: the quadric
/// vanishes at `q*` and the cubic evaluated at `q*` is a multiple of `f`.
fn dual_identity<F: Field>(f: &Form<F>, q: &[Form<F>], quadric: &Form<F>, cubic: &Form<F>) -> Result<bool> {
    let n = q.len();
    let mut g = Matrix::from_rows(vec![vec![F::zero(); n]; n]);
    for i in 0..n {
        for j in 0..n {
            let v = transvect_levels(&q[i], &q[j], &[1, 1])?.to_scalar().expect("order zero");
            g.set(i, j, v);
        }
    }
    let inv = g.inverse()?;
    let duals = (0..n)
        .map(|j| {
            q.iter().enumerate().try_fold(Form::zero(q[0].space().clone(), q[0].degree().to_vec()), |acc, (l, ql)| {
                acc.add(&ql.scale(inv.get(l, j)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(quadric.substitute(&duals)?.is_zero() && f.ratio_to(&cubic.substitute(&duals)?).is_some())
}

/// `T` with `X = T·y` sending `Σ (qᵢ, qⱼ)_{1,1} XᵢXⱼ` to a multiple of
/// `y0·y3 − y1·y2`: the inverse of the coefficient matrix of the `qᵢ` in the
/// monomials `x0u0, x0u1, x1u0, x1u1`, the order of the Segre map.
fn covariant_coordinates<F: Field>(q: &[Form<F>], quadric: &Form<F>) -> Result<Option<Matrix<F>>> {
    let monomials = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];
    let m = Matrix::from_rows(monomials.iter().map(|e| q.iter().map(|qi| qi.coeff(e)).collect()).collect());
    let t = m.inverse()?;
    let sp = Space::lift(4);
    let normal = Form::monomial(sp.clone(), &[1, 0, 0, 1], F::one()).sub(&Form::monomial(sp.clone(), &[0, 1, 1, 0], F::one()))?;
    let image = quadric.with_space(sp)?.transform(&t.to_rows());
    Ok(normal.ratio_to(&image).map(|_| t))
}

struct Stage {
    bicubic: AnyForm,
    repulled: Option<AnyForm>,
    covariants: Vec<(String, AnyForm)>,
    quadric: AnyForm,
    cubic: AnyForm,
    dual_check: bool,
}

fn stage<F: Embed>(f: Form<F>) -> Result<Stage> {
    let (q, quadric, cubic) = genus4_outputs(&f)?;
    let dual_check = dual_identity(&f, &q, &quadric, &cubic)?;
    let repulled = match covariant_coordinates(&q, &quadric)? {
        Some(t) => Some(F::wrap(segre_pullback(&cubic.with_space(Space::lift(4))?.transform(&t.to_rows()))?)),
        None => None,
    };
    Ok(Stage {
        covariants: family_values(&catalog::genus4(), &q),
        quadric: F::wrap(quadric.with_space(Space::lift(4))?).normalized(),
        cubic: F::wrap(cubic.with_space(Space::lift(4))?).normalized(),
        repulled,
        bicubic: F::wrap(f),
        dual_check,
    })
}

/// Normal form of `Q`, Segre pullback of `E` to a bicubic, then the
/// covariant quadric and cubic of that bicubic. The certificate pulls the
/// output cubic back again, through the normal form of the output quadric
/// given by the covariants themselves, and compares the two bicubics
/// (allowing the rulings to be exchanged). Over a biquadratic tower, where
/// no fingerprint is available, it checks the dual-family identity.
pub fn reconstruct_genus4_rank4(q: &Form<Rational>, e: &Form<Rational>, _opts: &Options) -> Result<Reconstruction> {
    let (q, e) = (as_lift4(q, "the quadric", 2)?, as_lift4(e, "the cubic", 3)?);
    let nf = quadric_normal_form(&q)?;
    let st = match pull_any(&e, &nf)? {
        AnyForm::Rational(f) => stage(f)?,
        AnyForm::Quad(f) => stage(f)?,
        AnyForm::Biquad(f) => stage(f)?,
    };
    let mut certificate = None;
    let candidates = st.repulled.iter().flat_map(|g| [("", g.clone()), (", rulings exchanged", swap_rulings(g))]);
    for (label, g) in candidates {
        match compare_fingerprints(&[st.bicubic.clone()], &[g])? {
            Some(c) if c.verified => {
                certificate = Some(Certificate { method: format!("re-pullback, fingerprint{label}"), ..c });
                break;
            }
            Some(c) => certificate = Some(Certificate { method: "re-pullback, fingerprint".into(), ..c }),
            None => {}
        }
    }
    let certificate = certificate
        .unwrap_or(Certificate { method: "dual family identity".into(), verified: st.dual_check, scale: None });
    Ok(Reconstruction {
        pipeline: "genus4",
        outputs: vec![("Q".into(), st.quadric), ("E".into(), st.cubic)],
        covariants: st.covariants,
        record: nf.record(),
        certificate,
        steps: vec![
            ("normal form".to_string(), format!("{} over {}", nf.method().name(), st.bicubic.field_name())),
            ("bicubic".into(), st.bicubic.to_string()),
            ("family".into(), "genus4".into()),
            ("re-pullback".into(), st.repulled.as_ref().map_or("unavailable".into(), |g| g.to_string())),
            ("normalization".into(), NORMALIZATION.into()),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;

    fn x(s: &str) -> Form<Rational> {
        parse_form(s, &Space::lift(4)).unwrap()
    }

    #[test]
    fn dual_identity_holds_on_a_random_bicubic() {
        let f = crate::sample::random_form(&Space::double_binary(), &[3, 3], 5, &mut crate::sample::rng(21));
        let (q, quadric, cubic) = genus4_outputs(&f).unwrap();
        assert!(dual_identity(&f, &q, &quadric, &cubic).unwrap());
    }

    #[test]
    fn rank3_quadric_is_routed_away() {
        let e = x("X0^3+X1^3+X2^3+X3^3");
        let r = reconstruct_genus4_rank4(&x("X0^2+X1^2-X2^2"), &e, &Options::default());
        assert_eq!(r.unwrap_err(), Error::WrongRank(3));
    }

    #[test]
    fn hyperbolic_quadric_round_trip() {
        let e = x("X0^3+2*X0*X1*X2-X1^2*X3+3*X2^3-X0*X3^2+X1*X2*X3+X3^3+2*X1^3-X0^2*X2");
        let r = reconstruct_genus4_rank4(&x("X0*X3-X1*X2"), &e, &Options::default()).unwrap();
        assert!(r.certificate.verified, "{r:?}");
    }
}
