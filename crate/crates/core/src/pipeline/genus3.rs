//! Plane quartics through three order-one contravariants.

use super::{certify, evaluate_independent, family_values, AnyForm, Options, Reconstruction, NORMALIZATION};
use crate::covariant::catalog;
use crate::error::{Error, Result};
use crate::field::{ExtensionRecord, Rational};
use crate::poly::{Form, Space};
use crate::recon::{build_lift, lift_as_form};

fn check_quartic(f: &Form<Rational>) -> Result<()> {
    if *f.space() != Space::primal(3) || f.degree() != [4] {
        return Err(Error::DegreeMismatch(format!(
            "expected a ternary quartic in x0, x1, x2, got degree {:?} over {}",
            f.degree(),
            f.space().describe()
        )));
    }
    Ok(())
}

/// `Σ D(pᵢ₁⋯pᵢ₄, F)·xᵢ₁⋯xᵢ₄` for three linear forms `p` in `w0, w1, w2`,
/// unnormalized.
pub fn genus3_lift(f: &Form<Rational>, p: &[Form<Rational>]) -> Result<Form<Rational>> {
    check_quartic(f)?;
    lift_as_form(&build_lift(f, p)?, &Space::primal(3))
}

/// The lift along the contravariants `p0, p1, p2`, each scaled to a
/// primitive vector keeping its sign, read directly as a ternary quartic; no
/// parametrization and no extension is involved. Outputs the normalized
/// quartic `F` and the unnormalized `lift`.
pub fn reconstruct_genus3(f: &Form<Rational>, _opts: &Options) -> Result<Reconstruction> {
    check_quartic(f)?;
    let cat = catalog::genus3();
    let p: Vec<Form<Rational>> =
        evaluate_independent(&cat, &[f.clone()])?.iter().map(|c| c.primitive(false).0).collect();
    let lift = genus3_lift(f, &p)?;
    let out = AnyForm::Rational(lift.clone()).normalized();
    let certificate = certify(&[f.clone()], &[out.clone()])?;
    Ok(Reconstruction {
        pipeline: "genus3",
        outputs: vec![("F".into(), out), ("lift".into(), AnyForm::Rational(lift))],
        covariants: family_values(&cat, &p),
        record: ExtensionRecord::new(),
        certificate,
        steps: vec![("family".into(), cat.id.clone()), ("normalization".into(), NORMALIZATION.into())],
    })
}
