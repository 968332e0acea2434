//! End-to-end reconstruction pipelines and their certificates.

mod binary;
pub mod fingerprint;
mod genus3;
mod genus4;

use std::fmt;

pub use binary::{reconstruct_binary_even, reconstruct_binary_odd, reconstruct_genus4_rank3, reconstruct_sum_6_4};
pub use fingerprint::{
    battery_for, battery_id, fingerprint, fingerprint_equal, fingerprint_match, Battery, Fingerprint,
    FingerprintEntry, FingerprintMatch, Member,
};
pub use genus3::{genus3_lift, reconstruct_genus3};
pub use genus4::{genus4_bicubic, genus4_outputs, reconstruct_genus4_rank4, swap_rulings};

use crate::covariant::{evaluate_family, independence_at, Catalog, SearchBounds};
use crate::error::{Error, Result};
use crate::field::{Biquad, ExtensionRecord, Field, Quad, QuadExt, Rational};
use crate::poly::{Form, Space};
use crate::recon::DEFAULT_HEIGHT_BOUND;

/// A form over one of the fields a reconstruction can land in.
#[derive(Clone, PartialEq, Eq)]
pub enum AnyForm {
    Rational(Form<Rational>),
    Quad(Form<Quad>),
    Biquad(Form<Biquad>),
}

/// Fields whose forms can be wrapped in [`AnyForm`].
pub trait Embed: Field {
    fn wrap(f: Form<Self>) -> AnyForm;
}

impl Embed for Rational {
    fn wrap(f: Form<Self>) -> AnyForm {
        AnyForm::Rational(f)
    }
}

impl Embed for Quad {
    fn wrap(f: Form<Self>) -> AnyForm {
        AnyForm::Quad(f)
    }
}

impl Embed for Biquad {
    fn wrap(f: Form<Self>) -> AnyForm {
        AnyForm::Biquad(f)
    }
}

impl AnyForm {
    pub fn as_rational(&self) -> Option<&Form<Rational>> {
        match self {
            AnyForm::Rational(f) => Some(f),
            _ => None,
        }
    }

    pub fn space(&self) -> &Space {
        match self {
            AnyForm::Rational(f) => f.space(),
            AnyForm::Quad(f) => f.space(),
            AnyForm::Biquad(f) => f.space(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnyForm::Rational(f) => f.is_zero(),
            AnyForm::Quad(f) => f.is_zero(),
            AnyForm::Biquad(f) => f.is_zero(),
        }
    }

    /// `λ` with `self = λ·reference`, printed, when such a scalar exists.
    pub fn scale_from(&self, reference: &Form<Rational>) -> Option<String> {
        match self {
            AnyForm::Rational(f) => reference.ratio_to(f).map(|l| l.to_string()),
            AnyForm::Quad(f) => reference.convert(|c| Quad::from_base(c.clone())).ratio_to(f).map(|l| l.to_string()),
            AnyForm::Biquad(f) => reference
                .convert(|c| Biquad::from_base(Quad::from_base(c.clone())))
                .ratio_to(f)
                .map(|l| l.to_string()),
        }
    }

    /// `Q`, `Q(sqrt(m))` or `Q(sqrt(m))(sqrt(n))`, read off the coefficients.
    pub fn field_name(&self) -> String {
        match self {
            AnyForm::Rational(_) => "Q".into(),
            AnyForm::Quad(f) => match quad_radicand(f) {
                Some(m) => format!("Q(sqrt({m}))"),
                None => "Q".into(),
            },
            AnyForm::Biquad(f) => {
                let top = f.coefficients().iter().find_map(|c| c.radicand().cloned());
                let low = f.coefficients().iter().flat_map(|c| [c.a().clone(), c.b().clone()]).find_map(|c| c.radicand().cloned());
                let low = low.or_else(|| top.as_ref().and_then(|t| t.radicand().cloned()));
                match (low, top) {
                    (Some(l), Some(t)) => format!("Q(sqrt({l}))(sqrt({t}))"),
                    (Some(l), None) => format!("Q(sqrt({l}))"),
                    (None, Some(t)) => format!("Q(sqrt({t}))"),
                    (None, None) => "Q".into(),
                }
            }
        }
    }

    /// Scaled to a primitive vector with positive leading coordinate; a form
    /// over an extension that is proportional to a rational form is brought
    /// down to the rationals first.
    pub fn normalized(&self) -> AnyForm {
        match self {
            AnyForm::Rational(f) => AnyForm::Rational(f.primitive(true).0),
            AnyForm::Quad(f) => match monic(f).and_then(|g| descend(&g)) {
                Some(r) => AnyForm::Rational(r.primitive(true).0),
                None => AnyForm::Quad(f.primitive(true).0),
            },
            AnyForm::Biquad(f) => match monic(f).and_then(|g| descend(&g)) {
                Some(q) => AnyForm::Quad(q).normalized(),
                None => AnyForm::Biquad(f.primitive(true).0),
            },
        }
    }
}

impl fmt::Display for AnyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyForm::Rational(g) => write!(f, "{g}"),
            AnyForm::Quad(g) => write!(f, "{g}"),
            AnyForm::Biquad(g) => write!(f, "{g}"),
        }
    }
}

impl fmt::Debug for AnyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field_name())
    }
}

fn quad_radicand(f: &Form<Quad>) -> Option<Rational> {
    f.coefficients().iter().find_map(|c| c.radicand().cloned())
}

fn monic<F: Field>(f: &Form<F>) -> Option<Form<F>> {
    let lead = f.leading_coeff()?;
    Some(f.scale(&lead.inv().ok()?))
}

fn descend<B: Field>(f: &Form<QuadExt<B>>) -> Option<Form<B>> {
    let coeffs: Option<Vec<B>> = f.coefficients().iter().map(|c| c.to_base()).collect();
    Some(Form::from_coefficients(f.space().clone(), f.degree().to_vec(), &coeffs?))
}

/// Tuning knobs shared by the pipelines.
#[derive(Debug, Clone)]
pub struct Options {
    /// Height bound of the exhaustive conic point search.
    pub height_bound: u64,
    /// Bounds of the order-one covariant search for odd binary forms;
    /// `None` picks bounds from the degree.
    pub search: Option<SearchBounds>,
}

impl Default for Options {
    fn default() -> Self {
        Options { height_bound: DEFAULT_HEIGHT_BOUND, search: None }
    }
}

/// How a reconstruction was checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub method: String,
    pub verified: bool,
    /// The weighted scale `λ^g` and its exponent when fingerprints were
    /// compared.
    pub scale: Option<String>,
}

/// Result of one pipeline run.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub pipeline: &'static str,
    /// Named output forms, normalized unless stated in `steps`.
    pub outputs: Vec<(String, AnyForm)>,
    /// Values of the covariant family at the input.
    pub covariants: Vec<(String, AnyForm)>,
    pub record: ExtensionRecord,
    pub certificate: Certificate,
    /// Ordered `(step, detail)` notes on the choices made.
    pub steps: Vec<(String, String)>,
}

impl Reconstruction {
    pub fn output(&self, name: &str) -> Option<&AnyForm> {
        self.outputs.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn covariant(&self, name: &str) -> Option<&AnyForm> {
        self.covariants.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

pub const NORMALIZATION: &str = "primitive integer coefficients, positive leading coefficient; no minimization";

/// The family of a catalog at the inputs, or `NotIndependentAtF` with the
/// determinant (or rank) witnessing the dependence.
fn evaluate_independent<F: Field>(cat: &Catalog, inputs: &[Form<F>]) -> Result<Vec<Form<F>>> {
    let q = evaluate_family(cat, inputs)?;
    let ind = independence_at(&q);
    if !ind.independent {
        let det = ind.det.map_or_else(|| format!("rank {}", ind.rank), |d| d.to_string());
        return Err(Error::NotIndependentAtF { family: cat.id.clone(), det });
    }
    Ok(q)
}

fn family_values<F: Embed>(cat: &Catalog, q: &[Form<F>]) -> Vec<(String, AnyForm)> {
    cat.family
        .iter()
        .zip(q)
        .map(|(e, v)| (e.name().map_or_else(|| e.to_string(), str::to_string), F::wrap(v.clone())))
        .collect()
}

/// Fingerprint values of forms over any of the supported fields.
enum AnyFingerprint {
    Rational(Fingerprint<Rational>),
    Quad(Fingerprint<Quad>, Option<Rational>),
}

/// `None` when some form needs two square roots.
fn any_fingerprint(forms: &[AnyForm]) -> Result<Option<AnyFingerprint>> {
    let rational: Option<Vec<Form<Rational>>> = forms.iter().map(|f| f.as_rational().cloned()).collect();
    if let Some(r) = rational {
        return Ok(Some(AnyFingerprint::Rational(fingerprint(&r)?)));
    }
    let quad: Option<Vec<Form<Quad>>> = forms
        .iter()
        .map(|f| match f {
            AnyForm::Rational(r) => Some(r.convert(|c| Quad::from_base(c.clone()))),
            AnyForm::Quad(q) => Some(q.clone()),
            AnyForm::Biquad(_) => None,
        })
        .collect();
    let Some(q) = quad else { return Ok(None) };
    let mut radicands: Vec<Rational> = q.iter().filter_map(quad_radicand).collect();
    radicands.dedup();
    if radicands.len() > 1 {
        return Ok(None);
    }
    Ok(Some(AnyFingerprint::Quad(fingerprint(&q)?, radicands.pop())))
}

/// Weighted-projective comparison of the fingerprints of two tuples of
/// forms, each over the rationals or one quadratic field. `Ok(None)` when
/// the two fields cannot be placed in one field of this library.
pub fn compare_fingerprints(a: &[AnyForm], b: &[AnyForm]) -> Result<Option<Certificate>> {
    let lift = |fp: &Fingerprint<Rational>| fp.convert(|c| Quad::from_base(c.clone()));
    let cert = |m: FingerprintMatch<String>| Certificate {
        method: "fingerprint".into(),
        verified: m.equal,
        scale: m.scale.map(|(s, g)| format!("lambda^{g} = {s}")),
    };
    let text = |m: FingerprintMatch<Quad>| FingerprintMatch { equal: m.equal, scale: m.scale.map(|(s, g)| (s.to_string(), g)) };
    let (Some(fa), Some(fb)) = (any_fingerprint(a)?, any_fingerprint(b)?) else {
        return Ok(None);
    };
    let out = match (fa, fb) {
        (AnyFingerprint::Rational(x), AnyFingerprint::Rational(y)) => {
            let m = fingerprint_match(&x, &y)?;
            cert(FingerprintMatch { equal: m.equal, scale: m.scale.map(|(s, g)| (s.to_string(), g)) })
        }
        (AnyFingerprint::Rational(x), AnyFingerprint::Quad(y, _)) => cert(text(fingerprint_match(&lift(&x), &y)?)),
        (AnyFingerprint::Quad(x, _), AnyFingerprint::Rational(y)) => cert(text(fingerprint_match(&x, &lift(&y))?)),
        (AnyFingerprint::Quad(x, mx), AnyFingerprint::Quad(y, my)) => {
            if mx.is_some() && my.is_some() && mx != my {
                return Ok(None);
            }
            cert(text(fingerprint_match(&x, &y)?))
        }
    };
    Ok(Some(out))
}

/// Fingerprint certificate of a reconstruction from rational input.
fn certify(input: &[Form<Rational>], output: &[AnyForm]) -> Result<Certificate> {
    let input: Vec<AnyForm> = input.iter().cloned().map(AnyForm::Rational).collect();
    compare_fingerprints(&input, output)?.ok_or(Error::MixedField)
}
