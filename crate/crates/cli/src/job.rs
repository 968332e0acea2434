//! The `reconstruct` command: input parsing, routing to a pipeline and
//! assembly of the report.

use std::time::{Duration, Instant};

use apolar_core::covariant::Shape;
use apolar_core::pipeline::{
    battery_id, reconstruct_binary_even, reconstruct_binary_odd, reconstruct_genus3, reconstruct_genus4_rank3,
    reconstruct_genus4_rank4, reconstruct_sum_6_4, AnyForm, Options, Reconstruction,
};
use apolar_core::poly::{parse_form, parse_form_auto, Space};
use apolar_core::{Error, Form, Rational};
use clap::ValueEnum;

use crate::report::{Body, Expectation, Extension, Failure, NamedForm, Outcome, Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    BinaryOdd,
    BinaryEven,
    Sum64,
    Genus3,
    Genus4,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::BinaryOdd => "binary-odd",
            Kind::BinaryEven => "binary-even",
            Kind::Sum64 => "sum64",
            Kind::Genus3 => "genus3",
            Kind::Genus4 => "genus4",
        }
    }
}

/// Polynomial inputs as given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Inputs {
    pub form: Option<String>,
    pub form6: Option<String>,
    pub form4: Option<String>,
    pub quadric: Option<String>,
    pub cubic: Option<String>,
}

#[derive(Debug, Clone)]
pub struct JobOptions {
    pub seed: u64,
    pub height_bound: u64,
    pub battery: Option<String>,
    pub expect: Vec<String>,
}

/// A resolved job: the pipeline to run on parsed inputs.
enum Route {
    BinaryOdd(Form<Rational>),
    BinaryEven(Form<Rational>),
    Sum64(Form<Rational>, Form<Rational>),
    Genus3(Form<Rational>),
    Rank3(Form<Rational>, Form<Rational>),
    Rank4(Form<Rational>, Form<Rational>),
}

impl Route {
    fn shapes(&self) -> Vec<Shape> {
        match self {
            Route::BinaryOdd(f) | Route::BinaryEven(f) | Route::Genus3(f) => vec![Shape::of(f)],
            Route::Sum64(a, b) | Route::Rank3(a, b) => vec![Shape::of(a), Shape::of(b)],
            Route::Rank4(..) => vec![Shape { space: Space::double_binary(), degree: vec![3, 3] }],
        }
    }

    fn run(&self, opts: &Options) -> apolar_core::Result<Reconstruction> {
        match self {
            Route::BinaryOdd(f) => reconstruct_binary_odd(f, opts),
            Route::BinaryEven(f) => reconstruct_binary_even(f, opts),
            Route::Sum64(a, b) => reconstruct_sum_6_4(a, b, opts),
            Route::Genus3(f) => reconstruct_genus3(f, opts),
            Route::Rank3(a, b) => reconstruct_genus4_rank3(a, b, opts),
            Route::Rank4(q, e) => reconstruct_genus4_rank4(q, e, opts),
        }
    }
}

/// Why a job stopped before producing a reconstruction.
enum Problem {
    Core(Error),
    Usage(String),
}

impl From<Error> for Problem {
    fn from(e: Error) -> Self {
        Problem::Core(e)
    }
}

impl Problem {
    fn verdict(&self) -> Verdict {
        match self {
            Problem::Core(e) if e.is_mathematical() => Verdict::Failed,
            _ => Verdict::InputError,
        }
    }

    fn failure(&self) -> Failure {
        match self {
            Problem::Usage(message) => Failure { kind: "Usage".into(), message: message.clone(), position: None },
            Problem::Core(e) => {
                let debug = format!("{e:?}");
                let kind = debug.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
                let position = match e {
                    Error::Parse { pos, .. } => Some(*pos),
                    _ => None,
                };
                Failure { kind, message: e.to_string(), position }
            }
        }
    }
}

fn parse(flag: &str, text: &str, space: &Space) -> apolar_core::Result<Form<Rational>> {
    parse_form(text, space).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("{flag}: {msg}") },
        other => other,
    })
}

fn route(kind: Kind, inputs: &Inputs) -> Result<Route, Problem> {
    let need = |flag: &str, v: &Option<String>| -> Result<String, Problem> {
        v.clone().ok_or_else(|| Problem::Usage(format!("{} needs --{flag}", kind.name())))
    };
    let binary = Space::binary();
    match kind {
        Kind::BinaryOdd => Ok(Route::BinaryOdd(parse("--form", &need("form", &inputs.form)?, &binary)?)),
        Kind::BinaryEven => Ok(Route::BinaryEven(parse("--form", &need("form", &inputs.form)?, &binary)?)),
        Kind::Sum64 => Ok(Route::Sum64(
            parse("--form6", &need("form6", &inputs.form6)?, &binary)?,
            parse("--form4", &need("form4", &inputs.form4)?, &binary)?,
        )),
        Kind::Genus3 => Ok(Route::Genus3(parse("--form", &need("form", &inputs.form)?, &Space::primal(3))?)),
        Kind::Genus4 if inputs.form6.is_some() || inputs.form4.is_some() => Ok(Route::Rank3(
            parse("--form6", &need("form6", &inputs.form6)?, &binary)?,
            parse("--form4", &need("form4", &inputs.form4)?, &binary)?,
        )),
        Kind::Genus4 => Ok(Route::Rank4(
            parse("--quadric", &need("quadric", &inputs.quadric)?, &Space::lift(4))?,
            parse("--cubic", &need("cubic", &inputs.cubic)?, &Space::lift(4))?,
        )),
    }
}

fn named(items: &[(String, AnyForm)]) -> Vec<NamedForm> {
    items.iter().map(|(n, f)| NamedForm { name: n.clone(), field: f.field_name(), form: f.to_string() }).collect()
}

/// The first output, in order, that is a multiple of the expected form.
fn expectation(text: &str, outputs: &[(String, AnyForm)]) -> Expectation {
    let matched = outputs.iter().find_map(|(name, out)| {
        let reference = parse_form(text, out.space()).ok()?;
        out.scale_from(&reference).map(|s| (name.clone(), s))
    });
    Expectation { form: text.to_string(), matched }
}

/// Runs one reconstruction. Returns the report and the time spent in the
/// pipeline.
pub fn reconstruct(kind: Kind, inputs: &Inputs, opts: &JobOptions) -> (Report, Duration) {
    let mut job = vec![("command".to_string(), "reconstruct".to_string()), ("kind".into(), kind.name().into())];
    let given = [
        ("form", &inputs.form),
        ("form6", &inputs.form6),
        ("form4", &inputs.form4),
        ("quadric", &inputs.quadric),
        ("cubic", &inputs.cubic),
    ];
    job.extend(given.iter().filter_map(|(k, v)| v.as_ref().map(|v| (format!("input {k}"), v.trim().to_string()))));
    job.push(("seed".into(), opts.seed.to_string()));
    job.push(("height bound".into(), opts.height_bound.to_string()));
    job.extend(opts.expect.iter().map(|e| ("expect".to_string(), e.trim().to_string())));
    let error = |job: Vec<(String, String)>, p: Problem| Report { job, verdict: p.verdict(), body: Body::Error(p.failure()) };
    if let Some(e) = opts.expect.iter().find_map(|t| parse_form_auto(t).err()) {
        return (error(job, e.into()), Duration::ZERO);
    }
    let r = match route(kind, inputs) {
        Ok(r) => r,
        Err(e) => return (error(job, e), Duration::ZERO),
    };
    let battery = match battery_id(&r.shapes()) {
        Ok(b) => b,
        Err(e) => return (error(job, e.into()), Duration::ZERO),
    };
    if let Some(requested) = &opts.battery {
        if *requested != battery {
            let p = Problem::Usage(format!("battery {requested} does not apply to this job, which uses {battery}"));
            return (error(job, p), Duration::ZERO);
        }
    }
    job.push(("battery".into(), battery));
    let start = Instant::now();
    let result = r.run(&Options { height_bound: opts.height_bound, search: None });
    let elapsed = start.elapsed();
    let rec = match result {
        Ok(rec) => rec,
        Err(e) => return (error(job, e.into()), elapsed),
    };
    let expectations: Vec<Expectation> = opts.expect.iter().map(|t| expectation(t.trim(), &rec.outputs)).collect();
    let verified = rec.certificate.verified && expectations.iter().all(|e| e.matched.is_some());
    let outcome = Outcome {
        pipeline: rec.pipeline.to_string(),
        outputs: named(&rec.outputs),
        covariants: named(&rec.covariants),
        extensions: rec
            .record
            .entries
            .iter()
            .map(|e| Extension { radicand: e.radicand.clone(), reason: e.reason.clone() })
            .collect(),
        certificate_method: rec.certificate.method.clone(),
        certificate_verified: rec.certificate.verified,
        certificate_scale: rec.certificate.scale.clone(),
        expectations,
        steps: rec.steps.clone(),
    };
    let verdict = if verified { Verdict::Verified } else { Verdict::Unverified };
    (Report { job, body: Body::Reconstruction(Box::new(outcome)), verdict }, elapsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> JobOptions {
        JobOptions { seed: 0, height_bound: 10_000, battery: None, expect: vec![] }
    }

    #[test]
    fn missing_input_is_an_input_error() {
        let (r, _) = reconstruct(Kind::Genus3, &Inputs::default(), &opts());
        assert_eq!(r.verdict, Verdict::InputError);
    }

    #[test]
    fn parse_errors_carry_a_position() {
        let inputs = Inputs { form: Some("x0^5 + * x1".into()), ..Inputs::default() };
        let (r, _) = reconstruct(Kind::BinaryOdd, &inputs, &opts());
        assert_eq!(r.verdict, Verdict::InputError);
        let Body::Error(f) = r.body else { panic!("expected an error") };
        assert_eq!(f.kind, "Parse");
        assert!(f.position.is_some());
    }

    #[test]
    fn wrong_battery_is_rejected() {
        let inputs = Inputs { form: Some("x0^5+x0*x1^4+x1^5".into()), ..Inputs::default() };
        let (r, _) = reconstruct(Kind::BinaryOdd, &inputs, &JobOptions { battery: Some("ternary-4".into()), ..opts() });
        assert_eq!(r.verdict, Verdict::InputError);
    }

    #[test]
    fn expectation_reports_the_scale() {
        let inputs = Inputs { form: Some("x0^5+2*x0^3*x1^2-x0*x1^4+3*x1^5".into()), ..Inputs::default() };
        let (r, _) = reconstruct(Kind::BinaryOdd, &inputs, &opts());
        let Body::Reconstruction(o) = &r.body else { panic!("{r:?}") };
        let out = parse_form(&o.outputs[0].form, &Space::binary()).unwrap();
        let tripled = out.scale(&Rational::new_i64(3, 1)).to_string();
        let (r, _) = reconstruct(Kind::BinaryOdd, &inputs, &JobOptions { expect: vec![tripled], ..opts() });
        assert_eq!(r.verdict, Verdict::Verified);
        let Body::Reconstruction(o) = &r.body else { panic!("{r:?}") };
        assert_eq!(o.expectations[0].matched, Some(("f".into(), "1/3".into())));
    }
}
