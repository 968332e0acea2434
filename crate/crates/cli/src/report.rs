//! The structured output of one invocation and its two renderings.

use serde_json::{json, Map, Value};

/// Exit status of an invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Reconstruction certified and every expectation matched.
    Verified,
    /// Completed, but the certificate or an expectation failed.
    Unverified,
    /// A typed mathematical failure (dependence, degeneracy).
    Failed,
    /// Malformed input.
    InputError,
}

impl Verdict {
    pub fn code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::InputError => 1,
            Verdict::Failed => 2,
            Verdict::Unverified => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::Unverified => "UNVERIFIED",
            Verdict::Failed => "FAILED",
            Verdict::InputError => "INPUT_ERROR",
        }
    }
}

#[derive(Debug, Clone)]
pub struct NamedForm {
    pub name: String,
    pub field: String,
    pub form: String,
}

#[derive(Debug, Clone)]
pub struct Expectation {
    pub form: String,
    /// Matching output and `λ` with `output = λ·form`.
    pub matched: Option<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub radicand: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub pipeline: String,
    pub outputs: Vec<NamedForm>,
    pub covariants: Vec<NamedForm>,
    pub extensions: Vec<Extension>,
    pub certificate_method: String,
    pub certificate_verified: bool,
    pub certificate_scale: Option<String>,
    pub expectations: Vec<Expectation>,
    pub steps: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    pub position: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum Body {
    Reconstruction(Box<Outcome>),
    Selftest(Vec<Suite>),
    Error(Failure),
}

/// Job echo, results or error, provenance and verdict.
#[derive(Debug, Clone)]
pub struct Report {
    pub job: Vec<(String, String)>,
    pub body: Body,
    pub verdict: Verdict,
}

fn named(forms: &[NamedForm]) -> Value {
    forms.iter().map(|f| json!({"name": f.name, "field": f.field, "form": f.form})).collect()
}

fn pairs(items: &[(String, String)]) -> Value {
    Value::Object(items.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>())
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("job".into(), pairs(&self.job));
        let provenance = |steps: Value| {
            json!({"program": "apolar", "version": env!("CARGO_PKG_VERSION"), "steps": steps})
        };
        match &self.body {
            Body::Reconstruction(o) => {
                let steps: Value =
                    o.steps.iter().map(|(s, d)| json!({"step": s, "detail": d})).collect::<Vec<_>>().into();
                out.insert(
                    "results".into(),
                    json!({
                        "pipeline": o.pipeline,
                        "outputs": named(&o.outputs),
                        "covariants": named(&o.covariants),
                        "extensions": o.extensions.iter().map(|e| json!({"radicand": e.radicand, "reason": e.reason})).collect::<Vec<_>>(),
                        "certificate": {"method": o.certificate_method, "verified": o.certificate_verified, "scale": o.certificate_scale},
                        "expectations": o.expectations.iter().map(|e| match &e.matched {
                            Some((name, scale)) => json!({"form": e.form, "output": name, "scale": scale}),
                            None => json!({"form": e.form, "output": null, "scale": null}),
                        }).collect::<Vec<_>>(),
                    }),
                );
                out.insert("provenance".into(), provenance(steps));
            }
            Body::Selftest(suites) => {
                out.insert(
                    "results".into(),
                    suites
                        .iter()
                        .map(|s| json!({"suite": s.name, "cases": s.cases, "passed": s.failures.is_empty(), "failures": s.failures}))
                        .collect::<Vec<_>>()
                        .into(),
                );
                out.insert("provenance".into(), provenance(Value::Array(vec![])));
            }
            Body::Error(e) => {
                out.insert(
                    "error".into(),
                    json!({"kind": e.kind, "message": e.message, "position": e.position, "mathematical": self.verdict == Verdict::Failed}),
                );
                out.insert("provenance".into(), provenance(Value::Array(vec![])));
            }
        }
        out.insert("verdict".into(), Value::String(self.verdict.label().into()));
        Value::Object(out)
    }

    pub fn to_text(&self) -> String {
        let mut lines: Vec<String> = self.job.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        match &self.body {
            Body::Reconstruction(o) => {
                lines.push(format!("pipeline: {}", o.pipeline));
                lines.extend(o.steps.iter().map(|(s, d)| format!("step {s}: {d}")));
                lines.extend(o.covariants.iter().map(|f| format!("covariant {} over {}: {}", f.name, f.field, f.form)));
                lines.extend(o.outputs.iter().map(|f| format!("output {} over {}: {}", f.name, f.field, f.form)));
                if o.extensions.is_empty() {
                    lines.push("extensions: none".into());
                }
                lines.extend(o.extensions.iter().map(|e| format!("extension sqrt({}): {}", e.radicand, e.reason)));
                let status = if o.certificate_verified { "verified" } else { "not verified" };
                let scale = o.certificate_scale.as_ref().map_or(String::new(), |s| format!(", {s}"));
                lines.push(format!("certificate: {} ({status}{scale})", o.certificate_method));
                for (i, e) in o.expectations.iter().enumerate() {
                    lines.push(match &e.matched {
                        Some((name, scale)) => format!("expect {}: output {name} = {scale} * expected", i + 1),
                        None => format!("expect {}: no output is a multiple of {}", i + 1, e.form),
                    });
                }
            }
            Body::Selftest(suites) => {
                for s in suites {
                    let status = if s.failures.is_empty() { "PASS" } else { "FAIL" };
                    lines.push(format!("suite {}: {status} ({} cases)", s.name, s.cases));
                    lines.extend(s.failures.iter().map(|f| format!("  failed: {f}")));
                }
            }
            Body::Error(e) => {
                lines.push(format!("error {}: {}", e.kind, e.message));
                if let Some(p) = e.position {
                    lines.push(format!("error position: {p}"));
                }
            }
        }
        lines.push(format!("verdict: {}", self.verdict.label()));
        lines.join("\n") + "\n"
    }
}
