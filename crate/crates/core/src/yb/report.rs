use std::fmt;

use serde::Serialize;

use crate::field::FieldConfig;

/// Failures kept verbatim in a report; the rest are only counted.
pub const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: Vec<NamedValue>,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    pub fn new(inputs: Vec<(&str, String)>, lhs: String, rhs: String) -> Self {
        Failure {
            inputs: inputs.into_iter().map(|(name, value)| NamedValue { name: name.to_string(), value }).collect(),
            lhs,
            rhs,
        }
    }

    pub fn input(&self, name: &str) -> Option<&str> {
        self.inputs.iter().find(|v| v.name == name).map(|v| v.value.as_str())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self.inputs.iter().map(|v| format!("{}={}", v.name, v.value)).collect();
        write!(f, "{}: {} != {}", inputs.join(", "), self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SampleCounts {
    pub requested: usize,
    pub used: usize,
    /// Pole hits that forced a fresh tuple.
    pub resampled: usize,
    /// Tuples abandoned after the resample budget ran out.
    pub exhausted: usize,
}

/// Schwartz-Zippel accounting for a prime-field run: a nonzero rational
/// identity of total degree at most `D` survives one uniform sample with
/// probability at most `D/p`, and `used` independent samples with at most
/// `(D/p)^used`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Confidence {
    pub modulus: u64,
    pub degree_estimate: u32,
    pub per_sample_bound: f64,
    pub note: String,
}

impl Confidence {
    pub fn new(modulus: u64, degree: u32) -> Self {
        let bound = degree as f64 / modulus as f64;
        Confidence {
            modulus,
            degree_estimate: degree,
            per_sample_bound: bound,
            note: format!("false-accept probability per sample <= D/p = {degree}/{modulus} ~ {bound:.3e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub subject: String,
    pub field: String,
    pub samples: SampleCounts,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
    pub verdict: Verdict,
    pub confidence: Option<Confidence>,
}

impl VerificationReport {
    pub fn empty(identity: &str, subject: &str, cfg: &FieldConfig, degree: u32) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            subject: subject.to_string(),
            field: cfg.field().label(),
            samples: SampleCounts::default(),
            failures: Vec::new(),
            failure_count: 0,
            verdict: Verdict::Pass,
            confidence: cfg.modulus().map(|p| Confidence::new(p, degree)),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub(crate) fn record_failure(&mut self, failure: Failure) {
        self.failure_count += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(failure);
        }
    }

    pub(crate) fn finalize(&mut self) {
        self.verdict = if self.failure_count > 0 {
            Verdict::Fail
        } else if self.samples.exhausted > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        if self.verdict != Verdict::Pass {
            self.confidence = None;
        }
    }

    /// Combines reports of the same identity; associative.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        let confidence = self.confidence.clone().or(other.confidence.clone());
        self.samples.requested += other.samples.requested;
        self.samples.used += other.samples.used;
        self.samples.resampled += other.samples.resampled;
        self.samples.exhausted += other.samples.exhausted;
        for f in other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(f);
            }
        }
        self.failure_count += other.failure_count;
        self.confidence = confidence;
        self.finalize();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line human summary.
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "{:<13} {:<40} {:<24} used {}/{} resampled {}",
            self.verdict.to_string().to_uppercase(),
            self.identity,
            self.subject,
            self.samples.used,
            self.samples.requested,
            self.samples.resampled
        );
        if let Some(f) = self.failures.first() {
            line.push_str(&format!("\n    witness: {f}"));
        }
        line
    }
}
