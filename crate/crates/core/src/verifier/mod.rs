//! Named checks that confront the constructions with independent oracles.

mod checks;
mod spair;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groebner::Guards;
use crate::reescomb::Instance;
use crate::truncation::TruncationInstance;

pub use spair::{certify_all, structured_spair_certificate, MinorSet, SPairCertificate, SPairOutcome, SPairSweep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckKind {
    #[serde(rename = "gb-minors")]
    GbMinors,
    #[serde(rename = "initial-ideal")]
    InitialIdeal,
    #[serde(rename = "kernel-equality-M")]
    KernelEqualityM,
    #[serde(rename = "dimension")]
    Dimension,
    #[serde(rename = "colon-identity")]
    ColonIdentity,
    #[serde(rename = "induction-membership")]
    InductionMembership,
    #[serde(rename = "symbolic-power")]
    SymbolicPower,
    #[serde(rename = "rees-presentation")]
    ReesPresentation,
    #[serde(rename = "divisorial-identity")]
    DivisorialIdentity,
    #[serde(rename = "quadratic-gb")]
    QuadraticGb,
    #[serde(rename = "height-Q")]
    HeightQ,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::GbMinors,
        CheckKind::InitialIdeal,
        CheckKind::KernelEqualityM,
        CheckKind::Dimension,
        CheckKind::ColonIdentity,
        CheckKind::InductionMembership,
        CheckKind::SymbolicPower,
        CheckKind::ReesPresentation,
        CheckKind::DivisorialIdentity,
        CheckKind::QuadraticGb,
        CheckKind::HeightQ,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::GbMinors => "gb-minors",
            CheckKind::InitialIdeal => "initial-ideal",
            CheckKind::KernelEqualityM => "kernel-equality-M",
            CheckKind::Dimension => "dimension",
            CheckKind::ColonIdentity => "colon-identity",
            CheckKind::InductionMembership => "induction-membership",
            CheckKind::SymbolicPower => "symbolic-power",
            CheckKind::ReesPresentation => "rees-presentation",
            CheckKind::DivisorialIdentity => "divisorial-identity",
            CheckKind::QuadraticGb => "quadratic-gb",
            CheckKind::HeightQ => "height-Q",
        }
    }

    /// Checks on powers of the maximal ideal; the rest take a truncation.
    pub fn is_powers(self) -> bool {
        matches!(
            self,
            CheckKind::GbMinors
                | CheckKind::InitialIdeal
                | CheckKind::KernelEqualityM
                | CheckKind::Dimension
                | CheckKind::ColonIdentity
                | CheckKind::InductionMembership
                | CheckKind::SymbolicPower
        )
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown check `{s}`")))
    }
}

/// What a check runs on.
#[derive(Clone, Debug)]
pub enum Target {
    Powers(Instance),
    Truncation(TruncationInstance),
}

impl Target {
    pub fn echo(&self) -> Value {
        match self {
            Target::Powers(i) => i.echo(),
            Target::Truncation(t) => t.echo(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Powers(i) => write!(f, "{i}"),
            Target::Truncation(t) => {
                let fs: Vec<String> = t.f().iter().map(|p| p.to_string()).collect();
                write!(f, "n={}, f=({}), d={}", t.n(), fs.join(", "), t.d())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckParams {
    pub guards: Guards,
    /// Seed for the random column submatrices of `gb-minors`.
    pub seed: u64,
    /// Number of random submatrices per matrix in `gb-minors`.
    pub submatrices: usize,
    /// `delta` values for `symbolic-power`; `None` runs `1..=a_r + 1`.
    pub delta: Option<Vec<u32>>,
    /// Total-degree bound of the witness search; `None` means `2 delta max(a)`.
    pub witness_bound: Option<u32>,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { guards: Guards::default(), seed: 0, submatrices: 5, delta: None, witness_bound: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Aborted,
    /// The witness search hit its degree bound; not a counterexample.
    BoundExhausted,
    /// The check could not run (for example, it does not apply to the target).
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Aborted => "aborted",
            Verdict::BoundExhausted => "bound-exhausted",
            Verdict::Error => "error",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub check: CheckKind,
    pub instance: Value,
    pub verdict: Verdict,
    pub evidence: Map<String, Value>,
    /// Present exactly when the verdict is `fail`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One line: check, instance, verdict.
    pub fn summary(&self, target: &Target) -> String {
        let label = if self.check == CheckKind::QuadraticGb { " (Koszul proxy)" } else { "" };
        format!("{}{label} [{target}]: {}", self.check, self.verdict)
    }
}

/// Verdict and evidence of a completed check, before timing and echo are attached.
pub(crate) struct Outcome {
    pub verdict: Verdict,
    pub evidence: Map<String, Value>,
    pub counterexample: Option<Value>,
}

impl Outcome {
    pub fn new(evidence: Map<String, Value>) -> Self {
        Outcome { verdict: Verdict::Pass, evidence, counterexample: None }
    }

    pub fn fail(mut self, counterexample: Value) -> Self {
        if self.verdict == Verdict::Pass || self.verdict == Verdict::BoundExhausted {
            self.verdict = Verdict::Fail;
            self.counterexample = Some(counterexample);
        }
        self
    }
}

/// Runs one check. Guard breaches give an `aborted` report; other errors are returned.
pub fn run_check(kind: CheckKind, target: &Target, params: &CheckParams) -> Result<Report> {
    let start = Instant::now();
    let res = match (kind.is_powers(), target) {
        (true, Target::Powers(inst)) => checks::run_powers(kind, inst, params),
        (false, Target::Truncation(ti)) => checks::run_truncation(kind, ti, params),
        (true, _) => Err(Error::Invalid(format!("{kind} applies to powers instances"))),
        (false, _) => Err(Error::Invalid(format!("{kind} applies to truncation instances"))),
    };
    let outcome = match res {
        Ok(o) => o,
        Err(Error::Aborted { reason, report }) => {
            let mut ev = Map::new();
            ev.insert("abortReason".into(), json!(reason));
            ev.insert("gb".into(), serde_json::to_value(&*report).unwrap_or(Value::Null));
            Outcome { verdict: Verdict::Aborted, evidence: ev, counterexample: None }
        }
        Err(e) => return Err(e),
    };
    Ok(Report {
        check: kind,
        instance: target.echo(),
        verdict: outcome.verdict,
        evidence: outcome.evidence,
        counterexample: outcome.counterexample,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every item on a pool of `jobs` threads; results keep the plan's order. Item
/// errors become `error` reports.
pub fn sweep(plan: &[(CheckKind, Target)], params: &CheckParams, jobs: usize) -> Result<Vec<Report>> {
    if plan.is_empty() {
        return Err(Error::Invalid("empty verification plan".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(pool.install(|| {
        plan.par_iter()
            .map(|(kind, target)| {
                run_check(*kind, target, params).unwrap_or_else(|e| {
                    let mut ev = Map::new();
                    ev.insert("error".into(), json!(e.to_string()));
                    Report {
                        check: *kind,
                        instance: target.echo(),
                        verdict: Verdict::Error,
                        evidence: ev,
                        counterexample: None,
                        elapsed_ms: 0,
                    }
                })
            })
            .collect()
    }))
}
