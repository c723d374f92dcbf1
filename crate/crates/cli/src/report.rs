//! Machine and human renderings of a run.

use std::fmt;

use serde::{Deserialize, Serialize};
use spbw_core::gkdim::{GkEstimate, HARD_CHECKS};
use spbw_core::{AuditRecord, Verdict};

pub const SCHEMA: &str = "spbw-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub algebra: String,
    pub command: String,
    pub config: Config,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    pub checks: Vec<Check>,
    pub calculus_dim: Option<usize>,
    pub gk: Option<Gk>,
    pub verdict: Option<VerdictDoc>,
    pub timing: Timing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub mode: Option<String>,
    pub degree: u32,
    pub pbw_degree: u32,
    pub samples: usize,
    pub sample_degree: u32,
    pub leibniz_samples: usize,
    pub gk_degree: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub status: String,
    pub summary: String,
    pub witnesses: Vec<String>,
    pub elapsed_us: u64,
}

impl Check {
    pub fn from_record(r: &AuditRecord, elapsed_us: u64) -> Self {
        Self {
            name: r.name.clone(),
            status: r.status.as_str().to_string(),
            summary: r.summary.clone(),
            witnesses: r.witnesses.clone(),
            elapsed_us,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gk {
    pub estimate: u32,
    pub difference_degree: Option<u32>,
    pub log_estimate: f64,
    pub ambiguous: bool,
    pub dims: Vec<u64>,
    pub label: String,
}

impl Gk {
    pub fn new(g: &GkEstimate, dims: Vec<u64>) -> Self {
        Self {
            estimate: g.estimate,
            difference_degree: g.difference_degree,
            log_estimate: (g.log_estimate * 1e6).round() / 1e6,
            ambiguous: g.ambiguous,
            dims,
            label: "desk-scale estimate".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub label: String,
    pub reasons: Vec<String>,
    pub failed_check: Option<String>,
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        let (reasons, failed_check) = match v {
            Verdict::CertifiedSmooth => (Vec::new(), None),
            Verdict::NotCertified(r) => (r.clone(), None),
            Verdict::Failed(c) => (Vec::new(), Some(c.clone())),
        };
        Self { label: v.label().to_string(), reasons, failed_check }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub total_us: u64,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 1 when a hard check failed, else 0.
    pub fn exit_code(&self) -> i32 {
        let hard = self.checks.iter().any(|c| c.status == "fail" && HARD_CHECKS.contains(&c.name.as_str()));
        i32::from(hard)
    }

    /// Copy with every timing field zeroed, for byte comparison.
    pub fn normalized(&self) -> Report {
        let mut r = self.clone();
        r.timing.total_us = 0;
        for c in &mut r.checks {
            c.elapsed_us = 0;
        }
        r
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({})", self.algebra, self.command)?;
        if let Some(r) = &self.result {
            writeln!(f, "  {r}")?;
        }
        for c in &self.checks {
            writeln!(f, "  {:<8} {:<16} {}", c.status, c.name, c.summary)?;
            for w in &c.witnesses {
                writeln!(f, "           {w}")?;
            }
        }
        if let Some(n) = self.calculus_dim {
            writeln!(f, "  calculus dimension {n}")?;
        }
        if let Some(g) = &self.gk {
            let amb = if g.ambiguous { ", ambiguous" } else { "" };
            writeln!(f, "  GK dimension {} ({}{amb})", g.estimate, g.label)?;
        }
        if let Some(v) = &self.verdict {
            match (&v.failed_check, v.reasons.is_empty()) {
                (Some(c), _) => writeln!(f, "verdict: failed({c})")?,
                (None, true) => writeln!(f, "verdict: {}", v.label)?,
                (None, false) => writeln!(f, "verdict: {} ({})", v.label, v.reasons.join("; "))?,
            }
        }
        Ok(())
    }
}
