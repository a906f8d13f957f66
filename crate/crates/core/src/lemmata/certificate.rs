//! Per-obligation certificates: solver queries with their traces, or the exact
//! restatement of a geometric fact, plus a hashed manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::solver::{replay_trace, ColoringProblem, Outcome, Stats, TraceEvent, VarInfo, Verdict};

use super::{Kind, Report, ScriptId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub expect: String,
    pub varmap: Vec<VarInfo>,
    pub clauses: Vec<Vec<i32>>,
    pub assumptions: Vec<i32>,
    pub result: String,
    pub model: Option<Vec<bool>>,
    pub stats: Stats,
    pub trace: Vec<TraceEvent>,
}

impl Query {
    pub fn new(expect_sat: bool, problem: &ColoringProblem, verdict: &Verdict) -> Self {
        let model = match &verdict.outcome {
            Outcome::Sat(m) => Some(m.clone()),
            Outcome::Unsat => None,
        };
        Query {
            expect: if expect_sat { "sat" } else { "unsat" }.into(),
            varmap: problem.varmap().to_vec(),
            clauses: problem.clauses().to_vec(),
            assumptions: problem.assumptions().to_vec(),
            result: if verdict.is_sat() { "sat" } else { "unsat" }.into(),
            model,
            stats: verdict.stats,
            trace: verdict.trace.clone(),
        }
    }

    pub fn problem(&self) -> ColoringProblem {
        ColoringProblem::new(
            self.varmap.clone(),
            self.clauses.clone(),
            self.assumptions.clone(),
        )
    }

    /// Replays the recorded trace against the recorded clauses and checks the
    /// result is the expected one.
    pub fn replay(&self) -> Result<()> {
        let problem = self.problem();
        let verdict = Verdict {
            outcome: self.model.clone().map_or(Outcome::Unsat, Outcome::Sat),
            trace: self.trace.clone(),
            stats: self.stats,
        };
        replay_trace(&problem, &verdict)?;
        let got = if verdict.is_sat() { "sat" } else { "unsat" };
        if got != self.expect || got != self.result {
            return Err(Error::Invalid(format!(
                "expected {}, trace shows {got}",
                self.expect
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub obligation: String,
    pub kind: Kind,
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restatement: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Query>,
}

impl Certificate {
    pub fn restated(obligation: String, kind: Kind, statement: &str, text: &str) -> Self {
        Certificate {
            obligation,
            kind,
            statement: statement.to_string(),
            restatement: Some(text.to_string()),
            queries: Vec::new(),
        }
    }

    pub fn solved(obligation: String, kind: Kind, statement: &str, queries: Vec<Query>) -> Self {
        Certificate {
            obligation,
            kind,
            statement: statement.to_string(),
            restatement: None,
            queries,
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.json", self.obligation.replace('/', "-"))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("certificate serialises");
        s.push('\n');
        s
    }
}

/// Replays every solver query in a certificate. Certificates for FORCED and
/// UNSAT obligations must carry at least one query.
pub fn replay_certificate(cert: &Certificate) -> Result<()> {
    if matches!(cert.kind, Kind::Forced | Kind::Unsat) && cert.queries.is_empty() {
        return Err(Error::Invalid(format!(
            "{} has no solver query",
            cert.obligation
        )));
    }
    if cert.kind == Kind::Forced {
        let kinds: Vec<&str> = cert.queries.iter().map(|q| q.expect.as_str()).collect();
        if kinds != ["unsat", "sat"] {
            return Err(Error::Invalid(format!(
                "{} needs an unsat and a sat query",
                cert.obligation
            )));
        }
    }
    for q in &cert.queries {
        q.replay()
            .map_err(|e| Error::Invalid(format!("{}: {e}", cert.obligation)))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub dag: BTreeMap<ScriptId, Vec<ScriptId>>,
    pub notes: BTreeMap<ScriptId, Vec<String>>,
    pub files: Vec<ManifestEntry>,
}

/// Writes one JSON file per certificate and `manifest.json` into `dir`.
pub fn write_bundle(report: &Report, dir: &Path) -> Result<Manifest> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for cert in report.certificates() {
        let text = cert.to_json();
        let name = cert.file_name();
        fs::write(dir.join(&name), &text)?;
        files.push(ManifestEntry {
            file: name,
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
    }
    let manifest = Manifest {
        dag: ScriptId::ALL
            .into_iter()
            .map(|id| (id, id.dependencies().to_vec()))
            .collect(),
        notes: report
            .scripts
            .iter()
            .filter(|s| !s.notes.is_empty())
            .map(|s| (s.id, s.notes.clone()))
            .collect(),
        files,
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(dir.join("manifest.json"), text)?;
    Ok(manifest)
}
