//! Proof scripts: ordered obligations over the figure configurations, run in
//! dependency order, each unlocking the derived rule it establishes.

mod certificate;
mod check;
mod enumerate;
mod figures;
mod scripts;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::configuration::{Colour, Configuration, Grant, RuleId, RuleSet, TemplateId};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::geometry::Isometry;
use crate::tilings::PeriodicColoring;

pub use certificate::{replay_certificate, write_bundle, Certificate, Manifest, Query};
pub use enumerate::{enumerate_uniqueness, UniquenessReport};
pub use figures::{figure_instance, figure_names};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScriptId {
    Bluetr,
    Redtr,
    T7,
    T3t6,
    Col1,
    Col2,
    Theorem,
}

impl ScriptId {
    /// Topological order.
    pub const ALL: [ScriptId; 7] = [
        ScriptId::Bluetr,
        ScriptId::Redtr,
        ScriptId::T7,
        ScriptId::Col2,
        ScriptId::T3t6,
        ScriptId::Col1,
        ScriptId::Theorem,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScriptId::Bluetr => "bluetr",
            ScriptId::Redtr => "redtr",
            ScriptId::T7 => "t7",
            ScriptId::T3t6 => "t3t6",
            ScriptId::Col1 => "col1",
            ScriptId::Col2 => "col2",
            ScriptId::Theorem => "theorem",
        }
    }

    pub fn dependencies(self) -> &'static [ScriptId] {
        match self {
            ScriptId::Bluetr => &[],
            ScriptId::Redtr | ScriptId::T7 | ScriptId::Col2 => &[ScriptId::Bluetr],
            ScriptId::T3t6 => &[ScriptId::Redtr, ScriptId::T7],
            ScriptId::Col1 => &[ScriptId::T3t6, ScriptId::Redtr],
            ScriptId::Theorem => &[ScriptId::Col1, ScriptId::Col2],
        }
    }

    /// All scripts this one depends on, directly or not.
    pub fn ancestors(self) -> BTreeSet<ScriptId> {
        let mut out = BTreeSet::new();
        let mut stack = self.dependencies().to_vec();
        while let Some(s) = stack.pop() {
            if out.insert(s) {
                stack.extend_from_slice(s.dependencies());
            }
        }
        out
    }

    /// The derived rule a successful run establishes.
    pub fn grants(self) -> Option<RuleId> {
        match self {
            ScriptId::Bluetr => Some(RuleId::BlueEq3RedCenterForbidden),
            ScriptId::Redtr => Some(RuleId::RedEq3RedCenterForbidden),
            ScriptId::T7 => Some(RuleId::T7RedForbidden),
            ScriptId::T3t6 => Some(RuleId::T3T6Extension),
            _ => None,
        }
    }

    /// Rules the script assumes as part of its own hypothesis.
    pub fn hypothesis_rules(self) -> &'static [RuleId] {
        match self {
            ScriptId::Col2 => &[RuleId::NoRedT3],
            _ => &[],
        }
    }

    /// Scripts grouped into levels whose members depend only on earlier levels.
    pub fn levels() -> Vec<Vec<ScriptId>> {
        let mut depth: BTreeMap<ScriptId, usize> = BTreeMap::new();
        for id in ScriptId::ALL {
            let d = id
                .dependencies()
                .iter()
                .map(|p| depth[p] + 1)
                .max()
                .unwrap_or(0);
            depth.insert(id, d);
        }
        let mut levels = vec![Vec::new(); depth.values().max().map_or(0, |m| m + 1)];
        for id in ScriptId::ALL {
            levels[depth[&id]].push(id);
        }
        levels
    }
}

impl FromStr for ScriptId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScriptId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

impl fmt::Display for ScriptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    GeomIdentity,
    ChainClaim,
    PatternPresent,
    ImageSet,
    Forced,
    Unsat,
    SatWitness,
    PatternCheck,
}

impl Kind {
    pub fn uses_solver(self) -> bool {
        matches!(self, Kind::Forced | Kind::Unsat | Kind::SatWitness)
    }
}

/// A point set with the colours a script assumes and the rules it may use.
#[derive(Clone, Debug)]
pub struct Figure {
    pub cfg: Configuration,
    pub hypotheses: BTreeMap<String, Colour>,
    pub rules: Vec<RuleId>,
}

#[derive(Clone, Debug)]
pub enum Identity {
    Dist2 {
        a: String,
        b: String,
        value: FieldElement,
    },
    Collinear {
        a: String,
        b: String,
        c: String,
    },
}

/// One inference inside a forcing argument.
#[derive(Clone, Debug)]
pub enum Step {
    /// `node` is blue, being at distance 1 from the red node `from`.
    Unit { node: String, from: String },
    /// The named `ℓ₅` cannot be all blue.
    Chain(Vec<String>),
    /// The named nodes (in template order) may not carry the rule's roles.
    Rule { rule: RuleId, names: Vec<String> },
    /// A red triangle lies in a red `T6`; every placement but `t6` holds a
    /// blue node.
    Extension {
        triangle: Vec<String>,
        t6: Vec<String>,
    },
}

#[derive(Clone, Debug)]
pub enum Check {
    Geom {
        figure: String,
        identity: Identity,
    },
    Chain {
        figure: String,
        names: Vec<String>,
    },
    /// `ordered`: the names are in template order; otherwise some embedding
    /// has exactly this node set.
    Pattern {
        figure: String,
        template: TemplateId,
        names: Vec<String>,
        ordered: bool,
    },
    /// Points completing `base` to a copy of `template` include (or, with
    /// `exact`, equal) `expected`.
    Completions {
        figure: String,
        template: TemplateId,
        base: Vec<String>,
        expected: Vec<String>,
        exact: bool,
    },
    Image {
        figure: String,
        isometry: Isometry,
        from: Vec<String>,
        to: Vec<String>,
        ordered: bool,
    },
    Forced {
        figure: String,
        node: String,
        colour: Colour,
        steps: Vec<Step>,
    },
    Unsat {
        figure: String,
    },
    SatWitness {
        figure: String,
        pattern: PeriodicColoring,
    },
    PatternValid {
        pattern: PeriodicColoring,
        radius: i64,
    },
    Distance5 {
        pattern: PeriodicColoring,
    },
    NormClosure {
        norm2: i64,
    },
}

impl Check {
    pub fn kind(&self) -> Kind {
        match self {
            Check::Geom { .. } => Kind::GeomIdentity,
            Check::Chain { .. } => Kind::ChainClaim,
            Check::Pattern { .. } | Check::Completions { .. } => Kind::PatternPresent,
            Check::Image { .. } => Kind::ImageSet,
            Check::Forced { .. } => Kind::Forced,
            Check::Unsat { .. } => Kind::Unsat,
            Check::SatWitness { .. } => Kind::SatWitness,
            Check::PatternValid { .. } | Check::Distance5 { .. } | Check::NormClosure { .. } => {
                Kind::PatternCheck
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Obligation {
    pub statement: String,
    pub check: Check,
}

#[derive(Clone, Debug)]
pub struct Script {
    pub id: ScriptId,
    pub figures: BTreeMap<String, Figure>,
    pub obligations: Vec<Obligation>,
    /// Corrections applied when transcribing the argument.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub patch_radius: i64,
    pub emit_certificates: bool,
    /// Scripts treated as unavailable (their dependents are blocked).
    pub disabled: BTreeSet<ScriptId>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            patch_radius: 7,
            emit_certificates: true,
            disabled: BTreeSet::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObligationReport {
    pub id: String,
    pub kind: Kind,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Blocked,
    Disabled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptReport {
    pub id: ScriptId,
    pub status: Status,
    pub blocked_by: Vec<ScriptId>,
    pub grants: Vec<String>,
    pub notes: Vec<String>,
    pub obligations: Vec<ObligationReport>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub certificates: Vec<Certificate>,
}

impl ScriptReport {
    fn skipped(id: ScriptId, status: Status, blocked_by: Vec<ScriptId>) -> Self {
        ScriptReport {
            id,
            status,
            blocked_by,
            grants: Vec::new(),
            notes: Vec::new(),
            obligations: Vec::new(),
            elapsed_ms: 0,
            certificates: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub obligation_count: usize,
    pub scripts: Vec<ScriptReport>,
}

impl Report {
    fn assemble(mut scripts: Vec<ScriptReport>) -> Self {
        scripts.sort_by_key(|s| ScriptId::ALL.iter().position(|&id| id == s.id));
        Report {
            passed: !scripts.is_empty() && scripts.iter().all(ScriptReport::passed),
            obligation_count: scripts.iter().map(|s| s.obligations.len()).sum(),
            scripts,
        }
    }

    pub fn script(&self, id: ScriptId) -> Option<&ScriptReport> {
        self.scripts.iter().find(|s| s.id == id)
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.scripts.iter().flat_map(|s| s.certificates.iter())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

/// Builds the obligations of one script.
pub fn script(id: ScriptId, options: &Options) -> Result<Script> {
    scripts::build(id, options)
}

/// Wall-clock timer; reads zero where the platform has no clock.
struct Clock(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Clock {
    fn start() -> Self {
        Clock(
            #[cfg(not(target_arch = "wasm32"))]
            std::time::Instant::now(),
        )
    }

    fn elapsed_ms(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed().as_millis() as u64;
        #[cfg(target_arch = "wasm32")]
        0
    }
}

/// Runs scripts on demand, reusing results of dependencies already run.
pub struct Verifier {
    options: Options,
    done: Mutex<BTreeMap<ScriptId, ScriptReport>>,
}

impl Verifier {
    pub fn new(options: Options) -> Self {
        Verifier {
            options,
            done: Mutex::new(BTreeMap::new()),
        }
    }

    fn status(&self, id: ScriptId) -> Option<Status> {
        self.done.lock().unwrap().get(&id).map(|r| r.status)
    }

    /// Runs `id` after its dependencies; a failed or missing dependency
    /// yields a blocked report.
    pub fn run(&self, id: ScriptId) -> ScriptReport {
        for &dep in id.dependencies() {
            if self.status(dep).is_none() {
                self.run(dep);
            }
        }
        self.run_ready(id)
    }

    fn run_ready(&self, id: ScriptId) -> ScriptReport {
        if let Some(r) = self.done.lock().unwrap().get(&id) {
            return r.clone();
        }
        let report = if self.options.disabled.contains(&id) {
            ScriptReport::skipped(id, Status::Disabled, Vec::new())
        } else {
            let blocked: Vec<ScriptId> = id
                .dependencies()
                .iter()
                .copied()
                .filter(|&d| self.status(d) != Some(Status::Passed))
                .collect();
            if blocked.is_empty() {
                self.execute(id)
            } else {
                ScriptReport::skipped(id, Status::Blocked, blocked)
            }
        };
        self.done.lock().unwrap().insert(id, report.clone());
        report
    }

    fn execute(&self, id: ScriptId) -> ScriptReport {
        self.execute_built(id, script(id, &self.options))
    }

    fn execute_built(&self, id: ScriptId, built: Result<Script>) -> ScriptReport {
        let start = Clock::start();
        let mut grants = BTreeMap::new();
        for anc in id.ancestors() {
            if let Some(rule) = anc.grants() {
                grants.insert(rule, Grant::issue(anc.as_str()));
            }
        }
        for &rule in id.hypothesis_rules() {
            grants.insert(rule, Grant::issue(id.as_str()));
        }
        let mut report = match built {
            Ok(s) => check::run(&s, &grants, self.options.emit_certificates),
            Err(e) => {
                let mut r = ScriptReport::skipped(id, Status::Failed, Vec::new());
                r.obligations.push(ObligationReport {
                    id: format!("{id}/00"),
                    kind: Kind::GeomIdentity,
                    statement: "script data loads".into(),
                    passed: false,
                    detail: e.to_string(),
                });
                r
            }
        };
        if report.passed() {
            report.grants = id.grants().map(|r| r.to_string()).into_iter().collect();
        }
        report.elapsed_ms = start.elapsed_ms();
        report
    }

    pub fn into_report(self) -> Report {
        Report::assemble(self.done.into_inner().unwrap().into_values().collect())
    }
}

/// Thread count from `ER_VERIFIER_THREADS`, if set to a positive integer.
pub fn thread_limit() -> Option<usize> {
    std::env::var("ER_VERIFIER_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs every script, level by level; scripts within a level run in parallel.
pub fn verify_all(options: &Options) -> Report {
    let verifier = Verifier::new(options.clone());
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_limit() {
        builder = builder.num_threads(n);
    }
    let run_levels = |v: &Verifier| {
        for level in ScriptId::levels() {
            rayon::scope(|s| {
                for id in level {
                    s.spawn(move |_| {
                        v.run_ready(id);
                    });
                }
            });
        }
    };
    match builder.build() {
        Ok(pool) => pool.install(|| run_levels(&verifier)),
        Err(_) => run_levels(&verifier),
    }
    verifier.into_report()
}

/// Runs one script together with whatever it depends on.
pub fn run_script(id: ScriptId, options: &Options) -> Report {
    let verifier = Verifier::new(options.clone());
    verifier.run(id);
    verifier.into_report()
}

/// Checks an already built (possibly modified) script after running its
/// dependencies as usual.
pub fn verify_custom(custom: Script, options: &Options) -> Report {
    let verifier = Verifier::new(options.clone());
    let id = custom.id;
    for &dep in id.dependencies() {
        verifier.run(dep);
    }
    let blocked: Vec<ScriptId> = id
        .dependencies()
        .iter()
        .copied()
        .filter(|&d| verifier.status(d) != Some(Status::Passed))
        .collect();
    let report = if blocked.is_empty() {
        verifier.execute_built(id, Ok(custom))
    } else {
        ScriptReport::skipped(id, Status::Blocked, blocked)
    };
    verifier.done.lock().unwrap().insert(id, report);
    verifier.into_report()
}

/// Rule set with evidence for every listed rule, obtained by running the
/// scripts that establish them. Hypothesis-only rules are refused.
pub fn proved_rules(ids: &[RuleId]) -> Result<RuleSet> {
    let mut rs = RuleSet::default();
    let verifier = Verifier::new(Options {
        emit_certificates: false,
        ..Options::default()
    });
    for &rule in ids {
        if rule.is_base() {
            rs = rs.with_unproved(rule);
            continue;
        }
        let source = ScriptId::ALL
            .into_iter()
            .find(|s| s.grants() == Some(rule))
            .ok_or_else(|| Error::UnprovedRule(rule.to_string()))?;
        if !verifier.run(source).passed() {
            return Err(Error::UnprovedRule(rule.to_string()));
        }
        rs = rs.with(rule, Grant::issue(source.as_str()));
    }
    Ok(rs)
}

/// Rule set for an instance's listed rules; the hypothesis rule of the
/// no-red-triangle case is accepted as an assumption of the instance.
pub fn instance_rules(ids: &[RuleId]) -> Result<RuleSet> {
    let (hyp, proved): (Vec<RuleId>, Vec<RuleId>) =
        ids.iter().partition(|&&r| r == RuleId::NoRedT3);
    let mut rs = proved_rules(&proved)?;
    for rule in hyp {
        rs = rs.with(rule, Grant::issue("instance hypothesis"));
    }
    Ok(rs)
}
