//! CNF problems over node colours, a DPLL solver that records a replayable
//! trace, and a brute-force reference.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::configuration::Colour;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarInfo {
    pub name: String,
    pub aux: bool,
}

/// Clauses over variables `1..=var_count`; `assumptions` are extra unit
/// literals, appended after `clauses` when clause ids are assigned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringProblem {
    varmap: Vec<VarInfo>,
    clauses: Vec<Vec<i32>>,
    assumptions: Vec<i32>,
}

impl ColoringProblem {
    pub fn new(varmap: Vec<VarInfo>, clauses: Vec<Vec<i32>>, assumptions: Vec<i32>) -> Self {
        ColoringProblem {
            varmap,
            clauses,
            assumptions,
        }
    }

    pub fn var_count(&self) -> usize {
        self.varmap.len()
    }

    pub fn node_var_count(&self) -> usize {
        self.varmap.iter().filter(|v| !v.aux).count()
    }

    pub fn varmap(&self) -> &[VarInfo] {
        &self.varmap
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn assumptions(&self) -> &[i32] {
        &self.assumptions
    }

    /// Clauses followed by one unit clause per assumption; indices are the
    /// clause ids used in traces.
    pub fn all_clauses(&self) -> Vec<Vec<i32>> {
        let mut all = self.clauses.clone();
        all.extend(self.assumptions.iter().map(|&l| vec![l]));
        all
    }

    pub fn var_of(&self, name: &str) -> Result<i32> {
        self.varmap
            .iter()
            .position(|v| v.name == name)
            .map(|i| i as i32 + 1)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn with_assumption(&self, lit: i32) -> Self {
        let mut p = self.clone();
        p.assumptions.push(lit);
        p
    }

    /// Checks whether a full assignment (index `v - 1` for variable `v`)
    /// satisfies every clause and assumption.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        let val = |l: i32| model[l.unsigned_abs() as usize - 1] == (l > 0);
        self.clauses.iter().all(|c| c.iter().any(|&l| val(l)))
            && self.assumptions.iter().all(|&l| val(l))
    }

    /// DIMACS CNF text; variable names go in `c var` comment lines and
    /// assumptions become unit clauses.
    pub fn to_dimacs(&self) -> String {
        let all = self.all_clauses();
        let mut s = String::new();
        for (i, v) in self.varmap.iter().enumerate() {
            let kind = if v.aux { "aux" } else { "node" };
            writeln!(s, "c var {} {} {}", i + 1, kind, v.name).unwrap();
        }
        writeln!(s, "p cnf {} {}", self.var_count(), all.len()).unwrap();
        for c in &all {
            for l in c {
                write!(s, "{l} ").unwrap();
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut declared: Option<(usize, usize)> = None;
        let mut names: Vec<Option<VarInfo>> = Vec::new();
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('c') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() == 4 && parts[0] == "var" {
                    let idx: usize = parts[1]
                        .parse()
                        .map_err(|_| Error::Parse(line.to_string()))?;
                    if idx == 0 {
                        return Err(Error::Parse(line.to_string()));
                    }
                    if names.len() < idx {
                        names.resize(idx, None);
                    }
                    names[idx - 1] = Some(VarInfo {
                        name: parts[3].to_string(),
                        aux: parts[2] == "aux",
                    });
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(Error::Parse(line.to_string()));
                }
                let v = parts[1]
                    .parse()
                    .map_err(|_| Error::Parse(line.to_string()))?;
                let c = parts[2]
                    .parse()
                    .map_err(|_| Error::Parse(line.to_string()))?;
                declared = Some((v, c));
                continue;
            }
            let Some((vars, _)) = declared else {
                return Err(Error::Parse("clause before header".into()));
            };
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| Error::Parse(tok.to_string()))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if l.unsigned_abs() as usize > vars {
                    return Err(Error::Parse(format!("literal {l} out of range")));
                } else {
                    current.push(l);
                }
            }
        }
        let (vars, count) = declared.ok_or_else(|| Error::Parse("missing header".into()))?;
        if !current.is_empty() || clauses.len() != count {
            return Err(Error::Parse("clause count mismatch".into()));
        }
        names.resize(vars.max(names.len()), None);
        let varmap = names
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.unwrap_or_else(|| VarInfo {
                    name: format!("x{}", i + 1),
                    aux: false,
                })
            })
            .collect();
        Ok(ColoringProblem::new(varmap, clauses, Vec::new()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Decide {
        lit: i32,
    },
    Propagate {
        lit: i32,
        clause: usize,
    },
    Conflict {
        clause: usize,
    },
    /// Undo back to the most recent unflipped decision and assert `lit`, its
    /// negation.
    Backtrack {
        lit: i32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Sat(Vec<bool>),
    Unsat,
}

impl Outcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub trace: Vec<TraceEvent>,
    pub stats: Stats,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        self.outcome.is_sat()
    }

    pub fn to_json(&self, problem: &ColoringProblem) -> serde_json::Value {
        let model = match &self.outcome {
            Outcome::Sat(m) => Some(
                problem
                    .varmap()
                    .iter()
                    .zip(m)
                    .filter(|(v, _)| !v.aux)
                    .map(|(v, &b)| (v.name.clone(), if b { Colour::Red } else { Colour::Blue }))
                    .collect::<std::collections::BTreeMap<_, _>>(),
            ),
            Outcome::Unsat => None,
        };
        serde_json::json!({
            "result": if self.is_sat() { "sat" } else { "unsat" },
            "model": model,
            "stats": self.stats,
            "trace": self.trace,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

struct Level {
    lit: i32,
    trail_start: usize,
    flipped: bool,
}

struct Search<'a> {
    clauses: &'a [Vec<i32>],
    /// Per clause, positions of the two watched literals.
    watched: Vec<[usize; 2]>,
    /// Clause ids watching each literal, indexed by `lit_index`.
    watches: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<i32>,
    qhead: usize,
    levels: Vec<Level>,
    trace: Option<Vec<TraceEvent>>,
    stats: Stats,
}

fn lit_index(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize) + usize::from(l < 0)
}

impl<'a> Search<'a> {
    fn new(var_count: usize, clauses: &'a [Vec<i32>], record: bool) -> Self {
        let mut watches = vec![Vec::new(); 2 * var_count + 2];
        let mut watched = Vec::with_capacity(clauses.len());
        for (cid, c) in clauses.iter().enumerate() {
            if c.len() >= 2 {
                watches[lit_index(c[0])].push(cid);
                watches[lit_index(c[1])].push(cid);
            }
            watched.push([0, 1]);
        }
        Search {
            clauses,
            watched,
            watches,
            value: vec![0; var_count + 1],
            trail: Vec::new(),
            qhead: 0,
            levels: Vec::new(),
            trace: record.then(Vec::new),
            stats: Stats::default(),
        }
    }

    fn lit_value(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn record(&mut self, e: TraceEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(e);
        }
    }

    fn assign(&mut self, l: i32) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.value[l.unsigned_abs() as usize] = 0;
        }
        self.qhead = self.qhead.min(len);
    }

    /// Initial unit clauses, in clause order. Returns a conflicting clause.
    fn initial_units(&mut self) -> Option<usize> {
        for cid in 0..self.clauses.len() {
            let c = &self.clauses[cid];
            match c.len() {
                0 => return Some(cid),
                1 => {
                    let l = c[0];
                    match self.lit_value(l) {
                        1 => {}
                        -1 => return Some(cid),
                        _ => {
                            self.assign(l);
                            self.stats.propagations += 1;
                            self.record(TraceEvent::Propagate {
                                lit: l,
                                clause: cid,
                            });
                        }
                    }
                }
                _ => {}
            }
        }
        None
    }

    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let falsified = -self.trail[self.qhead];
            self.qhead += 1;
            let idx = lit_index(falsified);
            let mut list = std::mem::take(&mut self.watches[idx]);
            let mut i = 0;
            let mut conflict = None;
            while i < list.len() {
                let cid = list[i];
                let clause = &self.clauses[cid];
                let [w0, w1] = self.watched[cid];
                let (mine, other) = if clause[w0] == falsified {
                    (0, w1)
                } else {
                    (1, w0)
                };
                if self.lit_value(clause[other]) == 1 {
                    i += 1;
                    continue;
                }
                let replacement = (0..clause.len())
                    .find(|&k| k != w0 && k != w1 && self.lit_value(clause[k]) != -1);
                if let Some(k) = replacement {
                    self.watched[cid][mine] = k;
                    self.watches[lit_index(clause[k])].push(cid);
                    list.swap_remove(i);
                    continue;
                }
                let unit = clause[other];
                if self.lit_value(unit) == -1 {
                    conflict = Some(cid);
                    break;
                }
                self.assign(unit);
                self.stats.propagations += 1;
                self.record(TraceEvent::Propagate {
                    lit: unit,
                    clause: cid,
                });
                i += 1;
            }
            let rest = std::mem::replace(&mut self.watches[idx], list);
            self.watches[idx].extend(rest);
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    /// Pops to the nearest unflipped decision (restricted to variables
    /// `<= max_var`) and asserts its negation. Returns false when none is left.
    fn backtrack(&mut self, max_var: usize) -> bool {
        loop {
            let Some(level) = self.levels.pop() else {
                return false;
            };
            if level.flipped || level.lit.unsigned_abs() as usize > max_var {
                continue;
            }
            self.undo_to(level.trail_start);
            let lit = -level.lit;
            self.record(TraceEvent::Backtrack { lit });
            self.levels.push(Level {
                lit,
                trail_start: level.trail_start,
                flipped: true,
            });
            self.assign(lit);
            return true;
        }
    }

    /// Runs the search, calling `on_model` for each model; after a model the
    /// search resumes by flipping the last decision on a variable `<= resume_var`.
    fn run(&mut self, resume_var: usize, mut on_model: impl FnMut(&[i8]) -> Flow) {
        let var_count = self.value.len() - 1;
        if let Some(cid) = self.initial_units() {
            self.stats.conflicts += 1;
            self.record(TraceEvent::Conflict { clause: cid });
            return;
        }
        loop {
            if let Some(cid) = self.propagate() {
                self.stats.conflicts += 1;
                self.record(TraceEvent::Conflict { clause: cid });
                if !self.backtrack(var_count) {
                    return;
                }
                continue;
            }
            match (1..=var_count).find(|&v| self.value[v] == 0) {
                Some(v) => {
                    let lit = v as i32;
                    self.stats.decisions += 1;
                    self.record(TraceEvent::Decide { lit });
                    self.levels.push(Level {
                        lit,
                        trail_start: self.trail.len(),
                        flipped: false,
                    });
                    self.assign(lit);
                }
                None => {
                    if on_model(&self.value[1..]) == Flow::Stop || !self.backtrack(resume_var) {
                        return;
                    }
                }
            }
        }
    }
}

/// Decides satisfiability. Variables are branched lowest index first, red
/// (true) first.
pub fn solve(problem: &ColoringProblem) -> Verdict {
    let all = problem.all_clauses();
    let mut search = Search::new(problem.var_count(), &all, true);
    let mut model = None;
    search.run(problem.var_count(), |v| {
        model = Some(v.iter().map(|&x| x > 0).collect());
        Flow::Stop
    });
    Verdict {
        outcome: model.map_or(Outcome::Unsat, Outcome::Sat),
        trace: search.trace.take().unwrap_or_default(),
        stats: search.stats,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Forced {
    Red,
    Blue,
    Free,
    Contradictory,
}

/// Whether the constraints force the colour of variable `var`.
pub fn forced_color(problem: &ColoringProblem, var: i32) -> Forced {
    let red = solve(&problem.with_assumption(var)).is_sat();
    let blue = solve(&problem.with_assumption(-var)).is_sat();
    match (red, blue) {
        (true, true) => Forced::Free,
        (true, false) => Forced::Red,
        (false, true) => Forced::Blue,
        (false, false) => Forced::Contradictory,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct models projected onto the node variables.
    pub models: Vec<Vec<bool>>,
    pub cap_hit: bool,
}

/// Enumerates node-variable projections of all models, stopping after `cap`.
pub fn enumerate_models(problem: &ColoringProblem, cap: usize) -> Enumeration {
    enumerate_projections(problem, problem.node_var_count(), cap)
}

/// Enumerates the distinct restrictions of models to variables `1..=k`
/// (each one extends to a full model), stopping after `cap`.
pub fn enumerate_projections(problem: &ColoringProblem, k: usize, cap: usize) -> Enumeration {
    let all = problem.all_clauses();
    let k = k.min(problem.var_count());
    let mut search = Search::new(problem.var_count(), &all, false);
    let mut models = Vec::new();
    let mut cap_hit = false;
    search.run(k, |v| {
        if models.len() >= cap {
            cap_hit = true;
            return Flow::Stop;
        }
        models.push(v[..k].iter().map(|&x| x > 0).collect());
        Flow::Continue
    });
    Enumeration { models, cap_hit }
}

pub const BRUTE_FORCE_LIMIT: usize = 25;

/// Exhaustive reference decision procedure over the variables not fixed by
/// assumptions; returns the first model in binary counting order of the free
/// variables (lowest index is the lowest bit).
pub fn brute_force(problem: &ColoringProblem) -> Result<Outcome> {
    let n = problem.var_count();
    let mut fixed = vec![None; n];
    for &l in problem.assumptions() {
        let v = l.unsigned_abs() as usize - 1;
        match fixed[v] {
            Some(b) if b != (l > 0) => return Ok(Outcome::Unsat),
            _ => fixed[v] = Some(l > 0),
        }
    }
    let free: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    if free.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyVariables(free.len(), BRUTE_FORCE_LIMIT));
    }
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    // Per clause: satisfied outright by a fixed literal, or (pos, neg) masks
    // over the free variables.
    let mut masks = Vec::new();
    for c in problem.clauses() {
        let mut sat = false;
        let (mut pos, mut neg) = (0u32, 0u32);
        for &l in c {
            let v = l.unsigned_abs() as usize - 1;
            match fixed[v] {
                Some(b) => sat |= b == (l > 0),
                None if l > 0 => pos |= 1 << slot[v],
                None => neg |= 1 << slot[v],
            }
        }
        if !sat {
            masks.push((pos, neg));
        }
    }
    for a in 0..(1u64 << free.len()) {
        let a = a as u32;
        if masks
            .iter()
            .all(|&(pos, neg)| a & pos != 0 || !a & neg != 0)
        {
            let model = (0..n)
                .map(|v| fixed[v].unwrap_or_else(|| a >> slot[v] & 1 == 1))
                .collect();
            return Ok(Outcome::Sat(model));
        }
    }
    Ok(Outcome::Unsat)
}

/// Re-checks a trace event by event against the problem's clauses.
///
/// A valid UNSAT trace ends in a conflict with no unflipped decision left; a
/// valid SAT trace ends with every clause satisfied.
pub fn replay_trace(problem: &ColoringProblem, verdict: &Verdict) -> Result<()> {
    let all = problem.all_clauses();
    let n = problem.var_count();
    let mut value = vec![0i8; n + 1];
    let mut trail: Vec<i32> = Vec::new();
    let mut levels: Vec<(i32, usize, bool)> = Vec::new();
    let lv = |value: &[i8], l: i32| {
        let v = value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    };
    let bad = |i: usize, msg: &str| Error::Invalid(format!("trace event {i}: {msg}"));
    let check_lit = |i: usize, l: i32| {
        if l == 0 || l.unsigned_abs() as usize > n {
            Err(bad(i, "literal out of range"))
        } else {
            Ok(())
        }
    };
    let mut after_conflict = false;
    for (i, e) in verdict.trace.iter().enumerate() {
        if after_conflict && !matches!(e, TraceEvent::Backtrack { .. }) {
            return Err(bad(i, "conflict not followed by backtrack"));
        }
        match *e {
            TraceEvent::Decide { lit } => {
                check_lit(i, lit)?;
                if lv(&value, lit) != 0 {
                    return Err(bad(i, "decision on assigned variable"));
                }
                levels.push((lit, trail.len(), false));
                value[lit.unsigned_abs() as usize] = if lit > 0 { 1 } else { -1 };
                trail.push(lit);
            }
            TraceEvent::Propagate { lit, clause } => {
                check_lit(i, lit)?;
                let c = all.get(clause).ok_or_else(|| bad(i, "unknown clause"))?;
                if !c.contains(&lit) || lv(&value, lit) != 0 {
                    return Err(bad(i, "propagated literal not open in clause"));
                }
                if c.iter().any(|&l| l != lit && lv(&value, l) != -1) {
                    return Err(bad(i, "clause is not unit"));
                }
                value[lit.unsigned_abs() as usize] = if lit > 0 { 1 } else { -1 };
                trail.push(lit);
            }
            TraceEvent::Conflict { clause } => {
                let c = all.get(clause).ok_or_else(|| bad(i, "unknown clause"))?;
                if c.iter().any(|&l| lv(&value, l) != -1) {
                    return Err(bad(i, "clause is not falsified"));
                }
                after_conflict = true;
            }
            TraceEvent::Backtrack { lit } => {
                if !after_conflict {
                    return Err(bad(i, "backtrack without conflict"));
                }
                after_conflict = false;
                let (dlit, start) = loop {
                    match levels.pop() {
                        None => return Err(bad(i, "no decision to flip")),
                        Some((_, _, true)) => continue,
                        Some((l, s, false)) => break (l, s),
                    }
                };
                if lit != -dlit {
                    return Err(bad(i, "backtrack does not flip the latest decision"));
                }
                for l in trail.drain(start..) {
                    value[l.unsigned_abs() as usize] = 0;
                }
                levels.push((lit, start, true));
                value[lit.unsigned_abs() as usize] = if lit > 0 { 1 } else { -1 };
                trail.push(lit);
            }
        }
    }
    match &verdict.outcome {
        Outcome::Unsat => {
            if !after_conflict {
                return Err(Error::Invalid(
                    "UNSAT trace does not end in a conflict".into(),
                ));
            }
            if levels.iter().any(|&(_, _, flipped)| !flipped) {
                return Err(Error::Invalid(
                    "UNSAT trace leaves a branch unexplored".into(),
                ));
            }
        }
        Outcome::Sat(model) => {
            if after_conflict {
                return Err(Error::Invalid("SAT trace ends in a conflict".into()));
            }
            for v in 1..=n {
                if value[v] != 0 && (value[v] > 0) != model[v - 1] {
                    return Err(Error::Invalid(format!(
                        "model disagrees with trace at variable {v}"
                    )));
                }
            }
            if !problem.satisfied_by(model) {
                return Err(Error::Invalid("model violates a clause".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn problem(n: usize, clauses: Vec<Vec<i32>>) -> ColoringProblem {
        let varmap = (1..=n)
            .map(|i| VarInfo {
                name: format!("v{i}"),
                aux: false,
            })
            .collect();
        ColoringProblem::new(varmap, clauses, Vec::new())
    }

    #[test]
    fn small_cases() {
        let p = problem(2, vec![vec![-1, -2], vec![1], vec![2]]);
        let v = solve(&p);
        assert!(!v.is_sat());
        replay_trace(&p, &v).unwrap();
        let p = problem(2, vec![vec![-1, -2]]);
        let v = solve(&p);
        assert_eq!(v.outcome, Outcome::Sat(vec![true, false]));
        replay_trace(&p, &v).unwrap();
        assert!(!solve(&problem(1, vec![vec![]])).is_sat());
        assert!(solve(&problem(0, vec![])).is_sat());
    }

    #[test]
    fn forced_colours() {
        let p = problem(2, vec![vec![-1, -2], vec![1]]);
        assert_eq!(forced_color(&p, 2), Forced::Blue);
        assert_eq!(forced_color(&p, 1), Forced::Red);
        assert_eq!(forced_color(&problem(2, vec![]), 1), Forced::Free);
    }

    #[test]
    fn tampered_trace_is_rejected() {
        let p = problem(3, vec![vec![-1, -2], vec![1, 2], vec![-1, 2], vec![1, -2]]);
        let v = solve(&p);
        assert!(!v.is_sat());
        replay_trace(&p, &v).unwrap();
        let mut cut = v.clone();
        cut.trace.truncate(cut.trace.len() - 1);
        assert!(replay_trace(&p, &cut).is_err());
        let mut wrong = v.clone();
        if let Some(TraceEvent::Propagate { clause, .. }) = wrong
            .trace
            .iter_mut()
            .find(|e| matches!(e, TraceEvent::Propagate { .. }))
        {
            *clause = (*clause + 1) % 4;
        }
        assert!(replay_trace(&p, &wrong).is_err());
    }

    #[test]
    fn enumeration_counts_independent_sets() {
        // Independent sets of a path on four vertices: 8.
        let p = problem(4, vec![vec![-1, -2], vec![-2, -3], vec![-3, -4]]);
        let e = enumerate_models(&p, 100);
        assert_eq!(e.models.len(), 8);
        assert!(!e.cap_hit);
        let capped = enumerate_models(&p, 3);
        assert_eq!(capped.models.len(), 3);
        assert!(capped.cap_hit);
    }

    #[test]
    fn enumeration_projects_away_aux() {
        let mut varmap: Vec<VarInfo> = (1..=2)
            .map(|i| VarInfo {
                name: format!("v{i}"),
                aux: false,
            })
            .collect();
        varmap.push(VarInfo {
            name: "s".into(),
            aux: true,
        });
        // v1 ∨ v2, with the aux variable unconstrained.
        let p = ColoringProblem::new(varmap, vec![vec![1, 2]], Vec::new());
        assert_eq!(enumerate_models(&p, 100).models.len(), 3);
    }

    #[test]
    fn dimacs_round_trip() {
        let p = problem(3, vec![vec![1, -2], vec![3]]).with_assumption(-1);
        let text = p.to_dimacs();
        let back = ColoringProblem::from_dimacs(&text).unwrap();
        assert_eq!(back.clauses(), &p.all_clauses()[..]);
        assert_eq!(back.varmap(), p.varmap());
        assert_eq!(back.to_dimacs(), text);
        assert!(ColoringProblem::from_dimacs("1 2 0\n").is_err());
        assert!(ColoringProblem::from_dimacs("p cnf 1 1\n2 0\n").is_err());
    }

    #[test]
    fn brute_force_limit() {
        assert!(matches!(
            brute_force(&problem(26, vec![])),
            Err(Error::TooManyVariables(26, 25))
        ));
        let fixed = problem(26, vec![vec![1, 2]]).with_assumption(-1);
        assert!(matches!(brute_force(&fixed), Ok(Outcome::Sat(m)) if m[1] && !m[0]));
    }

    fn cnf() -> impl Strategy<Value = (usize, Vec<Vec<i32>>)> {
        (1usize..=10).prop_flat_map(|n| {
            let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(lit, 1..=3), 0..30),
            )
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force((n, clauses) in cnf()) {
            let p = problem(n, clauses);
            let v = solve(&p);
            let b = brute_force(&p).unwrap();
            prop_assert_eq!(v.is_sat(), b.is_sat());
            replay_trace(&p, &v).unwrap();
        }

        #[test]
        fn enumeration_matches_brute_count((n, clauses) in cnf()) {
            let p = problem(n, clauses);
            let e = enumerate_models(&p, usize::MAX);
            let count = (0u32..1 << n)
                .filter(|a| p.satisfied_by(&(0..n).map(|i| a >> i & 1 == 1).collect::<Vec<_>>()))
                .count();
            prop_assert_eq!(e.models.len(), count);
            for m in &e.models {
                prop_assert!(p.satisfied_by(m));
            }
        }
    }
}
