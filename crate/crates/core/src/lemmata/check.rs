use std::collections::{BTreeMap, BTreeSet};

use crate::configuration::{
    emit_clauses, placements_containing, t6_extensions, Colour, Grant, Role, RuleId, RuleSet,
    Template,
};
use crate::error::{Error, Result};
use crate::geometry::{
    collinear, dist2, lattice_coords, lattice_symmetries, lattice_vectors_of_norm2, Point,
};
use crate::solver::{replay_trace, solve, ColoringProblem};
use crate::tilings::{distance5_invariance, validate_pattern};

use super::certificate::{Certificate, Query};
use super::{Check, Figure, Identity, ObligationReport, Script, ScriptReport, Status, Step};

type Known = BTreeMap<String, Colour>;

fn figure<'a>(script: &'a Script, key: &str) -> Result<&'a Figure> {
    script
        .figures
        .get(key)
        .ok_or_else(|| Error::Invalid(format!("no figure {key}")))
}

fn canon(fig: &Figure, name: &str) -> Result<String> {
    let idx = fig.cfg.index_of(name)?;
    Ok(fig.cfg.node(idx).name.clone())
}

fn point<'a>(fig: &'a Figure, name: &str) -> Result<&'a Point> {
    fig.cfg.point_of(name)
}

fn hypotheses(fig: &Figure) -> Result<Known> {
    let mut out = Known::new();
    for (n, &c) in &fig.hypotheses {
        out.insert(canon(fig, n)?, c);
    }
    Ok(out)
}

fn rule_set(fig: &Figure, grants: &BTreeMap<RuleId, Grant>) -> Result<RuleSet> {
    let mut rs = RuleSet::default();
    for &rule in &fig.rules {
        rs = if rule.is_base() {
            rs.with_unproved(rule)
        } else {
            let grant = grants
                .get(&rule)
                .ok_or_else(|| Error::UnprovedRule(rule.to_string()))?;
            rs.with(rule, grant.clone())
        };
    }
    Ok(rs)
}

fn fmt_point(p: &Point) -> String {
    format!("({}, {})", p.x, p.y)
}

/// Evaluates a check that needs no solver. `Ok(detail)` on success.
fn static_check(script: &Script, check: &Check) -> Result<std::result::Result<String, String>> {
    Ok(match check {
        Check::Geom {
            figure: f,
            identity,
        } => {
            let fig = figure(script, f)?;
            match identity {
                Identity::Dist2 { a, b, value } => {
                    let d = dist2(point(fig, a)?, point(fig, b)?);
                    let text = format!(
                        "dist2({a}, {b}) = {d} with {a} = {}, {b} = {}",
                        fmt_point(point(fig, a)?),
                        fmt_point(point(fig, b)?)
                    );
                    if &d == value {
                        Ok(text)
                    } else {
                        Err(format!("{text}, expected {value}"))
                    }
                }
                Identity::Collinear { a, b, c } => {
                    if collinear(point(fig, a)?, point(fig, b)?, point(fig, c)?) {
                        Ok(format!("{a}, {b}, {c} are collinear"))
                    } else {
                        Err(format!("{a}, {b}, {c} are not collinear"))
                    }
                }
            }
        }
        Check::Chain { figure: f, names } => {
            let fig = figure(script, f)?;
            match chain_present(fig, names)? {
                true => Ok(format!("{} is an ℓ{}", names.join(""), names.len())),
                false => Err(format!(
                    "{} is not an ℓ{} of the figure",
                    names.join(""),
                    names.len()
                )),
            }
        }
        Check::Pattern {
            figure: f,
            template,
            names,
            ordered,
        } => {
            let fig = figure(script, f)?;
            let tpl = Template::new(*template);
            let idx: Vec<usize> = names
                .iter()
                .map(|n| fig.cfg.index_of(n))
                .collect::<Result<_>>()?;
            let ok = if *ordered {
                fig.cfg.is_embedding(&tpl, &idx)
            } else {
                let want: BTreeSet<usize> = idx.iter().copied().collect();
                fig.cfg
                    .match_template(&tpl)
                    .into_iter()
                    .any(|e| e.into_iter().collect::<BTreeSet<_>>() == want)
            };
            if ok {
                Ok(format!("{} is a copy of {template:?}", names.join(",")))
            } else {
                Err(format!("{} is not a copy of {template:?}", names.join(",")))
            }
        }
        Check::Completions {
            figure: f,
            template,
            base,
            expected,
            exact,
        } => {
            let fig = figure(script, f)?;
            let base_pts: Vec<&Point> =
                base.iter().map(|n| point(fig, n)).collect::<Result<_>>()?;
            let mut found: Vec<Point> = Vec::new();
            for placement in placements_containing(&Template::new(*template), &base_pts) {
                for p in placement {
                    if !base_pts.contains(&&p) && !found.contains(&p) {
                        found.push(p);
                    }
                }
            }
            let want: Vec<&Point> = expected
                .iter()
                .map(|n| point(fig, n))
                .collect::<Result<_>>()?;
            let missing: Vec<&String> = expected
                .iter()
                .zip(&want)
                .filter(|(_, p)| !found.contains(p))
                .map(|(n, _)| n)
                .collect();
            let extra: Vec<String> = found
                .iter()
                .filter(|p| !want.contains(p))
                .map(|p| {
                    fig.cfg
                        .find_point(p)
                        .map_or_else(|| fmt_point(p), |i| fig.cfg.node(i).name.clone())
                })
                .collect();
            if !missing.is_empty() {
                Err(format!("not completions of {template:?}: {missing:?}"))
            } else if *exact && !extra.is_empty() {
                Err(format!("further completions of {template:?}: {extra:?}"))
            } else if extra.is_empty() {
                Ok(format!(
                    "completions of {template:?} are exactly {}",
                    expected.join(",")
                ))
            } else {
                Ok(format!(
                    "{} complete {template:?}; others: {}",
                    expected.join(","),
                    extra.join(",")
                ))
            }
        }
        Check::Image {
            figure: f,
            isometry,
            from,
            to,
            ordered,
        } => {
            let fig = figure(script, f)?;
            let images: Vec<Point> = from
                .iter()
                .map(|n| isometry.apply(point(fig, n)?))
                .collect::<Result<_>>()?;
            let targets: Vec<&Point> = to.iter().map(|n| point(fig, n)).collect::<Result<_>>()?;
            let ok = images.len() == targets.len()
                && if *ordered {
                    images.iter().zip(&targets).all(|(a, b)| a == *b)
                } else {
                    images.iter().all(|p| targets.contains(&p))
                        && targets.iter().all(|p| images.contains(p))
                };
            if ok {
                Ok(format!("{} maps to {}", from.join(","), to.join(",")))
            } else {
                Err(format!(
                    "image of {} is not {}",
                    from.join(","),
                    to.join(",")
                ))
            }
        }
        Check::PatternValid { pattern, radius } => {
            let rep = validate_pattern(pattern, *radius)?;
            let text = format!(
                "pattern {} at radius {}: {} red unit pairs, {} blue ℓ5",
                rep.pattern, rep.radius, rep.red_unit_pairs, rep.blue_l5
            );
            if rep.pass {
                Ok(text)
            } else {
                Err(format!("{text}; first defect {:?}", rep.first_defect))
            }
        }
        Check::Distance5 { pattern } => {
            if distance5_invariance(pattern) {
                Ok(format!(
                    "pattern {} is invariant under all norm-25 translations",
                    pattern.id
                ))
            } else {
                Err(format!(
                    "pattern {} changes under a norm-25 translation",
                    pattern.id
                ))
            }
        }
        Check::NormClosure { norm2 } => {
            let vs: BTreeSet<(i64, i64)> = lattice_vectors_of_norm2(*norm2).into_iter().collect();
            let closed = lattice_symmetries()
                .iter()
                .all(|g| vs.iter().all(|&v| vs.contains(&g(v))));
            if closed {
                Ok(format!(
                    "the {} lattice vectors of norm² {norm2} are closed under the 12 symmetries",
                    vs.len()
                ))
            } else {
                Err(format!("norm² {norm2} vectors are not symmetric"))
            }
        }
        _ => unreachable!("solver check"),
    })
}

fn chain_present(fig: &Figure, names: &[String]) -> Result<bool> {
    let idx: Vec<usize> = names
        .iter()
        .map(|n| fig.cfg.index_of(n))
        .collect::<Result<_>>()?;
    let mut rev = idx.clone();
    rev.reverse();
    Ok(fig
        .cfg
        .ell_chains(idx.len())
        .into_iter()
        .any(|c| c == idx || c == rev))
}

/// Replays a forcing argument by hand: assumes `node` has the other colour
/// and checks that the steps reach a contradiction. Returns every node the
/// argument touches.
pub(super) fn derive(
    fig: &Figure,
    known: &Known,
    node: &str,
    colour: Colour,
    steps: &[Step],
) -> Result<std::result::Result<BTreeSet<String>, String>> {
    let mut state = known.clone();
    let node = canon(fig, node)?;
    if state.get(&node) == Some(&colour.other()) {
        return Ok(Err(format!("{node} is already known {}", colour.other())));
    }
    state.insert(node.clone(), colour.other());
    let mut scope = BTreeSet::from([node]);
    let has = |r: RuleId| fig.rules.contains(&r);
    for (i, step) in steps.iter().enumerate() {
        let last = i + 1 == steps.len();
        let contradiction = match step {
            Step::Unit { node, from } => {
                if !has(RuleId::RedL2Forbidden) {
                    return Ok(Err("unit-distance rule not available".into()));
                }
                let (n, f) = (canon(fig, node)?, canon(fig, from)?);
                if !dist2(point(fig, &n)?, point(fig, &f)?).is_one() {
                    return Ok(Err(format!("{node} is not at distance 1 from {from}")));
                }
                if state.get(&f) != Some(&Colour::Red) {
                    return Ok(Err(format!("{from} is not known red")));
                }
                scope.insert(n.clone());
                scope.insert(f);
                if state.get(&n) == Some(&Colour::Red) {
                    true
                } else {
                    state.insert(n, Colour::Blue);
                    false
                }
            }
            Step::Chain(names) => {
                if !has(RuleId::BlueL5Forbidden) {
                    return Ok(Err("blue ℓ5 rule not available".into()));
                }
                if !chain_present(fig, names)? {
                    return Ok(Err(format!("{} is not an ℓ5", names.join(""))));
                }
                let canon_names: Vec<String> =
                    names.iter().map(|n| canon(fig, n)).collect::<Result<_>>()?;
                scope.extend(canon_names.iter().cloned());
                match settle(
                    &mut state,
                    &canon_names
                        .iter()
                        .map(|n| (n.clone(), Role::Blue))
                        .collect::<Vec<_>>(),
                ) {
                    Ok(c) => c,
                    Err(e) => return Ok(Err(format!("{}: {e}", names.join("")))),
                }
            }
            Step::Rule { rule, names } => {
                if !has(*rule) {
                    return Ok(Err(format!("{rule} not available")));
                }
                let Some(tpl) = rule.pattern() else {
                    return Ok(Err(format!("{rule} is not a pattern rule")));
                };
                let idx: Vec<usize> = names
                    .iter()
                    .map(|n| fig.cfg.index_of(n))
                    .collect::<Result<_>>()?;
                if !fig.cfg.is_embedding(&tpl, &idx) {
                    return Ok(Err(format!(
                        "{} is not a copy of the {rule} pattern",
                        names.join(",")
                    )));
                }
                let canon_names: Vec<String> =
                    idx.iter().map(|&i| fig.cfg.node(i).name.clone()).collect();
                scope.extend(canon_names.iter().cloned());
                let roles: Vec<(String, Role)> = canon_names
                    .into_iter()
                    .zip(tpl.roles.iter().copied())
                    .collect();
                match settle(&mut state, &roles) {
                    Ok(c) => c,
                    Err(e) => return Ok(Err(format!("{rule} on {}: {e}", names.join(",")))),
                }
            }
            Step::Extension { triangle, t6 } => {
                if !has(RuleId::T3T6Extension) {
                    return Ok(Err("extension rule not available".into()));
                }
                let tri: Vec<&Point> = triangle
                    .iter()
                    .map(|n| point(fig, n))
                    .collect::<Result<_>>()?;
                for n in triangle {
                    if state.get(&canon(fig, n)?) != Some(&Colour::Red) {
                        return Ok(Err(format!("{n} is not known red")));
                    }
                }
                let exts = t6_extensions([tri[0], tri[1], tri[2]]);
                let want: Vec<&Point> = t6.iter().map(|n| point(fig, n)).collect::<Result<_>>()?;
                if !exts
                    .iter()
                    .any(|e| want.iter().all(|p| e.contains(p)) && e.len() == want.len())
                {
                    return Ok(Err(format!(
                        "{} is not a T6 through {}",
                        t6.join(""),
                        triangle.join("")
                    )));
                }
                let mut alive = 0;
                for ext in &exts {
                    let mut dead = false;
                    for p in ext {
                        let Some(i) = fig.cfg.find_point(p) else {
                            return Ok(Err(format!(
                                "extension point {} is not in the figure",
                                fmt_point(p)
                            )));
                        };
                        let name = fig.cfg.node(i).name.clone();
                        dead |= state.get(&name) == Some(&Colour::Blue);
                        scope.insert(name);
                    }
                    alive += usize::from(!dead);
                }
                if alive > 0 {
                    return Ok(Err(format!(
                        "{alive} placements of T6 through {} remain open",
                        triangle.join("")
                    )));
                }
                true
            }
        };
        if contradiction != last {
            return Ok(Err(if contradiction {
                format!("contradiction already at step {}", i + 1)
            } else {
                "the steps do not reach a contradiction".into()
            }));
        }
    }
    if steps.is_empty() {
        return Ok(Err("no steps".into()));
    }
    Ok(Ok(scope))
}

/// Applies a forbidden role assignment: if every node matches its role the
/// result is a contradiction; if all but one match, that one gets the other
/// colour.
fn settle(state: &mut Known, roles: &[(String, Role)]) -> std::result::Result<bool, String> {
    let mut open = Vec::new();
    for (n, role) in roles {
        let want = match role {
            Role::Red => Colour::Red,
            Role::Blue => Colour::Blue,
            Role::Any => continue,
        };
        match state.get(n) {
            Some(&c) if c == want => {}
            Some(_) => return Err(format!("{n} already avoids the pattern")),
            None => open.push((n.clone(), want)),
        }
    }
    match open.as_slice() {
        [] => Ok(true),
        [(n, want)] => {
            state.insert(n.clone(), want.other());
            Ok(false)
        }
        _ => Err(format!("{} nodes undetermined", open.len())),
    }
}

fn solve_checked(problem: &ColoringProblem, expect_sat: bool) -> (bool, Query, String) {
    let verdict = solve(problem);
    let replay = replay_trace(problem, &verdict);
    let ok = verdict.is_sat() == expect_sat && replay.is_ok();
    let detail = match (&replay, verdict.is_sat()) {
        (Err(e), _) => format!("trace replay failed: {e}"),
        (Ok(()), true) => "sat".to_string(),
        (Ok(()), false) => "unsat".to_string(),
    };
    let q = Query::new(expect_sat, problem, &verdict);
    (ok, q, detail)
}

pub(super) fn run(script: &Script, grants: &BTreeMap<RuleId, Grant>, emit: bool) -> ScriptReport {
    let n = script.obligations.len();
    let mut reports: Vec<Option<ObligationReport>> = vec![None; n];
    let mut certificates = Vec::new();
    let id = |i: usize| format!("{}/{:02}", script.id, i + 1);
    let mk = |i: usize, passed: bool, detail: String| ObligationReport {
        id: id(i),
        kind: script.obligations[i].check.kind(),
        statement: script.obligations[i].statement.clone(),
        passed,
        detail,
    };

    // Transcription pass: every geometric claim and every forcing argument is
    // checked against the coordinates before any solving.
    let mut declared: BTreeMap<String, Known> = BTreeMap::new();
    let mut scopes: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    let mut transcription_ok = true;
    for (i, ob) in script.obligations.iter().enumerate() {
        match &ob.check {
            Check::Forced {
                figure: f,
                node,
                colour,
                steps,
            } => {
                let outcome = figure(script, f).and_then(|fig| {
                    let known = declared.entry(f.clone()).or_insert(hypotheses(fig)?);
                    let r = derive(fig, known, node, *colour, steps)?;
                    known.insert(canon(fig, node)?, *colour);
                    Ok(r)
                });
                match outcome {
                    Ok(Ok(scope)) => {
                        scopes.insert(i, scope);
                    }
                    Ok(Err(e)) => {
                        transcription_ok = false;
                        reports[i] = Some(mk(i, false, format!("argument check failed: {e}")));
                    }
                    Err(e) => {
                        transcription_ok = false;
                        reports[i] = Some(mk(i, false, e.to_string()));
                    }
                }
            }
            c if c.kind().uses_solver() => {}
            c => {
                let r = match static_check(script, c) {
                    Ok(r) => r,
                    Err(e) => Err(e.to_string()),
                };
                transcription_ok &= r.is_ok();
                let (passed, detail) = match r {
                    Ok(d) => (true, d),
                    Err(d) => (false, d),
                };
                if emit {
                    certificates.push(Certificate::restated(
                        id(i),
                        c.kind(),
                        &ob.statement,
                        &detail,
                    ));
                }
                reports[i] = Some(mk(i, passed, detail));
            }
        }
    }

    let mut facts: BTreeMap<String, Known> = BTreeMap::new();
    for (i, ob) in script.obligations.iter().enumerate() {
        if reports[i].is_some() {
            continue;
        }
        if !transcription_ok {
            reports[i] = Some(mk(i, false, "not run: transcription check failed".into()));
            continue;
        }
        let result = solver_check(script, grants, &ob.check, scopes.get(&i), &mut facts);
        let (passed, detail, queries) = match result {
            Ok(r) => r,
            Err(e) => (false, e.to_string(), Vec::new()),
        };
        if emit {
            certificates.push(Certificate::solved(
                id(i),
                ob.check.kind(),
                &ob.statement,
                queries,
            ));
        }
        reports[i] = Some(mk(i, passed, detail));
    }

    let obligations: Vec<ObligationReport> = reports
        .into_iter()
        .map(|r| r.expect("every obligation ran"))
        .collect();
    let passed = obligations.iter().all(|o| o.passed);
    ScriptReport {
        id: script.id,
        status: if passed {
            Status::Passed
        } else {
            Status::Failed
        },
        blocked_by: Vec::new(),
        grants: Vec::new(),
        notes: script.notes.clone(),
        obligations,
        elapsed_ms: 0,
        certificates,
    }
}

fn solver_check(
    script: &Script,
    grants: &BTreeMap<RuleId, Grant>,
    check: &Check,
    scope: Option<&BTreeSet<String>>,
    facts: &mut BTreeMap<String, Known>,
) -> Result<(bool, String, Vec<Query>)> {
    match check {
        Check::Forced {
            figure: f,
            node,
            colour,
            ..
        } => {
            let fig = figure(script, f)?;
            let scope = scope.ok_or_else(|| Error::Invalid("missing scope".into()))?;
            let names: Vec<&String> = scope.iter().collect();
            let cfg = fig.cfg.restrict(&names)?;
            let mut fixed = Known::new();
            let known = facts.entry(f.clone()).or_default();
            for (n, &c) in hypotheses(fig)?.iter().chain(known.iter()) {
                if scope.contains(n) {
                    fixed.insert(n.clone(), c);
                }
            }
            let problem = emit_clauses(&cfg, &rule_set(fig, grants)?, &fixed)?;
            let node = canon(fig, node)?;
            let var = problem.var_of(&node)?;
            let lit = colour.literal(var);
            let (neg_ok, neg_q, neg_d) = solve_checked(&problem.with_assumption(-lit), false);
            let (pos_ok, pos_q, pos_d) = solve_checked(&problem.with_assumption(lit), true);
            let passed = neg_ok && pos_ok;
            if passed {
                known.insert(node.clone(), *colour);
            }
            let detail = format!(
                "{node} {colour} on {} nodes: opposite colour {neg_d}, asserted colour {pos_d}",
                cfg.len()
            );
            Ok((passed, detail, vec![neg_q, pos_q]))
        }
        Check::Unsat { figure: f } => {
            let fig = figure(script, f)?;
            let problem = emit_clauses(&fig.cfg, &rule_set(fig, grants)?, &hypotheses(fig)?)?;
            let (ok, q, d) = solve_checked(&problem, false);
            let detail = format!(
                "{} nodes, {} clauses, {} decisions: {d}",
                fig.cfg.len(),
                problem.clauses().len(),
                q.stats.decisions
            );
            Ok((ok, detail, vec![q]))
        }
        Check::SatWitness { figure: f, pattern } => {
            let fig = figure(script, f)?;
            let mut fixed = hypotheses(fig)?;
            for (n, &c) in facts.get(f).into_iter().flatten() {
                fixed.insert(n.clone(), c);
            }
            let mut disagreements = Vec::new();
            for node in fig.cfg.nodes() {
                let coords = lattice_coords(&node.point).ok_or_else(|| {
                    Error::Invalid(format!("{} is not a lattice node", node.name))
                })?;
                let c = pattern.color_of(coords);
                match fixed.get(&node.name) {
                    Some(&k) if k != c => disagreements.push(node.name.clone()),
                    _ => {
                        fixed.insert(node.name.clone(), c);
                    }
                }
            }
            if !disagreements.is_empty() {
                return Ok((
                    false,
                    format!(
                        "pattern {} disagrees with established colours at {disagreements:?}",
                        pattern.id
                    ),
                    Vec::new(),
                ));
            }
            let problem = emit_clauses(&fig.cfg, &rule_set(fig, grants)?, &fixed)?;
            let (ok, q, d) = solve_checked(&problem, true);
            let detail = format!(
                "pattern {} on {} nodes against {} clauses, agreeing with {} established colours: {d}",
                pattern.id,
                fig.cfg.len(),
                problem.clauses().len(),
                facts.get(f).map_or(0, |k| k.len()) + fig.hypotheses.len()
            );
            Ok((ok, detail, vec![q]))
        }
        _ => Err(Error::Invalid(format!(
            "{:?} is not a solver check",
            check.kind()
        ))),
    }
}
