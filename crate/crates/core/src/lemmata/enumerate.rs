//! Enumeration of the colourings of the central nodes of a patch around a
//! forced cluster, compared with the periodic pattern up to symmetry.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::configuration::{emit_clauses, Colour, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{hex_norm, hex_patch, lattice_coords, lattice_symmetries, Point};
use crate::solver::enumerate_projections;
use crate::tilings::{Node, PeriodicColoring};

use super::figures::patch_name;
use super::{instance_rules, Figure, ScriptId};

const CENTRAL_RADIUS: i64 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub script: ScriptId,
    pub radius: i64,
    pub cap: usize,
    pub central_nodes: usize,
    pub projections: usize,
    pub cap_hit: bool,
    pub all_match: bool,
    pub mismatches: Vec<String>,
}

fn setup(script: ScriptId) -> Result<(&'static str, Node, PeriodicColoring)> {
    match script {
        ScriptId::Col1 => Ok(("col1", (4, 0), PeriodicColoring::pattern_a())),
        ScriptId::Col2 => Ok(("col2", (-1, 1), PeriodicColoring::pattern_b())),
        other => Err(Error::Invalid(format!(
            "no uniqueness enumeration for {other}"
        ))),
    }
}

fn matches_pattern(colouring: &[(Node, Colour)], pattern: &PeriodicColoring) -> bool {
    let shifts = hex_patch(8);
    lattice_symmetries().iter().any(|sym| {
        shifts.iter().any(|&(ta, tb)| {
            colouring.iter().all(|&(n, c)| {
                let (a, b) = sym(n);
                pattern.color_of((a + ta, b + tb)) == c
            })
        })
    })
}

/// Enumerates the distinct colourings of the nodes within distance 2 of the
/// centre of a radius-`radius` patch, under the hypotheses and rules of the
/// figure, and checks each against the periodic pattern.
pub fn enumerate_uniqueness(script: ScriptId, radius: i64, cap: usize) -> Result<UniquenessReport> {
    let (name, centre, pattern) = setup(script)?;
    let fig = Figure::load(name)?;
    let mut offsets = hex_patch(radius);
    offsets.sort_by_key(|&(a, b)| hex_norm(a, b));
    let nodes: Vec<Node> = offsets
        .iter()
        .map(|&(a, b)| (a + centre.0, b + centre.1))
        .collect();
    let cfg = Configuration::build(
        nodes
            .iter()
            .map(|&(a, b)| (patch_name(a, b), Point::lattice(a, b))),
    )?;
    let mut fixed = BTreeMap::new();
    for (label, colour) in &fig.hypotheses {
        let p = fig.cfg.point_of(label)?;
        if let Some((a, b)) = lattice_coords(p) {
            if cfg.find_point(p).is_some() {
                fixed.insert(patch_name(a, b), *colour);
            }
        }
    }
    let rules = instance_rules(&fig.rules)?;
    let problem = emit_clauses(&cfg, &rules, &fixed)?;
    let central = offsets
        .iter()
        .filter(|&&(a, b)| hex_norm(a, b) <= CENTRAL_RADIUS)
        .count();
    let found = enumerate_projections(&problem, central, cap);
    let mut mismatches = Vec::new();
    for model in &found.models {
        let colouring: Vec<(Node, Colour)> = nodes[..central]
            .iter()
            .zip(model)
            .map(|(&n, &red)| (n, if red { Colour::Red } else { Colour::Blue }))
            .collect();
        if !matches_pattern(&colouring, &pattern) {
            let reds: Vec<String> = colouring
                .iter()
                .filter(|(_, c)| *c == Colour::Red)
                .map(|((a, b), _)| format!("({a},{b})"))
                .collect();
            mismatches.push(format!("red at {}", reds.join(" ")));
        }
    }
    Ok(UniquenessReport {
        script,
        radius,
        cap,
        central_nodes: central,
        projections: found.models.len(),
        cap_hit: found.cap_hit,
        all_match: mismatches.is_empty() && !found.models.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_matches_itself_shifted() {
        let p = PeriodicColoring::pattern_a();
        let colouring: Vec<(Node, Colour)> = hex_patch(2)
            .into_iter()
            .map(|(a, b)| ((a, b), p.color_of((a + 3, b - 1))))
            .collect();
        assert!(matches_pattern(&colouring, &p));
    }

    #[test]
    fn all_blue_is_not_a_pattern() {
        let colouring: Vec<(Node, Colour)> = hex_patch(2)
            .into_iter()
            .map(|n| (n, Colour::Blue))
            .collect();
        assert!(!matches_pattern(&colouring, &PeriodicColoring::pattern_a()));
    }

    #[test]
    fn other_scripts_rejected() {
        assert!(enumerate_uniqueness(ScriptId::T7, 4, 10).is_err());
    }
}
