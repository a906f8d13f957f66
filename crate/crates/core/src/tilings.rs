//! The two periodic colourings of the unit triangular lattice, decided by
//! exact sublattice membership.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::configuration::Colour;
use crate::error::{Error, Result};
use crate::geometry::{hex_patch, lattice_vectors_of_norm2};

pub type Node = (i64, i64);

/// Lattice unit vectors up to sign.
pub const UNIT_DIRECTIONS: [Node; 3] = [(1, 0), (0, 1), (-1, 1)];

/// Red set `cluster + ℤ·basis[0] + ℤ·basis[1]`, optionally with a few nodes
/// flipped (used to inject faults).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicColoring {
    pub id: String,
    pub basis: [Node; 2],
    pub cluster: Vec<Node>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub flipped: BTreeSet<Node>,
}

impl PeriodicColoring {
    pub fn new(id: &str, basis: [Node; 2], cluster: Vec<Node>) -> Result<Self> {
        let c = PeriodicColoring {
            id: id.to_string(),
            basis,
            cluster,
            flipped: BTreeSet::new(),
        };
        if c.index() == 0 {
            return Err(Error::Invalid(format!("degenerate basis for {id}")));
        }
        Ok(c)
    }

    /// Six-point cluster repeated with period 5 in both lattice directions.
    pub fn pattern_a() -> Self {
        PeriodicColoring::new(
            "A",
            [(5, 0), (0, 5)],
            vec![(0, 0), (1, 1), (2, -1), (2, 2), (3, 0), (4, -2)],
        )
        .expect("valid basis")
    }

    /// Index-5 sublattice spanned by (−1, 2) and (3, −1).
    pub fn pattern_b() -> Self {
        PeriodicColoring::new("B", [(-1, 2), (3, -1)], vec![(0, 0)]).expect("valid basis")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "A" | "a" | "P_A" | "patternA" => Ok(Self::pattern_a()),
            "B" | "b" | "P_B" | "patternB" => Ok(Self::pattern_b()),
            _ => Err(Error::Invalid(format!("unknown pattern {name}"))),
        }
    }

    pub fn with_flip(mut self, node: Node) -> Self {
        if !self.flipped.insert(node) {
            self.flipped.remove(&node);
        }
        self
    }

    fn det(&self) -> i64 {
        let [(u0, u1), (v0, v1)] = self.basis;
        u0 * v1 - u1 * v0
    }

    /// Index of the period lattice in ℤ².
    pub fn index(&self) -> i64 {
        self.det().abs()
    }

    /// Whether `w` lies in the period lattice (Cramer's rule, integrality test).
    pub fn in_lattice(&self, (w0, w1): Node) -> bool {
        let [(u0, u1), (v0, v1)] = self.basis;
        let d = self.det();
        (w0 * v1 - w1 * v0) % d == 0 && (u0 * w1 - u1 * w0) % d == 0
    }

    pub fn color_of(&self, node: Node) -> Colour {
        let periodic_red = self
            .cluster
            .iter()
            .any(|&(c0, c1)| self.in_lattice((node.0 - c0, node.1 - c1)));
        if periodic_red != self.flipped.contains(&node) {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("pattern serialises");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectKind {
    RedL2,
    BlueL5,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defect {
    pub kind: DefectKind,
    pub nodes: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternReport {
    pub pattern: String,
    pub radius: i64,
    pub nodes: usize,
    pub red_nodes: usize,
    pub red_unit_pairs: usize,
    pub blue_l5: usize,
    pub first_defect: Option<Defect>,
    pub pass: bool,
}

/// Counts red unit pairs and blue `ℓ₅` chains over the hex patch of radius
/// `radius`. Both defects span at most four lattice steps, so a patch wider
/// than one period plus five certifies the whole pattern.
pub fn validate_pattern(coloring: &PeriodicColoring, radius: i64) -> Result<PatternReport> {
    if radius < 5 {
        return Err(Error::Invalid(format!("radius {radius} is below 5")));
    }
    let patch = hex_patch(radius);
    let inside: BTreeSet<Node> = patch.iter().copied().collect();
    let red = |n: Node| coloring.color_of(n) == Colour::Red;
    let mut report = PatternReport {
        pattern: coloring.id.clone(),
        radius,
        nodes: patch.len(),
        red_nodes: patch.iter().filter(|&&n| red(n)).count(),
        red_unit_pairs: 0,
        blue_l5: 0,
        first_defect: None,
        pass: true,
    };
    for &p in &patch {
        for d in UNIT_DIRECTIONS {
            let q = (p.0 + d.0, p.1 + d.1);
            if inside.contains(&q) && red(p) && red(q) {
                report.red_unit_pairs += 1;
                report.first_defect.get_or_insert(Defect {
                    kind: DefectKind::RedL2,
                    nodes: vec![p, q],
                });
            }
            let chain: Vec<Node> = (0..5).map(|i| (p.0 + i * d.0, p.1 + i * d.1)).collect();
            if chain.iter().all(|&n| inside.contains(&n) && !red(n)) {
                report.blue_l5 += 1;
                report.first_defect.get_or_insert(Defect {
                    kind: DefectKind::BlueL5,
                    nodes: chain,
                });
            }
        }
    }
    report.pass = report.red_unit_pairs == 0 && report.blue_l5 == 0;
    Ok(report)
}

/// Whether translating by each of the six lattice vectors of length 5 maps
/// the colouring onto itself, checked over a full set of coset
/// representatives.
pub fn distance5_invariance(coloring: &PeriodicColoring) -> bool {
    let m = coloring.index();
    let mut domain: Vec<Node> = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
    domain.extend(coloring.flipped.iter().copied());
    lattice_vectors_of_norm2(25).into_iter().all(|(v0, v1)| {
        domain
            .iter()
            .all(|&(a, b)| coloring.color_of((a, b)) == coloring.color_of((a + v0, b + v1)))
    })
}
