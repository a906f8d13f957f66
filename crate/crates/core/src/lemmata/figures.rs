use crate::configuration::{Colour, Configuration, Instance, RuleId};
use crate::error::{Error, Result};
use crate::geometry::{hex_patch, Point};

use super::Figure;

const DATA: [(&str, &str); 8] = [
    ("fig1a", include_str!("../../data/fig1a.json")),
    ("fig1b", include_str!("../../data/fig1b.json")),
    ("fig3", include_str!("../../data/fig3.json")),
    ("fig4", include_str!("../../data/fig4.json")),
    ("fig5", include_str!("../../data/fig5.json")),
    ("fig6", include_str!("../../data/fig6.json")),
    ("col1", include_str!("../../data/col1.json")),
    ("col2", include_str!("../../data/col2.json")),
];

/// The shipped instance for a figure name (`fig1a`, …, `col2`).
pub fn figure_instance(name: &str) -> Result<Instance> {
    let text = DATA
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Invalid(format!("unknown figure {name}")))?;
    Instance::from_json(text)
}

pub fn figure_names() -> impl Iterator<Item = &'static str> {
    DATA.iter().map(|(n, _)| *n)
}

impl Figure {
    pub fn from_instance(inst: &Instance) -> Result<Self> {
        Ok(Figure {
            cfg: inst.configuration()?,
            hypotheses: inst.fixed.clone(),
            rules: inst.rule_ids()?,
        })
    }

    pub fn load(name: &str) -> Result<Self> {
        Figure::from_instance(&figure_instance(name)?)
    }

    pub fn new(cfg: Configuration, hypotheses: &[(&str, Colour)], rules: &[RuleId]) -> Self {
        Figure {
            cfg,
            hypotheses: hypotheses
                .iter()
                .map(|&(n, c)| (n.to_string(), c))
                .collect(),
            rules: rules.to_vec(),
        }
    }

    /// Adds the hex patch of `radius` around lattice node `centre`; patch
    /// nodes that coincide with labelled points become aliases.
    pub fn with_patch(mut self, centre: (i64, i64), radius: i64) -> Result<Self> {
        let entries = hex_patch(radius).into_iter().map(|(a, b)| {
            let (a, b) = (a + centre.0, b + centre.1);
            (patch_name(a, b), Point::lattice(a, b))
        });
        self.cfg = self.cfg.extended(entries)?;
        Ok(self)
    }
}

pub fn patch_name(a: i64, b: i64) -> String {
    format!("n[{a},{b}]")
}

/// Configuration on lattice nodes given by name and integer coordinates.
pub fn lattice_cfg(entries: &[(&str, i64, i64)]) -> Result<Configuration> {
    Configuration::build(entries.iter().map(|&(n, a, b)| (n, Point::lattice(a, b))))
}
