//! Named finite point sets and the clause encodings built on top of them.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::geometry::{dist2, Motion, Point};
use crate::solver::{ColoringProblem, VarInfo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    /// Literal asserting this colour for variable `var` (true = red).
    pub fn literal(self, var: i32) -> i32 {
        match self {
            Colour::Red => var,
            Colour::Blue => -var,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub name: String,
    pub point: Point,
    pub aliases: Vec<String>,
}

/// Pairwise squared distances, grouped by value.
#[derive(Debug, Default)]
struct DistanceTable {
    by_value: HashMap<FieldElement, Vec<(usize, usize)>>,
}

#[derive(Debug, Default)]
pub struct Configuration {
    nodes: Vec<Node>,
    by_name: HashMap<String, usize>,
    by_point: HashMap<Point, usize>,
    distances: OnceLock<DistanceTable>,
}

impl Clone for Configuration {
    fn clone(&self) -> Self {
        Configuration {
            nodes: self.nodes.clone(),
            by_name: self.by_name.clone(),
            by_point: self.by_point.clone(),
            distances: OnceLock::new(),
        }
    }
}

impl Configuration {
    /// Builds a configuration; entries with an already present point become
    /// aliases of the existing node.
    pub fn build<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Point)>,
        S: Into<String>,
    {
        let mut cfg = Configuration::default();
        for (name, point) in entries {
            cfg.insert(name.into(), point)?;
        }
        Ok(cfg)
    }

    fn insert(&mut self, name: String, point: Point) -> Result<()> {
        if self.by_name.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        let idx = match self.by_point.get(&point) {
            Some(&idx) => {
                self.nodes[idx].aliases.push(name.clone());
                idx
            }
            None => {
                let idx = self.nodes.len();
                self.by_point.insert(point.clone(), idx);
                self.nodes.push(Node {
                    name: name.clone(),
                    point,
                    aliases: Vec::new(),
                });
                idx
            }
        };
        self.by_name.insert(name, idx);
        self.distances = OnceLock::new();
        Ok(())
    }

    /// Adds entries to a copy of this configuration.
    pub fn extended<I, S>(&self, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Point)>,
        S: Into<String>,
    {
        let mut cfg = self.clone();
        for (name, point) in entries {
            cfg.insert(name.into(), point)?;
        }
        Ok(cfg)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> &Node {
        &self.nodes[idx]
    }

    pub fn point(&self, idx: usize) -> &Point {
        &self.nodes[idx].point
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn point_of(&self, name: &str) -> Result<&Point> {
        Ok(self.point(self.index_of(name)?))
    }

    pub fn find_point(&self, p: &Point) -> Option<usize> {
        self.by_point.get(p).copied()
    }

    /// Every name (canonical and alias) that resolves to `idx`.
    pub fn names_of(&self, idx: usize) -> impl Iterator<Item = &str> {
        let node = &self.nodes[idx];
        std::iter::once(node.name.as_str()).chain(node.aliases.iter().map(String::as_str))
    }

    /// The sub-configuration on the named nodes, in this configuration's node
    /// order. Aliases of kept nodes are kept.
    pub fn restrict<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let mut keep = BTreeSet::new();
        for n in names {
            keep.insert(self.index_of(n.as_ref())?);
        }
        let mut entries = Vec::new();
        for &idx in &keep {
            for name in self.names_of(idx) {
                entries.push((name.to_string(), self.nodes[idx].point.clone()));
            }
        }
        Configuration::build(entries)
    }

    fn distance_table(&self) -> &DistanceTable {
        self.distances.get_or_init(|| {
            let mut table = DistanceTable::default();
            for i in 0..self.nodes.len() {
                for j in i + 1..self.nodes.len() {
                    let d = dist2(&self.nodes[i].point, &self.nodes[j].point);
                    table.by_value.entry(d).or_default().push((i, j));
                }
            }
            table
        })
    }

    /// Unordered node pairs (i < j) at squared distance `d`, lexicographic.
    pub fn pairs_at(&self, d: &FieldElement) -> &[(usize, usize)] {
        self.distance_table()
            .by_value
            .get(d)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn unit_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_at(&FieldElement::one()).to_vec()
    }

    /// All `ℓ_k` chains `(p, p+v, …, p+(k−1)v)` with `|v| = 1`, each reported
    /// once, oriented so that the first endpoint is lexicographically smaller.
    pub fn ell_chains(&self, k: usize) -> Vec<Vec<usize>> {
        if k < 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for &(i, j) in self.pairs_at(&FieldElement::one()) {
            for (u, v) in [(i, j), (j, i)] {
                let start = self.point(u);
                let step = self.point(v).sub(start);
                let mut chain = vec![u, v];
                let mut cur = self.point(v).clone();
                while chain.len() < k {
                    cur = cur.add(&step);
                    match self.find_point(&cur) {
                        Some(n) => chain.push(n),
                        None => break,
                    }
                }
                if chain.len() == k {
                    let last = self.point(chain[k - 1]);
                    if start.cmp_lex(last).is_lt() {
                        out.push(chain);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// All congruent copies of `tpl` (reflections included), as node lists in
    /// template point order.
    pub fn match_template(&self, tpl: &Template) -> Vec<Vec<usize>> {
        let pts = &tpl.points;
        if pts.len() < 2 {
            return Vec::new();
        }
        let (a, b) = tpl.anchor_pair();
        let d = dist2(&pts[a], &pts[b]);
        let mut found = BTreeSet::new();
        for &(i, j) in self.pairs_at(&d) {
            for (u, v) in [(i, j), (j, i)] {
                for mirrored in [false, true] {
                    let Some(m) = Motion::from_pairs(
                        &pts[a],
                        &pts[b],
                        self.point(u),
                        self.point(v),
                        mirrored,
                    ) else {
                        continue;
                    };
                    let image: Option<Vec<usize>> =
                        pts.iter().map(|p| self.find_point(&m.apply(p))).collect();
                    if let Some(image) = image {
                        found.insert(image);
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    /// Whether the given nodes (in template order) form a congruent copy of
    /// `tpl`, checked directly on pairwise squared distances.
    pub fn is_embedding(&self, tpl: &Template, nodes: &[usize]) -> bool {
        if nodes.len() != tpl.points.len() {
            return false;
        }
        let distinct: HashSet<_> = nodes.iter().collect();
        if distinct.len() != nodes.len() {
            return false;
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if dist2(self.point(nodes[i]), self.point(nodes[j]))
                    != dist2(&tpl.points[i], &tpl.points[j])
                {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TemplateId {
    L2,
    L5,
    T3,
    T4,
    T5,
    T6,
    T7,
    Eq3Centered,
    BlueEq3RedCenter,
    RedEq3RedCenter,
}

impl TemplateId {
    pub const ALL: [TemplateId; 10] = [
        TemplateId::L2,
        TemplateId::L5,
        TemplateId::T3,
        TemplateId::T4,
        TemplateId::T5,
        TemplateId::T6,
        TemplateId::T7,
        TemplateId::Eq3Centered,
        TemplateId::BlueEq3RedCenter,
        TemplateId::RedEq3RedCenter,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Any,
    Red,
    Blue,
}

#[derive(Clone, Debug)]
pub struct Template {
    pub id: TemplateId,
    pub points: Vec<Point>,
    pub roles: Vec<Role>,
}

/// Node `i·f1 + j·f2` of the √3-scaled lattice, `f1 = e1 + e2`,
/// `f2 = 2·e2 − e1`.
fn scaled(i: i64, j: i64) -> Point {
    Point::lattice(i - j, i + 2 * j)
}

impl Template {
    pub fn new(id: TemplateId) -> Self {
        use TemplateId::*;
        let sc = |v: &[(i64, i64)]| v.iter().map(|&(i, j)| scaled(i, j)).collect::<Vec<_>>();
        let line = |k: i64| (0..k).map(|i| Point::lattice(i, 0)).collect::<Vec<_>>();
        let centred = || {
            vec![
                Point::lattice(0, 0),
                Point::lattice(1, 1),
                Point::lattice(-2, 1),
                Point::lattice(1, -2),
            ]
        };
        let (points, roles): (Vec<Point>, Option<Vec<Role>>) = match id {
            L2 => (line(2), None),
            L5 => (line(5), None),
            T3 => (sc(&[(0, 0), (1, 0), (0, 1)]), None),
            T4 => (sc(&[(0, 0), (1, 0), (0, 1), (1, 1)]), None),
            T5 => (sc(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]), None),
            T6 => (sc(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]), None),
            T7 => (
                sc(&[(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1)]),
                None,
            ),
            Eq3Centered => (centred(), None),
            BlueEq3RedCenter => (
                centred(),
                Some(vec![Role::Red, Role::Blue, Role::Blue, Role::Blue]),
            ),
            RedEq3RedCenter => (centred(), Some(vec![Role::Red; 4])),
        };
        let roles = roles.unwrap_or_else(|| vec![Role::Any; points.len()]);
        Template { id, points, roles }
    }

    pub fn with_roles(mut self, role: Role) -> Self {
        self.roles = vec![role; self.points.len()];
        self
    }

    /// The first pair of template points at maximal distance.
    fn anchor_pair(&self) -> (usize, usize) {
        let mut best = (0, 1);
        let mut best_d = dist2(&self.points[0], &self.points[1]);
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                let d = dist2(&self.points[i], &self.points[j]);
                if d.cmp_value(&best_d).is_gt() {
                    best = (i, j);
                    best_d = d;
                }
            }
        }
        best
    }

    /// Clause forbidding the role assignment on an embedding.
    fn forbidding_clause(&self, embedding: &[usize]) -> Vec<i32> {
        let mut clause: Vec<i32> = embedding
            .iter()
            .zip(&self.roles)
            .filter_map(|(&n, role)| {
                let var = n as i32 + 1;
                match role {
                    Role::Red => Some(-var),
                    Role::Blue => Some(var),
                    Role::Any => None,
                }
            })
            .collect();
        clause.sort_by_key(|l| (l.abs(), *l));
        clause
    }
}

/// Every placement of `tpl` whose image contains all of `base`, as point
/// lists in template order, one per distinct point set.
pub fn placements_containing(tpl: &Template, base: &[&Point]) -> Vec<Vec<Point>> {
    let pts = &tpl.points;
    let mut seen: Vec<Vec<Point>> = Vec::new();
    if base.len() < 2 || base.len() > pts.len() {
        return seen;
    }
    let mut choice = Vec::new();
    place(pts, base, &mut choice, &mut seen);
    seen
}

fn place(pts: &[Point], base: &[&Point], choice: &mut Vec<usize>, seen: &mut Vec<Vec<Point>>) {
    if choice.len() == base.len() {
        for mirrored in [false, true] {
            let Some(m) =
                Motion::from_pairs(&pts[choice[0]], &pts[choice[1]], base[0], base[1], mirrored)
            else {
                continue;
            };
            if choice
                .iter()
                .zip(base)
                .any(|(&i, b)| &m.apply(&pts[i]) != *b)
            {
                continue;
            }
            let image: Vec<Point> = pts.iter().map(|p| m.apply(p)).collect();
            if !seen.iter().any(|s| s.iter().all(|p| image.contains(p))) {
                seen.push(image);
            }
        }
        return;
    }
    let k = choice.len();
    for i in 0..pts.len() {
        if choice.contains(&i) {
            continue;
        }
        let consistent = choice
            .iter()
            .enumerate()
            .all(|(j, &c)| dist2(&pts[c], &pts[i]) == dist2(base[j], base[k]));
        if consistent {
            choice.push(i);
            place(pts, base, choice, seen);
            choice.pop();
        }
    }
}

/// Every placement of a `T6` containing the given `T3` triangle.
pub fn t6_extensions(triangle: [&Point; 3]) -> Vec<Vec<Point>> {
    placements_containing(&Template::new(TemplateId::T6), &triangle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    RedL2Forbidden,
    BlueL5Forbidden,
    BlueEq3RedCenterForbidden,
    RedEq3RedCenterForbidden,
    T7RedForbidden,
    T3T6Extension,
    NoRedT3,
}

impl RuleId {
    pub const ALL: [RuleId; 7] = [
        RuleId::RedL2Forbidden,
        RuleId::BlueL5Forbidden,
        RuleId::BlueEq3RedCenterForbidden,
        RuleId::RedEq3RedCenterForbidden,
        RuleId::T7RedForbidden,
        RuleId::T3T6Extension,
        RuleId::NoRedT3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::RedL2Forbidden => "RED_L2_FORBIDDEN",
            RuleId::BlueL5Forbidden => "BLUE_L5_FORBIDDEN",
            RuleId::BlueEq3RedCenterForbidden => "BLUE_EQ3_RED_CENTER_FORBIDDEN",
            RuleId::RedEq3RedCenterForbidden => "RED_EQ3_RED_CENTER_FORBIDDEN",
            RuleId::T7RedForbidden => "T7_RED_FORBIDDEN",
            RuleId::T3T6Extension => "T3_T6_EXTENSION",
            RuleId::NoRedT3 => "NO_RED_T3",
        }
    }

    pub fn is_base(self) -> bool {
        matches!(self, RuleId::RedL2Forbidden | RuleId::BlueL5Forbidden)
    }

    /// Forbidden coloured pattern backing this rule, if it is one.
    pub fn pattern(self) -> Option<Template> {
        match self {
            RuleId::BlueEq3RedCenterForbidden => Some(Template::new(TemplateId::BlueEq3RedCenter)),
            RuleId::RedEq3RedCenterForbidden => Some(Template::new(TemplateId::RedEq3RedCenter)),
            RuleId::T7RedForbidden => Some(Template::new(TemplateId::T7).with_roles(Role::Red)),
            RuleId::NoRedT3 => Some(Template::new(TemplateId::T3).with_roles(Role::Red)),
            _ => None,
        }
    }
}

impl FromStr for RuleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence that a non-base rule may be used: the script that established it
/// (or whose hypothesis it is). Only the lemma runner issues these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grant {
    lemma: String,
}

impl Grant {
    pub(crate) fn issue(lemma: &str) -> Self {
        Grant {
            lemma: lemma.to_string(),
        }
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }
}

#[derive(Clone, Debug, Default)]
pub struct RuleSet {
    rules: BTreeMap<RuleId, Option<Grant>>,
}

impl RuleSet {
    pub fn base() -> Self {
        let mut rs = RuleSet::default();
        rs.rules.insert(RuleId::RedL2Forbidden, None);
        rs.rules.insert(RuleId::BlueL5Forbidden, None);
        rs
    }

    /// Only base rules, selected individually.
    pub fn only(ids: &[RuleId]) -> Result<Self> {
        let mut rs = RuleSet::default();
        for &id in ids {
            if !id.is_base() {
                return Err(Error::UnprovedRule(id.to_string()));
            }
            rs.rules.insert(id, None);
        }
        Ok(rs)
    }

    pub fn with(mut self, id: RuleId, grant: Grant) -> Self {
        self.rules.insert(id, Some(grant));
        self
    }

    /// Adds a rule without evidence; `emit_clauses` refuses such sets unless
    /// the rule is a base rule.
    pub fn with_unproved(mut self, id: RuleId) -> Self {
        self.rules.entry(id).or_insert(None);
        self
    }

    pub fn contains(&self, id: RuleId) -> bool {
        self.rules.contains_key(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = RuleId> + '_ {
        self.rules.keys().copied()
    }

    pub fn grant(&self, id: RuleId) -> Option<&Grant> {
        self.rules.get(&id).and_then(Option::as_ref)
    }

    pub fn check_proved(&self) -> Result<()> {
        for (id, grant) in &self.rules {
            if !id.is_base() && grant.is_none() {
                return Err(Error::UnprovedRule(id.to_string()));
            }
        }
        Ok(())
    }
}

/// Encodes the colouring constraints of `cfg` under `rules`.
///
/// Variable `i + 1` is true iff node `i` is red; selector variables of the
/// `T3 → T6` schema follow the node variables.
pub fn emit_clauses(
    cfg: &Configuration,
    rules: &RuleSet,
    fixed: &BTreeMap<String, Colour>,
) -> Result<ColoringProblem> {
    rules.check_proved()?;
    let mut varmap: Vec<VarInfo> = cfg
        .nodes()
        .iter()
        .map(|n| VarInfo {
            name: n.name.clone(),
            aux: false,
        })
        .collect();
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut push = |clauses: &mut Vec<Vec<i32>>, c: Vec<i32>| {
        if seen.insert(c.clone()) {
            clauses.push(c);
        }
    };
    let var = |n: usize| n as i32 + 1;

    if rules.contains(RuleId::RedL2Forbidden) {
        for (u, v) in cfg.unit_pairs() {
            push(&mut clauses, vec![-var(u), -var(v)]);
        }
    }
    if rules.contains(RuleId::BlueL5Forbidden) {
        for chain in cfg.ell_chains(5) {
            let mut c: Vec<i32> = chain.iter().map(|&n| var(n)).collect();
            c.sort_unstable();
            push(&mut clauses, c);
        }
    }
    for id in rules.ids() {
        if let Some(tpl) = id.pattern() {
            for emb in cfg.match_template(&tpl) {
                push(&mut clauses, tpl.forbidding_clause(&emb));
            }
        }
    }
    if rules.contains(RuleId::T3T6Extension) {
        let t3 = Template::new(TemplateId::T3);
        let mut triangles: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut emb in cfg.match_template(&t3) {
            emb.sort_unstable();
            triangles.insert(emb);
        }
        let mut selectors: BTreeMap<Vec<usize>, i32> = BTreeMap::new();
        for tri in triangles {
            let pts = [cfg.point(tri[0]), cfg.point(tri[1]), cfg.point(tri[2])];
            let exts: Option<Vec<Vec<usize>>> = t6_extensions(pts)
                .iter()
                .map(|ext| {
                    let mut nodes: Option<Vec<usize>> =
                        ext.iter().map(|p| cfg.find_point(p)).collect();
                    if let Some(n) = nodes.as_mut() {
                        n.sort_unstable();
                    }
                    nodes
                })
                .collect();
            // Only sound when every placement of the T6 is visible.
            let Some(mut exts) = exts else { continue };
            exts.sort();
            let mut clause: Vec<i32> = tri.iter().map(|&n| -var(n)).collect();
            for ext in exts {
                let sel = match selectors.get(&ext) {
                    Some(&s) => s,
                    None => {
                        varmap.push(VarInfo {
                            name: format!(
                                "sel[{}]",
                                ext.iter()
                                    .map(|&n| cfg.node(n).name.as_str())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            ),
                            aux: true,
                        });
                        let s = varmap.len() as i32;
                        for &q in &ext {
                            push(&mut clauses, vec![-s, var(q)]);
                        }
                        selectors.insert(ext, s);
                        s
                    }
                };
                clause.push(sel);
            }
            push(&mut clauses, clause);
        }
    }
    let mut assumptions = Vec::new();
    for (name, colour) in fixed {
        let idx = cfg.index_of(name)?;
        assumptions.push(colour.literal(var(idx)));
    }
    Ok(ColoringProblem::new(varmap, clauses, assumptions))
}

/// One named point in the JSON instance format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub name: String,
    pub x: FieldElement,
    pub y: FieldElement,
}

/// JSON instance: points, fixed colours and rule ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub fixed: BTreeMap<String, Colour>,
    pub points: Vec<PointEntry>,
    pub rules: Vec<String>,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serialises");
        s.push('\n');
        s
    }

    pub fn configuration(&self) -> Result<Configuration> {
        Configuration::build(
            self.points
                .iter()
                .map(|p| (p.name.clone(), Point::new(p.x.clone(), p.y.clone()))),
        )
    }

    pub fn rule_ids(&self) -> Result<Vec<RuleId>> {
        self.rules.iter().map(|r| r.parse()).collect()
    }

    pub fn from_configuration(
        cfg: &Configuration,
        fixed: BTreeMap<String, Colour>,
        rules: &[RuleId],
    ) -> Self {
        let mut points = Vec::new();
        for idx in 0..cfg.len() {
            for name in cfg.names_of(idx) {
                let p = cfg.point(idx);
                points.push(PointEntry {
                    name: name.to_string(),
                    x: p.x.clone(),
                    y: p.y.clone(),
                });
            }
        }
        Instance {
            fixed,
            points,
            rules: rules.iter().map(|r| r.as_str().to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{chord_rotation, lattice_points, LatticeFrame, Sense};

    fn lat(entries: &[(&str, i64, i64)]) -> Configuration {
        Configuration::build(entries.iter().map(|&(n, a, b)| (n, Point::lattice(a, b)))).unwrap()
    }

    fn fig1a() -> Configuration {
        lat(&[
            ("A", 0, 0),
            ("B", -3, 3),
            ("C", 0, 3),
            ("D", -1, 1),
            ("E", -2, 2),
            ("F", 0, 1),
            ("G", 0, 2),
            ("O", -1, 2),
            ("X", 1, -1),
            ("Y", 0, -1),
        ])
    }

    #[test]
    fn duplicates_become_aliases() {
        let cfg = lat(&[("P", 1, 1), ("Q", 1, 1)]);
        assert_eq!(cfg.len(), 1);
        assert_eq!(cfg.index_of("Q").unwrap(), 0);
        assert_eq!(cfg.names_of(0).collect::<Vec<_>>(), ["P", "Q"]);
        let dup = Configuration::build([("P", Point::origin()), ("P", Point::lattice(1, 0))]);
        assert!(matches!(dup, Err(Error::DuplicateName(_))));
    }

    #[test]
    fn patch_and_rotated_copy_share_only_the_centre() {
        let frame = LatticeFrame::default();
        let rot = chord_rotation(Point::origin(), Sense::Counterclockwise);
        let pts = lattice_points(&frame, 2);
        let mut entries: Vec<(String, Point)> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("p{i}"), p.clone()))
            .collect();
        entries.extend(
            pts.iter()
                .enumerate()
                .map(|(i, p)| (format!("q{i}"), rot.apply(p).unwrap())),
        );
        assert_eq!(Configuration::build(entries).unwrap().len(), 37);
    }

    #[test]
    fn figure_one_structure() {
        let cfg = fig1a();
        assert_eq!(cfg.len(), 10);
        let pairs = cfg.unit_pairs();
        let named = |a: &str, b: &str| {
            let (i, j) = (cfg.index_of(a).unwrap(), cfg.index_of(b).unwrap());
            pairs.contains(&(i.min(j), i.max(j)))
        };
        for (a, b) in [("O", "D"), ("O", "E"), ("O", "F"), ("O", "G"), ("X", "Y")] {
            assert!(named(a, b), "{a}{b}");
        }
        let chains: Vec<Vec<&str>> = cfg
            .ell_chains(5)
            .iter()
            .map(|c| c.iter().map(|&n| cfg.node(n).name.as_str()).collect())
            .collect();
        let has = |want: [&str; 5]| {
            let mut rev = want;
            rev.reverse();
            chains.iter().any(|c| c[..] == want[..] || c[..] == rev[..])
        };
        assert!(has(["X", "A", "D", "E", "B"]));
        assert!(has(["Y", "A", "F", "G", "C"]));
    }

    #[test]
    fn simple_chain_and_pair_counts() {
        let line = lat(&[
            ("a", 0, 0),
            ("b", 1, 0),
            ("c", 2, 0),
            ("d", 3, 0),
            ("e", 4, 0),
        ]);
        assert_eq!(line.ell_chains(5).len(), 1);
        assert_eq!(line.ell_chains(4).len(), 2);
        assert_eq!(lat(&[("a", 0, 0), ("b", 1, 0)]).unit_pairs().len(), 1);
        let t6 = Configuration::build(
            Template::new(TemplateId::T6)
                .points
                .into_iter()
                .enumerate()
                .map(|(i, p)| (format!("t{i}"), p)),
        )
        .unwrap();
        assert!(t6.unit_pairs().is_empty());
    }

    #[test]
    fn templates_have_sqrt3_minimum() {
        let three = FieldElement::from_int(3);
        for id in [
            TemplateId::T3,
            TemplateId::T4,
            TemplateId::T5,
            TemplateId::T6,
            TemplateId::T7,
        ] {
            let t = Template::new(id);
            let mut min: Option<FieldElement> = None;
            for i in 0..t.points.len() {
                for j in i + 1..t.points.len() {
                    let d = dist2(&t.points[i], &t.points[j]);
                    if min.as_ref().is_none_or(|m| d.cmp_value(m).is_lt()) {
                        min = Some(d);
                    }
                }
            }
            assert_eq!(min.unwrap(), three, "{id:?}");
        }
    }

    #[test]
    fn triangle_matches_six_ways() {
        let t3 = Template::new(TemplateId::T3);
        let cfg = Configuration::build(
            t3.points
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (format!("v{i}"), p)),
        )
        .unwrap();
        assert_eq!(cfg.match_template(&t3).len(), 6);
        assert!(cfg
            .match_template(&Template::new(TemplateId::T4))
            .is_empty());
    }

    #[test]
    fn l2_matches_unit_pairs() {
        let cfg = fig1a();
        let mut from_match: Vec<(usize, usize)> = cfg
            .match_template(&Template::new(TemplateId::L2))
            .into_iter()
            .map(|e| (e[0].min(e[1]), e[0].max(e[1])))
            .collect();
        from_match.sort();
        from_match.dedup();
        assert_eq!(from_match, cfg.unit_pairs());
    }

    #[test]
    fn t6_has_four_extensions_of_a_triangle() {
        let a = Point::lattice(5, 0);
        let b = Point::lattice(6, 1);
        let f = Point::lattice(7, -1);
        let exts = t6_extensions([&a, &b, &f]);
        assert_eq!(exts.len(), 4);
        for e in &exts {
            assert_eq!(e.len(), 6);
            assert!([&a, &b, &f].iter().all(|p| e.contains(p)));
        }
    }

    #[test]
    fn clause_counts() {
        let fixed = BTreeMap::new();
        let pair = lat(&[("a", 0, 0), ("b", 1, 0)]);
        let p = emit_clauses(
            &pair,
            &RuleSet::only(&[RuleId::RedL2Forbidden]).unwrap(),
            &fixed,
        )
        .unwrap();
        assert_eq!(p.clauses(), &[vec![-1, -2]]);
        let line = lat(&[
            ("a", 0, 0),
            ("b", 1, 0),
            ("c", 2, 0),
            ("d", 3, 0),
            ("e", 4, 0),
        ]);
        let p = emit_clauses(
            &line,
            &RuleSet::only(&[RuleId::BlueL5Forbidden]).unwrap(),
            &fixed,
        )
        .unwrap();
        assert_eq!(p.clauses(), &[vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn unproved_rules_are_rejected() {
        let rs = RuleSet::base().with_unproved(RuleId::T7RedForbidden);
        let err = emit_clauses(&fig1a(), &rs, &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::UnprovedRule(_)));
        assert!(RuleSet::only(&[RuleId::NoRedT3]).is_err());
    }

    #[test]
    fn unknown_fixed_node_is_an_error() {
        let fixed = BTreeMap::from([("nobody".to_string(), Colour::Red)]);
        assert!(emit_clauses(&fig1a(), &RuleSet::base(), &fixed).is_err());
    }

    #[test]
    fn instance_round_trip() {
        let cfg = fig1a();
        let fixed = BTreeMap::from([("O".to_string(), Colour::Red)]);
        let inst = Instance::from_configuration(&cfg, fixed, &[RuleId::RedL2Forbidden]);
        let text = inst.to_json();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.configuration().unwrap().len(), 10);
    }
}
