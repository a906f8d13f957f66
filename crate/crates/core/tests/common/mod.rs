//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ellfive::configuration::{Configuration, Template};
use ellfive::field::FieldElement;
use ellfive::geometry::{chord_rotation, dist2, Isometry, Point, Sense};
use ellfive::solver::{ColoringProblem, VarInfo};
use rand::seq::SliceRandom;
use rand::Rng;

fn dist_table(cfg: &Configuration) -> Vec<Vec<FieldElement>> {
    (0..cfg.len())
        .map(|i| {
            (0..cfg.len())
                .map(|j| dist2(cfg.point(i), cfg.point(j)))
                .collect()
        })
        .collect()
}

/// Every `ℓ_k` found by scanning all node sequences with equal unit steps,
/// oriented with the lexicographically smaller endpoint first.
pub fn brute_chains(cfg: &Configuration, k: usize) -> Vec<Vec<usize>> {
    let n = cfg.len();
    let one = FieldElement::one();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || dist2(cfg.point(a), cfg.point(b)) != one {
                continue;
            }
            let step = cfg.point(b).sub(cfg.point(a));
            let mut chain = vec![a, b];
            while chain.len() < k {
                let last = cfg.point(*chain.last().unwrap()).clone();
                let next = (0..n).find(|&c| cfg.point(c).sub(&last) == step);
                match next {
                    Some(c) => chain.push(c),
                    None => break,
                }
            }
            if chain.len() == k && cfg.point(a).cmp_lex(cfg.point(chain[k - 1])).is_lt() {
                out.insert(chain);
            }
        }
    }
    out.into_iter().collect()
}

/// Every ordered node tuple whose pairwise squared distances equal those of
/// the template, found by exhaustive search over injective assignments.
pub fn brute_matches(cfg: &Configuration, tpl: &Template) -> Vec<Vec<usize>> {
    let d = dist_table(cfg);
    let t: Vec<Vec<FieldElement>> = tpl
        .points
        .iter()
        .map(|p| tpl.points.iter().map(|q| dist2(p, q)).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        d: &[Vec<FieldElement>],
        t: &[Vec<FieldElement>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = cur.len();
        if k == t.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..d.len() {
            if cur.contains(&c) {
                continue;
            }
            if cur.iter().enumerate().all(|(i, &u)| d[u][c] == t[i][k]) {
                cur.push(c);
                go(d, t, cur, out);
                cur.pop();
            }
        }
    }
    if tpl.points.len() >= 2 {
        go(&d, &t, &mut cur, &mut out);
    }
    out.sort();
    out
}

pub fn random_lattice_point<R: Rng>(rng: &mut R, r: i64) -> Point {
    Point::lattice(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// Random point set of `n` nodes: mostly lattice nodes near the origin, with
/// some chord-rotated points off the lattice.
pub fn random_configuration<R: Rng>(rng: &mut R, n: usize) -> Configuration {
    let mut pts: Vec<Point> = Vec::new();
    let mut cand: Vec<(i64, i64)> = (-3..=3)
        .flat_map(|a| (-3..=3).map(move |b| (a, b)))
        .collect();
    cand.shuffle(rng);
    let mut it = cand.into_iter();
    while pts.len() < n {
        let p = if rng.gen_bool(0.2) && !pts.is_empty() {
            let c = pts[rng.gen_range(0..pts.len())].clone();
            let q = pts[rng.gen_range(0..pts.len())].clone();
            let sense = if rng.gen_bool(0.5) {
                Sense::Clockwise
            } else {
                Sense::Counterclockwise
            };
            chord_rotation(c, sense).apply(&q).unwrap()
        } else {
            let (a, b) = it.next().unwrap();
            Point::lattice(a, b)
        };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Configuration::build(
        pts.into_iter()
            .enumerate()
            .map(|(i, p)| (format!("p{i}"), p)),
    )
    .unwrap()
}

pub fn random_isometry<R: Rng>(rng: &mut R) -> Isometry {
    match rng.gen_range(0..4) {
        0 => Isometry::translation(&random_lattice_point(rng, 5)),
        1 => Isometry::rotation_sixty(random_lattice_point(rng, 5), rng.gen_range(-6..6)),
        2 => {
            let a = random_lattice_point(rng, 5);
            let mut b = random_lattice_point(rng, 5);
            while b == a {
                b = random_lattice_point(rng, 5);
            }
            Isometry::reflection(a, b)
        }
        _ => {
            let sense = if rng.gen_bool(0.5) {
                Sense::Clockwise
            } else {
                Sense::Counterclockwise
            };
            chord_rotation(random_lattice_point(rng, 5), sense)
        }
    }
}

/// Random CNF over `vars` node variables with up to `max_clauses` clauses of
/// width 1–4, plus a few assumptions.
pub fn random_problem<R: Rng>(rng: &mut R, vars: usize, max_clauses: usize) -> ColoringProblem {
    let varmap: Vec<VarInfo> = (0..vars)
        .map(|i| VarInfo {
            name: format!("v{i}"),
            aux: false,
        })
        .collect();
    let n_clauses = rng.gen_range(1..=max_clauses);
    let clauses: Vec<Vec<i32>> = (0..n_clauses)
        .map(|_| {
            let w = rng.gen_range(1..=4.min(vars));
            let mut vs: Vec<i32> = (1..=vars as i32).collect();
            vs.shuffle(rng);
            vs[..w]
                .iter()
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    let n_assume = rng.gen_range(0..=2.min(vars));
    let mut vs: Vec<i32> = (1..=vars as i32).collect();
    vs.shuffle(rng);
    let assumptions = vs[..n_assume]
        .iter()
        .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
        .collect();
    ColoringProblem::new(varmap, clauses, assumptions)
}
