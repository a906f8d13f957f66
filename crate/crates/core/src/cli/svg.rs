//! SVG rendering of configurations and pattern patches. Coordinates are
//! rounded to 9 decimals here and nowhere else.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::configuration::{Colour, Configuration};
use crate::geometry::{hex_patch, Point};
use crate::tilings::PeriodicColoring;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 1.5;
const GLYPH: f64 = 0.18;

#[derive(Clone, Debug)]
pub struct Glyph {
    pub x: f64,
    pub y: f64,
    pub colour: Option<Colour>,
    pub label: Option<String>,
}

fn num(v: f64) -> String {
    let s = format!("{v:.9}");
    if s == "-0.000000000" {
        "0.000000000".into()
    } else {
        s
    }
}

/// Replaces ASCII primes with typographic ones.
pub fn pretty_label(name: &str) -> String {
    name.replace("'''", "‴")
        .replace("''", "″")
        .replace('\'', "′")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn bounds(glyphs: &[Glyph]) -> (f64, f64, f64, f64) {
    if glyphs.is_empty() {
        return (-3.0, -3.0, 3.0, 3.0);
    }
    let mut b = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for g in glyphs {
        b.0 = b.0.min(g.x);
        b.1 = b.1.min(g.y);
        b.2 = b.2.max(g.x);
        b.3 = b.3.max(g.y);
    }
    (b.0 - MARGIN, b.1 - MARGIN, b.2 + MARGIN, b.3 + MARGIN)
}

fn grid(out: &mut String, (x0, y0, x1, y1): (f64, f64, f64, f64)) {
    let h = 3f64.sqrt() / 2.0;
    let rows = ((y0 / h).floor() as i64, (y1 / h).ceil() as i64);
    out.push_str(
        "<g class=\"grid\" stroke=\"#bbb\" stroke-width=\"0.5\" stroke-dasharray=\"3 3\">\n",
    );
    for r in rows.0..=rows.1 {
        let y = r as f64 * h;
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            num(x0 * SCALE),
            num(-y * SCALE),
            num(x1 * SCALE),
            num(-y * SCALE)
        );
    }
    // Lines at ±60°: x = c + y/√3 and x = c − y/√3 for integer c.
    let t = 1.0 / 3f64.sqrt();
    for sign in [1.0, -1.0] {
        let lo = (x0 - (sign * t * y0).max(sign * t * y1)).floor() as i64;
        let hi = (x1 - (sign * t * y0).min(sign * t * y1)).ceil() as i64;
        for c in lo..=hi {
            let c = c as f64;
            let (xa, xb) = (c + sign * t * y0, c + sign * t * y1);
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(xa * SCALE),
                num(-y0 * SCALE),
                num(xb * SCALE),
                num(-y1 * SCALE)
            );
        }
    }
    out.push_str("</g>\n");
}

/// Renders glyphs on a dashed unit-lattice grid. Red is a diamond, blue a
/// disc, unknown a hollow disc.
pub fn render(glyphs: &[Glyph]) -> String {
    let b = bounds(glyphs);
    let (w, h) = ((b.2 - b.0) * SCALE, (b.3 - b.1) * SCALE);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
        num(b.0 * SCALE),
        num(-b.3 * SCALE),
        num(w),
        num(h),
        num(w),
        num(h)
    );
    out.push_str("<defs><clipPath id=\"view\">");
    let _ = write!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
        num(b.0 * SCALE),
        num(-b.3 * SCALE),
        num(w),
        num(h)
    );
    out.push_str("</clipPath></defs>\n<g clip-path=\"url(#view)\">\n");
    grid(&mut out, b);
    out.push_str("</g>\n");
    let r = GLYPH * SCALE;
    for g in glyphs {
        let (x, y) = (g.x * SCALE, -g.y * SCALE);
        match g.colour {
            Some(Colour::Red) => {
                let _ = writeln!(
                    out,
                    "<polygon class=\"red\" fill=\"#d62728\" stroke=\"#000\" points=\"{},{} {},{} {},{} {},{}\"/>",
                    num(x),
                    num(y - r),
                    num(x + r),
                    num(y),
                    num(x),
                    num(y + r),
                    num(x - r),
                    num(y)
                );
            }
            Some(Colour::Blue) => {
                let _ = writeln!(out, "<circle class=\"blue\" fill=\"#1f77b4\" stroke=\"#000\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", num(x), num(y), num(r * 0.8));
            }
            None => {
                let _ = writeln!(out, "<circle class=\"unknown\" fill=\"none\" stroke=\"#000\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", num(x), num(y), num(r * 0.8));
            }
        }
        if let Some(label) = &g.label {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"serif\">{}</text>",
                num(x + r),
                num(y - r),
                escape(&pretty_label(label))
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn glyph(p: &Point, colour: Option<Colour>, label: Option<String>) -> Glyph {
    let (x, y) = p.to_f64();
    Glyph {
        x,
        y,
        colour,
        label,
    }
}

/// One glyph per node, coloured by `colours` where any of its names is
/// listed. Patch nodes named `n[a,b]` are left unlabelled.
pub fn render_configuration(cfg: &Configuration, colours: &BTreeMap<String, Colour>) -> String {
    let glyphs: Vec<Glyph> = cfg
        .nodes()
        .iter()
        .map(|n| {
            let names: Vec<&String> = std::iter::once(&n.name).chain(&n.aliases).collect();
            let colour = names.iter().find_map(|m| colours.get(*m).copied());
            let label = names
                .iter()
                .find(|m| !m.starts_with("n["))
                .map(|m| m.to_string());
            glyph(&n.point, colour, label)
        })
        .collect();
    render(&glyphs)
}

/// The hex patch of `radius` around the origin coloured by the pattern.
pub fn render_pattern(pattern: &PeriodicColoring, radius: i64) -> String {
    let glyphs: Vec<Glyph> = hex_patch(radius)
        .into_iter()
        .map(|(a, b)| glyph(&Point::lattice(a, b), Some(pattern.color_of((a, b))), None))
        .collect();
    render(&glyphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemmata::figure_instance;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn fig1a_has_ten_glyphs() {
        let inst = figure_instance("fig1a").unwrap();
        let svg = render_configuration(&inst.configuration().unwrap(), &inst.fixed);
        assert_eq!(
            count(&svg, "red") + count(&svg, "blue") + count(&svg, "unknown"),
            10
        );
        assert_eq!(count(&svg, "red"), 1);
        assert_eq!(count(&svg, "blue"), 3);
    }

    #[test]
    fn empty_is_grid_only() {
        let svg = render(&[]);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains("stroke-dasharray"));
        assert!(!svg.contains("<circle") && !svg.contains("<polygon"));
    }

    #[test]
    fn fig3_labels() {
        let inst = figure_instance("fig3").unwrap();
        let svg = render_configuration(&inst.configuration().unwrap(), &inst.fixed);
        assert!(svg.contains(">X′<") && svg.contains(">X″<"));
    }

    #[test]
    fn pattern_red_count_matches_membership() {
        let p = PeriodicColoring::pattern_b();
        let svg = render_pattern(&p, 5);
        let reds = hex_patch(5)
            .into_iter()
            .filter(|&n| p.color_of(n) == Colour::Red)
            .count();
        assert_eq!(count(&svg, "red"), reds);
        assert_eq!(count(&svg, "blue"), hex_patch(5).len() - reds);
    }

    #[test]
    fn deterministic() {
        let p = PeriodicColoring::pattern_a();
        assert_eq!(render_pattern(&p, 4), render_pattern(&p, 4));
    }

    #[test]
    fn labels() {
        assert_eq!(pretty_label("A'''"), "A‴");
        assert_eq!(pretty_label("X''"), "X″");
        assert_eq!(pretty_label("B'"), "B′");
    }
}
