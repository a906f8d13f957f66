use std::collections::BTreeMap;

use crate::configuration::{Colour, Configuration, RuleId, TemplateId};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::geometry::{chord_rotation, Isometry, Motion, Point, Sense};
use crate::tilings::PeriodicColoring;

use super::figures::lattice_cfg;
use super::{Check, Figure, Identity, Obligation, Options, Script, ScriptId, Step};

use Colour::{Blue, Red};
use RuleId::*;

fn names(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn unit(node: &str, from: &str) -> Step {
    Step::Unit {
        node: node.into(),
        from: from.into(),
    }
}

fn chain(s: &str) -> Step {
    Step::Chain(names(s))
}

fn rule(rule: RuleId, s: &str) -> Step {
    Step::Rule {
        rule,
        names: names(s),
    }
}

fn extension(triangle: &str, t6: &str) -> Step {
    Step::Extension {
        triangle: names(triangle),
        t6: names(t6),
    }
}

struct Builder {
    id: ScriptId,
    figures: BTreeMap<String, Figure>,
    obligations: Vec<Obligation>,
    notes: Vec<String>,
    current: String,
}

impl Builder {
    fn new(id: ScriptId) -> Self {
        Builder {
            id,
            figures: BTreeMap::new(),
            obligations: Vec::new(),
            notes: Vec::new(),
            current: String::new(),
        }
    }

    fn figure(&mut self, key: &str, fig: Figure) -> &mut Self {
        self.figures.insert(key.to_string(), fig);
        self.current = key.to_string();
        self
    }

    fn note(&mut self, text: &str) -> &mut Self {
        self.notes.push(text.to_string());
        self
    }

    fn p(&self, name: &str) -> Result<Point> {
        Ok(self.figures[&self.current].cfg.point_of(name)?.clone())
    }

    fn push(&mut self, statement: &str, check: Check) -> &mut Self {
        self.obligations.push(Obligation {
            statement: statement.to_string(),
            check,
        });
        self
    }

    fn fig(&self) -> String {
        self.current.clone()
    }

    fn dist2(&mut self, statement: &str, a: &str, b: &str, value: FieldElement) -> &mut Self {
        let identity = Identity::Dist2 {
            a: a.into(),
            b: b.into(),
            value,
        };
        self.push(
            statement,
            Check::Geom {
                figure: self.fig(),
                identity,
            },
        )
    }

    fn unit_apart(&mut self, pairs: &[(&str, &str)]) -> &mut Self {
        for (a, b) in pairs {
            self.dist2(&format!("|{a}{b}| = 1"), a, b, FieldElement::one());
        }
        self
    }

    fn chain(&mut self, statement: &str, s: &str) -> &mut Self {
        self.push(
            statement,
            Check::Chain {
                figure: self.fig(),
                names: names(s),
            },
        )
    }

    fn pattern(
        &mut self,
        statement: &str,
        template: TemplateId,
        s: &str,
        ordered: bool,
    ) -> &mut Self {
        let check = Check::Pattern {
            figure: self.fig(),
            template,
            names: names(s),
            ordered,
        };
        self.push(statement, check)
    }

    fn completions(
        &mut self,
        statement: &str,
        template: TemplateId,
        base: &str,
        expected: &str,
        exact: bool,
    ) -> &mut Self {
        let check = Check::Completions {
            figure: self.fig(),
            template,
            base: names(base),
            expected: names(expected),
            exact,
        };
        self.push(statement, check)
    }

    fn image(
        &mut self,
        statement: &str,
        isometry: Isometry,
        from: &str,
        to: &str,
        ordered: bool,
    ) -> &mut Self {
        let check = Check::Image {
            figure: self.fig(),
            isometry,
            from: names(from),
            to: names(to),
            ordered,
        };
        self.push(statement, check)
    }

    fn forced(
        &mut self,
        statement: &str,
        node: &str,
        colour: Colour,
        steps: Vec<Step>,
    ) -> &mut Self {
        let check = Check::Forced {
            figure: self.fig(),
            node: node.into(),
            colour,
            steps,
        };
        self.push(statement, check)
    }

    /// Each listed node is blue, being at distance 1 from the red `from`.
    fn blue_near(&mut self, from: &str, nodes: &str) -> &mut Self {
        for n in names(nodes) {
            self.forced(
                &format!("{n} is blue, at distance 1 from the red point {from}"),
                &n,
                Blue,
                vec![unit(&n, from)],
            );
        }
        self
    }

    fn unsat(&mut self, statement: &str) -> &mut Self {
        self.push(statement, Check::Unsat { figure: self.fig() })
    }

    fn build(self) -> Script {
        Script {
            id: self.id,
            figures: self.figures,
            obligations: self.obligations,
            notes: self.notes,
        }
    }
}

pub(super) fn build(id: ScriptId, options: &Options) -> Result<Script> {
    match id {
        ScriptId::Bluetr => bluetr(),
        ScriptId::Redtr => redtr(),
        ScriptId::T7 => t7(),
        ScriptId::T3t6 => t3t6(),
        ScriptId::Col1 => col1(options.patch_radius),
        ScriptId::Col2 => col2(options.patch_radius),
        ScriptId::Theorem => theorem(),
    }
}

const BASE: [RuleId; 2] = [RedL2Forbidden, BlueL5Forbidden];

fn bluetr() -> Result<Script> {
    let mut b = Builder::new(ScriptId::Bluetr);
    b.figure("fig1a", Figure::load("fig1a")?)
        .note("XADEB is worded as a red ℓ5; X, A, D, E, B would be blue there, so the forcing uses a blue ℓ5")
        .pattern(
            "A, B, C form an equilateral triangle of side 3 with centre O",
            TemplateId::Eq3Centered,
            "O A B C",
            true,
        )
        .chain("XADEB is an ℓ5", "X A D E B")
        .chain("YAFGC is an ℓ5", "Y A F G C")
        .blue_near("O", "D E F G")
        .forced("X is red, otherwise XADEB is a blue ℓ5", "X", Red, vec![chain("X A D E B")])
        .forced("Y is red, otherwise YAFGC is a blue ℓ5", "Y", Red, vec![chain("Y A F G C")])
        .unit_apart(&[("X", "Y")])
        .unsat("a blue side-3 triangle with a red centre admits no colouring of the figure");
    Ok(b.build())
}

/// The `fig1a` configuration placed by a motion so that its triangle lands on A′B′C′ of
/// the rotated configuration.
fn gadget(fig1b: &Configuration) -> Result<Configuration> {
    let fig1a = Figure::load("fig1a")?.cfg;
    let (o, a, b, c) = (
        fig1a.point_of("O")?,
        fig1a.point_of("A")?,
        fig1a.point_of("B")?,
        fig1a.point_of("C")?,
    );
    let centre = fig1b.point_of("O")?;
    let targets = [
        fig1b.point_of("A'")?,
        fig1b.point_of("B'")?,
        fig1b.point_of("C'")?,
    ];
    let mut found: Option<Motion> = None;
    'search: for mirrored in [false, true] {
        for t in targets {
            let Some(m) = Motion::from_pairs(o, a, centre, t, mirrored) else {
                continue;
            };
            let rest = [m.apply(b), m.apply(c)];
            if rest.iter().all(|p| targets.contains(&p) && p != t) {
                found = Some(m);
                break 'search;
            }
        }
    }
    let m = found.ok_or_else(|| Error::Invalid("no motion places the gadget".into()))?;
    let moved = fig1a
        .nodes()
        .iter()
        .map(|n| (format!("g{}", n.name), m.apply(&n.point)));
    fig1b.extended(moved)
}

fn redtr() -> Result<Script> {
    let mut b = Builder::new(ScriptId::Redtr);
    let fig1b = Figure::load("fig1b")?;
    let gadget_cfg = gadget(&fig1b.cfg)?;
    let literal = lattice_cfg(&[("O", 0, 0), ("P", 1, 0), ("Q", -1, 1), ("R", 0, -1)])?;
    b.figure("fig1b", fig1b)
        .note("the statement speaks of side √3, but the argument and every later use concern side 3 with circumradius √3; the rule is established for side 3")
        .note("the argument starts from blue A, B, C; red A, B, C are meant, since A′, B′, C′ are blue as unit neighbours of them")
        .pattern(
            "A, B, C form an equilateral triangle of side 3 with centre O",
            TemplateId::Eq3Centered,
            "O A B C",
            true,
        );
    let rot = chord_rotation(b.p("O")?, Sense::Clockwise);
    b.image(
        "A′, B′, C′ are the images of A, B, C under the chord rotation about O",
        rot,
        "A B C",
        "A' B' C'",
        true,
    )
    .unit_apart(&[("A", "A'"), ("B", "B'"), ("C", "C'")])
    .pattern(
        "A′, B′, C′ form an equilateral triangle of side 3 with centre O",
        TemplateId::Eq3Centered,
        "O A' B' C'",
        true,
    )
    .blue_near("A", "A'")
    .blue_near("B", "B'")
    .blue_near("C", "C'")
    .unsat(
        "a red side-3 triangle with a red centre admits no colouring, using the blue-triangle rule",
    );
    b.figure(
        "gadget",
        Figure::new(gadget_cfg, &[("O", Red), ("A", Red), ("B", Red), ("C", Red)], &BASE),
    )
    .pattern(
        "the moved copy of the blue-triangle figure has its triangle on A′, B′, C′",
        TemplateId::Eq3Centered,
        "gO gA gB gC",
        true,
    )
    .unsat("the same contradiction follows from the base rules with the blue-triangle figure placed on A′B′C′");
    b.figure(
        "literal",
        Figure::new(
            literal,
            &[("O", Red), ("P", Red), ("Q", Red), ("R", Red)],
            &[RedL2Forbidden],
        ),
    )
    .dist2("P and Q are √3 apart", "P", "Q", FieldElement::from_int(3))
    .dist2("Q and R are √3 apart", "Q", "R", FieldElement::from_int(3))
    .dist2("P and R are √3 apart", "P", "R", FieldElement::from_int(3))
    .unsat(
        "a red side-√3 triangle cannot have a red centre, its vertices being at distance 1 from it",
    );
    Ok(b.build())
}

fn t7() -> Result<Script> {
    let mut b = Builder::new(ScriptId::T7);
    b.figure("fig3", Figure::load("fig3")?).pattern(
        "A, B, C, D, E, F, G form a T7",
        TemplateId::T7,
        "A B C D E F G",
        false,
    );
    let reflect = Isometry::reflection(b.p("B")?, b.p("C")?);
    let about_b = chord_rotation(b.p("B")?, Sense::Clockwise);
    let about_c = chord_rotation(b.p("C")?, Sense::Clockwise);
    let about_x = Isometry::rotation_sixty(b.p("X")?, -1);
    b.image("X is the reflection of F in BC", reflect, "F", "X", true)
        .image(
            "X′, A′, F′ are the images of X, A, F under the clockwise chord rotation about B",
            about_b,
            "X A F",
            "X' A' F'",
            true,
        )
        .unit_apart(&[("X", "X'"), ("A", "A'"), ("F", "F'")])
        .blue_near("A", "A'")
        .blue_near("F", "F'")
        .pattern(
            "X′, A′, F′ form a side-3 triangle centred at B",
            TemplateId::BlueEq3RedCenter,
            "B X' A' F'",
            true,
        )
        .forced(
            "X′ is red, otherwise X′A′F′ is a blue side-3 triangle with red centre B",
            "X'",
            Red,
            vec![rule(BlueEq3RedCenterForbidden, "B X' A' F'")],
        )
        .image(
            "X″, D″, F″ are the images of X, D, F under the clockwise chord rotation about C",
            about_c,
            "X D F",
            "X'' D'' F''",
            true,
        )
        .unit_apart(&[("X", "X''"), ("D", "D''"), ("F", "F''")])
        .blue_near("D", "D''")
        .blue_near("F", "F''")
        .pattern(
            "X″, D″, F″ form a side-3 triangle centred at C",
            TemplateId::BlueEq3RedCenter,
            "C X'' D'' F''",
            true,
        )
        .forced(
            "X″ is red, otherwise X″D″F″ is a blue side-3 triangle with red centre C",
            "X''",
            Red,
            vec![rule(BlueEq3RedCenterForbidden, "C X'' D'' F''")],
        )
        .image(
            "X′ is the image of X″ under the clockwise 60° rotation about X",
            about_x,
            "X''",
            "X'",
            true,
        )
        .dist2(
            "XX′X″ is a unit equilateral triangle: |X′X″| = 1",
            "X'",
            "X''",
            FieldElement::one(),
        )
        .unsat("a red T7 admits no colouring of the figure");
    Ok(b.build())
}

fn t3t6() -> Result<Script> {
    let mut b = Builder::new(ScriptId::T3t6);
    b.note("of the placements completing ABCD to a T5, the argument names X, F and G; a fourth, mirror-image placement exists and is not needed, since assuming fewer blue points only weakens the hypothesis")
        .note("the last stage is verified for the T5 placement of the third figure only");

    b.figure("fig4", Figure::load("fig4")?)
        .pattern("A, B, C form a T3", TemplateId::T3, "A B C", false)
        .completions(
            "X, Y, Z are the points completing ABC to a T4",
            TemplateId::T4,
            "A B C",
            "X Y Z",
            true,
        )
        .blue_near("B", "E F")
        .blue_near("C", "G H")
        .blue_near("A", "I J")
        .chain("LMYGH is an ℓ5", "L M Y G H")
        .forced(
            "K is blue: if K were red, L and M would be blue and LMYGH a blue ℓ5",
            "K",
            Blue,
            vec![unit("L", "K"), unit("M", "K"), chain("L M Y G H")],
        )
        .forced(
            "N is red, otherwise KJIZN is a blue ℓ5",
            "N",
            Red,
            vec![chain("K J I Z N")],
        )
        .blue_near("N", "P Q")
        .chain("PQFEX is an ℓ5", "P Q F E X")
        .unsat("a red T3 with no red point completing it to a T4 admits no colouring");

    b.figure("fig5", Figure::load("fig5")?)
        .pattern("A, B, C, D form a T4", TemplateId::T4, "A B C D", false)
        .completions(
            "X, F and G each complete ABCD to a T5",
            TemplateId::T5,
            "A B C D",
            "X F G",
            false,
        )
        .blue_near("C", "H I")
        .blue_near("B", "K L")
        .blue_near("D", "M N")
        .forced(
            "P is red, otherwise FHIGP is a blue ℓ5",
            "P",
            Red,
            vec![chain("F H I G P")],
        )
        .blue_near("P", "Q R")
        .chain("XNMQR is an ℓ5", "X N M Q R")
        .unsat("a red T4 with no red point completing it to a T5 admits no colouring");

    b.figure("fig6", Figure::load("fig6")?)
        .pattern("A, B, C, D, E form a T5", TemplateId::T5, "A B C D E", false)
        .completions("F is the only point completing ABCDE to a T6", TemplateId::T6, "A B C D E", "F", true)
        .pattern(
            "X, E, C form a side-3 triangle centred at B",
            TemplateId::RedEq3RedCenter,
            "B X E C",
            true,
        )
        .pattern(
            "Y, A, D form a side-3 triangle centred at B",
            TemplateId::RedEq3RedCenter,
            "B Y A D",
            true,
        )
        .forced(
            "X is blue, otherwise X, E, C form a red side-3 triangle with red centre B",
            "X",
            Blue,
            vec![rule(RedEq3RedCenterForbidden, "B X E C")],
        )
        .forced(
            "Y is blue, otherwise Y, A, D form a red side-3 triangle with red centre B",
            "Y",
            Blue,
            vec![rule(RedEq3RedCenterForbidden, "B Y A D")],
        )
        .blue_near("A", "G H")
        .blue_near("E", "I J")
        .blue_near("C", "K L")
        .blue_near("D", "M N")
        .forced(
            "P is red: if P were blue, Q would be red by QPKLF, then U and T blue and TUGHX a blue ℓ5",
            "P",
            Red,
            vec![chain("Q P K L F"), unit("U", "Q"), unit("T", "Q"), chain("T U G H X")],
        )
        .forced(
            "R is red: if R were blue, S would be red by FMNRS, then V and W blue and VWJIY a blue ℓ5",
            "R",
            Red,
            vec![chain("F M N R S"), unit("V", "S"), unit("W", "S"), chain("V W J I Y")],
        )
        .pattern("A, B, C, D, E, P, R form a T7", TemplateId::T7, "A B C D E P R", false)
        .unsat("a red T5 whose T6 completion F is blue admits no colouring");
    Ok(b.build())
}

fn col1(radius: i64) -> Result<Script> {
    let mut b = Builder::new(ScriptId::Col1);
    b.figure("col1", Figure::load("col1")?.with_patch((4, 0), radius)?)
        .note("A′JNMR is worded as a red ℓ5; it is a blue ℓ5 that forces A′ red")
        .note("the argument as worded concludes that A′, …, F′ are blue; its own derivation makes them red, which is what is verified")
        .pattern("A, B, C, D, E, F form a T6", TemplateId::T6, "A B C D E F", false);
    let shift = Isometry::translation(&b.p("A'")?.sub(&b.p("A")?));
    let turn = Isometry::rotation_sixty(Point::lattice(2, 0), 2);
    let fig = b.fig();
    b.image(
        "A′B′C′D′E′F′ is the translate of ABCDEF by a vector of length 5",
        shift,
        "A B C D E F",
        "A' B' C' D' E' F'",
        true,
    )
    .dist2("|AA′| = 5", "A", "A'", FieldElement::from_int(25))
    .push(
        "the translation vector is collinear with AD",
        Check::Geom {
            figure: fig,
            identity: Identity::Collinear {
                a: "A".into(),
                b: "D".into(),
                c: "A'".into(),
            },
        },
    )
    .image(
        "the 120° rotation about the centre of ABCDEF maps it to itself, so the translates along EB and CF follow in the same way",
        turn,
        "A B C D E F",
        "A B C D E F",
        false,
    )
    .forced(
        "I is blue, otherwise A, D, I form a red side-3 triangle with red centre F",
        "I",
        Blue,
        vec![rule(RedEq3RedCenterForbidden, "F A D I")],
    )
    .forced(
        "J is blue, otherwise C, F, J form a red side-3 triangle with red centre D",
        "J",
        Blue,
        vec![rule(RedEq3RedCenterForbidden, "D C F J")],
    )
    .blue_near("A", "K")
    .blue_near("F", "L")
    .blue_near("E", "M N")
    .chain("KLIQP is an ℓ5", "K L I Q P")
    .forced(
        "R is blue: if R were red, P and Q would be blue and KLIQP a blue ℓ5",
        "R",
        Blue,
        vec![unit("P", "R"), unit("Q", "R"), chain("K L I Q P")],
    )
    .forced("A′ is red, otherwise A′JNMR is a blue ℓ5", "A'", Red, vec![chain("A' J N M R")])
    .blue_near("D", "S1 S2")
    .blue_near("A'", "S3 S4")
    .forced("B′ is red, otherwise S1S2S3S4B′ is a blue ℓ5", "B'", Red, vec![chain("S1 S2 S3 S4 B'")])
    .blue_near("D", "S5")
    .blue_near("E", "S6")
    .blue_near("A'", "S7")
    .forced("F′ is red, otherwise S5S6JS7F′ is a blue ℓ5", "F'", Red, vec![chain("S5 S6 J S7 F'")])
    .blue_near("C", "V W")
    .forced(
        "U is blue, otherwise U, A, D form a red side-3 triangle with red centre B",
        "U",
        Blue,
        vec![rule(RedEq3RedCenterForbidden, "B U A D")],
    )
    .forced(
        "X is blue: if X were red, X1 and X2 would be blue and UVWX1X2 a blue ℓ5",
        "X",
        Blue,
        vec![unit("X1", "X"), unit("X2", "X"), chain("U V W X1 X2")],
    )
    .blue_near("E", "V*")
    .forced(
        "Y is blue: if Y were red, Y1 and Y2 would be blue and IV*MY1Y2 a blue ℓ5",
        "Y",
        Blue,
        vec![unit("Y1", "Y"), unit("Y2", "Y"), chain("I V* M Y1 Y2")],
    );
    for n in ["C'", "D'", "E'"] {
        b.forced(
            &format!("{n} is red: A′B′F′ lies in a red T6 and every placement other than A′B′C′D′E′F′ meets a blue point"),
            n,
            Red,
            vec![extension("A' B' F'", "A' B' C' D' E' F'")],
        );
    }
    b.push(
        "the periodic colouring with cluster ABCDEF agrees with every colour established and satisfies all rules on the patch",
        Check::SatWitness {
            figure: "col1".into(),
            pattern: PeriodicColoring::pattern_a(),
        },
    );
    Ok(b.build())
}

fn col2(radius: i64) -> Result<Script> {
    let mut b = Builder::new(ScriptId::Col2);
    let ring = lattice_cfg(&[
        ("A", 0, 0),
        ("R1", 1, 1),
        ("R2", -1, 2),
        ("R3", -2, 1),
        ("R4", -1, -1),
        ("R5", 1, -2),
        ("R6", 2, -1),
    ])?;
    let ring_hyp: Vec<(&str, Colour)> = [
        ("A", Red),
        ("R1", Blue),
        ("R2", Blue),
        ("R3", Blue),
        ("R4", Blue),
        ("R5", Blue),
        ("R6", Blue),
    ]
    .to_vec();
    b.figure(
        "ring",
        Figure::new(ring, &ring_hyp, &[RedL2Forbidden, BlueL5Forbidden, BlueEq3RedCenterForbidden]),
    )
    .unsat("some point at distance √3 from the red point A is red, otherwise two blue side-3 triangles are centred at A");

    b.figure("col2", Figure::load("col2")?.with_patch((-1, 1), radius)?)
        .dist2(
            "B is at distance √3 from A",
            "A",
            "B",
            FieldElement::from_int(3),
        )
        .pattern("A, B, D form a T3", TemplateId::T3, "A B D", false)
        .pattern("A, B, G form a T3", TemplateId::T3, "A B G", false)
        .forced(
            "D is blue, since there is no red T3",
            "D",
            Blue,
            vec![rule(NoRedT3, "A B D")],
        )
        .forced(
            "G is blue, since there is no red T3",
            "G",
            Blue,
            vec![rule(NoRedT3, "A B G")],
        )
        .blue_near("B", "E F I H K J")
        .forced(
            "B′ is red, otherwise DEFGB′ is a blue ℓ5",
            "B'",
            Red,
            vec![chain("D E F G B'")],
        )
        .blue_near("B'", "N")
        .forced(
            "C is red, otherwise CHIGN is a blue ℓ5",
            "C",
            Red,
            vec![chain("C H I G N")],
        )
        .forced(
            "A′ is red, otherwise HIGNA′ is a blue ℓ5",
            "A'",
            Red,
            vec![chain("H I G N A'")],
        );
    let step = |b: &Builder, from: &str, to: &str| -> Result<Isometry> {
        Ok(Isometry::translation(&b.p(to)?.sub(&b.p(from)?)))
    };
    let ab = step(&b, "A", "B")?;
    let a1 = step(&b, "A", "A'")?;
    let a2 = step(&b, "A", "A''")?;
    let a3 = step(&b, "A", "A'''")?;
    b.image("the pair B, C repeats the configuration of A, B along the line AB", ab, "A B", "B C", true)
        .image("A′, B′ is the same configuration translated off the line AB", a1, "A B", "A' B'", true)
        .image("A″, B″ is the same configuration on the next parallel line", a2, "A B", "A'' B''", true)
        .image("A‴, B‴ is the same configuration on a further parallel line", a3, "A B", "A''' B'''", true)
        .push(
            "the sublattice colouring through A and B agrees with every colour established and satisfies all rules on the patch",
            Check::SatWitness {
                figure: "col2".into(),
                pattern: PeriodicColoring::pattern_b(),
            },
        );
    Ok(b.build())
}

fn theorem() -> Result<Script> {
    let mut b = Builder::new(ScriptId::Theorem);
    let c = Point::new(
        FieldElement::from_ratio(49, 10),
        FieldElement::sqrt11().scale(&crate::field::rat(3, 10)),
    );
    let witness = Configuration::build([
        ("A", Point::origin()),
        ("B", Point::lattice(5, 0)),
        ("C", c),
    ])?;
    let line = lattice_cfg(&[
        ("P0", 0, 0),
        ("P1", 1, 0),
        ("P2", 2, 0),
        ("P3", 3, 0),
        ("P4", 4, 0),
    ])?;
    let blue_line: Vec<(&str, Colour)> = ["P0", "P1", "P2", "P3", "P4"]
        .iter()
        .map(|&n| (n, Blue))
        .collect();
    b.figure("line", Figure::new(line, &blue_line, &[BlueL5Forbidden]))
        .unsat("there is a red point, since five blue points at unit spacing are excluded");
    b.figure(
        "witness",
        Figure::new(witness, &[("B", Red), ("C", Red)], &[RedL2Forbidden]),
    )
    .dist2("|AB| = 5", "A", "B", FieldElement::from_int(25))
    .dist2("|AC| = 5", "A", "C", FieldElement::from_int(25))
    .dist2("|BC| = 1", "B", "C", FieldElement::one())
    .unsat("B and C are not both red");
    for pattern in [PeriodicColoring::pattern_a(), PeriodicColoring::pattern_b()] {
        let id = pattern.id.clone();
        b.push(
            &format!("pattern {id} has no red unit pair and no blue ℓ5"),
            Check::PatternValid {
                pattern: pattern.clone(),
                radius: 12,
            },
        )
        .push(
            &format!("pattern {id} has no two points of different colour at distance 5"),
            Check::Distance5 { pattern },
        );
    }
    b.push(
        "the lattice vectors of length 5 are permuted by the lattice symmetries, so rotated and reflected copies of the patterns are covered",
        Check::NormClosure { norm2: 25 },
    );
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_script_builds() {
        for id in ScriptId::ALL {
            let s = build(id, &Options::default()).unwrap();
            assert!(!s.obligations.is_empty(), "{id}");
        }
    }

    #[test]
    fn gadget_lands_on_rotated_triangle() {
        let fig1b = Figure::load("fig1b").unwrap();
        let g = gadget(&fig1b.cfg).unwrap();
        assert_eq!(g.index_of("gO").unwrap(), g.index_of("O").unwrap());
        let tri: Vec<usize> = ["A'", "B'", "C'"]
            .iter()
            .map(|n| g.index_of(n).unwrap())
            .collect();
        for n in ["gA", "gB", "gC"] {
            assert!(tri.contains(&g.index_of(n).unwrap()));
        }
    }
}
