//! Exact planar points, isometries and the unit triangular lattice.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{rat, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(FieldElement::zero(), FieldElement::zero())
    }

    /// Node `a·e1 + b·e2` of the canonical lattice, `e1 = (1, 0)`,
    /// `e2 = (1/2, √3/2)`.
    pub fn lattice(a: i64, b: i64) -> Self {
        let x = FieldElement::from_int(a) + FieldElement::from_ratio(b, 2);
        let y = FieldElement::sqrt3().scale(&rat(b, 2));
        Point::new(x, y)
    }

    pub fn add(&self, v: &Point) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    pub fn sub(&self, v: &Point) -> Point {
        Point::new(&self.x - &v.x, &self.y - &v.y)
    }

    pub fn scale(&self, k: &FieldElement) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, v: &Point) -> FieldElement {
        &self.x * &v.x + &self.y * &v.y
    }

    pub fn cross(&self, v: &Point) -> FieldElement {
        &self.x * &v.y - &self.y * &v.x
    }

    pub fn norm2(&self) -> FieldElement {
        self.dot(self)
    }

    /// Lexicographic order on `(x, y)` by exact sign comparison.
    pub fn cmp_lex(&self, other: &Point) -> Ordering {
        self.x
            .cmp_value(&other.x)
            .then_with(|| self.y.cmp_value(&other.y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn dist2(p: &Point, q: &Point) -> FieldElement {
    p.sub(q).norm2()
}

/// Orientation determinant `(q − p) × (r − p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> FieldElement {
    q.sub(p).cross(&r.sub(p))
}

pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    orientation(p, q, r).is_zero()
}

/// `(cos, sin)` of `k · 60°`.
pub fn sixty_degrees(k: i64) -> (FieldElement, FieldElement) {
    let half = FieldElement::from_ratio(1, 2);
    let h3 = FieldElement::sqrt3().scale(&rat(1, 2));
    match k.rem_euclid(6) {
        0 => (FieldElement::one(), FieldElement::zero()),
        1 => (half, h3),
        2 => (-half, h3),
        3 => (FieldElement::from_int(-1), FieldElement::zero()),
        4 => (-half, -h3),
        _ => (half, -h3),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    Counterclockwise,
    Clockwise,
}

impl Sense {
    pub fn sign(self) -> i64 {
        match self {
            Sense::Counterclockwise => 1,
            Sense::Clockwise => -1,
        }
    }

    pub fn opposite(self) -> Sense {
        match self {
            Sense::Counterclockwise => Sense::Clockwise,
            Sense::Clockwise => Sense::Counterclockwise,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Isometry {
    Translation {
        dx: FieldElement,
        dy: FieldElement,
    },
    Rotation {
        center: Point,
        cos: FieldElement,
        sin: FieldElement,
    },
    Reflection {
        a: Point,
        b: Point,
    },
}

impl Isometry {
    pub fn translation(v: &Point) -> Self {
        Isometry::Translation {
            dx: v.x.clone(),
            dy: v.y.clone(),
        }
    }

    pub fn rotation_sixty(center: Point, k: i64) -> Self {
        let (cos, sin) = sixty_degrees(k);
        Isometry::Rotation { center, cos, sin }
    }

    pub fn reflection(a: Point, b: Point) -> Self {
        Isometry::Reflection { a, b }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Isometry::Translation { .. } => Ok(()),
            Isometry::Rotation { cos, sin, .. } => {
                if (cos.square() + sin.square()).is_one() {
                    Ok(())
                } else {
                    Err(Error::InvalidIsometry(format!(
                        "cos² + sin² ≠ 1 for cos = {cos}, sin = {sin}"
                    )))
                }
            }
            Isometry::Reflection { a, b } => {
                if a == b {
                    Err(Error::InvalidIsometry(
                        "reflection line endpoints coincide".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        self.validate()?;
        Ok(match self {
            Isometry::Translation { dx, dy } => Point::new(&p.x + dx, &p.y + dy),
            Isometry::Rotation { center, cos, sin } => {
                let d = p.sub(center);
                Point::new(
                    &center.x + &(cos * &d.x - sin * &d.y),
                    &center.y + &(sin * &d.x + cos * &d.y),
                )
            }
            Isometry::Reflection { a, b } => {
                let dir = b.sub(a);
                let rel = p.sub(a);
                let t = rel.dot(&dir).checked_div(&dir.norm2())?;
                let foot = a.add(&dir.scale(&t));
                foot.scale(&FieldElement::from_int(2)).sub(p)
            }
        })
    }

    pub fn to_motion(&self) -> Result<Motion> {
        self.validate()?;
        Ok(match self {
            Isometry::Translation { dx, dy } => Motion {
                cos: FieldElement::one(),
                sin: FieldElement::zero(),
                mirrored: false,
                offset: Point::new(dx.clone(), dy.clone()),
            },
            Isometry::Rotation { cos, sin, .. } => {
                let linear = Motion {
                    cos: cos.clone(),
                    sin: sin.clone(),
                    mirrored: false,
                    offset: Point::origin(),
                };
                let o = Point::origin();
                let offset = self.apply(&o)?;
                Motion { offset, ..linear }
            }
            Isometry::Reflection { a, b } => {
                // the linear part reflects in the direction of the line
                let dir = b.sub(a);
                let n = dir.norm2();
                let cos = (dir.x.square() - dir.y.square()).checked_div(&n)?;
                let sin = (&dir.x * &dir.y).scale(&rat(2, 1)).checked_div(&n)?;
                let offset = self.apply(&Point::origin())?;
                Motion {
                    cos,
                    sin,
                    mirrored: true,
                    offset,
                }
            }
        })
    }
}

/// Rotation about `center` whose chord on the circle of radius √3 has length 1:
/// `cos = 5/6`, `sin = ±√11/6`.
pub fn chord_rotation(center: Point, sense: Sense) -> Isometry {
    Isometry::Rotation {
        center,
        cos: FieldElement::from_ratio(5, 6),
        sin: FieldElement::sqrt11().scale(&rat(sense.sign(), 6)),
    }
}

/// An isometry in normal form `p ↦ L·p + offset`, where `L` is the rotation
/// `((cos, −sin), (sin, cos))` or, when mirrored, the reflection
/// `((cos, sin), (sin, −cos))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motion {
    pub cos: FieldElement,
    pub sin: FieldElement,
    pub mirrored: bool,
    pub offset: Point,
}

impl Motion {
    pub fn identity() -> Self {
        Motion {
            cos: FieldElement::one(),
            sin: FieldElement::zero(),
            mirrored: false,
            offset: Point::origin(),
        }
    }

    fn linear(&self, p: &Point) -> Point {
        let (c, s) = (&self.cos, &self.sin);
        if self.mirrored {
            Point::new(c * &p.x + s * &p.y, s * &p.x - c * &p.y)
        } else {
            Point::new(c * &p.x - s * &p.y, s * &p.x + c * &p.y)
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.linear(p).add(&self.offset)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Motion) -> Motion {
        let e1 = self.linear(&other.linear(&Point::new(FieldElement::one(), FieldElement::zero())));
        let offset = self.apply(&other.offset);
        Motion {
            cos: e1.x,
            sin: e1.y,
            mirrored: self.mirrored != other.mirrored,
            offset,
        }
    }

    /// The unique motion with the given handedness sending `p0 ↦ q0` and
    /// `p1 ↦ q1`; `None` when the two segments differ in length or `p0 = p1`.
    pub fn from_pairs(
        p0: &Point,
        p1: &Point,
        q0: &Point,
        q1: &Point,
        mirrored: bool,
    ) -> Option<Motion> {
        let u = p1.sub(p0);
        let w = q1.sub(q0);
        let n = u.norm2();
        if n.is_zero() || n != w.norm2() {
            return None;
        }
        let inv = n.inverse().ok()?;
        let (cos, sin) = if mirrored {
            (
                (&w.x * &u.x - &w.y * &u.y) * &inv,
                (&w.x * &u.y + &w.y * &u.x) * &inv,
            )
        } else {
            (
                (&w.x * &u.x + &w.y * &u.y) * &inv,
                (&w.y * &u.x - &w.x * &u.y) * &inv,
            )
        };
        let mut m = Motion {
            cos,
            sin,
            mirrored,
            offset: Point::origin(),
        };
        m.offset = q0.sub(&m.linear(p0));
        Some(m)
    }
}

/// A unit triangular lattice `origin + a·e1 + b·e2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFrame {
    pub origin: Point,
    pub e1: Point,
    pub e2: Point,
}

impl Default for LatticeFrame {
    fn default() -> Self {
        LatticeFrame {
            origin: Point::origin(),
            e1: Point::lattice(1, 0),
            e2: Point::lattice(0, 1),
        }
    }
}

impl LatticeFrame {
    pub fn new(origin: Point, e1: Point, e2: Point) -> Result<Self> {
        let frame = LatticeFrame { origin, e1, e2 };
        let unit = frame.e1.norm2().is_one() && frame.e2.norm2().is_one();
        if !unit || frame.e1.dot(&frame.e2) != FieldElement::from_ratio(1, 2) {
            return Err(Error::Invalid(
                "lattice frame needs unit vectors at 60°".into(),
            ));
        }
        Ok(frame)
    }

    pub fn node(&self, a: i64, b: i64) -> Point {
        self.origin
            .add(&self.e1.scale(&FieldElement::from_int(a)))
            .add(&self.e2.scale(&FieldElement::from_int(b)))
    }
}

/// Integer coordinates `(a, b)` of `p = a·e1 + b·e2` in the canonical frame,
/// if `p` is a lattice node.
pub fn lattice_coords(p: &Point) -> Option<(i64, i64)> {
    let [x0, x1, x2, x3] = p.x.coeffs();
    let [y0, y1, y2, y3] = p.y.coeffs();
    if !(x1.is_zero()
        && x2.is_zero()
        && x3.is_zero()
        && y0.is_zero()
        && y2.is_zero()
        && y3.is_zero())
    {
        return None;
    }
    let b = y1 * rat(2, 1);
    let a = x0 - &b * rat(1, 2);
    if !a.is_integer() || !b.is_integer() {
        return None;
    }
    Some((
        a.to_integer().try_into().ok()?,
        b.to_integer().try_into().ok()?,
    ))
}

pub fn hex_norm(a: i64, b: i64) -> i64 {
    a.abs().max(b.abs()).max((a + b).abs())
}

/// Lattice norm `a² + ab + b²` of the vector `a·e1 + b·e2`.
pub fn lattice_norm2(a: i64, b: i64) -> i64 {
    a * a + a * b + b * b
}

/// Integer coordinates of the hexagonal patch of radius `radius`, ordered by
/// `a` then `b`.
pub fn hex_patch(radius: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            if hex_norm(a, b) <= radius {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn lattice_points(frame: &LatticeFrame, radius: i64) -> Vec<Point> {
    hex_patch(radius)
        .into_iter()
        .map(|(a, b)| frame.node(a, b))
        .collect()
}

pub fn lattice_vectors_of_norm2(n: i64) -> Vec<(i64, i64)> {
    let bound = (n.max(0) as f64).sqrt().ceil() as i64 + 1;
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if lattice_norm2(a, b) == n {
                out.push((a, b));
            }
        }
    }
    out
}

/// Rotation by 60° in lattice coordinates: `e1 ↦ e2`, `e2 ↦ e2 − e1`.
pub fn lattice_rot60((a, b): (i64, i64)) -> (i64, i64) {
    (-b, a + b)
}

/// Reflection in the `e1` axis in lattice coordinates.
pub fn lattice_mirror((a, b): (i64, i64)) -> (i64, i64) {
    (a + b, -b)
}

pub type LatticeMap = Box<dyn Fn((i64, i64)) -> (i64, i64) + Send + Sync>;

/// The 12 point symmetries of the lattice, as integer maps.
pub fn lattice_symmetries() -> Vec<LatticeMap> {
    let mut out: Vec<LatticeMap> = Vec::new();
    for mirror in [false, true] {
        for k in 0..6 {
            out.push(Box::new(move |mut v| {
                if mirror {
                    v = lattice_mirror(v);
                }
                for _ in 0..k {
                    v = lattice_rot60(v);
                }
                v
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::from_ratio(n, d)
    }

    #[test]
    fn distances() {
        assert!(dist2(&Point::origin(), &Point::lattice(1, 0)).is_one());
        let o = Point::new(FieldElement::zero(), FieldElement::sqrt3());
        let d = Point::new(fe(-1, 2), FieldElement::sqrt3().scale(&rat(1, 2)));
        assert_eq!(o, Point::lattice(-1, 2));
        assert_eq!(d, Point::lattice(-1, 1));
        assert!(dist2(&o, &d).is_one());
    }

    #[test]
    fn collinearity() {
        let p = |a, b| Point::lattice(a, b);
        assert!(collinear(&p(0, 0), &p(1, 0), &p(2, 0)));
        assert!(!collinear(&p(0, 0), &p(1, 0), &p(0, 1)));
        // X, A, D of the blue-triangle figure
        assert!(collinear(&p(1, -1), &p(0, 0), &p(-1, 1)));
    }

    #[test]
    fn sixty_degree_rotation() {
        let r = Isometry::rotation_sixty(Point::origin(), 1);
        assert_eq!(
            r.apply(&Point::lattice(1, 0)).unwrap(),
            Point::lattice(0, 1)
        );
    }

    #[test]
    fn reflection_in_horizontal_line() {
        let h3 = FieldElement::sqrt3().scale(&rat(1, 2));
        let f = Point::new(h3.clone(), fe(-3, 2));
        let b = Point::origin();
        let c = Point::new(FieldElement::sqrt3(), FieldElement::zero());
        let x = Isometry::reflection(b, c).apply(&f).unwrap();
        assert_eq!(x, Point::new(h3, fe(3, 2)));
    }

    #[test]
    fn invalid_isometries() {
        let bad = Isometry::Rotation {
            center: Point::origin(),
            cos: fe(1, 2),
            sin: fe(1, 2),
        };
        assert!(bad.apply(&Point::origin()).is_err());
        let degenerate = Isometry::reflection(Point::origin(), Point::origin());
        assert!(degenerate.apply(&Point::origin()).is_err());
    }

    #[test]
    fn chord_rotation_has_unit_chord() {
        let center = Point::lattice(2, -1);
        let rot = chord_rotation(center.clone(), Sense::Clockwise);
        let Isometry::Rotation { cos, sin, .. } = &rot else {
            unreachable!()
        };
        assert!((cos.square() + sin.square()).is_one());
        assert_eq!(rot.apply(&center).unwrap(), center);
        for (a, b) in [(1, 1), (-2, 1), (1, -2), (-1, -1)] {
            let p = center.add(&Point::lattice(a, b));
            assert_eq!(dist2(&center, &p), FieldElement::from_int(3));
            assert!(dist2(&p, &rot.apply(&p).unwrap()).is_one());
        }
    }

    #[test]
    fn lattice_counts() {
        let f = LatticeFrame::default();
        assert_eq!(lattice_points(&f, 0).len(), 1);
        assert_eq!(lattice_points(&f, 1).len(), 7);
        assert_eq!(lattice_points(&f, 3).len(), 37);
        for r in 0..=10 {
            assert_eq!(hex_patch(r).len() as i64, 1 + 3 * r * (r + 1));
        }
    }

    #[test]
    fn norm_vectors() {
        assert_eq!(lattice_vectors_of_norm2(1).len(), 6);
        assert!(lattice_vectors_of_norm2(2).is_empty());
        let mut v = lattice_vectors_of_norm2(25);
        v.sort();
        let mut expected = vec![(5, 0), (-5, 0), (0, 5), (0, -5), (5, -5), (-5, 5)];
        expected.sort();
        assert_eq!(v, expected);
    }

    #[test]
    fn frame_validation() {
        assert!(
            LatticeFrame::new(Point::origin(), Point::lattice(1, 0), Point::lattice(1, 1)).is_err()
        );
        let f = LatticeFrame::new(
            Point::lattice(3, 3),
            Point::lattice(0, 1),
            Point::lattice(-1, 1),
        )
        .unwrap();
        assert_eq!(f.node(1, 1), Point::lattice(2, 5));
    }

    #[test]
    fn motion_from_pairs_recovers_isometries() {
        let p0 = Point::lattice(0, 0);
        let p1 = Point::lattice(2, 1);
        let iso = chord_rotation(Point::lattice(1, 1), Sense::Counterclockwise);
        let q0 = iso.apply(&p0).unwrap();
        let q1 = iso.apply(&p1).unwrap();
        let m = Motion::from_pairs(&p0, &p1, &q0, &q1, false).unwrap();
        let probe = Point::lattice(-3, 2);
        assert_eq!(m.apply(&probe), iso.apply(&probe).unwrap());
        assert_eq!(
            iso.to_motion().unwrap().apply(&probe),
            iso.apply(&probe).unwrap()
        );
        let refl = Isometry::reflection(Point::lattice(0, 1), Point::lattice(2, -1));
        let mm = Motion::from_pairs(
            &p0,
            &p1,
            &refl.apply(&p0).unwrap(),
            &refl.apply(&p1).unwrap(),
            true,
        )
        .unwrap();
        assert_eq!(mm.apply(&probe), refl.apply(&probe).unwrap());
        assert_eq!(
            refl.to_motion().unwrap().apply(&probe),
            refl.apply(&probe).unwrap()
        );
        assert!(Motion::from_pairs(&p0, &p1, &p0, &Point::lattice(1, 0), false).is_none());
    }

    fn any_isometry() -> impl Strategy<Value = Isometry> {
        prop_oneof![
            (-4i64..4, -4i64..4).prop_map(|(a, b)| Isometry::translation(&Point::lattice(a, b))),
            (-3i64..3, -3i64..3, 0i64..6)
                .prop_map(|(a, b, k)| Isometry::rotation_sixty(Point::lattice(a, b), k)),
            (-3i64..3, -3i64..3, any::<bool>()).prop_map(|(a, b, cw)| chord_rotation(
                Point::lattice(a, b),
                if cw {
                    Sense::Clockwise
                } else {
                    Sense::Counterclockwise
                }
            )),
            (-3i64..3, -3i64..3, 1i64..3, -2i64..2).prop_map(|(a, b, c, d)| Isometry::reflection(
                Point::lattice(a, b),
                Point::lattice(a + c, b + d)
            )),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn isometries_preserve_distance_and_collinearity(
            isos in prop::collection::vec(any_isometry(), 1..4),
            pts in prop::collection::vec((-5i64..5, -5i64..5), 3),
        ) {
            let p: Vec<Point> = pts.iter().map(|&(a, b)| Point::lattice(a, b)).collect();
            let mut q = p.clone();
            for iso in &isos {
                q = q.iter().map(|x| iso.apply(x).unwrap()).collect();
            }
            prop_assert_eq!(dist2(&p[0], &p[1]), dist2(&q[0], &q[1]));
            prop_assert_eq!(collinear(&p[0], &p[1], &p[2]), collinear(&q[0], &q[1], &q[2]));
        }

        #[test]
        fn opposite_chord_rotations_cancel(a in -6i64..6, b in -6i64..6, c in -3i64..3, d in -3i64..3) {
            let center = Point::lattice(c, d);
            let fwd = chord_rotation(center.clone(), Sense::Clockwise);
            let back = chord_rotation(center, Sense::Counterclockwise);
            let p = Point::lattice(a, b);
            prop_assert_eq!(back.apply(&fwd.apply(&p).unwrap()).unwrap(), p);
        }

        #[test]
        fn motion_composition_matches_sequential_application(
            i1 in any_isometry(), i2 in any_isometry(), a in -5i64..5, b in -5i64..5,
        ) {
            let p = Point::lattice(a, b);
            let m = i2.to_motion().unwrap().compose(&i1.to_motion().unwrap());
            prop_assert_eq!(m.apply(&p), i2.apply(&i1.apply(&p).unwrap()).unwrap());
        }
    }
}
