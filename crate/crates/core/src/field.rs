//! Exact arithmetic in the real field Q(√3, √11).
//!
//! Elements are stored as four rational coordinates over the basis
//! `{1, √3, √11, √33}`. Every operation returns a canonical value, so equality
//! and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Index of each basis element inside [`FieldElement::coeffs`].
const ONE: usize = 0;
const SQRT3: usize = 1;
const SQRT11: usize = 2;
const SQRT33: usize = 3;

/// `c0 + c1·√3 + c2·√11 + c3·√33` with rational `c_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: [Rational; 4],
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Product table of the basis: `basis[i] * basis[j] = factor * basis[k]`.
fn basis_product(i: usize, j: usize) -> (i64, usize) {
    match (i.min(j), i.max(j)) {
        (ONE, k) => (1, k),
        (SQRT3, SQRT3) => (3, ONE),
        (SQRT3, SQRT11) => (1, SQRT33),
        (SQRT3, SQRT33) => (3, SQRT11),
        (SQRT11, SQRT11) => (11, ONE),
        (SQRT11, SQRT33) => (11, SQRT3),
        (SQRT33, SQRT33) => (33, ONE),
        _ => unreachable!("basis index out of range"),
    }
}

impl FieldElement {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        FieldElement {
            coeffs: [c0, c1, c2, c3],
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt3() -> Self {
        Self::new(
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn sqrt11() -> Self {
        Self::new(
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        )
    }

    pub fn sqrt33() -> Self {
        Self::new(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        )
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[ONE].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the irrational parts vanish.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[ONE])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] * r),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Conjugate over Q(√3): flips the sign of √11 (and with it √33).
    fn conj11(&self) -> Self {
        let [c0, c1, c2, c3] = &self.coeffs;
        Self::new(c0.clone(), c1.clone(), -c2, -c3)
    }

    /// Conjugate over Q(√11): flips the sign of √3 (and with it √33).
    fn conj3(&self) -> Self {
        let [c0, c1, c2, c3] = &self.coeffs;
        Self::new(c0.clone(), -c1, c2.clone(), -c3)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a * conj11(a) lies in Q(√3); multiplying that by its √3-conjugate
        // lands in Q.
        let c11 = self.conj11();
        let n1 = self * &c11;
        let c3 = n1.conj3();
        let n2 = &n1 * &c3;
        let norm = n2
            .as_rational()
            .expect("field norm must be rational")
            .clone();
        debug_assert!(!norm.is_zero());
        Ok((&c11 * &c3).scale(&norm.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Sign of the real value.
    ///
    /// Exact zero is decided structurally; otherwise rational enclosures of √3
    /// and √11 are bisected until the enclosure of the value excludes zero.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        let mut s3 = (rat(17_320_508, 10_000_000), rat(17_320_509, 10_000_000));
        let mut s11 = (rat(33_166_247, 10_000_000), rat(33_166_248, 10_000_000));
        loop {
            let (lo, hi) = self.enclose(&s3, &s11);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bisect_sqrt(&mut s3, 3);
            bisect_sqrt(&mut s11, 11);
        }
    }

    fn enclose(
        &self,
        s3: &(Rational, Rational),
        s11: &(Rational, Rational),
    ) -> (Rational, Rational) {
        let s33 = (&s3.0 * &s11.0, &s3.1 * &s11.1);
        let mut lo = self.coeffs[ONE].clone();
        let mut hi = self.coeffs[ONE].clone();
        for (c, (l, h)) in self.coeffs[1..].iter().zip([s3, s11, &s33]) {
            if c.is_positive() {
                lo += c * l;
                hi += c * h;
            } else {
                lo += c * h;
                hi += c * l;
            }
        }
        (lo, hi)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let basis = [1.0, 3f64.sqrt(), 11f64.sqrt(), 33f64.sqrt()];
        self.coeffs
            .iter()
            .zip(basis)
            .map(|(c, b)| c.to_f64().unwrap_or(f64::NAN) * b)
            .sum()
    }

    /// Canonical `"p/q"` strings in basis order.
    pub fn to_strings(&self) -> [String; 4] {
        std::array::from_fn(|i| rational_to_string(&self.coeffs[i]))
    }

    pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self> {
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "field element needs 4 coefficients, got {}",
                parts.len()
            )));
        }
        let mut coeffs: [Rational; 4] = Default::default();
        for (slot, s) in coeffs.iter_mut().zip(parts) {
            *slot = parse_rational(s.as_ref())?;
        }
        Ok(FieldElement { coeffs })
    }
}

fn bisect_sqrt(bounds: &mut (Rational, Rational), n: i64) {
    let mid = (&bounds.0 + &bounds.1) / int(2);
    if &mid * &mid < int(n) {
        bounds.0 = mid;
    } else {
        bounds.1 = mid;
    }
}

pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let mut out: [Rational; 4] = Default::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (factor, k) = basis_product(i, j);
                out[k] += a * b * int(factor);
            }
        }
        FieldElement { coeffs: out }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            coeffs: std::array::from_fn(|i| -&self.coeffs[i]),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "√3", "√11", "√33"];
        let mut wrote = false;
        for (c, name) in self.coeffs.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match (mag.is_one(), name.is_empty()) {
                (true, false) => write!(f, "{name}")?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}·{name}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        FieldElement::from_strings(&parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fe(c: [i64; 4]) -> FieldElement {
        FieldElement::new(int(c[0]), int(c[1]), int(c[2]), int(c[3]))
    }

    #[test]
    fn basis_reductions() {
        let s3 = FieldElement::sqrt3();
        let s11 = FieldElement::sqrt11();
        assert_eq!(&s3 * &s3, FieldElement::from_int(3));
        assert_eq!(&s11 * &s11, FieldElement::from_int(11));
        assert_eq!(&s3 * &s11, FieldElement::sqrt33());
        assert_eq!(&s3 * &FieldElement::sqrt33(), s11.scale(&int(3)));
        assert_eq!(&s11 * &FieldElement::sqrt33(), s3.scale(&int(11)));
    }

    #[test]
    fn difference_of_squares() {
        let a = fe([2, 1, 0, 0]);
        let b = fe([2, -1, 0, 0]);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn chord_angle_is_on_unit_circle() {
        let c = FieldElement::from_ratio(5, 6);
        let s = FieldElement::sqrt11().scale(&rat(1, 6));
        assert!((c.square() + s.square()).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            FieldElement::one().checked_div(&FieldElement::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn signs() {
        assert_eq!(FieldElement::zero().signum(), 0);
        assert_eq!(
            (FieldElement::from_int(6) - FieldElement::sqrt33()).signum(),
            1
        );
        let a = FieldElement::from_ratio(23, 4) - FieldElement::sqrt33();
        assert_eq!(a.signum(), 1);
        // 1.8 - √3 > 0 but √3·√11 - 5.74 < 0
        assert_eq!(
            (FieldElement::sqrt33() - FieldElement::from_ratio(574, 100)).signum(),
            1
        );
        assert_eq!(
            (FieldElement::sqrt33() - FieldElement::from_ratio(575, 100)).signum(),
            -1
        );
        // Pell convergent 18817² = 3·10864² + 1 sits about 1.4e-9 above √3,
        // inside the starting enclosure.
        let close = FieldElement::from_ratio(18817, 10864) - FieldElement::sqrt3();
        assert_eq!(close.signum(), 1);
    }

    #[test]
    fn string_round_trip() {
        let a = FieldElement::new(rat(-5, 6), rat(1, 2), int(0), rat(7, 3));
        let s = a.to_strings();
        assert_eq!(s, ["-5/6", "1/2", "0/1", "7/3"].map(String::from));
        assert_eq!(FieldElement::from_strings(&s).unwrap(), a);
        assert_eq!(
            FieldElement::from_strings(&["3", "0", "0", "0"]).unwrap(),
            FieldElement::from_int(3)
        );
        assert!(FieldElement::from_strings(&["1/0", "0", "0", "0"]).is_err());
    }

    fn small() -> impl Strategy<Value = FieldElement> {
        prop::array::uniform4((-6i64..=6, 1i64..=4)).prop_map(|c| {
            FieldElement::new(
                rat(c[0].0, c[0].1),
                rat(c[1].0, c[1].1),
                rat(c[2].0, c[2].1),
                rat(c[3].0, c[3].1),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn no_zero_divisors(a in small(), b in small()) {
            prop_assert_eq!((&a * &b).is_zero(), a.is_zero() || b.is_zero());
        }

        #[test]
        fn sign_matches_float(a in small()) {
            let v = a.to_f64();
            if v.abs() > 1e-6 {
                prop_assert_eq!(a.signum(), if v > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn sign_of_product(a in small(), b in small()) {
            prop_assert_eq!((&a * &b).signum(), a.signum() * b.signum());
            // s·a is never negative
            prop_assert!(a.scale(&int(a.signum() as i64)).signum() >= 0);
        }
    }
}
