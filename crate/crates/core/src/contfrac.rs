//! Hirzebruch-Jung continued fractions `[a1, ..., an] = a1 - 1/(a2 - ...)`
//! and the homology orders they control.
//!
//! Arithmetic is checked `i128`; overflow is reported, never wrapped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chainstring::{ChainString, LinearString};
use crate::error::{Error, Result};
use crate::families::{self, FamilyTag, MembershipMode};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fraction {
    pub p: i128,
    pub q: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Fraction {
    /// A normalized fraction: coprime with `p > q >= 0`, or the value `1/1`.
    pub fn new(p: i128, q: i128) -> Result<Self> {
        let ok = q >= 0 && gcd(p, q) == 1 && (p > q || (p, q) == (1, 1));
        if ok {
            Ok(Fraction { p, q })
        } else {
            Err(Error::BadFraction { p, q })
        }
    }

    /// Reduces `p/q` by their gcd and makes the denominator non-negative.
    pub fn reduced(p: i128, q: i128) -> Self {
        let g = gcd(p, q).max(1);
        let s = if q < 0 { -1 } else { 1 };
        Fraction { p: s * p / g, q: s * q / g }
    }

    pub fn infinity() -> Self {
        Fraction { p: 1, q: 0 }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once('/').ok_or_else(|| Error::Parse(s.to_string()))?;
        let p = p.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let q = q.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        Fraction::new(p, q)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Evaluates without validating entries; used internally where `[1] = 1/1`
/// is meaningful.
pub(crate) fn hj_eval_unchecked(b: &[i64]) -> Result<Fraction> {
    let (mut p, mut q) = (1i128, 0i128);
    for &x in b.iter().rev() {
        let np = (x as i128).checked_mul(p).and_then(|v| v.checked_sub(q)).ok_or(Error::Overflow)?;
        (p, q) = (np, p);
    }
    Ok(Fraction { p, q })
}

pub fn hj_eval(b: &[i64]) -> Result<Fraction> {
    if let Some((index, &value)) = b.iter().enumerate().find(|(_, &v)| v < 2) {
        return Err(Error::EntryTooSmall { index, value, min: 2 });
    }
    hj_eval_unchecked(b)
}

/// Greedy ceiling expansion; the unique entries->=2 string evaluating to `f`.
pub fn hj_expand(f: Fraction) -> Result<LinearString> {
    let Fraction { mut p, mut q } = f;
    if q < 0 || p <= q || gcd(p, q) != 1 {
        if (p, q) == (1, 0) {
            return Ok(Vec::new());
        }
        return Err(Error::BadFraction { p, q });
    }
    let mut out = Vec::new();
    while q != 0 {
        let a = (p + q - 1) / q;
        out.push(i64::try_from(a).map_err(|_| Error::Overflow)?);
        (p, q) = (q, a * q - p);
    }
    Ok(out)
}

/// The two closed forms `x p^2/(x p q + 1)` and `x p^2/(x p^2 - x p q + 1)`
/// for `[b, x+1, rev c]` and `[c, x+1, rev b]`, with `c` the dual of `b`.
pub fn contfraccalc_identity(b: &[i64], x: i64) -> Result<(Fraction, Fraction)> {
    let Fraction { p, q } = hj_eval(b)?;
    let x = x as i128;
    let num = x.checked_mul(p).and_then(|v| v.checked_mul(p)).ok_or(Error::Overflow)?;
    let xpq = x.checked_mul(p).and_then(|v| v.checked_mul(q)).ok_or(Error::Overflow)?;
    Ok((Fraction::reduced(num, xpq + 1), Fraction::reduced(num, num - xpq + 1)))
}

/// `A(a) = [[p, q], [-s, -r]]` with `p/q = [a]` and `s/r = [a_1..a_{n-1}]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonodromyMatrix {
    pub p: i128,
    pub q: i128,
    pub s: i128,
    pub r: i128,
}

impl MonodromyMatrix {
    pub fn as_matrix(&self) -> [[i128; 2]; 2] {
        [[self.p, self.q], [-self.s, -self.r]]
    }

    pub fn trace(&self) -> i128 {
        self.p - self.r
    }
}

pub fn monodromy_matrix(a: &ChainString) -> Result<MonodromyMatrix> {
    let e = a.entries();
    let f = hj_eval(e)?;
    let g = hj_eval(&e[..e.len() - 1])?;
    let m = MonodromyMatrix { p: f.p, q: f.q, s: g.p, r: g.q };
    debug_assert_eq!(m.q * m.s - m.p * m.r, 1);
    Ok(m)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i128 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(t: i64) -> Self {
        if t.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `|Tor H_1|` of the bundle with monodromy `+A(a)` (`p - r - 2`) or `-A(a)` (`p - r + 2`).
pub fn torsion_order(a: &ChainString, sign: Sign) -> Result<i128> {
    let m = monodromy_matrix(a)?;
    let trace = m.trace();
    if trace <= 2 {
        return Err(Error::NotHyperbolic { trace });
    }
    Ok(match sign {
        Sign::Plus => trace - 2,
        Sign::Minus => trace + 2,
    })
}

pub fn homology_order(a: &ChainString, parity: Parity) -> Result<i128> {
    match parity {
        Parity::Even => torsion_order(a, Sign::Plus),
        Parity::Odd => torsion_order(a, Sign::Minus),
    }
}

/// `p^2` where `[b] = p/q` for an S1a decomposition `(b, 2, rev c, 2)` of `a`.
pub fn s1a_order(a: &ChainString) -> Result<i128> {
    let w = families::member(a, MembershipMode::Strict)
        .into_iter()
        .find(|w| w.tag == FamilyTag::S1a)
        .ok_or(Error::NotInS1a)?;
    let b = w.params.b.as_ref().ok_or(Error::NotInS1a)?;
    let p = hj_eval(b)?.p;
    p.checked_mul(p).ok_or(Error::Overflow)
}

pub fn is_square(n: i128) -> Result<bool> {
    if n < 0 {
        return Err(Error::Negative(n));
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    Ok(r * r == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(s: &str) -> ChainString {
        s.parse().unwrap()
    }

    fn fr(p: i128, q: i128) -> Fraction {
        Fraction { p, q }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hj_eval(&[2, 2, 2]).unwrap(), fr(4, 3));
        assert_eq!(hj_eval(&[2]).unwrap(), fr(2, 1));
        assert_eq!(hj_eval(&[3, 2, 2]).unwrap(), fr(7, 3));
        assert_eq!(hj_eval(&[]).unwrap(), fr(1, 0));
        assert_eq!(hj_eval_unchecked(&[1]).unwrap(), fr(1, 1));
        assert!(hj_eval(&[3, 1]).is_err());
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(fr(5, 3)).unwrap(), vec![2, 3]);
        assert_eq!(hj_expand(fr(2, 1)).unwrap(), vec![2]);
        assert_eq!(hj_expand(fr(7, 2)).unwrap(), vec![4, 2]);
        assert_eq!(hj_expand(fr(1, 0)).unwrap(), Vec::<i64>::new());
        assert!(hj_expand(fr(6, 4)).is_err());
        assert!(hj_expand(fr(2, 3)).is_err());
    }

    #[test]
    fn identity_examples() {
        assert_eq!(contfraccalc_identity(&[2], 1).unwrap(), (fr(4, 3), fr(4, 3)));
        assert_eq!(contfraccalc_identity(&[3, 2], 1).unwrap(), (fr(25, 11), fr(25, 16)));
        assert_eq!(contfraccalc_identity(&[2], 2).unwrap(), (fr(8, 5), fr(8, 5)));
        // b = (3,2), c = (2,3): the assembled strings are (3,2,2,3,2) and (2,3,2,2,3)
        assert_eq!(hj_eval(&[3, 2, 2, 3, 2]).unwrap(), fr(25, 11));
        assert_eq!(hj_eval(&[2, 3, 2, 2, 3]).unwrap(), fr(25, 16));
    }

    #[test]
    fn monodromy_examples() {
        let m = |s: &str| monodromy_matrix(&cs(s)).unwrap();
        assert_eq!(m("3,2"), MonodromyMatrix { p: 5, q: 2, s: 3, r: 1 });
        assert_eq!(m("3"), MonodromyMatrix { p: 3, q: 1, s: 1, r: 0 });
        assert_eq!(m("2,2"), MonodromyMatrix { p: 3, q: 2, s: 2, r: 1 });
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order(&cs("3"), Sign::Plus).unwrap(), 1);
        assert_eq!(torsion_order(&cs("3"), Sign::Minus).unwrap(), 5);
        assert_eq!(torsion_order(&cs("2,2,2,3,2"), Sign::Minus).unwrap(), 9);
        assert!(matches!(torsion_order(&cs("2,2"), Sign::Plus), Err(Error::NotHyperbolic { .. })));
    }

    #[test]
    fn homology_examples() {
        assert_eq!(homology_order(&cs("3,2"), Parity::Even).unwrap(), 2);
        assert_eq!(homology_order(&cs("3,2"), Parity::Odd).unwrap(), 6);
        assert_eq!(homology_order(&cs("7"), Parity::Odd).unwrap(), 9);
    }

    #[test]
    fn s1a_order_examples() {
        assert_eq!(s1a_order(&cs("2,2,2,3,2")).unwrap(), 9);
        assert_eq!(s1a_order(&cs("2,3,2,2,2")).unwrap(), 9);
        // (3, 2, rev(2,2), 2) is itself an S1a template instance with b = (3)
        assert_eq!(s1a_order(&cs("3,2,2,2,2")).unwrap(), 9);
        assert_eq!(s1a_order(&cs("3,2,2")), Err(Error::NotInS1a));
    }

    #[test]
    fn square_examples() {
        assert!(is_square(9).unwrap());
        assert!(!is_square(2).unwrap());
        assert!(is_square(0).unwrap());
        assert!(is_square(-1).is_err());
    }

    #[test]
    fn fraction_parse() {
        assert_eq!("7/3".parse::<Fraction>().unwrap(), fr(7, 3));
        assert!("4/2".parse::<Fraction>().is_err());
        assert_eq!(serde_json::to_string(&fr(7, 3)).unwrap(), "\"7/3\"");
    }
}
