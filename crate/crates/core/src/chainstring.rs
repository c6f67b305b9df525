//! Coefficient strings and their combinatorics.
//!
//! A [`ChainString`] is a finite sequence of integers, each at least 2, read
//! up to rotation and reversal. Linear strings are plain `Vec<i64>` values;
//! they are not quotiented by anything.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::contfrac::{hj_eval_unchecked, hj_expand, Fraction};
use crate::error::{Error, Result};

/// An ordered linear string. May be empty (the dual of `(1)`).
pub type LinearString = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainString(Vec<i64>);

/// Mixed-sign chain-link surgery coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedCoeffs(pub Vec<i64>);

impl ChainString {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &v)| v < 2) {
            return Err(Error::EntryTooSmall { index, value, min: 2 });
        }
        Ok(ChainString(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_all_twos(&self) -> bool {
        self.0.iter().all(|&a| a == 2)
    }

    pub fn canonical(&self) -> ChainString {
        canonical_form(self)
    }

    pub fn is_canonical(&self) -> bool {
        canonical_entries(&self.0) == self.0
    }
}

impl fmt::Display for ChainString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_entries(&self.0))
    }
}

impl fmt::Debug for ChainString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_entries(&self.0))
    }
}

impl FromStr for ChainString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChainString::new(parse_entries(s)?)
    }
}

impl Serialize for ChainString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ChainString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Comma-separated decimal integers, the wire format for every string.
pub fn format_entries(entries: &[i64]) -> String {
    entries.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses `"3,2,2"`; the empty literal (or `"()"`) parses to the empty string.
pub fn parse_entries(s: &str) -> Result<Vec<i64>> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|tok| tok.trim().parse::<i64>().map_err(|_| Error::Parse(s.to_string())))
        .collect()
}

fn canonical_entries(a: &[i64]) -> Vec<i64> {
    let n = a.len();
    let mut best: Option<Vec<i64>> = None;
    let rev: Vec<i64> = a.iter().rev().copied().collect();
    for base in [a, &rev[..]] {
        for k in 0..n {
            let cand: Vec<i64> = base[k..].iter().chain(&base[..k]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Lexicographic minimum over the dihedral orbit.
pub fn canonical_form(a: &ChainString) -> ChainString {
    ChainString(canonical_entries(&a.0))
}

pub fn equivalent(a: &ChainString, b: &ChainString) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

pub fn i_invariant(a: &ChainString) -> i64 {
    a.0.iter().map(|x| x - 3).sum()
}

pub fn reverse(a: &ChainString) -> ChainString {
    ChainString(a.0.iter().rev().copied().collect())
}

/// Left rotation by `k` (mod n).
pub fn rotate(a: &ChainString, k: usize) -> ChainString {
    let n = a.len();
    let k = k % n;
    ChainString(a.0[k..].iter().chain(&a.0[..k]).copied().collect())
}

pub fn is_palindrome(b: &[i64]) -> bool {
    b.iter().eq(b.iter().rev())
}

pub fn power_concat(a: &ChainString, p: i64) -> Result<ChainString> {
    if p < 1 {
        return Err(Error::BadPower(p));
    }
    Ok(ChainString(a.0.repeat(p as usize)))
}

/// Linear dual via the fraction law `[c] = p/(p-q)`. The dual of `(1)` is empty.
pub fn linear_dual(b: &[i64]) -> Result<LinearString> {
    if b.is_empty() {
        return Err(Error::Empty);
    }
    if b == [1] {
        return Ok(Vec::new());
    }
    if let Some((index, &value)) = b.iter().enumerate().find(|(_, &v)| v < 2) {
        return Err(Error::EntryTooSmall { index, value, min: 2 });
    }
    let f = hj_eval_unchecked(b)?;
    hj_expand(Fraction::new(f.p, f.p - f.q)?)
}

/// Block decomposition `(2^[m1], 3+n1, ..., 2^[mj], 3+nj)` read cyclically,
/// starting just after an entry >= 3.
pub fn cyclic_blocks(a: &ChainString) -> Result<Vec<(usize, i64)>> {
    let n = a.len();
    let start = match a.0.iter().position(|&x| x >= 3) {
        Some(i) => (i + 1) % n,
        None => return Err(Error::AllTwos),
    };
    let mut blocks = Vec::new();
    let mut twos = 0usize;
    for k in 0..n {
        let x = a.0[(start + k) % n];
        if x == 2 {
            twos += 1;
        } else {
            blocks.push((twos, x - 3));
            twos = 0;
        }
    }
    Ok(blocks)
}

pub fn cyclic_dual(a: &ChainString) -> Result<ChainString> {
    let mut d = Vec::new();
    for (m, nn) in cyclic_blocks(a)? {
        d.push(3 + m as i64);
        d.extend(std::iter::repeat_n(2, nn as usize));
    }
    Ok(canonical_form(&ChainString(d)))
}

/// Chain-link coefficients after splitting `a` at 1-based position `i`:
/// `(-(a_1-1), -a_2, ..., -a_{i-1}, -(a_i-1), d_1, ..., d_j)` with `d` the
/// linear dual of `(a_{i+1}, ..., a_n)`. For `i = 1` the head is `-(a_1-1)`.
pub fn technicallem1_transform(a: &ChainString, i: usize) -> Result<SignedCoeffs> {
    let n = a.len();
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let e = &a.0;
    let mut out = Vec::with_capacity(n);
    out.push(-(e[0] - 1));
    if i > 1 {
        out.extend(e[1..i - 1].iter().map(|x| -x));
        out.push(-(e[i - 1] - 1));
    }
    out.extend(linear_dual(&e[i..])?);
    if let Some((index, &value)) = out.iter().enumerate().find(|(_, v)| v.abs() <= 1) {
        return Err(Error::UnitCoefficient { index, value });
    }
    Ok(SignedCoeffs(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(s: &str) -> ChainString {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&cs("3,2,2,3,5")), cs("2,2,3,5,3"));
        assert_eq!(canonical_form(&cs("2,2")), cs("2,2"));
        assert_eq!(canonical_form(&cs("5,3,2,2,3")), cs("2,2,3,5,3"));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&cs("3,2"), &cs("2,3")));
        assert!(equivalent(&cs("3,2,2,3,5"), &cs("5,3,2,2,3")));
        assert!(!equivalent(&cs("3,2"), &cs("3,3")));
    }

    #[test]
    fn i_invariant_examples() {
        assert_eq!(i_invariant(&cs("2,2")), -2);
        assert_eq!(i_invariant(&cs("3,2,2,3,5")), 0);
        assert_eq!(i_invariant(&cs("6,2,2,2,6,2,2,2")), 0);
    }

    #[test]
    fn linear_dual_examples() {
        assert_eq!(linear_dual(&[3, 2]).unwrap(), vec![2, 3]);
        assert_eq!(linear_dual(&[2, 2, 2]).unwrap(), vec![4]);
        assert_eq!(linear_dual(&[1]).unwrap(), Vec::<i64>::new());
        assert_eq!(linear_dual(&[2, 2, 3]).unwrap(), vec![4, 2]);
        assert!(linear_dual(&[]).is_err());
        assert!(linear_dual(&[3, 0]).is_err());
    }

    #[test]
    fn cyclic_dual_examples() {
        assert_eq!(cyclic_dual(&cs("3,2")).unwrap(), cs("4"));
        assert_eq!(cyclic_dual(&cs("7")).unwrap(), cs("2,2,2,2,3"));
        assert_eq!(cyclic_dual(&cs("3,3,3")).unwrap(), cs("3,3,3"));
        assert_eq!(cyclic_dual(&cs("6")).unwrap(), cs("2,2,2,3"));
        assert_eq!(cyclic_dual(&cs("2,2,2")), Err(Error::AllTwos));
    }

    #[test]
    fn reverse_rotate_palindrome() {
        assert_eq!(reverse(&cs("3,2,2")), cs("2,2,3"));
        assert_eq!(rotate(&cs("3,2,2"), 1), cs("2,2,3"));
        assert_eq!(rotate(&cs("3,2,2"), 3), cs("3,2,2"));
        assert!(is_palindrome(&[2, 3, 2]));
        assert!(!is_palindrome(&[2, 2, 3]));
        assert!(is_palindrome(&[4]));
    }

    #[test]
    fn power_concat_examples() {
        assert_eq!(power_concat(&cs("3,2"), 2).unwrap(), cs("3,2,3,2"));
        assert_eq!(power_concat(&cs("3"), 3).unwrap(), cs("3,3,3"));
        assert_eq!(i_invariant(&power_concat(&cs("3,2,2"), 3).unwrap()), -6);
        assert_eq!(power_concat(&cs("3"), 0), Err(Error::BadPower(0)));
    }

    #[test]
    fn transform_examples() {
        let t = |s: &str, i| technicallem1_transform(&cs(s), i).map(|c| c.0);
        assert_eq!(t("5,3,2,2,3", 2).unwrap(), vec![-4, -2, 4, 2]);
        // dual of (2) is (2), so the second coefficient is 2, not 3
        assert_eq!(t("3,2", 1).unwrap(), vec![-2, 2]);
        assert_eq!(t("4,3,2,3", 2).unwrap(), vec![-3, -2, 3, 2]);
        assert!(matches!(t("2,3,3", 1), Err(Error::UnitCoefficient { .. })));
        assert!(matches!(t("3,2", 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(parse_entries("()").unwrap(), Vec::<i64>::new());
        assert!("3,x".parse::<ChainString>().is_err());
        assert!("3,1".parse::<ChainString>().is_err());
        assert_eq!(cs(" 3, 2 ").to_string(), "3,2");
    }
}
