//! The ten string families `S1a..S2e`, the exceptional string, membership
//! with witnesses, and enumeration.
//!
//! Every template is determined by a handful of parameters and a linear-dual
//! pair `(b, c)`, and every template block consumes at least one entry. So for
//! a fixed length `n` the full set of template instances is finite.
//! Membership parses the string against each template; enumeration walks a
//! per-length index of all instances.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::chainstring::{
    canonical_form, is_palindrome, linear_dual, technicallem1_transform, ChainString,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum FamilyTag {
    S1a,
    S1b,
    S1c,
    S1d,
    S1e,
    S2a,
    S2b,
    S2c,
    S2d,
    S2e,
    Exceptional62226222,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 11] = [
        FamilyTag::S1a,
        FamilyTag::S1b,
        FamilyTag::S1c,
        FamilyTag::S1d,
        FamilyTag::S1e,
        FamilyTag::S2a,
        FamilyTag::S2b,
        FamilyTag::S2c,
        FamilyTag::S2d,
        FamilyTag::S2e,
        FamilyTag::Exceptional62226222,
    ];

    pub fn is_s1(self) -> bool {
        use FamilyTag::*;
        matches!(self, S1a | S1b | S1c | S1d | S1e)
    }

    pub fn is_s2(self) -> bool {
        use FamilyTag::*;
        matches!(self, S2a | S2b | S2c | S2d | S2e)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

/// `Strict` applies the side conditions verbatim; `Relaxed` lowers the
/// `k + l >= 3` bound of S1d and S2e to `k + l >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MembershipMode {
    #[default]
    Strict,
    Relaxed,
}

impl FromStr for MembershipMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(MembershipMode::Strict),
            "relaxed" => Ok(MembershipMode::Relaxed),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xs: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<i64>>,
}

impl FamilyParams {
    fn pair(b: &[i64], c: &[i64]) -> Self {
        FamilyParams {
            k: Some(b.len()),
            l: Some(c.len()),
            b: Some(b.to_vec()),
            c: Some(c.to_vec()),
            ..Default::default()
        }
    }
}

/// Membership certificate: `rotate(maybe_reverse(template(tag, params)), rotation)`
/// equals the queried string.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FamilyWitness {
    pub tag: FamilyTag,
    pub rotation: usize,
    pub reversed: bool,
    pub params: FamilyParams,
}

impl FamilyWitness {
    pub fn reassemble(&self) -> Result<ChainString> {
        let mut t = assemble(self.tag, &self.params)?;
        if self.reversed {
            t.reverse();
        }
        let n = t.len();
        t.rotate_left(self.rotation % n);
        ChainString::new(t)
    }
}

fn twos(n: usize) -> impl Iterator<Item = i64> {
    std::iter::repeat_n(2, n)
}

/// `(3, 2^[x-1], 3)` with the convention that `x = 0` collapses to `(4)`.
fn three_twos_three(x: i64) -> Vec<i64> {
    if x == 0 {
        vec![4]
    } else {
        std::iter::once(3).chain(twos(x as usize - 1)).chain(std::iter::once(3)).collect()
    }
}

/// `(u_1 + 1, u_2, ..., u_{m-1}, u_m + 1)`; a single entry gets both increments.
fn bump_ends(u: &[i64]) -> Vec<i64> {
    let mut v = u.to_vec();
    v[0] += 1;
    let m = v.len();
    v[m - 1] += 1;
    v
}

fn need<T>(o: &Option<T>) -> Result<&T> {
    o.as_ref().ok_or_else(|| Error::Invalid("missing template parameter".into()))
}

/// Builds the template string for a tag and its parameters.
pub fn assemble(tag: FamilyTag, params: &FamilyParams) -> Result<Vec<i64>> {
    use FamilyTag::*;
    let rev = |c: &[i64]| c.iter().rev().copied().collect::<Vec<_>>();
    let out = match tag {
        S1a | S1b | S1c => {
            let (b, c) = (need(&params.b)?, need(&params.c)?);
            let (mid, last) = match tag {
                S1a => (2, 2),
                S1b => (2, 5),
                _ => (3, 3),
            };
            let mut v = b.clone();
            v.push(mid);
            v.extend(rev(c));
            v.push(last);
            v
        }
        S1d => {
            let (b, c) = (need(&params.b)?, need(&params.c)?);
            let mut v = vec![2];
            v.extend(bump_ends(b));
            v.extend([2, 2]);
            v.extend(bump_ends(&rev(c)));
            v.push(2);
            v
        }
        S1e => {
            let x = *need(&params.x)?;
            let mut v = vec![2, 3 + x, 2, 3];
            v.extend(three_twos_three(x));
            v.push(3);
            v
        }
        S2a => {
            let (b, c) = (need(&params.b)?, need(&params.c)?);
            let mut v = vec![b[0] + 3];
            v.extend(&b[1..]);
            v.push(2);
            v.extend(rev(c));
            v
        }
        S2b => {
            let (b, c, x) = (need(&params.b)?, need(&params.c)?, *need(&params.x)?);
            let (k, l) = (b.len(), c.len());
            let mut v = vec![3 + x];
            v.extend(&b[..k - 1]);
            v.push(b[k - 1] + 1);
            v.extend(twos(x as usize));
            v.push(c[l - 1] + 1);
            v.extend(rev(&c[..l - 1]));
            v
        }
        S2c => {
            let xs = need(&params.xs)?;
            let m = xs.len();
            let mut v = Vec::new();
            for j in 0..m {
                v.push(3 + xs[(2 * j) % m]);
                v.extend(twos(xs[(2 * j + 1) % m] as usize));
            }
            v
        }
        S2d => {
            let x = *need(&params.x)?;
            let mut v = vec![2, 2 + x, 2];
            v.extend(three_twos_three(x));
            v.push(4);
            v
        }
        S2e => match (&params.b, &params.c) {
            (Some(b), Some(c)) => {
                let mut v = vec![2, b[0] + 1];
                v.extend(&b[1..]);
                v.push(2);
                let l = c.len();
                v.extend(c[1..].iter().rev());
                v.push(c[0] + 1);
                v.push(2);
                debug_assert_eq!(v.len(), b.len() + l + 3);
                v
            }
            _ => vec![2, 2, 2, 3],
        },
        Exceptional62226222 => vec![6, 2, 2, 2, 6, 2, 2, 2],
    };
    Ok(out)
}

/// All linear-dual pairs `(b, c)` of entries->=2 strings with `|b| + |c| = m`.
///
/// Uses `sum(b_i - 2) = |c| - 1`, so `b` ranges over compositions.
pub fn dual_pairs(m: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for k in 1..m {
        let l = m - k;
        let excess = l - 1;
        let mut y = vec![0usize; k];
        compositions(excess, 0, &mut y, &mut |y| {
            let b: Vec<i64> = y.iter().map(|&e| e as i64 + 2).collect();
            let c = linear_dual(&b).expect("entries are at least 2");
            debug_assert_eq!(c.len(), l);
            out.push((b, c));
        });
    }
    out
}

/// Every way to write `total` as an ordered sum over the remaining slots.
fn compositions(total: usize, pos: usize, y: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pos + 1 == y.len() {
        y[pos] = total;
        f(y);
        return;
    }
    for v in 0..=total {
        y[pos] = v;
        compositions(total - v, pos + 1, y, f);
    }
}

struct Instance {
    tag: FamilyTag,
    template: Vec<i64>,
    #[cfg_attr(not(test), allow(dead_code))]
    params: FamilyParams,
    relaxed_only: bool,
}

struct LengthIndex {
    instances: Vec<Instance>,
}

fn instances_of_length(n: usize) -> Vec<Instance> {
    use FamilyTag::*;
    let mut out = Vec::new();
    let mut push = |tag, params: FamilyParams, relaxed_only| {
        let template = assemble(tag, &params).expect("generated parameters are complete");
        debug_assert_eq!(template.len(), n, "{tag:?} {params:?}");
        out.push(Instance { tag, template, params, relaxed_only });
    };

    // (b, mid, rev c, last): length m + 2
    if n >= 4 {
        for (b, c) in dual_pairs(n - 2) {
            let m = n - 2;
            if m >= 3 {
                push(S1a, FamilyParams::pair(&b, &c), false);
            }
            push(S1b, FamilyParams::pair(&b, &c), false);
            push(S1c, FamilyParams::pair(&b, &c), false);
        }
    }
    // S1d: length m + 4
    if n >= 6 {
        let m = n - 4;
        for (b, c) in dual_pairs(m) {
            push(S1d, FamilyParams::pair(&b, &c), m < 3);
        }
    }
    // S2e: length m + 3
    if n >= 5 {
        let m = n - 3;
        for (b, c) in dual_pairs(m) {
            push(S2e, FamilyParams::pair(&b, &c), m < 3);
        }
    }
    if n == 4 {
        push(S2e, FamilyParams::default(), false);
    }
    // S1e: length 6 at x = 0, 6 + x otherwise
    if n == 6 {
        push(S1e, FamilyParams { x: Some(0), ..Default::default() }, false);
    }
    if n >= 7 {
        push(S1e, FamilyParams { x: Some(n as i64 - 6), ..Default::default() }, false);
    }
    // S2a: length m + 1, including b = (1), c = ()
    if n == 2 {
        push(S2a, FamilyParams::pair(&[1], &[]), false);
    }
    if n >= 3 {
        for (b, c) in dual_pairs(n - 1) {
            push(S2a, FamilyParams::pair(&b, &c), false);
        }
    }
    // S2b: length 1 + m + x with m >= 2
    for m in 2..n {
        let x = (n - 1 - m) as i64;
        for (b, c) in dual_pairs(m) {
            let mut p = FamilyParams::pair(&b, &c);
            p.x = Some(x);
            push(S2b, p, false);
        }
    }
    // S2c: 2k+1 parameters, length 2k + 1 + sum(x)
    let mut k = 0;
    while 2 * k < n {
        let slots = 2 * k + 1;
        let mut y = vec![0usize; slots];
        compositions(n - slots, 0, &mut y, &mut |y| {
            let xs: Vec<i64> = y.iter().map(|&v| v as i64).collect();
            push(S2c, FamilyParams { k: Some(k), xs: Some(xs), ..Default::default() }, false);
        });
        k += 1;
    }
    // S2d: length 5 at x = 0, 5 + x otherwise
    if n == 5 {
        push(S2d, FamilyParams { x: Some(0), ..Default::default() }, false);
    }
    if n >= 6 {
        push(S2d, FamilyParams { x: Some(n as i64 - 5), ..Default::default() }, false);
    }
    if n == 8 {
        push(Exceptional62226222, FamilyParams::default(), false);
    }
    out
}

fn index_for(n: usize) -> Arc<LengthIndex> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LengthIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ix) = cache.lock().unwrap().get(&n) {
        return ix.clone();
    }
    let ix = Arc::new(LengthIndex { instances: instances_of_length(n) });
    cache.lock().unwrap().entry(n).or_insert(ix).clone()
}

fn placement(template: &[i64], target: &[i64]) -> Option<(usize, bool)> {
    let n = template.len();
    for reversed in [false, true] {
        let mut t = template.to_vec();
        if reversed {
            t.reverse();
        }
        for rotation in 0..n {
            if t[rotation..].iter().chain(&t[..rotation]).eq(target) {
                return Some((rotation, reversed));
            }
        }
    }
    None
}

/// `b` and `c` are nonempty, linear-dual and have entries at least 2.
fn dual_ok(b: &[i64], c: &[i64]) -> bool {
    !b.is_empty()
        && !c.is_empty()
        && b.iter().chain(c).all(|&v| v >= 2)
        && linear_dual(b).is_ok_and(|d| d == c)
}

/// Inverse of [`bump_ends`].
fn unbump_ends(v: &[i64]) -> Vec<i64> {
    let mut u = v.to_vec();
    u[0] -= 1;
    let m = u.len();
    u[m - 1] -= 1;
    u
}

fn rev(v: &[i64]) -> Vec<i64> {
    v.iter().rev().copied().collect()
}

/// Every template instance equal to `r` as a sequence (no rotation), with
/// its `relaxed_only` flag.
fn parse_instances(r: &[i64]) -> Vec<(FamilyTag, FamilyParams, bool)> {
    use FamilyTag::*;
    let n = r.len();
    let mut out = Vec::new();
    let fixed = |x: i64| FamilyParams { x: Some(x), ..Default::default() };

    // (b, mid, rev c, last)
    if n >= 4 {
        for (tag, mid, last) in [(S1a, 2, 2), (S1b, 2, 5), (S1c, 3, 3)] {
            if r[n - 1] != last || (tag == S1a && n < 5) {
                continue;
            }
            for k in 1..=n - 3 {
                let (b, c) = (&r[..k], rev(&r[k + 1..n - 1]));
                if r[k] == mid && dual_ok(b, &c) {
                    out.push((tag, FamilyParams::pair(b, &c), false));
                }
            }
        }
    }
    // (2, bump b, 2, 2, bump rev c, 2)
    if n >= 6 && r[0] == 2 && r[n - 1] == 2 {
        let m = n - 4;
        for k in 1..m {
            if r[k + 1] != 2 || r[k + 2] != 2 {
                continue;
            }
            let b = unbump_ends(&r[1..k + 1]);
            let c = rev(&unbump_ends(&r[k + 3..n - 1]));
            if dual_ok(&b, &c) {
                out.push((S1d, FamilyParams::pair(&b, &c), m < 3));
            }
        }
    }
    // (b_1 + 3, b_2, ..., b_k, 2, rev c)
    if n == 2 {
        out.push((S2a, FamilyParams::pair(&[1], &[]), false));
    }
    if n >= 3 {
        for k in 1..n - 1 {
            let mut b = r[..k].to_vec();
            b[0] -= 3;
            let c = rev(&r[k + 1..]);
            if r[k] == 2 && dual_ok(&b, &c) {
                out.push((S2a, FamilyParams::pair(&b, &c), false));
            }
        }
    }
    // (3 + x, b_1..b_{k-1}, b_k + 1, 2^[x], c_l + 1, c_{l-1}..c_1)
    let x = r[0] - 3;
    if x >= 0 && (n as i64) - 1 - x >= 2 {
        let m = n - 1 - x as usize;
        let x = x as usize;
        for k in 1..m {
            let mut b = r[1..k + 1].to_vec();
            b[k - 1] -= 1;
            if r[k + 1..k + 1 + x].iter().any(|&v| v != 2) {
                continue;
            }
            let mut c = rev(&r[k + 1 + x..]);
            let l = c.len();
            c[l - 1] -= 1;
            if dual_ok(&b, &c) {
                let mut p = FamilyParams::pair(&b, &c);
                p.x = Some(x as i64);
                out.push((S2b, p, false));
            }
        }
    }
    // blocks (3 + x_{2j}, 2^[x_{2j+1}]), indices mod 2k + 1
    if r[0] >= 3 {
        let mut blocks: Vec<(i64, i64)> = Vec::new();
        for &v in r {
            if v >= 3 {
                blocks.push((v - 3, 0));
            } else if let Some(last) = blocks.last_mut() {
                last.1 += 1;
            }
        }
        let m = blocks.len();
        if m % 2 == 1 {
            let mut xs: Vec<Option<i64>> = vec![None; m];
            let mut ok = true;
            for (j, &(big, twos)) in blocks.iter().enumerate() {
                for (slot, val) in [((2 * j) % m, big), ((2 * j + 1) % m, twos)] {
                    match xs[slot] {
                        Some(prev) if prev != val => ok = false,
                        _ => xs[slot] = Some(val),
                    }
                }
            }
            if ok {
                let xs: Vec<i64> = xs.into_iter().map(|v| v.unwrap_or(0)).collect();
                out.push((S2c, FamilyParams { k: Some(m / 2), xs: Some(xs), ..Default::default() }, false));
            }
        }
    }
    // (2, b_1 + 1, b_2..b_k, 2, c_l..c_2, c_1 + 1, 2)
    if n == 4 {
        out.push((S2e, FamilyParams::default(), false));
    }
    if n >= 5 && r[0] == 2 && r[n - 1] == 2 {
        let m = n - 3;
        for k in 1..m {
            if r[k + 1] != 2 {
                continue;
            }
            let mut b = r[1..k + 1].to_vec();
            b[0] -= 1;
            let mut c = rev(&r[k + 2..n - 1]);
            c[0] -= 1;
            if dual_ok(&b, &c) {
                out.push((S2e, FamilyParams::pair(&b, &c), m < 3));
            }
        }
    }
    // single-parameter and fixed strings
    if n == 6 {
        out.push((S1e, fixed(0), false));
    }
    if n >= 7 {
        out.push((S1e, fixed(n as i64 - 6), false));
    }
    if n == 5 {
        out.push((S2d, fixed(0), false));
    }
    if n >= 6 {
        out.push((S2d, fixed(n as i64 - 5), false));
    }
    if n == 8 {
        out.push((Exceptional62226222, FamilyParams::default(), false));
    }
    // every candidate must reproduce `r` exactly
    out.retain(|(tag, params, _)| assemble(*tag, params).is_ok_and(|t| t == r));
    out
}

/// All witnesses across all tags, ordered by `(tag, rotation, reversed)`.
///
/// Parses every rotation and reflection of `a` against each template, so the
/// cost is polynomial in the length.
pub fn member(a: &ChainString, mode: MembershipMode) -> Vec<FamilyWitness> {
    let n = a.len();
    let mut found: Vec<(FamilyTag, FamilyParams)> = Vec::new();
    for reversed in [false, true] {
        let mut t = a.entries().to_vec();
        if reversed {
            t.reverse();
        }
        for rotation in 0..n {
            let r: Vec<i64> = t[rotation..].iter().chain(&t[..rotation]).copied().collect();
            for (tag, params, relaxed_only) in parse_instances(&r) {
                if (mode == MembershipMode::Relaxed || !relaxed_only) && !found.contains(&(tag, params.clone())) {
                    found.push((tag, params));
                }
            }
        }
    }
    let mut out: Vec<FamilyWitness> = found
        .into_iter()
        .map(|(tag, params)| {
            let template = assemble(tag, &params).expect("parsed parameters are complete");
            let (rotation, reversed) = placement(&template, a.entries()).expect("parsed from a rotation of a");
            FamilyWitness { tag, rotation, reversed, params }
        })
        .collect();
    out.sort_by(|x, y| {
        (x.tag, x.rotation, x.reversed)
            .cmp(&(y.tag, y.rotation, y.reversed))
            .then_with(|| format!("{:?}", x.params).cmp(&format!("{:?}", y.params)))
    });
    out
}

/// [`member`] computed from the per-length index of template instances.
/// Exponential in the length; kept as an independent check.
#[cfg(test)]
fn member_by_index(a: &ChainString, mode: MembershipMode) -> Vec<FamilyWitness> {
    let ix = index_for(a.len());
    let key = canonical_form(a);
    let mut out: Vec<FamilyWitness> = ix
        .instances
        .iter()
        .filter(|inst| canonical_form(&ChainString::new(inst.template.clone()).unwrap()) == key)
        .filter(|inst| mode == MembershipMode::Relaxed || !inst.relaxed_only)
        .map(|inst| {
            let (rotation, reversed) =
                placement(&inst.template, a.entries()).expect("same canonical form");
            FamilyWitness { tag: inst.tag, rotation, reversed, params: inst.params.clone() }
        })
        .collect();
    out.sort_by(|x, y| {
        (x.tag, x.rotation, x.reversed)
            .cmp(&(y.tag, y.rotation, y.reversed))
            .then_with(|| format!("{:?}", x.params).cmp(&format!("{:?}", y.params)))
    });
    out
}

/// Tags with at least one witness, in tag order.
pub fn member_tags(a: &ChainString, mode: MembershipMode) -> BTreeSet<FamilyTag> {
    member(a, mode).into_iter().map(|w| w.tag).collect()
}

pub fn in_family(a: &ChainString, tag: FamilyTag, mode: MembershipMode) -> bool {
    member_tags(a, mode).contains(&tag)
}

pub fn in_s1(a: &ChainString, mode: MembershipMode) -> bool {
    member_tags(a, mode).iter().any(|t| t.is_s1())
}

pub fn in_s2(a: &ChainString, mode: MembershipMode) -> bool {
    member_tags(a, mode).iter().any(|t| t.is_s2())
}

pub fn is_exceptional(a: &ChainString) -> bool {
    a.len() == 8 && canonical_form(a).entries() == [2, 2, 2, 6, 2, 2, 2, 6]
}

/// S2c decided through chain-link coefficients of the shape `(-d, d)`,
/// independent of the S2c template.
///
/// The split `i = 1` is read with both increments on `a_1` (so `d_1 = a_1 - 2`),
/// which covers the `k = 0` strings `(3 + x, 2^[x])`; the length-1 string is
/// accepted exactly when it is `(3)`.
pub fn s2c_via_halfreverse(a: &ChainString) -> Result<bool> {
    if a.is_all_twos() {
        return Err(Error::AllTwos);
    }
    let n = a.len();
    if n == 1 {
        return Ok(a.entries()[0] == 3);
    }
    for reversed in [false, true] {
        let mut base = a.entries().to_vec();
        if reversed {
            base.reverse();
        }
        for r in 0..n {
            let mut e = base.clone();
            e.rotate_left(r);
            if e[0] < 3 {
                continue;
            }
            if e[1..].iter().all(|&v| v == 2) && e[0] == n as i64 + 2 {
                return Ok(true);
            }
            let s = ChainString::new(e).expect("rotation of a valid string");
            for i in 2..n {
                let Ok(coeffs) = technicallem1_transform(&s, i) else {
                    continue;
                };
                let c = coeffs.0;
                if c.len() == 2 * i && c[..i].iter().zip(&c[i..]).all(|(u, v)| *u == -*v) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Palindrome tests deciding S2c for S2a/S2b template strings built from `b`.
pub fn palindrome_criteria(tag: FamilyTag, b: &[i64]) -> Result<bool> {
    if b.is_empty() {
        return Err(Error::Empty);
    }
    match tag {
        FamilyTag::S2a => {
            let mut u = b.to_vec();
            u[0] += 1;
            Ok(is_palindrome(&u))
        }
        FamilyTag::S2b => Ok(is_palindrome(b)),
        other => Err(Error::Invalid(format!("palindrome criterion is defined for S2a and S2b, not {other}"))),
    }
}

/// Canonical strings with `1 <= n <= max_len`, entries in `[2, max_entry]`,
/// some entry >= 3 and `i_min <= I <= i_max`, each orbit once, in
/// (length, lexicographic) order.
pub fn enumerate_strings_bounded(max_len: usize, i_min: i64, i_max: i64, max_entry: i64) -> Vec<ChainString> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        let mut cur = Vec::with_capacity(n);
        gen_canonical(n, i_min, i_max, max_entry, &mut cur, 0, &mut out);
    }
    out
}

fn gen_canonical(
    n: usize,
    i_min: i64,
    i_max: i64,
    max_entry: i64,
    cur: &mut Vec<i64>,
    partial: i64,
    out: &mut Vec<ChainString>,
) {
    if cur.len() == n {
        if partial < i_min || cur.iter().all(|&v| v == 2) {
            return;
        }
        let s = ChainString::new(cur.clone()).unwrap();
        if s.is_canonical() {
            out.push(s);
        }
        return;
    }
    let rest = (n - cur.len() - 1) as i64;
    // a canonical string starts with its minimum entry
    let lo = cur.first().copied().unwrap_or(2);
    for v in lo..=max_entry {
        let p = partial + v - 3;
        if p - rest > i_max {
            break;
        }
        if p + rest * (max_entry - 3) < i_min {
            continue;
        }
        cur.push(v);
        gen_canonical(n, i_min, i_max, max_entry, cur, p, out);
        cur.pop();
    }
}

/// Canonical strings with `n <= max_len`, some entry >= 3 and `I <= i_max`.
/// Entries are bounded by `I <= i_max` itself.
pub fn enumerate_strings(max_len: usize, i_max: i64) -> Vec<ChainString> {
    let max_entry = 3 + i_max + max_len as i64 - 1;
    enumerate_strings_bounded(max_len, i64::MIN / 4, i_max, max_entry.max(3))
}

/// Canonical members of `tag` with length at most `max_len`, sorted.
pub fn enumerate_family(tag: FamilyTag, max_len: usize, mode: MembershipMode) -> Vec<ChainString> {
    let mut set = BTreeSet::new();
    for n in 1..=max_len {
        let ix = index_for(n);
        for inst in &ix.instances {
            if inst.tag == tag && (mode == MembershipMode::Relaxed || !inst.relaxed_only) {
                set.insert(canonical_form(&ChainString::new(inst.template.clone()).unwrap()));
            }
        }
    }
    let mut v: Vec<ChainString> = set.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

/// Every string in some family (any tag) with length at most `max_len`.
pub fn enumerate_all_members(max_len: usize, mode: MembershipMode) -> Vec<ChainString> {
    let mut set = BTreeSet::new();
    for tag in FamilyTag::ALL {
        set.extend(enumerate_family(tag, max_len, mode));
    }
    let mut v: Vec<ChainString> = set.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use FamilyTag::*;
    use MembershipMode::*;

    fn cs(s: &str) -> ChainString {
        s.parse().unwrap()
    }

    #[test]
    fn member_examples() {
        let w = member(&cs("3,2,2,3,5"), Strict);
        let s2c: Vec<_> = w.iter().filter(|w| w.tag == S2c).collect();
        // the cyclic shifts of (x1, x2, x3) describe the same string
        assert_eq!(s2c.len(), 3);
        let main = s2c.iter().find(|w| w.params.xs == Some(vec![2, 0, 0])).unwrap();
        assert_eq!(assemble(S2c, &main.params).unwrap(), vec![5, 3, 2, 2, 3]);

        assert!(member_tags(&cs("2,2,2,3"), Strict).contains(&S2e));
        assert!(member(&cs("3,2,2"), Strict).is_empty());
        assert!(member(&cs("3,2,2"), Relaxed).is_empty());
    }

    #[test]
    fn witnesses_round_trip() {
        for s in ["3,2,2,3,5", "2,2,2,3,2", "2,2,2,3", "6,2,2,2,6,2,2,2", "2,3,2,3,2"] {
            for w in member(&cs(s), Relaxed) {
                assert_eq!(w.reassemble().unwrap(), cs(s), "{w:?}");
            }
        }
    }

    #[test]
    fn group_membership() {
        let a = cs("2,2,2,3,2");
        assert!(in_s1(&a, Strict));
        let w: Vec<_> = member(&a, Strict).into_iter().filter(|w| w.tag == S1a).collect();
        assert!(w.iter().any(|w| w.params.b == Some(vec![2, 2]) && w.params.c == Some(vec![3])));
        assert!(in_s2(&cs("3"), Strict));
        assert!(!in_s2(&cs("6,2,2,2,6,2,2,2"), Strict));
        assert!(!in_s1(&cs("6,2,2,2,6,2,2,2"), Relaxed));
        assert!(is_exceptional(&cs("2,6,2,2,2,6,2,2")));
    }

    #[test]
    fn boundary_strings_depend_on_mode() {
        let a = cs("2,3,2,3,2");
        assert!(!in_s2(&a, Strict));
        assert!(in_family(&a, S2e, Relaxed));
    }

    #[test]
    fn convention_strings() {
        assert!(in_family(&cs("2,3,2,3,4,3"), S1e, Strict));
        assert!(in_family(&cs("2,2,2,4,4"), S2d, Strict));
    }

    #[test]
    fn halfreverse_examples() {
        assert!(s2c_via_halfreverse(&cs("5,3,2,2,3")).unwrap());
        assert!(!s2c_via_halfreverse(&cs("3,2,2")).unwrap());
        assert!(s2c_via_halfreverse(&cs("3")).unwrap());
        assert!(s2c_via_halfreverse(&cs("4,2")).unwrap());
        assert!(s2c_via_halfreverse(&cs("2,2")).is_err());
    }

    #[test]
    fn palindrome_examples() {
        assert!(palindrome_criteria(S2b, &[2, 2]).unwrap());
        let c = linear_dual(&[2, 2]).unwrap();
        let mut p = FamilyParams::pair(&[2, 2], &c);
        p.x = Some(0);
        let s = ChainString::new(assemble(S2b, &p).unwrap()).unwrap();
        assert!(in_family(&s, S2c, Strict));
        assert!(palindrome_criteria(S2a, &[2, 3]).unwrap());
        assert!(!palindrome_criteria(S2a, &[2, 2]).unwrap());
        assert!(palindrome_criteria(S1a, &[2]).is_err());
    }

    #[test]
    fn parser_matches_index() {
        for s in enumerate_strings_bounded(9, -4, 0, 12) {
            for mode in [Strict, Relaxed] {
                assert_eq!(member(&s, mode), member_by_index(&s, mode), "{s} {mode:?}");
            }
        }
        for n in 2..=9 {
            let s = ChainString::new(vec![2; n]).unwrap();
            assert_eq!(member(&s, Relaxed), member_by_index(&s, Relaxed));
        }
    }

    #[test]
    fn long_strings_are_cheap() {
        let a: ChainString = "8,2,2,2,2,2,3,3,2,2,2,2,2,2,2,2,2,2,2,2,4,2,2,2,2,2,2,2".parse().unwrap();
        member(&a, Relaxed);
    }

    #[test]
    fn enumerate_strings_small() {
        let got: Vec<String> = enumerate_strings(2, 0).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["3", "2,3", "2,4", "3,3"]);
        let one: Vec<String> = enumerate_strings(1, 0).iter().map(|s| s.to_string()).collect();
        assert_eq!(one, ["3"]);
    }

    #[test]
    fn enumerate_family_examples() {
        let s2c: Vec<String> = enumerate_family(S2c, 3, Strict).iter().map(|s| s.to_string()).collect();
        assert_eq!(s2c, ["3", "2,4", "2,2,5", "3,3,3"]);
        assert!(enumerate_family(S1a, 4, Strict).is_empty());
        let exc = enumerate_family(Exceptional62226222, 8, Strict);
        assert_eq!(exc, vec![cs("2,2,2,6,2,2,2,6")]);
    }

    #[test]
    fn dual_pairs_are_dual() {
        for m in 2..=8 {
            let pairs = dual_pairs(m);
            assert_eq!(pairs.len(), 1 << (m - 2));
            for (b, c) in pairs {
                assert_eq!(linear_dual(&c).unwrap(), b);
            }
        }
    }

    #[test]
    fn witness_json_shape() {
        let w = &member(&cs("3"), Strict)[0];
        let j = serde_json::to_string(w).unwrap();
        assert_eq!(j, r#"{"tag":"S2c","rotation":0,"reversed":false,"params":{"k":0,"xs":[0]}}"#);
    }
}
