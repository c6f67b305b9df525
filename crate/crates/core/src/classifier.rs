//! Bounding verdicts for torus bundles and for the surgeries `Y_a^t`, the
//! obstructions they rest on, closed-form correction terms, and the 3-braid
//! description of `Y_a^t` checked through the reduced Burau representation.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::chainstring::{cyclic_dual, i_invariant, ChainString};
use crate::contfrac::{hj_eval, homology_order, is_square, monodromy_matrix, Parity, Sign};
use crate::error::{Error, Result};
use crate::families::{in_family, in_s1, in_s2, is_exceptional, member, FamilyTag, MembershipMode};

pub type Mat2 = [[i128; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];
pub const T: Mat2 = [[1, 1], [0, 1]];
pub const T_INV: Mat2 = [[1, -1], [0, 1]];
pub const S: Mat2 = [[0, -1], [1, 0]];
pub const S_INV: Mat2 = [[0, 1], [-1, 0]];

/// Strings with `I <= 0` outside `S1 ∪ {(6,2,2,2,6,2,2,2)}` that still carry
/// a negative cyclic subset (exhaustive search over `n <= 8`). Odd-twist
/// non-membership is not an obstruction for them.
pub const LATTICE_GAPS: [&[i64]; 2] = [&[3, 3, 3, 3, 3, 3], &[2, 4, 2, 4, 2, 4, 2, 4]];

pub fn is_lattice_gap(a: &ChainString) -> bool {
    let c = a.canonical();
    LATTICE_GAPS.iter().any(|g| c.entries() == *g)
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn mat_neg(a: &Mat2) -> Mat2 {
    [[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]]
}

/// Inverse of a determinant-1 matrix.
pub fn mat_inv(a: &Mat2) -> Mat2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

pub fn mat_pow(a: &Mat2, k: u32) -> Mat2 {
    (0..k).fold(IDENTITY, |acc, _| mat_mul(&acc, a))
}

fn det(a: &Mat2) -> i128 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn trace(a: &Mat2) -> i128 {
    a[0][0] + a[1][1]
}

fn conj(x: &Mat2, m: &Mat2) -> Mat2 {
    mat_mul(&mat_mul(x, m), &mat_inv(x))
}

/// The six elliptic conjugacy classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EllipticWord {
    S,
    NegS,
    TInvS,
    NegTInvS,
    TInvSSquared,
    NegTInvSSquared,
}

impl EllipticWord {
    pub const ALL: [EllipticWord; 6] = [
        EllipticWord::S,
        EllipticWord::NegS,
        EllipticWord::TInvS,
        EllipticWord::NegTInvS,
        EllipticWord::TInvSSquared,
        EllipticWord::NegTInvSSquared,
    ];

    pub fn matrix(self) -> Mat2 {
        let w = mat_mul(&T_INV, &S);
        match self {
            EllipticWord::S => S,
            EllipticWord::NegS => mat_neg(&S),
            EllipticWord::TInvS => w,
            EllipticWord::NegTInvS => mat_neg(&w),
            EllipticWord::TInvSSquared => mat_mul(&w, &w),
            EllipticWord::NegTInvSSquared => mat_neg(&mat_mul(&w, &w)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonodromyClass {
    Elliptic { word: EllipticWord },
    Parabolic { sign: Sign, n: i64 },
    Hyperbolic { sign: Sign, a: ChainString },
}

impl MonodromyClass {
    /// A representative matrix: the word, `±T^n`, or `±A(a)`.
    pub fn matrix(&self) -> Result<Mat2> {
        Ok(match self {
            MonodromyClass::Elliptic { word } => word.matrix(),
            MonodromyClass::Parabolic { sign, n } => {
                let m = [[1, *n as i128], [0, 1]];
                if *sign == Sign::Plus {
                    m
                } else {
                    mat_neg(&m)
                }
            }
            MonodromyClass::Hyperbolic { sign, a } => {
                let m = monodromy_matrix(a)?.as_matrix();
                if *sign == Sign::Plus {
                    m
                } else {
                    mat_neg(&m)
                }
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Bounds,
    NotBounds,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Bounds => "Bounds",
            Status::NotBounds => "NotBounds",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<Reason>,
}

impl Verdict {
    fn new(status: Status, rule: &str, detail: impl Into<String>) -> Self {
        Verdict { status, reasons: vec![Reason { rule: rule.into(), detail: detail.into() }] }
    }

    fn with(mut self, rule: &str, detail: impl Into<String>) -> Self {
        self.reasons.push(Reason { rule: rule.into(), detail: detail.into() });
        self
    }
}

pub fn classify_torus_bundle(m: &MonodromyClass) -> Verdict {
    match m {
        MonodromyClass::Elliptic { word } => {
            Verdict::new(Status::NotBounds, "elliptic-bundle", format!("no elliptic bundle bounds ({word:?})"))
        }
        MonodromyClass::Parabolic { sign: Sign::Minus, n } => {
            Verdict::new(Status::Bounds, "negative-parabolic-bundle", format!("-T^{n} bounds"))
        }
        MonodromyClass::Parabolic { sign: Sign::Plus, n } => {
            Verdict::new(Status::NotBounds, "positive-parabolic-bundle", format!("T^{n} does not bound"))
        }
        MonodromyClass::Hyperbolic { sign: Sign::Minus, a } => {
            Verdict::new(Status::NotBounds, "negative-hyperbolic-bundle", format!("-A({a:?}) does not bound"))
        }
        MonodromyClass::Hyperbolic { sign: Sign::Plus, a } => {
            if in_family(a, FamilyTag::S2c, MembershipMode::Relaxed) {
                Verdict::new(Status::Bounds, "positive-hyperbolic-s2c", format!("{a:?} is in S2c"))
            } else {
                Verdict::new(Status::NotBounds, "positive-hyperbolic-s2c", format!("{a:?} is not in S2c"))
            }
        }
    }
}

/// Conjugacy class of a determinant-1 matrix, certified by an explicit
/// conjugator in every case.
pub fn normalize_monodromy(m: &Mat2) -> Result<MonodromyClass> {
    normalize_with_certificate(m).map(|c| c.class)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub class: MonodromyClass,
    /// `X` with `X M X^-1 = representative`
    pub conjugator: Mat2,
    /// the word, `±T^n`, or `±A(a)` for the string as read off (before
    /// rotating and reversing it into canonical form)
    pub representative: Mat2,
}

pub fn normalize_with_certificate(m: &Mat2) -> Result<NormalForm> {
    let d = det(m);
    if d != 1 {
        return Err(Error::Determinant(d));
    }
    let (class, conjugator, representative) = match trace(m).abs() {
        0 | 1 => {
            let (c, x) = normalize_elliptic(m)?;
            let r = c.matrix()?;
            (c, x, r)
        }
        2 => {
            let (c, x) = normalize_parabolic(m)?;
            let r = c.matrix()?;
            (c, x, r)
        }
        _ => {
            let (sign, a, x) = normalize_hyperbolic(m)?;
            let r = MonodromyClass::Hyperbolic { sign, a: a.clone() }.matrix()?;
            (MonodromyClass::Hyperbolic { sign, a: a.canonical() }, x, r)
        }
    };
    if conj(&conjugator, m) != representative {
        return Err(Error::NormalFormNotFound(CONJUGATOR_BOUND));
    }
    Ok(NormalForm { class, conjugator, representative })
}

/// Search radius (in letters `T^±1, S`) used to finish elliptic reductions.
pub const CONJUGATOR_BOUND: usize = 24;

fn norm(m: &Mat2) -> i128 {
    m.iter().flatten().map(|x| x * x).sum()
}

fn normalize_elliptic(m: &Mat2) -> Result<(MonodromyClass, Mat2)> {
    // greedy descent of the entry norm by conjugation
    let steps = [T, T_INV, mat_mul(&T, &S), mat_mul(&T_INV, &S)];
    let mut x = IDENTITY;
    let mut cur = *m;
    loop {
        let best = steps.iter().map(|g| (norm(&conj(g, &cur)), *g)).min_by_key(|(n, _)| *n).expect("nonempty");
        if best.0 >= norm(&cur) {
            break;
        }
        cur = conj(&best.1, &cur);
        x = mat_mul(&best.1, &x);
    }
    // breadth-first over short conjugators from the reduced matrix
    let gens = [T, T_INV, S];
    let mut frontier = vec![IDENTITY];
    let mut seen = std::collections::HashSet::new();
    for _ in 0..=CONJUGATOR_BOUND.min(8) {
        let mut next = Vec::new();
        for y in frontier {
            let c = conj(&y, &cur);
            for w in EllipticWord::ALL {
                if c == w.matrix() {
                    return Ok((MonodromyClass::Elliptic { word: w }, mat_mul(&y, &x)));
                }
            }
            for g in &gens {
                let z = mat_mul(g, &y);
                if seen.insert(z) {
                    next.push(z);
                }
            }
        }
        frontier = next;
    }
    Err(Error::NormalFormNotFound(CONJUGATOR_BOUND))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn normalize_parabolic(m: &Mat2) -> Result<(MonodromyClass, Mat2)> {
    let sign = if trace(m) > 0 { Sign::Plus } else { Sign::Minus };
    let s = sign.value();
    // N = sign*M - I = n [[-xz, x^2], [-z^2, xz]] for a primitive (x, z)
    let nmat = [[s * m[0][0] - 1, s * m[0][1]], [s * m[1][0], s * m[1][1] - 1]];
    let g = gcd(gcd(nmat[0][0], nmat[0][1]), gcd(nmat[1][0], nmat[1][1]));
    if g == 0 {
        return Ok((MonodromyClass::Parabolic { sign, n: 0 }, IDENTITY));
    }
    let n = if nmat[0][1] - nmat[1][0] > 0 { g } else { -g };
    let (u, v) = (nmat[0][1] / n, -nmat[1][0] / n);
    // x^2 = u, z^2 = v, x z = -N_11 / n
    let x0 = crate::embedsearch::isqrt(u as i64) as i128;
    let z0 = crate::embedsearch::isqrt(v as i64) as i128;
    let xz = -nmat[0][0] / n;
    let z0 = if x0 * z0 == xz { z0 } else { -z0 };
    // X0 = [[x0, y], [z0, w]] with X0 T^n X0^-1 = sign*M; pick y, w from Bezout
    let (y, w) = bezout_completion(x0, z0);
    let x_mat = [[x0, y], [z0, w]];
    let conjugator = mat_inv(&x_mat);
    let n = i64::try_from(n).map_err(|_| Error::Overflow)?;
    Ok((MonodromyClass::Parabolic { sign, n }, conjugator))
}

/// `(y, w)` with `x w - y z = 1`.
fn bezout_completion(x: i128, z: i128) -> (i128, i128) {
    // extended Euclid on (x, z): find w, y with x w - z y = 1
    let (mut r0, mut r1) = (x, z);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    // s0 x + t0 z = r0 = +-1
    let (s0, t0) = if r0 < 0 { (-s0, -t0) } else { (s0, t0) };
    (-t0, s0)
}

/// `x <= (p + sqrt(d)) / q` for non-square `d`.
fn le_quad(x: i128, p: i128, d: i128, q: i128) -> bool {
    // x q - p <= sqrt(d) when q > 0, >= when q < 0
    let y = x * q - p;
    let below_root = |y: i128| y < 0 || y * y < d;
    if q > 0 {
        below_root(y)
    } else {
        !below_root(y)
    }
}

fn floor_quad(p: i128, d: i128, q: i128) -> i128 {
    let approx = ((p as f64 + (d as f64).sqrt()) / q as f64).floor() as i128;
    let mut m = approx;
    while !le_quad(m, p, d, q) {
        m -= 1;
    }
    while le_quad(m + 1, p, d, q) {
        m += 1;
    }
    m
}

/// Reads the string off the periodic part of the minus continued fraction
/// of a fixed point. Returns the sign, the string as read, and `X` with
/// `X M X^-1 = ±A(a)`.
fn normalize_hyperbolic(m: &Mat2) -> Result<(Sign, ChainString, Mat2)> {
    let sign = if trace(m) > 0 { Sign::Plus } else { Sign::Minus };
    let s = sign.value();
    // conjugating by D = diag(1,-1) turns A(a) into the product of [[a_i, -1], [1, 0]] over rev(a)
    let flip = [[1, 0], [0, -1]];
    let p_mat = mat_mul(&mat_mul(&flip, &[[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]]), &flip);
    let tr = trace(&p_mat);
    let disc = tr * tr - 4;
    let [[al, _], [ga, de]] = p_mat;
    // either fixed point (al - de ± sqrt(disc)) / (2 ga), written with +sqrt
    for (mut pp, mut qq) in [(al - de, 2 * ga), (de - al, -2 * ga)] {
        let mut g = IDENTITY;
        let mut seen: Vec<(i128, i128)> = Vec::new();
        let mut digits: Vec<i128> = Vec::new();
        let mut prefixes: Vec<Mat2> = Vec::new();
        let period = loop {
            if let Some(pos) = seen.iter().position(|&st| st == (pp, qq)) {
                break pos;
            }
            if seen.len() > 100_000 {
                return Err(Error::NormalFormNotFound(CONJUGATOR_BOUND));
            }
            seen.push((pp, qq));
            prefixes.push(g);
            let a = floor_quad(pp, disc, qq) + 1;
            digits.push(a);
            g = mat_mul(&g, &[[a, -1], [1, 0]]);
            let np = a * qq - pp;
            (pp, qq) = (np, (np * np - disc) / qq);
        };
        let pre = prefixes[period];
        let cycle: Vec<i64> = digits[period..].iter().map(|&v| v as i64).collect();
        if cycle.iter().any(|&v| v < 2) || cycle.iter().all(|&v| v == 2) {
            continue;
        }
        let h = cycle.iter().fold(IDENTITY, |acc, &v| mat_mul(&acc, &[[v as i128, -1], [1, 0]]));
        let mut hp = h;
        let mut reps = 1usize;
        while trace(&hp) < tr {
            hp = mat_mul(&hp, &h);
            reps += 1;
        }
        if hp != conj(&mat_inv(&pre), &p_mat) {
            continue;
        }
        // P = pre H(c) pre^-1 and H(c) = D A(rev c) D, so X = D pre^-1 D
        let mut string = cycle.repeat(reps);
        string.reverse();
        let x = mat_mul(&mat_mul(&flip, &mat_inv(&pre)), &flip);
        return Ok((sign, ChainString::new(string)?, x));
    }
    Err(Error::NormalFormNotFound(CONJUGATOR_BOUND))
}

/// Fires when the first homology of `Y_a^t` (for `t` of the given parity)
/// does not have square order.
pub fn square_order_obstruction(a: &ChainString, parity: Parity) -> Result<Option<Reason>> {
    let order = homology_order(a, parity)?;
    Ok((!is_square(order)?).then(|| Reason {
        rule: "square-order".into(),
        detail: format!("|H_1| = {order} is not a square"),
    }))
}

/// Rank of reduced Floer homology of `Y_a^t`, a function of `t` alone.
pub fn hf_red_rank(t: i64) -> u64 {
    if t.rem_euclid(2) == 0 {
        (t / 2).unsigned_abs()
    } else {
        let m = (t - 1).div_euclid(2);
        if m >= 0 {
            m as u64
        } else {
            (-(m + 1)) as u64
        }
    }
}

/// `d(Y_a^t, s_0)` for odd `t`: `1 - I/4` when `t >= 1`, `-1 - I/4` when `t <= -1`.
pub fn d_invariant_s0(a: &ChainString, t: i64) -> Result<Ratio<i64>> {
    if t.rem_euclid(2) == 0 {
        return Err(Error::EvenTwist(t));
    }
    let base = if t >= 1 { 1 } else { -1 };
    Ok(Ratio::from_integer(base) + grading_shift(a))
}

/// `(3n - sum a_i) / 4 = -I(a)/4`.
pub fn grading_shift(a: &ChainString) -> Ratio<i64> {
    Ratio::new(-i_invariant(a), 4)
}

fn mode_name(mode: MembershipMode) -> &'static str {
    match mode {
        MembershipMode::Strict => "strict",
        MembershipMode::Relaxed => "relaxed",
    }
}

fn s1_tail(a: &ChainString, mode: MembershipMode) -> bool {
    [FamilyTag::S1b, FamilyTag::S1c, FamilyTag::S1d, FamilyTag::S1e].iter().any(|&t| in_family(a, t, mode))
}

fn tags(a: &ChainString, mode: MembershipMode) -> String {
    let t: Vec<String> = crate::families::member_tags(a, mode).iter().map(|t| t.to_string()).collect();
    if t.is_empty() {
        "no family".into()
    } else {
        t.join(",")
    }
}

/// `p` of the first S1a decomposition `(b, 2, rev c, 2)` of `d`.
fn s1a_p(d: &ChainString, mode: MembershipMode) -> Result<Option<i128>> {
    let w = member(d, mode).into_iter().find(|w| w.tag == FamilyTag::S1a);
    match w.and_then(|w| w.params.b) {
        Some(b) => Ok(Some(hj_eval(&b)?.p)),
        None => Ok(None),
    }
}

fn with_square(v: Verdict, a: &ChainString, parity: Parity) -> Result<Verdict> {
    match square_order_obstruction(a, parity)? {
        Some(r) if v.status != Status::Bounds => {
            Ok(Verdict { status: Status::NotBounds, reasons: [v.reasons, vec![r]].concat() })
        }
        _ => Ok(v),
    }
}

/// Decides whether `Y_a^t` bounds a rational homology ball.
///
/// Under [`MembershipMode::Strict`] the verdict is computed with both
/// memberships; when they disagree the answer is `Unknown`.
pub fn classify_surgery(a: &ChainString, t: i64, mode: MembershipMode) -> Result<Verdict> {
    let relaxed = classify_in_mode(a, t, MembershipMode::Relaxed)?;
    if mode == MembershipMode::Relaxed {
        return Ok(relaxed);
    }
    let strict = classify_in_mode(a, t, MembershipMode::Strict)?;
    if strict.status == relaxed.status {
        return Ok(strict);
    }
    Ok(Verdict::new(
        Status::Unknown,
        "boundary-parameters",
        format!(
            "strict membership gives {} but the boundary-parameter families give {}",
            strict.status, relaxed.status
        ),
    ))
}

fn classify_in_mode(a: &ChainString, t: i64, mode: MembershipMode) -> Result<Verdict> {
    if a.is_all_twos() {
        return Ok(if t.rem_euclid(2) != 0 {
            Verdict::new(Status::Bounds, "all-twos", "parabolic bundle -T^n bounds, so every odd twist bounds")
        } else {
            Verdict::new(Status::NotBounds, "all-twos", "no positive cyclic subset has all squares -2")
        });
    }
    let d = cyclic_dual(a)?;
    let m = mode_name(mode);
    if a.len() == 1 && (t == 0 || t == -1) {
        let a1 = a.entries()[0];
        let v = if t == 0 {
            let ok = a1 == 3 || a1 == 6;
            Verdict::new(
                if ok { Status::Bounds } else { Status::NotBounds },
                "lens-space",
                format!("Y is L({}, 1); only L(1,1) and L(4,1) bound", a1 - 2),
            )
        } else {
            Verdict::new(Status::NotBounds, "lens-space", format!("Y is L({}, 1), never L(1,1) or L(4,1)", a1 + 2))
        };
        return Ok(v);
    }
    match t {
        0 => {
            let (sa, sd) = (in_s2(a, mode), in_s2(&d, mode));
            let detail = format!("a: {}; d = {d:?}: {} ({m})", tags(a, mode), tags(&d, mode));
            if sa || sd {
                Ok(Verdict::new(Status::Bounds, "even-twist-criterion", detail))
            } else {
                with_square(Verdict::new(Status::NotBounds, "even-twist-criterion", detail), a, Parity::Even)
            }
        }
        -1 => classify_minus_one(a, &d, mode),
        1 => {
            let v = classify_minus_one(&d, a, mode)?;
            Ok(v.with("mirror", format!("Y_a^1 is Y_d^-1 with reversed orientation, d = {d:?}")))
        }
        _ if t.rem_euclid(2) == 0 => {
            if in_family(a, FamilyTag::S2c, mode) || in_family(&d, FamilyTag::S2c, mode) {
                return Ok(Verdict::new(
                    Status::Bounds,
                    "s2c-even-twists",
                    "a or its dual is in S2c, whose positive bundle bounds; every even twist bounds",
                ));
            }
            if let Some(v) = lattice_even(a, &d, mode) {
                return with_square(v, a, Parity::Even);
            }
            let v = with_square(
                Verdict::new(Status::Unknown, "open-twist", format!("t = {t}: membership in S2 outside S2c")),
                a,
                Parity::Even,
            )?;
            Ok(v)
        }
        _ => {
            if let Some(v) = lattice_odd(a, &d, mode) {
                return with_square(v, a, Parity::Odd);
            }
            with_square(
                Verdict::new(Status::Unknown, "open-twist", format!("t = {t}: odd twist with a or d in S1")),
                a,
                Parity::Odd,
            )
        }
    }
}

fn lattice_even(a: &ChainString, d: &ChainString, mode: MembershipMode) -> Option<Verdict> {
    for (x, name) in [(a, "a"), (d, "d")] {
        if i_invariant(x) <= 0 && !in_s2(x, mode) {
            return Some(Verdict::new(
                Status::NotBounds,
                "lattice-even",
                format!("{name} = {x:?} has I <= 0 and is not in S2, so no positive cyclic subset exists"),
            ));
        }
    }
    None
}

fn lattice_odd(a: &ChainString, d: &ChainString, mode: MembershipMode) -> Option<Verdict> {
    for (x, name) in [(a, "a"), (d, "d")] {
        if i_invariant(x) <= 0 && !in_s1(x, mode) && !is_exceptional(x) && !is_lattice_gap(x) {
            return Some(Verdict::new(
                Status::NotBounds,
                "lattice-odd",
                format!("{name} = {x:?} has I <= 0 and is outside S1, so no negative cyclic subset exists"),
            ));
        }
    }
    None
}

/// `Y_a^{-1}`, with `d` the cyclic dual of `a`.
fn classify_minus_one(a: &ChainString, d: &ChainString, mode: MembershipMode) -> Result<Verdict> {
    let m = mode_name(mode);
    let detail = format!("a = {a:?}: {}; d = {d:?}: {} ({m})", tags(a, mode), tags(d, mode));
    if in_s1(a, mode) || s1_tail(d, mode) {
        return Ok(Verdict::new(Status::Bounds, "odd-twist-criterion", detail));
    }
    let hypothesis = !in_family(d, FamilyTag::S1a, mode) && !is_exceptional(d);
    if hypothesis {
        if is_lattice_gap(a) || is_lattice_gap(d) {
            return with_square(
                Verdict::new(
                    Status::Unknown,
                    "lattice-gap",
                    format!("{a:?} or its dual carries a negative cyclic subset outside S1; {detail}"),
                ),
                a,
                Parity::Odd,
            );
        }
        return with_square(Verdict::new(Status::NotBounds, "odd-twist-criterion", detail), a, Parity::Odd);
    }
    if let Some(p) = s1a_p(d, mode)? {
        if p % 2 != 0 {
            return Ok(Verdict::new(
                Status::NotBounds,
                "s1a-dual-odd-p",
                format!("d = {d:?} is in S1a with p = {p} odd"),
            ));
        }
    }
    with_square(
        Verdict::new(
            Status::Unknown,
            "odd-twist-unresolved",
            format!("d = {d:?} is in S1a with p even or is (6,2,2,2,6,2,2,2); no obstruction applies"),
        ),
        a,
        Parity::Odd,
    )
}

/// Letters `1, -1, 2, -2` for `σ1, σ1^-1, σ2, σ2^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub letters: Vec<i8>,
    /// exponent of the full-twist prefix `(σ1σ2)^{3t}`
    pub twist: i64,
    pub a: ChainString,
}

fn superscript(k: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if k < 0 {
        s.push('⁻');
    }
    for c in k.unsigned_abs().to_string().chars() {
        s.push(DIGITS[c.to_digit(10).unwrap() as usize]);
    }
    s
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.twist != 0 {
            parts.push(format!("(σ1σ2){}", superscript(3 * self.twist)));
        }
        for &x in self.a.entries() {
            parts.push("σ1".to_string());
            if x > 2 {
                let k = -(x - 2);
                parts.push(if k == -1 { "σ2⁻¹".into() } else { format!("σ2{}", superscript(k)) });
            }
        }
        f.write_str(&parts.join(" "))
    }
}

/// `(σ1σ2)^{3t} σ1 σ2^{-(a_1-2)} ... σ1 σ2^{-(a_n-2)}`.
pub fn braid_word(a: &ChainString, t: i64) -> BraidWord {
    let mut letters = Vec::new();
    let block: [i8; 2] = if t >= 0 { [1, 2] } else { [-2, -1] };
    for _ in 0..3 * t.unsigned_abs() {
        letters.extend(block);
    }
    for &x in a.entries() {
        letters.push(1);
        letters.extend(std::iter::repeat_n(-2, (x - 2) as usize));
    }
    BraidWord { letters, twist: t, a: a.clone() }
}

pub const SIGMA1: Mat2 = [[1, 1], [0, 1]];
pub const SIGMA2: Mat2 = [[1, 0], [-1, 1]];

pub fn burau(letters: &[i8]) -> Mat2 {
    letters.iter().fold(IDENTITY, |acc, &l| {
        let g = match l {
            1 => SIGMA1,
            -1 => mat_inv(&SIGMA1),
            2 => SIGMA2,
            -2 => mat_inv(&SIGMA2),
            _ => unreachable!("braid letters are ±1, ±2"),
        };
        mat_mul(&acc, &g)
    })
}

/// `(σ1σ2)^3 ↦ -Id` under the chosen images.
pub fn burau_self_test() -> bool {
    burau(&[1, 2, 1, 2, 1, 2]) == mat_neg(&IDENTITY)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurauCheck {
    pub trace: i128,
    /// `|trace| = |tr A(a)|` and, for hyperbolic `a`, `|trace - 2|` is the
    /// homology order for the parity of `t`
    pub matches: bool,
}

pub fn burau_trace_check(a: &ChainString, t: i64) -> Result<BurauCheck> {
    let tr = trace(&burau(&braid_word(a, t).letters));
    let ta = monodromy_matrix(a)?.trace();
    let mut matches = tr.abs() == ta.abs();
    if !a.is_all_twos() {
        matches &= (tr - 2).abs() == homology_order(a, Parity::of(t))?;
    }
    Ok(BurauCheck { trace: tr, matches })
}

/// The surgery verdict restated for the branched double cover of the
/// closure of [`braid_word`].
pub fn braid_cover_classify(a: &ChainString, t: i64, mode: MembershipMode) -> Result<Verdict> {
    let v = classify_surgery(a, t, mode)?;
    let word = braid_word(a, t);
    let rule = match t {
        -1 => "braid-negative-full-twist",
        1 => "braid-positive-full-twist",
        0 => "braid-no-twist",
        _ if t.rem_euclid(2) == 0 => "braid-even-full-twists",
        _ => "braid-odd-full-twists",
    };
    let head = Reason { rule: rule.into(), detail: format!("double cover branched over the closure of {word}") };
    Ok(Verdict { status: v.status, reasons: [vec![head], v.reasons].concat() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use MembershipMode::*;

    fn cs(s: &str) -> ChainString {
        s.parse().unwrap()
    }

    fn status(s: &str, t: i64) -> Status {
        classify_surgery(&cs(s), t, Strict).unwrap().status
    }

    #[test]
    fn golden_surgery_verdicts() {
        assert_eq!(status("3", 0), Status::Bounds);
        assert_eq!(status("6", 0), Status::Bounds);
        assert_eq!(status("7", -1), Status::NotBounds);
        assert_eq!(status("2,2,2,3,2", -1), Status::Bounds);
        assert_eq!(status("6,2,2,2,6,2,2,2", -1), Status::Unknown);
        assert_eq!(status("3,2,2", 0), Status::NotBounds);
        assert_eq!(status("5,3,2,2,3", 4), Status::Bounds);
    }

    #[test]
    fn bundle_verdicts() {
        for n in -3..=3 {
            let v = classify_torus_bundle(&MonodromyClass::Parabolic { sign: Sign::Minus, n });
            assert_eq!(v.status, Status::Bounds);
        }
        for word in EllipticWord::ALL {
            assert_eq!(classify_torus_bundle(&MonodromyClass::Elliptic { word }).status, Status::NotBounds);
        }
        let h = |a: &str| classify_torus_bundle(&MonodromyClass::Hyperbolic { sign: Sign::Plus, a: cs(a) }).status;
        assert_eq!(h("5,3,2,2,3"), Status::Bounds);
        assert_eq!(h("3,2,2"), Status::NotBounds);
    }

    #[test]
    fn normal_forms() {
        let c = normalize_monodromy(&[[5, 2], [-3, -1]]).unwrap();
        assert_eq!(c, MonodromyClass::Hyperbolic { sign: Sign::Plus, a: cs("2,3") });
        assert_eq!(
            normalize_monodromy(&[[0, 1], [-1, 0]]).unwrap(),
            MonodromyClass::Elliptic { word: EllipticWord::NegS }
        );
        assert_eq!(
            normalize_monodromy(&[[-1, -4], [0, -1]]).unwrap(),
            MonodromyClass::Parabolic { sign: Sign::Minus, n: 4 }
        );
        assert!(matches!(normalize_monodromy(&[[2, 0], [0, 2]]), Err(Error::Determinant(4))));
    }

    #[test]
    fn normal_forms_of_random_conjugates() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let gens = [T, T_INV, S, S_INV];
        let classes: Vec<MonodromyClass> = EllipticWord::ALL
            .iter()
            .map(|&word| MonodromyClass::Elliptic { word })
            .chain((-3..=3).flat_map(|n| {
                [Sign::Plus, Sign::Minus].into_iter().map(move |sign| MonodromyClass::Parabolic { sign, n })
            }))
            .chain(["3", "2,3", "2,2,3,5,3", "3,3,3", "2,4,3", "2,2,2,2,3"].iter().flat_map(|s| {
                [Sign::Plus, Sign::Minus].into_iter().map(|sign| MonodromyClass::Hyperbolic { sign, a: cs(s) })
            }))
            .collect();
        for class in classes {
            let rep = class.matrix().unwrap();
            for _ in 0..20 {
                let len = rng.gen_range(0..8);
                let x = (0..len).fold(IDENTITY, |acc, _| mat_mul(&acc, &gens[rng.gen_range(0..4)]));
                let m = conj(&x, &rep);
                let got = normalize_monodromy(&m).unwrap();
                match (&class, &got) {
                    (MonodromyClass::Hyperbolic { sign: s1, a: a1 }, MonodromyClass::Hyperbolic { sign: s2, a: a2 }) => {
                        assert_eq!(s1, s2);
                        assert!(crate::chainstring::equivalent(a1, a2), "{a1:?} vs {a2:?}");
                    }
                    _ => assert_eq!(class, got, "{m:?}"),
                }
            }
        }
    }

    #[test]
    fn square_order_examples() {
        assert!(square_order_obstruction(&cs("3,2,2"), Parity::Even).unwrap().is_some());
        assert!(square_order_obstruction(&cs("2,2,2,3,2"), Parity::Odd).unwrap().is_none());
        assert!(square_order_obstruction(&cs("3"), Parity::Even).unwrap().is_none());
    }

    #[test]
    fn hf_and_d_invariants() {
        assert_eq!(hf_red_rank(0), 0);
        assert_eq!(hf_red_rank(5), 2);
        assert_eq!(hf_red_rank(-3), 1);
        assert_eq!(d_invariant_s0(&cs("2,2,2,3,2"), 1).unwrap(), Ratio::from_integer(2));
        assert_eq!(d_invariant_s0(&cs("3,3,3"), -1).unwrap(), Ratio::from_integer(-1));
        assert_eq!(d_invariant_s0(&cs("3"), 2), Err(Error::EvenTwist(2)));
        let a = cs("5,2,3");
        let d = cyclic_dual(&a).unwrap();
        assert_eq!(d_invariant_s0(&a, -1).unwrap(), -d_invariant_s0(&d, 1).unwrap());
    }

    #[test]
    fn braid_words_and_burau() {
        assert_eq!(braid_word(&cs("3,2"), 0).to_string(), "σ1 σ2⁻¹ σ1");
        assert_eq!(braid_word(&cs("3"), -1).to_string(), "(σ1σ2)⁻³ σ1 σ2⁻¹");
        assert_eq!(braid_word(&cs("2"), 0).letters, vec![1]);
        assert!(burau_self_test());
        assert_eq!(burau(&braid_word(&cs("3,2"), 0).letters), [[2, 3], [1, 2]]);
        let c = burau_trace_check(&cs("3,2"), 0).unwrap();
        assert_eq!(c, BurauCheck { trace: 4, matches: true });
    }

    #[test]
    fn braid_cover_matches_surgery() {
        assert_eq!(braid_cover_classify(&cs("3,2,2"), 0, Strict).unwrap().status, Status::NotBounds);
        assert_eq!(braid_cover_classify(&cs("6,2,2,2,6,2,2,2"), 1, Strict).unwrap().status, Status::Unknown);
        assert_eq!(braid_cover_classify(&cs("5,3,2,2,3"), 4, Strict).unwrap().status, Status::Bounds);
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify_surgery(&cs("6"), 0, Strict).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"{"status":"Bounds","reasons":[{"rule":"lens-space","#), "{s}");
    }
}
