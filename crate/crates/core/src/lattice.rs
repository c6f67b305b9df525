//! Subsets of the lattice `(Z^n, -I)`: standard and cyclic subsets, incidence
//! statistics, contractions and the explicit embeddings used as fixtures.
//!
//! Coordinates are stored against `e_1..e_n`; indices in this module are
//! 0-based. The pairing is `v . w = -sum v_j w_j`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::chainstring::{canonical_form, ChainString};
use crate::error::{Error, Result};

pub type LatticeVector = Vec<i64>;

pub fn dot(v: &[i64], w: &[i64]) -> i64 {
    -v.iter().zip(w).map(|(a, b)| a * b).sum::<i64>()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum SubsetKind {
    Standard,
    NegativeCyclic,
    PositiveCyclic,
    Invalid,
}

impl SubsetKind {
    pub fn is_cyclic(self) -> bool {
        matches!(self, SubsetKind::NegativeCyclic | SubsetKind::PositiveCyclic)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LatticeSubset {
    pub vectors: Vec<LatticeVector>,
    pub kind: SubsetKind,
    /// `a_i = -v_i . v_i` in vertex order.
    pub string: Vec<i64>,
}

impl LatticeSubset {
    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.len())
    }

    /// Associated string up to the symmetry of the kind: canonical for cyclic
    /// subsets, the smaller of the two directions for standard ones.
    pub fn associated_string(&self) -> Vec<i64> {
        match self.kind {
            SubsetKind::NegativeCyclic | SubsetKind::PositiveCyclic => {
                canonical_form(&ChainString::new(self.string.clone()).expect("squares checked"))
                    .into_entries()
            }
            _ => {
                let rev: Vec<i64> = self.string.iter().rev().copied().collect();
                rev.min(self.string.clone())
            }
        }
    }

    pub fn i_invariant(&self) -> i64 {
        self.string.iter().map(|a| a - 3).sum()
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        gram(&self.vectors)
    }
}

pub fn gram(vectors: &[LatticeVector]) -> Vec<Vec<i64>> {
    vectors.iter().map(|v| vectors.iter().map(|w| dot(v, w)).collect()).collect()
}

/// Integer determinant by fraction-free elimination.
fn determinant(rows: &[LatticeVector]) -> i128 {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Kind from the Gram matrix in the given vertex order.
///
/// Sign patterns are read up to negating vertices: a cycle of `+-1`
/// intersections is negative when it has an odd number of `-1` edges and
/// positive otherwise, since negating a vertex flips two edges at once.
pub fn kind_of_gram(g: &[Vec<i64>]) -> SubsetKind {
    let n = g.len();
    let string: Vec<i64> = (0..n).map(|i| -g[i][i]).collect();
    if n == 0 || string.iter().any(|&a| a < 2) {
        return SubsetKind::Invalid;
    }
    let some_big = string.iter().any(|&a| a >= 3);
    if n == 1 {
        return SubsetKind::Standard;
    }
    if n == 2 {
        return match g[0][1].abs() {
            0 => SubsetKind::NegativeCyclic,
            1 => SubsetKind::Standard,
            2 if some_big => SubsetKind::PositiveCyclic,
            _ => SubsetKind::Invalid,
        };
    }
    let path_ok = (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let adjacent = j == i + 1;
            if adjacent {
                g[i][j].abs() == 1
            } else if i == 0 && j == n - 1 {
                true
            } else {
                g[i][j] == 0
            }
        })
    });
    if !path_ok {
        return SubsetKind::Invalid;
    }
    match g[0][n - 1] {
        0 => SubsetKind::Standard,
        w if w.abs() == 1 => {
            let negatives = (0..n).filter(|&i| g[i][(i + 1) % n] == -1).count();
            if negatives % 2 == 1 {
                SubsetKind::NegativeCyclic
            } else if some_big {
                SubsetKind::PositiveCyclic
            } else {
                SubsetKind::Invalid
            }
        }
        _ => SubsetKind::Invalid,
    }
}

/// Classifies `n` vectors of `Z^m` in the given order.
///
/// Standard subsets may live in any dimension; cyclic subsets must have `m = n`.
pub fn classify_subset(vectors: Vec<LatticeVector>) -> Result<LatticeSubset> {
    let n = vectors.len();
    if n == 0 {
        return Err(Error::Dimension("no vectors".into()));
    }
    let m = vectors[0].len();
    if vectors.iter().any(|v| v.len() != m) {
        return Err(Error::Dimension("vectors of different lengths".into()));
    }
    let g = gram(&vectors);
    let mut kind = kind_of_gram(&g);
    if kind.is_cyclic() && m != n {
        return Err(Error::Dimension(format!("{n} vectors in Z^{m}")));
    }
    if kind != SubsetKind::Invalid && !independent(&vectors) {
        kind = SubsetKind::Invalid;
    }
    let string = (0..n).map(|i| -g[i][i]).collect();
    Ok(LatticeSubset { vectors, kind, string })
}

fn independent(vectors: &[LatticeVector]) -> bool {
    // Gram determinant of the (possibly non-square) family
    let g: Vec<LatticeVector> = gram(vectors);
    determinant(&g) != 0
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IncidenceStats {
    /// basis index -> vertices touching it
    pub e: Vec<BTreeSet<usize>>,
    /// vertex index -> basis indices it touches
    pub v: Vec<BTreeSet<usize>>,
    /// `|E_j|` -> number of basis indices with that count
    pub p: BTreeMap<usize, usize>,
    pub max_coeff: i64,
}

impl IncidenceStats {
    pub fn p(&self, i: usize) -> usize {
        self.p.get(&i).copied().unwrap_or(0)
    }
}

pub fn stats(s: &LatticeSubset) -> IncidenceStats {
    let dim = s.dim();
    let mut e = vec![BTreeSet::new(); dim];
    let mut v = vec![BTreeSet::new(); s.n()];
    let mut max_coeff = 0;
    for (j, vec) in s.vectors.iter().enumerate() {
        for (i, &c) in vec.iter().enumerate() {
            if c != 0 {
                e[i].insert(j);
                v[j].insert(i);
                max_coeff = max_coeff.max(c.abs());
            }
        }
    }
    let mut p = BTreeMap::new();
    for set in &e {
        *p.entry(set.len()).or_insert(0) += 1;
    }
    IncidenceStats { e, v, p, max_coeff }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KeyInequality {
    /// `2 p_1 + p_2`
    pub lhs: i64,
    /// `sum_{j >= 4} (j - 3) p_j`
    pub rhs: i64,
    /// `rhs - I(S)`, the value `lhs` must equal when all coefficients are at most 1
    pub equality_rhs: i64,
    pub equality_applicable: bool,
    pub holds: bool,
}

pub fn keylem1_check(s: &LatticeSubset) -> Result<KeyInequality> {
    let i = s.i_invariant();
    if i > 0 {
        return Err(Error::Invalid(format!("I(S) = {i} > 0")));
    }
    let st = stats(s);
    let lhs = 2 * st.p(1) as i64 + st.p(2) as i64;
    let rhs: i64 = st.p.iter().filter(|(&j, _)| j >= 4).map(|(&j, &c)| (j as i64 - 3) * c as i64).sum();
    let equality_rhs = rhs - i;
    let equality_applicable = st.max_coeff <= 1;
    let holds = lhs >= rhs && (!equality_applicable || lhs == equality_rhs);
    Ok(KeyInequality { lhs, rhs, equality_rhs, equality_applicable, holds })
}

pub fn negate_vertex(s: &LatticeSubset, k: usize) -> Result<LatticeSubset> {
    if k >= s.n() {
        return Err(Error::IndexOutOfRange { index: k, len: s.n() });
    }
    let mut vectors = s.vectors.clone();
    for c in &mut vectors[k] {
        *c = -*c;
    }
    classify_subset(vectors)
}

/// Applies a signed permutation of the basis: new coordinate `perm[j]` gets
/// `signs[j] * old coordinate j`.
pub fn apply_signed_permutation(s: &LatticeSubset, perm: &[usize], signs: &[i64]) -> Result<LatticeSubset> {
    let vectors = s
        .vectors
        .iter()
        .map(|v| {
            let mut w = vec![0; v.len()];
            for (j, &c) in v.iter().enumerate() {
                w[perm[j]] = signs[j] * c;
            }
            w
        })
        .collect();
    classify_subset(vectors)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ContractionStyle {
    Centered,
    Rooted,
    Plain,
}

/// What a contraction removed, enough to undo it exactly.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ContractionRecord {
    pub style: ContractionStyle,
    /// basis column that was dropped
    pub column: usize,
    /// vertex indices in the original subset
    pub s: usize,
    pub s_tilde: usize,
    pub t: usize,
    /// position of `v_s + v_s~` and of `pi(v_t)` in the contracted subset
    pub merged_at: usize,
    pub root_at: usize,
    /// `v_s~` in the original coordinates
    pub v_s_tilde: LatticeVector,
    /// `v_t . e_i` coefficient removed by the projection
    pub t_coeff: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Contraction {
    pub subset: LatticeSubset,
    pub record: ContractionRecord,
}

fn style_of(s: &LatticeSubset, si: usize, st: usize, t: usize) -> ContractionStyle {
    let g = |a: usize, b: usize| dot(&s.vectors[a], &s.vectors[b]);
    if s.string[st] != 2 {
        ContractionStyle::Plain
    } else if g(t, si).abs() == 1 {
        ContractionStyle::Centered
    } else if g(t, si) == 0 && g(t, st) == 0 {
        ContractionStyle::Rooted
    } else {
        ContractionStyle::Plain
    }
}

/// The general contraction relative to `e_i` with `E_i = {s, s~, t}`.
pub fn contract(s: &LatticeSubset, si: usize, st: usize, t: usize, i: usize) -> Result<Contraction> {
    let n = s.n();
    let fail = |m: &str| Err(Error::NoContraction(m.to_string()));
    if !s.kind.is_cyclic() || n < 3 {
        return fail("contractions need a cyclic subset of length at least 3");
    }
    if si >= n || st >= n || t >= n || i >= s.dim() {
        return fail("index out of range");
    }
    let st_ = stats(s);
    let expected: BTreeSet<usize> = [si, st, t].into_iter().collect();
    if expected.len() != 3 || st_.e[i] != expected {
        return fail("E_i is not {s, s~, t}");
    }
    if (si + 1) % n != st && (st + 1) % n != si {
        return fail("s~ is not adjacent to s");
    }
    let shared: BTreeSet<usize> = st_.v[si].intersection(&st_.v[st]).copied().collect();
    if shared != BTreeSet::from([i]) {
        return fail("V_s and V_s~ share more than e_i");
    }
    if expected.iter().any(|&u| s.vectors[u][i].abs() != 1) {
        return fail("non-unit coefficient on e_i");
    }
    if s.string[t] < 3 {
        return fail("a_t < 3");
    }
    let style = style_of(s, si, st, t);
    let merged: LatticeVector = s.vectors[si].iter().zip(&s.vectors[st]).map(|(a, b)| a + b).collect();
    let mut root = s.vectors[t].clone();
    let t_coeff = root[i];
    root[i] = 0;
    let mut vectors = Vec::with_capacity(n - 1);
    let (mut merged_at, mut root_at) = (0, 0);
    for u in 0..n {
        if u == st {
            continue;
        }
        let v = if u == si {
            merged_at = vectors.len();
            merged.clone()
        } else if u == t {
            root_at = vectors.len();
            root.clone()
        } else {
            s.vectors[u].clone()
        };
        let mut w = v;
        w.remove(i);
        vectors.push(w);
    }
    let subset = classify_subset(vectors)?;
    let record = ContractionRecord {
        style,
        column: i,
        s: si,
        s_tilde: st,
        t,
        merged_at,
        root_at,
        v_s_tilde: s.vectors[st].clone(),
        t_coeff,
    };
    Ok(Contraction { subset, record })
}

/// Every contraction available in `s`, in (column, s, s~) order.
pub fn all_contractions(s: &LatticeSubset) -> Vec<Contraction> {
    let n = s.n();
    if !s.kind.is_cyclic() || n < 3 {
        return Vec::new();
    }
    let st = stats(s);
    let mut out = Vec::new();
    for (i, e) in st.e.iter().enumerate() {
        if e.len() != 3 {
            continue;
        }
        let members: Vec<usize> = e.iter().copied().collect();
        for &si in &members {
            for &sti in &members {
                if si == sti {
                    continue;
                }
                let t = *members.iter().find(|&&u| u != si && u != sti).unwrap();
                if let Ok(c) = contract(s, si, sti, t, i) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Contraction centered at vertex `s_idx`; pass `column` to disambiguate at `n = 3`.
pub fn contract_centered(s: &LatticeSubset, s_idx: usize, column: Option<usize>) -> Result<LatticeSubset> {
    let found: Vec<Contraction> = all_contractions(s)
        .into_iter()
        .filter(|c| c.record.style == ContractionStyle::Centered && c.record.s == s_idx)
        .filter(|c| column.is_none_or(|i| c.record.column == i))
        .collect();
    pick_unique(found, "no center at this vertex")
}

/// Contraction rooted at vertex `t` relative to basis column `column`.
///
/// Any `-2` contraction that projects `t` is accepted. When `t` is adjacent
/// to `s` (the `k = 1` star expansion) this is also the centered contraction.
pub fn contract_rooted(s: &LatticeSubset, t: usize, column: usize) -> Result<LatticeSubset> {
    let found: Vec<Contraction> = all_contractions(s)
        .into_iter()
        .filter(|c| c.record.style != ContractionStyle::Plain && c.record.t == t && c.record.column == column)
        .collect();
    pick_unique(found, "no rooted contraction at this vertex and column")
}

fn pick_unique(found: Vec<Contraction>, msg: &str) -> Result<LatticeSubset> {
    let mut grams: Vec<Vec<Vec<i64>>> = found.iter().map(|c| c.subset.gram()).collect();
    grams.dedup();
    match (found.into_iter().next(), grams.len()) {
        (None, _) => Err(Error::NoContraction(msg.to_string())),
        (Some(c), 1) => Ok(c.subset),
        (Some(_), _) => Err(Error::NoContraction("ambiguous; pass the basis column".into())),
    }
}

/// Undoes a contraction using its record.
pub fn expand(contracted: &LatticeSubset, record: &ContractionRecord) -> Result<LatticeSubset> {
    let m = contracted.n();
    let n = m + 1;
    let i = record.column;
    let lift = |v: &LatticeVector| {
        let mut w = v.clone();
        w.insert(i, 0);
        w
    };
    let mut out: Vec<LatticeVector> = Vec::with_capacity(n);
    let mut j = 0;
    for u in 0..n {
        if u == record.s_tilde {
            out.push(record.v_s_tilde.clone());
            continue;
        }
        let mut w = lift(&contracted.vectors[j]);
        if j == record.merged_at {
            w = w.iter().zip(&record.v_s_tilde).map(|(a, b)| a - b).collect();
        } else if j == record.root_at {
            w[i] = record.t_coeff;
        }
        out.push(w);
        j += 1;
    }
    classify_subset(out)
}

/// Vector with the given `(column, coefficient)` entries, 1-based columns.
pub fn vecn(dim: usize, entries: &[(usize, i64)]) -> LatticeVector {
    let mut v = vec![0; dim];
    for &(j, c) in entries {
        v[j - 1] += c;
    }
    v
}

/// Named subsets from the classification literature, each with its expected
/// kind and string in vertex order.
pub mod fixtures {
    use super::*;

    #[derive(Clone, Debug, PartialEq, Eq, Serialize)]
    pub struct Fixture {
        pub name: String,
        pub vectors: Vec<LatticeVector>,
        pub kind: SubsetKind,
        pub string: Vec<i64>,
    }

    fn fx(name: impl Into<String>, kind: SubsetKind, string: Vec<i64>, vectors: Vec<LatticeVector>) -> Fixture {
        Fixture { name: name.into(), vectors, kind, string }
    }

    fn twos(n: usize) -> Vec<i64> {
        vec![2; n]
    }

    use SubsetKind::*;

    /// `{e_1 - e_2, ..., e_{n-1} - e_n, e_n + e_1}`, negative with string `(2^[n])`.
    pub fn two_cycle(n: usize) -> Fixture {
        let mut vs: Vec<LatticeVector> = (1..n).map(|j| vecn(n, &[(j, 1), (j + 1, -1)])).collect();
        vs.push(vecn(n, &[(n, 1), (1, 1)]));
        fx(format!("two_cycle_{n}"), NegativeCyclic, twos(n), vs)
    }

    /// The alternate `(2,2,2,2)` subset with `p_1 = p_3 = 2`.
    pub fn two_cycle_alt() -> Fixture {
        let d = 4;
        fx(
            "two_cycle_alt",
            NegativeCyclic,
            twos(4),
            vec![
                vecn(d, &[(1, 1), (2, -1)]),
                vecn(d, &[(2, 1), (3, -1)]),
                vecn(d, &[(2, -1), (1, -1)]),
                vecn(d, &[(1, 1), (4, 1)]),
            ],
        )
    }

    pub fn base_cases() -> Vec<Fixture> {
        vec![
            fx("base_22", NegativeCyclic, vec![2, 2], vec![vecn(2, &[(1, 1), (2, -1)]), vecn(2, &[(2, 1), (1, 1)])]),
            fx("base_42", PositiveCyclic, vec![4, 2], vec![vecn(2, &[(1, 2)]), vecn(2, &[(1, -1), (2, 1)])]),
            fx(
                "base_222",
                NegativeCyclic,
                vec![2, 2, 2],
                vec![vecn(3, &[(1, 1), (2, -1)]), vecn(3, &[(2, 1), (3, -1)]), vecn(3, &[(3, 1), (1, 1)])],
            ),
            fx(
                "base_522",
                PositiveCyclic,
                vec![5, 2, 2],
                vec![vecn(3, &[(1, 2), (3, -1)]), vecn(3, &[(1, -1), (3, -1)]), vecn(3, &[(3, 1), (2, 1)])],
            ),
            star(1),
        ]
    }

    /// Positive `(3^[2k+1])` in `Z^{2k+1}`: `e_1 - e_2 - e_3, e_3 - e_4 - e_5, ...`,
    /// stepping by two through the indices mod `2k+1`.
    pub fn star(k: usize) -> Fixture {
        let n = 2 * k + 1;
        let vs = (0..n)
            .map(|j| {
                let a = (2 * j) % n;
                vecn(n, &[(a + 1, 1), ((a + 1) % n + 1, -1), ((a + 2) % n + 1, -1)])
            })
            .collect();
        let name = if k == 1 { "base_333".to_string() } else { format!("star_{k}") };
        fx(name, PositiveCyclic, vec![3; n], vs)
    }

    /// The expansion of `star(k)` rooted at `e_2`, string `(4, 3^[k], 2, 3^[k])`.
    pub fn star_rooted_expansion(k: usize) -> Fixture {
        let base = star(k);
        let n = 2 * k + 2;
        let mut vs: Vec<LatticeVector> = base
            .vectors
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(0);
                w
            })
            .collect();
        // v_1 gains -e_{2k+2}; in v_{k+2} the e_2 is replaced by e_{2k+2}
        vs[0][n - 1] = -1;
        vs[k + 1][1] = 0;
        vs[k + 1][n - 1] = 1;
        vs.insert(k + 1, vecn(n, &[(2, 1), (n, -1)]));
        let mut string = vec![4];
        string.extend(vec![3; k]);
        string.push(2);
        string.extend(vec![3; k]);
        fx(format!("star_rooted_{k}"), PositiveCyclic, string, vs)
    }

    pub fn length_five() -> Vec<Fixture> {
        let d = 5;
        let mk = |c: i64| {
            vec![
                vecn(d, &[(2, -1), (4, -1)]),
                vecn(d, &[(2, 1), (3, 1), (1, -1)]),
                vecn(d, &[(5, c), (3, -1)]),
                vecn(d, &[(4, 1), (3, 1), (2, -1)]),
                vecn(d, &[(2, 1), (1, 1)]),
            ]
        };
        vec![
            fx("len5_23232", PositiveCyclic, vec![2, 3, 2, 3, 2], mk(1)),
            fx("len5_23532", PositiveCyclic, vec![2, 3, 5, 3, 2], mk(2)),
        ]
    }

    pub fn length_four() -> Vec<Fixture> {
        let d = 4;
        let tail = |last: LatticeVector| {
            vec![vecn(d, &[(1, 1), (2, -1)]), vecn(d, &[(2, 1), (3, -1)]), vecn(d, &[(2, -1), (1, -1)]), last]
        };
        vec![
            fx(
                "len4_6222",
                PositiveCyclic,
                vec![6, 2, 2, 2],
                vec![
                    vecn(d, &[(1, 2), (3, -1), (4, -1)]),
                    vecn(d, &[(1, -1), (3, -1)]),
                    vecn(d, &[(3, 1), (4, -1)]),
                    vecn(d, &[(4, 1), (2, 1)]),
                ],
            ),
            fx(
                "len4_2522",
                NegativeCyclic,
                vec![2, 5, 2, 2],
                vec![
                    vecn(d, &[(1, 1), (2, -1)]),
                    vecn(d, &[(2, 1), (3, 2)]),
                    vecn(d, &[(2, -1), (1, -1)]),
                    vecn(d, &[(1, 1), (4, 1)]),
                ],
            ),
            fx("len4_2225", NegativeCyclic, vec![2, 2, 2, 5], tail(vecn(d, &[(1, 1), (4, 2)]))),
            fx("len4_2223", PositiveCyclic, vec![2, 2, 2, 3], tail(vecn(d, &[(2, 1), (3, 1), (4, 1)]))),
            fx("len4_2226", PositiveCyclic, vec![2, 2, 2, 6], tail(vecn(d, &[(2, 1), (3, 1), (4, 2)]))),
        ]
    }

    /// The negative `(6,2,2,2,6,2,2,2)` subset; labels `i, j, j1, j2, k, k1, f, g`
    /// are `e_1..e_8`.
    pub fn exceptional() -> Fixture {
        let d = 8;
        let (i, j, j1, j2, k, k1, f, g) = (1, 2, 3, 4, 5, 6, 7, 8);
        fx(
            "exceptional_62226222",
            NegativeCyclic,
            vec![6, 2, 2, 2, 6, 2, 2, 2],
            vec![
                vecn(d, &[(j, 1), (j1, 1), (j2, 1), (k, 1), (k1, 1), (f, 1)]),
                vecn(d, &[(i, 1), (j, -1)]),
                vecn(d, &[(j, 1), (j1, -1)]),
                vecn(d, &[(j1, 1), (j2, -1)]),
                vecn(d, &[(i, -1), (j, -1), (j1, -1), (k, 1), (k1, 1), (g, 1)]),
                vecn(d, &[(f, 1), (k1, -1)]),
                vecn(d, &[(k1, 1), (k, -1)]),
                vecn(d, &[(k, 1), (g, -1)]),
            ],
        )
    }

    /// Positive `(3,2,2,3,5)` with labels `i, j, j1, k, m` as `e_1..e_5`.
    pub fn s2c_32235() -> Fixture {
        let d = 5;
        let (i, j, j1, k, m) = (1, 2, 3, 4, 5);
        fx(
            "s2c_32235",
            PositiveCyclic,
            vec![3, 2, 2, 3, 5],
            vec![
                vecn(d, &[(j, 1), (j1, 1), (k, 1)]),
                vecn(d, &[(i, 1), (j, -1)]),
                vecn(d, &[(j, 1), (j1, -1)]),
                vecn(d, &[(j1, 1), (k, -1), (m, -1)]),
                vecn(d, &[(i, -1), (j, -1), (j1, -1), (k, 1), (m, -1)]),
            ],
        )
    }

    pub fn p3_expansions() -> Vec<Fixture> {
        vec![
            fx(
                "p3_4323",
                PositiveCyclic,
                vec![4, 3, 2, 3],
                vec![
                    vecn(4, &[(1, 1), (2, -1), (3, -1), (4, -1)]),
                    vecn(4, &[(3, 1), (1, -1), (2, -1)]),
                    vecn(4, &[(2, 1), (4, -1)]),
                    vecn(4, &[(4, 1), (3, -1), (1, -1)]),
                ],
            ),
            fx(
                "p3_53223",
                PositiveCyclic,
                vec![5, 3, 2, 2, 3],
                vec![
                    vecn(5, &[(1, 1), (2, -1), (3, -1), (4, -1), (5, -1)]),
                    vecn(5, &[(3, 1), (1, -1), (2, -1)]),
                    vecn(5, &[(2, 1), (4, -1)]),
                    vecn(5, &[(4, 1), (5, -1)]),
                    vecn(5, &[(5, 1), (3, -1), (1, -1)]),
                ],
            ),
            fx(
                "p3_42324",
                PositiveCyclic,
                vec![4, 2, 3, 2, 4],
                vec![
                    vecn(5, &[(1, 1), (2, -1), (3, -1), (4, -1)]),
                    vecn(5, &[(3, 1), (5, -1)]),
                    vecn(5, &[(5, 1), (1, -1), (2, -1)]),
                    vecn(5, &[(2, 1), (4, -1)]),
                    vecn(5, &[(4, 1), (3, -1), (1, -1), (5, -1)]),
                ],
            ),
        ]
    }

    /// `sum_{j=lo}^{hi} c e_j`, empty when `lo > hi`.
    fn sum_range(lo: usize, hi: usize, c: i64) -> Vec<(usize, i64)> {
        (lo..=hi).map(|j| (j, c)).collect()
    }

    /// `e_lo - e_{lo+1}, ..., e_{hi-1} - e_hi` (empty when `lo >= hi`).
    fn chain_down(dim: usize, lo: usize, hi: usize) -> Vec<LatticeVector> {
        (lo..hi).map(|j| vecn(dim, &[(j, 1), (j + 1, -1)])).collect()
    }

    /// `e_{hi} - e_{hi-1}, ..., e_{lo+1} - e_lo`, listed from the top.
    fn chain_up(dim: usize, lo: usize, hi: usize) -> Vec<LatticeVector> {
        (lo..hi).rev().map(|j| vecn(dim, &[(j + 1, 1), (j, -1)])).collect()
    }

    fn with(mut base: Vec<(usize, i64)>, extra: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
        base.extend(extra);
        base
    }

    /// Standard embeddings with `I = -2` (families a, b) and `I = -1`
    /// (families a, b, c), parameterized by `x, y >= 0`.
    pub fn standard_catalog(family: &str, x: usize, y: usize) -> Option<Fixture> {
        let rep = |v: i64, n: usize| vec![v; n];
        let cat = |parts: Vec<Vec<i64>>| parts.concat();
        let xi = x as i64;
        let yi = y as i64;
        let fixture = match family {
            "2a" => {
                let d = x + y + 4;
                let mut vs = chain_up(d, 4, x + 4);
                vs.push(vecn(d, &[(4, 1), (2, -1), (3, -1)]));
                vs.push(vecn(d, &with(vec![(2, 1), (1, 1)], sum_range(x + 5, x + y + 4, 1))));
                vs.push(vecn(d, &with(vec![(2, -1), (4, -1)], sum_range(5, x + 4, -1))));
                vs.push(vecn(d, &[(2, 1), (1, -1), (3, -1)]));
                vs.extend(tail_chain(d, 1, x, y));
                let s = cat(vec![rep(2, x), vec![3, 2 + yi, 2 + xi, 3], rep(2, y)]);
                fx(format!("std_2a_{x}_{y}"), Standard, s, vs)
            }
            "2b" => {
                let d = x + y + 4;
                let mut vs = chain_up(d, 4, x + 4);
                vs.push(vecn(d, &with(vec![(4, 1), (2, -1), (3, -1)], sum_range(x + 5, x + y + 4, -1))));
                vs.push(vecn(d, &[(2, 1), (1, 1)]));
                vs.push(vecn(d, &with(vec![(2, -1), (4, -1)], sum_range(5, x + 4, -1))));
                vs.push(vecn(d, &[(2, 1), (1, -1), (3, -1)]));
                vs.extend(tail_chain(d, 3, x, y));
                let s = cat(vec![rep(2, x), vec![3 + yi, 2, 2 + xi, 3], rep(2, y)]);
                fx(format!("std_2b_{x}_{y}"), Standard, s, vs)
            }
            "3a" | "3b" => {
                let d = x + y + 4;
                let mut vs = vec![vecn(d, &with(vec![(2, 1), (4, 1)], sum_range(5, x + 4, 1)))];
                if family == "3a" {
                    vs.push(vecn(d, &with(vec![(1, 1), (2, -1)], sum_range(x + 5, x + y + 4, 1))));
                    vs.push(vecn(d, &[(2, 1), (3, -1), (4, -1)]));
                } else {
                    vs.push(vecn(d, &[(1, 1), (2, -1)]));
                    vs.push(vecn(d, &with(vec![(2, 1), (3, -1), (4, -1)], sum_range(x + 5, x + y + 4, -1))));
                }
                vs.extend(chain_down(d, 4, x + 4));
                vs.push(vecn(d, &[(x + 4, 1), (1, -1), (2, -1), (3, -1)]));
                vs.extend(tail_chain(d, if family == "3a" { 1 } else { 3 }, x, y));
                let s = if family == "3a" {
                    cat(vec![vec![2 + xi, 2 + yi, 3], rep(2, x), vec![4], rep(2, y)])
                } else {
                    cat(vec![vec![2 + xi, 2, 3 + yi], rep(2, x), vec![4], rep(2, y)])
                };
                fx(format!("std_{family}_{x}_{y}"), Standard, s, vs)
            }
            "3c" => {
                let d = x + y + 5;
                let mut vs = vec![
                    vecn(d, &with(vec![(1, 1), (2, -1), (5, -1)], sum_range(6, x + 5, -1))),
                    vecn(d, &[(2, 1), (3, 1)]),
                    // the tail sum enters with sign -1; with +1 it pairs to 2 with e_4 - e_{x+6}
                    vecn(d, &with(vec![(2, -1), (1, -1), (4, -1)], sum_range(x + 6, x + y + 5, -1))),
                    vecn(d, &[(5, -1), (2, 1), (3, -1)]),
                ];
                vs.extend(chain_down(d, 5, x + 5));
                vs.push(vecn(d, &[(x + 5, 1), (1, 1), (4, -1)]));
                // e_4 - e_{x+6}, e_{x+6} - e_{x+7}, ...
                let mut prev = 4;
                for j in 0..y {
                    let next = x + 6 + j;
                    vs.push(vecn(d, &[(prev, 1), (next, -1)]));
                    prev = next;
                }
                let s = cat(vec![vec![3 + xi, 2, 3 + yi, 3], rep(2, x), vec![3], rep(2, y)]);
                fx(format!("std_3c_{x}_{y}"), Standard, s, vs)
            }
            _ => return None,
        };
        Some(fixture)
    }

    /// `e_start - e_{x+5}, e_{x+5} - e_{x+6}, ..., e_{x+y+3} - e_{x+y+4}`.
    fn tail_chain(d: usize, start: usize, x: usize, y: usize) -> Vec<LatticeVector> {
        let mut out = Vec::new();
        let mut prev = start;
        for j in 0..y {
            let next = x + 5 + j;
            out.push(vecn(d, &[(prev, 1), (next, -1)]));
            prev = next;
        }
        out
    }

    /// Every fixture with the given parameter bounds.
    pub fn all(max_star_k: usize, max_xy: usize) -> Vec<Fixture> {
        let mut out = vec![two_cycle(2), two_cycle(3), two_cycle(4), two_cycle(5), two_cycle(8), two_cycle_alt()];
        out.extend(base_cases());
        out.extend(length_five());
        out.extend(length_four());
        out.push(exceptional());
        out.push(s2c_32235());
        out.extend(p3_expansions());
        for k in 1..=max_star_k {
            if k > 1 {
                out.push(star(k));
            }
            out.push(star_rooted_expansion(k));
        }
        for fam in ["2a", "2b", "3a", "3b", "3c"] {
            for x in 0..=max_xy {
                for y in 0..=max_xy {
                    out.extend(standard_catalog(fam, x, y));
                }
            }
        }
        out
    }

    pub fn by_name(name: &str) -> Option<Fixture> {
        all(6, 6).into_iter().find(|f| f.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn cls(f: &Fixture) -> LatticeSubset {
        classify_subset(f.vectors.clone()).unwrap()
    }

    #[test]
    fn every_fixture_classifies() {
        for f in all(4, 3) {
            let s = cls(&f);
            assert_eq!(s.kind, f.kind, "{}", f.name);
            assert_eq!(s.string, f.string, "{}", f.name);
        }
    }

    #[test]
    fn classify_examples() {
        let s = classify_subset(vec![vec![1, -1], vec![1, 1]]).unwrap();
        assert_eq!((s.kind, s.associated_string()), (SubsetKind::NegativeCyclic, vec![2, 2]));
        let s = classify_subset(vec![vec![2, 0], vec![-1, 1]]).unwrap();
        assert_eq!((s.kind, s.associated_string()), (SubsetKind::PositiveCyclic, vec![2, 4]));
        let s = cls(&length_five()[0]);
        assert_eq!((s.kind, s.associated_string()), (SubsetKind::PositiveCyclic, vec![2, 2, 3, 2, 3]));
        assert!(classify_subset(vec![vec![1, 0], vec![0]]).is_err());
    }

    #[test]
    fn stats_examples() {
        let st = stats(&cls(&two_cycle_alt()));
        assert_eq!((st.p(1), st.p(2), st.p(3)), (2, 0, 2));
        for n in 2..7 {
            let st = stats(&cls(&two_cycle(n)));
            assert_eq!(st.p(2), n);
            assert_eq!(st.p.len(), 1);
        }
        assert_eq!(stats(&cls(&star(1))).p(3), 3);
    }

    #[test]
    fn key_inequality_examples() {
        let k = keylem1_check(&cls(&two_cycle_alt())).unwrap();
        assert_eq!((k.lhs, k.rhs, k.equality_rhs, k.holds), (4, 0, 4, true));
        let k = keylem1_check(&cls(&two_cycle(5))).unwrap();
        assert_eq!((k.lhs, k.rhs, k.equality_rhs, k.holds), (5, 0, 5, true));
        let k = keylem1_check(&cls(&star(1))).unwrap();
        assert_eq!((k.lhs, k.equality_rhs, k.holds), (0, 0, true));
        assert!(keylem1_check(&cls(&length_four()[4])).is_ok());
    }

    #[test]
    fn negation() {
        let s = cls(&base_cases()[0]);
        let t = negate_vertex(&s, 1).unwrap();
        assert_eq!(t.vectors[1], vec![-1, -1]);
        assert_eq!(t.string, s.string);
        assert_eq!(negate_vertex(&t, 1).unwrap(), s);
        let s = cls(&length_five()[0]);
        for k in 0..5 {
            let t = negate_vertex(&s, k).unwrap();
            assert_eq!((t.kind, t.string.clone()), (s.kind, s.string.clone()));
        }
        assert!(negate_vertex(&s, 5).is_err());
    }

    #[test]
    fn centered_contraction_of_522() {
        let s = cls(&base_cases()[3]);
        // column e_3 touches all three vertices; both 2-vertices are centers
        let c = contract_centered(&s, 1, Some(2)).unwrap();
        assert_eq!((c.kind, c.associated_string()), (SubsetKind::PositiveCyclic, vec![2, 4]));
        let c = contract_centered(&s, 2, Some(2)).unwrap();
        assert_eq!((c.kind, c.associated_string()), (SubsetKind::PositiveCyclic, vec![2, 4]));
    }

    #[test]
    fn rooted_contraction_of_star_expansion() {
        for k in 1..=3 {
            let f = star_rooted_expansion(k);
            let s = cls(&f);
            let n = s.n();
            let c = contract_rooted(&s, 0, n - 1).unwrap();
            if k > 1 {
                let styles: Vec<_> = all_contractions(&s).iter().filter(|c| c.record.t == 0 && c.record.column == n - 1 && c.record.style != ContractionStyle::Plain).map(|c| c.record.style).collect();
                assert!(styles.iter().all(|&x| x == ContractionStyle::Rooted));
            }
            assert_eq!(c.kind, SubsetKind::PositiveCyclic);
            assert_eq!(c.associated_string(), vec![3; 2 * k + 1]);
        }
    }

    #[test]
    fn contraction_invariants_and_inverse() {
        for f in all(3, 2) {
            let s = cls(&f);
            for c in all_contractions(&s) {
                let (a, b) = (stats(&s), stats(&c.subset));
                assert_eq!(c.subset.kind, s.kind, "{}", f.name);
                assert_eq!(c.subset.i_invariant(), s.i_invariant());
                assert_eq!(b.p(3) + 1, a.p(3));
                for j in [1, 2, 4, 5, 6] {
                    assert_eq!(a.p(j), b.p(j));
                }
                let back = expand(&c.subset, &c.record).unwrap();
                assert_eq!(back.gram(), s.gram());
            }
        }
    }

    #[test]
    fn signed_permutation_invariance() {
        let s = cls(&exceptional());
        let perm = [3, 0, 7, 1, 6, 2, 5, 4];
        let signs = [1, -1, -1, 1, 1, -1, 1, -1];
        let t = apply_signed_permutation(&s, &perm, &signs).unwrap();
        assert_eq!((t.kind, t.string.clone()), (s.kind, s.string.clone()));
    }
}
