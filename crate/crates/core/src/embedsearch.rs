//! Exact backtracking search for standard and cyclic subsets of `(Z^n, -I)`
//! with a prescribed associated string, and the exhaustive sweep comparing
//! embedding existence against family membership.
//!
//! The search fixes every consecutive product `v_i . v_{i+1}` to `+1` and the
//! wraparound `v_n . v_1` to `-1` (negative) or `+1` (positive); negating
//! vertices reaches every other sign pattern of the same kind. Basis columns
//! are canonicalised on the fly: a vector may only touch previously unused
//! columns as the next consecutive block, with positive non-increasing entries.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::chainstring::{i_invariant, ChainString};
use crate::error::{Error, Result};
use crate::families::{enumerate_strings, in_s1, in_s2, is_exceptional, MembershipMode};
use crate::lattice::{classify_subset, LatticeSubset, LatticeVector, SubsetKind};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchQuery {
    pub target: ChainString,
    pub kind: SubsetKind,
    pub budget: Option<u64>,
}

impl SearchQuery {
    pub fn new(target: ChainString, kind: SubsetKind) -> Self {
        SearchQuery { target, kind, budget: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    Found(LatticeSubset),
    Exhausted,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn tag(&self) -> OutcomeTag {
        match self {
            SearchOutcome::Found(_) => OutcomeTag::Found,
            SearchOutcome::Exhausted => OutcomeTag::Exhausted,
            SearchOutcome::BudgetExceeded => OutcomeTag::BudgetExceeded,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeTag {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

/// Required pairing between vertices `i` and `j` for the queried kind.
fn required_dot(kind: SubsetKind, n: usize, i: usize, j: usize) -> i64 {
    let (lo, hi) = (i.min(j), i.max(j));
    if kind.is_cyclic() && n == 2 {
        // both edges of the 2-cycle run between the same pair of vertices
        return if kind == SubsetKind::NegativeCyclic { 0 } else { 2 };
    }
    if hi == lo + 1 {
        1
    } else if kind.is_cyclic() && lo == 0 && hi == n - 1 {
        if kind == SubsetKind::NegativeCyclic {
            -1
        } else {
            1
        }
    } else {
        0
    }
}

/// Positive non-increasing integer sequences whose squares sum to `r`, with at
/// most `slots` parts, largest first.
fn square_partitions(r: i64, slots: usize) -> Vec<Vec<i64>> {
    fn go(r: i64, max: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if r == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let mut x = max.min(isqrt(r));
        while x >= 1 {
            // the remaining slots must be able to absorb what is left
            if (slots as i64) * x * x >= r {
                cur.push(x);
                go(r - x * x, x, slots - 1, cur, out);
                cur.pop();
            } else {
                break;
            }
            x -= 1;
        }
    }
    let mut out = Vec::new();
    go(r, i64::MAX, slots, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn isqrt(r: i64) -> i64 {
    if r <= 0 {
        return 0;
    }
    let mut x = (r as f64).sqrt() as i64;
    while x * x > r {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= r {
        x += 1;
    }
    x
}

struct Problem {
    n: usize,
    /// squares in search order
    a: Vec<i64>,
    /// `req[d][e]` for `e < d`, in search order
    req: Vec<Vec<i64>>,
    /// search position -> original vertex
    order: Vec<usize>,
}

impl Problem {
    fn new(target: &[i64], kind: SubsetKind) -> Self {
        let n = target.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (-target[i], i));
        let a = order.iter().map(|&i| target[i]).collect();
        let req = (0..n)
            .map(|d| (0..d).map(|e| required_dot(kind, n, order[d], order[e])).collect())
            .collect();
        Problem { n, a, req, order }
    }
}

struct Frame {
    /// vectors in search order, each of full length `n`
    vs: Vec<LatticeVector>,
    /// `suffix[e][c]` = sum of squares of `vs[e][c..]`
    suffix: Vec<Vec<i64>>,
    used: usize,
}

enum Step {
    Found(Vec<LatticeVector>),
    Exhausted,
    Budget,
    Aborted,
}

struct Dfs<'a> {
    p: &'a Problem,
    nodes: u64,
    budget: u64,
    abort: Option<(&'a AtomicUsize, usize)>,
}

impl Dfs<'_> {
    fn aborted(&self) -> bool {
        self.abort.is_some_and(|(best, me)| best.load(Ordering::Relaxed) < me)
    }

    fn run(&mut self, f: &mut Frame) -> Step {
        let d = f.vs.len();
        if d == self.p.n {
            return Step::Found(f.vs.clone());
        }
        if self.nodes.is_multiple_of(4096) && self.aborted() {
            return Step::Aborted;
        }
        let mut olds = Vec::new();
        let mut cur = vec![0i64; f.used];
        let mut partial = vec![0i64; d];
        self.old_parts(f, d, 0, self.p.a[d], &mut cur, &mut partial, &mut olds);
        for (old, rem) in olds {
            for tail in square_partitions(rem, self.p.n - f.used) {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Step::Budget;
                }
                let mut v = old.clone();
                v.extend(&tail);
                v.resize(self.p.n, 0);
                let used = f.used;
                f.used += tail.len();
                f.suffix.push(suffix_norms(&v));
                f.vs.push(v);
                let r = self.run(f);
                f.vs.pop();
                f.suffix.pop();
                f.used = used;
                match r {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
        }
        Step::Exhausted
    }

    /// Coordinates on the already-used columns, pruned by Cauchy-Schwarz
    /// against every pairing constraint with earlier vectors.
    #[allow(clippy::too_many_arguments, clippy::needless_range_loop)]
    fn old_parts(
        &self,
        f: &Frame,
        d: usize,
        c: usize,
        rem: i64,
        cur: &mut Vec<i64>,
        partial: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        for e in 0..d {
            // v . w = -sum, so the coordinate sum must reach -req
            let need = -self.p.req[d][e] - partial[e];
            let room = f.suffix[e][c];
            if need * need > rem * room {
                return;
            }
        }
        if c == f.used {
            // leftover norm goes to fresh columns; none left means rem must be 0
            if rem == 0 || f.used < self.p.n {
                out.push((cur.clone(), rem));
            }
            return;
        }
        let m = isqrt(rem);
        for x in -m..=m {
            cur[c] = x;
            for e in 0..d {
                partial[e] += x * f.vs[e][c];
            }
            self.old_parts(f, d, c + 1, rem - x * x, cur, partial, out);
            for e in 0..d {
                partial[e] -= x * f.vs[e][c];
            }
        }
        cur[c] = 0;
    }
}

fn suffix_norms(v: &[i64]) -> Vec<i64> {
    let mut s = vec![0i64; v.len() + 1];
    for c in (0..v.len()).rev() {
        s[c] = s[c + 1] + v[c] * v[c];
    }
    s
}

fn reorder(p: &Problem, vs: Vec<LatticeVector>) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new(); p.n];
    for (d, v) in vs.into_iter().enumerate() {
        out[p.order[d]] = v;
    }
    out
}

/// Searches for a subset of the queried kind realising `q.target` in vertex
/// order. Deterministic: the witness comes from the lowest-index branch on the
/// first vector that succeeds, and `nodes` counts only the branches up to it.
pub fn find_embedding(q: &SearchQuery) -> Result<SearchResult> {
    let start = Instant::now();
    let target = q.target.entries();
    let n = target.len();
    if q.kind == SubsetKind::Invalid {
        return Err(Error::Invalid("cannot search for an invalid subset".into()));
    }
    if q.kind.is_cyclic() && n < 2 {
        return Err(Error::Dimension("cyclic subsets need n >= 2".into()));
    }
    if q.kind == SubsetKind::PositiveCyclic && q.target.is_all_twos() {
        // positive cyclic subsets need a vertex of square at most -3
        return Ok(SearchResult { outcome: SearchOutcome::Exhausted, nodes: 0, elapsed: start.elapsed() });
    }
    let budget = q.budget.unwrap_or(DEFAULT_BUDGET);
    let p = Problem::new(target, q.kind);
    let firsts = square_partitions(p.a[0], n);
    let best = AtomicUsize::new(usize::MAX);
    let branches: Vec<(Step, u64)> = firsts
        .par_iter()
        .enumerate()
        .map(|(ix, tail)| {
            let mut v = tail.clone();
            v.resize(n, 0);
            let mut f = Frame { suffix: vec![suffix_norms(&v)], vs: vec![v], used: tail.len() };
            let mut dfs = Dfs { p: &p, nodes: 1, budget, abort: Some((&best, ix)) };
            let step = dfs.run(&mut f);
            if matches!(step, Step::Found(_)) {
                best.fetch_min(ix, Ordering::Relaxed);
            }
            (step, dfs.nodes)
        })
        .collect();
    let mut nodes = 0u64;
    let mut outcome = SearchOutcome::Exhausted;
    for (step, k) in branches {
        nodes += k;
        match step {
            Step::Found(vs) => {
                let witness = classify_subset(reorder(&p, vs))?;
                if witness.kind != q.kind || witness.string != target {
                    return Err(Error::Invalid(format!(
                        "search produced a {:?} subset with string {:?}",
                        witness.kind, witness.string
                    )));
                }
                outcome = SearchOutcome::Found(witness);
                break;
            }
            Step::Budget => {
                outcome = SearchOutcome::BudgetExceeded;
                break;
            }
            Step::Aborted => unreachable!("branches below the winner are never aborted"),
            Step::Exhausted => {}
        }
    }
    if nodes > budget && !outcome.is_found() {
        outcome = SearchOutcome::BudgetExceeded;
    }
    Ok(SearchResult { outcome, nodes, elapsed: start.elapsed() })
}

/// Standard subset with the path adjacency pattern.
pub fn find_standard(string: &[i64]) -> Result<SearchResult> {
    find_embedding(&SearchQuery::new(ChainString::new(string.to_vec())?, SubsetKind::Standard))
}

/// Existence by brute force: every vector of the right norm for every vertex,
/// in original order, no symmetry reduction. Only practical for `n <= 4`.
pub fn naive_exists(target: &[i64], kind: SubsetKind) -> bool {
    let n = target.len();
    let pools: Vec<Vec<LatticeVector>> = target.iter().map(|&a| vectors_of_norm(n, a)).collect();
    let mut chosen: Vec<&LatticeVector> = Vec::with_capacity(n);
    naive_go(target, kind, &pools, &mut chosen)
}

fn naive_go<'a>(target: &[i64], kind: SubsetKind, pools: &'a [Vec<LatticeVector>], chosen: &mut Vec<&'a LatticeVector>) -> bool {
    let n = target.len();
    let d = chosen.len();
    if d == n {
        let vs: Vec<LatticeVector> = chosen.iter().map(|v| (*v).clone()).collect();
        return classify_subset(vs).is_ok_and(|s| s.kind == kind);
    }
    'cand: for v in &pools[d] {
        for (e, w) in chosen.iter().enumerate() {
            let g = crate::lattice::dot(v, w).abs();
            let ok = if n == 2 {
                true
            } else if d == e + 1 {
                g == 1
            } else if e == 0 && d == n - 1 {
                if kind.is_cyclic() {
                    g == 1
                } else {
                    g == 0
                }
            } else {
                g == 0
            };
            if !ok {
                continue 'cand;
            }
        }
        chosen.push(v);
        if naive_go(target, kind, pools, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// All `v` in `Z^n` with `sum v_j^2 = a`.
pub fn vectors_of_norm(n: usize, a: i64) -> Vec<LatticeVector> {
    fn go(n: usize, rem: i64, cur: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
        if cur.len() == n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let m = isqrt(rem);
        for x in -m..=m {
            cur.push(x);
            go(n, rem - x * x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, a, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub string: ChainString,
    #[serde(rename = "I")]
    pub i: i64,
    pub s1_strict: bool,
    pub s1_relaxed: bool,
    pub s2_strict: bool,
    pub s2_relaxed: bool,
    pub neg: OutcomeTag,
    pub pos: OutcomeTag,
    pub agree: bool,
    pub nodes: u64,
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<VerifyRow>,
}

impl VerificationReport {
    pub fn mismatches(&self) -> Vec<&VerifyRow> {
        self.rows.iter().filter(|r| !r.agree).collect()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub mode: MembershipMode,
    pub budget: u64,
    /// resume point: rows before this canonical string are skipped
    pub skip_until: Option<ChainString>,
    pub timing: bool,
    /// strings processed per parallel batch before rows are emitted
    pub batch: usize,
}

impl VerifyOptions {
    pub fn new(max_n: usize, mode: MembershipMode) -> Self {
        VerifyOptions { max_n, mode, budget: DEFAULT_BUDGET, skip_until: None, timing: false, batch: 256 }
    }
}

/// The strings swept by [`verify_theorem`]: canonical, `2 <= n <= max_n`,
/// some entry >= 3, `I <= 0`.
pub fn verification_strings(max_n: usize) -> Vec<ChainString> {
    enumerate_strings(max_n, 0).into_iter().filter(|s| s.len() >= 2).collect()
}

pub fn verify_row(a: &ChainString, mode: MembershipMode, budget: u64, timing: bool) -> Result<VerifyRow> {
    let start = Instant::now();
    let run = |kind| find_embedding(&SearchQuery { target: a.clone(), kind, budget: Some(budget) });
    let neg = run(SubsetKind::NegativeCyclic)?;
    let pos = run(SubsetKind::PositiveCyclic)?;
    let exc = is_exceptional(a);
    let (s1_strict, s1_relaxed) = (in_s1(a, MembershipMode::Strict), in_s1(a, MembershipMode::Relaxed));
    let (s2_strict, s2_relaxed) = (in_s2(a, MembershipMode::Strict), in_s2(a, MembershipMode::Relaxed));
    let (s1, s2) = match mode {
        MembershipMode::Strict => (s1_strict, s2_strict),
        MembershipMode::Relaxed => (s1_relaxed, s2_relaxed),
    };
    let decided = |o: &SearchOutcome| !matches!(o, SearchOutcome::BudgetExceeded);
    let agree = decided(&neg.outcome)
        && decided(&pos.outcome)
        && neg.outcome.is_found() == (s1 || exc)
        && pos.outcome.is_found() == s2;
    Ok(VerifyRow {
        string: a.clone(),
        i: i_invariant(a),
        s1_strict,
        s1_relaxed,
        s2_strict,
        s2_relaxed,
        neg: neg.outcome.tag(),
        pos: pos.outcome.tag(),
        agree,
        nodes: neg.nodes + pos.nodes,
        ms: timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Runs the sweep, handing rows to `emit` in string order as each batch
/// completes. Row content does not depend on the rayon pool size.
pub fn verify_streaming(opts: &VerifyOptions, mut emit: impl FnMut(&VerifyRow) -> Result<()>) -> Result<()> {
    if opts.max_n < 2 {
        return Err(Error::Invalid("max_n must be at least 2".into()));
    }
    let mut strings = verification_strings(opts.max_n);
    if let Some(from) = &opts.skip_until {
        let from = from.canonical();
        let key = |s: &ChainString| (s.len(), s.clone());
        strings.retain(|s| key(s) >= key(&from));
    }
    for chunk in strings.chunks(opts.batch.max(1)) {
        let rows: Vec<Result<VerifyRow>> =
            chunk.par_iter().map(|a| verify_row(a, opts.mode, opts.budget, opts.timing)).collect();
        for r in rows {
            emit(&r?)?;
        }
    }
    Ok(())
}

pub fn verify_theorem(max_n: usize, mode: MembershipMode) -> Result<VerificationReport> {
    verify_with(&VerifyOptions::new(max_n, mode))
}

pub fn verify_with(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    verify_streaming(opts, |r| {
        rows.push(r.clone());
        Ok(())
    })?;
    Ok(VerificationReport { rows })
}

pub const CSV_HEADER: [&str; 11] =
    ["string", "I", "s1_strict", "s1_relaxed", "s2_strict", "s2_relaxed", "neg", "pos", "agree", "nodes", "ms"];

fn tag_str(t: OutcomeTag) -> &'static str {
    match t {
        OutcomeTag::Found => "Found",
        OutcomeTag::Exhausted => "Exhausted",
        OutcomeTag::BudgetExceeded => "BudgetExceeded",
    }
}

/// One CSV record per row; the `ms` column is empty unless timing was on.
pub fn csv_record(r: &VerifyRow) -> [String; 11] {
    [
        r.string.to_string(),
        r.i.to_string(),
        r.s1_strict.to_string(),
        r.s1_relaxed.to_string(),
        r.s2_strict.to_string(),
        r.s2_relaxed.to_string(),
        tag_str(r.neg).to_string(),
        tag_str(r.pos).to_string(),
        r.agree.to_string(),
        r.nodes.to_string(),
        r.ms.map(|m| m.to_string()).unwrap_or_default(),
    ]
}

pub fn write_csv<W: Write>(rows: &[VerifyRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Invalid(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(csv_record(r)).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid(e.to_string()))
}

pub fn write_jsonl<W: Write>(rows: &[VerifyRow], mut out: W) -> Result<()> {
    for r in rows {
        let line = serde_json::to_string(r).map_err(|e| Error::Invalid(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::Invalid(e.to_string()))?;
    }
    Ok(())
}
