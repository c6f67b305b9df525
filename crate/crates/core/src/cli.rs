//! Command-line front end. Every subcommand wraps library calls and prints
//! JSON lines (or CSV for `verify --csv`). Exit codes: 0 success, 1 usage
//! error, 2 when a classification comes back `Unknown`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chainstring::{cyclic_dual, i_invariant, linear_dual, parse_entries, ChainString};
use crate::classifier::{
    braid_cover_classify, braid_word, burau, burau_trace_check, classify_surgery, classify_torus_bundle,
    normalize_with_certificate, MonodromyClass, Status, Verdict,
};
use crate::contfrac::{hj_eval, homology_order, monodromy_matrix, Parity, Sign};
use crate::embedsearch::{
    csv_record, find_embedding, verify_streaming, SearchOutcome, SearchQuery, VerifyOptions, CSV_HEADER,
    DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::families::{in_s1, in_s2, is_exceptional, member, MembershipMode};
use crate::lattice::{classify_subset, fixtures, stats, SubsetKind};

#[derive(Parser, Debug)]
#[command(name = "chainsurg", version, about = "Chain-link surgeries, torus bundles and cyclic lattice subsets")]
pub struct Cli {
    /// Worker threads for the parallel sweep (default: available parallelism)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Linear or cyclic dual of a string
    Dual(DualArgs),
    /// Family membership with witnesses
    Member(MemberArgs),
    /// Search for a standard or cyclic subset realising a string
    Embed(EmbedArgs),
    /// Monodromy matrix and homology orders
    Homology(StringArg),
    /// Bounding verdicts
    Classify(ClassifyArgs),
    /// 3-braid word, Burau image and braid-level verdict
    Braid(BraidArgs),
    /// Exhaustive sweep comparing embeddings with family membership
    Verify(VerifyArgs),
    /// Named explicit subsets and their classification
    Fixtures(FixtureArgs),
}

#[derive(Args, Debug)]
pub struct DualArgs {
    /// Cyclic dual of this string
    #[arg(long, conflicts_with = "linear", required_unless_present = "linear")]
    pub cyclic: Option<String>,
    /// Linear dual of this string (`1` is allowed and gives the empty string)
    #[arg(long)]
    pub linear: Option<String>,
}

#[derive(Args, Debug)]
pub struct StringArg {
    /// Comma-separated entries, each >= 2
    #[arg(long)]
    pub a: String,
}

#[derive(Args, Debug)]
pub struct MemberArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long, default_value = "strict")]
    pub mode: ModeArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Strict,
    Relaxed,
}

impl From<ModeArg> for MembershipMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => MembershipMode::Strict,
            ModeArg::Relaxed => MembershipMode::Relaxed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Standard,
    Negative,
    Positive,
}

impl From<KindArg> for SubsetKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Standard => SubsetKind::Standard,
            KindArg::Negative => SubsetKind::NegativeCyclic,
            KindArg::Positive => SubsetKind::PositiveCyclic,
        }
    }
}

#[derive(Args, Debug)]
pub struct EmbedArgs {
    #[arg(long)]
    pub a: String,
    /// Subset kind; both cyclic kinds when omitted
    #[arg(long)]
    pub kind: Option<KindArg>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(subcommand)]
    pub target: ClassifyTarget,
}

#[derive(Subcommand, Debug)]
pub enum ClassifyTarget {
    /// Does `Y_a^t` bound a rational homology ball?
    Surgery {
        #[arg(long)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, default_value = "strict")]
        mode: ModeArg,
    },
    /// Does the torus bundle bound a rational S^1 x B^3?
    Bundle {
        /// Monodromy entries `m11,m12,m21,m22`
        #[arg(long, allow_hyphen_values = true, conflicts_with = "a", required_unless_present = "a")]
        matrix: Option<String>,
        /// Hyperbolic monodromy `±A(a)`
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
    },
}

#[derive(Args, Debug)]
pub struct BraidArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: i64,
    #[arg(long, default_value = "strict")]
    pub mode: ModeArg,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, default_value = "relaxed")]
    pub mode: ModeArg,
    /// Node budget per search
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// CSV instead of JSON lines
    #[arg(long)]
    pub csv: bool,
    /// Resume from this string (rows before its canonical form are skipped)
    #[arg(long)]
    pub skip_until: Option<String>,
    /// Fill the `ms` column; output then depends on the machine
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct FixtureArgs {
    /// Only this fixture
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub max_k: usize,
    #[arg(long, default_value_t = 3)]
    pub max_xy: usize,
}

fn string_arg(s: &str) -> Result<ChainString> {
    s.parse()
}

fn line(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).map_err(|e| Error::Invalid(e.to_string()))?).map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Invalid(e.to_string())
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value> {
    serde_json::to_value(t).map_err(|e| Error::Invalid(e.to_string()))
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut (dyn Write + Send), stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 1;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let result = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, stdout)),
            Err(e) => Err(Error::Invalid(e.to_string())),
        },
        None => dispatch(&cli, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut (dyn Write + Send)) -> Result<i32> {
    match &cli.out {
        Some(path) => {
            let f = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(f);
            let code = execute(&cli.command, &mut w)?;
            w.flush().map_err(io_err)?;
            Ok(code)
        }
        None => execute(&cli.command, stdout),
    }
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.status == Status::Unknown {
        2
    } else {
        0
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Dual(args) => {
            let dual = match (&args.cyclic, &args.linear) {
                (Some(a), _) => cyclic_dual(&string_arg(a)?)?.to_string(),
                (None, Some(b)) => {
                    let b = parse_entries(b)?;
                    crate::chainstring::format_entries(&linear_dual(&b)?)
                }
                (None, None) => return Err(Error::Invalid("pass --cyclic or --linear".into())),
            };
            line(out, &json!({ "dual": dual }))?;
            Ok(0)
        }
        Command::Member(args) => {
            let a = string_arg(&args.a)?;
            let mode = MembershipMode::from(args.mode);
            let witnesses = member(&a, mode);
            line(
                out,
                &json!({
                    "string": a.to_string(),
                    "canonical": a.canonical().to_string(),
                    "I": i_invariant(&a),
                    "S1": in_s1(&a, mode),
                    "S2": in_s2(&a, mode),
                    "exceptional": is_exceptional(&a),
                    "witnesses": to_value(&witnesses)?,
                }),
            )?;
            Ok(0)
        }
        Command::Embed(args) => {
            let a = string_arg(&args.a)?;
            let kinds: Vec<SubsetKind> = match args.kind {
                Some(k) => vec![k.into()],
                None => vec![SubsetKind::NegativeCyclic, SubsetKind::PositiveCyclic],
            };
            for kind in kinds {
                let res = find_embedding(&SearchQuery { target: a.clone(), kind, budget: Some(args.budget) })?;
                let witness = match &res.outcome {
                    SearchOutcome::Found(w) => to_value(&w.vectors)?,
                    _ => Value::Null,
                };
                line(
                    out,
                    &json!({
                        "string": a.to_string(),
                        "kind": to_value(&kind)?,
                        "outcome": to_value(&res.outcome.tag())?,
                        "nodes": res.nodes,
                        "witness": witness,
                    }),
                )?;
            }
            Ok(0)
        }
        Command::Homology(args) => {
            let a = string_arg(&args.a)?;
            let m = monodromy_matrix(&a)?;
            let (even, odd) = if a.is_all_twos() {
                (Value::Null, Value::Null)
            } else {
                (
                    json!(homology_order(&a, Parity::Even)?.to_string()),
                    json!(homology_order(&a, Parity::Odd)?.to_string()),
                )
            };
            line(
                out,
                &json!({
                    "string": a.to_string(),
                    "fraction": hj_eval(a.entries())?.to_string(),
                    "matrix": m.as_matrix().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "trace": m.trace().to_string(),
                    "even": even,
                    "odd": odd,
                }),
            )?;
            Ok(0)
        }
        Command::Classify(args) => match &args.target {
            ClassifyTarget::Surgery { a, t, mode } => {
                let v = classify_surgery(&string_arg(a)?, *t, (*mode).into())?;
                line(out, &to_value(&v)?)?;
                Ok(verdict_code(&v))
            }
            ClassifyTarget::Bundle { matrix, a, sign } => {
                let class = match (matrix, a) {
                    (Some(mtx), _) => {
                        let e = parse_ints(mtx)?;
                        if e.len() != 4 {
                            return Err(Error::Invalid("--matrix takes four entries".into()));
                        }
                        normalize_with_certificate(&[[e[0], e[1]], [e[2], e[3]]])?.class
                    }
                    (None, Some(a)) => {
                        let sign = match sign.as_str() {
                            "+" | "plus" => Sign::Plus,
                            "-" | "minus" => Sign::Minus,
                            other => return Err(Error::Parse(other.to_string())),
                        };
                        let a = string_arg(a)?;
                        if a.is_all_twos() {
                            return Err(Error::Invalid("an all-2 string gives a parabolic bundle; pass --matrix".into()));
                        }
                        MonodromyClass::Hyperbolic { sign, a: a.canonical() }
                    }
                    (None, None) => return Err(Error::Invalid("pass --matrix or --a".into())),
                };
                let v = classify_torus_bundle(&class);
                line(out, &json!({ "class": to_value(&class)?, "status": to_value(&v.status)?, "reasons": to_value(&v.reasons)? }))?;
                Ok(verdict_code(&v))
            }
        },
        Command::Braid(args) => {
            let a = string_arg(&args.a)?;
            let w = braid_word(&a, args.t);
            let m = burau(&w.letters);
            let check = burau_trace_check(&a, args.t)?;
            let v = braid_cover_classify(&a, args.t, args.mode.into())?;
            line(
                out,
                &json!({
                    "word": w.to_string(),
                    "letters": w.letters,
                    "burau": m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "trace": check.trace.to_string(),
                    "matches": check.matches,
                    "verdict": to_value(&v)?,
                }),
            )?;
            Ok(verdict_code(&v))
        }
        Command::Verify(args) => {
            let mut opts = VerifyOptions::new(args.max_n, args.mode.into());
            opts.budget = args.budget;
            opts.timing = args.timing;
            opts.skip_until = args.skip_until.as_deref().map(string_arg).transpose()?;
            if args.csv {
                let mut w = csv::Writer::from_writer(out);
                let csv_err = |e: csv::Error| Error::Invalid(e.to_string());
                w.write_record(CSV_HEADER).map_err(csv_err)?;
                verify_streaming(&opts, |r| {
                    w.write_record(csv_record(r)).map_err(csv_err)?;
                    w.flush().map_err(io_err)
                })?;
            } else {
                verify_streaming(&opts, |r| line(out, &to_value(r)?))?;
            }
            Ok(0)
        }
        Command::Fixtures(args) => {
            let list = match &args.name {
                Some(n) => vec![fixtures::by_name(n).ok_or_else(|| Error::Invalid(format!("no fixture named {n}")))?],
                None => fixtures::all(args.max_k, args.max_xy),
            };
            for f in list {
                let s = classify_subset(f.vectors.clone())?;
                let st = stats(&s);
                line(
                    out,
                    &json!({
                        "name": f.name,
                        "documented_kind": to_value(&f.kind)?,
                        "kind": to_value(&s.kind)?,
                        "string": crate::chainstring::format_entries(&s.string),
                        "matches": s.kind == f.kind && s.string == f.string,
                        "I": s.i_invariant(),
                        "p": to_value(&st.p)?,
                        "vectors": to_value(&f.vectors)?,
                    }),
                )?;
            }
            Ok(0)
        }
    }
}

fn parse_ints(s: &str) -> Result<Vec<i128>> {
    s.split(',').map(|t| t.trim().parse::<i128>().map_err(|_| Error::Parse(s.to_string()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("chainsurg").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dual_command() {
        assert_eq!(call(&["dual", "--cyclic", "3,2"]), (0, "{\"dual\":\"4\"}\n".into(), String::new()));
        assert_eq!(call(&["dual", "--linear", "3,2"]).1, "{\"dual\":\"2,3\"}\n");
        assert_eq!(call(&["dual", "--cyclic", "3,2", "--linear", "2"]).0, 1);
        assert_eq!(call(&["dual", "--cyclic", "3,x"]).0, 1);
    }

    #[test]
    fn classify_exit_codes() {
        let (code, out, _) = call(&["classify", "surgery", "--a", "6", "--t", "0"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("{\"status\":\"Bounds\""), "{out}");
        assert_eq!(call(&["classify", "surgery", "--a", "6,2,2,2,6,2,2,2", "--t", "-1"]).0, 2);
        let (code, out, _) = call(&["classify", "bundle", "--matrix", "5,2,-3,-1"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"Hyperbolic\""), "{out}");
    }

    #[test]
    fn json_round_trips() {
        for args in [
            vec!["member", "--a", "3,2,2,3,5"],
            vec!["embed", "--a", "3,3,3"],
            vec!["homology", "--a", "3,2"],
            vec!["braid", "--a", "3,2", "--t", "0"],
            vec!["fixtures", "--name", "base_333"],
        ] {
            let (code, out, err) = call(&args);
            assert_eq!(code, 0, "{args:?}: {err}");
            for l in out.lines() {
                let v: Value = serde_json::from_str(l).unwrap();
                assert_eq!(serde_json::to_string(&v).unwrap(), l);
            }
        }
    }

    #[test]
    fn verify_small_sweep() {
        let (code, out, _) = call(&["verify", "--max-n", "4", "--mode", "relaxed"]);
        assert_eq!(code, 0);
        assert!(out.lines().all(|l| l.contains("\"agree\":true")));
        let (_, csv_out, _) = call(&["verify", "--max-n", "3", "--csv", "--workers", "2"]);
        assert!(csv_out.starts_with("string,I,s1_strict,s1_relaxed,s2_strict,s2_relaxed,neg,pos,agree,nodes,ms\n"));
        let (_, tail, _) = call(&["verify", "--max-n", "3", "--skip-until", "3,3,3"]);
        assert_eq!(tail.lines().count(), 1);
    }
}
