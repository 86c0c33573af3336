//! The `sds` command-line driver. [`run`] takes the argument list and the three
//! standard streams so the whole surface can be exercised in-process.

pub mod reference;
pub mod reproduce;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;

use selfdual::arith::checked_pow;
use selfdual::format::{parse_sequences, parse_stgc, write_sequences, write_stgc};
use selfdual::operators::{apply_d_inv, delta, delta_inv, recurse_ccr_sds, PreimageKind, FAMILY_LIMIT};
use selfdual::registers::{
    count_ccr_by_period, count_ccr_formula, count_mccr_by_period, count_mccr_formula, cycle_structure, fsr_cycles,
    verify_count_identity, verify_mccr_identity,
};
use selfdual::stgc::diff::build_diff_stgc;
use selfdual::stgc::ordering::{Adjacency, ClassSpace};
use selfdual::stgc::recursive::build_recursive_stgc;
use selfdual::stgc::search::search_thm3_max_period;
use selfdual::stgc::{construct_from_sds, full_period_ordering, is_max_period, verify_stgc, SdsOrdering};
use selfdual::zmseq::{cycle_class, for_each_word};
use selfdual::{CountReport, CyclicSeq, Error, RegisterSpec, Stgc, Word};

/// Exit statuses.
pub mod status {
    pub const OK: i32 = 0;
    /// A verification or comparison came out negative.
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    /// A size guard refused the request.
    pub const GUARD: i32 = 4;
    /// Malformed input or an unmet precondition.
    pub const INPUT: i32 = 5;
    pub const SEARCH: i32 = 6;
}

#[derive(Parser, Debug)]
#[command(name = "sds", version, about = "Self-dual sequences, cycling registers and single-track Gray codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write the result here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InArg {
    /// Read sequences from this file instead of standard input
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cycles of the binary complemented cycling register of order n
    Ccr {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Cycles of the register over Z_m with feedback x_1 + 1
    Mccr {
        #[arg(long)]
        m: u8,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Cycle counts from the closed forms, checked by simulation where feasible
    Counts(CountsArgs),
    /// Blockwise difference of each input sequence
    Delta {
        #[arg(long)]
        block: usize,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Preimages under D, or under the blockwise difference over every Y with --block
    Dinv {
        #[arg(long)]
        block: Option<usize>,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// SDSs of order 2n from SDSs of order n (the CCR_n cycles unless --in is given)
    Recurse {
        #[arg(long)]
        n: usize,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Length-m, period-m^m code from difference words (3 <= m <= 5)
    BuildDiff {
        #[arg(long)]
        m: u8,
        #[command(flatten)]
        out: OutArg,
    },
    /// Length-p^t, period-p^(p^t) code over Z_p
    BuildRec {
        #[arg(long)]
        p: u8,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Code from an ordering of SDSs of length m·n (searched unless --in is given)
    BuildThm {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: u8,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check a code file
    Verify {
        path: Option<PathBuf>,
        #[arg(long = "in", conflicts_with = "path")]
        input: Option<PathBuf>,
    },
    /// Binary length-p code of period 2^p − 2 from all full-period necklaces (p = 3, 5, 7)
    SearchThm3 {
        #[arg(long)]
        p: u8,
        #[command(flatten)]
        out: OutArg,
    },
    /// Regenerate a worked example and diff it against the printed table
    Examples {
        #[arg(long, value_parser = ["1", "3", "4"])]
        id: String,
    },
}

#[derive(Args, Debug)]
struct CountsArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    m: u8,
    /// Check the divisor-sum identity for the cycle count
    #[arg(long, requires = "n")]
    identity: bool,
    /// Counts by period for n = 2^i·p
    #[arg(long, requires = "p", conflicts_with_all = ["n", "identity"])]
    i: Option<u32>,
    #[arg(long, requires = "i")]
    p: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, io::Error),
    Usage(String),
    /// The command ran but its check did not pass; the report was already written.
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn status(&self) -> i32 {
        match self {
            Failure::Lib(Error::GuardExceeded { .. }) => status::GUARD,
            Failure::Lib(Error::SearchFailed(_)) => status::SEARCH,
            Failure::Lib(Error::VerificationFailed(_)) | Failure::Negative => status::FAILED,
            Failure::Lib(_) => status::INPUT,
            Failure::Io(..) => status::IO,
            Failure::Usage(_) => status::USAGE,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) => f.write_str(m),
            Failure::Negative => f.write_str("check failed"),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Streams<'_> {
    fn write_out(&mut self, text: &str) -> Outcome {
        self.out.write_all(text.as_bytes()).map_err(|e| Failure::Io("<stdout>".into(), e))
    }

    fn write_err(&mut self, text: &str) -> Outcome {
        self.err.write_all(text.as_bytes()).map_err(|e| Failure::Io("<stderr>".into(), e))
    }

    /// Primary output goes to `--out` when given, otherwise to standard output.
    fn emit(&mut self, out: &OutArg, text: &str) -> Outcome {
        match &out.out {
            Some(p) => fs::write(p, text).map_err(|e| Failure::Io(p.clone(), e)),
            None => self.write_out(text),
        }
    }

    fn read(&mut self, path: Option<&Path>) -> std::result::Result<String, Failure> {
        match path {
            Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(p.to_path_buf(), e)),
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|e| Failure::Io("<stdin>".into(), e))?;
                Ok(s)
            }
        }
    }

    fn sequences(&mut self, path: Option<&Path>) -> std::result::Result<(u8, Vec<CyclicSeq>), Failure> {
        let text = self.read(path)?;
        Ok(parse_sequences(&text)?)
    }

    /// Writes a code; with `--out` the report goes to standard output, otherwise to
    /// standard error so the code stays parseable.
    fn emit_code(&mut self, out: &OutArg, code: &Stgc, report: &str) -> Outcome {
        self.emit(out, &write_stgc(code))?;
        if out.out.is_some() {
            self.write_out(report)
        } else {
            self.write_err(report)
        }
    }
}

/// Runs one command and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    status::OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    status::USAGE
                }
            };
        }
    };
    let mut streams = Streams { stdin, out, err };
    match dispatch(cli.command, &mut streams) {
        Ok(()) => status::OK,
        Err(Failure::Negative) => status::FAILED,
        Err(f) => {
            let _ = writeln!(streams.err, "error: {f}");
            f.status()
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn negative_unless(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn dispatch(command: Command, io: &mut Streams<'_>) -> Outcome {
    match command {
        Command::Ccr { n, out } => cycles(io, 2, n, &out),
        Command::Mccr { m, n, out } => cycles(io, m, n, &out),
        Command::Counts(args) => counts(io, args),
        Command::Delta { block, input, out } => {
            let (m, seqs) = io.sequences(input.input.as_deref())?;
            let res = seqs.iter().map(|s| delta(&fit_block(s, block)?, block)).collect::<selfdual::Result<Vec<_>>>()?;
            io.emit(&out, &write_sequences(m, &res))
        }
        Command::Dinv { block, input, out } => {
            let (m, seqs) = io.sequences(input.input.as_deref())?;
            let text = match block {
                None => d_inverse(m, &seqs),
                Some(b) => delta_inverse(m, &seqs, b)?,
            };
            io.emit(&out, &text)
        }
        Command::Recurse { n, input, out } => {
            let set: BTreeSet<CyclicSeq> = match input {
                Some(p) => {
                    let (m, seqs) = io.sequences(Some(&p))?;
                    if m != 2 {
                        return Err(
                            Error::InvalidParameter(format!("recurse works over Z_2, input is over Z_{m}")).into()
                        );
                    }
                    seqs.into_iter().collect()
                }
                None => fsr_cycles(&RegisterSpec::ccr(2, n)?)?,
            };
            let res: Vec<CyclicSeq> = recurse_ccr_sds(&set, n)?.into_iter().collect();
            io.emit(&out, &write_sequences(2, &res))
        }
        Command::BuildDiff { m, out } => {
            let code = build_diff_stgc(m)?;
            let report = verify_stgc(&code).to_string() + "\n";
            io.emit_code(&out, &code, &report)
        }
        Command::BuildRec { p, t, out } => {
            let (code, stats) = build_recursive_stgc(p, t)?;
            let mut report = verify_stgc(&code).to_string() + "\n";
            if let Some(s) = stats {
                report += &format!("merge: {s}\n");
            }
            io.emit_code(&out, &code, &report)
        }
        Command::BuildThm { n, m, ell, input, out } => build_thm(io, n, m, ell, input.as_deref(), &out),
        Command::Verify { path, input } => {
            let text = io.read(path.as_deref().or(input.as_deref()))?;
            let code = parse_stgc(&text)?;
            let report = verify_stgc(&code);
            let max = is_max_period(code.modulus(), code.length(), code.period() as u128);
            io.write_out(&format!("max period: {}\n{report}\n", if max { "yes" } else { "no" }))?;
            negative_unless(report.passed())
        }
        Command::SearchThm3 { p, out } => {
            let code = search_thm3_max_period(p)?
                .ok_or_else(|| Error::SearchFailed(format!("no ordering of the length-{p} necklaces exists")))?;
            let report = verify_stgc(&code).to_string() + "\n";
            io.emit_code(&out, &code, &report)
        }
        Command::Examples { id } => {
            let id: u8 = id.parse().map_err(|_| Failure::Usage(format!("bad example id {id}")))?;
            let outcome = reproduce::example(id)?;
            io.write_out(&outcome.text)?;
            negative_unless(outcome.passed)
        }
    }
}

fn cycles(io: &mut Streams<'_>, m: u8, n: usize, out: &OutArg) -> Outcome {
    let set: Vec<CyclicSeq> = fsr_cycles(&RegisterSpec::ccr(m, n)?)?.into_iter().collect();
    io.emit(out, &write_sequences(m, &set))
}

/// Simulated counts, or `None` when the state space is over the guard.
fn brute(m: u8, n: usize) -> std::result::Result<Option<CountReport>, Failure> {
    match cycle_structure(&RegisterSpec::ccr(m, n)?) {
        Ok(r) => Ok(Some(r)),
        Err(Error::GuardExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn compare(text: &mut String, formula: &CountReport, brute: Option<&CountReport>, forms_agree: bool) -> bool {
    text.push_str(&format!("{formula}\n"));
    let sim = match brute {
        Some(b) => {
            text.push_str(&format!("{b}\n"));
            b.same_counts(formula)
        }
        None => {
            text.push_str("brute: skipped, state space over the guard\n");
            true
        }
    };
    let ok = sim && forms_agree;
    text.push_str(&format!("closed forms agree: {}\n", verdict(forms_agree)));
    text.push_str(&format!("counts: {}\n", verdict(ok)));
    ok
}

fn counts(io: &mut Streams<'_>, a: CountsArgs) -> Outcome {
    if let (Some(i), Some(p)) = (a.i, a.p) {
        let formula = count_ccr_by_period(i, p)?;
        let n = formula.order;
        let general = count_mccr_by_period(2, n);
        let b = brute(2, n)?;
        let mut text = String::new();
        let ok = compare(&mut text, &formula, b.as_ref(), general.same_counts(&formula));
        io.write_out(&text)?;
        return negative_unless(ok);
    }
    let Some(n) = a.n else {
        return Err(Failure::Usage("counts needs --n, or --i with --p".into()));
    };
    if a.identity {
        if a.m == 2 {
            let r = verify_count_identity(n)?;
            io.write_out(&format!("{r}\n"))?;
            return negative_unless(r.passed());
        }
        let r = verify_mccr_identity(a.m, n)?;
        let ok = r.stated_matches() || r.plain_matches();
        io.write_out(&format!("{r}\nidentity: {}\n", verdict(ok)))?;
        return negative_unless(ok);
    }
    let formula = count_mccr_by_period(a.m, n);
    let total = if a.m == 2 { count_ccr_formula(n) } else { count_mccr_formula(a.m, n) };
    let b = brute(a.m, n)?;
    let mut text = String::new();
    let ok = compare(&mut text, &formula, b.as_ref(), formula.total == total);
    io.write_out(&text)?;
    negative_unless(ok)
}

fn kind_name(k: PreimageKind) -> &'static str {
    match k {
        PreimageKind::SinglePeriod => "single_period",
        PreimageKind::SdsDoubled => "sds_doubled",
        PreimageKind::Family => "family",
    }
}

/// Extends `s` cyclically to the least multiple of its length divisible by `block`.
fn fit_block(s: &CyclicSeq, block: usize) -> selfdual::Result<CyclicSeq> {
    if block == 0 {
        return Err(Error::BlockMismatch { block, len: s.len() });
    }
    s.repeat_to(s.len().lcm(&block))
}

fn header(m: u8) -> String {
    if m == 2 {
        String::new()
    } else {
        format!("# m={m}\n")
    }
}

fn d_inverse(m: u8, seqs: &[CyclicSeq]) -> String {
    let mut text = header(m);
    for s in seqs {
        let r = apply_d_inv(s);
        text += &format!("# D^-1 of {}: {}\n", s.digits(), kind_name(r.kind));
        for q in &r.sequences {
            text += &format!("{}\n", q.digits());
        }
    }
    text
}

/// Every distinct class of the inverse blockwise difference over all Y, in the
/// alignment of the first Y (lexicographic) that produces it.
fn delta_inverse(m: u8, seqs: &[CyclicSeq], block: usize) -> std::result::Result<String, Failure> {
    let words = checked_pow(m as u64, block as u64).unwrap_or(u128::MAX);
    if words > FAMILY_LIMIT {
        return Err(Error::GuardExceeded { size: words, limit: FAMILY_LIMIT }.into());
    }
    let mut text = header(m);
    for s in seqs {
        text += &format!("# block {block} inverse of {}\n", s.digits());
        let s = &fit_block(s, block)?;
        let mut seen = BTreeSet::new();
        let mut failure = None;
        for_each_word(m, block, |y| {
            if failure.is_some() {
                return;
            }
            let y = Word::new(m, y.to_vec()).expect("in range");
            match delta_inv(s, block, &y) {
                Ok(v) => {
                    if seen.insert(cycle_class(&v)) {
                        text += &format!("{}\n", v.primitive().digits());
                    }
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e.into());
        }
    }
    Ok(text)
}

fn build_thm(io: &mut Streams<'_>, n: usize, m: u8, ell: Option<usize>, input: Option<&Path>, out: &OutArg) -> Outcome {
    let mut ordering = match input {
        Some(p) => {
            let (fm, seqs) = io.sequences(Some(p))?;
            if fm != m {
                return Err(Error::ModulusMismatch { left: fm, right: m }.into());
            }
            let first = seqs.first().ok_or(Error::Empty)?;
            if first.len() != m as usize * n {
                return Err(Error::LengthMismatch { left: first.len(), right: m as usize * n }.into());
            }
            let ell = match ell {
                Some(l) => l,
                None => {
                    let space = ClassSpace::new(m, Adjacency::ResidueClass { n }, seqs.iter().cloned())?;
                    let last = seqs.last().expect("nonempty");
                    space
                        .closing_shift(last.elems(), first.elems())
                        .ok_or_else(|| Error::Precondition("no wrap offset closes the given ordering".into()))?
                }
            };
            SdsOrdering { modulus: m, n, seqs, ell }
        }
        None => full_period_ordering(m, n)?,
    };
    if let Some(l) = ell {
        ordering.ell = l;
    }
    let code = construct_from_sds(&ordering)?;
    let report = verify_stgc(&code);
    let text = format!("ordering: {} sequences, ell={}\n{report}\n", ordering.seqs.len(), ordering.ell);
    io.emit_code(out, &code, &text)
}
