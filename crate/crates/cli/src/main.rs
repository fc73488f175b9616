//! `frobamp`: cohomology tables, regularity, Frobenius amplitude, splitting
//! types and Schur dimensions from the command line.
//!
//! Structured output is one JSON object per line:
//!
//! ```text
//! {"tool":"frobamp","version":"0.1.0","command":"famp","prime":5,"input_digest":"<sha256>","result":{...}}
//! ```
//!
//! `prime` is `null` for commands that do not read a field. `input_digest`
//! is the SHA-256 of the module file, or of the canonical argument string
//! for commands without one.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use frobamp::cohomology::{minreg_areg, Cohomology};
use frobamp::famp::f_amplitude_sampled;
use frobamp::field::{is_prime, prime_power};
use frobamp::format::ModuleFile;
use frobamp::frobsplit::{splitting_oracle, splitting_type};
use frobamp::schur::{carter_lusztig_complex, schur_dimension, standard_tableaux_count, Partition};
use frobamp::verify::{self, Check};
use frobamp::GradedModule;

const MAX_WINDOW: i64 = 4096;

#[derive(Parser, Debug)]
#[command(name = "frobamp", version, about = "Exact sheaf cohomology and Frobenius amplitude on projective space")]
struct Cli {
    /// Prime to work over; repeat for a sweep. Defaults to the module file's prime.
    #[arg(short = 'p', long = "prime", global = true)]
    primes: Vec<u64>,
    /// Twist window `lo..hi`, inclusive.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<(i64, i64)>,
    /// Largest Frobenius exponent for `famp` and `minreg`.
    #[arg(long, global = true, default_value_t = 2)]
    max_e: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of h^i(F(d)) over the window.
    Cohomology { module: PathBuf },
    /// Castelnuovo-Mumford regularity of the sheaf.
    Regularity { module: PathBuf },
    /// Frobenius amplitude with its witness table.
    Famp { module: PathBuf },
    /// reg(F^(p^e)) for e = 0..=max-e.
    Minreg { module: PathBuf },
    /// Splitting type of pi_* O(i) for a degree-d self-map of P^n.
    Frobsplit {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
    },
    /// Dimension of the Schur power S^lambda of a rank-r bundle.
    Schur { r: u64, partition: String },
    /// Dimensions in the Carter-Lusztig complex and their alternating sum.
    ClCheck { r: u64, p: u64 },
    /// Minimal free resolution and Betti table.
    Resolve { module: PathBuf },
    /// The full invariant suite.
    Verify,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Cohomology { .. } => "cohomology",
            Command::Regularity { .. } => "regularity",
            Command::Famp { .. } => "famp",
            Command::Minreg { .. } => "minreg",
            Command::Frobsplit { .. } => "frobsplit",
            Command::Schur { .. } => "schur",
            Command::ClCheck { .. } => "cl-check",
            Command::Resolve { .. } => "resolve",
            Command::Verify => "verify",
        }
    }

    fn module_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Cohomology { module }
            | Command::Regularity { module }
            | Command::Famp { module }
            | Command::Minreg { module }
            | Command::Resolve { module } => Some(module),
            _ => None,
        }
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound {lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound {hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("window {lo}..{hi} is empty"));
    }
    if hi.checked_sub(lo).is_none_or(|w| w >= MAX_WINDOW) {
        return Err(format!("window {lo}..{hi} overflows the limit of {MAX_WINDOW} twists"));
    }
    Ok((lo, hi))
}

/// Whether every assertion the command checks held; input errors are `Err` instead.
enum Outcome {
    Passed,
    Failed,
}

struct Output {
    format: Format,
    command: &'static str,
    digest: String,
    text: String,
    lines: Vec<String>,
}

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    prime: Option<u64>,
    input_digest: &'a str,
    result: T,
}

impl Output {
    fn record<T: Serialize>(&mut self, prime: Option<u64>, result: T) {
        let rec = Record {
            tool: "frobamp",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            prime,
            input_digest: &self.digest,
            result,
        };
        self.lines.push(serde_json::to_string(&rec).expect("reports serialize"));
    }

    fn text(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        if !s.as_ref().ends_with('\n') {
            self.text.push('\n');
        }
    }

    fn finish(self) -> String {
        match self.format {
            Format::Text => self.text,
            Format::Structured => self.lines.iter().map(|l| format!("{l}\n")).collect(),
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(path: &PathBuf) -> Result<(ModuleFile, Vec<u8>)> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let file = ModuleFile::parse(text).with_context(|| format!("{}", path.display()))?;
    Ok((file, bytes))
}

fn modules_per_prime(file: &ModuleFile, primes: &[u64], path: &Path) -> Result<Vec<(u64, GradedModule)>> {
    let primes = if primes.is_empty() { vec![file.prime] } else { primes.to_vec() };
    primes
        .into_iter()
        .map(|p| {
            let m = file.to_module(Some(p)).with_context(|| format!("{}", path.display()))?;
            Ok((p, m))
        })
        .collect()
}

fn check_primes(primes: &[u64]) -> Result<()> {
    for &p in primes {
        if !is_prime(p) {
            bail!("{p} is not prime");
        }
        if p >= 1 << 32 {
            bail!("prime {p} does not fit in 32 bits");
        }
    }
    Ok(())
}

fn default_window(m: &GradedModule) -> (i64, i64) {
    let n = m.proj_dim() as i64;
    (-n - 1, n + 1)
}

fn heading(multi: bool, p: u64) -> String {
    if multi {
        format!("p = {p}\n")
    } else {
        String::new()
    }
}

fn run(cli: &Cli) -> Result<(String, Outcome)> {
    check_primes(&cli.primes)?;
    let command = cli.command.name();
    let loaded = cli.command.module_path().map(load).transpose()?;
    let digest = match &loaded {
        Some((_, bytes)) => digest(bytes),
        None => digest(canonical_args(&cli.command).as_bytes()),
    };
    let mut out = Output { format: cli.format, command, digest, text: String::new(), lines: Vec::new() };
    let mut outcome = Outcome::Passed;

    match &cli.command {
        Command::Cohomology { module } => {
            let (file, _) = loaded.as_ref().unwrap();
            let mods = modules_per_prime(file, &cli.primes, module)?;
            let multi = mods.len() > 1;
            let tables = mods
                .par_iter()
                .map(|(p, m)| {
                    let (lo, hi) = cli.window.unwrap_or_else(|| default_window(m));
                    Ok((*p, Cohomology::new(m).table(lo, hi)?))
                })
                .collect::<Result<Vec<_>>>()?;
            for (p, t) in tables {
                out.text(format!("{}{t}", heading(multi, p)));
                out.record(Some(p), &t);
            }
        }
        Command::Regularity { module } => {
            let (file, _) = loaded.as_ref().unwrap();
            let mods = modules_per_prime(file, &cli.primes, module)?;
            let reports = mods
                .par_iter()
                .map(|(p, m)| Ok((*p, Cohomology::new(m).regularity()?)))
                .collect::<Result<Vec<_>>>()?;
            for (p, r) in reports {
                out.text(format!(
                    "p = {p}: reg = {} (Betti bound {}, Reg(X) = {})",
                    r.sheaf_regularity, r.module_regularity_bound, r.reg_x
                ));
                out.record(Some(p), r);
            }
        }
        Command::Famp { module } => {
            let (file, _) = loaded.as_ref().unwrap();
            let mods = modules_per_prime(file, &cli.primes, module)?;
            let multi = mods.len() > 1;
            let reports = mods
                .par_iter()
                .map(|(_, m)| Ok(f_amplitude_sampled(m, cli.max_e)?))
                .collect::<Result<Vec<_>>>()?;
            for r in &reports {
                let mut s = heading(multi, r.prime);
                writeln!(s, "phi = {}", r.phi).unwrap();
                writeln!(s, "{}", r.witness_table).unwrap();
                if cli.max_e > 0 {
                    let missing: Vec<u32> = (1..=cli.max_e).filter(|e| !r.frobenius_checked.contains(e)).collect();
                    if missing.is_empty() {
                        writeln!(s, "Frobenius pullbacks e = 1..{}: same phi", cli.max_e).unwrap();
                    } else {
                        writeln!(s, "Frobenius pullbacks with a different phi: e = {missing:?}").unwrap();
                        outcome = Outcome::Failed;
                    }
                }
                out.text(s);
                out.record(Some(r.prime), r);
            }
            if multi {
                let mut s = String::from("prime  phi\n");
                for r in &reports {
                    writeln!(s, "{:>5}  {:>3}", r.prime, r.phi).unwrap();
                }
                out.text(s);
            }
        }
        Command::Minreg { module } => {
            let (file, _) = loaded.as_ref().unwrap();
            let mods = modules_per_prime(file, &cli.primes, module)?;
            let reports = mods
                .par_iter()
                .map(|(p, m)| Ok((*p, minreg_areg(m, cli.max_e)?)))
                .collect::<Result<Vec<_>>>()?;
            for (p, r) in reports {
                out.text(format!("p = {p}: reg(F^(p^e)), e = 0..{}: {:?}; min {}; {}", cli.max_e, r.sequence, r.min, r.trend));
                out.record(Some(p), r);
            }
        }
        Command::Frobsplit { n, d, i } => {
            let t = splitting_type(*n, *d, *i)?;
            let mut s = format!("{t}\n");
            writeln!(s, "{:>6}  f(l,{i})", "l").unwrap();
            for (l, m) in t.multiplicities.iter().rev() {
                writeln!(s, "{l:>6}  {m}").unwrap();
            }
            let expected_rank = (*d as u64).checked_pow(*n as u32);
            let rank_ok = expected_rank == Some(t.rank());
            writeln!(s, "rank {} {}", t.rank(), if rank_ok { "= d^n" } else { "!= d^n" }).unwrap();
            let oracle = match prime_power(*d as u64) {
                Some(_) => {
                    let agrees = splitting_oracle(*n, *d as u64, *i)? == t;
                    writeln!(s, "monomial count for q = {d}: {}", if agrees { "agrees" } else { "DISAGREES" }).unwrap();
                    Some(agrees)
                }
                None => None,
            };
            if !rank_ok || oracle == Some(false) {
                outcome = Outcome::Failed;
            }
            out.text(s);
            #[derive(Serialize)]
            struct Split<'a> {
                splitting: &'a frobamp::frobsplit::SplittingType,
                rank_ok: bool,
                oracle_agrees: Option<bool>,
            }
            out.record(None, Split { splitting: &t, rank_ok, oracle_agrees: oracle });
        }
        Command::Schur { r, partition } => {
            let lambda: Partition = partition.parse()?;
            let dim = schur_dimension(&lambda, *r)?;
            let tableaux = standard_tableaux_count(&lambda);
            out.text(format!(
                "lambda = {lambda}, conjugate {}\ndim S^{lambda} (rank {r}) = {dim}\nstandard tableaux: {tableaux}",
                lambda.conjugate()
            ));
            #[derive(Serialize)]
            struct Schur {
                partition: Partition,
                conjugate: Partition,
                rank: u64,
                dimension: String,
                standard_tableaux: String,
            }
            out.record(
                None,
                Schur {
                    conjugate: lambda.conjugate(),
                    partition: lambda,
                    rank: *r,
                    dimension: dim.to_string(),
                    standard_tableaux: tableaux.to_string(),
                },
            );
        }
        Command::ClCheck { r, p } => {
            let c = carter_lusztig_complex(*r, *p)?;
            let mut s = format!("rank {r}, p = {p}\n{:>14}  dim\n", "lambda");
            writeln!(s, "{:>14}  {r}", "E^(p)").unwrap();
            for (l, d) in c.partitions.iter().zip(&c.dimensions) {
                writeln!(s, "{:>14}  {d}", l.to_string()).unwrap();
            }
            writeln!(s, "alternating sum = {}", c.alternating_sum).unwrap();
            if !c.is_exact_on_dimensions() {
                outcome = Outcome::Failed;
            }
            out.text(s);
            out.record(Some(*p), &c);
        }
        Command::Resolve { module } => {
            let (file, _) = loaded.as_ref().unwrap();
            let mods = modules_per_prime(file, &cli.primes, module)?;
            let multi = mods.len() > 1;
            let results: Vec<_> = mods
                .par_iter()
                .map(|(p, m)| {
                    let res = m.resolution();
                    let exact = res.verify_exactness(res.test_window());
                    (*p, res.betti_numbers(), exact, res.is_minimal(), res.length())
                })
                .collect();
            for (p, betti, exact, minimal, length) in results {
                let mut s = heading(multi, p);
                s.push_str(&betti_table(&betti));
                writeln!(s, "length {length}, {}", if minimal { "minimal" } else { "NOT minimal" }).unwrap();
                match &exact {
                    Ok(()) => writeln!(s, "exact on the test window").unwrap(),
                    Err(e) => {
                        writeln!(s, "NOT exact: {e}").unwrap();
                        outcome = Outcome::Failed;
                    }
                }
                if !minimal {
                    outcome = Outcome::Failed;
                }
                out.text(s);
                #[derive(Serialize)]
                struct Resolution {
                    betti: Vec<Vec<(i64, usize)>>,
                    length: usize,
                    minimal: bool,
                    exact: bool,
                }
                out.record(Some(p), Resolution { betti, length, minimal, exact: exact.is_ok() });
            }
        }
        Command::Verify => {
            let primes = if cli.primes.is_empty() { vec![2, 3, 5] } else { cli.primes.clone() };
            let mut groups: Vec<(Option<u64>, Vec<Check>)> = vec![(None, verify::field_free_checks())];
            groups.extend(primes.par_iter().map(|&p| (Some(p), verify::prime_checks(p))).collect::<Vec<_>>());
            let mut passed = 0;
            let mut total = 0;
            for (p, checks) in &groups {
                for c in checks {
                    total += 1;
                    if c.passed {
                        passed += 1;
                    } else {
                        outcome = Outcome::Failed;
                    }
                    let scope = p.map_or(String::new(), |p| format!("[p={p}] "));
                    out.text(format!("{} {scope}{}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
                    out.record(*p, c);
                }
            }
            out.text(format!("{passed} of {total} checks passed"));
        }
    }
    Ok((out.finish(), outcome))
}

fn canonical_args(c: &Command) -> String {
    match c {
        Command::Frobsplit { n, d, i } => format!("frobsplit n={n} d={d} i={i}"),
        Command::Schur { r, partition } => format!("schur r={r} partition={partition}"),
        Command::ClCheck { r, p } => format!("cl-check r={r} p={p}"),
        other => other.name().to_string(),
    }
}

/// Rows are `twist - homological degree`, columns homological degree.
fn betti_table(betti: &[Vec<(i64, usize)>]) -> String {
    let rows: Vec<i64> = betti.iter().enumerate().flat_map(|(b, col)| col.iter().map(move |(t, _)| t - b as i64)).collect();
    let mut s = String::new();
    let width = 6;
    write!(s, "{:>7}", "").unwrap();
    for b in 0..betti.len() {
        write!(s, " {b:>width$}").unwrap();
    }
    write!(s, "\n{:>7}", "total:").unwrap();
    for col in betti {
        write!(s, " {:>width$}", col.iter().map(|(_, c)| c).sum::<usize>()).unwrap();
    }
    s.push('\n');
    let (Some(&lo), Some(&hi)) = (rows.iter().min(), rows.iter().max()) else {
        return s;
    };
    for row in lo..=hi {
        write!(s, "{:>7}", format!("{row}:")).unwrap();
        for (b, col) in betti.iter().enumerate() {
            let count: usize = col.iter().filter(|(t, _)| t - b as i64 == row).map(|(_, c)| c).sum();
            let cell = if count == 0 { ".".to_string() } else { count.to_string() };
            write!(s, " {cell:>width$}").unwrap();
        }
        s.push('\n');
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((text, outcome)) => {
            print!("{text}");
            match outcome {
                Outcome::Passed => ExitCode::SUCCESS,
                Outcome::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
