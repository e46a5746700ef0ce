//! Command implementations behind the `kyber-matvec` binary.

use std::hash::{DefaultHasher, Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::format::{read_matrix, read_vector, write_matrix, write_vector, VectorKind};
use crate::matvec::{matvec_proposed, Algorithm, Form, PolyVector};
use crate::modarith::{OpCounter, StageCounters};
use crate::ntt::{ntt_eval_reference, ntt_forward, ntt_inverse, pointwise_mul, TableSet};
use crate::opreport::{closed_form_counts, measure, measure_all, reduction_summary};
use crate::oracle::{matvec_schoolbook, negacyclic_mul_schoolbook};
use crate::polyphase::Parallelism;
use crate::rng::{random_instance, SplitMix64};

pub const MATRIX_FILE: &str = "matrix.txt";
pub const VECTOR_FILE: &str = "vector.txt";

const ALG_IDS: [&str; 6] = ["proposed2", "proposed4", "baseline4mult", "baseline5mult", "unshared4", "schoolbook"];

fn alg_parser() -> impl TypedValueParser<Value = Algorithm> {
    PossibleValuesParser::new(ALG_IDS).map(|s| s.parse::<Algorithm>().expect("restricted to known ids"))
}

#[derive(Debug, Parser)]
#[command(name = "kyber-matvec", version, about = "NTT-domain matrix-vector multiplication for Kyber")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the built-in checks and print one line per check.
    Selftest {
        #[arg(long, hide = true)]
        corrupt_twiddle: bool,
    },
    /// Write a seeded random matrix and vector into a directory.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=4))]
        k: u64,
        #[arg(long)]
        seed: u64,
        /// Output directory; receives matrix.txt and vector.txt.
        #[arg(long)]
        out: PathBuf,
    },
    /// Multiply a generated instance and write the result.
    Matvec {
        #[arg(long, value_parser = alg_parser())]
        alg: Algorithm,
        /// Directory holding matrix.txt and vector.txt.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Compare against the schoolbook product.
        #[arg(long)]
        verify: bool,
    },
    /// Print matvec-stage operation counts and reductions.
    Count {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4", value_parser = clap::value_parser!(u64).range(1..=4))]
        k_list: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time one pipeline on a seeded instance.
    Bench {
        #[arg(long, value_parser = alg_parser())]
        alg: Algorithm,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        iters: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A check or verification did not hold.
    Failure,
}

/// Process exit status for a library error: 3 for I/O, parse and input
/// consistency problems, 2 for anything else.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } | Error::Parse { .. } | Error::Dimension(_) | Error::Shape { .. } => 3,
        _ => 2,
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|source| Error::Io { path: PathBuf::from("<stdout>"), source })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Selftest { corrupt_twiddle } => cmd_selftest(corrupt_twiddle, out),
        Command::Gen { k, seed, out: dir } => cmd_gen(k, seed, &dir, out),
        Command::Matvec { alg, input, out: path, verify } => cmd_matvec(alg, &input, &path, verify, out),
        Command::Count { k_list, format: ReportFormat::Text, seed } => cmd_count(&k_list, seed, out),
        Command::Bench { alg, k, iters, seed } => cmd_bench(alg, k, iters, seed, out),
    }
}

struct Checks<'a> {
    out: &'a mut dyn Write,
    failures: usize,
}

impl Checks<'_> {
    fn record(&mut self, label: &str, result: Result<bool>, detail: &str) -> Result<()> {
        let line = match result {
            Ok(true) => format!("{label} PASS{detail}"),
            Ok(false) => {
                self.failures += 1;
                format!("{label} FAIL{detail}")
            }
            Err(e) => {
                self.failures += 1;
                format!("{label} FAIL ({e})")
            }
        };
        emit(self.out, &line)
    }
}

fn ntt_checks(tables: &TableSet, m: usize) -> Result<[bool; 3]> {
    let t = tables.for_len(m)?;
    let mut rng = SplitMix64::new(m as u64);
    let mut ok = [true; 3];
    let mut c = OpCounter::new();
    for _ in 0..20 {
        let f = rng.polynomial(m);
        let g = rng.polynomial(m);
        let ff = ntt_forward(&f, t, &mut c)?;
        ok[0] &= ntt_inverse(&ff, t, &mut c)? == f;
        ok[1] &= ff == ntt_eval_reference(&f, t)?;
        let prod = pointwise_mul(&ff, &ntt_forward(&g, t, &mut c)?, &mut c)?;
        ok[2] &= ntt_inverse(&prod, t, &mut c)? == negacyclic_mul_schoolbook(&f, &g)?;
    }
    Ok(ok)
}

fn oracle_check(alg: Algorithm, k: u64, tables: &TableSet) -> Result<bool> {
    for seed in 0..3 {
        let inst = random_instance(k as usize, 1000 * k + seed)?;
        let expected = matvec_schoolbook(&inst.matrix.to_coefficients(tables)?, &inst.vector)?;
        if alg.run(&inst.matrix, &inst.vector, tables, &mut StageCounters::new())? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

fn form_check(k: u64, tables: &TableSet) -> Result<bool> {
    let inst = random_instance(k as usize, 77 + k)?;
    let mut ct = StageCounters::new();
    let mut co = StageCounters::new();
    let t = matvec_proposed(&inst.matrix, &inst.vector, Parallelism::Two, Form::Transposed, tables, &mut ct)?;
    let o = matvec_proposed(&inst.matrix, &inst.vector, Parallelism::Two, Form::Original, tables, &mut co)?;
    Ok(t == o && ct.matvec.totals() == co.matvec.totals())
}

/// Which parts of the closed form the self-test holds a pipeline to.
fn asserted_counts(alg: Algorithm, k: u64) -> (bool, bool) {
    match alg {
        Algorithm::Proposed2 | Algorithm::Proposed4 | Algorithm::Baseline4Mult => (true, true),
        Algorithm::Unshared4 => (true, k == 2),
        _ => (true, false),
    }
}

pub fn cmd_selftest(corrupt_twiddle: bool, out: &mut dyn Write) -> Result<Outcome> {
    let mut tables = TableSet::new();
    if corrupt_twiddle {
        tables.t128.corrupt_for_testing();
        tables.t64.corrupt_for_testing();
    }
    let mut checks = Checks { out, failures: 0 };

    for m in [64, 128] {
        match ntt_checks(&tables, m) {
            Ok(ok) => {
                for (name, pass) in ["roundtrip", "reference", "convolution"].iter().zip(ok) {
                    checks.record(&format!("ntt {name} m={m}"), Ok(pass), "")?;
                }
            }
            Err(e) => checks.record(&format!("ntt m={m}"), Err(e), "")?,
        }
    }

    for alg in Algorithm::COUNTED {
        for k in 1..=4 {
            checks.record(&format!("oracle {alg} k={k}"), oracle_check(alg, k, &tables), "")?;
        }
    }
    for k in 1..=4 {
        checks.record(&format!("forms proposed2 k={k}"), form_check(k, &tables), "")?;
    }

    for alg in Algorithm::COUNTED {
        for k in 1..=4 {
            let label = format!("opcounts {alg} k={k}");
            let result = measure(alg, k, 1, &tables).and_then(|r| {
                let cf = closed_form_counts(alg, k, 256)?;
                let (mul, add) = asserted_counts(alg, k);
                let pass = (!mul || r.measured.0 == cf.0) && (!add || r.measured.1 == cf.1);
                Ok((pass, r.measured))
            });
            match result {
                Ok((pass, (mul, add))) => checks.record(&label, Ok(pass), &format!(" ({mul},{add})"))?,
                Err(e) => checks.record(&label, Err(e), "")?,
            }
        }
    }

    let failures = checks.failures;
    if failures == 0 {
        emit(checks.out, "selftest PASS")?;
        Ok(Outcome::Success)
    } else {
        emit(checks.out, &format!("selftest FAIL failures={failures}"))?;
        Ok(Outcome::Failure)
    }
}

pub fn cmd_gen(k: u64, seed: u64, dir: &Path, out: &mut dyn Write) -> Result<Outcome> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;
    let inst = random_instance(k as usize, seed)?;
    let matrix_path = dir.join(MATRIX_FILE);
    let vector_path = dir.join(VECTOR_FILE);
    write_matrix(&matrix_path, &inst.matrix)?;
    write_vector(&vector_path, &inst.vector, VectorKind::Vector)?;
    emit(out, &format!("matrix={} vector={}", matrix_path.display(), vector_path.display()))?;
    Ok(Outcome::Success)
}

pub fn cmd_matvec(alg: Algorithm, input: &Path, path: &Path, verify: bool, out: &mut dyn Write) -> Result<Outcome> {
    let tables = TableSet::new();
    let matrix = read_matrix(&input.join(MATRIX_FILE))?;
    let (_, vector) = read_vector(&input.join(VECTOR_FILE))?;
    let result = alg.run(&matrix, &vector, &tables, &mut StageCounters::new())?;
    write_vector(path, &result, VectorKind::Output)?;
    if !verify {
        return Ok(Outcome::Success);
    }
    let expected = matvec_schoolbook(&matrix.to_coefficients(&tables)?, &vector)?;
    if result == expected {
        emit(out, &format!("verify alg={alg} EQUAL"))?;
        Ok(Outcome::Success)
    } else {
        emit(out, &format!("verify alg={alg} DIFFER"))?;
        Ok(Outcome::Failure)
    }
}

pub fn cmd_count(k_list: &[u64], seed: u64, out: &mut dyn Write) -> Result<Outcome> {
    let tables = TableSet::new();
    for report in measure_all(k_list, seed, &tables)? {
        emit(out, &report.to_string())?;
    }
    for line in reduction_summary(k_list) {
        emit(out, &line)?;
    }
    Ok(Outcome::Success)
}

/// Median and minimum wall time of `iters` runs, plus a hash of the result.
pub fn bench_stats(alg: Algorithm, k: u64, iters: u64, seed: u64) -> Result<(u128, u128, u64)> {
    let tables = TableSet::new();
    let inst = random_instance(k as usize, seed)?;
    let matrix = inst.matrix.to_parallelism(alg.parallelism(), &tables)?;
    let coeff = matrix.to_coefficients(&tables)?;
    let mut times = Vec::with_capacity(iters as usize);
    let mut result: Option<PolyVector> = None;
    for _ in 0..iters {
        let start = Instant::now();
        let p = match alg {
            Algorithm::Schoolbook => matvec_schoolbook(&coeff, &inst.vector)?,
            _ => alg.run(&matrix, &inst.vector, &tables, &mut StageCounters::new())?,
        };
        times.push(start.elapsed().as_nanos());
        result = Some(p);
    }
    times.sort_unstable();
    let mut hasher = DefaultHasher::new();
    result.hash(&mut hasher);
    Ok((times[times.len() / 2], times[0], hasher.finish()))
}

pub fn cmd_bench(alg: Algorithm, k: u64, iters: u64, seed: u64, out: &mut dyn Write) -> Result<Outcome> {
    let (median, min, hash) = bench_stats(alg, k, iters, seed)?;
    emit(out, &format!("alg={alg} k={k} iters={iters} median_ns={median} min_ns={min} result_hash={hash:016x}"))?;
    Ok(Outcome::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("kyber-matvec").chain(args.iter().copied()))
    }

    #[test]
    fn argument_validation() {
        assert!(parse(&["gen", "--k", "1", "--seed", "1", "--out", "x"]).is_err());
        assert!(parse(&["gen", "--k", "5", "--seed", "1", "--out", "x"]).is_err());
        assert!(parse(&["gen", "--k", "3", "--seed", "1", "--out", "x"]).is_ok());
        assert!(parse(&["matvec", "--alg", "fast", "--in", "a", "--out", "b"]).is_err());
        assert!(parse(&["bench", "--alg", "proposed2", "--k", "2", "--iters", "0"]).is_err());
        assert!(parse(&["count", "--k-list", "2,5"]).is_err());
        assert!(parse(&["count", "--format", "json"]).is_err());
        let cli = parse(&["count", "--k-list", "1,2"]).unwrap();
        assert!(matches!(cli.command, Command::Count { ref k_list, .. } if k_list == &[1, 2]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Io { path: "x".into(), source: std::io::Error::other("x") }), 3);
        assert_eq!(exit_code(&Error::Parse { path: "x".into(), line: 1, message: String::new() }), 3);
        assert_eq!(exit_code(&Error::UnknownAlgorithm("x".into())), 2);
    }

    #[test]
    fn count_output() {
        let mut buf = Vec::new();
        cmd_count(&[2], 1, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("alg=proposed2 k=2 n=256 L=2 modmul=1792 modadd=2304 cf_modmul=1792 cf_modadd=2304\n"));
        assert!(text.contains("alg=proposed4 k=2 n=256 L=4 modmul=2688 modadd=6144 "));
        assert!(text.starts_with("alg=baseline4mult k=2"));
    }
}
