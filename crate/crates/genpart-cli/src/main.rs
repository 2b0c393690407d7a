//! Batch command-line front end: series expansion, asymptotics, Sturm-type
//! bounds, single-claim verification, and corpus runs.
//!
//! Exit status: 0 on success (Verified, or Inconclusive-clean with
//! --allow-partial); 1 when a claim is Refuted or a corpus run fails;
//! 2 on usage or validation errors; 3 on engine errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use genpart::asymptotics::{
    self, growth_rate, profile, ratio_table_with_budget, DEFAULT_EXACT_BUDGET,
};
use genpart::congruence::{
    bound_k, bound_k_prime, build_c_vector, reduce_mod_ell, s_sets, verify_with,
    CongruenceClaim, Verdict, DEFAULT_NUMERIC_DEPTH,
};
use genpart::corpus::{group_claims, parse_corpus, run_corpus};
use genpart::partition::expand_generalized;
use genpart::series::RingSpec;
use genpart::ExponentVector;

#[derive(Parser)]
#[command(name = "genpart", version, about = "Generalized partition functions: expansion, asymptotics, and certified congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print coefficients of the generalized partition series for a vector
    Expand(ExpandArgs),
    /// Print the asymptotic constants, optionally with an exact/asymptotic table
    Asym(AsymArgs),
    /// Print the eta datum and the Sturm-type bounds for a vector mod ell
    Sturm(SturmArgs),
    /// Verify one congruence claim and emit its certificate
    Verify(VerifyArgs),
    /// Corpus operations
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args)]
struct ExpandArgs {
    /// Exponent vector: dense "2,0,0,4" or sparse "1:2,8:2"
    #[arg(long)]
    e: String,
    /// Number of coefficients to print (precision)
    #[arg(long)]
    n: usize,
    /// Compute mod m instead of exactly
    #[arg(long = "mod")]
    modulus: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AsymArgs {
    #[arg(long)]
    e: String,
    /// Comma-separated n values for the exact/asymptotic/ratio table
    #[arg(long)]
    table: Option<String>,
    /// Significant digits for printed reals
    #[arg(long, default_value_t = 6)]
    digits: usize,
    /// Exact-expansion budget for the table (highest coefficient index + 1)
    #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SturmArgs {
    #[arg(long)]
    e: String,
    #[arg(long)]
    ell: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    e: String,
    #[arg(long)]
    ell: u64,
    /// Comma-separated residues B (e.g. "2,3")
    #[arg(long)]
    b: String,
    /// Progression steps checked when no theorem applies
    #[arg(long, default_value_t = DEFAULT_NUMERIC_DEPTH)]
    depth: u64,
    /// Exit 0 when the verdict is Inconclusive with no violation found
    #[arg(long)]
    allow_partial: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Verify every claim in a corpus file
    Run(CorpusRunArgs),
}

#[derive(Args)]
struct CorpusRunArgs {
    /// Corpus JSON file
    file: PathBuf,
    /// Worker threads (0 = one per logical CPU)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Numeric depth for claims without a theorem certificate
    #[arg(long, default_value_t = DEFAULT_NUMERIC_DEPTH)]
    depth: u64,
    /// Write the full report (certificates + summary) as JSON to this path
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_vector(spec: &str) -> Result<ExponentVector, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty vector spec".into());
    }
    let vector = if spec.contains(':') {
        let mut map = BTreeMap::new();
        for part in spec.split(',') {
            let (idx, value) = part
                .split_once(':')
                .ok_or_else(|| format!("bad sparse component {part:?} (want index:value)"))?;
            let idx: u32 = idx.trim().parse().map_err(|e| format!("index {idx:?}: {e}"))?;
            let value: i64 = value.trim().parse().map_err(|e| format!("value {value:?}: {e}"))?;
            if map.insert(idx, value).is_some() {
                return Err(format!("index {idx} given twice"));
            }
        }
        ExponentVector::from_sparse(&map).map_err(|e| e.to_string())?
    } else {
        let entries = spec
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("entry {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        ExponentVector::new(entries)
    };
    if vector.is_zero() {
        return Err("vector must be nonzero".into());
    }
    Ok(vector)
}

fn parse_u64_list(spec: &str) -> Result<Vec<u64>, String> {
    spec.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn engine_error(err: genpart::Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(3)
}

fn cmd_expand(args: &ExpandArgs) -> ExitCode {
    let vector = match parse_vector(&args.e) {
        Ok(v) => v,
        Err(m) => return usage_error(&m),
    };
    if args.n < 1 {
        return usage_error("--n must be at least 1");
    }
    let ring = match args.modulus {
        None => RingSpec::Exact,
        Some(m) => match RingSpec::modular(m) {
            Ok(r) => r,
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    let series = match expand_generalized(&vector, args.n, ring) {
        Ok(s) => s,
        Err(e) => return engine_error(e),
    };

    let stdout = std::io::stdout();
    let sink: Box<dyn Write> = match &args.out {
        None => Box::new(stdout.lock()),
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => return usage_error(&format!("cannot create {}: {e}", path.display())),
        },
    };
    let mut out = std::io::BufWriter::new(sink);
    let result = match args.format {
        Format::Text => (0..args.n).try_for_each(|i| {
            let sep = if i + 1 == args.n { "\n" } else { "," };
            write!(out, "{}{sep}", series.coefficient(i).unwrap())
        }),
        Format::Csv => writeln!(out, "index,coefficient").and_then(|_| {
            (0..args.n).try_for_each(|i| {
                writeln!(out, "{i},{}", series.coefficient(i).unwrap())
            })
        }),
        Format::Json => serde_json::to_writer(&mut out, &series)
            .map_err(std::io::Error::other)
            .and_then(|_| writeln!(out)),
    };
    match result.and_then(|_| out.flush()) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn cmd_asym(args: &AsymArgs) -> ExitCode {
    let vector = match parse_vector(&args.e) {
        Ok(v) => v,
        Err(m) => return usage_error(&m),
    };
    let prof = match profile(&vector) {
        Ok(p) => p,
        Err(e @ genpart::Error::NegativeEntry { .. }) => {
            eprintln!("error: {e}; the asymptotic formula is only stated for e_m >= 0");
            return ExitCode::from(2);
        }
        Err(e) => return engine_error(e),
    };
    let rate = growth_rate(&vector).expect("profile already computed");

    let rows = match &args.table {
        None => None,
        Some(spec) => {
            let ns = match parse_u64_list(spec) {
                Ok(ns) if !ns.is_empty() && ns.iter().all(|&n| n >= 1) => ns,
                Ok(_) => return usage_error("--table needs positive n values"),
                Err(m) => return usage_error(&m),
            };
            match ratio_table_with_budget(&vector, &ns, args.budget) {
                Ok(rows) => Some(rows),
                Err(e) => return engine_error(e),
            }
        }
    };

    let d = args.digits.max(1);
    match args.format {
        Format::Text => {
            println!("e      = {vector}");
            println!("d      = {}", prof.d);
            println!("beta   = {}", prof.beta);
            println!("gamma  = {}", prof.gamma);
            println!("delta  = {}", prof.delta);
            println!("lambda = {:.*}", d - 1, prof.lambda_log.exp());
            println!("A      = {:.*}  (= pi^2 * {})", d - 1, prof.a, prof.a_exact);
            println!("H~     = {:.*}  (= 2 sqrt(A))", d - 1, rate);
            if let Some(rows) = &rows {
                print!("{}", asymptotics::render_table_text(rows));
            }
        }
        Format::Csv => match &rows {
            Some(rows) => print!("{}", asymptotics::render_table_csv(rows)),
            None => return usage_error("csv format requires --table"),
        },
        Format::Json => {
            let doc = serde_json::json!({
                "vector": vector,
                "profile": prof,
                "growth_rate": rate,
                "table": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    ExitCode::SUCCESS
}

fn cmd_sturm(args: &SturmArgs) -> ExitCode {
    let vector = match parse_vector(&args.e) {
        Ok(v) => v,
        Err(m) => return usage_error(&m),
    };
    let ell = args.ell;
    let reduced = match reduce_mod_ell(&vector, ell) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    if reduced.is_zero() {
        eprintln!("error: the vector vanishes mod {ell}; no eta datum exists");
        return ExitCode::from(3);
    }
    let datum = match build_c_vector(&reduced, ell) {
        Ok(d) => d,
        Err(e) => return engine_error(e),
    };
    let delta = datum.delta_ell;
    let k1 = bound_k(&datum, ell);
    let k2 = bound_k_prime(&datum, ell);
    let sets = s_sets(&vector, ell);

    match args.format {
        Format::Json => {
            let doc = serde_json::json!({
                "vector": vector,
                "ell": ell,
                "datum": datum,
                "s_plus": sets.as_ref().ok().map(|(p, _)| p),
                "s_minus": sets.as_ref().ok().map(|(_, m)| m),
                "bound_k": k1.as_ref().ok(),
                "bound_k_prime": k2.as_ref().ok(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            println!("e        = {vector}");
            println!("ell      = {ell}");
            println!("reduced  = {reduced}");
            println!("beta_e   = {}", datum.beta_e);
            println!("c        = {:?}", datum.c);
            println!("e'       = {}", datum.e_prime);
            println!("w        = {}", datum.w);
            println!("omega    = {}", datum.omega);
            println!("N0       = {}", datum.n0);
            println!("N        = {}", datum.level);
            println!("delta    = {delta}");
            match &sets {
                Ok((p, m)) => {
                    println!("S+       = {p:?}");
                    println!("S-       = {m:?}");
                }
                Err(e) => println!("S+/S-    : unavailable ({e})"),
            }
            match &k1 {
                Ok(k) => println!("K        = {k}  (single residue B = delta, ell >= 5)"),
                Err(e) => println!("K        : unavailable ({e})"),
            }
            match &k2 {
                Ok(k) => println!("K'       = {k}  (full S+ or S- residue set)"),
                Err(e) => println!("K'       : unavailable ({e})"),
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let vector = match parse_vector(&args.e) {
        Ok(v) => v,
        Err(m) => return usage_error(&m),
    };
    let residues = match parse_u64_list(&args.b) {
        Ok(b) if !b.is_empty() => b,
        Ok(_) => return usage_error("--b needs at least one residue"),
        Err(m) => return usage_error(&m),
    };
    let claim = CongruenceClaim::new(vector, args.ell, residues);
    if let Err(e) = claim.validate() {
        return usage_error(&e.to_string());
    }
    let cert = match verify_with(&claim, args.depth.max(1)) {
        Ok(c) => c,
        Err(e) => return engine_error(e),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&cert).unwrap()),
        _ => print!("{}", cert.render_text()),
    }
    match cert.verdict {
        Verdict::Verified => ExitCode::SUCCESS,
        Verdict::Inconclusive if args.allow_partial => ExitCode::SUCCESS,
        Verdict::Inconclusive => {
            eprintln!("inconclusive: no theorem applies and no violation found to depth {} (use --allow-partial to accept)", cert.bound);
            ExitCode::from(1)
        }
        Verdict::Refuted => {
            let ce = cert.counterexample.expect("refuted implies counterexample");
            eprintln!(
                "refuted: p({}*{}+{}) == {} (mod {})",
                claim.ell, ce.n, ce.residue, ce.value, claim.ell
            );
            ExitCode::from(1)
        }
    }
}

fn cmd_corpus_run(args: &CorpusRunArgs) -> ExitCode {
    let entries = match parse_corpus(&args.file) {
        Ok(e) => e,
        Err(e) => return usage_error(&e.to_string()),
    };
    let (claims, warnings) = match group_claims(&entries) {
        Ok(g) => g,
        Err(e) => return usage_error(&e.to_string()),
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let report = match run_corpus(&claims, args.jobs, args.depth.max(1)) {
        Ok(r) => r,
        Err(e) => return engine_error(e),
    };
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&report).unwrap();
        if let Err(e) = std::fs::write(path, json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.summary).unwrap()),
        _ => print!("{}", report.render_table()),
    }
    if report.summary.failing {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Expand(args) => cmd_expand(args),
        Command::Asym(args) => cmd_asym(args),
        Command::Sturm(args) => cmd_sturm(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Corpus(CorpusCommand::Run(args)) => cmd_corpus_run(args),
    }
}