//! `yanglab`: validity verdicts, template expansion, chain verification,
//! complex enumeration, and index-bound tables from the command line.
//!
//! Exit codes: 0 valid/pass, 1 invalid/fail, 2 unresolved, 64 parse or
//! usage error, 70 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use yang_lab::bounds::{self, Family, TableFormat};
use yang_lab::chain::{self, Chain, Mode};
use yang_lab::complex::{self, EnumerateOptions};
use yang_lab::matrix::{ChainTemplate, SignedMatrix};
use yang_lab::validity::{self, CertifyOptions, Verdict};

const EXIT_UNRESOLVED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "yanglab", version, about = "Exact index combinatorics for frames and oriented planes")]
struct Cli {
    /// Seed for any randomized subroutine; fixed for reproducible runs.
    #[arg(long, global = true, default_value_t = 0x5EED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Stiefel,
    Grassmann,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Stiefel => Mode::Stiefel,
            ModeArg::Grassmann => Mode::Grassmann,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct EngineArgs {
    /// Subdivision depth cap for the positivity certifier.
    #[arg(long, default_value_t = 12)]
    max_depth: u32,
    /// Number of b directions sampled by the exact feasibility search.
    #[arg(long, default_value_t = 512)]
    b_samples: usize,
}

impl EngineArgs {
    fn certify(&self) -> CertifyOptions {
        CertifyOptions {
            max_depth: self.max_depth,
            b_samples: self.b_samples,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a sign matrix is valid.
    Validate {
        /// Matrix in the text grammar, e.g. "1 1 ; 2 3".
        matrix: String,
        #[arg(long)]
        n: u32,
        /// Expected row count (checked against the parsed matrix if given).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Expand a chain template, e.g. "1 1 ; ~2 ~3".
    Expand {
        template: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Stiefel)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Verify a named or file-based chain: face validity, invariance,
    /// vanishing boundary, and the index bit.
    Verify {
        #[arg(long, conflicts_with = "file")]
        named: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Stiefel)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Print a named chain, either expanded or as template summands.
    Chain {
        #[arg(long)]
        named: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Stiefel)]
        mode: ModeArg,
        /// Print the template summands instead of the expanded faces.
        #[arg(long)]
        templates: bool,
    },
    /// Enumerate the complex of valid faces and scan for its index.
    Complex {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_dim: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Stiefel)]
        mode: ModeArg,
        /// Cap on the face count of any single dimension.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        no_cache: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Print the witness chain, one face per line.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Invariant cycle space of the complex at one dimension.
    Homology {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Stiefel)]
        mode: ModeArg,
        #[arg(long)]
        no_cache: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Print each basis chain.
        #[arg(long)]
        chains: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Emit the interval table for one family, optionally diffed against
    /// the embedded reference tables.
    Bounds {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 9)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = BoundsFormat::Md)]
        format: BoundsFormat,
        #[arg(long)]
        diff: bool,
        /// Base fact ids to remove (repeatable).
        #[arg(long)]
        drop_fact: Vec<String>,
        /// JSON file of extra assertions to inject.
        #[arg(long)]
        inject_facts: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    G,
    St,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsFormat {
    Md,
    Csv,
    Json,
}

fn usage_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn internal_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INTERNAL)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate {
            matrix,
            n,
            k,
            format,
            engine,
        } => cmd_validate(&matrix, n, k, format, engine.certify()),
        Command::Expand {
            template,
            n,
            mode,
            format,
        } => cmd_expand(&template, n, mode.into(), format),
        Command::Verify {
            named,
            file,
            n,
            k,
            mode,
            format,
            engine,
        } => cmd_verify(named, file, n, k, mode.into(), format, engine.certify()),
        Command::Chain {
            named,
            n,
            k,
            mode,
            templates,
        } => cmd_chain(&named, n, k, mode.into(), templates),
        Command::Complex {
            n,
            k,
            max_dim,
            mode,
            budget,
            no_cache,
            cache_dir,
            witness,
            format,
            engine,
        } => cmd_complex(
            n,
            k,
            max_dim,
            mode.into(),
            budget,
            no_cache,
            cache_dir,
            witness,
            format,
            engine.certify(),
        ),
        Command::Homology {
            n,
            k,
            dim,
            mode,
            no_cache,
            cache_dir,
            chains,
            engine,
        } => cmd_homology(
            n,
            k,
            dim,
            mode.into(),
            no_cache,
            cache_dir,
            chains,
            engine.certify(),
        ),
        Command::Bounds {
            family,
            max_n,
            format,
            diff,
            drop_fact,
            inject_facts,
        } => cmd_bounds(family, max_n, format, diff, drop_fact, inject_facts),
    }
}

fn cmd_validate(
    matrix: &str,
    n: u32,
    k: Option<usize>,
    format: OutputFormat,
    certify: CertifyOptions,
) -> ExitCode {
    let a = match SignedMatrix::parse(matrix, n) {
        Ok(a) => a,
        Err(e) => return usage_err(e),
    };
    if let Some(k) = k {
        if a.k() != k {
            return usage_err(format!("matrix has {} rows, expected {k}", a.k()));
        }
    }
    let verdict = match validity::decide_validity(&a, certify) {
        Ok(v) => v,
        Err(e) => return usage_err(e),
    };
    match format {
        OutputFormat::Json => println!("{}", validity::verdict_to_json(&verdict)),
        OutputFormat::Text => match &verdict {
            Verdict::Valid(Some(cert)) => println!(
                "valid (positivity certificate: {} cells, depth {}, degree {})",
                cert.cells, cert.depth, cert.degree
            ),
            Verdict::Valid(None) => println!("valid"),
            Verdict::Invalid(w) => println!("invalid ({w:?})"),
            Verdict::Unresolved { depth } => println!("unresolved at depth {depth}"),
        },
    }
    match verdict {
        Verdict::Valid(_) => ExitCode::SUCCESS,
        Verdict::Invalid(_) => ExitCode::FAILURE,
        Verdict::Unresolved { .. } => ExitCode::from(EXIT_UNRESOLVED),
    }
}

fn cmd_expand(template: &str, n: u32, mode: Mode, format: OutputFormat) -> ExitCode {
    let t = match ChainTemplate::parse(template, n) {
        Ok(t) => t,
        Err(e) => return usage_err(e),
    };
    let c = match yang_lab::matrix::expand_template(&t, mode, chain::validity_oracle) {
        Ok(c) => c,
        Err(e) => return internal_err(e),
    };
    match format {
        OutputFormat::Text => print!("{}", c.to_lines()),
        OutputFormat::Json => {
            for f in c.faces() {
                println!("{}", json!(f.matrix().to_string()));
            }
        }
    }
    ExitCode::SUCCESS
}

fn build_chain(
    named: Option<String>,
    file: Option<PathBuf>,
    n: u32,
    k: usize,
    mode: Mode,
) -> Result<Chain, String> {
    match (named, file) {
        (Some(name), None) => {
            chain::expand_named(&name, n, k, mode).map_err(|e| e.to_string())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            chain::chain_from_text(&text, n, mode).map_err(|e| e.to_string())
        }
        _ => Err("exactly one of --named and --file is required".into()),
    }
}

fn cmd_verify(
    named: Option<String>,
    file: Option<PathBuf>,
    n: u32,
    k: usize,
    mode: Mode,
    format: OutputFormat,
    certify: CertifyOptions,
) -> ExitCode {
    let c = match build_chain(named, file, n, k, mode) {
        Ok(c) => c,
        Err(e) => return usage_err(e),
    };
    let report = complex::verify_chain_report(&c, certify);
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        OutputFormat::Text => {
            println!("faces: {}", report.faces);
            println!(
                "all faces valid: {}",
                report.invalid_faces.is_empty() && report.unresolved_faces.is_empty()
            );
            for f in &report.invalid_faces {
                println!("  invalid: {f}");
            }
            for f in &report.unresolved_faces {
                println!("  unresolved: {f}");
            }
            println!("tau-invariant: {}", report.tau_invariant);
            println!("boundary zero: {}", report.boundary_zero);
            match report.nu {
                Some(nu) => println!("nu: {nu}"),
                None => println!("nu: (not computed)"),
            }
            println!("result: {}", if report.pass { "pass" } else { "fail" });
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_chain(named: &str, n: u32, k: usize, mode: Mode, templates: bool) -> ExitCode {
    if templates {
        match chain::build_named_chain(named, n, k) {
            Ok(ts) => {
                for t in ts {
                    println!("{t}");
                }
                ExitCode::SUCCESS
            }
            Err(e) => usage_err(e),
        }
    } else {
        match chain::expand_named(named, n, k, mode) {
            Ok(c) => {
                print!("{}", c.to_lines());
                ExitCode::SUCCESS
            }
            Err(e) => usage_err(e),
        }
    }
}

fn load_complex(
    n: u32,
    k: usize,
    max_dim: usize,
    mode: Mode,
    budget: Option<usize>,
    no_cache: bool,
    cache_dir: Option<PathBuf>,
    certify: CertifyOptions,
) -> Result<complex::ValidComplex, complex::ComplexError> {
    let opts = EnumerateOptions {
        certify,
        face_budget: budget,
    };
    let dir = if no_cache {
        None
    } else {
        Some(cache_dir.unwrap_or_else(complex::default_cache_dir))
    };
    complex::enumerate_cached(n, k, max_dim, mode, opts, dir.as_deref())
}

#[allow(clippy::too_many_arguments)]
fn cmd_complex(
    n: u32,
    k: usize,
    max_dim: usize,
    mode: Mode,
    budget: Option<usize>,
    no_cache: bool,
    cache_dir: Option<PathBuf>,
    witness: bool,
    format: OutputFormat,
    certify: CertifyOptions,
) -> ExitCode {
    let c = match load_complex(n, k, max_dim, mode, budget, no_cache, cache_dir, certify) {
        Ok(c) => c,
        Err(e) => return internal_err(e),
    };
    let report = complex::yang_index_of_complex(&c);
    match format {
        OutputFormat::Json => {
            let faces: Vec<usize> = (0..=max_dim).map(|m| c.faces(m).len()).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "n": n,
                    "k": k,
                    "mode": mode.to_string(),
                    "max_dim": max_dim,
                    "faces_by_dim": faces,
                    "unresolved_by_dim": c.unresolved(),
                    "index": report.index,
                    "witness": report.witness.as_ref().map(|w| w.to_lines()),
                }))
                .expect("json")
            );
        }
        OutputFormat::Text => {
            for m in 0..=max_dim {
                println!(
                    "dim {m}: {} faces, {} unresolved",
                    c.faces(m).len(),
                    c.unresolved()[m]
                );
            }
            match report.index {
                Some(m) => println!("index >= {m} (within max_dim {max_dim})"),
                None => println!("no invariant cycle with nonzero index found"),
            }
            if witness {
                if let Some(w) = &report.witness {
                    print!("{}", w.to_lines());
                }
            }
        }
    }
    ExitCode::SUCCESS
}

#[allow(clippy::too_many_arguments)]
fn cmd_homology(
    n: u32,
    k: usize,
    dim: usize,
    mode: Mode,
    no_cache: bool,
    cache_dir: Option<PathBuf>,
    chains: bool,
    certify: CertifyOptions,
) -> ExitCode {
    let c = match load_complex(n, k, dim, mode, None, no_cache, cache_dir, certify) {
        Ok(c) => c,
        Err(e) => return internal_err(e),
    };
    let basis = complex::invariant_cycle_basis(&c, dim);
    println!("invariant cycle space at dim {dim}: rank {}", basis.chains.len());
    if chains {
        for (i, b) in basis.chains.iter().enumerate() {
            println!("# basis {i} ({} faces)", b.len());
            print!("{}", b.to_lines());
        }
    }
    ExitCode::SUCCESS
}

fn cmd_bounds(
    family: FamilyArg,
    max_n: u32,
    format: BoundsFormat,
    diff: bool,
    drop_fact: Vec<String>,
    inject_facts: Option<PathBuf>,
) -> ExitCode {
    let injected = match inject_facts {
        None => Vec::new(),
        Some(path) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return usage_err(e),
            };
            match bounds::parse_injected_facts(&text) {
                Ok(f) => f,
                Err(e) => return usage_err(e),
            }
        }
    };
    let table = match bounds::solve(max_n, &drop_fact, &injected, None) {
        Ok(t) => t,
        Err(e) => return internal_err(e),
    };
    let family = match family {
        FamilyArg::G => Family::G,
        FamilyArg::St => Family::St,
    };
    let format = match format {
        BoundsFormat::Md => TableFormat::Markdown,
        BoundsFormat::Csv => TableFormat::Csv,
        BoundsFormat::Json => TableFormat::Json,
    };
    print!("{}", bounds::emit_table(&table, family, format));
    if diff {
        let diffs = bounds::diff_against_reference(&table);
        if diffs.is_empty() {
            println!("diff: empty");
            ExitCode::SUCCESS
        } else {
            for d in &diffs {
                println!(
                    "diff: {} expected {}:{} got {}:{} ({:?})",
                    d.space, d.expected.0, d.expected.1, d.got.0, d.got.1, d.provenance
                );
            }
            ExitCode::FAILURE
        }
    } else {
        ExitCode::SUCCESS
    }
}
