use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lrc_core::analysis::{self, ChainReport, FlatChain, LrcParams, StructureReport};
use lrc_core::bounds::{self, BoundReport};
use lrc_core::erasure;
use lrc_core::io as docs;
use lrc_core::oracle;
use lrc_core::{constructions, Matroid, Subset};

#[derive(Parser)]
#[command(name = "lrc", version = version_string(), about = "Matroid tools for locally repairable codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn version_string() -> &'static str {
    concat!(env!("CARGO_PKG_VERSION"), " (document schema 1)")
}

#[derive(Subcommand)]
enum Command {
    /// Build a matroid and print it as a document.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Parameters, locality and optimality of a matroid document.
    Analyze {
        /// Matroid document, or `-` for standard input.
        input: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Singleton bound, lower bounds and achievability for one tuple.
    Bounds(TupleArgs),
    /// Bounds table over every valid tuple up to a size.
    Sweep {
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        /// Build and check witnesses up to this size; larger tuples are classified by rule.
        #[arg(long, default_value_t = 12)]
        build_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Erasure-channel simulation over a matroid document.
    Simulate {
        input: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 10000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Enumerate every pattern instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, requires = "exhaustive")]
        max_erasures: Option<usize>,
    },
    /// Brute-force cross-checks.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
    /// Codes given by their codewords.
    Code {
        #[command(subcommand)]
        kind: CodeKind,
    },
}

#[derive(Args)]
struct TupleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    delta: usize,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Shared-core construction for ⌈k/r⌉ = 2, b > a.
    SharedCore(TupleArgs),
    /// Graph instance realizing the improved lower bound.
    ImprovedBound(TupleArgs),
    /// Atoms and overlaps from a construction-graph document.
    Graph { input: String },
    /// Atoms with ranks from an atoms document.
    Atoms {
        input: String,
        /// Require the restricted-intersection conditions.
        #[arg(long)]
        restricted: bool,
    },
    /// The uniform matroid U_{n,k}.
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum OracleKind {
    /// Compare ranks, d and optionally locality against brute force.
    Verify {
        input: String,
        #[arg(long, requires = "delta")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        delta: Option<usize>,
    },
    /// Best d over all restricted-intersection atom layouts (n <= 10).
    Exhaust {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Number of atoms; every feasible count when omitted.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CodeKind {
    /// The matroid induced by an almost affine code, as a rank table.
    Induce { input: String },
    /// Minimum Hamming distance of a code.
    Distance { input: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_matroid(path: &str) -> Result<Matroid> {
    Ok(docs::read_matroid(&read_input(path)?)?)
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    k: usize,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    locality: Option<LocalityReport>,
}

#[derive(Serialize)]
struct LocalityReport {
    r: usize,
    delta: usize,
    has_locality: bool,
    #[serde(serialize_with = "docs::ser_subsets")]
    cover: Vec<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<LrcParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    singleton: Option<usize>,
    achieves: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<FlatChain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain_checks: Option<ChainReport>,
}

fn analyze(m: &Matroid, r: Option<usize>, delta: Option<usize>) -> Result<Analysis> {
    let basic = analysis::params_from_matroid(m)?;
    let locality = match (r, delta) {
        (None, None) => None,
        (Some(r), Some(delta)) => Some(locality_report(m, basic.k, r, delta)?),
        _ => bail!("--r and --delta must be given together"),
    };
    Ok(Analysis {
        n: basic.n,
        k: basic.k,
        d: basic.d,
        locality,
    })
}

fn locality_report(m: &Matroid, k: usize, r: usize, delta: usize) -> Result<LocalityReport> {
    let Some(cover) = analysis::has_locality(m, r, delta) else {
        return Ok(LocalityReport {
            r,
            delta,
            has_locality: false,
            cover: vec![],
            params: None,
            singleton: None,
            achieves: false,
            structure: None,
            chain: None,
            chain_checks: None,
        });
    };
    let params = analysis::lrc_params(m, r, delta)?;
    let singleton = analysis::singleton_bound(params.n, params.k, r, delta).ok();
    let achieves = singleton == Some(params.d);
    let structure = if r < k {
        Some(analysis::check_structure_theorem(m, &cover)?)
    } else {
        None
    };
    let chain = analysis::find_locality_chain(m, &cover).ok();
    let chain_checks = match &chain {
        Some(c) => Some(analysis::check_chain_inequalities(m, c, r, delta)?),
        None => None,
    };
    Ok(LocalityReport {
        r,
        delta,
        has_locality: true,
        cover: cover.distinct_sets(),
        params: Some(params),
        singleton,
        achieves,
        structure,
        chain,
        chain_checks,
    })
}

fn emit(out: &mut impl Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Construct { kind } => {
            let m = match kind {
                ConstructKind::SharedCore(t) => {
                    constructions::theorem11_construction(t.n, t.k, t.r, t.delta)?.matroid
                }
                ConstructKind::ImprovedBound(t) => {
                    bounds::theorem14_construction(t.n, t.k, t.r, t.delta)?.matroid
                }
                ConstructKind::Graph { input } => {
                    let g = docs::read_graph(&read_input(&input)?)?;
                    constructions::graph_construction(&g)?.0.matroid
                }
                ConstructKind::Atoms { input, restricted } => {
                    let a = docs::read_atoms(&read_input(&input)?)?;
                    let built = if restricted {
                        constructions::theorem9(a.n, &a.atoms, a.k)?
                    } else {
                        constructions::construction1(a.n, &a.atoms, a.k)?
                    };
                    built.matroid
                }
                ConstructKind::Uniform { n, k } => Matroid::uniform(n, k)?,
            };
            emit(&mut out, &docs::write_matroid(&m))
        }
        Command::Analyze { input, r, delta } => {
            let m = load_matroid(&input)?;
            emit(&mut out, &docs::write_report(&analyze(&m, r, delta)?))
        }
        Command::Bounds(t) => {
            let rep: BoundReport = bounds::classify_achievability(t.n, t.k, t.r, t.delta)?;
            emit(&mut out, &docs::write_report(&rep))
        }
        Command::Sweep {
            nmax,
            build_max,
            format,
        } => {
            let rows = bounds::sweep(nmax, build_max)?;
            match format {
                Format::Json => emit(&mut out, &docs::write_report(&rows)),
                Format::Csv => {
                    writeln!(out, "{}", bounds::SweepRow::CSV_HEADER)?;
                    for row in &rows {
                        writeln!(out, "{}", row.to_csv())?;
                    }
                    Ok(())
                }
            }
        }
        Command::Simulate {
            input,
            r,
            delta,
            p,
            trials,
            seed,
            exhaustive,
            max_erasures,
        } => {
            let m = load_matroid(&input)?;
            let cover = analysis::has_locality(&m, r, delta)
                .with_context(|| format!("matroid has no ({r}, {delta}) locality"))?;
            if exhaustive {
                let t = max_erasures.unwrap_or(m.n());
                emit(&mut out, &docs::write_report(&erasure::exhaustive(&m, &cover, t)))
            } else {
                let Some(seed) = seed else {
                    bail!("sampling needs an explicit --seed");
                };
                let stats = erasure::monte_carlo(&m, &cover, p, trials, seed)?;
                emit(&mut out, &docs::write_report(&stats))
            }
        }
        Command::Oracle { kind } => match kind {
            OracleKind::Verify { input, r, delta } => {
                let m = load_matroid(&input)?;
                let verdicts = oracle::verify(&m, r.zip(delta))?;
                emit(&mut out, &docs::write_report(&verdicts))?;
                if verdicts.iter().any(|v| !v.agrees) {
                    bail!("oracle disagreement");
                }
                Ok(())
            }
            OracleKind::Exhaust { tuple: t, m } => {
                let res = oracle::exhaust_theorem9_layouts(t.n, t.k, t.r, t.delta, m)?;
                emit(&mut out, &docs::write_report(&res))
            }
        },
        Command::Code { kind } => match kind {
            CodeKind::Induce { input } => {
                let code = docs::read_code(&read_input(&input)?)?;
                emit(&mut out, &docs::write_matroid(&code.induce_matroid()?))
            }
            CodeKind::Distance { input } => {
                let code = docs::read_code(&read_input(&input)?)?;
                let d = code.min_distance()?;
                emit(&mut out, &format!("{{\"d\":{d}}}\n"))
            }
        },
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
