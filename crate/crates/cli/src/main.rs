use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pauli_ovoid::config::{self, FigureParams};
use pauli_ovoid::gf2::standard_to_edge;
use pauli_ovoid::oracle::{cross_check, ProductCoverage};
use pauli_ovoid::pauli::{point_to_word, GeometryContext};
use pauli_ovoid::polar::structure::{partitions, tetrad_of_partition, tetrads_of_all};
use pauli_ovoid::polar::{conwell_heptads_q5, SpaceKind};
use pauli_ovoid::verify::{self, Level, VerifyOptions};
use pauli_ovoid::{atlas, GeomError};

#[derive(Parser)]
#[command(name = "pauli-ovoid", version, about = "Ovoids of Q+(7,2) and the real four-qubit Pauli group")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Ovoids,
    Generators,
    Tetrads,
    Heptads,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Symplectic,
    Quadric,
}

#[derive(Subcommand)]
enum Command {
    /// Run the count table and report pass/fail per check.
    Verify {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
        n: u8,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Check every product pair instead of a seeded sample.
        #[arg(long)]
        exhaustive_oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Leave out the elapsed-time column.
        #[arg(long)]
        no_timings: bool,
    },
    /// Stream enumerated objects, one JSON value per line.
    Enumerate {
        #[arg(value_enum)]
        what: Target,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
        n: u8,
        /// Keep only objects containing this point (word or coordinates).
        #[arg(long)]
        through_point: Option<String>,
        #[arg(long, value_enum, default_value_t = Space::Quadric)]
        space: Space,
        /// Tetrads: collapse repeats across ovoids and partitions.
        #[arg(long)]
        dedup: bool,
    },
    /// Extract a named configuration.
    Config {
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// DOT: draw each line as its own node.
        #[arg(long)]
        subdivide: bool,
        /// Nine comma-separated points, or Ostar.
        #[arg(long)]
        ovoid: Option<String>,
        /// Three triples, e.g. "A,B,C;D,E,F;G,H,I".
        #[arg(long)]
        partition: Option<String>,
        /// Comma-separated ovoid points (triple, quadruple, pentad or sextet).
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        nucleus: Option<String>,
        /// Comma-separated pairs, e.g. "ZZIZ-IXXZ".
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        element: Option<String>,
    },
    /// Convert between a word and its coordinates.
    Map {
        token: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        n: Option<u8>,
    },
    /// Compare the matrix oracle with the symplectic codec.
    OracleCheck {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
        n: u8,
        #[arg(long)]
        exhaustive: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Consistency(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("global pool is configured once");
    }
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    let result = run(cli.command, &mut out).and_then(|ok| {
        out.flush()?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether everything checked passed.
fn run(command: Command, out: &mut impl Write) -> Result<bool, Failure> {
    match command {
        Command::Verify {
            n,
            level,
            exhaustive_oracle,
            format,
            no_timings,
        } => {
            let options = VerifyOptions {
                level: match level {
                    LevelArg::Quick => Level::Quick,
                    LevelArg::Full => Level::Full,
                },
                product: if exhaustive_oracle {
                    ProductCoverage::Exhaustive
                } else {
                    ProductCoverage::default()
                },
            };
            let report = verify::run(n as usize, options)?;
            match format {
                Format::Json => writeln!(out, "{}", report.to_json(!no_timings))?,
                Format::Text => write!(out, "{}", report.to_text(!no_timings))?,
                Format::Dot => return Err(Failure::Usage("verify prints text or json".into())),
            }
            Ok(report.passed())
        }
        Command::Enumerate {
            what,
            n,
            through_point,
            space,
            dedup,
        } => {
            enumerate(what, n as usize, through_point.as_deref(), space, dedup, out)?;
            Ok(true)
        }
        Command::Config {
            name,
            format,
            subdivide,
            ovoid,
            partition,
            subset,
            point,
            nucleus,
            pairs,
            element,
        } => {
            let params = FigureParams {
                ovoid,
                partition,
                subset,
                point,
                nucleus,
                pairs,
                element,
            };
            let report = config::build(&name, &params)?;
            match format {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Text => write!(out, "{}", report.to_text())?,
                Format::Dot => write!(out, "{}", report.to_dot(subdivide))?,
            }
            Ok(true)
        }
        Command::Map { token, n } => {
            map(&token, n.map(usize::from), out)?;
            Ok(true)
        }
        Command::OracleCheck { n, exhaustive } => {
            let ctx = GeometryContext::new(n as usize)?;
            let coverage = if exhaustive {
                ProductCoverage::Exhaustive
            } else {
                ProductCoverage::default()
            };
            let a = cross_check(&ctx, coverage);
            writeln!(
                out,
                "N={}: symmetry {}/{} mismatches, commutation {}/{}, products {}/{} (sign-class failures {})",
                a.n_qubits,
                a.symmetry_mismatches,
                a.symmetry_checked,
                a.commutation_mismatches,
                a.commutation_checked,
                a.product_mismatches,
                a.product_checked,
                a.homomorphism_failures
            )?;
            Ok(a.passed())
        }
    }
}

fn enumerate(
    what: Target,
    n: usize,
    through: Option<&str>,
    space: Space,
    dedup: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let n = match what {
        Target::Ovoids | Target::Tetrads if n != 4 => {
            return Err(Failure::Usage("ovoids and tetrads need --n 4".into()))
        }
        Target::Heptads => 3,
        _ => n,
    };
    let ctx = GeometryContext::new(n)?;
    let filter = through.map(|s| ctx.parse_point(s)).transpose()?;
    match what {
        Target::Ovoids => {
            for o in atlas::ovoids()? {
                if filter.map_or(true, |p| o.contains(p)) {
                    writeln!(out, "{}", serde_json::to_string(o).expect("serializes"))?;
                }
            }
        }
        Target::Generators => {
            let kind = match space {
                Space::Symplectic => SpaceKind::Symplectic,
                Space::Quadric => SpaceKind::Hyperbolic,
            };
            let gens = atlas::generators(&ctx, kind)?;
            for (i, g) in gens.generators().iter().enumerate() {
                if filter.map_or(false, |p| !g.contains(p)) {
                    continue;
                }
                let mut row = json!({ "basis": g });
                if let Some(f) = gens.families() {
                    row["family"] = json!(f[i]);
                }
                writeln!(out, "{row}")?;
            }
        }
        Target::Tetrads => {
            let all = atlas::ovoids()?;
            let keep = |lines: &[pauli_ovoid::Line; 4]| {
                filter.map_or(true, |p| lines.iter().any(|l| l.contains(p)))
            };
            let words = |lines: &[pauli_ovoid::Line; 4]| {
                lines
                    .iter()
                    .map(|l| {
                        l.points()
                            .iter()
                            .map(|&p| point_to_word(p).map(|w| w.to_string()).unwrap_or_default())
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            };
            if dedup {
                let (tetrads, _) = tetrads_of_all(&ctx, all)?;
                for t in tetrads.iter().filter(|t| keep(t)) {
                    writeln!(out, "{}", json!(words(t)))?;
                }
            } else {
                for (i, o) in all.iter().enumerate() {
                    for p in partitions(o) {
                        let t = tetrad_of_partition(&ctx, o, &p)?.lines();
                        if keep(&t) {
                            writeln!(out, "{}", json!({"ovoid": i, "lines": words(&t)}))?;
                        }
                    }
                }
            }
        }
        Target::Heptads => {
            for h in conwell_heptads_q5(&ctx)? {
                if filter.map_or(false, |p| !h.contains(p.bits())) {
                    continue;
                }
                let words: Vec<String> = h
                    .vectors(ctx.dim())
                    .iter()
                    .map(|&p| point_to_word(p).map(|w| w.to_string()).unwrap_or_default())
                    .collect();
                writeln!(out, "{}", json!(words))?;
            }
        }
    }
    Ok(())
}

fn map(token: &str, n: Option<usize>, out: &mut impl Write) -> Result<(), Failure> {
    let is_bits = token.chars().all(|c| c == '0' || c == '1');
    let n = match n {
        Some(n) => n,
        None if is_bits && token.len() % 2 == 0 => token.len() / 2,
        None => token.chars().filter(|c| !c.is_whitespace() && *c != '⊗').count(),
    };
    if !(2..=4).contains(&n) {
        return Err(Failure::Usage(format!(
            "cannot read {token:?} as a word or coordinate string for 2 to 4 qubits"
        )));
    }
    let ctx = GeometryContext::new(n)?;
    let p = ctx.parse_point(token)?;
    let word = point_to_word(p)?;
    writeln!(out, "word:   {word}")?;
    writeln!(out, "coords: {p}")?;
    writeln!(out, "class:  {}", word.class())?;
    if n == 4 {
        writeln!(out, "edge:   {}", standard_to_edge(p)?)?;
    }
    Ok(())
}
