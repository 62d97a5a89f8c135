//! Command-line front end: every decision procedure, construction, and the
//! sweep harness, with bit-exact text I/O. Data goes to standard output,
//! diagnostics to standard error. Exit codes: 0 success, 1 domain error,
//! 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polyplex_core::covers::{
    classify_big_deficiency, cover_is_unique, deficiency, min_cover, structural_checks, CoverTable,
};
use polyplex_core::constructions::{
    gale_ryser_exists, grow_order, lift_dimension, shrink_order, split_essential_weight,
    two_value_cover, GrowVariant, YoungDiagram,
};
use polyplex_core::extremal::{is_diagonally_extremal, is_extremal};
use polyplex_core::matching::max_polyplex;
use polyplex_core::search::{
    enumerate_antipodal, enumerate_stepped, load_fixtures, run_conjecture_harness, SweepConfig,
    SweepMode, DEFAULT_SWEEP_GUARD,
};
use polyplex_core::tensor::{BinaryTensor, Index};
use polyplex_core::Rat;

#[derive(Parser)]
#[command(
    name = "polyplex",
    about = "Polyplexes and hyperplane covers of multidimensional (0,1)-matrices, exactly",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximum polyplex weight and an optimal polyplex.
    Solve { tensor_file: PathBuf },
    /// Print the minimum cover weight and an optimal cover.
    Cover { tensor_file: PathBuf },
    /// Print the deficiency (order minus maximum polyplex weight).
    Deficiency { tensor_file: PathBuf },
    /// Full extremality report: verdict, deficiency, diagonal extremality,
    /// cover uniqueness, and the structural condition battery.
    Extremal { tensor_file: PathBuf },
    /// Print the (0,1)-matrix induced by a cover table.
    Induce { cover_file: PathBuf },
    /// Generative constructions of extremal matrices and covers.
    #[command(subcommand)]
    Construct(Construct),
    /// Decide whether a (0,1)-matrix with the given row/column sums exists.
    /// Sequences are comma-separated and weakly decreasing, e.g. `2,2 2,2`.
    Galeryser { rows: String, cols: String },
    /// Run enumeration sweeps and the conjecture harness.
    Sweep(SweepArgs),
    /// Fixture corpus maintenance.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand)]
enum Construct {
    /// Lift a tensor to dimension d+1 (every new-direction hyperplane is a
    /// copy).
    Lift { tensor_file: PathBuf },
    /// Grow a cover from order n to n+1.
    #[command(subcommand)]
    Grow(Grow),
    /// Remove a unit column from a cover (inverse of `grow attach-one`).
    Shrink { cover_file: PathBuf },
    /// Build the two-value cover of a Young diagram: row counts get value
    /// 1/m. Parts are comma-separated, e.g. `1,1,1`.
    Young {
        parts: String,
        m: usize,
        d: usize,
        n: usize,
    },
    /// Split the last essential weight of an order-2 cover into dimension
    /// d+1 (deficiency is read off the cover weight).
    Split { cover_file: PathBuf },
}

#[derive(Subcommand)]
enum Grow {
    /// Duplicate the hyperplane weights through an index covered with
    /// weight exactly 1, e.g. `duplicate cover.txt 1,1,2`.
    Duplicate { cover_file: PathBuf, index: String },
    /// Attach a 1-entry to the given row and zeros elsewhere.
    AttachOne { cover_file: PathBuf, row: usize },
    /// Attach a (1-delta)-entry to `target_row` and a delta-entry to
    /// `delta_row`.
    Split {
        cover_file: PathBuf,
        target_row: usize,
        delta_row: usize,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Dimension range, `lo..hi` or a single value.
    #[arg(long = "d", default_value = "2..3")]
    d_range: String,
    /// Order range, `lo..hi` or a single value.
    #[arg(long = "n", default_value = "2..3")]
    n_range: String,
    /// Enumeration mode: stepped | antipodal | random.
    #[arg(long, default_value = "stepped")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate guard (overridden by POLYPLEX_GUARD).
    #[arg(long, default_value_t = DEFAULT_SWEEP_GUARD)]
    guard: u64,
    /// Skip the fixture corpus.
    #[arg(long)]
    no_fixtures: bool,
    /// Skip the construction-generated corpus.
    #[arg(long)]
    no_constructions: bool,
    /// Directory for counterexample witness files.
    #[arg(long)]
    witness_dir: Option<PathBuf>,
    /// Only list the enumerated classes, skip the conjecture battery.
    #[arg(long)]
    enumerate_only: bool,
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Re-derive every fixture's deficiency and optimal cover and compare
    /// them with the catalogued values.
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read_tensor(path: &PathBuf) -> polyplex_core::Result<BinaryTensor> {
    BinaryTensor::parse_text(&std::fs::read_to_string(path)?)
}

fn read_cover(path: &PathBuf) -> polyplex_core::Result<CoverTable> {
    CoverTable::parse_text(&std::fs::read_to_string(path)?)
}

fn parse_range(text: &str) -> polyplex_core::Result<(usize, usize)> {
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| polyplex_core::Error::Parse {
                line: 1,
                message: format!("bad range bound {s:?}"),
            })
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let v = parse(text)?;
            Ok((v, v))
        }
    }
}

fn parse_sequence(text: &str) -> polyplex_core::Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| polyplex_core::Error::Parse {
                    line: 1,
                    message: format!("bad sequence entry {t:?}"),
                })
        })
        .collect()
}

fn run(cli: Cli) -> polyplex_core::Result<()> {
    match cli.command {
        Command::Solve { tensor_file } => {
            let a = read_tensor(&tensor_file)?;
            let (weight, k) = max_polyplex(&a);
            println!("weight: {weight}");
            print!("{}", k.to_text());
        }
        Command::Cover { tensor_file } => {
            let a = read_tensor(&tensor_file)?;
            let (weight, cover) = min_cover(&a);
            println!("weight: {weight}");
            print!("{}", cover.to_text());
        }
        Command::Deficiency { tensor_file } => {
            let a = read_tensor(&tensor_file)?;
            println!("{}", deficiency(&a));
        }
        Command::Extremal { tensor_file } => {
            let a = read_tensor(&tensor_file)?;
            let v = is_extremal(&a);
            if v.has_polydiagonal {
                println!("not extremal: has polydiagonal");
                return Ok(());
            }
            if let Some(z) = &v.failing_zero {
                println!("not extremal: flipping zero cell {z} creates no polydiagonal");
                println!("deficiency: {}", v.deficiency);
                return Ok(());
            }
            println!("extremal");
            println!("deficiency: {}", v.deficiency);
            let diag = is_diagonally_extremal(&a)?;
            match diag.failing_zero {
                None => println!("diagonally extremal: yes"),
                Some(z) => println!("diagonally extremal: no (zero cell {z})"),
            }
            let uniq = cover_is_unique(&a);
            println!("unique optimal cover: {}", if uniq.unique { "yes" } else { "no" });
            if let Some(w) = uniq.witness {
                println!("second optimal cover:");
                print!("{}", w.to_text());
            }
            let (_, cover) = min_cover(&a);
            println!("optimal cover:");
            print!("{}", cover.to_text());
            let report = structural_checks(&a, &cover, &v.deficiency)?;
            for c in &report.checks {
                let status = if !c.applicable {
                    "n/a"
                } else if c.passed {
                    "pass"
                } else {
                    "FAIL"
                };
                match &c.detail {
                    Some(detail) => println!("check {}: {status} ({detail})", c.name),
                    None => println!("check {}: {status}", c.name),
                }
            }
            let class = classify_big_deficiency(&v.deficiency, &cover);
            println!(
                "deficiency class: {}{}",
                if class.deficiency_admissible { "admissible" } else { "IMPOSSIBLE" },
                match class.entries_in_value_class {
                    Some(true) => ", entries in the predicted value set",
                    Some(false) => ", ENTRIES OUTSIDE the predicted value set",
                    None => "",
                }
            );
        }
        Command::Induce { cover_file } => {
            let cover = read_cover(&cover_file)?;
            print!("{}", cover.induced_matrix().to_text());
        }
        Command::Construct(c) => match c {
            Construct::Lift { tensor_file } => {
                let a = read_tensor(&tensor_file)?;
                print!("{}", lift_dimension(&a).to_text());
            }
            Construct::Grow(g) => {
                let (path, variant) = match g {
                    Grow::Duplicate { cover_file, index } => {
                        (cover_file, GrowVariant::DuplicateIndex(Index::parse(&index)?))
                    }
                    Grow::AttachOne { cover_file, row } => {
                        (cover_file, GrowVariant::AttachOne { row })
                    }
                    Grow::Split {
                        cover_file,
                        target_row,
                        delta_row,
                    } => (
                        cover_file,
                        GrowVariant::AttachSplit {
                            target_row,
                            delta_row,
                        },
                    ),
                };
                let cover = read_cover(&path)?;
                print!("{}", grow_order(&cover, &variant)?.to_text());
            }
            Construct::Shrink { cover_file } => {
                let cover = read_cover(&cover_file)?;
                match shrink_order(&cover) {
                    Some(shrunk) => print!("{}", shrunk.to_text()),
                    None => {
                        return Err(polyplex_core::Error::Precondition(
                            "cover has no unit column to remove".into(),
                        ))
                    }
                }
            }
            Construct::Young { parts, m, d, n } => {
                let diagram = YoungDiagram::parse(&parts)?;
                print!("{}", two_value_cover(&diagram, m, d, n)?.to_text());
            }
            Construct::Split { cover_file } => {
                let cover = read_cover(&cover_file)?;
                let delta = Rat::from_integer(2.into()) - cover.weight();
                print!("{}", split_essential_weight(&cover, &delta)?.to_text());
            }
        },
        Command::Galeryser { rows, cols } => {
            let r = parse_sequence(&rows)?;
            let s = parse_sequence(&cols)?;
            println!("{}", if gale_ryser_exists(&r, &s)? { "yes" } else { "no" });
        }
        Command::Sweep(args) => {
            let guard = match std::env::var("POLYPLEX_GUARD") {
                Ok(v) => v.parse::<u64>().map_err(|_| polyplex_core::Error::Parse {
                    line: 1,
                    message: format!("bad POLYPLEX_GUARD value {v:?}"),
                })?,
                Err(_) => args.guard,
            };
            let mode = SweepMode::parse(&args.mode)?;
            if args.enumerate_only {
                let (d_lo, d_hi) = parse_range(&args.d_range)?;
                let (n_lo, n_hi) = parse_range(&args.n_range)?;
                for d in d_lo..=d_hi {
                    for n in n_lo..=n_hi {
                        let classes = match mode {
                            SweepMode::AntipodalOrder2 if n == 2 => {
                                enumerate_antipodal(d, args.seed, guard)?
                            }
                            SweepMode::SteppedExhaustive => enumerate_stepped(d, n, guard)?,
                            _ => continue,
                        };
                        println!("d={d} n={n}: {} classes", classes.len());
                    }
                }
                return Ok(());
            }
            let cfg = SweepConfig {
                d_range: parse_range(&args.d_range)?,
                n_range: parse_range(&args.n_range)?,
                mode,
                seed: args.seed,
                max_candidates: guard,
                include_fixtures: !args.no_fixtures,
                include_constructions: !args.no_constructions,
                max_support_for_polyplex_probes: 120,
                witness_dir: args.witness_dir,
            };
            let report = run_conjecture_harness(&cfg)?;
            print!("{}", report.render());
        }
        Command::Fixtures(FixturesCmd::Verify) => {
            let set = load_fixtures()?;
            let mut failures = 0usize;
            for f in set.core.iter().chain(std::iter::once(&set.b_order5)) {
                let delta = deficiency(&f.tensor);
                let (_, cover) = min_cover(&f.tensor);
                let ok = delta == f.deficiency && cover == f.cover;
                if !ok {
                    failures += 1;
                }
                println!(
                    "{}: {} (deficiency {})",
                    f.name,
                    if ok { "ok" } else { "MISMATCH" },
                    delta
                );
            }
            println!("auxiliary: reduced cover weight {}", set.reduced_cover.weight());
            let (w6, _) = max_polyplex(&set.six_dim);
            println!(
                "auxiliary: six-dimensional example polydiagonal weight {w6} ({})",
                if w6 == Rat::from_integer(2.into()) { "ok" } else { "MISMATCH" }
            );
            if failures > 0 || w6 != Rat::from_integer(2.into()) {
                return Err(polyplex_core::Error::Precondition(format!(
                    "{failures} fixture(s) failed re-derivation"
                )));
            }
        }
    }
    Ok(())
}
