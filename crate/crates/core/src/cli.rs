//! Command-line front end behind the `phylo-vrmst` binary.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success, 1
//! invalid input or trees that differ, 2 a failed verification, 3 an input
//! above an oracle size guard. A path of `-` reads stdin.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::clgrouping::{clgrouping_with, ClgOptions};
use crate::error::{Error, Result};
use crate::mlvrmst::{mlvrmst_with, report, MlvrmstOptions};
use crate::model::{additive_distances, max_abs_difference, DistanceMatrix, SpanningTree, VertexRanking};
use crate::oracle::verify_properties;
use crate::simgen::{gen_balanced, gen_caterpillar, gen_random};
use crate::treeio::{parse_newick, read_edge_list, read_phylip, read_ranking, write_edge_list, write_newick, write_phylip};
use crate::vrmst::kruskal_vertex_ranked_with_tol;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

/// Environment variable holding the default tolerance.
pub const TOL_ENV: &str = "PHYLO_VRMST_TOL";

#[derive(Debug, Parser)]
#[command(name = "phylo-vrmst", version, about = "Vertex-ranked MSTs and CLGrouping reconstruction")]
struct Cli {
    /// Tolerance for tied weights, zero-length edges and tree comparison.
    #[arg(long, global = true, env = TOL_ENV, default_value_t = crate::DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Caterpillar,
    Balanced,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded tree and print it as Newick.
    Simulate {
        #[arg(long, value_enum)]
        shape: Shape,
        /// Number of taxa (a power of two for balanced trees).
        #[arg(long)]
        n: usize,
        /// Equal root-to-taxon distances (caterpillar and balanced only).
        #[arg(long)]
        clock: bool,
        /// Let internal vertices be taxa (random only).
        #[arg(long)]
        general_labels: bool,
        #[arg(long)]
        seed: u64,
    },
    /// Print the additive distances of a Newick tree as a PHYLIP matrix.
    Distances { tree: PathBuf },
    /// Print the vertex-ranked MST as a tab-separated edge list.
    Mst {
        matrix: PathBuf,
        /// File of `taxon<TAB>rank` lines.
        #[arg(long, conflicts_with = "auto")]
        ranking: Option<PathBuf>,
        /// Rank taxa by ascending id (the default).
        #[arg(long)]
        auto: bool,
    },
    /// Print the minimum-leaf vertex-ranked MST as a tab-separated edge list.
    Mlvrmst {
        matrix: PathBuf,
        /// Print delta_max, ranking, fixed and flexible edges and the laminar
        /// family before the tree.
        #[arg(long)]
        report: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Reconstruct the tree with CLGrouping and print it as Newick.
    Clgroup {
        matrix: PathBuf,
        /// `vrmst` (id-order ranking), `mlvrmst`, or an edge-list file.
        #[arg(long, default_value = "mlvrmst")]
        mst: String,
        #[arg(long)]
        parallel: bool,
        /// Zero-length contraction threshold (defaults to --tol).
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Run the brute-force checks on a matrix of at most 8 taxa.
    Verify { matrix: PathBuf },
    /// Exit 0 when two Newick trees have the same distances within --tol.
    Compare { a: PathBuf, b: PathBuf },
}

enum Outcome {
    Ok,
    Differ,
    VerifyFailed,
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn read_matrix(path: &Path) -> Result<DistanceMatrix> {
    read_phylip(&read_input(path)?)
}

fn read_tree(path: &Path) -> Result<crate::model::PhyloTree> {
    parse_newick(&read_input(path)?)
}

fn simulate(shape: Shape, n: usize, clock: bool, general_labels: bool, seed: u64) -> Result<String> {
    let tree = match shape {
        Shape::Random if clock => {
            return Err(Error::InvalidParameter("--clock applies to caterpillar and balanced trees".into()))
        }
        Shape::Caterpillar | Shape::Balanced if general_labels => {
            return Err(Error::InvalidParameter("--general-labels applies to random trees".into()))
        }
        Shape::Caterpillar => gen_caterpillar(n, clock, seed)?,
        Shape::Balanced => {
            if !n.is_power_of_two() || n < 2 {
                return Err(Error::InvalidParameter(format!(
                    "balanced trees need a power of two taxa, got {n}"
                )));
            }
            gen_balanced(n.trailing_zeros(), clock, seed)?
        }
        Shape::Random => gen_random(n, general_labels, seed)?,
    };
    Ok(write_newick(&tree))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be non-negative, got {tol}")));
    }
    let write = |out: &mut dyn Write, s: &str| {
        out.write_all(s.as_bytes())
            .map_err(|e| Error::Io(format!("cannot write output: {e}")))
    };
    match cli.command {
        Command::Simulate {
            shape,
            n,
            clock,
            general_labels,
            seed,
        } => {
            let text = simulate(shape, n, clock, general_labels, seed)?;
            write(out, &format!("{text}\n"))?;
        }
        Command::Distances { tree } => {
            write(out, &write_phylip(&additive_distances(&read_tree(&tree)?))?)?;
        }
        Command::Mst { matrix, ranking, .. } => {
            let d = read_matrix(&matrix)?;
            let r = match ranking {
                Some(path) => read_ranking(&read_input(&path)?)?,
                None => VertexRanking::by_id(d.taxa().iter().cloned())?,
            };
            write(out, &write_edge_list(&kruskal_vertex_ranked_with_tol(&d, &r, tol)?))?;
        }
        Command::Mlvrmst {
            matrix,
            report: with_report,
            parallel,
        } => {
            let d = read_matrix(&matrix)?;
            let opts = MlvrmstOptions {
                tol,
                parallel,
                ..Default::default()
            };
            let res = mlvrmst_with(&d, &opts)?;
            if with_report {
                write(out, &report(&d, &res))?;
                write(out, "\n[tree]\nu\tv\tweight\n")?;
            }
            write(out, &write_edge_list(&res.tree))?;
        }
        Command::Clgroup {
            matrix,
            mst,
            parallel,
            epsilon,
        } => {
            let d = read_matrix(&matrix)?;
            let m: SpanningTree = match mst.as_str() {
                "vrmst" => kruskal_vertex_ranked_with_tol(&d, &VertexRanking::by_id(d.taxa().iter().cloned())?, tol)?,
                "mlvrmst" => {
                    let opts = MlvrmstOptions {
                        tol,
                        parallel,
                        ..Default::default()
                    };
                    mlvrmst_with(&d, &opts)?.tree
                }
                file => read_edge_list(&read_input(Path::new(file))?, &d)?,
            };
            let opts = ClgOptions {
                epsilon: epsilon.unwrap_or(tol),
                parallel,
            };
            let rec = clgrouping_with(&d, &m, &opts)?;
            write(out, &format!("{}\n", write_newick(&rec.tree)))?;
        }
        Command::Verify { matrix } => {
            let d = read_matrix(&matrix)?;
            let checks = verify_properties(&d)?;
            let mut all = true;
            for c in &checks {
                all &= c.passed;
                let status = if c.passed { "PASS" } else { "FAIL" };
                write(out, &format!("{status}\t{}\t{}\n", c.name, c.detail))?;
            }
            if !all {
                return Ok(Outcome::VerifyFailed);
            }
        }
        Command::Compare { a, b } => {
            let (ta, tb) = (read_tree(&a)?, read_tree(&b)?);
            let diff = max_abs_difference(&additive_distances(&ta), &additive_distances(&tb))?;
            let equal = diff <= tol;
            write(
                out,
                &format!("{}\tmax_abs_difference\t{diff}\n", if equal { "equal" } else { "different" }),
            )?;
            if !equal {
                return Ok(Outcome::Differ);
            }
        }
    }
    Ok(Outcome::Ok)
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Differ) => EXIT_INVALID,
        Ok(Outcome::VerifyFailed) => EXIT_VERIFY_FAILED,
        Err(e @ Error::SizeGuard { .. }) => {
            eprintln!("error: {e}");
            EXIT_SIZE_GUARD
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}
