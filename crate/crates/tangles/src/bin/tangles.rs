//! Command-line front end for the separation-system toolkit.
//!
//! Subcommands:
//!   width {tw|pw|bw|cw|rw|mtw} <input>   print the parameter, emit its certificate
//!   tangle <family> <k> <input>          search for a tangle of S_k
//!   tree <family> <k> <input>            search for a tree over the family on S_k
//!   duality <family> <k> <input>         decide which dual certificate exists
//!   cluster <image> <k>                  coherent region vs laminar segmentation
//!   selftest                             exercise exactness on seeded random graphs
//!
//! Graph inputs are JSON (`{"n": 4, "edges": [[0,1], ...]}`) or `u v` edge
//! lines; matroid inputs are JSON recipes (`graphic`, `gf2`, `uniform`);
//! cluster inputs are PGM images (P2 or P5).  The first stdout line is the
//! human-readable answer; the certificate follows as JSON, or as DOT with
//! `--format dot` when the certificate is a tree (results without a tree
//! fall back to JSON).  `--out` redirects the certificate to a file.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 search cap
//! exceeded.  Exit code 4 reports a violated internal invariant — both or
//! neither dual certificate found — which cannot occur on valid inputs
//! and always indicates a bug worth reporting.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tangles::cluster::{cluster, ClusterVerdict, PixelGrid};
use tangles::duality::{find_stree, find_tangle, verify_duality, Outcome};
use tangles::family::{BagFamily, Family};
use tangles::graph::{cover_star_family, vertex_separations, Graph};
use tangles::io::{
    cluster_verdict_to_json, graph_from_text, matroid_recipe_from_json, orientation_to_json,
    stree_to_dot, stree_to_json, verdict_to_json, width_to_json,
};
use tangles::matroid::{matroid_lambda, matroid_norm_family, matroid_treewidth, Matroid};
use tangles::sep::SepSystem;
use tangles::setsep::{
    carving_width, edge_cut_order, rank_order, rank_width, set_cover_star_family,
};
use tangles::stree::STree;
use tangles::widths::{branchwidth, pathwidth, treewidth, Witness};
use tangles::{Error, Result};

/// Everything here is exponential by design; these caps keep accidental
/// large inputs from looking like a hang.  `--allow-large` lifts them up
/// to the library's hard limits.
const GRAPH_CAP: usize = 8;
const GROUND_CAP: usize = 16;

#[derive(Parser)]
#[command(
    name = "tangles",
    version,
    about = "Exact width parameters and tangle/tree duality certificates at desk scale"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Certificate format; `dot` applies to tree certificates and falls
    /// back to JSON when the result has no tree.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the certificate to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Node cap for tree searches; exceeding it exits with code 3.
    #[arg(long, global = true, default_value_t = 10_000, value_name = "N")]
    max_nodes: usize,

    /// Seed for the random instances of `selftest`.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Lift the default size caps (8 vertices for graph separation
    /// systems, 16 elements for bipartition grounds), accepting the
    /// exponential cost.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a width parameter of a graph or matroid exactly.
    Width {
        parameter: FamilyName,
        /// Graph (JSON or edge list), or matroid JSON for `mtw`.
        input: PathBuf,
    },
    /// Search for a tangle: a consistent orientation of S_k avoiding the
    /// family.  Prints `tangle` and the orientation, or `none`.
    Tangle {
        family: FamilyName,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        input: PathBuf,
    },
    /// Search for a tree over the family on S_k.  Prints `tree` and the
    /// tree, or `none`.
    Tree {
        family: FamilyName,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        input: PathBuf,
    },
    /// Run both searches and report which dual certificate exists
    /// (exactly one always does).  Prints `tangle` or `tree`.
    Duality {
        family: FamilyName,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        input: PathBuf,
    },
    /// Decide whether a PGM image has a coherent region of cut cost ≥ k
    /// or a laminar set of cheaper splitting lines.
    Cluster {
        image: PathBuf,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// Generate seeded random graphs and check that every duality is
    /// exact and the standard width inequalities hold.
    Selftest {
        /// How many random instances to run.
        #[arg(long, default_value_t = 12, value_name = "N")]
        count: u32,
    },
}

/// One name covers both the width parameter and its defining family:
/// tw/pw are the bag families on vertex separations, bw the cover stars,
/// cw/rw the set cover stars over edge-cut and cut-rank orders, mtw the
/// connectivity-norm family of a matroid.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Tw,
    Pw,
    Bw,
    Cw,
    Rw,
    Mtw,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) | Error::Domain(_) => 2,
                Error::CapExceeded(_) => 3,
                Error::Duality(_) => 4,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Width { parameter, input } => cmd_width(cli, *parameter, input),
        Command::Tangle { family, k, input } => cmd_tangle(cli, *family, *k, input),
        Command::Tree { family, k, input } => cmd_tree(cli, *family, *k, input),
        Command::Duality { family, k, input } => cmd_duality(cli, *family, *k, input),
        Command::Cluster { image, k } => cmd_cluster(cli, image, *k),
        Command::Selftest { count } => cmd_selftest(cli, *count),
    }
}

// ---------------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------------

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn check_cap(cli: &Cli, what: &str, size: usize, cap: usize) -> Result<()> {
    if !cli.allow_large && size > cap {
        return Err(Error::Input(format!(
            "{what} has {size} elements, over the default cap of {cap}; \
             rerun with --allow-large to accept the exponential cost"
        )));
    }
    Ok(())
}

fn load_graph(cli: &Cli, path: &Path, cap: usize) -> Result<Graph> {
    let g = graph_from_text(&read_text(path)?)?;
    check_cap(cli, "the graph", g.n(), cap)?;
    Ok(g)
}

fn load_matroid(cli: &Cli, path: &Path) -> Result<Matroid> {
    let m = matroid_recipe_from_json(&read_text(path)?)?.build()?;
    check_cap(cli, "the matroid ground set", m.n(), GROUND_CAP)?;
    Ok(m)
}

/// The separation system and family a name denotes on the given input.
struct Arena {
    sys: SepSystem,
    fam: Box<dyn Family>,
}

fn build_arena(cli: &Cli, name: FamilyName, k: u32, input: &Path) -> Result<Arena> {
    match name {
        FamilyName::Tw | FamilyName::Pw | FamilyName::Bw => {
            let g = load_graph(cli, input, GRAPH_CAP)?;
            let fam: Box<dyn Family> = match name {
                FamilyName::Tw => Box::new(BagFamily::tree(g.n(), k)),
                FamilyName::Pw => Box::new(BagFamily::path(g.n(), k)),
                _ => Box::new(cover_star_family(&g)?),
            };
            Ok(Arena {
                sys: vertex_separations(&g, k),
                fam,
            })
        }
        FamilyName::Cw | FamilyName::Rw => {
            let g = load_graph(cli, input, GROUND_CAP)?;
            let u = if name == FamilyName::Cw {
                edge_cut_order(&g)?
            } else {
                rank_order(&g)?
            };
            Ok(Arena {
                sys: SepSystem::below(&u, k),
                fam: Box::new(set_cover_star_family(g.n())?),
            })
        }
        FamilyName::Mtw => {
            let m = load_matroid(cli, input)?;
            let u = matroid_lambda(&m)?;
            Ok(Arena {
                sys: SepSystem::below(&u, k),
                fam: Box::new(matroid_norm_family(&m, k)),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

/// Print a line to stdout, exiting quietly when the consumer has closed
/// the pipe (e.g. `tangles ... | head -1`).
fn say(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

/// Print the headline answer, then deliver the certificate: DOT of the
/// tree when requested and available, JSON otherwise, to --out or stdout.
fn deliver(cli: &Cli, headline: &str, json: String, tree: Option<&STree>) -> Result<()> {
    say(headline);
    let body = match (cli.format, tree) {
        (Format::Dot, Some(t)) => stree_to_dot(t),
        _ => json,
    };
    match &cli.out {
        Some(path) => {
            let text = if body.ends_with('\n') {
                body
            } else {
                body + "\n"
            };
            std::fs::write(path, text)
                .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            say(body.trim_end_matches('\n'));
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_width(cli: &Cli, parameter: FamilyName, input: &Path) -> Result<()> {
    let (label, w) = match parameter {
        FamilyName::Tw => ("tree-width", treewidth(&load_graph(cli, input, GRAPH_CAP)?, cli.max_nodes)?),
        FamilyName::Pw => ("path-width", pathwidth(&load_graph(cli, input, GRAPH_CAP)?, cli.max_nodes)?),
        FamilyName::Bw => ("branch-width", branchwidth(&load_graph(cli, input, GRAPH_CAP)?, cli.max_nodes)?),
        FamilyName::Cw => ("carving-width", carving_width(&load_graph(cli, input, GROUND_CAP)?, cli.max_nodes)?),
        FamilyName::Rw => ("rank-width", rank_width(&load_graph(cli, input, GROUND_CAP)?, cli.max_nodes)?),
        FamilyName::Mtw => ("matroid-tree-width", matroid_treewidth(&load_matroid(cli, input)?, cli.max_nodes)?),
    };
    let tree = match &w.witness {
        Witness::Tree { tree, .. } => Some(tree),
        Witness::Case(_) => None,
    };
    deliver(cli, &w.value.to_string(), width_to_json(label, &w), tree)
}

fn cmd_tangle(cli: &Cli, family: FamilyName, k: u32, input: &Path) -> Result<()> {
    let arena = build_arena(cli, family, k, input)?;
    match find_tangle(&arena.sys, arena.fam.as_ref()) {
        Some(o) => deliver(cli, "tangle", orientation_to_json(&o, &arena.sys), None),
        None => {
            say("none");
            Ok(())
        }
    }
}

fn cmd_tree(cli: &Cli, family: FamilyName, k: u32, input: &Path) -> Result<()> {
    let arena = build_arena(cli, family, k, input)?;
    match find_stree(&arena.sys, arena.fam.as_ref(), cli.max_nodes)? {
        Some(t) => {
            let json = stree_to_json(&t);
            deliver(cli, "tree", json, Some(&t))
        }
        None => {
            say("none");
            Ok(())
        }
    }
}

fn cmd_duality(cli: &Cli, family: FamilyName, k: u32, input: &Path) -> Result<()> {
    let arena = build_arena(cli, family, k, input)?;
    let v = verify_duality(&arena.sys, arena.fam.as_ref(), k, cli.max_nodes)?;
    let (headline, tree) = match &v.outcome {
        Outcome::Tangle(_) => ("tangle", None),
        Outcome::Tree(t) => ("tree", Some(t)),
    };
    let json = verdict_to_json(&v, &arena.sys);
    deliver(cli, headline, json, tree)
}

fn cmd_cluster(cli: &Cli, image: &Path, k: u32) -> Result<()> {
    let grid = PixelGrid::parse_pgm(&read_bytes(image)?)?;
    check_cap(cli, "the image", grid.pixels(), GROUND_CAP)?;
    let v = cluster(&grid, k, cli.max_nodes)?;
    let (headline, tree) = match &v {
        ClusterVerdict::Coherent { .. } => ("coherent", None),
        ClusterVerdict::Segmented { tree, .. } => ("segmented", Some(tree)),
    };
    let json = cluster_verdict_to_json(&v);
    deliver(cli, headline, json, tree)
}

// ---------------------------------------------------------------------------
// Self-test
// ---------------------------------------------------------------------------

/// Random graphs, every duality probed, every width relation checked.
/// Any exactness failure surfaces as a duality error (exit code 4); any
/// relation failure is reported the same way, since both mean a bug.
fn cmd_selftest(cli: &Cli, count: u32) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probes = 0u32;
    for instance in 0..count {
        let n = rng.gen_range(2..=5usize);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges)?;

        // Exactness of every duality this graph hosts.
        for k in 1..=(n as u32 + 1) {
            let sys = vertex_separations(&g, k);
            verify_duality(&sys, &BagFamily::tree(n, k), k, cli.max_nodes)?;
            verify_duality(&sys, &BagFamily::path(n, k), k, cli.max_nodes)?;
            probes += 2;
        }
        let covers = cover_star_family(&g)?;
        for k in 1..=(n as u32) {
            let sys = vertex_separations(&g, k);
            verify_duality(&sys, &covers, k, cli.max_nodes)?;
            probes += 1;
        }
        let cuts = edge_cut_order(&g)?;
        let set_fam = set_cover_star_family(n)?;
        for k in 1..=4 {
            let sys = SepSystem::below(&cuts, k);
            verify_duality(&sys, &set_fam, k, cli.max_nodes)?;
            probes += 1;
        }

        // Width relations that hold for every graph.
        let tw = treewidth(&g, cli.max_nodes)?.value;
        let pw = pathwidth(&g, cli.max_nodes)?.value;
        let bw = branchwidth(&g, cli.max_nodes)?.value;
        let relation = |ok: bool, what: String| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Duality(format!(
                    "instance {instance} (seed {seed}, n={n}, edges {edges:?}): {what}"
                )))
            }
        };
        relation(tw <= pw, format!("tree-width {tw} > path-width {pw}"))?;
        relation(
            bw <= tw + 1,
            format!("branch-width {bw} > tree-width {tw} + 1"),
        )?;
        probes += 2;

        // Connected graphs with an edge: the graphic matroid's tree-width
        // equals the graph's.
        if !edges.is_empty() && g.components_within(g.full_mask()).len() == 1 {
            let m = Matroid::graphic(&g)?;
            let mtw = matroid_treewidth(&m, cli.max_nodes)?.value;
            relation(
                mtw == tw,
                format!("matroid tree-width {mtw} ≠ tree-width {tw}"),
            )?;
            probes += 1;
        }
    }
    say(&format!(
        "selftest: {count} random instances, {probes} probes, every duality exact \
         and every width relation held (seed {seed})"
    ));
    Ok(())
}
