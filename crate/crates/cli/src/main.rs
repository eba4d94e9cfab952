use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dsrg::constructions::Family;
use dsrg::params::enumerate_feasible;
use dsrg::quotients::{
    aut_block_bound, aut_bound, bounds_check, pin_partition, pout_partition, quotient_graph, stabilizer_facts,
    NeighborPartition,
};
use dsrg::spectral::{
    charpoly_factors, evaluate, minpoly_check, profile, semidirect_cayley, uniform_negative_criterion, SpectralProfile,
    SpectralSum, Verdict,
};
use dsrg::{verify_dsrg, Digraph, Error, SemidirectSpec};
use dsrg_cli::catalog::{self, CatalogEntry, CatalogError};
use dsrg_cli::{parse_graph, render, Format, Recipe};

const AFTER_HELP: &str = "\
File formats:
  matrix  n lines of n space-separated 0/1 entries
  edges   header line \"# n=<n>\", then one \"u v\" line per arc
  json    {\"n\": n, \"arcs\": [[u, v], ...], \"labels\": [...], \"tuple\": {\"n\",\"k\",\"mu\",\"lambda\",\"t\"}}
          (labels and tuple optional)
  dot     Graphviz digraph (output only)

Exit codes: 0 ok, 2 usage or I/O error, 3 bad construction parameters,
4 verification failure.";

#[derive(Parser)]
#[command(name = "dsrg", version, about = "Construct and verify directed strongly regular graphs", after_help = AFTER_HELP)]
struct Cli {
    /// JSON-lines catalog file
    #[arg(long, global = true, env = "DSRG_CATALOG")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List parameter tuples with 0 < t < k < n <= N_MAX passing the feasibility conditions
    Feasible {
        #[arg(value_parser = clap::value_parser!(i64).range(1..))]
        n_max: i64,
    },
    /// Build a family member, verify it and write it out
    Construct {
        #[command(flatten)]
        recipe: Recipe,
        #[arg(long, value_enum, default_value = "edges")]
        format: Format,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a graph file (matrix, edges or json; "-" for stdin) is a DSRG
    Verify { file: PathBuf },
    /// Root-of-unity sums and DSRG criteria for C(C_n ⋊ C_m, H × C_m)
    Spectral {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Action multiplier: the generator of C_m acts as a -> a^k
        #[arg(long)]
        k: u64,
        #[arg(long = "H", value_delimiter = ',', required = true)]
        h: Vec<u64>,
        /// Add exponent 0 to H (dropping the identity from the connection set)
        #[arg(long)]
        starred: bool,
    },
    /// Neighbour classes, bounds, stabilizers and quotients of a family member
    /// (or, given a graph file instead of a family id, classes and bounds only)
    Quotient {
        #[command(flatten)]
        recipe: Recipe,
    },
    /// Persisted catalog of verified constructions
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Build, verify and append a construction
    Add {
        #[command(flatten)]
        recipe: Recipe,
        /// Also store the adjacency matrix in the entry
        #[arg(long)]
        store_adjacency: bool,
    },
    /// Print every entry
    List,
    /// Rebuild and re-verify every entry
    Check,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<(), Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn verification(message: impl Into<String>) -> Failure {
    Failure { code: 4, message: message.into() }
}

fn from_core(e: Error) -> Failure {
    let code = match e {
        Error::ConstructionMismatch { .. } | Error::FactViolated(_) | Error::BoundViolated(_) => 4,
        _ => 3,
    };
    Failure { code, message: e.to_string() }
}

fn from_catalog(e: CatalogError) -> Failure {
    match e {
        CatalogError::Io { .. } => usage(e.to_string()),
        CatalogError::Corrupt { .. } => verification(e.to_string()),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))
    }
}

fn read_graph(path: &Path) -> Result<dsrg_cli::GraphFile, Failure> {
    parse_graph(&read_input(path)?).map_err(|e| usage(e.to_string()))
}

fn feasible(n_max: i64) -> CmdResult {
    println!("{:>4} {:>4} {:>4} {:>6} {:>4}", "n", "k", "mu", "lambda", "t");
    for p in enumerate_feasible(n_max) {
        println!("{:>4} {:>4} {:>4} {:>6} {:>4}", p.n, p.k, p.mu, p.lambda, p.t);
    }
    Ok(())
}

fn construct(recipe: &Recipe, format: Format, out: Option<&Path>) -> CmdResult {
    let c = recipe.build().map_err(from_core)?;
    let found = verify_dsrg(&c.graph).map_err(|e| verification(format!("NotDSRG: {e}")))?;
    if found != c.expected {
        return Err(verification(format!("built {found}, expected {}", c.expected)));
    }
    let text = render(&c.graph, Some(found), format);
    let line = format!("VERIFIED {found}");
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("writing {}: {e}", path.display())))?;
            println!("{line}");
        }
        None => {
            print!("{text}");
            eprintln!("{line}");
        }
    }
    Ok(())
}

fn verify(path: &Path) -> CmdResult {
    let file = read_graph(path)?;
    match verify_dsrg(&file.digraph) {
        Ok(p) => {
            println!("{p} {}", p.kind());
            match file.tuple {
                Some(claimed) if claimed != p => Err(verification(format!("file claims {claimed}"))),
                _ => Ok(()),
            }
        }
        Err(e) => {
            println!("NotDSRG: {e}");
            Err(Failure { code: 4, message: String::new() })
        }
    }
}

fn show_sum(s: &SpectralSum) -> String {
    match s.integer() {
        Some(v) => v.to_string(),
        None => format!("{:.4}{:+.4}i", s.value.re, s.value.im),
    }
}

fn describe(verdict: &Verdict, starred: bool) -> String {
    match verdict {
        Verdict::Yes { rho, sigma, multiplicity, implied } if starred => {
            format!("YES rho={rho} r={multiplicity} -> {implied}")
        }
        Verdict::Yes { sigma, multiplicity, implied, .. } => format!("YES sigma={sigma} s={multiplicity} -> {implied}"),
        Verdict::No { u: Some(u), reason } => format!("NO at u={u}: {reason}"),
        Verdict::No { u: None, reason } => format!("NO: {reason}"),
    }
}

/// The criterion that applies to the profile, and its verdict.
fn run_criterion(p: &SpectralProfile) -> (&'static str, Verdict) {
    if p.starred {
        return ("shifted-rho criterion", evaluate(p));
    }
    match uniform_negative_criterion(p) {
        Ok(v @ Verdict::Yes { .. }) => ("uniform-negative criterion", v),
        _ => ("sigma-or-zero criterion", evaluate(p)),
    }
}

fn spectral(n: u64, m: u64, k: u64, h: &[u64], starred: bool) -> CmdResult {
    let spec = SemidirectSpec::new(n, m, k).map_err(from_core)?;
    let p = profile(spec, h, starred).map_err(from_core)?;
    let sums: Vec<String> = p.s_values.iter().map(show_sum).collect();
    let (name, verdict) = run_criterion(&p);
    println!("{} = [{}]; {name}: {}", if starred { "S*" } else { "S" }, sums.join(", "), describe(&verdict, starred));
    match charpoly_factors(&p) {
        Ok(f) => {
            let parts: Vec<String> = f.iter().map(|(v, m)| format!("{v}^{m}")).collect();
            println!("eigenvalues: {}", parts.join(" "));
        }
        Err(e) => println!("eigenvalues: {e}"),
    }
    let cg = semidirect_cayley(spec, h, starred).map_err(from_core)?;
    let exact = verify_dsrg(cg.digraph());
    match (&verdict, &exact) {
        (Verdict::Yes { rho, sigma, implied, .. }, Ok(found)) if implied == found && minpoly_check(cg.digraph(), *rho, *sigma) => {
            println!("exact check: {found} {}, (A - {rho}I)(A - ({sigma})I) is a multiple of J", found.kind());
            Ok(())
        }
        (Verdict::No { .. }, Err(e)) => {
            println!("exact check: not a DSRG ({e})");
            Ok(())
        }
        _ => Err(verification(format!("criterion disagrees with exact verification: {exact:?}"))),
    }
}

fn show_partition(label: &str, d: &Digraph, part: &NeighborPartition) -> CmdResult {
    let report = bounds_check(d, part).map_err(from_core)?;
    let pair = match (report.pair_bound, report.largest_pair) {
        (Some(b), Some(l)) => format!(", two largest {l} <= {b}"),
        _ => String::new(),
    };
    println!(
        "{label}: {} classes, largest {} <= {}{pair}",
        part.classes.len(),
        report.largest_class,
        report.class_bound
    );
    Ok(())
}

fn quotient(recipe: &Recipe) -> CmdResult {
    if Family::from_id(&recipe.family).is_none() && Path::new(&recipe.family).exists() {
        let file = read_graph(Path::new(&recipe.family))?;
        let d = &file.digraph;
        let p = verify_dsrg(d).map_err(|e| verification(format!("NotDSRG: {e}")))?;
        println!("{p} {}", p.kind());
        show_partition("out-neighbour classes", d, &pout_partition(d))?;
        return show_partition("in-neighbour classes", d, &pin_partition(d));
    }
    let c = recipe.build().map_err(from_core)?;
    let cg = c.cayley.as_ref().ok_or_else(|| {
        Failure { code: 3, message: format!("{} is not a Cayley construction; pass a graph file instead", recipe.family) }
    })?;
    println!("{} {}", c.expected, c.expected.kind());
    show_partition("out-neighbour classes", &c.graph, &pout_partition(&c.graph))?;
    show_partition("in-neighbour classes", &c.graph, &pin_partition(&c.graph))?;
    let facts = stabilizer_facts(cg).map_err(from_core)?;
    for side in [&facts.out_side, &facts.in_side] {
        let name = match side.direction {
            dsrg::quotients::Direction::Out => "G_S",
            dsrg::quotients::Direction::In => "G_S^-1",
        };
        let q = match quotient_graph(cg, side.direction) {
            Ok(q) => format!("quotient {}", q.tuple),
            Err(e) => format!("no quotient ({e})"),
        };
        println!(
            "{name}: order {}, coset arcs {}, {} gcd {}; {q}",
            side.stabilizer.len(),
            if side.uniform { "uniform" } else { "non-uniform" },
            if side.divides_gcd { "divides" } else { "does not divide" },
            facts.gcd
        );
    }
    println!(
        "automorphism bounds: (n/s)!s! = {}, (n/s)!(s!)^(n/s) = {}",
        aut_bound(cg).map_err(from_core)?,
        aut_block_bound(cg).map_err(from_core)?
    );
    Ok(())
}

fn catalog_path(path: Option<&Path>) -> Result<&Path, Failure> {
    path.ok_or_else(|| usage("no catalog: pass --catalog PATH or set DSRG_CATALOG"))
}

fn catalog(path: Option<&Path>, action: &CatalogAction) -> CmdResult {
    let path = catalog_path(path)?;
    match action {
        CatalogAction::Add { recipe, store_adjacency } => {
            let c = recipe.build().map_err(from_core)?;
            let entry = CatalogEntry::from_construction(recipe.clone(), &c, *store_adjacency);
            entry.recheck().map_err(verification)?;
            catalog::append(path, &entry).map_err(from_catalog)?;
            println!("added {} {}", entry.tuple(), recipe.command_line());
        }
        CatalogAction::List => {
            let entries = catalog::load(path).map_err(from_catalog)?;
            for (i, e) in entries.iter().enumerate() {
                println!("{:>3}  {:<20} {:<10} {}  sha256:{}", i + 1, e.tuple().to_string(), e.kind, e.recipe.command_line(), &e.sha256[..12]);
            }
            println!("{} entries", entries.len());
        }
        CatalogAction::Check => {
            let entries = catalog::load(path).map_err(from_catalog)?;
            let mut failed = 0;
            for (i, e) in entries.iter().enumerate() {
                match e.recheck() {
                    Ok(()) => println!("ok     {:>3}  {}", i + 1, e.tuple()),
                    Err(why) => {
                        failed += 1;
                        println!("FAILED {:>3}  {}: {why}", i + 1, e.tuple());
                    }
                }
            }
            if failed > 0 {
                return Err(verification(format!("{failed} of {} entries failed re-verification", entries.len())));
            }
            println!("{} entries verified", entries.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Feasible { n_max } => feasible(*n_max),
        Command::Construct { recipe, format, out } => construct(recipe, *format, out.as_deref()),
        Command::Verify { file } => verify(file),
        Command::Spectral { n, m, k, h, starred } => spectral(*n, *m, *k, h, *starred),
        Command::Quotient { recipe } => quotient(recipe),
        Command::Catalog { action } => catalog(cli.catalog.as_deref(), action),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
