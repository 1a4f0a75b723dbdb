//! Command-line front end: argument parsing, tables and JSON output.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use equienergy::constructions;
use equienergy::spectra::{self, MatrixKind};
use equienergy::verify::{self, ScanRow, Tolerances, VerificationReport};
use equienergy::{read_edge_list, to_edge_list, Error, Graph, Recipe, RecipeId};

#[derive(Parser)]
#[command(name = "equienergy", version, about = "Build and verify Laplacian-equienergetic graph pairs")]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Energy equality tolerance, per vertex.
    #[arg(long, global = true, default_value_t = verify::EQUALITY_TOL)]
    eq_tol: f64,

    /// Maximum eigenvalue deviation for two spectra to count as equal.
    #[arg(long, global = true, default_value_t = verify::COSPECTRAL_TOL)]
    cospectral_tol: f64,

    /// Deviations at or below this are not reported as discrepancies.
    #[arg(long, global = true, default_value_t = verify::DISCREPANCY_TOL)]
    discrepancy_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Laplacian (or signless Laplacian) spectrum of a graph.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        signless: bool,
    },
    /// Print Laplacian and signless Laplacian energies of a graph.
    Energy { file: PathBuf },
    /// Build recipe output pairs and print them as edge lists.
    Construct(ConstructArgs),
    /// Build recipe output pairs and verify their energies.
    Verify(ConstructArgs),
    /// Verify a recipe at every p in a range, whether or not its hypothesis holds.
    Scan {
        #[command(flatten)]
        recipe: RecipeArgs,
        #[arg(long)]
        p_from: usize,
        #[arg(long)]
        p_to: usize,
    },
    /// Energies of the two 6-vertex trees times K_p.
    Counterexample {
        /// Defaults to 4, 6 and 7.
        #[arg(long)]
        p: Option<usize>,
    },
    /// Random audit of the composition rules against direct eigensolves.
    Lemmas {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct RecipeArgs {
    /// Recipe id: `R9`, `R9:cart-union-empty` or `cart-union-empty`.
    #[arg(long)]
    recipe: String,
    #[arg(long)]
    g1: PathBuf,
    #[arg(long)]
    g2: PathBuf,
    /// Ambient complete-graph order for the K_N − E(G) recipes.
    #[arg(long)]
    ambient_n: Option<usize>,
    /// Join with K_{p,p} instead of its complement.
    #[arg(long)]
    assume_bar_typo: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    recipe: RecipeArgs,
    #[arg(long, conflicts_with = "min_p")]
    p: Option<usize>,
    /// Start at the smallest p satisfying the hypothesis (the default).
    #[arg(long)]
    min_p: bool,
    /// Number of consecutive values of p.
    #[arg(long, default_value_t = 1)]
    count: usize,
}

struct Loaded {
    recipe: Recipe,
    g1: Graph,
    g2: Graph,
}

impl RecipeArgs {
    fn load(&self) -> Result<Loaded, Error> {
        let id: RecipeId = self.recipe.parse()?;
        let mut recipe = Recipe::new(id).with_bar_typo(self.assume_bar_typo);
        recipe.ambient_n = self.ambient_n;
        Ok(Loaded { recipe, g1: read_edge_list(&self.g1)?, g2: read_edge_list(&self.g2)? })
    }
}

impl ConstructArgs {
    fn start(&self, l: &Loaded) -> Result<usize, Error> {
        match self.p {
            Some(p) => Ok(p),
            None => constructions::minimal_p(&l.recipe, &l.g1, &l.g2),
        }
    }
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), fmt6)
}

/// Shortest decimal at 6 places: `4.000000` prints as `4`.
fn fmt_short(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// The serde name of a unit enum variant.
fn label<T: Serialize>(value: T) -> String {
    serde_json::to_value(value).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))
}

#[derive(Serialize)]
struct BuiltPair {
    p: usize,
    h1: String,
    h2: String,
}

#[derive(Serialize)]
struct CounterexampleRow {
    p: usize,
    le1: f64,
    le2: f64,
}

fn report_table(out: &mut dyn Write, reports: &[VerificationReport]) -> io::Result<()> {
    writeln!(
        out,
        "{:<28} {:>5} {:>6} {:>7} {:>14} {:>14} {:>10} {:>5} {:>5} {:>5} {:>10} {:>8}",
        "recipe", "p", "n", "m", "energy1", "energy2", "diff", "hyp", "cosL", "cosQ", "rule_dev", "closed"
    )?;
    for r in reports {
        let (e1, e2) = match r.energy_kind {
            Some(MatrixKind::SignlessLaplacian) => (r.le_plus1, r.le_plus2),
            _ => (r.le1, r.le2),
        };
        let flag = |b: Option<bool>| b.map_or("-", |b| if b { "yes" } else { "no" });
        writeln!(
            out,
            "{:<28} {:>5} {:>6} {:>7} {:>14} {:>14} {:>10.2e} {:>5} {:>5} {:>5} {:>10} {:>8}",
            r.recipe.map_or_else(|| "-".into(), |id| id.as_str()),
            r.p.map_or_else(|| "-".into(), |p| p.to_string()),
            r.n,
            r.m,
            fmt_opt(e1),
            fmt_opt(e2),
            r.predicted_diff().unwrap_or(f64::NAN),
            flag(Some(r.predicted)),
            flag(r.cospectral_l),
            flag(r.cospectral_q),
            r.rule_dev.map_or_else(|| "-".into(), |d| format!("{d:.2e}")),
            r.closed_form.as_ref().map_or_else(|| "-".into(), |c| label(c.winner)),
        )?;
    }
    for (r, d) in reports.iter().flat_map(|r| r.discrepancies.iter().map(move |d| (r, d))) {
        writeln!(out, "discrepancy at p={}: {} ({}) deviation {:.6}", r.p.unwrap_or(0), label(d.source), d.instance, d.deviation)?;
    }
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let tol = Tolerances { equality: cli.eq_tol, cospectral: cli.cospectral_tol, discrepancy: cli.discrepancy_tol };
    if !(tol.equality > 0.0 && tol.cospectral > 0.0 && tol.discrepancy > 0.0) {
        return Err(Error::InvalidArgument("tolerances must be positive".into()).into());
    }
    match cli.command {
        Command::Spectrum { file, signless } => {
            let kind = if signless { MatrixKind::SignlessLaplacian } else { MatrixKind::Laplacian };
            let s = spectra::spectrum(&read_edge_list(file)?, kind)?;
            if cli.json {
                print_json(out, &s)?;
            } else {
                writeln!(out, "{}", s.values.iter().map(|&x| fmt_short(x)).collect::<Vec<_>>().join(" "))?;
            }
        }
        Command::Energy { file } => {
            let r = spectra::energy_report(&read_edge_list(file)?)?;
            if cli.json {
                print_json(out, &r)?;
            } else {
                writeln!(out, "n = {}\nm = {}\nLE = {}\nLE+ = {}", r.n, r.m, fmt6(r.le), fmt6(r.le_plus))?;
                writeln!(out, "average degree = {}\nalgebraic connectivity = {}", fmt6(r.avg_degree), fmt_opt(r.algebraic_connectivity))?;
            }
        }
        Command::Construct(args) => {
            let l = args.recipe.load()?;
            let p0 = args.start(&l)?;
            let built = constructions::sequence(&l.recipe, &l.g1, &l.g2, p0, args.count)?;
            let rows: Vec<_> = built.iter().map(|(p, h1, h2)| BuiltPair { p: *p, h1: to_edge_list(h1), h2: to_edge_list(h2) }).collect();
            if cli.json {
                print_json(out, &rows)?;
            } else {
                for r in rows {
                    write!(out, "# {} p = {} H1\n{}# {} p = {} H2\n{}", l.recipe.id, r.p, r.h1, l.recipe.id, r.p, r.h2)?;
                }
            }
        }
        Command::Verify(args) => {
            let l = args.recipe.load()?;
            let p0 = args.start(&l)?;
            let reports =
                (p0..p0 + args.count).map(|p| verify::verify_recipe(&l.recipe, &l.g1, &l.g2, p, &tol)).collect::<Result<Vec<_>, _>>()?;
            if cli.json {
                print_json(out, &reports)?;
            } else {
                report_table(out, &reports)?;
            }
            return Ok(reports.iter().all(|r| !r.failed()));
        }
        Command::Scan { recipe, p_from, p_to } => {
            let l = recipe.load()?;
            let rows = verify::scan(&l.recipe, &l.g1, &l.g2, p_from, p_to, &tol)?;
            if cli.json {
                print_json(out, &rows)?;
            } else {
                report_table(out, &rows.iter().map(|r| r.report.clone()).collect::<Vec<_>>())?;
            }
            return Ok(rows.iter().all(|r: &ScanRow| !r.report.failed()));
        }
        Command::Counterexample { p } => {
            let ps = p.map_or_else(|| vec![4, 6, 7], |p| vec![p]);
            let rows = ps
                .into_iter()
                .map(|p| verify::counterexample_energies(p).map(|(le1, le2)| CounterexampleRow { p, le1, le2 }))
                .collect::<Result<Vec<_>, _>>()?;
            if cli.json {
                print_json(out, &rows)?;
            } else {
                writeln!(out, "{:>4} {:>14} {:>14}", "p", "LE(G1 x Kp)", "LE(G2 x Kp)")?;
                for r in rows {
                    writeln!(out, "{:>4} {:>14} {:>14}", r.p, fmt6(r.le1), fmt6(r.le2))?;
                }
            }
        }
        Command::Lemmas { trials, max_n, seed } => {
            let audit = verify::audit_lemmas(trials, max_n, seed, &tol)?;
            if cli.json {
                print_json(out, &audit)?;
            } else {
                writeln!(out, "{:<14} {:>7} {:>14} {:>14}", "rule", "trials", "max_dev", "discrepancies")?;
                for s in &audit.summaries {
                    writeln!(out, "{:<14} {:>7} {:>14.3e} {:>14}", s.name, s.trials, s.max_deviation, s.discrepancies)?;
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code: 0 on success, 1 when a predicted energy equality
/// fails, 2 on usage or input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
