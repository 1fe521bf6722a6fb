mod input;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ninf_core::io::TransferSystemExport;
use ninf_core::limits::ORACLE_MAX_ARITY;
use ninf_core::mackey::build_mackey;
use ninf_core::splitting::{
    brute_force_components, free_algebra_fixed_components, spectrum_tom_dieck, total_components,
};
use ninf_core::transfer::enumerate;
use ninf_core::{Error, Limits, SubgroupLattice, TransferSystem};

use verify::Suite;

const EXIT_INPUT: u8 = 1;
const EXIT_GUARD: u8 = 2;
const EXIT_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ninf",
    version,
    about = "Transfer systems, admissible sets and their splittings over finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    max_group_order: Option<usize>,
    #[arg(long, global = true)]
    max_arity: Option<usize>,
    /// Seed for the randomized parts of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct GroupArg {
    /// Builtin name (C4, D4, S3, Q8, A4, C2xC2, ...) or a JSON file.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct SystemArgs {
    #[command(flatten)]
    group: GroupArg,
    /// trivial, complete, c4-linear-isometries, or a JSON file.
    #[arg(long, default_value = "complete")]
    ts: String,
}

#[derive(Subcommand)]
enum Command {
    /// All transfer systems on the group and their containment poset.
    Enumerate(GroupArg),
    /// The subgroup lattice.
    Lattice(GroupArg),
    /// Splitting summands of the fixed points of a free algebra (with --n)
    /// or of a suspension spectrum.
    Tomdieck {
        #[command(flatten)]
        sys: SystemArgs,
        /// Orbit data, inline "K:mult,K:mult" or JSON.
        #[arg(long = "X", default_value = "G")]
        x: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run verification suites; exits 3 when a check fails.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long = "X")]
        x: Option<String>,
        /// Largest arity for the graph suite.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Export the Burnside Mackey functor of the system.
    Mackey(SystemArgs),
    /// Print the closed transfer system.
    Show(SystemArgs),
}

struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &outcome.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_INPUT);
                }
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(if outcome.failed { EXIT_FAILED } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeLimitExceeded { .. } => EXIT_GUARD,
                Error::NotAdmissible(_) => EXIT_FAILED,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn limits(cli: &Cli) -> ninf_core::Result<Limits> {
    let d = Limits::default();
    Limits::new(
        cli.max_group_order.unwrap_or(d.max_group_order),
        cli.max_arity.unwrap_or(d.max_arity),
    )
}

fn load(cli: &Cli, sys: &SystemArgs) -> ninf_core::Result<TransferSystem> {
    let lattice = input::lattice(&sys.group.group, limits(cli)?)?;
    input::transfer_system(&sys.ts, &lattice)
}

fn unsupported(format: Format) -> Error {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
    };
    Error::InvalidInput(format!("--format {name} is not available for this command"))
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> ninf_core::Result<Outcome> {
    match &cli.command {
        Command::Enumerate(g) => cmd_enumerate(cli, &input::lattice(&g.group, limits(cli)?)?),
        Command::Lattice(g) => cmd_lattice(cli, &input::lattice(&g.group, limits(cli)?)?),
        Command::Tomdieck { sys, x, n } => cmd_tomdieck(cli, &load(cli, sys)?, x, *n),
        Command::Verify {
            sys,
            suite,
            h,
            k,
            x,
            n,
        } => {
            let ts = load(cli, sys)?;
            let lattice = ts.lattice();
            let opts = verify::Options {
                h: h.as_deref().map(|s| lattice.resolve(s)).transpose()?,
                k: k.as_deref().map(|s| lattice.resolve(s)).transpose()?,
                x: x.as_deref(),
                max_arity: *n,
                seed: cli.seed,
            };
            cmd_verify(cli, &ts, *suite, &opts)
        }
        Command::Mackey(sys) => cmd_mackey(cli, &load(cli, sys)?),
        Command::Show(sys) => cmd_show(cli, &load(cli, sys)?),
    }
}

fn cmd_enumerate(cli: &Cli, lattice: &Arc<SubgroupLattice>) -> ninf_core::Result<Outcome> {
    let poset = enumerate(lattice)?;
    let text = match cli.format {
        Format::Dot => poset.to_dot(),
        Format::Json => to_json(&json!({
            "group": lattice.group().name(),
            "count": poset.len(),
            "systems": poset.systems.iter().enumerate().map(|(i, ts)| json!({
                "index": i,
                "description": ts.describe(),
                "pairs": ts.pairs().iter().map(|&(k, h)| (k.0, h.0)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "hasse": poset.hasse,
        })),
        Format::Text => {
            let noun = if poset.len() == 1 {
                "system"
            } else {
                "systems"
            };
            let mut s = format!(
                "{} transfer {noun} on {}\n",
                poset.len(),
                lattice.group().name()
            );
            for (i, ts) in poset.systems.iter().enumerate() {
                let _ = writeln!(s, "  [{i}] {}", ts.describe());
            }
            let _ = writeln!(s, "covering relations: {}", poset.hasse.len());
            for (i, j) in &poset.hasse {
                let _ = writeln!(s, "  {i} < {j}");
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_lattice(cli: &Cli, lattice: &Arc<SubgroupLattice>) -> ninf_core::Result<Outcome> {
    let rows: Vec<_> = lattice
        .ids()
        .map(|h| {
            json!({
                "id": h.0,
                "label": lattice.label(h),
                "type": lattice.type_name(h),
                "order": lattice.order(h),
                "class_rep": lattice.class_rep(h).0,
                "normalizer": lattice.normalizer(h).0,
                "weyl_order": lattice.weyl(h).order(),
            })
        })
        .collect();
    let text = match cli.format {
        Format::Dot => return Err(unsupported(cli.format)),
        Format::Json => to_json(
            &json!({"group": lattice.group().name(), "order": lattice.group().order(), "subgroups": rows}),
        ),
        Format::Text => {
            let mut s = format!(
                "{} (order {}), {} subgroups\n",
                lattice.group().name(),
                lattice.group().order(),
                lattice.len()
            );
            for h in lattice.ids() {
                let _ = writeln!(
                    s,
                    "  {:>3}  {:<12} {:<8} order {:<3} class of {:<3} |W| = {}",
                    h.0,
                    lattice.label(h),
                    lattice.type_name(h),
                    lattice.order(h),
                    lattice.class_rep(h).0,
                    lattice.weyl(h).order()
                );
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_tomdieck(
    cli: &Cli,
    ts: &TransferSystem,
    x: &str,
    n: Option<usize>,
) -> ninf_core::Result<Outcome> {
    let lattice = ts.lattice();
    let xs = input::gset(x, lattice, lattice.top())?;
    let Some(n) = n else {
        let split = spectrum_tom_dieck(ts, &xs)?;
        let failed = split.summands.iter().any(|s| s.components != s.burnside);
        let text = match cli.format {
            Format::Dot => return Err(unsupported(cli.format)),
            Format::Json => {
                to_json(&json!({"level": "spectrum", "X": xs.describe(), "splitting": split}))
            }
            Format::Text => {
                let mut s = format!("spectrum level, X = {}\n", xs.describe());
                let _ = writeln!(
                    s,
                    "{:<16} {:>5} {:>6} {:>10}",
                    "summand", "|W|", "|X^H|", "components"
                );
                for r in &split.summands {
                    let _ = writeln!(
                        s,
                        "{:<16} {:>5} {:>6} {:>10}",
                        r.description, r.weyl_order, r.fixed_points, r.components
                    );
                }
                let _ = writeln!(s, "{} summands, rank {}", split.summands.len(), split.rank);
                s
            }
        };
        return Ok(Outcome { text, failed });
    };
    let summands = free_algebra_fixed_components(ts, &xs, n)?;
    let total = total_components(&summands);
    let oracle = if n <= ORACLE_MAX_ARITY {
        Some(brute_force_components(ts, &xs, n)?)
    } else {
        None
    };
    let burnside_ok = summands
        .iter()
        .all(|s| s.burnside.is_none_or(|b| b == s.components));
    let failed = oracle.is_some_and(|o| o != total) || !burnside_ok;
    let text = match cli.format {
        Format::Dot => return Err(unsupported(cli.format)),
        Format::Json => to_json(&json!({
            "level": "algebra",
            "arity": n,
            "X": xs.describe(),
            "summands": summands,
            "total": total,
            "oracle": oracle,
            "oracle_agrees": oracle.map(|o| o == total),
        })),
        Format::Text => {
            let mut s = format!("arity {n}, X = {}\n", xs.describe());
            let _ = writeln!(
                s,
                "{:<24} {:>7} {:>8} {:>10}",
                "T", "|Aut|", "|Map^G|", "components"
            );
            for r in &summands {
                let _ = writeln!(
                    s,
                    "{:<24} {:>7} {:>8} {:>10}",
                    r.description, r.aut_order, r.map_count, r.components
                );
            }
            let _ = writeln!(s, "total components {total}");
            match oracle {
                Some(o) if o == total => s.push_str("oracle agrees\n"),
                Some(o) => {
                    let _ = writeln!(s, "oracle DISAGREES: brute force gives {o}");
                }
                None => {
                    let _ = writeln!(s, "oracle skipped: arity above {ORACLE_MAX_ARITY}");
                }
            }
            s
        }
    };
    Ok(Outcome { text, failed })
}

fn cmd_verify(
    cli: &Cli,
    ts: &TransferSystem,
    suite: Suite,
    opts: &verify::Options,
) -> ninf_core::Result<Outcome> {
    let checks = verify::run(ts, suite, opts)?;
    let failed = checks.iter().any(|c| !c.passed());
    let text = match cli.format {
        Format::Dot => return Err(unsupported(cli.format)),
        Format::Json => to_json(&json!({
            "group": ts.lattice().group().name(),
            "transfer_system": ts.describe(),
            "seed": opts.seed,
            "passed": !failed,
            "checks": checks,
        })),
        Format::Text => {
            let mut s = format!("{} with {}\n", ts.lattice().group().name(), ts.describe());
            for c in &checks {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{verdict} {}/{} ({} checked, {} failed)",
                    c.suite, c.name, c.instances, c.failures
                );
                for ce in &c.counterexamples {
                    let _ = writeln!(s, "  {ce}");
                }
            }
            let _ = writeln!(
                s,
                "{}",
                if failed {
                    "result: FAIL"
                } else {
                    "result: PASS"
                }
            );
            s
        }
    };
    Ok(Outcome { text, failed })
}

fn cmd_mackey(cli: &Cli, ts: &TransferSystem) -> ninf_core::Result<Outcome> {
    let m = build_mackey(ts)?;
    let lattice = ts.lattice();
    let text = match cli.format {
        Format::Dot => return Err(unsupported(cli.format)),
        Format::Json => to_json(&m.export()),
        Format::Text => {
            let mut s = format!("{} with {}\n", lattice.group().name(), ts.describe());
            for (h, r) in m.rank_table() {
                let _ = writeln!(s, "  rank at {:<12} {r}", lattice.label(h));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_show(cli: &Cli, ts: &TransferSystem) -> ninf_core::Result<Outcome> {
    let text = match cli.format {
        Format::Dot => return Err(unsupported(cli.format)),
        Format::Json => to_json(&TransferSystemExport::new(ts)),
        Format::Text => format!("{}\n", ts.describe()),
    };
    Ok(Outcome::ok(text))
}
