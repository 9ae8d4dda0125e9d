use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cycsub::group::BuildOptions;
use cycsub::harness::{
    bijection_report, dot_graph, group_report, render_scan_text, scan, verify_order,
    MinimalityVerdict, Parity,
};
use cycsub::lattice::cyclic_poset;
use cycsub::spec::GroupSpec;
use cycsub::{Error, DEFAULT_CLOSURE_BOUND};

/// Cyclic subgroup graphs of finite groups: edge counts by two independent
/// routes, order-divisibility bijections, and minimality scans.
///
/// Group specs: Z12, D6 (order 12), Dic3, Q8, S4, A5, Ab[6,2], SD[7,3,2],
/// products like Z3xZ3, or files via @table.cayley / @gens.perms.
#[derive(Parser)]
#[command(name = "cycsub", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Skip the O(n^3) associativity scan for large trusted Cayley files.
    #[arg(long, global = true)]
    skip_assoc_check: bool,

    /// Cap on the number of elements a construction may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_BOUND)]
    closure_bound: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Order histogram, cyclic subgroup count, and both edge counts.
    Report { spec: String },
    /// Compare every catalog group of one order against the cyclic group.
    Verify { order: usize },
    /// Run verify over all orders up to --max.
    Scan(ScanArgs),
    /// Emit the cyclic subgroup graph as DOT text.
    Dot { spec: String },
    /// Construct and check the order-divisibility bijection onto Z_n.
    Bijection { spec: String },
    /// Machine-readable mirror of report / verify / scan.
    #[command(subcommand)]
    Json(JsonCommand),
}

#[derive(Args)]
struct ScanArgs {
    /// Largest order to scan.
    #[arg(long)]
    max: usize,
    /// Scan odd orders only.
    #[arg(long, conflicts_with = "even_only")]
    odd_only: bool,
    /// Scan even orders only.
    #[arg(long)]
    even_only: bool,
}

impl ScanArgs {
    fn parity(&self) -> Parity {
        if self.odd_only {
            Parity::OddOnly
        } else if self.even_only {
            Parity::EvenOnly
        } else {
            Parity::All
        }
    }
}

#[derive(Subcommand)]
enum JsonCommand {
    Report { spec: String },
    Verify { order: usize },
    Scan(ScanArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = BuildOptions {
        check_associativity: !cli.skip_assoc_check,
        closure_bound: cli.closure_bound,
    };

    match run(&cli.command, &opts) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            // The json subcommand mirrors errors as a JSON document; the
            // text subcommands report on stderr.
            if matches!(cli.command, Command::Json(_)) {
                let doc = serde_json::json!({ "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}

/// Returns the rendered output and the exit code: 0 for ordinary success,
/// 2 for a loud discovery (a minimum below the cyclic group, or an
/// infeasible bijection).
fn run(command: &Command, opts: &BuildOptions) -> cycsub::Result<(String, u8)> {
    match command {
        Command::Report { spec } => {
            let report = group_report(&parse_spec(spec)?, opts)?;
            Ok((report.render_text(), 0))
        }
        Command::Verify { order } => {
            let report = verify_order(*order)?;
            let code = verdict_code(&[report.verdict]);
            Ok((report.render_text(), code))
        }
        Command::Scan(args) => {
            let findings = scan(args.max, args.parity())?;
            let code = verdict_code(&findings.iter().map(|f| f.verdict).collect::<Vec<_>>());
            Ok((render_scan_text(&findings), code))
        }
        Command::Dot { spec } => {
            let spec = parse_spec(spec)?;
            let g = spec.construct_with(opts)?;
            let poset = cyclic_poset(&g)?;
            Ok((dot_graph(&spec.label(), &poset), 0))
        }
        Command::Bijection { spec } => {
            let report = bijection_report(&parse_spec(spec)?, opts)?;
            let code = if report.feasible && report.verified { 0 } else { 2 };
            Ok((report.render_text(), code))
        }
        Command::Json(json) => {
            let (value, code) = match json {
                JsonCommand::Report { spec } => {
                    let report = group_report(&parse_spec(spec)?, opts)?;
                    (serde_json::to_value(&report).expect("serializable"), 0)
                }
                JsonCommand::Verify { order } => {
                    let report = verify_order(*order)?;
                    let code = verdict_code(&[report.verdict]);
                    (serde_json::to_value(&report).expect("serializable"), code)
                }
                JsonCommand::Scan(args) => {
                    let findings = scan(args.max, args.parity())?;
                    let code =
                        verdict_code(&findings.iter().map(|f| f.verdict).collect::<Vec<_>>());
                    (serde_json::to_value(&findings).expect("serializable"), code)
                }
            };
            let mut text = serde_json::to_string_pretty(&value).expect("serializable");
            text.push('\n');
            Ok((text, code))
        }
    }
}

fn parse_spec(s: &str) -> cycsub::Result<GroupSpec> {
    s.parse()
}

fn verdict_code(verdicts: &[MinimalityVerdict]) -> u8 {
    if verdicts
        .iter()
        .any(|v| *v == MinimalityVerdict::MinimumBelowCyclic)
    {
        2
    } else {
        0
    }
}
