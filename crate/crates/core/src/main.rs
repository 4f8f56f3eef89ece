use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hilbert_cover::io::{
    curve_svg, read_world, trace_svg, write_curve_csv, write_trace_csv, MapVariant, RunReport,
};
use hilbert_cover::simulator::{no_shared_edge, verify_multi_obstacle, verify_single};
use hilbert_cover::{simulate, verify_coverage, Error, World};

#[derive(Parser)]
#[command(
    name = "hilbert-cover",
    version,
    about = "Hilbert-curve coverage with online obstacle evasion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Map {
    Standard,
    Center,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Single,
    Pairs,
    Triples,
}

#[derive(clap::Args)]
struct RunArgs {
    /// World file (TOML).
    #[arg(long)]
    world: PathBuf,
    /// Check the trace against the world and fail if coverage is incomplete.
    #[arg(long)]
    verify: bool,
    /// Write a figure of the run.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the trace table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a JSON summary (statistics, maneuvers, coverage report).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the nodes of one curve order.
    Curve {
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value = "center")]
        map: Map,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest order accepted.
        #[arg(long, default_value_t = 8)]
        limit: u32,
    },
    /// Cover a world and print the trace.
    Cover(RunArgs),
    /// Cover a world with a resolution map through its coverage tree.
    Tree {
        #[command(flatten)]
        run: RunArgs,
        /// Print the coverage-tree leaves instead of the trace.
        #[arg(long)]
        leaves: bool,
    },
    /// Run every world of a campaign and print a JSON report.
    Verify {
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value = "single")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn curve(
    order: u32,
    map: Map,
    svg: Option<&Path>,
    out: Option<&Path>,
    limit: u32,
) -> Result<bool, Error> {
    if order == 0 {
        return Err(Error::OrderTooSmall { order, min: 1 });
    }
    if order > limit {
        return Err(Error::OrderTooLarge { order, max: limit });
    }
    let variant = match map {
        Map::Standard => MapVariant::Standard,
        Map::Center => MapVariant::Center,
    };
    write_curve_csv(order, variant, output(out)?)?;
    if let Some(p) = svg {
        std::fs::write(p, curve_svg(order, variant)?)?;
    }
    Ok(true)
}

fn run(args: &RunArgs, world: &World) -> Result<bool, Error> {
    let trace = simulate(world)?;
    let coverage = if args.verify {
        Some(verify_coverage(&trace, world)?)
    } else {
        None
    };
    write_trace_csv(&trace, output(args.out.as_deref())?)?;
    if let Some(p) = &args.svg {
        let caption = format!("{} ({} steps)", args.world.display(), trace.len());
        std::fs::write(p, trace_svg(world, &trace, &caption)?)?;
    }
    if let Some(p) = &args.report {
        std::fs::write(
            p,
            RunReport::new(world, &trace, coverage.as_ref())?.to_json()? + "\n",
        )?;
    }
    match coverage {
        Some(c) if !c.passed() => {
            eprintln!(
                "verification failed: {} missed, {} incursions, {} adjacency violations",
                c.missed.len(),
                c.incursions.len(),
                c.adjacency_violations.len()
            );
            Ok(false)
        }
        Some(c) => {
            eprintln!("verified: all free cells visited, {} revisits", c.revisits);
            Ok(true)
        }
        None => Ok(true),
    }
}

fn verify(order: u32, mode: Mode, out: Option<&Path>) -> Result<bool, Error> {
    let (report, max) = match mode {
        Mode::Single => (None, 5),
        Mode::Pairs => (Some(2), 4),
        Mode::Triples => (Some(3), 3),
    };
    if order == 0 {
        return Err(Error::OrderTooSmall { order, min: 1 });
    }
    if order > max {
        return Err(Error::OrderTooLarge { order, max });
    }
    let report = match report {
        None => verify_single(order),
        Some(arity) => verify_multi_obstacle(order, arity, no_shared_edge),
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(output(out)?, "{json}")?;
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Curve {
            order,
            map,
            svg,
            out,
            limit,
        } => curve(*order, *map, svg.as_deref(), out.as_deref(), *limit),
        Command::Cover(args) => read_world(&args.world).and_then(|w| run(args, &w)),
        Command::Tree { run: args, leaves } => read_world(&args.world).and_then(|w| {
            if w.resolution().is_none() {
                return Err(Error::InvalidResolution(
                    "world file has no regions or default_order".into(),
                ));
            }
            if *leaves {
                let mut out = output(args.out.as_deref())?;
                writeln!(out, "order,digits")?;
                for leaf in w.leaves()? {
                    writeln!(out, "{},{leaf}", leaf.order())?;
                }
                return Ok(true);
            }
            run(args, &w)
        }),
        Command::Verify { order, mode, out } => verify(*order, *mode, out.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
