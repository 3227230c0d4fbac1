mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use squish_core::planepart::BoxShape;

use report::{Failure, Report};

/// Plane partitions, the squish map, and SL₂ loop weights.
#[derive(Parser, Debug)]
#[command(name = "squish", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the scans (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Largest box (in cells) the enumerating commands accept.
    #[arg(long, global = true, default_value_t = 64, value_name = "CELLS")]
    max_cells: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the plane partitions fitting in a box.
    Count {
        #[arg(long = "box", value_name = "X,Y,Z")]
        shape: BoxShape,
    },
    /// Generating function of a box, by volume or by color.
    Gf {
        #[arg(long = "box", value_name = "X,Y,Z")]
        shape: BoxShape,
        /// Four-variable colored generating function instead of the q-series.
        #[arg(long)]
        colored: bool,
    },
    /// Squish one partition, or list every target of a box with its fiber size.
    Squish {
        #[arg(long = "box", value_name = "X,Y,Z")]
        shape: BoxShape,
        /// JSON rows, or @file.
        #[arg(long)]
        partition: Option<String>,
    },
    /// The two half-scale partitions of a partition.
    Downsample {
        /// JSON rows, or @file.
        #[arg(long)]
        partition: String,
    },
    /// Monodromy of a loop, symbolically or at a root of unity.
    Monodromy {
        /// `hexagon`, a tile name such as `bone-0`, or the enclosed
        /// hexagons as JSON pairs `[[u,v],...]`.
        #[arg(long = "loop")]
        loop_spec: String,
        /// Order of the root of unity a = b = c (1, 2, 3, 4, 6 or 8).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Run acceptance criteria by key or number (default: all).
    Verify {
        #[arg(default_value = "all")]
        criteria: Vec<String>,
        /// Random cases per property suite.
        #[arg(long, default_value_t = 1000)]
        property_cases: u32,
        /// Starting tiling window margin.
        #[arg(long, default_value_t = squish_core::roots::DEFAULT_MARGIN)]
        margin: u32,
    },
    /// Truncated expansion of the colored generating function Z_Q.
    Zq {
        /// Largest total degree kept.
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = ZqAt::Generic)]
        at: ZqAt,
        /// Compare with the brute-force colored sum (generic only).
        #[arg(long)]
        check: bool,
    },
    /// Classify every loop from the given boxes against signed tilings.
    Conjecture {
        #[arg(long, num_args = 1.., value_name = "X,Y,Z", default_values_t = [BoxShape::new(2, 2, 2)])]
        boxes: Vec<BoxShape>,
        #[arg(long, default_value_t = squish_core::roots::DEFAULT_MARGIN)]
        margin: u32,
    },
    /// Draw a matching, an overlay of two matchings, or a squish as SVG.
    Render {
        #[arg(long = "box", value_name = "X,Y,Z")]
        shape: BoxShape,
        /// JSON rows, or @file.
        #[arg(long)]
        partition: String,
        /// Second partition; draws the overlay of the two matchings.
        #[arg(long, conflicts_with = "squish")]
        with: Option<String>,
        /// Draw the squish of the partition's matching.
        #[arg(long)]
        squish: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
enum ZqAt {
    /// The series in q, r, s, t.
    Generic,
    /// r = s = t = -1.
    MinusOne,
    /// r = s = t = q.
    Volume,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command, &cli.global) {
        Ok(report) => {
            report.print(cli.global.json);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

impl Report {
    fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).expect("reports serialize"));
        } else {
            print!("{}", self.text);
        }
    }
}
