use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use eqlines_cli::{claim_ids, run_suite, Config};

/// Exact verification of the claims about equiangular lines at angle arccos(1/5).
///
/// Exit status: 0 all verified, 2 some inconclusive, 3 some refuted, 1 usage or data error.
#[derive(Parser, Debug)]
#[command(name = "eqlines", version)]
struct Args {
    /// Comma-separated claim ids or prefixes; all claims when omitted.
    #[arg(long, env = "EQLINES_CLAIMS", value_delimiter = ',')]
    claims: Vec<String>,
    /// Directory holding S1.txt .. S4.txt.
    #[arg(long, env = "EQLINES_DATA_DIR", default_value = "data")]
    data_dir: PathBuf,
    /// Worker threads.
    #[arg(long, env = "EQLINES_WORKERS")]
    workers: Option<usize>,
    /// Abort each search after this many nodes.
    #[arg(long, env = "EQLINES_NODE_BUDGET")]
    node_budget: Option<u64>,
    /// Print the JSON report instead of the table.
    #[arg(long, env = "EQLINES_JSON")]
    json: bool,
    /// Record wall time per claim (reports are then no longer reproducible byte for byte).
    #[arg(long, env = "EQLINES_TIMING")]
    timing: bool,
    /// List claim ids and exit.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        for id in claim_ids() {
            println!("{id}");
        }
        return ExitCode::SUCCESS;
    }
    let config = Config {
        data_dir: args.data_dir,
        workers: args.workers,
        node_budget: args.node_budget,
        timing: args.timing,
    };
    match run_suite(&args.claims, &config) {
        Ok(report) => {
            if args.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
