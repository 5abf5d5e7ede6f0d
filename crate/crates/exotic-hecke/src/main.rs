use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exotic_hecke::report::{run, RunConfig};

/// Affine Hecke algebras with unequal parameters and exotic nilpotent orbits of G2 in characteristic 3.
#[derive(Parser)]
#[command(name = "exotic-hecke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hecke relations on the polynomial module.
    Relations(Options),
    /// Fixed points, finiteness and orbit classes of a central character, with the simple-module count.
    Classify(Options),
    /// Count simple modules of the specialized Hecke algebra.
    CountSimples(Options),
    /// Nilpotent orbit representatives with stabilizers.
    Orbits(Options),
    /// Springer fiber point counts of one representative.
    Fibers(Options),
    /// Orbit table with recomputed stabilizers and fiber counts.
    Tables(Options),
}

#[derive(Args)]
struct Options {
    /// Root datum preset (A1, A2, G2) or path of a datum JSON file.
    #[arg(long = "type", default_value = "G2")]
    datum: String,
    /// Central character JSON file.
    #[arg(long = "char")]
    character: Option<PathBuf>,
    /// `name=value` assignments (parameters or character generators); repeatable or comma separated.
    #[arg(long, value_delimiter = ',')]
    set: Vec<String>,
    /// Parameter name of each simple root, e.g. `q1,q2`.
    #[arg(long, value_delimiter = ',')]
    param_map: Option<Vec<String>>,
    /// Finite field size (3, 9, 27 or 81); repeatable.
    #[arg(long)]
    field: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Weights of random inputs are drawn from `[-radius, radius]`.
    #[arg(long, default_value_t = 3)]
    radius: i64,
    /// Vector such as `v2ab+vb`.
    #[arg(long)]
    rep: Option<String>,
    /// Human readable output instead of JSON.
    #[arg(long)]
    pretty: bool,
}

fn config(name: &str, o: Options) -> Result<(RunConfig, bool), String> {
    let mut set = BTreeMap::new();
    for kv in o.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("--set expects name=value, got '{kv}'"))?;
        set.insert(k.trim().to_string(), v.trim().to_string());
    }
    let cfg = RunConfig {
        command: name.into(),
        datum: o.datum,
        param_map: o.param_map,
        set,
        character: o.character.map(|p| p.display().to_string()),
        fields: o.field,
        trials: o.trials,
        seed: o.seed,
        radius: o.radius,
        rep: o.rep,
    };
    Ok((cfg, o.pretty))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, opts) = match cli.command {
        Command::Relations(o) => ("relations", o),
        Command::Classify(o) => ("classify", o),
        Command::CountSimples(o) => ("count-simples", o),
        Command::Orbits(o) => ("orbits", o),
        Command::Fibers(o) => ("fibers", o),
        Command::Tables(o) => ("tables", o),
    };
    let (cfg, pretty) = match config(name, opts) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match run(&cfg) {
        Ok(report) => {
            let mut text = String::new();
            if pretty {
                text += &format!("{} ({})\n", cfg.command, if report.ok { "ok" } else { "MISMATCH" });
                for line in &report.summary {
                    text += &format!("  {line}\n");
                }
            } else {
                text = serde_json::to_string(&report).expect("report serializes") + "\n";
            }
            // a closed pipe is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if report.ok { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
