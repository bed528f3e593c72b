//! Command-line entry point.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use cetest::{permutation_pvalue, EstimatorConfig, KernelConfig, Sample, Statistic, TwoSampleStatistic};

use crate::error::{io_err, Result, SimError};
use crate::plot::emit_plot;
use crate::simulate::{run_simulation, Simulation, DEFAULT_SEEDS};
use crate::table::write_table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cetest", version, about = "Copula-entropy two-sample test and simulation harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the simulation designs; write simN.csv and simN.svg into the output directory.
    Simulate(SimulateArgs),
    /// Compute a two-sample statistic and its permutation p-value on two data files.
    Test(TestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimChoice {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

#[derive(Debug, clap::Args)]
struct SimulateArgs {
    /// Which simulation to run.
    #[arg(long, value_enum, default_value = "all")]
    sim: SimChoice,
    /// Comma-separated seeds (default: 0..9).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    seeds: Vec<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Neighbor order of the entropy estimator.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Gaussian kernel scale for MMD.
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatChoice {
    Ce,
    Mi,
    Mmd,
    Energy,
}

#[derive(Debug, clap::Args)]
struct TestArgs {
    /// First sample: one observation per line, whitespace or comma separated.
    #[arg(long)]
    x1: PathBuf,
    /// Second sample, same format and dimension.
    #[arg(long)]
    x2: PathBuf,
    #[arg(long, value_enum, default_value = "ce")]
    stat: StatChoice,
    /// Number of permutations; 0 skips calibration.
    #[arg(long, default_value_t = 199)]
    permutations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
}

/// Parses a numeric matrix. Blank lines and `#` comments are skipped, and a
/// first line with no numeric field is treated as a header.
pub fn parse_matrix(text: &str, name: &str) -> Result<Sample> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut seen_line = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if !seen_line {
            seen_line = true;
            if fields.iter().all(|f| f.parse::<f64>().is_err()) {
                continue;
            }
        }
        let mut row = Vec::with_capacity(fields.len());
        for (c, f) in fields.iter().enumerate() {
            let v = f.parse::<f64>().map_err(|e| SimError::Parse {
                path: name.to_string(),
                line: lineno as u64 + 1,
                column: c + 1,
                msg: format!("`{f}`: {e}"),
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(SimError::Parse {
                    path: name.to_string(),
                    line: lineno as u64 + 1,
                    column: 0,
                    msg: format!("expected {} fields, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(SimError::Contract(format!("{name}: no data rows")));
    }
    Ok(Sample::from_rows(&rows)?)
}

fn read_matrix(path: &Path) -> Result<Sample> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_matrix(&text, &path.display().to_string())
}

fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = EstimatorConfig {
        k: args.k,
        ..Default::default()
    };
    cfg.validate()?;
    let kc = KernelConfig {
        delta: args.delta,
        ..Default::default()
    };
    let seeds: Vec<u64> = if args.seeds.is_empty() {
        DEFAULT_SEEDS.to_vec()
    } else {
        args.seeds.clone()
    };
    let sims: Vec<Simulation> = match args.sim {
        SimChoice::One => vec![Simulation::MeanShift],
        SimChoice::Two => vec![Simulation::RhoSweep],
        SimChoice::Three => vec![Simulation::CopulaSweep],
        SimChoice::All => Simulation::ALL.to_vec(),
    };
    std::fs::create_dir_all(&args.out).map_err(|e| io_err(&args.out, e))?;
    for sim in sims {
        let table = run_simulation(sim, &seeds, &cfg, &kc)?;
        let csv = args.out.join(format!("sim{}.csv", sim.id()));
        let svg = args.out.join(format!("sim{}.svg", sim.id()));
        write_table(&table, &csv)?;
        emit_plot(&table, sim, &svg)?;
        let _ = writeln!(out, "wrote {} and {}", csv.display(), svg.display());
    }
    Ok(())
}

fn test(args: &TestArgs, out: &mut dyn Write) -> Result<()> {
    let x1 = read_matrix(&args.x1)?;
    let x2 = read_matrix(&args.x2)?;
    let cfg = EstimatorConfig {
        k: args.k,
        ..Default::default()
    };
    let kc = KernelConfig {
        delta: args.delta,
        ..Default::default()
    };
    let stat = match args.stat {
        StatChoice::Ce => Statistic::CopulaEntropy(cfg),
        StatChoice::Mi => Statistic::MutualInformation(cfg),
        StatChoice::Mmd => Statistic::Mmd(kc),
        StatChoice::Energy => Statistic::Energy,
    };
    if args.permutations == 0 {
        let t = stat.compute(&x1, &x2)?;
        let _ = writeln!(out, "statistic: {t:?}");
        let _ = writeln!(out, "p-value: NA");
        return Ok(());
    }
    let r = permutation_pvalue(&stat, &x1, &x2, args.permutations, args.seed)?;
    let _ = writeln!(out, "statistic: {:?}", r.statistic);
    if let Some(p) = r.p_value {
        let _ = writeln!(out, "p-value: {p:?}");
    }
    let _ = writeln!(out, "permutations: {}", args.permutations);
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a, out),
        Command::Test(a) => test(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_formats() {
        let s = parse_matrix("x,y\n1,2\n3 4\n\n# note\n5\t6\n", "mem").unwrap();
        assert_eq!((s.nrows(), s.ncols()), (3, 2));
        assert_eq!(s.row(1), &[3.0, 4.0]);
        assert!(matches!(
            parse_matrix("1 2\n3 x\n", "mem"),
            Err(SimError::Parse { line: 2, column: 2, .. })
        ));
        assert!(parse_matrix("1 2\n3\n", "mem").is_err());
        assert!(parse_matrix("# nothing\n", "mem").is_err());
        assert!(parse_matrix("1\nnan\n", "mem").is_err());
    }
}
