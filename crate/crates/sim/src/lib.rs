//! Simulation harness and command-line surface for the copula-entropy
//! two-sample test: runs the three scenario sweeps, persists results as CSV
//! and renders SVG figures.

pub mod cli;
pub mod error;
pub mod plot;
pub mod simulate;
pub mod table;

pub use cli::cli_main;
pub use error::{Result, SimError};
pub use plot::{emit_plot, render_svg};
pub use simulate::{median, median_curves, run_simulation, spearman, MedianCurves, Simulation, DEFAULT_SEEDS};
pub use table::{read_table, write_table, ExperimentRow, ExperimentTable};
