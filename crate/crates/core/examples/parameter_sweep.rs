//! A photon-number × squeezing grid written to CSV, as the `sweep`
//! subcommand does.
//!
//! cargo run --release --example parameter_sweep [OUT_DIR]

use std::path::PathBuf;

use reservoir_entanglement::reservoir::ReservoirParams;
use reservoir_entanglement::states::CorrelationTriple;
use reservoir_entanglement::sweep::{run_sweep, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let mut cfg = SweepConfig::new(CorrelationTriple::PARTIAL, ReservoirParams::thermal(1.0, 0.0)?);
    cfg.n_grid = vec![0.05, 0.2, 0.6];
    cfg.m_fractions = vec![0.0, 0.5];
    cfg.samples = 101;
    cfg.t_max = 5.0;
    cfg.output_path = dir.join("sweep.csv");

    let out = run_sweep(&cfg)?;
    println!("{} rows -> {}", out.rows_written, out.output_path.display());
    println!("summary -> {}", out.summary_path.display());
    for s in &out.summaries {
        println!("  grid {}: esd = {:?}", s.grid_id, s.esd_time);
    }
    Ok(())
}
