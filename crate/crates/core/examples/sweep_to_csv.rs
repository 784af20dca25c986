//! Runs a reduced sweep (coarse grid, 25 s steps) and writes the CSV.
//!
//! Usage: `cargo run --release --example sweep_to_csv [out.csv]`

use irs_mobility::scenario::{parse_config, run_sweep, write_csv};

fn main() -> irs_mobility::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "sweep.csv".into());
    let cfg = parse_config(
        r#"{
            "irs": {"rows": 102, "cols": 153, "dx_m": 0.12, "dy_m": 0.12},
            "sweep": {"t_start_s": -525, "t_end_s": 525, "step_s": 25}
        }"#,
    )?;
    let result = run_sweep(&cfg)?;
    write_csv(&result, &out)?;

    let i = result.variant_index("planar_tilt45").expect("default variant");
    let (lo, hi) = result
        .records
        .iter()
        .filter(|r| r.elevation_deg >= cfg.orbit.min_elevation_deg)
        .map(|r| r.variants[i].irs_gain_db)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), g| (a.min(g), b.max(g)));
    println!("wrote {} rows to {out}", result.records.len());
    println!("planar_tilt45 gain over no-IRS during the pass: {lo:.2} .. {hi:.2} dB");
    Ok(())
}
