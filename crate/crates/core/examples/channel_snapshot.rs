//! Channel gains of the six default variants at a few instants of the pass.
//!
//! Usage: `cargo run --release --example channel_snapshot [t_s ...]`

use irs_mobility::scenario::{ScenarioConfig, Simulation};

fn main() -> irs_mobility::Result<()> {
    let times: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let times = if times.is_empty() { vec![-500.0, 0.0, 500.0] } else { times };
    let cfg = ScenarioConfig::default();
    let sim = Simulation::new(&cfg)?;
    for t in times {
        let rec = sim.record_at(t)?;
        println!("t = {t} s, elevation {:.3} deg", rec.elevation_deg);
        for (name, m) in sim.variant_names().iter().zip(&rec.variants) {
            println!(
                "  {name:<14} gain {:>10.4} dB  over no-IRS {:>7.4} dB  sum A / A0 {:.4}",
                m.channel_gain_db, m.irs_gain_db, m.irs_amplitude_ratio
            );
        }
    }
    Ok(())
}
