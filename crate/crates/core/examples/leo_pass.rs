//! Geometry of the default LEO pass: orbit, elevation over time and the
//! visibility window above 10°.

use irs_mobility::orbit::elevation_at;
use irs_mobility::propagation::Trajectory;
use irs_mobility::scenario::{derive_orbit, ground_point, pass_summary, ScenarioConfig};

fn main() -> irs_mobility::Result<()> {
    let cfg = ScenarioConfig::default();
    let orbit = derive_orbit(&cfg)?;
    let ground = ground_point(&cfg);
    println!(
        "orbit radius {:.0} km, speed {:.1} m/s, period {:.1} min",
        orbit.radius() / 1e3,
        orbit.speed(),
        orbit.period() / 60.0
    );

    let pass = pass_summary(&cfg)?;
    println!(
        "visible above {} deg from {:.2} s to {:.2} s, peak {:.4} deg at {:.2} s",
        cfg.orbit.min_elevation_deg, pass.t_start_s, pass.t_end_s, pass.max_elevation_deg, pass.t_max_s
    );

    println!("\n     t [s]  elevation [deg]  range [km]");
    for t in (-500..=500).step_by(100) {
        let t = t as f64;
        let range = (orbit.position(t) - ground).norm();
        println!("{t:>10.0}  {:>15.3}  {:>10.1}", elevation_at(&orbit, &ground, t)?.to_degrees(), range / 1e3);
    }
    Ok(())
}
