//! Doppler and delay spread along the pass for the tilted planar surface:
//! receiver-tracking phases keep the Doppler spread at zero, static phases
//! do not.

use irs_mobility::phase::PhaseStrategy;
use irs_mobility::propagation::delay_spread;
use irs_mobility::scenario::{derive_scene, ScenarioConfig, StrategyKind, VariantConfig};

fn main() -> irs_mobility::Result<()> {
    let cfg = ScenarioConfig::default();
    let scene = derive_scene(&cfg, &VariantConfig::new("tilt45", StrategyKind::Pareto).with_uptilt(45.0))?;
    let fc = scene.carrier_frequency();
    let strategies = [PhaseStrategy::ParetoOptimal, PhaseStrategy::ZeroPhase, PhaseStrategy::Diffuse { seed: 1 }];

    println!("     t [s]  strategy     Doppler [Hz]  delay spread [periods]");
    for t in [-500.0, -250.0, 0.0, 250.0, 500.0] {
        let snap = scene.snapshot(t)?;
        for s in &strategies {
            let phases = s.evaluate(&snap)?;
            println!(
                "{t:>10.0}  {:<10}  {:>12.4e}  {:>22.2}",
                s.label(),
                scene.doppler_spread(s, t)?,
                delay_spread(&snap, &phases)? * fc
            );
        }
    }
    Ok(())
}
