//! Phase schedules on a small surface: the Pareto-optimal schedule reaches the
//! coherent bound and adds less than one carrier period of delay spread;
//! the specular and diffuse schedules do neither.

use irs_mobility::antenna::GainPattern;
use irs_mobility::geometry::{IrsLayout, Point3, Pose};
use irs_mobility::phase::{k_min, PhaseStrategy};
use irs_mobility::propagation::{coherent_bound, delay_spread, received_power, IrsSurface, Scene, Stationary};

fn main() -> irs_mobility::Result<()> {
    let fc = 2e9;
    let scene = Scene::builder(Point3::new(0.0, -100.0, 1000.0), Stationary(Point3::new(40.0, 900.0, 350.0)), fc)
        .irs(IrsSurface {
            layout: IrsLayout::new(4, 3, 0.6, 0.6)?,
            pose: Pose::identity(),
            element_pattern: GainPattern::IsotropicHemisphere,
            reflection_efficiency: 1.0,
        })
        .build()?;
    let snap = scene.snapshot(0.0)?;

    println!("element  excess x [periods]  k_min");
    for (i, e) in snap.elements().iter().enumerate() {
        println!("{i:>7}  {:>18.6}  {:>5}", e.excess_cycles, k_min(e.excess_cycles)?);
    }

    let bound = coherent_bound(&snap, 1.0);
    println!("\ncoherent bound: {:.4} dB", 10.0 * bound.log10());
    for strategy in [PhaseStrategy::ParetoOptimal, PhaseStrategy::ZeroPhase, PhaseStrategy::Diffuse { seed: 7 }] {
        let phases = strategy.evaluate(&snap)?;
        let p = received_power(&snap, &phases, 1.0)?;
        let spread = delay_spread(&snap, &phases)? * fc;
        println!(
            "{:<10} power {:>9.4} dB ({:.6} of bound), delay spread {spread:.4} periods",
            strategy.label(),
            10.0 * p.log10(),
            p / bound
        );
    }
    Ok(())
}
