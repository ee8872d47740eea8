//! Writes a small grid instance to JSON, reloads it, and checks the exact
//! solver against exhaustive enumeration.

use std::time::Duration;

use pass2d::discrete::{binomial, DiscreteInstance};
use pass2d::experiments::realization_ues;
use pass2d::units::to_db;
use pass2d::{RadioParams, Scenario};

fn main() -> pass2d::Result<()> {
    let scenario = Scenario::new(realization_ues(5, 0, 3, 10.0), 10.0, RadioParams::mmwave(20.0))?;
    let inst = DiscreteInstance::generate(&scenario, 6, 6, 3)?;
    let path = std::env::temp_dir().join("pass2d_instance.json");
    inst.save(&path)?;
    let back = DiscreteInstance::load(&path)?;

    let sol = back.solve(Duration::from_secs(10))?;
    let (sel, mu) = back.brute_force()?;
    println!("instance written to {}", path.display());
    println!("{} subsets of size 3 out of 36", binomial(36, 3));
    println!("branch-and-bound: {:.6} dB, {:?}", to_db(sol.mu), sol.selection.map(|b| b.indices()));
    println!("enumeration:      {:.6} dB, {:?}", to_db(mu), sel.indices());
    Ok(())
}
