//! Every bound for (X1, P1) of the linear model on one superposition state.

use ncbound::bounds::{evaluate, RECORD_FIELDS};
use ncbound::hilbert::superposition_state;
use ncbound::models::build_linear;
use ncbound::{Basis, BoundOptions, HilbertSpec, LinearModelParams, PhysicalConstants};

fn main() -> ncbound::Result<()> {
    let theta: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.7);
    let spec = HilbertSpec::two_mode(32, 4)?;
    let set = build_linear(&LinearModelParams::default(), &PhysicalConstants::default(), spec)?;
    let psi = superposition_state(spec, theta, spec.index_of(&[0, 0])?, spec.index_of(&[1, 0])?)?;
    let rec = evaluate(&set.x1, &set.p1, &psi, &Basis::Fock, &BoundOptions::default())?;

    println!("θ = {theta}");
    for (name, value) in RECORD_FIELDS.iter().zip(rec.values()) {
        match value {
            Some(v) => println!("{name:>16}  {v:.10}"),
            None => println!("{name:>16}  undefined"),
        }
    }
    let broken = rec.violations(1e-9);
    println!("orderings: {}", if broken.is_empty() { "all hold".to_string() } else { broken.join(", ") });
    Ok(())
}
