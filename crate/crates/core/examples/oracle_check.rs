//! Closed forms and brute-force recomputation against the main path.

use ncbound::bounds::{evaluate, BoundOptions};
use ncbound::oracle::{self, brute_force_bound, closed_form_moments, BoundKind, CheckOptions, StateDescriptor};
use ncbound::PhysicalConstants;

fn main() -> ncbound::Result<()> {
    let consts = PhysicalConstants::default();
    let m = closed_form_moments(StateDescriptor::Theta(0.4), &consts)?;
    println!("θ = 0.4: ⟨x⟩ = {:.6}, Var x = {:.6}, Var p = {:.6}", m.x, m.var_x(), m.var_p());

    let inst = &oracle::random_instances(1, oracle::seed_from_env())?[0];
    let opts = BoundOptions::default();
    let rec = evaluate(&inst.a, &inst.b, &inst.psi, &inst.basis, &opts)?;
    for kind in BoundKind::ALL {
        let brute = brute_force_bound(kind, &inst.a, &inst.b, &inst.psi, &inst.basis, &opts)?;
        println!("{:>16}  main {:?}  brute {:?}", kind.name(), kind.select(&rec), brute);
    }

    let reports = oracle::run_checks(&CheckOptions { dim: 16, instances: 20, ..CheckOptions::default() })?;
    let failed = reports.iter().filter(|r| !r.informational && !r.pass).count();
    println!("{} checks, {failed} failed", reports.len());
    Ok(())
}
