//! A θ sweep of the nonlinear model, printed as a small table, with the
//! truncation convergence check.

use ncbound::sweep::{convergence_deviation, run_sweep};
use ncbound::{ModelKind, Pair, SweepConfig};

fn main() -> ncbound::Result<()> {
    let cfg = SweepConfig { theta_steps: 16, ..SweepConfig::with_model(ModelKind::Nonlinear, Pair::XP) };
    let result = run_sweep(&cfg)?;
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "theta", "schrodinger", "tighter", "product", "reverse");
    for (theta, r) in &result.points {
        let rev = r.reverse_product.map_or("NA".to_string(), |v| format!("{v:.6}"));
        println!("{theta:>8.4} {:>12.6} {:>12.6} {:>12.6} {rev:>12}", r.schrodinger, r.tighter_product, r.product);
    }
    println!("dim {} -> {}: max change {:.1e}", cfg.dim, 2 * cfg.dim, convergence_deviation(&cfg)?);
    Ok(())
}
