//! Builds both deformed operator sets and compares their commutators with
//! the closed forms.

use ncbound::hilbert::commutator;
use ncbound::models::{
    build_linear, build_nonlinear, linear_commutators, nonlinear_commutator_exact, nonlinear_commutator_gup_form,
};
use ncbound::{HilbertSpec, LinearModelParams, NonlinearModelParams, OperatorMatrix, PhysicalConstants};

fn main() -> ncbound::Result<()> {
    let consts = PhysicalConstants::default();

    let params = LinearModelParams::new(0.15, 0.15)?;
    let two = HilbertSpec::two_mode(32, 4)?;
    let set = build_linear(&params, &consts, two)?;
    let targets = linear_commutators(&params, &consts);
    let id = OperatorMatrix::identity(two);
    let (x2, p2) = (set.x2.as_ref().unwrap(), set.p2.as_ref().unwrap());
    for (name, a, b, z) in [
        ("[X1,X2]", &set.x1, x2, targets.x1_x2),
        ("[P1,P2]", &set.p1, p2, targets.p1_p2),
        ("[X1,P1]", &set.x1, &set.p1, targets.x1_p1),
    ] {
        let dev = commutator(a, b)?.interior_max_diff(&id.scaled(z))?;
        println!("linear {name} = {:.6}i  (interior deviation {dev:.1e})", z.im);
    }

    let alpha = NonlinearModelParams::new(0.1)?;
    let one = HilbertSpec::single_mode(64, 4)?;
    let nl = build_nonlinear(&alpha, &consts, one)?;
    let comm = commutator(&nl.x1, &nl.p1)?;
    let exact = nonlinear_commutator_exact(&alpha, &consts, one)?;
    let gup = nonlinear_commutator_gup_form(&alpha, &consts, one)?;
    println!("nonlinear [X1,P1] vs iħ(1-2αp+6α²p²): {:.1e}", comm.interior_max_diff(&exact)?);
    println!("nonlinear [X1,P1] vs iħ(1-αp+4α²p²):  {:.3}", comm.interior_max_diff(&gup)?);
    Ok(())
}
