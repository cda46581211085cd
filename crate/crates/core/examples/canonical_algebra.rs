//! Ladder and canonical operators on a truncated Fock space, and how the
//! truncation shows up in [x, p].

use ncbound::hilbert::{canonical_ops, commutator, expectation, make_ladder, variance};
use ncbound::{HilbertSpec, OperatorMatrix, PhysicalConstants, StateVector, C64};

fn main() -> ncbound::Result<()> {
    let spec = HilbertSpec::single_mode(64, 4)?;
    let consts = PhysicalConstants::default();

    let (a, a_dag) = make_ladder(spec, 0)?;
    let ladder_comm = commutator(&a, &a_dag)?;
    println!("[a, a†] diagonal: first {:.1}, last {:.1}", ladder_comm.get(0, 0).re, ladder_comm.get(63, 63).re);

    let (x, p) = canonical_ops(spec, 0, &consts)?;
    let target = OperatorMatrix::identity(spec).scaled(C64::new(0.0, consts.hbar));
    let comm = commutator(&x, &p)?;
    println!("[x, p] - iħ: interior {:.2e}, whole space {:.2e}", comm.interior_max_diff(&target)?, comm.max_abs_diff(&target)?);

    for n in 0..4 {
        let psi = StateVector::basis(spec, n)?;
        println!(
            "|{n}⟩  ⟨x⟩ = {:+.3}  Var x = {:.3}  Var p = {:.3}",
            expectation(&x, &psi)?.re,
            variance(&x, &psi)?,
            variance(&p, &psi)?
        );
    }

    let two = HilbertSpec::two_mode(16, 4)?;
    let psi = StateVector::fock(two, &[1, 2])?;
    let (_, p1) = canonical_ops(two, 1, &consts)?;
    println!("two-mode |1,2⟩ has total index {} and Var p(mode 1) = {:.3}", two.index_of(&[1, 2])?, variance(&p1, &psi)?);
    Ok(())
}
