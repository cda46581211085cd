use std::f64::consts::PI;
use std::sync::OnceLock;

use proptest::prelude::*;

use ncbound::bounds::{self, BoundOptions};
use ncbound::hilbert::{canonical_ops, commutator, superposition_state, variance};
use ncbound::models::{build_linear, linear_commutators};
use ncbound::oracle::{self, brute_force_bound, option_deviation, BoundKind};
use ncbound::sweep::PreparedSweep;
use ncbound::{
    Basis, HilbertSpec, LinearModelParams, ModelKind, OperatorMatrix, Pair, PhysicalConstants, SweepConfig, C64,
};

const DIM: usize = 24;

fn prepared() -> &'static [PreparedSweep] {
    static SWEEPS: OnceLock<Vec<PreparedSweep>> = OnceLock::new();
    SWEEPS.get_or_init(|| {
        [
            (ModelKind::Linear, Pair::XP),
            (ModelKind::Linear, Pair::XX),
            (ModelKind::Linear, Pair::PP),
            (ModelKind::Nonlinear, Pair::XP),
            (ModelKind::Commutative, Pair::XP),
        ]
        .into_iter()
        .map(|(m, p)| PreparedSweep::new(&SweepConfig { dim: DIM, ..SweepConfig::with_model(m, p) }).unwrap())
        .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn records_respect_orderings(theta in 0.0..2.0 * PI, which in 0usize..5) {
        let rec = prepared()[which].evaluate_at(theta);
        prop_assert!(rec.violations(1e-9).is_empty(), "{:?} at θ={theta}: {:?}", rec.violations(1e-9), rec);
        prop_assert!(bounds::leq_rel(rec.sum_lower, rec.var_a + rec.var_b, 1e-12));
        if let Some(l) = rec.lambda_factor {
            prop_assert!(l >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn half_turn_periodicity(theta in 0.0..PI, which in 0usize..5) {
        let sweep = &prepared()[which];
        let (a, b) = (sweep.evaluate_at(theta), sweep.evaluate_at(theta + PI));
        for (u, v) in a.values().iter().zip(b.values()) {
            match (u, v) {
                (Some(u), Some(v)) => prop_assert!((u - v).abs() <= 1e-10 * u.abs().max(1.0), "{u} vs {v}"),
                (u, v) => prop_assert_eq!(*u, v),
            }
        }
    }

    #[test]
    fn superposition_is_normalized(theta in -10.0..10.0f64, i in 0usize..6, j in 0usize..6) {
        prop_assume!(i != j);
        let space = HilbertSpec::single_mode(8, 2).unwrap();
        let psi = superposition_state(space, theta, i, j).unwrap();
        let n: f64 = psi.amplitudes().iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((n - 1.0).abs() < 1e-14);
    }

    #[test]
    fn canonical_commutator_any_units(hbar in 0.1..5.0f64, mass in 0.1..5.0f64, omega in 0.1..5.0f64) {
        let consts = PhysicalConstants::new(hbar, mass, omega).unwrap();
        let space = HilbertSpec::single_mode(20, 4).unwrap();
        let (x, p) = canonical_ops(space, 0, &consts).unwrap();
        let target = OperatorMatrix::identity(space).scaled(C64::new(0.0, hbar));
        prop_assert!(commutator(&x, &p).unwrap().interior_max_diff(&target).unwrap() <= 1e-10);
    }

    #[test]
    fn linear_commutators_any_coupling(lambda in -1.0..1.0f64, gamma in -1.0..1.0f64) {
        let params = LinearModelParams::new(lambda, gamma).unwrap();
        let consts = PhysicalConstants::default();
        let space = HilbertSpec::two_mode(10, 3).unwrap();
        let set = build_linear(&params, &consts, space).unwrap();
        let t = linear_commutators(&params, &consts);
        let id = OperatorMatrix::identity(space);
        let dev = |a: &OperatorMatrix, b: &OperatorMatrix, z: C64| {
            commutator(a, b).unwrap().interior_max_diff(&id.scaled(z)).unwrap()
        };
        let (x2, p2) = (set.x2.as_ref().unwrap(), set.p2.as_ref().unwrap());
        prop_assert!(dev(&set.x1, x2, t.x1_x2) <= 1e-12);
        prop_assert!(dev(&set.p1, p2, t.p1_p2) <= 1e-12);
        prop_assert!(dev(&set.x1, &set.p1, t.x1_p1) <= 1e-12);
        prop_assert!(dev(x2, p2, t.x2_p2) <= 1e-12);
    }

    #[test]
    fn random_instances_agree_with_brute_force(seed in any::<u64>()) {
        let opts = BoundOptions::default();
        for inst in oracle::random_instances(4, seed).unwrap() {
            let rec = bounds::evaluate(&inst.a, &inst.b, &inst.psi, &inst.basis, &opts).unwrap();
            prop_assert!(rec.violations(1e-9).is_empty(), "{:?}", rec.violations(1e-9));
            for kind in BoundKind::ALL {
                let oracle = brute_force_bound(kind, &inst.a, &inst.b, &inst.psi, &inst.basis, &opts).unwrap();
                prop_assert!(option_deviation(kind.select(&rec), oracle) <= 1e-9, "{}", kind.name());
            }
        }
    }

    #[test]
    fn pmur_l2_is_half_variance_of_sum(seed in any::<u64>()) {
        for inst in oracle::random_instances(2, seed).unwrap() {
            let l2 = bounds::pmur_sum_l2(&inst.a, &inst.b, &inst.psi).unwrap();
            let sum = inst.a.try_add(&inst.b).unwrap().into_hermitian().unwrap();
            let half = 0.5 * variance(&sum, &inst.psi).unwrap();
            prop_assert!((l2 - half).abs() <= 1e-10 * half.max(1.0));
        }
    }

    #[test]
    fn tighter_product_dominates_schrodinger_in_any_basis(seed in any::<u64>()) {
        for inst in oracle::random_instances(4, seed).unwrap() {
            let t = bounds::tighter_product(&inst.a, &inst.b, &inst.psi, &inst.basis).unwrap();
            let rs = bounds::schrodinger(&inst.a, &inst.b, &inst.psi).unwrap();
            prop_assert!(bounds::leq_rel(rs, t, 1e-10));
            let fock = bounds::tighter_product(&inst.a, &inst.b, &inst.psi, &Basis::Fock).unwrap();
            prop_assert!(bounds::leq_rel(rs, fock, 1e-10));
        }
    }
}
