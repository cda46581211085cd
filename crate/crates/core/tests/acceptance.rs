//! Runs every acceptance criterion at its stated tolerance and prints one
//! PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::fs;
use std::time::Instant;

use ncbound::bounds::{self, leq_rel, BoundsRecord};
use ncbound::cli::write_figure;
use ncbound::hilbert::{self, canonical_ops, commutator, superposition_state};
use ncbound::models::{
    analytic_rs_bounds_linear, build_linear, build_nonlinear, linear_commutators, nonlinear_commutator_exact,
    nonlinear_commutator_gup_form,
};
use ncbound::oracle::{self, closed_form_moments, model1_ground_variances, StateDescriptor};
use ncbound::sweep::{self, Figure, FigureOverrides};
use ncbound::{
    HilbertSpec, LinearModelParams, ModelKind, NonlinearModelParams, OperatorMatrix, Pair, PhysicalConstants,
    StateVector, SweepConfig, SweepResult, C64,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn interior_identity_dev(a: &OperatorMatrix, b: &OperatorMatrix, z: C64) -> f64 {
    let id = OperatorMatrix::identity(a.space());
    commutator(a, b).unwrap().interior_max_diff(&id.scaled(z)).unwrap()
}

fn canonical_algebra() -> Outcome {
    let start = Instant::now();
    let spec = HilbertSpec::single_mode(64, 4).unwrap();
    let (x, p) = canonical_ops(spec, 0, &PhysicalConstants::default()).unwrap();
    let dev = interior_identity_dev(&x, &p, C64::new(0.0, 1.0));
    let secs = start.elapsed().as_secs_f64();
    outcome(dev <= 1e-10 && secs < 1.0, format!("max deviation {dev:.2e} (tol 1e-10), {secs:.3} s (limit 1 s)"))
}

fn linear_commutators_check() -> Outcome {
    let params = LinearModelParams::new(0.15, 0.15).unwrap();
    let consts = PhysicalConstants::default();
    let set = build_linear(&params, &consts, HilbertSpec::two_mode(64, 4).unwrap()).unwrap();
    let t = linear_commutators(&params, &consts);
    let (x2, p2) = (set.x2.as_ref().unwrap(), set.p2.as_ref().unwrap());
    let devs = [
        interior_identity_dev(&set.x1, x2, t.x1_x2),
        interior_identity_dev(&set.p1, p2, t.p1_p2),
        interior_identity_dev(&set.x1, &set.p1, t.x1_p1),
        interior_identity_dev(x2, p2, t.x2_p2),
    ];
    let worst = devs.iter().cloned().fold(0.0, f64::max);
    outcome(
        worst <= 1e-9,
        format!("[X1,X2] {:.1e}, [P1,P2] {:.1e}, [X1,P1] {:.1e}, [X2,P2] {:.1e} (tol 1e-9)", devs[0], devs[1], devs[2], devs[3]),
    )
}

fn nonlinear_commutator() -> Outcome {
    let params = NonlinearModelParams::new(0.1).unwrap();
    let consts = PhysicalConstants::default();
    let spec = HilbertSpec::single_mode(64, 4).unwrap();
    let set = build_nonlinear(&params, &consts, spec).unwrap();
    let comm = commutator(&set.x1, &set.p1).unwrap();
    let stated = comm.interior_max_diff(&nonlinear_commutator_gup_form(&params, &consts, spec).unwrap()).unwrap();
    let exact = comm.interior_max_diff(&nonlinear_commutator_exact(&params, &consts, spec).unwrap()).unwrap();
    outcome(
        stated <= 1e-8,
        format!(
            "deviation from iħ(1-αp+4α²p²) {stated:.3e} (tol 1e-8); from the exact iħ(1-2αp+6α²p²) {exact:.1e}"
        ),
    )
}

fn closed_form_anchors() -> Outcome {
    let params = LinearModelParams::new(0.15, 0.15).unwrap();
    let consts = PhysicalConstants::default();
    let spec = HilbertSpec::two_mode(64, 4).unwrap();
    let set = build_linear(&params, &consts, spec).unwrap();
    let ground = StateVector::basis(spec, 0).unwrap();
    let rs = bounds::robertson(&set.x1, &set.p1, &ground).unwrap();
    let rs_target = analytic_rs_bounds_linear(&params, &consts).xp;
    let rs_rel = oracle::relative_deviation(rs, rs_target);
    let (vx, vp) = model1_ground_variances(&params, &consts);
    let var_dev = (hilbert::variance(&set.x1, &ground).unwrap() - vx)
        .abs()
        .max((hilbert::variance(&set.p1, &ground).unwrap() - vp).abs());

    let single = HilbertSpec::single_mode(64, 4).unwrap();
    let (x, p) = canonical_ops(single, 0, &consts).unwrap();
    let x2 = (&x * &x).into_hermitian().unwrap();
    let p2 = (&p * &p).into_hermitian().unwrap();
    let anti = hilbert::anticommutator(&x, &p).unwrap();
    let mut moment_dev = 0.0f64;
    for k in 0..201 {
        let theta = 2.0 * PI * k as f64 / 201.0;
        let psi = superposition_state(single, theta, 0, 1).unwrap();
        let cf = closed_form_moments(StateDescriptor::Theta(theta), &consts).unwrap();
        for (op, target) in [(&x, cf.x), (&p, cf.p), (&x2, cf.x2), (&p2, cf.p2), (&anti, cf.xp_px)] {
            moment_dev = moment_dev.max((hilbert::expectation(op, &psi).unwrap().re - target).abs());
        }
    }
    outcome(
        rs_rel <= 1e-10 && var_dev <= 1e-10 && moment_dev <= 1e-9,
        format!(
            "robertson rel {rs_rel:.1e} (tol 1e-10), ground variances {var_dev:.1e} (tol 1e-10), θ moments {moment_dev:.1e} (tol 1e-9)"
        ),
    )
}

fn sweep_of(model: ModelKind, pair: Pair) -> SweepResult {
    sweep::run_sweep(&SweepConfig::with_model(model, pair)).unwrap()
}

fn sandwich() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut undefined = 0usize;
    let mut points = 0usize;
    let check = |rec: &BoundsRecord| -> Vec<&'static str> {
        let mut bad = Vec::new();
        let tol = 1e-9;
        if !leq_rel(rec.tighter_product, rec.product, tol) {
            bad.push("tighter_product <= product");
        }
        if !leq_rel(rec.sum_lower.max(rec.pmur_l1).max(rec.pmur_l2), rec.sum, tol) {
            bad.push("max(sum_lower, L1, L2) <= sum");
        }
        if let Some(u) = rec.reverse_product {
            if !leq_rel(rec.product, u, tol) {
                bad.push("product <= reverse_product");
            }
        }
        if let Some(u) = rec.reverse_sum {
            if !leq_rel(rec.sum, u, tol) {
                bad.push("sum <= reverse_sum");
            }
        }
        bad
    };
    for (model, pair) in [
        (ModelKind::Linear, Pair::XP),
        (ModelKind::Linear, Pair::XX),
        (ModelKind::Linear, Pair::PP),
        (ModelKind::Nonlinear, Pair::XP),
    ] {
        for (theta, rec) in &sweep_of(model, pair).points {
            points += 1;
            undefined += rec.reverse_product.is_none() as usize + rec.reverse_sum.is_none() as usize;
            for b in check(rec) {
                failures.push(format!("{model}/{pair} θ={theta:.4}: {b}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = format!(
        "{points} records, {} violations, {undefined} undefined upper bounds, {secs:.2} s (limit 30 s){}",
        failures.len(),
        failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
    );
    outcome(failures.is_empty() && secs < 30.0, detail)
}

fn fig1_claim() -> Outcome {
    let result = sweep_of(ModelKind::Linear, Pair::XP);
    let mut min_margin = f64::INFINITY;
    let mut ok = true;
    for (_, rec) in &result.points {
        min_margin = min_margin.min(rec.tighter_product - rec.schrodinger);
        ok &= leq_rel(rec.schrodinger, rec.tighter_product, 1e-9);
    }
    let max_margin = result
        .points
        .iter()
        .map(|(_, r)| r.tighter_product - r.schrodinger)
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(ok, format!("tighter_product - schrodinger in [{min_margin:.3e}, {max_margin:.3e}] over 201 θ"))
}

fn fig2_claim() -> Outcome {
    let sets = sweep::figure_dataset(Figure::Fig2, &FigureOverrides::default()).unwrap();
    let (uncoupled, coupled) = (&sets[0].1, &sets[1].1);
    let l = coupled.config.linear;
    let target = (1.0 + l.lambda * l.gamma / 4.0).powi(2);
    let mut worst = 0.0f64;
    for ((_, a), (_, b)) in coupled.points.iter().zip(&uncoupled.points) {
        worst = worst.max(oracle::relative_deviation(a.robertson / b.robertson, target));
    }
    outcome(
        sets.len() == 2 && worst <= 1e-10,
        format!("ratio target {target:.6}, max relative deviation {worst:.1e} (tol 1e-10)"),
    )
}

fn fig3_claim() -> Outcome {
    let result = sweep_of(ModelKind::Nonlinear, Pair::XP);
    let exceeding: Vec<f64> = result
        .points
        .iter()
        .filter(|(_, r)| !leq_rel(r.schrodinger, r.tighter_product, 1e-9))
        .map(|(t, _)| *t)
        .collect();
    let closest = result
        .points
        .iter()
        .map(|(t, r)| (r.tighter_product - r.schrodinger, *t))
        .fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a });
    let detail = match (exceeding.first(), exceeding.last()) {
        (Some(a), Some(b)) => format!("schrodinger > tighter_product on θ ∈ [{a:.4}, {b:.4}] ({} points)", exceeding.len()),
        _ => format!(
            "no θ with schrodinger > tighter_product; smallest gap tighter_product - schrodinger = {:.3e} at θ={:.4}",
            closest.0, closest.1
        ),
    };
    outcome(!exceeding.is_empty(), detail)
}

fn oracle_equivalence() -> Outcome {
    let seed = oracle::seed_from_env();
    let instances = oracle::random_instances(100, seed).unwrap();
    let max_dim = instances.iter().map(|i| i.a.dim()).max().unwrap_or(0);
    let worst = oracle::brute_force_agreement(&instances).unwrap();
    let (kind, dev) = worst.iter().cloned().fold((worst[0].0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    outcome(
        max_dim <= 16 && dev <= 1e-10,
        format!(
            "{} instances (seed {seed}, dim ≤ {max_dim}), {} families, worst {} at {dev:.1e} (tol 1e-10)",
            instances.len(),
            worst.len(),
            kind.name()
        ),
    )
}

fn convergence() -> Outcome {
    let mut parts = Vec::new();
    let mut worst = 0.0f64;
    for (model, pair) in [
        (ModelKind::Linear, Pair::XP),
        (ModelKind::Linear, Pair::XX),
        (ModelKind::Linear, Pair::PP),
        (ModelKind::Nonlinear, Pair::XP),
    ] {
        let dev = sweep::convergence_deviation(&SweepConfig::with_model(model, pair)).unwrap();
        worst = worst.max(dev);
        parts.push(format!("{model}/{pair} {dev:.1e}"));
    }
    outcome(worst <= 1e-8, format!("dim 64→128 max field change: {} (tol 1e-8)", parts.join(", ")))
}

fn determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let overrides = FigureOverrides::default();
    let mut compared = 0usize;
    let mut mismatched = Vec::new();
    for fig in Figure::ALL {
        for dir in [&a, &b] {
            if let Err(e) = write_figure(fig, dir.path(), &overrides) {
                return outcome(false, format!("{} failed: {e}", fig.id()));
            }
        }
    }
    for entry in fs::read_dir(a.path()).unwrap() {
        let name = entry.unwrap().file_name();
        let left = fs::read(a.path().join(&name)).unwrap();
        let right = fs::read(b.path().join(&name)).unwrap_or_default();
        compared += 1;
        if left != right {
            mismatched.push(name.to_string_lossy().into_owned());
        }
    }
    outcome(mismatched.is_empty(), format!("{compared} files compared across two runs, {} differ", mismatched.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("canonical algebra", canonical_algebra),
        ("linear model commutators", linear_commutators_check),
        ("nonlinear model commutator", nonlinear_commutator),
        ("closed-form anchors", closed_form_anchors),
        ("sandwich property", sandwich),
        ("fig1: tighter bound above Schrodinger", fig1_claim),
        ("fig2: Robertson ratio (1+λγ/4)²", fig2_claim),
        ("fig3: Schrodinger exceeds tighter bound somewhere", fig3_claim),
        ("oracle equivalence", oracle_equivalence),
        ("truncation convergence", convergence),
        ("figure CSV determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let result = run();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2} {name}: {}", k + 1, result.detail);
        if !result.pass {
            failed.push(k + 1);
        }
    }
    println!("\nacceptance: {} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
