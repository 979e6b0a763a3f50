//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sjm_core::analysis::{
    concurrence, concurrence_curve, ejm_family_concurrence_closed_form, linear_entropy_measure,
    reduction_vertices, rotational_symmetry_residual,
    sjm_concurrence_closed_form, tetrahedron_report, verify_zero_sum, CurveFamily,
};
use sjm_core::bases::{
    build_original_ejm, build_sjm_basis, ejm_sjm_overlap_closed_form, sjm_overlap_closed_form,
    sjm_state,
};
use sjm_core::circuit::{build_sjm_circuit, verify_discrimination, GateKind};
use sjm_core::multiqubit::{self, build_multi_basis};
use sjm_core::network::{
    amplitude_closed_form, inclusive_grid, joint_amplitudes, joint_distribution,
    nonlocality_scan, nonlocality_threshold, outcome_tuple, p_same_closed_form, threshold_bracket,
};
use sjm_core::{Bloch64, Operator64, Params64};

const THETAS: [f64; 5] = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2];
const PHIS: [f64; 5] = [-PI, -FRAC_PI_2, 0.0, PI / 3.0, PI];
const NETWORK_PHIS: [f64; 2] = [0.0, PI / 3.0];
const ORACLE_SEED: u64 = 0x5EED_0718;

struct Check {
    label: &'static str,
    residual: f64,
    tol: f64,
}

impl Check {
    fn new(label: &'static str, residual: f64, tol: f64) -> Self {
        Self { label, residual, tol }
    }

    fn flag(label: &'static str, ok: bool) -> Self {
        Self::new(label, if ok { 0.0 } else { f64::INFINITY }, 0.0)
    }

    fn ok(&self) -> bool {
        self.residual <= self.tol
    }
}

fn grid() -> impl Iterator<Item = Params64> {
    THETAS
        .iter()
        .flat_map(|&t| PHIS.iter().map(move |&f| Params64::new(t, f).unwrap()))
}

fn fold_max(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn report(n: usize, title: &str, checks: &[Check]) -> bool {
    let pass = checks.iter().all(Check::ok);
    println!("{} criterion {n}: {title}", if pass { "PASS" } else { "FAIL" });
    for c in checks {
        println!(
            "    [{}] {:<44} residual {:.3e} (tol {:.0e})",
            if c.ok() { "ok" } else { "!!" },
            c.label,
            c.residual,
            c.tol
        );
    }
    pass
}

fn orthonormality() -> Vec<Check> {
    let mut gram = 0.0_f64;
    let mut closed = 0.0_f64;
    for p in grid() {
        let b = build_sjm_basis(&p);
        gram = gram.max(b.orthonormality_residual());
        for j in 0..4 {
            for k in 0..4 {
                let num = b.states[j].inner(&b.states[k]).unwrap();
                let cf = sjm_overlap_closed_form(j, k, &p);
                closed = closed.max((num.re - cf).abs()).max(num.im.abs());
            }
        }
    }
    vec![
        Check::new("Gram − I over 5×5 grid", gram, 1e-10),
        Check::new("overlap closed form vs ⟨Φ_j|Φ_k⟩", closed, 1e-12),
    ]
}

fn concurrence_checks() -> Vec<Check> {
    let mut worst = 0.0_f64;
    for p in grid() {
        let expected = sjm_concurrence_closed_form(p.theta());
        for k in 0..4 {
            worst = worst.max((concurrence(&sjm_state(k, &p)).unwrap() - expected).abs());
        }
    }
    let at = |theta: f64| {
        fold_max((0..4).map(|k| concurrence(&sjm_state(k, &Params64::new(theta, 0.3).unwrap())).unwrap()))
    };
    let c0 = at(0.0);
    let c1 = at(FRAC_PI_2);
    let family_grid = inclusive_grid(0.0, FRAC_PI_2, 64);
    let family = concurrence_curve(CurveFamily::EjmFamily, &family_grid).unwrap();
    let family_res = fold_max(family.iter().map(|pt| pt.residual()));
    let family_cf_res = fold_max(
        family
            .iter()
            .map(|pt| (pt.closed_form - ejm_family_concurrence_closed_form(pt.theta)).abs()),
    );
    vec![
        Check::new("C(|Φ_k⟩) − |sin θ|/2 over grid", worst, 1e-10),
        Check::new("C at θ = 0", c0, 1e-10),
        Check::new("C at θ = π/2 minus 1/2", (c1 - 0.5).abs(), 1e-10),
        Check::new("reference family C − ½√(1+3sin²θ)", family_res.max(family_cf_res), 1e-10),
    ]
}

fn reductions() -> Vec<Check> {
    let closed = fold_max(grid().map(|p| sjm_core::analysis::reduction_closed_form_residual(&p)));
    let rot = fold_max(grid().map(|p| rotational_symmetry_residual(&p)));
    let zero_sum = fold_max(grid().map(|p| verify_zero_sum(&build_sjm_basis(&p)).unwrap()));

    let aligned = build_sjm_basis(&Params64::ejm_aligned());
    let (first, second) = reduction_vertices(&aligned).unwrap();
    let r = 3f64.sqrt() / 2.0;
    let mut tetra = 0.0_f64;
    for set in [&first, &second] {
        let t = tetrahedron_report(set, r);
        let edge = 2.0 * (2.0f64 / 3.0).sqrt() * r;
        tetra = tetra
            .max(t.edge_spread)
            .max(t.radius_residual)
            .max(t.centroid_norm)
            .max((t.edge - edge).abs());
    }
    let h = |x: f64, y: f64, z: f64| Bloch64::new(x / 2.0, y / 2.0, z / 2.0);
    let upper = [h(-1., -1., 1.), h(-1., 1., -1.), h(1., 1., 1.), h(1., -1., -1.)];
    let lower = [h(-1., -1., -1.), h(-1., 1., 1.), h(1., 1., -1.), h(1., -1., 1.)];
    let set_distance = |expected: &[Bloch64; 4], got: &[Bloch64; 4]| {
        fold_max(expected.iter().map(|e| {
            got.iter()
                .map(|g| e.max_abs_diff(g))
                .fold(f64::INFINITY, f64::min)
        }))
    };
    let vertices = set_distance(&upper, &first).max(set_distance(&lower, &second));
    vec![
        Check::new("Bloch vectors vs closed form", closed, 1e-10),
        Check::new("π-rotation maps first onto second", rot, 1e-10),
        Check::new("Σ_k reduction vectors", zero_sum, 1e-10),
        Check::new("regular tetrahedra, circumradius √3/2", tetra, 1e-10),
        Check::new("explicit vertex sets reproduced", vertices, 1e-10),
    ]
}

fn ejm_relation() -> Vec<Check> {
    let p = Params64::ejm_aligned();
    let sjm = build_sjm_basis(&p);
    let ejm = build_original_ejm::<f64>();
    let shifted = fold_max((0..4).map(|j| ejm.states[j].inner(&sjm.states[(j + 1) % 4]).unwrap().norm()));
    let mut closed = 0.0_f64;
    for j in 0..4 {
        for k in 0..4 {
            let num = ejm.states[j].inner(&sjm.states[k]).unwrap();
            closed = closed.max((num - ejm_sjm_overlap_closed_form(j, k, p.phi())).norm());
        }
    }
    vec![
        Check::new("|⟨Ψ_j|Φ_{j+1 mod 4}⟩|", shifted, 1e-10),
        Check::new("EJM/SJM overlap closed form, 16 pairs", closed, 1e-12),
    ]
}

fn circuit_checks() -> Vec<Check> {
    let mut magnitude = 0.0_f64;
    let mut distinct = true;
    for p in grid() {
        let rep = verify_discrimination(&build_sjm_circuit(&p), &build_sjm_basis(&p)).unwrap();
        magnitude = magnitude.max(rep.magnitude_residual());
        distinct &= rep.distinct;
    }
    let p = Params64::ejm_aligned();
    let c = build_sjm_circuit(&p);
    let rep = verify_discrimination(&c, &build_sjm_basis(&p)).unwrap();
    let mapping = fold_max(rep.mappings.iter().map(|m| {
        if m.target != m.expected_target {
            return f64::INFINITY;
        }
        (m.amplitude.re - f64::from(m.expected_sign)).abs().max(m.amplitude.im.abs())
    }));
    let identity = fold_max(
        c.gates
            .iter()
            .filter(|g| matches!(g.kind, GateKind::ControlledPhase(_) | GateKind::ControlledRx(_)))
            .map(|g| g.matrix().max_abs_diff(&Operator64::identity(4)).unwrap()),
    );
    let parameterized = c
        .gates
        .iter()
        .filter(|g| matches!(g.kind, GateKind::ControlledPhase(_) | GateKind::ControlledRx(_)))
        .count();
    vec![
        Check::flag("four distinct targets on every grid point", distinct),
        Check::new("1 − |overlap| over grid", magnitude, 1e-8),
        Check::new("aligned mapping 01, −11, −00, 10", mapping, 1e-8),
        Check::flag("two parameterized gates present", parameterized == 2),
        Check::new("parameterized gates − I at alignment", identity, 1e-12),
    ]
}

fn network_checks() -> Vec<Check> {
    let mut closed = 0.0_f64;
    let mut total = 0.0_f64;
    let mut perm = 0.0_f64;
    let mut same = 0.0_f64;
    for &phi in &NETWORK_PHIS {
        for &theta in &THETAS {
            let d = joint_distribution(&Params64::new(theta, phi).unwrap());
            closed = closed.max(d.closed_form_residual());
            total = total.max((d.total() - 1.0).abs());
            perm = perm.max(d.permutation_residual());
            same = same.max((d.p_same() - p_same_closed_form(theta)).abs());
        }
    }
    let top = joint_distribution(&Params64::new(FRAC_PI_2, 0.0).unwrap());
    let values = fold_max(top.probs.iter().map(|&p| {
        [25.0, 5.0, 1.0]
            .iter()
            .map(|v| (p - v / 256.0).abs())
            .fold(f64::INFINITY, f64::min)
    }));
    let hits = [25.0, 5.0, 1.0]
        .iter()
        .all(|v| top.probs.iter().any(|&p| (p - v / 256.0).abs() < 1e-10));
    let flat = joint_distribution(&Params64::new(0.0, 0.0).unwrap());
    let uniform = fold_max(flat.probs.iter().map(|p| (p - 1.0 / 64.0).abs()));

    let threshold = nonlocality_threshold::<f64>();
    let coarse = inclusive_grid(0.0, FRAC_PI_2, 64);
    let fine = inclusive_grid(0.80, 0.85, 500);
    let mut bracket = 0.0_f64;
    for thetas in [&coarse, &fine] {
        let step = thetas[1] - thetas[0];
        let scan = nonlocality_scan(thetas, FRAC_PI_4).unwrap();
        let hit = threshold_bracket(&scan);
        if let Some((lo, hi)) = hit {
            println!("    bracket [{lo:.5}, {hi:.5}] at step {step:.2e}");
        }
        bracket = bracket.max(match hit {
            Some((lo, hi)) if lo <= threshold && threshold <= hi && hi - lo <= step * (1.0 + 1e-9) => 0.0,
            _ => f64::INFINITY,
        });
    }
    println!("    threshold arcsin√(15/28) = {threshold:.6} rad");
    vec![
        Check::new("brute force vs three-case closed form", closed, 1e-10),
        Check::new("θ = π/2 values in {25, 5, 1}/256", values, 1e-10),
        Check::flag("θ = π/2 all three values occur", hits),
        Check::new("θ = 0 uniform 1/64", uniform, 1e-10),
        Check::new("|Σ p − 1|", total, 1e-10),
        Check::new("outcome permutation invariance", perm, 1e-10),
        Check::new("p(a=b=c) − (4+21sin²θ)/64", same, 1e-10),
        Check::new("scan brackets threshold within a step", bracket, 0.0),
    ]
}

fn multiqubit_checks() -> Vec<Check> {
    let p = Params64::new(3.0 * FRAC_PI_8, PI / 3.0).unwrap();
    let aligned = Params64::ejm_aligned();
    let mut gram4 = 0.0_f64;
    let mut gram6 = 0.0_f64;
    for q in [p, aligned] {
        gram4 = gram4.max(build_multi_basis(4, &q).unwrap().exhaustive_gram_residual());
        gram6 = gram6.max(build_multi_basis(6, &q).unwrap().exhaustive_gram_residual());
    }
    let mut two = 0.0_f64;
    for q in grid() {
        let b = build_multi_basis(2, &q).unwrap();
        for k in 0..4 {
            two = two.max(b.state(k).unwrap().max_abs_diff(&sjm_state(k, &q)).unwrap());
        }
    }
    let mut reductions = 0.0_f64;
    for n in [2, 4, 6] {
        for q in [p, aligned] {
            reductions = reductions.max(multiqubit::reduction_closed_form_residual(
                &build_multi_basis(n, &q).unwrap(),
            ));
        }
    }
    let mut product = 0.0_f64;
    for n in [2, 4, 6] {
        let b = build_multi_basis(n, &Params64::new(0.0, 0.7).unwrap()).unwrap();
        for s in b.states() {
            for q in 0..n {
                product = product.max(linear_entropy_measure(&s, q).unwrap());
            }
        }
    }
    vec![
        Check::new("n = 4 Gram − I", gram4, 1e-10),
        Check::new("n = 6 Gram − I", gram6, 1e-10),
        Check::new("n = 2 equals two-qubit basis", two, 1e-12),
        Check::new("reductions vs closed form, n ∈ {2,4,6}", reductions, 1e-10),
        Check::new("θ = 0 pair concurrence", product, 1e-10),
    ]
}

fn cross_oracle() -> Vec<Check> {
    println!("    oracle seed = {ORACLE_SEED:#x}");
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let p = Params64::new(rng.random_range(0.0..=FRAC_PI_2), rng.random_range(-PI..=PI)).unwrap();
        let brute = joint_amplitudes(&[p, p, p]);
        for (i, z) in brute.iter().enumerate() {
            let (a, b, c) = outcome_tuple(i);
            worst = worst.max((z - amplitude_closed_form(a, b, c, &p)).norm());
        }
    }
    vec![Check::new("closed-form amplitudes, 10 × 64 outcomes", worst, 1e-10)]
}

fn main() -> ExitCode {
    let results = [
        report(1, "orthonormality", &orthonormality()),
        report(2, "concurrence", &concurrence_checks()),
        report(3, "reductions", &reductions()),
        report(4, "EJM relation", &ejm_relation()),
        report(5, "discrimination circuit", &circuit_checks()),
        report(6, "triangle network", &network_checks()),
        report(7, "multiqubit", &multiqubit_checks()),
        report(8, "cross-oracle amplitudes", &cross_oracle()),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
