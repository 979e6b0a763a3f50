//! One function per subcommand, each returning a [`Report`].

use std::f64::consts::FRAC_PI_2;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sjm_core::analysis::{
    bloch_vector, concurrence, concurrence_curve, iso_entanglement_residual,
    reduction_closed_form_residual, rotational_symmetry_residual, verify_zero_sum, CurveFamily,
};
use sjm_core::bases::{
    build_original_ejm, build_sjm_basis, sjm_overlap_closed_form, sjm_state, sjm_state_closed_form,
};
use sjm_core::circuit::{build_sjm_circuit, verify_discrimination, MAGNITUDE_TOL};
use sjm_core::multiqubit::{
    build_multi_basis, multi_reduction_closed_form, EXHAUSTIVE_GRAM_MAX_QUBITS,
};
use sjm_core::network::{
    inclusive_grid, joint_distribution, nonlocality_scan, nonlocality_threshold,
    p_same_closed_form, threshold_bracket, trilocal_bound,
};
use sjm_core::{MultiBasis64, State64, TOL_EXACT, TOL_NORM};

use crate::config::{ConfigError, RunConfig};
use crate::output::{Report, Table};

/// States checked against the reduction closed form above the exhaustive size.
pub const SAMPLED_REDUCTION_STATES: usize = 32;

fn amplitudes_json(s: &State64) -> Value {
    s.amplitudes().iter().map(|z| json!([z.re, z.im])).collect()
}

fn bits(index: usize, width: usize) -> String {
    format!("{index:0width$b}")
}

pub fn basis(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let p = cfg.params()?;
    let states: Vec<(Vec<usize>, State64)> = if cfg.n == 2 {
        build_sjm_basis(&p)
            .states
            .into_iter()
            .enumerate()
            .map(|(k, s)| (vec![k], s))
            .collect()
    } else {
        let b = build_multi_basis(cfg.n, &p).map_err(ConfigError::Params)?;
        (0..b.len())
            .map(|i| (b.index_tuple(i), b.state(i).expect("in range")))
            .collect()
    };

    let mut table = Table::new(&["state", "component", "re", "im"]);
    for (i, (_, s)) in states.iter().enumerate() {
        for (c, z) in s.amplitudes().iter().enumerate() {
            table.push(vec![i.into(), c.into(), z.re.into(), z.im.into()]);
        }
    }
    let json = json!({
        "label": if cfg.n == 2 { "SJM" } else { "SJM-product" },
        "n": cfg.n,
        "theta": p.theta(),
        "phi": p.phi(),
        "num_states": states.len(),
        "states": states.iter().enumerate().map(|(i, (t, s))| json!({
            "index": i,
            "tuple": t,
            "amplitudes": amplitudes_json(s),
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        table,
        passed: true,
    })
}

struct Check {
    name: &'static str,
    residual: f64,
    tolerance: f64,
}

impl Check {
    fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn multi_reduction_residual(b: &MultiBasis64, rng: &mut ChaCha8Rng) -> f64 {
    let indices: Vec<usize> = if b.num_qubits() <= EXHAUSTIVE_GRAM_MAX_QUBITS {
        (0..b.len()).collect()
    } else {
        (0..SAMPLED_REDUCTION_STATES)
            .map(|_| (rng.next_u64() % b.len() as u64) as usize)
            .collect()
    };
    let n = b.num_qubits();
    max_of(indices.into_iter().flat_map(|i| {
        let tuple = b.index_tuple(i);
        let s = b.state(i).expect("in range");
        (0..n)
            .map(|pos| {
                let v = bloch_vector(&s, pos).expect("in range");
                v.max_abs_diff(&multi_reduction_closed_form(n, tuple[pos / 2], b.params(), pos))
            })
            .collect::<Vec<_>>()
    }))
}

pub fn verify(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let p = cfg.params()?;
    let b = build_sjm_basis(&p);
    let seed = cfg.seed_or_default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let closed_state = max_of(
        (0..4).map(|k| sjm_state(k, &p).max_abs_diff(&sjm_state_closed_form(k, &p)).expect("same size")),
    );
    let overlap = max_of((0..4).flat_map(|j| {
        let b = &b;
        (0..4).map(move |k| {
            let z = b.states[j].inner(&b.states[k]).expect("same size");
            (z.re - sjm_overlap_closed_form(j, k, &p)).abs().max(z.im.abs())
        })
    }));
    let circuit = verify_discrimination(&build_sjm_circuit(&p), &b).map_err(ConfigError::Params)?;
    let distinct_penalty = if circuit.distinct { 0.0 } else { f64::INFINITY };
    let dist = joint_distribution(&p);
    let multi = build_multi_basis(cfg.n, &p).map_err(ConfigError::Params)?;
    let gram = multi.gram_check(&mut rng);

    let checks = [
        Check { name: "orthonormality_residual", residual: b.orthonormality_residual(), tolerance: TOL_NORM },
        Check { name: "completeness_residual", residual: b.completeness_residual(), tolerance: TOL_NORM },
        Check { name: "closed_form_state_residual", residual: closed_state, tolerance: TOL_EXACT },
        Check { name: "overlap_closed_form_residual", residual: overlap, tolerance: TOL_EXACT },
        Check { name: "iso_entanglement_residual", residual: iso_entanglement_residual(&p), tolerance: TOL_NORM },
        Check { name: "reduction_closed_form_residual", residual: reduction_closed_form_residual(&p), tolerance: TOL_NORM },
        Check { name: "zero_sum_residual", residual: verify_zero_sum(&b).expect("two-qubit basis"), tolerance: TOL_NORM },
        Check { name: "rotational_symmetry_residual", residual: rotational_symmetry_residual(&p), tolerance: TOL_NORM },
        Check { name: "circuit_magnitude_residual", residual: circuit.magnitude_residual().max(distinct_penalty), tolerance: MAGNITUDE_TOL },
        Check { name: "network_closed_form_residual", residual: dist.closed_form_residual(), tolerance: TOL_NORM },
        Check { name: "network_normalization_residual", residual: (dist.total() - 1.0).abs(), tolerance: TOL_NORM },
        Check { name: "network_permutation_residual", residual: dist.permutation_residual(), tolerance: TOL_NORM },
        Check { name: "multiqubit_gram_residual", residual: gram.max_residual, tolerance: TOL_NORM },
        Check { name: "multiqubit_reduction_residual", residual: multi_reduction_residual(&multi, &mut rng), tolerance: TOL_NORM },
    ];

    let passed = checks.iter().all(Check::pass);
    let mut table = Table::new(&["name", "max_residual", "tolerance", "pass"]);
    for c in &checks {
        table.push(vec![c.name.into(), c.residual.into(), c.tolerance.into(), c.pass().into()]);
    }
    let json = json!({
        "theta": p.theta(),
        "phi": p.phi(),
        "n": cfg.n,
        "seed": seed,
        "checks": checks.iter().map(|c| json!({
            "name": c.name,
            "max_residual": c.residual,
            "tolerance": c.tolerance,
            "pass": c.pass(),
        })).collect::<Vec<_>>(),
        "all_pass": passed,
    });
    Ok(Report { json, table, passed })
}

pub fn circuit(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let p = cfg.params()?;
    let c = build_sjm_circuit(&p);
    let rep = verify_discrimination(&c, &build_sjm_basis(&p)).map_err(ConfigError::Params)?;

    let mut table = Table::new(&[
        "k",
        "target",
        "magnitude",
        "phase",
        "expected_target",
        "expected_sign",
        "phase_matches",
    ]);
    let mut mappings = Vec::new();
    for m in &rep.mappings {
        let phase = m.amplitude.arg();
        table.push(vec![
            m.k.into(),
            bits(m.target, 2).into(),
            m.magnitude.into(),
            phase.into(),
            bits(m.expected_target, 2).into(),
            i64::from(m.expected_sign).into(),
            m.phase_matches.into(),
        ]);
        mappings.push(json!({
            "k": m.k,
            "target": bits(m.target, 2),
            "magnitude": m.magnitude,
            "phase": phase,
            "amplitude": [m.amplitude.re, m.amplitude.im],
            "expected_target": bits(m.expected_target, 2),
            "expected_sign": m.expected_sign,
            "phase_matches": m.phase_matches,
        }));
    }
    let passed = rep.passed();
    let json = json!({
        "theta": p.theta(),
        "phi": p.phi(),
        "circuit": serde_json::to_value(&c).expect("serializable"),
        "mappings": mappings,
        "distinct": rep.distinct,
        "magnitudes_ok": rep.magnitudes_ok,
        "phases_match": rep.phases_match,
        "magnitude_residual": rep.magnitude_residual(),
        "passed": passed,
    });
    Ok(Report { json, table, passed })
}

pub fn network_table(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let p = cfg.params()?;
    let d = joint_distribution(&p);
    let mut table = Table::new(&["a", "b", "c", "probability"]);
    let mut rows = Vec::new();
    for (a, b, c, prob) in d.rows() {
        table.push(vec![a.into(), b.into(), c.into(), prob.into()]);
        rows.push(json!({"a": a, "b": b, "c": c, "probability": prob}));
    }
    let closed = d.closed_form_residual();
    let total = d.total();
    let passed = closed <= TOL_NORM && (total - 1.0).abs() <= TOL_NORM;
    let json = json!({
        "theta": p.theta(),
        "phi": p.phi(),
        "total": total,
        "p_same": d.p_same(),
        "closed_form_residual": closed,
        "permutation_residual": d.permutation_residual(),
        "rows": rows,
    });
    Ok(Report { json, table, passed })
}

pub fn network_scan(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let p = cfg.params()?;
    let thetas = inclusive_grid(0.0, FRAC_PI_2, cfg.grid_steps);
    let reports = nonlocality_scan(&thetas, p.phi()).map_err(ConfigError::Params)?;
    let closed = max_of(reports.iter().map(|r| (r.p_same - p_same_closed_form(r.theta)).abs()));
    let mut table = Table::new(&["theta", "p_same", "bound", "violates"]);
    for r in &reports {
        table.push(vec![r.theta.into(), r.p_same.into(), r.trilocal_bound.into(), r.violates.into()]);
    }
    let bracket = threshold_bracket(&reports);
    let json = json!({
        "phi": p.phi(),
        "grid_steps": cfg.grid_steps,
        "trilocal_bound": trilocal_bound::<f64>(),
        "threshold": nonlocality_threshold::<f64>(),
        "bracket": bracket.map(|(lo, hi)| vec![lo, hi]),
        "closed_form_residual": closed,
        "rows": reports,
    });
    Ok(Report {
        json,
        table,
        passed: closed <= TOL_NORM,
    })
}

pub fn curve(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let thetas = inclusive_grid(0.0, FRAC_PI_2, cfg.grid_steps);
    let sjm = concurrence_curve(CurveFamily::Sjm, &thetas).map_err(ConfigError::Params)?;
    let family = concurrence_curve(CurveFamily::EjmFamily, &thetas).map_err(ConfigError::Params)?;
    let original = max_of(
        build_original_ejm::<f64>()
            .states
            .iter()
            .map(|s| concurrence(s).expect("two qubits")),
    );
    let residual = max_of(sjm.iter().chain(&family).map(|pt| pt.residual()))
        .max((original - 0.5).abs());

    let mut table = Table::new(&["theta", "c_sjm", "c_ejm_family", "c_original_ejm"]);
    let mut rows = Vec::new();
    for (s, f) in sjm.iter().zip(&family) {
        table.push(vec![s.theta.into(), s.concurrence.into(), f.concurrence.into(), original.into()]);
        rows.push(json!({
            "theta": s.theta,
            "c_sjm": s.concurrence,
            "c_ejm_family": f.concurrence,
            "c_original_ejm": original,
        }));
    }
    let passed = residual <= TOL_NORM;
    let json = json!({
        "grid_steps": cfg.grid_steps,
        "max_residual": residual,
        "rows": rows,
    });
    Ok(Report { json, table, passed })
}

pub fn multiqubit(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let p = cfg.params()?;
    let seed = cfg.seed_or_default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = build_multi_basis(cfg.n, &p).map_err(ConfigError::Params)?;
    let gram = b.gram_check(&mut rng);

    let mut table = Table::new(&["index", "position", "x", "y", "z"]);
    let mut rows = Vec::new();
    let mut residual = 0.0_f64;
    for i in 0..b.len() {
        let tuple = b.index_tuple(i);
        let s = b.state(i).expect("in range");
        for pos in 0..cfg.n {
            let v = bloch_vector(&s, pos).expect("in range");
            let cf = multi_reduction_closed_form(cfg.n, tuple[pos / 2], &p, pos);
            residual = residual.max(v.max_abs_diff(&cf));
            table.push(vec![i.into(), pos.into(), v.x.into(), v.y.into(), v.z.into()]);
            rows.push(json!({"index": i, "position": pos, "x": v.x, "y": v.y, "z": v.z}));
        }
    }
    let passed = gram.max_residual <= TOL_NORM && residual <= TOL_NORM;
    let json = json!({
        "n": cfg.n,
        "theta": p.theta(),
        "phi": p.phi(),
        "seed": seed,
        "num_states": b.len(),
        "gram": gram,
        "reduction_closed_form_residual": residual,
        "reductions": rows,
        "passed": passed,
    });
    Ok(Report { json, table, passed })
}
