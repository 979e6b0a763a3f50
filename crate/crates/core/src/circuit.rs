//! Gate-level model of the two-qubit discrimination circuit that maps the
//! symmetric basis onto the computational basis.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bases::{JointBasis, SjmParams};
use crate::error::{Result, SjmError};
use crate::linalg::{Operator, StateVector, Tensor};
use crate::scalar::Scalar;

/// Gate kinds with their angle parameter, if any. Controlled kinds act on
/// `(control, target)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param")]
pub enum GateKind<T> {
    H,
    X,
    S,
    /// `R(α) = diag(1, e^{iα})`.
    #[serde(rename = "R")]
    Phase(T),
    /// `R_x(β) = e^{−i(β/2)σ_x}`.
    Rx(T),
    #[serde(rename = "CNOT")]
    Cnot,
    #[serde(rename = "CR")]
    ControlledPhase(T),
    #[serde(rename = "CRx")]
    ControlledRx(T),
    #[serde(rename = "CS")]
    ControlledS,
}

impl<T: Scalar> GateKind<T> {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::S => "S",
            GateKind::Phase(_) => "R",
            GateKind::Rx(_) => "Rx",
            GateKind::Cnot => "CNOT",
            GateKind::ControlledPhase(_) => "CR",
            GateKind::ControlledRx(_) => "CRx",
            GateKind::ControlledS => "CS",
        }
    }

    pub fn param(&self) -> Option<T> {
        match *self {
            GateKind::Phase(a)
            | GateKind::Rx(a)
            | GateKind::ControlledPhase(a)
            | GateKind::ControlledRx(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_controlled(&self) -> bool {
        matches!(
            self,
            GateKind::Cnot
                | GateKind::ControlledPhase(_)
                | GateKind::ControlledRx(_)
                | GateKind::ControlledS
        )
    }

    fn map_param(self, f: impl Fn(T) -> T) -> Self {
        match self {
            GateKind::Phase(a) => GateKind::Phase(f(a)),
            GateKind::Rx(a) => GateKind::Rx(f(a)),
            GateKind::ControlledPhase(a) => GateKind::ControlledPhase(f(a)),
            GateKind::ControlledRx(a) => GateKind::ControlledRx(f(a)),
            other => other,
        }
    }

    /// Single-qubit operator acted on the target (the gate itself when uncontrolled).
    fn target_operator(&self) -> Operator<T> {
        let one = Complex::new(T::one(), T::zero());
        match *self {
            GateKind::H => Operator::pauli_x()
                .add(&Operator::pauli_z())
                .expect("2×2")
                .scale(Complex::new(T::FRAC_1_SQRT_2(), T::zero())),
            GateKind::X | GateKind::Cnot => Operator::pauli_x(),
            GateKind::S | GateKind::ControlledS => {
                Operator::diagonal(&[one, Complex::cis(T::FRAC_PI_2())])
            }
            GateKind::Phase(a) | GateKind::ControlledPhase(a) => {
                Operator::diagonal(&[one, Complex::cis(a)])
            }
            GateKind::Rx(b) | GateKind::ControlledRx(b) => {
                let (s, c) = (b / T::lit(2.0)).sin_cos();
                let d = Complex::new(c, T::zero());
                let o = Complex::new(T::zero(), -s);
                Operator::from_2x2([[d, o], [o, d]])
            }
        }
    }
}

/// Unitary of a gate kind: 2×2, or 4×4 `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ G` on
/// `(control, target)` for controlled kinds.
pub fn gate_matrix<T: Scalar>(kind: &GateKind<T>) -> Operator<T> {
    let g = kind.target_operator();
    if !kind.is_controlled() {
        return g;
    }
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let p0 = Operator::diagonal(&[one, zero]);
    let p1 = Operator::diagonal(&[zero, one]);
    p0.tensor(&Operator::identity(2))
        .add(&p1.tensor(&g))
        .expect("4×4")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate<T> {
    #[serde(flatten)]
    pub kind: GateKind<T>,
    pub controls: Vec<usize>,
    pub targets: Vec<usize>,
}

impl<T: Scalar> Gate<T> {
    pub fn single(kind: GateKind<T>, target: usize) -> Self {
        Self {
            kind,
            controls: vec![],
            targets: vec![target],
        }
    }

    pub fn controlled(kind: GateKind<T>, control: usize, target: usize) -> Self {
        Self {
            kind,
            controls: vec![control],
            targets: vec![target],
        }
    }

    /// Qubits the gate matrix acts on, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        self.controls.iter().chain(&self.targets).copied().collect()
    }

    pub fn matrix(&self) -> Operator<T> {
        gate_matrix(&self.kind)
    }
}

/// Ordered gate list over `num_qubits` qubits, optionally tagged with the
/// basis parameters it was compiled for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct GateCircuit<T> {
    pub num_qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<SjmParams<T>>,
    pub gates: Vec<Gate<T>>,
}

impl<T: Scalar> GateCircuit<T> {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            params: None,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate<T>) -> &mut Self {
        self.gates.push(gate);
        self
    }

    /// Checks arity and index ranges of every gate.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            let expected_controls = usize::from(g.kind.is_controlled());
            if g.controls.len() != expected_controls || g.targets.len() != 1 {
                return Err(SjmError::GateArity {
                    kind: g.kind.name(),
                    expected: expected_controls + 1,
                    actual: g.controls.len() + g.targets.len(),
                });
            }
            let qs = g.qubits();
            for (i, &q) in qs.iter().enumerate() {
                if q >= self.num_qubits {
                    return Err(SjmError::QubitOutOfRange {
                        index: q,
                        num_qubits: self.num_qubits,
                    });
                }
                if qs[..i].contains(&q) {
                    return Err(SjmError::DuplicateQubit(q));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        if state.num_qubits() != self.num_qubits {
            return Err(SjmError::WrongQubitCount {
                expected: self.num_qubits,
                actual: state.num_qubits(),
            });
        }
        self.validate()?;
        self.gates
            .iter()
            .try_fold(state.clone(), |s, g| s.apply_gate(&g.matrix(), &g.qubits()))
    }

    /// Full circuit unitary, assembled column by column.
    pub fn unitary(&self) -> Result<Operator<T>> {
        let dim = 1usize << self.num_qubits;
        let columns = (0..dim)
            .map(|c| self.apply(&StateVector::basis_state(self.num_qubits, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Operator::from_fn(dim, |r, c| columns[c].amplitude(r)))
    }

    /// Gates whose matrix differs from the identity by more than `tol`.
    pub fn nontrivial_gate_count(&self, tol: T) -> usize {
        self.gates
            .iter()
            .filter(|g| {
                let m = g.matrix();
                m.max_abs_diff(&Operator::identity(m.dim()))
                    .expect("same dimension")
                    > tol
            })
            .count()
    }

    /// Same circuit with every gate angle passed through `f`.
    pub fn map_params(&self, f: impl Fn(T) -> T + Copy) -> Self {
        Self {
            num_qubits: self.num_qubits,
            params: self
                .params
                .map(|p| SjmParams::new(f(p.theta()), f(p.phi())).unwrap_or(p)),
            gates: self
                .gates
                .iter()
                .map(|g| Gate {
                    kind: g.kind.map_param(f),
                    controls: g.controls.clone(),
                    targets: g.targets.clone(),
                })
                .collect(),
        }
    }
}

/// The nine-gate discrimination circuit for `|Φ_k(θ, φ)⟩` (qubit 0 on top):
/// CNOT(0→1), H(0), C-R(π/2 − θ)(0→1), X(1), C-R_x(π/2 − 2φ)(1→0),
/// C-S(0→1), X(1), H(0), H(1).
pub fn build_sjm_circuit<T: Scalar>(p: &SjmParams<T>) -> GateCircuit<T> {
    let two = T::lit(2.0);
    let mut c = GateCircuit::new(2);
    c.params = Some(*p);
    c.push(Gate::controlled(GateKind::Cnot, 0, 1))
        .push(Gate::single(GateKind::H, 0))
        .push(Gate::controlled(
            GateKind::ControlledPhase(T::FRAC_PI_2() - p.theta()),
            0,
            1,
        ))
        .push(Gate::single(GateKind::X, 1))
        .push(Gate::controlled(
            GateKind::ControlledRx(T::FRAC_PI_2() - two * p.phi()),
            1,
            0,
        ))
        .push(Gate::controlled(GateKind::ControlledS, 0, 1))
        .push(Gate::single(GateKind::X, 1))
        .push(Gate::single(GateKind::H, 0))
        .push(Gate::single(GateKind::H, 1));
    c
}

/// Expected outputs `U|Φ_k⟩ = sign · |target⟩`:
/// `|Φ_0⟩ → |01⟩`, `|Φ_1⟩ → −|11⟩`, `|Φ_2⟩ → −|00⟩`, `|Φ_3⟩ → |10⟩`.
pub const EXPECTED_MAPPING: [(usize, i8); 4] = [(0b01, 1), (0b11, -1), (0b00, -1), (0b10, 1)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateMapping<T> {
    pub k: usize,
    /// Computational basis index with the largest overlap.
    pub target: usize,
    pub magnitude: T,
    /// The output amplitude on `target`.
    pub amplitude: Complex<T>,
    pub expected_target: usize,
    pub expected_sign: i8,
    /// `max_i |p_i − δ_{i,target}|` over the computational-basis probabilities.
    pub one_hot_residual: T,
    pub phase_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationReport<T> {
    pub mappings: Vec<StateMapping<T>>,
    pub distinct: bool,
    pub magnitudes_ok: bool,
    pub phases_match: bool,
}

impl<T: Scalar> DiscriminationReport<T> {
    /// Distinct targets with unit overlaps. Phase agreement is reported
    /// separately and does not affect this verdict.
    pub fn passed(&self) -> bool {
        self.distinct && self.magnitudes_ok
    }

    /// `max_k |1 − |⟨target_k|U|Φ_k⟩||`.
    pub fn magnitude_residual(&self) -> T {
        self.mappings
            .iter()
            .fold(T::zero(), |m, s| m.max((T::one() - s.magnitude).abs()))
    }
}

/// Overlap magnitude tolerance for a perfect discrimination.
pub const MAGNITUDE_TOL: f64 = 1e-8;

pub fn verify_discrimination<T: Scalar>(
    circuit: &GateCircuit<T>,
    basis: &JointBasis<T>,
) -> Result<DiscriminationReport<T>> {
    if circuit.num_qubits != 2 {
        return Err(SjmError::WrongQubitCount {
            expected: 2,
            actual: circuit.num_qubits,
        });
    }
    match (circuit.params, basis.params) {
        (Some(a), Some(b)) => {
            let tol = T::lit(crate::TOL_EXACT);
            if (a.theta() - b.theta()).abs() > tol || (a.phi() - b.phi()).abs() > tol {
                return Err(SjmError::ParameterMismatch);
            }
        }
        (None, None) => {}
        _ => return Err(SjmError::ParameterMismatch),
    }

    let phase_tol = T::lit(MAGNITUDE_TOL);
    let mut mappings = Vec::with_capacity(basis.states.len());
    for (k, state) in basis.states.iter().enumerate() {
        let out = circuit.apply(state)?;
        let probs = out.probabilities();
        let target = (0..probs.len())
            .max_by(|&a, &b| probs[a].partial_cmp(&probs[b]).expect("finite"))
            .expect("non-empty");
        let amplitude = out.amplitude(target);
        let one_hot_residual = probs.iter().enumerate().fold(T::zero(), |m, (i, &p)| {
            let ideal = if i == target { T::one() } else { T::zero() };
            m.max((p - ideal).abs())
        });
        let (expected_target, expected_sign) = EXPECTED_MAPPING.get(k).copied().unwrap_or((usize::MAX, 0));
        let expected_amp = Complex::new(T::lit(f64::from(expected_sign)), T::zero());
        mappings.push(StateMapping {
            k,
            target,
            magnitude: amplitude.norm(),
            amplitude,
            expected_target,
            expected_sign,
            one_hot_residual,
            phase_matches: target == expected_target && (amplitude - expected_amp).norm() <= phase_tol,
        });
    }

    let mut targets: Vec<usize> = mappings.iter().map(|m| m.target).collect();
    targets.sort_unstable();
    targets.dedup();
    let distinct = targets.len() == mappings.len();
    let magnitudes_ok = mappings
        .iter()
        .all(|m| (T::one() - m.magnitude).abs() <= T::lit(MAGNITUDE_TOL));
    let phases_match = mappings.iter().all(|m| m.phase_matches);
    Ok(DiscriminationReport {
        mappings,
        distinct,
        magnitudes_ok,
        phases_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{build_product_basis, build_sjm_basis};
    use std::f64::consts::FRAC_PI_2;

    type C = Complex<f64>;

    #[test]
    fn phase_gate_at_half_pi_is_s() {
        let r = gate_matrix(&GateKind::Phase(FRAC_PI_2));
        let s = gate_matrix::<f64>(&GateKind::S);
        assert!(r.max_abs_diff(&s).unwrap() < 1e-15);
        assert!((s.get(1, 1) - C::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn rx_zero_is_identity() {
        let m = gate_matrix(&GateKind::Rx(0.0f64));
        assert_eq!(m, Operator::identity(2));
    }

    #[test]
    fn rx_matches_exponential() {
        // e^{−i(β/2)σ_x} = cos(β/2) I − i sin(β/2) σ_x
        let b = 0.8f64;
        let m = gate_matrix(&GateKind::Rx(b));
        assert!((m.get(0, 1) - C::new(0.0, -(b / 2.0).sin())).norm() < 1e-15);
        assert!((m.get(0, 0) - C::new((b / 2.0).cos(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hadamard_definition() {
        let h = gate_matrix::<f64>(&GateKind::H);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h.get(1, 1) - C::new(-r, 0.0)).norm() < 1e-15);
        assert!(h.unitarity_residual() < 1e-15);
    }

    #[test]
    fn controlled_layout() {
        let cnot = gate_matrix::<f64>(&GateKind::Cnot);
        assert_eq!(cnot.get(2, 3), C::new(1.0, 0.0));
        assert_eq!(cnot.get(0, 0), C::new(1.0, 0.0));
        assert_eq!(cnot.get(2, 2), C::new(0.0, 0.0));
    }

    #[test]
    fn all_gates_unitary() {
        for k in [
            GateKind::H,
            GateKind::X,
            GateKind::S,
            GateKind::Phase(0.3),
            GateKind::Rx(-1.2),
            GateKind::Cnot,
            GateKind::ControlledPhase(2.0),
            GateKind::ControlledRx(0.7),
            GateKind::ControlledS,
        ] {
            assert!(gate_matrix::<f64>(&k).unitarity_residual() < 1e-12, "{k:?}");
        }
    }

    #[test]
    fn circuit_shape() {
        let c = build_sjm_circuit(&SjmParams::<f64>::new(0.4, 0.1).unwrap());
        assert_eq!(c.gates.len(), 9);
        assert!(c.validate().is_ok());
        assert_eq!(c.nontrivial_gate_count(1e-12), 9);
        let ejm = build_sjm_circuit(&SjmParams::<f64>::ejm_aligned());
        assert_eq!(ejm.nontrivial_gate_count(1e-12), 7);
        assert!(ejm.unitary().unwrap().unitarity_residual() < 1e-10);
    }

    #[test]
    fn ejm_point_mapping() {
        let p = SjmParams::<f64>::ejm_aligned();
        let r = verify_discrimination(&build_sjm_circuit(&p), &build_sjm_basis(&p)).unwrap();
        assert!(r.passed() && r.phases_match);
        let targets: Vec<_> = r.mappings.iter().map(|m| m.target).collect();
        assert_eq!(targets, vec![0b01, 0b11, 0b00, 0b10]);
    }

    #[test]
    fn product_point_discriminated() {
        let p = SjmParams::<f64>::new(0.0, 0.0).unwrap();
        let r = verify_discrimination(&build_sjm_circuit(&p), &build_sjm_basis(&p)).unwrap();
        assert!(r.passed());
        for m in &r.mappings {
            assert!(m.one_hot_residual < 1e-10);
        }
    }

    #[test]
    fn parameter_mismatch_is_rejected() {
        let a = SjmParams::<f64>::new(0.3, 0.2).unwrap();
        let b = SjmParams::<f64>::new(0.3, 0.25).unwrap();
        assert_eq!(
            verify_discrimination(&build_sjm_circuit(&a), &build_sjm_basis(&b)),
            Err(SjmError::ParameterMismatch)
        );
        assert_eq!(
            verify_discrimination(&build_sjm_circuit(&a), &build_product_basis()),
            Err(SjmError::ParameterMismatch)
        );
    }

    #[test]
    fn validate_catches_bad_gates() {
        let mut c = GateCircuit::<f64>::new(2);
        c.push(Gate::single(GateKind::Cnot, 0));
        assert!(matches!(c.validate(), Err(SjmError::GateArity { .. })));
        let mut c = GateCircuit::<f64>::new(2);
        c.push(Gate::controlled(GateKind::ControlledS, 1, 1));
        assert_eq!(c.validate(), Err(SjmError::DuplicateQubit(1)));
        let mut c = GateCircuit::<f64>::new(2);
        c.push(Gate::single(GateKind::H, 2));
        assert!(matches!(c.validate(), Err(SjmError::QubitOutOfRange { .. })));
    }

    #[test]
    fn json_shape() {
        let c = build_sjm_circuit(&SjmParams::<f64>::ejm_aligned());
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["num_qubits"], 2);
        assert_eq!(v["gates"][0]["kind"], "CNOT");
        assert_eq!(v["gates"][0]["controls"][0], 0);
        assert_eq!(v["gates"][2]["kind"], "CR");
        assert!(v["gates"][2]["param"].is_number());
        let back: GateCircuit<f64> = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn json_rejects_unknown_kind_and_bad_params() {
        let bad = r#"{"num_qubits":2,"gates":[{"kind":"Toffoli","controls":[],"targets":[0]}]}"#;
        assert!(serde_json::from_str::<GateCircuit<f64>>(bad).is_err());
        let bad = r#"{"num_qubits":2,"params":{"theta":3.0,"phi":0.0},"gates":[]}"#;
        assert!(serde_json::from_str::<GateCircuit<f64>>(bad).is_err());
    }
}
