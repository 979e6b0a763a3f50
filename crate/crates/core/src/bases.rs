//! Factories for the single-qubit building blocks, the parameterized symmetric
//! joint measurement basis, the original elegant joint measurement basis and a
//! few reference states.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SjmError};
use crate::linalg::{Operator, StateVector, Tensor};
use crate::scalar::{cos_k_pi, Scalar};

/// Number of states in a two-qubit basis.
pub const BASIS_SIZE: usize = 4;

/// Angles `(θ, φ)` selecting one member of the symmetric basis family.
///
/// `θ ∈ [0, π/2]` interpolates between a product basis (`θ = 0`) and the
/// elegant joint measurement (`θ = π/2`); `φ ∈ [−π, π]` rotates the basis
/// about the z axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawParams<T>",
    bound(deserialize = "T: Scalar + Deserialize<'de>")
)]
pub struct SjmParams<T> {
    theta: T,
    phi: T,
}

#[derive(Deserialize)]
struct RawParams<T> {
    theta: T,
    phi: T,
}

impl<T: Scalar> TryFrom<RawParams<T>> for SjmParams<T> {
    type Error = SjmError;

    fn try_from(raw: RawParams<T>) -> Result<Self> {
        Self::new(raw.theta, raw.phi)
    }
}

impl<T: Scalar> SjmParams<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta <= T::FRAC_PI_2()) {
            return Err(SjmError::ThetaOutOfRange(theta.to_f64_lossy()));
        }
        if !(phi >= -T::PI() && phi <= T::PI()) {
            return Err(SjmError::PhiOutOfRange(phi.to_f64_lossy()));
        }
        Ok(Self { theta, phi })
    }

    /// `θ = π/2, φ = π/4`: the angles `φ_k = (π/4, 3π/4, −3π/4 ≡ 5π/4, −π/4)`
    /// under which the basis lines up with the original elegant measurement.
    pub fn ejm_aligned() -> Self {
        Self {
            theta: T::FRAC_PI_2(),
            phi: T::FRAC_PI_4(),
        }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// `φ_k = φ + (0, π/2, π, −π/2)[k]`.
    pub fn phi_k(&self, k: usize) -> T {
        let offset = match k {
            0 => T::zero(),
            1 => T::FRAC_PI_2(),
            2 => T::PI(),
            3 => -T::FRAC_PI_2(),
            _ => panic!("basis index {k} out of range 0..4"),
        };
        self.phi + offset
    }
}

/// Sign selector for `|±m_k⟩` and the auxiliary bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Which of the two non-orthogonal states `|m_{k,0}⟩`, `|m_{k,1}⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    Zero,
    One,
}

impl Slot {
    pub fn other(self) -> Self {
        match self {
            Slot::Zero => Slot::One,
            Slot::One => Slot::Zero,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    #[serde(rename = "SJM")]
    Sjm,
    #[serde(rename = "OriginalEJM")]
    OriginalEjm,
    Product,
    Bell,
}

/// Ordered orthonormal set of two-qubit states.
#[derive(Clone, Debug, PartialEq)]
pub struct JointBasis<T> {
    pub states: Vec<StateVector<T>>,
    /// Generating angles; `None` for the fixed bases.
    pub params: Option<SjmParams<T>>,
    pub label: BasisLabel,
}

impl<T: Scalar> JointBasis<T> {
    pub fn gram(&self) -> Vec<Vec<Complex<T>>> {
        gram_matrix(&self.states)
    }

    /// `max_jk |⟨s_j|s_k⟩ − δ_jk|`.
    pub fn orthonormality_residual(&self) -> T {
        orthonormality_residual(&self.states)
    }

    /// `‖Σ_k |s_k⟩⟨s_k| − I‖_max`.
    pub fn completeness_residual(&self) -> T {
        let dim = self.states[0].dim();
        let sum = Operator::from_fn(dim, |r, c| {
            self.states
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, s| {
                    acc + s.amplitude(r) * s.amplitude(c).conj()
                })
        });
        sum.max_abs_diff(&Operator::identity(dim))
            .expect("same dimension")
    }
}

/// Matrix of pairwise inner products `G[j][k] = ⟨s_j|s_k⟩`.
pub fn gram_matrix<T: Scalar>(states: &[StateVector<T>]) -> Vec<Vec<Complex<T>>> {
    states
        .iter()
        .map(|a| {
            states
                .iter()
                .map(|b| a.inner(b).expect("equal dimensions"))
                .collect()
        })
        .collect()
}

pub fn orthonormality_residual<T: Scalar>(states: &[StateVector<T>]) -> T {
    let mut worst = T::zero();
    for (j, a) in states.iter().enumerate() {
        for (k, b) in states.iter().enumerate().skip(j) {
            let g = a.inner(b).expect("equal dimensions");
            let delta = if j == k { T::one() } else { T::zero() };
            worst = worst.max((g - Complex::new(delta, T::zero())).norm());
        }
    }
    worst
}

fn cis<T: Scalar>(x: T) -> Complex<T> {
    Complex::cis(x)
}

fn real<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

fn qubit<T: Scalar>(a0: Complex<T>, a1: Complex<T>) -> StateVector<T> {
    StateVector::new(vec![a0, a1]).expect("two finite amplitudes")
}

/// `|±m_k⟩ = (1/√2)[√(1 ± cos kπ) e^{−iφ_k/2}|0⟩ ± √(1 ∓ cos kπ) e^{iφ_k/2}|1⟩]`.
pub fn build_pm_mk<T: Scalar>(k: usize, sign: Sign, p: &SjmParams<T>) -> StateVector<T> {
    let s = sign.value::<T>();
    let c = cos_k_pi::<T>(k);
    let half = p.phi_k(k) / T::lit(2.0);
    let a0 = cis(-half) * (T::one() + s * c).max(T::zero()).sqrt();
    let a1 = cis(half) * (s * (T::one() - s * c).max(T::zero()).sqrt());
    qubit(a0 * T::FRAC_1_SQRT_2(), a1 * T::FRAC_1_SQRT_2())
}

/// `1/√(4 + 2√2)`, shared by `|m_{k,slot}⟩` and the auxiliary bases.
pub(crate) fn m_norm<T: Scalar>() -> T {
    T::one() / (T::lit(4.0) + T::lit(2.0) * T::SQRT_2()).sqrt()
}

/// Coefficients `(1 + e^{∓iπ/4}, 1 + e^{±iπ/4})` for slot 0 / slot 1.
pub(crate) fn slot_coefficients<T: Scalar>(slot: Slot) -> (Complex<T>, Complex<T>) {
    let minus = real(T::one()) + cis(-T::FRAC_PI_4());
    let plus = real(T::one()) + cis(T::FRAC_PI_4());
    match slot {
        Slot::Zero => (minus, plus),
        Slot::One => (plus, minus),
    }
}

/// `|m_{k,0}⟩` or `|m_{k,1}⟩`: equal-weight, phase-offset superpositions of
/// `|m_k⟩` and `|−m_k⟩` with `⟨m_{k,0}|m_{k,1}⟩ = 1/√2`.
pub fn build_mk01<T: Scalar>(k: usize, slot: Slot, p: &SjmParams<T>) -> StateVector<T> {
    let (ca, cb) = slot_coefficients::<T>(slot);
    let n = real(m_norm::<T>());
    build_pm_mk(k, Sign::Plus, p)
        .superpose(ca * n, &build_pm_mk(k, Sign::Minus, p), cb * n)
        .expect("single-qubit operands")
}

/// `|Φ_k⟩ = ½[(1 + e^{iθ})|m_{k,0}, m_{k,1}⟩ + (1 − e^{iθ})|m_{k,1}, m_{k,0}⟩]`.
pub fn sjm_state<T: Scalar>(k: usize, p: &SjmParams<T>) -> StateVector<T> {
    let m0 = build_mk01(k, Slot::Zero, p);
    let m1 = build_mk01(k, Slot::One, p);
    let e = cis(p.theta());
    let half = T::lit(0.5);
    m0.tensor(&m1)
        .superpose((real(T::one()) + e) * half, &m1.tensor(&m0), (real(T::one()) - e) * half)
        .expect("two-qubit operands")
}

/// `|Φ_k⟩` written directly in the computational basis:
/// `½(e^{−iφ_k}|00⟩ − r⁻|01⟩ − r⁺|10⟩ + e^{iφ_k}|11⟩)`, `r^± = [cos kπ ± i e^{iθ}]/√2`.
pub fn sjm_state_closed_form<T: Scalar>(k: usize, p: &SjmParams<T>) -> StateVector<T> {
    let phik = p.phi_k(k);
    let c = real(cos_k_pi::<T>(k));
    let ie = Complex::new(T::zero(), T::one()) * cis(p.theta());
    let r_plus = (c + ie) * T::FRAC_1_SQRT_2();
    let r_minus = (c - ie) * T::FRAC_1_SQRT_2();
    let half = T::lit(0.5);
    StateVector::new(vec![
        cis(-phik) * half,
        -r_minus * half,
        -r_plus * half,
        cis(phik) * half,
    ])
    .expect("finite amplitudes")
}

pub fn build_sjm_basis<T: Scalar>(p: &SjmParams<T>) -> JointBasis<T> {
    JointBasis {
        states: (0..BASIS_SIZE).map(|k| sjm_state(k, p)).collect(),
        params: Some(*p),
        label: BasisLabel::Sjm,
    }
}

/// Closed-form `⟨Φ_j|Φ_k⟩ = ¼[1 + 2cos(φ_k − φ_j) + cos jπ cos kπ]`.
pub fn sjm_overlap_closed_form<T: Scalar>(j: usize, k: usize, p: &SjmParams<T>) -> T {
    (T::one()
        + T::lit(2.0) * (p.phi_k(k) - p.phi_k(j)).cos()
        + cos_k_pi::<T>(j) * cos_k_pi::<T>(k))
        / T::lit(4.0)
}

/// Phases `(3π/4, −3π/4, −π/4, π/4)` of the original elegant basis.
pub fn ejm_phase<T: Scalar>(j: usize) -> T {
    let q = T::FRAC_PI_4();
    match j {
        0 => T::lit(3.0) * q,
        1 => -T::lit(3.0) * q,
        2 => -q,
        3 => q,
        _ => panic!("basis index {j} out of range 0..4"),
    }
}

/// `|Ψ_j⟩ = ½(e^{−iφ_j}|00⟩ − r_j⁺|01⟩ − r_j⁻|10⟩ − e^{iφ_j}|11⟩)`, `r_j^± = [cos jπ ± 1]/√2`.
pub fn ejm_state<T: Scalar>(j: usize) -> StateVector<T> {
    let ph = ejm_phase::<T>(j);
    let c = cos_k_pi::<T>(j);
    let half = T::lit(0.5);
    let r_plus = (c + T::one()) * T::FRAC_1_SQRT_2();
    let r_minus = (c - T::one()) * T::FRAC_1_SQRT_2();
    StateVector::new(vec![
        cis(-ph) * half,
        real(-r_plus * half),
        real(-r_minus * half),
        -cis(ph) * half,
    ])
    .expect("finite amplitudes")
}

pub fn build_original_ejm<T: Scalar>() -> JointBasis<T> {
    JointBasis {
        states: (0..BASIS_SIZE).map(ejm_state).collect(),
        params: None,
        label: BasisLabel::OriginalEjm,
    }
}

/// Closed form of `⟨Ψ_j|Φ_k(θ = π/2)⟩ = [1 + cos jπ cos kπ + 2i sin(φ^EJM_j − φ_k)]/4`.
pub fn ejm_sjm_overlap_closed_form<T: Scalar>(j: usize, k: usize, phi: T) -> Complex<T> {
    let p = SjmParams {
        theta: T::FRAC_PI_2(),
        phi,
    };
    let four = T::lit(4.0);
    Complex::new(
        (T::one() + cos_k_pi::<T>(j) * cos_k_pi::<T>(k)) / four,
        T::lit(2.0) * (ejm_phase::<T>(j) - p.phi_k(k)).sin() / four,
    )
}

/// Reference state of the concurrence-`[1/2, 1]` family:
/// `(1/(2√2))[(√3 + e^{iθ})|m_0, m_1⟩ + (√3 − e^{iθ})|m_1, m_0⟩]`.
pub fn build_ejm_family_state<T: Scalar>(
    theta: T,
    m0: &StateVector<T>,
    m1: &StateVector<T>,
) -> Result<StateVector<T>> {
    for m in [m0, m1] {
        if m.num_qubits() != 1 {
            return Err(SjmError::WrongQubitCount {
                expected: 1,
                actual: m.num_qubits(),
            });
        }
    }
    let residual = orthonormality_residual(&[m0.clone(), m1.clone()]);
    if residual > T::lit(crate::TOL_NORM) {
        return Err(SjmError::NotOrthonormal(residual.to_f64_lossy()));
    }
    let s3 = real(T::lit(3.0).sqrt());
    let e = cis(theta);
    let scale = T::one() / (T::lit(2.0) * T::SQRT_2());
    m0.tensor(m1).superpose((s3 + e) * scale, &m1.tensor(m0), (s3 - e) * scale)
}

/// `|ψ₊⟩ = (|01⟩ + |10⟩)/√2`.
pub fn build_bell_psi_plus<T: Scalar>() -> StateVector<T> {
    let z = real(T::zero());
    let h = real(T::FRAC_1_SQRT_2());
    StateVector::new(vec![z, h, h, z]).expect("finite amplitudes")
}

/// `{|00⟩, |01⟩, |10⟩, |11⟩}`.
pub fn build_product_basis<T: Scalar>() -> JointBasis<T> {
    JointBasis {
        states: (0..BASIS_SIZE).map(|i| StateVector::basis_state(2, i)).collect(),
        params: None,
        label: BasisLabel::Product,
    }
}

/// `{Φ⁺, Φ⁻, Ψ⁺, Ψ⁻}`.
pub fn build_bell_basis<T: Scalar>() -> JointBasis<T> {
    let z = real(T::zero());
    let h = real(T::FRAC_1_SQRT_2());
    let states = [[h, z, z, h], [h, z, z, -h], [z, h, h, z], [z, h, -h, z]]
        .into_iter()
        .map(|a| StateVector::new(a.to_vec()).expect("finite amplitudes"))
        .collect();
    JointBasis {
        states,
        params: None,
        label: BasisLabel::Bell,
    }
}
