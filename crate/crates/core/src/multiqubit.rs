//! Even-`n` generalization of the symmetric basis.
//!
//! `|Φ_{k₁…k_{n/2}}⟩ = ½[(1 + e^{iθ})|m_{k₁,0}, m_{k₁,1}, …⟩ + (1 − e^{iθ})|m_{k₁,1}, m_{k₁,0}, …⟩]`,
//! indexed lexicographically by `(k₁, …, k_{n/2})` in base 4.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{bloch_vector, BlochVector};
use crate::bases::{build_mk01, m_norm, slot_coefficients, Sign, Slot, SjmParams, BASIS_SIZE};
use crate::error::{Result, SjmError};
use crate::linalg::{StateVector, Tensor};
use crate::scalar::{cos_k_pi, Scalar};

/// Largest supported qubit count (state dimension 4096).
pub const MAX_QUBITS: usize = 12;

/// Largest `n` whose Gram matrix is checked exhaustively.
pub const EXHAUSTIVE_GRAM_MAX_QUBITS: usize = 6;

/// Number of random pairs inspected by the sampled Gram check.
pub const SAMPLED_GRAM_PAIRS: usize = 200;

/// `n`-qubit symmetric basis. States are generated on demand from the
/// single-qubit building blocks, so memory stays linear in the dimension.
#[derive(Clone, Debug)]
pub struct MultiSjmBasis<T> {
    n: usize,
    params: SjmParams<T>,
    /// `[m_{k,0}, m_{k,1}]` for `k = 0..4`.
    blocks: Vec<[StateVector<T>; 2]>,
}

pub fn build_multi_basis<T: Scalar>(n: usize, p: &SjmParams<T>) -> Result<MultiSjmBasis<T>> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_QUBITS {
        return Err(SjmError::InvalidQubitCount { n, max: MAX_QUBITS });
    }
    let blocks = (0..BASIS_SIZE)
        .map(|k| [build_mk01(k, Slot::Zero, p), build_mk01(k, Slot::One, p)])
        .collect();
    Ok(MultiSjmBasis {
        n,
        params: *p,
        blocks,
    })
}

impl<T: Scalar> MultiSjmBasis<T> {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_pairs(&self) -> usize {
        self.n / 2
    }

    pub fn params(&self) -> &SjmParams<T> {
        &self.params
    }

    /// `4^{n/2}`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index tuple `(k₁, …, k_{n/2})` of linear index `i`.
    pub fn index_tuple(&self, i: usize) -> Vec<usize> {
        let pairs = self.num_pairs();
        (0..pairs)
            .map(|p| (i >> (2 * (pairs - 1 - p))) & 3)
            .collect()
    }

    pub fn linear_index(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.num_pairs() {
            return Err(SjmError::DimensionMismatch {
                expected: self.num_pairs(),
                actual: tuple.len(),
            });
        }
        tuple.iter().try_fold(0usize, |acc, &k| {
            if k >= BASIS_SIZE {
                Err(SjmError::IndexOutOfRange(k))
            } else {
                Ok((acc << 2) | k)
            }
        })
    }

    fn product(&self, tuple: &[usize], swapped: bool) -> StateVector<T> {
        let (first, second) = if swapped { (1, 0) } else { (0, 1) };
        tuple
            .iter()
            .map(|&k| self.blocks[k][first].tensor(&self.blocks[k][second]))
            .reduce(|acc, s| acc.tensor(&s))
            .expect("at least one pair")
    }

    /// Basis state for the index tuple `(k₁, …, k_{n/2})`.
    pub fn state_for(&self, tuple: &[usize]) -> Result<StateVector<T>> {
        self.linear_index(tuple)?;
        let e = Complex::cis(self.params.theta());
        let one = Complex::new(T::one(), T::zero());
        let half = T::lit(0.5);
        self.product(tuple, false)
            .superpose((one + e) * half, &self.product(tuple, true), (one - e) * half)
    }

    /// Basis state with linear index `i`.
    pub fn state(&self, i: usize) -> Result<StateVector<T>> {
        if i >= self.len() {
            return Err(SjmError::IndexOutOfRange(i));
        }
        self.state_for(&self.index_tuple(i))
    }

    /// All states in lexicographic order.
    pub fn states(&self) -> impl Iterator<Item = StateVector<T>> + '_ {
        (0..self.len()).map(move |i| self.state(i).expect("in range"))
    }

    /// `max |⟨Φ_i|Φ_j⟩ − δ_ij|` over every pair.
    pub fn exhaustive_gram_residual(&self) -> T {
        let states: Vec<_> = self.states().collect();
        crate::bases::orthonormality_residual(&states)
    }

    /// `max |⟨Φ_i|Φ_j⟩ − δ_ij|` over `pairs` uniformly drawn index pairs, half
    /// of them forced off-diagonal.
    pub fn sampled_gram_residual<R: Rng + ?Sized>(&self, pairs: usize, rng: &mut R) -> T {
        let len = self.len();
        (0..pairs).fold(T::zero(), |worst, t| {
            let i = rng.random_range(0..len);
            let mut j = rng.random_range(0..len);
            if t % 2 == 0 && j == i {
                j = (i + 1 + rng.random_range(0..len - 1)) % len;
            }
            let g = self
                .state(i)
                .and_then(|a| a.inner(&self.state(j)?))
                .expect("in range");
            let delta = if i == j { T::one() } else { T::zero() };
            worst.max((g - Complex::new(delta, T::zero())).norm())
        })
    }

    /// Exhaustive for `n ≤ 6`, otherwise [`SAMPLED_GRAM_PAIRS`] random pairs.
    pub fn gram_check<R: Rng + ?Sized>(&self, rng: &mut R) -> GramCheck<T> {
        if self.n <= EXHAUSTIVE_GRAM_MAX_QUBITS {
            GramCheck {
                exhaustive: true,
                pairs_checked: self.len() * (self.len() + 1) / 2,
                max_residual: self.exhaustive_gram_residual(),
            }
        } else {
            GramCheck {
                exhaustive: false,
                pairs_checked: SAMPLED_GRAM_PAIRS,
                max_residual: self.sampled_gram_residual(SAMPLED_GRAM_PAIRS, rng),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramCheck<T> {
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub max_residual: T,
}

/// Auxiliary single-qubit bases (`which = Zero` for `|m₀^±⟩`, `One` for `|m₁^±⟩`):
/// `|m₀^±⟩ ∝ (1 + e^{−iπ/4})e^{−iφ/2}|0⟩ ± (1 + e^{iπ/4})e^{iφ/2}|1⟩`,
/// `|m₁^±⟩ ∝ (1 + e^{iπ/4})e^{−iφ/2}|0⟩ ± (1 + e^{−iπ/4})e^{iφ/2}|1⟩`.
pub fn build_aux_m_pm<T: Scalar>(which: Slot, sign: Sign, phi: T) -> StateVector<T> {
    let (c0, c1) = slot_coefficients::<T>(which);
    let half = phi / T::lit(2.0);
    let n = m_norm::<T>();
    StateVector::new(vec![
        c0 * Complex::cis(-half) * n,
        c1 * Complex::cis(half) * (n * sign.value::<T>()),
    ])
    .expect("finite amplitudes")
}

/// `|m_{k,slot}⟩ = coefficient · |m_slot^sign⟩`.
pub fn aux_decomposition<T: Scalar>(k: usize, slot: Slot) -> (Complex<T>, Sign) {
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    match (slot, k) {
        (Slot::Zero, 0) => (one, Sign::Minus),
        (Slot::Zero, 1) => (one, Sign::Plus),
        (Slot::Zero, 2) => (-i, Sign::Plus),
        (Slot::Zero, 3) => (i, Sign::Minus),
        (Slot::One, 0) => (one, Sign::Minus),
        (Slot::One, 1) => (-i, Sign::Minus),
        (Slot::One, 2) => (-i, Sign::Plus),
        (Slot::One, 3) => (one, Sign::Plus),
        _ => panic!("basis index {k} out of range 0..4"),
    }
}

/// `⟨m_{j,0}|m_{k,0}⟩ · ⟨m_{j,1}|m_{k,1}⟩`, which equals `δ_jk`.
pub fn pairwise_overlap_product<T: Scalar>(j: usize, k: usize, p: &SjmParams<T>) -> Complex<T> {
    let o0 = build_mk01(j, Slot::Zero, p)
        .inner(&build_mk01(k, Slot::Zero, p))
        .expect("one qubit");
    let o1 = build_mk01(j, Slot::One, p)
        .inner(&build_mk01(k, Slot::One, p))
        .expect("one qubit");
    o0 * o1
}

/// Numerical Bloch vector of qubit `position` (0-based) of the basis state `tuple`.
pub fn multi_reduction_vector<T: Scalar>(
    b: &MultiSjmBasis<T>,
    tuple: &[usize],
    position: usize,
) -> Result<BlochVector<T>> {
    if position >= b.num_qubits() {
        return Err(SjmError::QubitOutOfRange {
            index: position,
            num_qubits: b.num_qubits(),
        });
    }
    bloch_vector(&b.state_for(tuple)?, position)
}

/// Closed-form reduction `I_{k}^±` at `position` (0-based): `+` on the first
/// qubit of each pair, `−` on the second,
/// `(1/√2)(−c cos φ_k ± cos θ sin φ_k, −c sin φ_k ∓ cos θ cos φ_k, ±2^{(1−n)/2} c sin θ)`
/// with `c = cos kπ`.
pub fn multi_reduction_closed_form<T: Scalar>(
    n: usize,
    k: usize,
    p: &SjmParams<T>,
    position: usize,
) -> BlochVector<T> {
    let s = if position.is_multiple_of(2) { T::one() } else { -T::one() };
    let c = cos_k_pi::<T>(k);
    let (sin_p, cos_p) = p.phi_k(k).sin_cos();
    let ct = p.theta().cos();
    let exponent = (T::one() - T::from_usize(n).expect("small n")) / T::lit(2.0);
    BlochVector::new(
        -c * cos_p + s * ct * sin_p,
        -c * sin_p - s * ct * cos_p,
        s * T::lit(2.0).powf(exponent) * c * p.theta().sin(),
    )
    .scale(T::FRAC_1_SQRT_2())
}

/// Largest deviation of numerical reductions from the closed form over every
/// state and position.
pub fn reduction_closed_form_residual<T: Scalar>(b: &MultiSjmBasis<T>) -> T {
    let n = b.num_qubits();
    let mut worst = T::zero();
    for i in 0..b.len() {
        let tuple = b.index_tuple(i);
        let state = b.state(i).expect("in range");
        for pos in 0..n {
            let v = bloch_vector(&state, pos).expect("in range");
            let cf = multi_reduction_closed_form(n, tuple[pos / 2], b.params(), pos);
            worst = worst.max(v.max_abs_diff(&cf));
        }
    }
    worst
}
