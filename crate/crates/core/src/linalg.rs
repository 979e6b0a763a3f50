//! Dense complex state vectors and operators over a small number of qubits.
//!
//! Qubits are numbered from 0, left to right in ket notation. Qubit 0 is the
//! most significant bit of a basis index, so `|q0 q1 … q(n-1)⟩` has index
//! `Σ q_i · 2^(n-1-i)`.

use num_complex::Complex;

use crate::error::{Result, SjmError};
use crate::scalar::Scalar;

/// Complex probability amplitude.
pub type Amplitude<T> = Complex<T>;

/// Kronecker product, defined for both states and operators.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

fn is_finite<T: Scalar>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn log2_exact(len: usize) -> Option<usize> {
    if len >= 2 && len.is_power_of_two() {
        Some(len.trailing_zeros() as usize)
    } else {
        None
    }
}

/// Bit position inside a basis index for qubit `q` of an `n`-qubit register.
#[inline]
fn bit_of(q: usize, n: usize) -> usize {
    n - 1 - q
}

fn check_distinct(indices: &[usize], num_qubits: usize) -> Result<()> {
    let mut seen = 0u64;
    for &q in indices {
        if q >= num_qubits {
            return Err(SjmError::QubitOutOfRange {
                index: q,
                num_qubits,
            });
        }
        if seen & (1 << q) != 0 {
            return Err(SjmError::DuplicateQubit(q));
        }
        seen |= 1 << q;
    }
    Ok(())
}

/// Pure state of `num_qubits` qubits stored as `2^num_qubits` amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// Wraps raw amplitudes. Normalization is not enforced here; use
    /// [`normalization_residual`](Self::normalization_residual) to check it.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let num_qubits =
            log2_exact(amplitudes.len()).ok_or(SjmError::NotPowerOfTwo(amplitudes.len()))?;
        if let Some(i) = amplitudes.iter().position(|z| !is_finite(z)) {
            return Err(SjmError::NonFinite(i));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(num_qubits: usize, index: usize) -> Self {
        assert!(num_qubits >= 1 && index < (1 << num_qubits));
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// `|⟨s|s⟩ − 1|`.
    pub fn normalization_residual(&self) -> T {
        (self.norm_sqr() - T::one()).abs()
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|z| z * factor).collect(),
        }
    }

    /// Linear combination `a·self + b·other`.
    pub fn superpose(&self, a: Complex<T>, other: &Self, b: Complex<T>) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            num_qubits: self.num_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(x, y)| x * a + y * b)
                .collect(),
        })
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(SjmError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩ = Σ conj(self_i)·other_i`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_same_dim(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            }))
    }

    /// Phase-insensitive overlap `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm())
    }

    /// Largest componentwise `|self_i − other_i|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_dim(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
    }

    /// Computational-basis outcome probabilities.
    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Density matrix of the qubits in `keep` (in that order), tracing out the rest.
    pub fn reduced_density_matrix(&self, keep: &[usize]) -> Result<Operator<T>> {
        let n = self.num_qubits;
        check_distinct(keep, n)?;
        if keep.is_empty() {
            return Err(SjmError::WrongQubitCount {
                expected: 1,
                actual: 0,
            });
        }
        let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let dk = 1usize << keep.len();
        let de = 1usize << rest.len();

        // Reshape to a dk × de matrix M with ρ = M·M†.
        let mut m = vec![Complex::new(T::zero(), T::zero()); dk * de];
        for (i, z) in self.amplitudes.iter().enumerate() {
            let sub = |qs: &[usize]| {
                qs.iter().fold(0usize, |acc, &q| {
                    (acc << 1) | ((i >> bit_of(q, n)) & 1)
                })
            };
            m[sub(keep) * de + sub(&rest)] = *z;
        }
        let mut rho = vec![Complex::new(T::zero(), T::zero()); dk * dk];
        for r in 0..dk {
            for c in r..dk {
                let mut acc = Complex::new(T::zero(), T::zero());
                for e in 0..de {
                    acc = acc + m[r * de + e] * m[c * de + e].conj();
                }
                rho[r * dk + c] = acc;
                rho[c * dk + r] = acc.conj();
            }
        }
        Ok(Operator { dim: dk, entries: rho })
    }

    /// Single-qubit reduced state of qubit `keep`.
    pub fn partial_trace(&self, keep: usize) -> Result<Operator<T>> {
        self.reduced_density_matrix(&[keep])
    }

    /// Reorders qubits: qubit `i` of the result is qubit `perm[i]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.num_qubits;
        if perm.len() != n {
            return Err(SjmError::InvalidPermutation(n));
        }
        check_distinct(perm, n).map_err(|_| SjmError::InvalidPermutation(n))?;

        let mut out = vec![Complex::new(T::zero(), T::zero()); self.dim()];
        for (old, z) in self.amplitudes.iter().enumerate() {
            let new = perm.iter().enumerate().fold(0usize, |acc, (i, &src)| {
                acc | (((old >> bit_of(src, n)) & 1) << bit_of(i, n))
            });
            out[new] = *z;
        }
        Ok(Self {
            num_qubits: n,
            amplitudes: out,
        })
    }

    /// Applies `gate` to the ordered `targets`; `targets[0]` is the most
    /// significant qubit of the gate's own index space.
    pub fn apply_gate(&self, gate: &Operator<T>, targets: &[usize]) -> Result<Self> {
        let n = self.num_qubits;
        check_distinct(targets, n)?;
        let m = targets.len();
        if gate.dim() != 1 << m {
            return Err(SjmError::DimensionMismatch {
                expected: 1 << m,
                actual: gate.dim(),
            });
        }
        let offsets: Vec<usize> = (0..1usize << m)
            .map(|s| {
                targets.iter().enumerate().fold(0usize, |acc, (j, &q)| {
                    acc | (((s >> (m - 1 - j)) & 1) << bit_of(q, n))
                })
            })
            .collect();
        let mask = offsets[(1 << m) - 1];

        let mut out = self.amplitudes.clone();
        let mut local = vec![Complex::new(T::zero(), T::zero()); 1 << m];
        for base in (0..self.dim()).filter(|b| b & mask == 0) {
            for (s, off) in offsets.iter().enumerate() {
                local[s] = self.amplitudes[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                out[base | off] = (0..local.len())
                    .fold(Complex::new(T::zero(), T::zero()), |acc, c| {
                        acc + gate.get(r, c) * local[c]
                    });
            }
        }
        Ok(Self {
            num_qubits: n,
            amplitudes: out,
        })
    }

    /// `⟨self| op_targets |self⟩`.
    pub fn expectation(&self, op: &Operator<T>, targets: &[usize]) -> Result<Complex<T>> {
        self.inner(&self.apply_gate(op, targets)?)
    }
}

impl<T: Scalar> Tensor for StateVector<T> {
    fn tensor(&self, other: &Self) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }
}

/// Returns `inv` with `inv[perm[i]] = i`.
pub fn inverse_permutation(perm: &[usize]) -> Result<Vec<usize>> {
    check_distinct(perm, perm.len()).map_err(|_| SjmError::InvalidPermutation(perm.len()))?;
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    Ok(inv)
}

/// Dense square operator, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> Operator<T> {
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(SjmError::NotPowerOfTwo(dim));
        }
        if entries.len() != dim * dim {
            return Err(SjmError::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|z| !is_finite(z)) {
            return Err(SjmError::NonFinite(i));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        assert!(dim.is_power_of_two());
        let entries = (0..dim * dim).map(|i| f(i / dim, i % dim)).collect();
        Self { dim, entries }
    }

    /// 2×2 operator from rows `[[a, b], [c, d]]`.
    pub fn from_2x2(rows: [[Complex<T>; 2]; 2]) -> Self {
        Self {
            dim: 2,
            entries: vec![rows[0][0], rows[0][1], rows[1][0], rows[1][1]],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        Self::from_fn(diag.len(), |r, c| {
            if r == c {
                diag[r]
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero()));
        Self::from_2x2([[o, l], [l, o]])
    }

    pub fn pauli_y() -> Self {
        let o = Complex::new(T::zero(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        Self::from_2x2([[o, -i], [i, o]])
    }

    pub fn pauli_z() -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self::diagonal(&[one, -one])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let d = self.dim;
        Ok(Self::from_fn(d, |r, c| {
            (0..d).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + self.get(r, k) * other.get(k, c)
            })
        }))
    }

    /// `self · |v⟩`.
    pub fn apply(&self, v: &StateVector<T>) -> Result<StateVector<T>> {
        if v.dim() != self.dim {
            return Err(SjmError::DimensionMismatch {
                expected: self.dim,
                actual: v.dim(),
            });
        }
        let amps = (0..self.dim)
            .map(|r| {
                (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, c| {
                    acc + self.get(r, c) * v.amplitude(c)
                })
            })
            .collect();
        StateVector::new(amps)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self.get(i, i)
        })
    }

    /// `Re Tr(self²)`; the purity when `self` is a density matrix.
    pub fn purity(&self) -> T {
        let d = self.dim;
        let mut acc = T::zero();
        for r in 0..d {
            for c in 0..d {
                acc = acc + (self.get(r, c) * self.get(c, r)).re;
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_residual(&self) -> T {
        let prod = self.adjoint().matmul(self).expect("same dimension");
        prod.max_abs_diff(&Self::identity(self.dim))
            .expect("same dimension")
    }

    /// `‖ρ − ρ†‖_max`.
    pub fn hermiticity_residual(&self) -> T {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }

    /// Eigenvalues (ascending) of a Hermitian 2×2 operator.
    pub fn hermitian_2x2_eigenvalues(&self) -> Option<[T; 2]> {
        if self.dim != 2 {
            return None;
        }
        let two = T::lit(2.0);
        let a = self.get(0, 0).re;
        let d = self.get(1, 1).re;
        let b = self.get(0, 1);
        let mean = (a + d) / two;
        let radius = (((a - d) / two).powi(2) + b.norm_sqr()).sqrt();
        Some([mean - radius, mean + radius])
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(SjmError::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }
}

impl<T: Scalar> Tensor for Operator<T> {
    fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        Self::from_fn(da * db, |r, c| {
            self.get(r / db, c / db) * other.get(r % db, c % db)
        })
    }
}
