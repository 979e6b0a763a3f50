//! Entanglement and single-qubit reduction analysis of joint measurement bases.

use serde::{Deserialize, Serialize};

use crate::bases::{build_ejm_family_state, sjm_state, JointBasis, SjmParams};
use crate::error::{Result, SjmError};
use crate::linalg::{Operator, StateVector};
use crate::scalar::{cos_k_pi, Scalar};

/// Pauli expectation values `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)` of a single-qubit reduction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> BlochVector<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn distance(&self, o: &Self) -> T {
        self.sub(o).norm()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, o: &Self) -> T {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }

    pub fn max_abs(&self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }
}

/// Which qubit of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QubitPosition {
    First,
    Second,
}

impl QubitPosition {
    pub fn index(self) -> usize {
        match self {
            QubitPosition::First => 0,
            QubitPosition::Second => 1,
        }
    }
}

fn require_two_qubits<T: Scalar>(s: &StateVector<T>) -> Result<()> {
    if s.num_qubits() != 2 {
        return Err(SjmError::WrongQubitCount {
            expected: 2,
            actual: s.num_qubits(),
        });
    }
    Ok(())
}

/// `√(2(1 − Tr ρ²))` for the reduction of qubit `q`; the pure-state
/// concurrence when `s` has two qubits, and a product-state witness in general
/// (zero iff qubit `q` is unentangled with the rest).
///
/// For a normalized state, `1 − Tr ρ² = 2 det ρ`, and writing `ρ = M M†` with
/// `M` the 2 × 2^(n−1) amplitude matrix of qubit `q` against the rest,
/// `det ρ = Σ_{i<j} |M_0i M_1j − M_0j M_1i|²`. Summing the minors keeps full
/// relative precision near product states where `1 − Tr ρ²` would cancel.
pub fn linear_entropy_measure<T: Scalar>(s: &StateVector<T>, q: usize) -> Result<T> {
    let n = s.num_qubits();
    if q >= n {
        return Err(SjmError::QubitOutOfRange {
            index: q,
            num_qubits: n,
        });
    }
    let bit = 1usize << (n - 1 - q);
    let amps = s.amplitudes();
    let (row0, row1): (Vec<_>, Vec<_>) = (0..s.dim())
        .filter(|i| i & bit == 0)
        .map(|i| (amps[i], amps[i | bit]))
        .unzip();
    let mut det = T::zero();
    for i in 0..row0.len() {
        for j in i + 1..row0.len() {
            det = det + (row0[i] * row1[j] - row0[j] * row1[i]).norm_sqr();
        }
    }
    Ok(T::lit(2.0) * det.sqrt())
}

/// Concurrence of a pure two-qubit state computed from the first qubit's reduction.
pub fn concurrence<T: Scalar>(s: &StateVector<T>) -> Result<T> {
    concurrence_from(s, QubitPosition::First)
}

pub fn concurrence_from<T: Scalar>(s: &StateVector<T>, which: QubitPosition) -> Result<T> {
    require_two_qubits(s)?;
    linear_entropy_measure(s, which.index())
}

/// Bloch vector of qubit `q` in an arbitrary-width state, `⟨σ⟩ = Tr(ρ_q σ)`.
pub fn bloch_vector<T: Scalar>(s: &StateVector<T>, q: usize) -> Result<BlochVector<T>> {
    let rho = s.partial_trace(q)?;
    let ev = |op: Operator<T>| rho.matmul(&op).expect("2×2").trace().re;
    Ok(BlochVector::new(
        ev(Operator::pauli_x()),
        ev(Operator::pauli_y()),
        ev(Operator::pauli_z()),
    ))
}

/// `⟨s|σ⃗ ⊗ I|s⟩` (first) or `⟨s|I ⊗ σ⃗|s⟩` (second).
pub fn reduction_vector<T: Scalar>(
    s: &StateVector<T>,
    which: QubitPosition,
) -> Result<BlochVector<T>> {
    require_two_qubits(s)?;
    bloch_vector(s, which.index())
}

/// Closed form of the reduction vector of `|Φ_k⟩`:
/// `(1/√2)(−cos kπ cos φ_k ± cos θ sin φ_k, −cos kπ sin φ_k ∓ cos θ cos φ_k, ±cos kπ sin θ/√2)`
/// with the upper sign for the first qubit.
pub fn sjm_reduction_closed_form<T: Scalar>(
    k: usize,
    p: &SjmParams<T>,
    which: QubitPosition,
) -> BlochVector<T> {
    let s = match which {
        QubitPosition::First => T::one(),
        QubitPosition::Second => -T::one(),
    };
    let c = cos_k_pi::<T>(k);
    let (sin_p, cos_p) = p.phi_k(k).sin_cos();
    let ct = p.theta().cos();
    BlochVector::new(
        -c * cos_p + s * ct * sin_p,
        -c * sin_p - s * ct * cos_p,
        s * c * p.theta().sin() * T::FRAC_1_SQRT_2(),
    )
    .scale(T::FRAC_1_SQRT_2())
}

/// Rotation axis `(cos φ_k, sin φ_k, 0)` relating the two reductions of `|Φ_k⟩`.
pub fn sjm_symmetry_axis<T: Scalar>(k: usize, p: &SjmParams<T>) -> BlochVector<T> {
    let (s, c) = p.phi_k(k).sin_cos();
    BlochVector::new(c, s, T::zero())
}

/// Rodrigues rotation of `v` by `angle` about the unit vector `axis`.
pub fn rotation_about_axis<T: Scalar>(
    v: &BlochVector<T>,
    axis: &BlochVector<T>,
    angle: T,
) -> Result<BlochVector<T>> {
    let n = axis.norm();
    if n.is_nan() || (n - T::one()).abs() > T::lit(crate::TOL_EXACT) {
        return Err(SjmError::NonUnitAxis(n.to_f64_lossy()));
    }
    let (s, c) = angle.sin_cos();
    let along = axis.scale(axis.dot(v) * (T::one() - c));
    Ok(v.scale(c).add(&axis.cross(v).scale(s)).add(&along))
}

/// Largest component of `Σ_k ⟨σ⃗⟩` over the basis, taken over both qubit positions.
pub fn verify_zero_sum<T: Scalar>(b: &JointBasis<T>) -> Result<T> {
    let mut worst = T::zero();
    for which in [QubitPosition::First, QubitPosition::Second] {
        let mut sum = BlochVector::zero();
        for s in &b.states {
            sum = sum.add(&reduction_vector(s, which)?);
        }
        worst = worst.max(sum.max_abs());
    }
    Ok(worst)
}

/// `max_k |C(|Φ_k⟩) − |sin θ|/2|`, also covering the spread between the two
/// reductions of each state.
pub fn iso_entanglement_residual<T: Scalar>(p: &SjmParams<T>) -> T {
    let expected = sjm_concurrence_closed_form(p.theta());
    (0..4).fold(T::zero(), |worst, k| {
        let s = sjm_state(k, p);
        let c1 = concurrence_from(&s, QubitPosition::First).expect("two qubits");
        let c2 = concurrence_from(&s, QubitPosition::Second).expect("two qubits");
        worst.max((c1 - expected).abs()).max((c1 - c2).abs())
    })
}

/// Largest deviation between numerical reductions and their closed forms.
pub fn reduction_closed_form_residual<T: Scalar>(p: &SjmParams<T>) -> T {
    let mut worst = T::zero();
    for k in 0..4 {
        let s = sjm_state(k, p);
        for which in [QubitPosition::First, QubitPosition::Second] {
            let v = reduction_vector(&s, which).expect("two qubits");
            worst = worst.max(v.max_abs_diff(&sjm_reduction_closed_form(k, p, which)));
        }
    }
    worst
}

/// Largest deviation of `R_π(u_k)·v_first(k)` from `v_second(k)` over `k`.
pub fn rotational_symmetry_residual<T: Scalar>(p: &SjmParams<T>) -> T {
    (0..4).fold(T::zero(), |worst, k| {
        let s = sjm_state(k, p);
        let first = reduction_vector(&s, QubitPosition::First).expect("two qubits");
        let second = reduction_vector(&s, QubitPosition::Second).expect("two qubits");
        let rotated = rotation_about_axis(&first, &sjm_symmetry_axis(k, p), T::PI())
            .expect("unit axis");
        worst.max(rotated.max_abs_diff(&second))
    })
}

/// Regularity of a four-point vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetrahedronReport<T> {
    /// Mean of the six edge lengths.
    pub edge: T,
    /// Largest deviation of an edge length from the mean.
    pub edge_spread: T,
    /// Largest deviation of a vertex norm from `expected_radius`.
    pub radius_residual: T,
    /// Norm of the vertex centroid.
    pub centroid_norm: T,
}

pub fn tetrahedron_report<T: Scalar>(
    vertices: &[BlochVector<T>; 4],
    expected_radius: T,
) -> TetrahedronReport<T> {
    let mut edges = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push(vertices[i].distance(&vertices[j]));
        }
    }
    let edge = edges.iter().fold(T::zero(), |a, &e| a + e) / T::lit(6.0);
    let edge_spread = edges.iter().fold(T::zero(), |m, &e| m.max((e - edge).abs()));
    let radius_residual = vertices
        .iter()
        .fold(T::zero(), |m, v| m.max((v.norm() - expected_radius).abs()));
    let centroid = vertices
        .iter()
        .fold(BlochVector::zero(), |a, v| a.add(v))
        .scale(T::lit(0.25));
    TetrahedronReport {
        edge,
        edge_spread,
        radius_residual,
        centroid_norm: centroid.norm(),
    }
}

/// First-qubit and second-qubit vertex sets.
pub type VertexSets<T> = ([BlochVector<T>; 4], [BlochVector<T>; 4]);

/// The four first-qubit and four second-qubit reduction vectors of a basis.
pub fn reduction_vertices<T: Scalar>(b: &JointBasis<T>) -> Result<VertexSets<T>> {
    let mut first = [BlochVector::zero(); 4];
    let mut second = [BlochVector::zero(); 4];
    for (k, s) in b.states.iter().take(4).enumerate() {
        first[k] = reduction_vector(s, QubitPosition::First)?;
        second[k] = reduction_vector(s, QubitPosition::Second)?;
    }
    Ok((first, second))
}

/// `|sin θ|/2`.
pub fn sjm_concurrence_closed_form<T: Scalar>(theta: T) -> T {
    theta.sin().abs() / T::lit(2.0)
}

/// `½√(1 + 3 sin²θ)`.
pub fn ejm_family_concurrence_closed_form<T: Scalar>(theta: T) -> T {
    (T::one() + T::lit(3.0) * theta.sin().powi(2)).sqrt() / T::lit(2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveFamily {
    /// The symmetric basis, `C ∈ [0, 1/2]`.
    Sjm,
    /// The single-state reference family, `C ∈ [1/2, 1]`.
    EjmFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint<T> {
    pub theta: T,
    /// Concurrence computed from the constructed state.
    pub concurrence: T,
    pub closed_form: T,
}

impl<T: Scalar> CurvePoint<T> {
    pub fn residual(&self) -> T {
        (self.concurrence - self.closed_form).abs()
    }
}

/// Concurrence versus θ, evaluated from constructed states (φ = 0, k = 0 for
/// the symmetric basis; `{|0⟩, |1⟩}` for the reference family).
pub fn concurrence_curve<T: Scalar>(family: CurveFamily, thetas: &[T]) -> Result<Vec<CurvePoint<T>>> {
    let zero = StateVector::basis_state(1, 0);
    let one = StateVector::basis_state(1, 1);
    thetas
        .iter()
        .map(|&theta| {
            let (state, closed_form) = match family {
                CurveFamily::Sjm => (
                    sjm_state(0, &SjmParams::new(theta, T::zero())?),
                    sjm_concurrence_closed_form(theta),
                ),
                CurveFamily::EjmFamily => {
                    if !(theta >= T::zero() && theta <= T::FRAC_PI_2()) {
                        return Err(SjmError::ThetaOutOfRange(theta.to_f64_lossy()));
                    }
                    (
                        build_ejm_family_state(theta, &zero, &one)?,
                        ejm_family_concurrence_closed_form(theta),
                    )
                }
            };
            Ok(CurvePoint {
                theta,
                concurrence: concurrence(&state)?,
                closed_form,
            })
        })
        .collect()
}
