//! Triangle network: three `|ψ₊⟩` sources shared between neighbouring
//! parties, each party measuring its two qubits in the symmetric basis.
//!
//! The source state is built in source order `(A₂, B₁, B₂, C₁, C₂, A₁)` and
//! reordered once to measurement order `(A₁, A₂, B₁, B₂, C₁, C₂)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bases::{build_bell_psi_plus, sjm_state, SjmParams, BASIS_SIZE};
use crate::error::Result;
use crate::linalg::{StateVector, Tensor};
use crate::scalar::{cos_k_pi, Scalar};

/// Number of joint outcomes `(a, b, c)`.
pub const NUM_OUTCOMES: usize = BASIS_SIZE * BASIS_SIZE * BASIS_SIZE;

/// Qubit `i` of the measurement-ordered register is qubit `SOURCE_TO_MEASUREMENT[i]`
/// of the source-ordered one: A₁ is the last source qubit.
pub const SOURCE_TO_MEASUREMENT: [usize; 6] = [5, 0, 1, 2, 3, 4];

/// Largest `p(a = b = c)` reachable by a trilocal model.
pub fn trilocal_bound<T: Scalar>() -> T {
    T::lit(61.0) / T::lit(256.0)
}

/// `arcsin √(15/28)`: above this θ the same-outcome probability beats the trilocal bound.
pub fn nonlocality_threshold<T: Scalar>() -> T {
    (T::lit(15.0) / T::lit(28.0)).sqrt().asin()
}

/// `|ψ₊⟩_{A₂B₁} ⊗ |ψ₊⟩_{B₂C₁} ⊗ |ψ₊⟩_{C₂A₁}` in source order.
pub fn build_triangle_state<T: Scalar>() -> StateVector<T> {
    let pair = build_bell_psi_plus();
    pair.tensor(&pair).tensor(&pair)
}

/// The triangle state reordered to `(A₁, A₂, B₁, B₂, C₁, C₂)`.
pub fn measurement_ordered_state<T: Scalar>() -> StateVector<T> {
    build_triangle_state()
        .permute_qubits(&SOURCE_TO_MEASUREMENT)
        .expect("valid permutation")
}

#[inline]
pub fn outcome_index(a: usize, b: usize, c: usize) -> usize {
    (a * BASIS_SIZE + b) * BASIS_SIZE + c
}

#[inline]
pub fn outcome_tuple(index: usize) -> (usize, usize, usize) {
    (index / 16, (index / 4) % 4, index % 4)
}

/// How many of the three outcomes coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeClass {
    AllEqual,
    AllDistinct,
    TwoEqual,
}

impl OutcomeClass {
    pub fn of(a: usize, b: usize, c: usize) -> Self {
        if a == b && b == c {
            OutcomeClass::AllEqual
        } else if a != b && b != c && a != c {
            OutcomeClass::AllDistinct
        } else {
            OutcomeClass::TwoEqual
        }
    }
}

/// `(4 + 21 sin²θ)/256`, `(4 + sin²θ)/256` or `(4 − 3 sin²θ)/256`.
pub fn probability_closed_form<T: Scalar>(a: usize, b: usize, c: usize, theta: T) -> T {
    let s2 = theta.sin().powi(2);
    let num = match OutcomeClass::of(a, b, c) {
        OutcomeClass::AllEqual => T::lit(4.0) + T::lit(21.0) * s2,
        OutcomeClass::AllDistinct => T::lit(4.0) + s2,
        OutcomeClass::TwoEqual => T::lit(4.0) - T::lit(3.0) * s2,
    };
    num / T::lit(256.0)
}

/// Closed-form `⟨Φ_j ⊗ Φ_k ⊗ Φ_l | Ψ_ABC⟩`:
///
/// `(1/32){e^{−2iθ}[c_j + c_k + c_l] + 2e^{−iθ}[sin(φ_j−φ_k) + sin(φ_k−φ_l) + sin(φ_l−φ_j)]
///  − 2[c_j cos(φ_k−φ_l) + c_k cos(φ_l−φ_j) + c_l cos(φ_j−φ_k)] − c_j c_k c_l}`
///
/// with `c_x = cos xπ` and `φ_x` the basis angles.
pub fn amplitude_closed_form<T: Scalar>(j: usize, k: usize, l: usize, p: &SjmParams<T>) -> Complex<T> {
    let (cj, ck, cl) = (cos_k_pi::<T>(j), cos_k_pi::<T>(k), cos_k_pi::<T>(l));
    let (pj, pk, pl) = (p.phi_k(j), p.phi_k(k), p.phi_k(l));
    let two = T::lit(2.0);
    let th = p.theta();
    let first = Complex::cis(-two * th) * (cj + ck + cl);
    let second = Complex::cis(-th) * (two * ((pj - pk).sin() + (pk - pl).sin() + (pl - pj).sin()));
    let third = two * (cj * (pk - pl).cos() + ck * (pl - pj).cos() + cl * (pj - pk).cos());
    (first + second - Complex::new(third + cj * ck * cl, T::zero())) / T::lit(32.0)
}

/// Joint outcome probabilities `p(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeDistribution<T> {
    /// Indexed by [`outcome_index`].
    pub probs: Vec<T>,
    /// Measurement parameters per party, in order `A`, `B`, `C`.
    pub params: [SjmParams<T>; 3],
}

impl<T: Scalar> OutcomeDistribution<T> {
    pub fn theta(&self) -> T {
        self.params[0].theta()
    }

    pub fn phi(&self) -> T {
        self.params[0].phi()
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> T {
        self.probs[outcome_index(a, b, c)]
    }

    pub fn total(&self) -> T {
        self.probs.iter().fold(T::zero(), |s, &p| s + p)
    }

    /// Rows `(a, b, c, p)` in lexicographic order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, usize, T)> + '_ {
        self.probs.iter().enumerate().map(|(i, &p)| {
            let (a, b, c) = outcome_tuple(i);
            (a, b, c, p)
        })
    }

    /// `p(a = b = c)`.
    pub fn p_same(&self) -> T {
        (0..BASIS_SIZE).fold(T::zero(), |s, j| s + self.get(j, j, j))
    }

    /// Largest `|p(a,b,c) − p(σ(a,b,c))|` over all six permutations σ.
    pub fn permutation_residual(&self) -> T {
        let mut worst = T::zero();
        for (a, b, c, p) in self.rows() {
            for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                worst = worst.max((p - self.get(x, y, z)).abs());
            }
        }
        worst
    }

    /// Largest deviation from the three-case closed form (homogeneous θ only).
    pub fn closed_form_residual(&self) -> T {
        let theta = self.theta();
        self.rows().fold(T::zero(), |m, (a, b, c, p)| {
            m.max((p - probability_closed_form(a, b, c, theta)).abs())
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.probs
            .iter()
            .zip(&other.probs)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }
}

fn party_states<T: Scalar>(p: &SjmParams<T>) -> Vec<StateVector<T>> {
    (0..BASIS_SIZE).map(|k| sjm_state(k, p)).collect()
}

/// Brute-force amplitudes `⟨Φ_a ⊗ Φ_b ⊗ Φ_c | Ψ_ABC⟩` for all 64 outcomes.
pub fn joint_amplitudes<T: Scalar>(params: &[SjmParams<T>; 3]) -> Vec<Complex<T>> {
    let psi = measurement_ordered_state();
    let (sa, sb, sc) = (
        party_states(&params[0]),
        party_states(&params[1]),
        party_states(&params[2]),
    );
    (0..NUM_OUTCOMES)
        .map(|i| {
            let (a, b, c) = outcome_tuple(i);
            sa[a].tensor(&sb[b])
                .tensor(&sc[c])
                .inner(&psi)
                .expect("64-dimensional")
        })
        .collect()
}

/// Joint distribution with per-party measurement parameters.
pub fn joint_distribution_with<T: Scalar>(params: [SjmParams<T>; 3]) -> OutcomeDistribution<T> {
    let floor = -T::lit(crate::TOL_EXACT);
    let probs = joint_amplitudes(&params)
        .into_iter()
        .map(|z| {
            let p = z.norm_sqr();
            debug_assert!(p >= floor);
            p.max(T::zero())
        })
        .collect();
    OutcomeDistribution { probs, params }
}

/// Joint distribution when all three parties measure with `p`.
pub fn joint_distribution<T: Scalar>(p: &SjmParams<T>) -> OutcomeDistribution<T> {
    joint_distribution_with([*p, *p, *p])
}

/// `p(a = b = c)` from the four diagonal brute-force amplitudes.
pub fn p_same_outcome<T: Scalar>(p: &SjmParams<T>) -> T {
    let psi = measurement_ordered_state();
    (0..BASIS_SIZE).fold(T::zero(), |acc, j| {
        let s = sjm_state(j, p);
        acc + s.tensor(&s).tensor(&s).inner(&psi).expect("64-dimensional").norm_sqr()
    })
}

/// `(4 + 21 sin²θ)/64`.
pub fn p_same_closed_form<T: Scalar>(theta: T) -> T {
    (T::lit(4.0) + T::lit(21.0) * theta.sin().powi(2)) / T::lit(64.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonlocalityReport<T> {
    pub theta: T,
    pub p_same: T,
    pub trilocal_bound: T,
    pub violates: bool,
}

impl<T: Scalar> NonlocalityReport<T> {
    pub fn new(theta: T, p_same: T) -> Self {
        let bound = trilocal_bound();
        Self {
            theta,
            p_same,
            trilocal_bound: bound,
            violates: p_same > bound + T::lit(crate::TOL_EXACT),
        }
    }
}

/// Same-outcome probability against the trilocal bound at each θ.
pub fn nonlocality_scan<T: Scalar>(thetas: &[T], phi: T) -> Result<Vec<NonlocalityReport<T>>> {
    thetas
        .iter()
        .map(|&theta| {
            let p = SjmParams::new(theta, phi)?;
            Ok(NonlocalityReport::new(theta, p_same_outcome(&p)))
        })
        .collect()
}

/// Last non-violating and first violating θ of an ascending scan.
pub fn threshold_bracket<T: Scalar>(reports: &[NonlocalityReport<T>]) -> Option<(T, T)> {
    reports
        .windows(2)
        .find(|w| !w[0].violates && w[1].violates)
        .map(|w| (w[0].theta, w[1].theta))
}

/// `steps + 1` evenly spaced points on `[lo, hi]`, both ends included.
pub fn inclusive_grid<T: Scalar>(lo: T, hi: T, steps: usize) -> Vec<T> {
    let steps = steps.max(1);
    let n = T::from_usize(steps).expect("grid size");
    (0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo + (hi - lo) * T::from_usize(i).expect("grid index") / n
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn triangle_state_structure() {
        let s = build_triangle_state::<f64>();
        assert_eq!(s.num_qubits(), 6);
        assert!(s.normalization_residual() < 1e-15);
        let nz = s.amplitudes().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nz, 8);
        let half = crate::linalg::Operator::<f64>::identity(2).scale(Complex::new(0.5, 0.0));
        for q in 0..6 {
            let rho = s.partial_trace(q).unwrap();
            assert!(rho.max_abs_diff(&half).unwrap() < 1e-15);
        }
    }

    #[test]
    fn outcome_indexing_round_trips() {
        for i in 0..NUM_OUTCOMES {
            let (a, b, c) = outcome_tuple(i);
            assert_eq!(outcome_index(a, b, c), i);
        }
    }

    #[test]
    fn outcome_classes() {
        assert_eq!(OutcomeClass::of(2, 2, 2), OutcomeClass::AllEqual);
        assert_eq!(OutcomeClass::of(0, 1, 3), OutcomeClass::AllDistinct);
        assert_eq!(OutcomeClass::of(0, 3, 0), OutcomeClass::TwoEqual);
    }

    #[test]
    fn ejm_point_probabilities() {
        let d = joint_distribution(&SjmParams::<f64>::new(FRAC_PI_2, 0.0).unwrap());
        assert!((d.get(1, 1, 1) - 25.0 / 256.0).abs() < 1e-10);
        assert!((d.get(0, 1, 2) - 5.0 / 256.0).abs() < 1e-10);
        assert!((d.get(3, 3, 0) - 1.0 / 256.0).abs() < 1e-10);
        assert!((d.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn product_point_is_uniform() {
        let d = joint_distribution(&SjmParams::<f64>::new(0.0, 1.0).unwrap());
        for (_, _, _, p) in d.rows() {
            assert!((p - 1.0 / 64.0).abs() < 1e-10);
        }
    }

    #[test]
    fn normalization_identity_of_closed_form() {
        for &t in &[0.0, 0.3, 1.0, FRAC_PI_2] {
            let s: f64 = (0..NUM_OUTCOMES)
                .map(|i| {
                    let (a, b, c) = outcome_tuple(i);
                    probability_closed_form(a, b, c, t)
                })
                .sum();
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn amplitude_closed_form_at_origin() {
        let p = SjmParams::<f64>::new(0.0, 0.0).unwrap();
        assert!((amplitude_closed_form(0, 0, 0, &p).norm_sqr() - 1.0 / 64.0).abs() < 1e-14);
    }

    #[test]
    fn p_same_values() {
        let top = p_same_outcome(&SjmParams::<f64>::new(FRAC_PI_2, 0.2).unwrap());
        assert!((top - 25.0 / 64.0).abs() < 1e-10);
        let bottom = p_same_outcome(&SjmParams::<f64>::new(0.0, 0.2).unwrap());
        assert!((bottom - 1.0 / 16.0).abs() < 1e-10);
        let t = nonlocality_threshold::<f64>();
        let at = p_same_outcome(&SjmParams::<f64>::new(t, 0.0).unwrap());
        assert!((at - 61.0 / 256.0).abs() < 1e-10);
    }

    #[test]
    fn scan_flags() {
        let r = nonlocality_scan(&[0.0, FRAC_PI_2], 0.0).unwrap();
        assert!(!r[0].violates);
        assert!(r[1].violates);
        assert_eq!(r[0].trilocal_bound, 61.0 / 256.0);
        assert!(nonlocality_scan(&[2.0], 0.0).is_err());
    }

    #[test]
    fn grid_is_inclusive() {
        let g = inclusive_grid(0.0, FRAC_PI_2, 4);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[4], FRAC_PI_2);
    }

    #[test]
    fn heterogeneous_parties_still_normalized() {
        let d = joint_distribution_with([
            SjmParams::<f64>::new(0.2, 0.1).unwrap(),
            SjmParams::<f64>::new(1.1, -2.0).unwrap(),
            SjmParams::<f64>::new(FRAC_PI_2, 3.0).unwrap(),
        ]);
        assert!((d.total() - 1.0).abs() < 1e-10);
    }
}
