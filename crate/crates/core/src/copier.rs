//! The copier unitary and the copy operation on mixed source/medium states.
//!
//! The copier maps |a, m> -> |a, m XOR a>: a prepared medium receives the
//! source bit faithfully, an unprepared one receives its negation. That is
//! the only unitary completion of "copy onto a prepared medium" in the fixed
//! basis; overwriting the medium regardless of its state would erase
//! information and cannot be unitary. Phases are fixed to +1, making the
//! copier a real 0/1 permutation matrix and its own inverse.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{
    conjugate_by_unitary, partial_trace, tensor, ComplexMatrix, DensityMatrix, MediumBasis,
    SourceBasis, Subsystem,
};

/// Classical bit distribution stored on the source system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceDistribution {
    p0: f64,
    p1: f64,
}

impl SourceDistribution {
    pub fn new(p0: f64, p1: f64) -> Result<Self> {
        for (name, value) in [("p0", p0), ("p1", p1)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        let sum = p0 + p1;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::UnnormalizedDistribution { sum });
        }
        Ok(Self { p0, p1 })
    }

    pub fn from_p0(p0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(Error::InvalidProbability {
                name: "p0",
                value: p0,
            });
        }
        Ok(Self { p0, p1: 1.0 - p0 })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }
}

/// Probability that the medium starts unprepared (and the copy lands
/// negated), i.e. the channel error rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumNoise {
    b: f64,
    polarization: f64,
}

impl MediumNoise {
    pub fn new(b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::InvalidProbability { name: "b", value: b });
        }
        Ok(Self {
            b,
            polarization: 1.0 - 2.0 * b,
        })
    }

    /// Thermal constructor: keeps the exactly computed polarization next to
    /// the rounded error rate.
    pub(crate) fn from_parts(b: f64, polarization: f64) -> Self {
        Self { b, polarization }
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// 1 - 2b, the medium's polarization (tanh(beta*delta/2) for a thermal
    /// medium). Stored separately from `b` because near b = 1/2 the
    /// polarization underflows the absolute resolution of `b` itself; the
    /// inverse-temperature round trip and the small-splitting energy limit
    /// both need its full relative precision.
    pub fn polarization(&self) -> f64 {
        self.polarization
    }
}

/// Outcome of a copy: the joint post-copy state and both reduced states.
#[derive(Debug, Clone, PartialEq)]
pub struct CopyResult {
    pub joint_after: DensityMatrix,
    pub reduced_a: DensityMatrix,
    pub reduced_b: DensityMatrix,
}

/// The 4x4 copier permutation |a, m> -> |a, m XOR a>.
pub fn copier_unitary() -> ComplexMatrix {
    let mut entries = vec![Complex64::new(0.0, 0.0); 16];
    for a in [SourceBasis::Zero, SourceBasis::One] {
        for m in [MediumBasis::Prepared, MediumBasis::Unprepared] {
            let from = crate::matrix::joint_index(a, m);
            let to = 2 * a.index() + (m.index() ^ a.index());
            entries[to * 4 + from] = Complex64::new(1.0, 0.0);
        }
    }
    ComplexMatrix::from_entries(4, entries).expect("16 entries for a 4x4 matrix")
}

/// diag(p0, p1) on the source system.
pub fn source_state(dist: &SourceDistribution) -> DensityMatrix {
    let m = ComplexMatrix::from_real_diagonal(&[dist.p0(), dist.p1()])
        .expect("2x2 diagonal");
    DensityMatrix::new(m).expect("a classical bit distribution is a valid state")
}

/// diag(1 - b, b) on the medium system (prepared = |0>, unprepared = |1>).
pub fn medium_state(noise: &MediumNoise) -> DensityMatrix {
    let m = ComplexMatrix::from_real_diagonal(&[1.0 - noise.b(), noise.b()])
        .expect("2x2 diagonal");
    DensityMatrix::new(m).expect("a medium preparation mixture is a valid state")
}

/// Full dense simulation of one copy: build the product state, conjugate by
/// the copier unitary, reduce to both subsystems.
pub fn copy_dense(dist: &SourceDistribution, noise: &MediumNoise) -> CopyResult {
    let rho_a = source_state(dist);
    let rho_b = medium_state(noise);
    let joint = tensor(rho_a.matrix(), rho_b.matrix()).expect("both factors are 2x2");
    let joint = DensityMatrix::new(joint).expect("product of valid states is valid");
    let joint_after =
        conjugate_by_unitary(&joint, &copier_unitary()).expect("the copier is exactly unitary");
    let reduced_a = partial_trace(&joint_after, Subsystem::A).expect("joint state is 4x4");
    let reduced_b = partial_trace(&joint_after, Subsystem::B).expect("joint state is 4x4");
    CopyResult {
        joint_after,
        reduced_a,
        reduced_b,
    }
}

/// Same three matrices as [`copy_dense`], written down directly from the
/// closed forms: the post-copy joint state is diagonal with populations
/// (p0(1-b), p0 b, p1 b, p1(1-b)), the source is unchanged, and the copy
/// carries populations (p0(1-b) + p1 b, p0 b + p1(1-b)). No 4x4 products.
pub fn copy_closed_form(dist: &SourceDistribution, noise: &MediumNoise) -> CopyResult {
    let (p0, p1, b) = (dist.p0(), dist.p1(), noise.b());
    let joint_after = DensityMatrix::new(
        ComplexMatrix::from_real_diagonal(&[
            p0 * (1.0 - b),
            p0 * b,
            p1 * b,
            p1 * (1.0 - b),
        ])
        .expect("4x4 diagonal"),
    )
    .expect("post-copy populations form a valid state");
    let reduced_a = source_state(dist);
    let reduced_b = DensityMatrix::new(
        ComplexMatrix::from_real_diagonal(&[
            p0 * (1.0 - b) + p1 * b,
            p0 * b + p1 * (1.0 - b),
        ])
        .expect("2x2 diagonal"),
    )
    .expect("copy populations form a valid state");
    CopyResult {
        joint_after,
        reduced_a,
        reduced_b,
    }
}

/// Runs the copier on a pure source state a0|0> + a1|1> with a prepared
/// medium and returns the joint output state.
///
/// Only basis states come out as product states; any genuine superposition
/// entangles the two systems instead of being cloned, leaving the reduced
/// copy mixed (purity below 1).
pub fn copy_pure_input(a0: Complex64, a1: Complex64) -> Result<DensityMatrix> {
    let norm_sq = a0.norm_sqr() + a1.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::UnnormalizedAmplitudes { norm_sq });
    }
    let source = ComplexMatrix::from_outer_product(&[a0, a1]).expect("2x2 outer product");
    let source = DensityMatrix::new(source).expect("normalized pure state is valid");
    let medium = medium_state(&MediumNoise::new(0.0).expect("0 is a probability"));
    let joint = tensor(source.matrix(), medium.matrix()).expect("both factors are 2x2");
    let joint = DensityMatrix::new(joint).expect("product of valid states is valid");
    conjugate_by_unitary(&joint, &copier_unitary())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use crate::matrix::is_unitary;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(values: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(values).unwrap()
    }

    #[test]
    fn copier_maps_basis_states_as_designed() {
        let u = copier_unitary();
        // Columns are the images of |0p>, |0u>, |1p>, |1u>.
        let expected_images = [0usize, 1, 3, 2];
        for (col, &row) in expected_images.iter().enumerate() {
            for r in 0..4 {
                let expected = if r == row { 1.0 } else { 0.0 };
                assert_eq!(u.get(r, col), c(expected, 0.0));
            }
        }
    }

    #[test]
    fn copier_is_unitary_and_involutive() {
        let u = copier_unitary();
        assert!(is_unitary(&u, 1e-15));
        let squared = u.mul(&u).unwrap();
        assert_eq!(squared, ComplexMatrix::identity(4).unwrap());
    }

    #[test]
    fn source_state_examples() {
        let half = SourceDistribution::new(0.5, 0.5).unwrap();
        assert!(source_state(&half).matrix().max_abs_diff(&diag(&[0.5, 0.5])) == 0.0);
        let sure = SourceDistribution::new(1.0, 0.0).unwrap();
        assert!(source_state(&sure).matrix().max_abs_diff(&diag(&[1.0, 0.0])) == 0.0);
        let skewed = SourceDistribution::from_p0(0.7).unwrap();
        assert!(source_state(&skewed).matrix().max_abs_diff(&diag(&[0.7, 0.3])) <= 1e-15);
    }

    #[test]
    fn source_distribution_rejects_bad_inputs() {
        assert!(matches!(
            SourceDistribution::new(1.2, -0.2),
            Err(Error::InvalidProbability { name: "p0", .. })
        ));
        assert_eq!(
            SourceDistribution::new(0.6, 0.6).unwrap_err(),
            Error::UnnormalizedDistribution { sum: 1.2 }
        );
        assert!(SourceDistribution::from_p0(f64::NAN).is_err());
    }

    #[test]
    fn medium_state_examples() {
        for (b, want) in [(0.0, [1.0, 0.0]), (0.5, [0.5, 0.5]), (0.1, [0.9, 0.1])] {
            let noise = MediumNoise::new(b).unwrap();
            assert!(medium_state(&noise).matrix().max_abs_diff(&diag(&want)) <= 1e-15);
        }
        assert!(MediumNoise::new(-0.1).is_err());
        assert!(MediumNoise::new(1.1).is_err());
    }

    #[test]
    fn noiseless_copy_of_fair_bit_is_perfectly_correlated() {
        let result = copy_dense(
            &SourceDistribution::from_p0(0.5).unwrap(),
            &MediumNoise::new(0.0).unwrap(),
        );
        assert!(result
            .joint_after
            .matrix()
            .max_abs_diff(&diag(&[0.5, 0.0, 0.0, 0.5]))
            <= 1e-15);
        assert!(result.reduced_b.matrix().max_abs_diff(&diag(&[0.5, 0.5])) <= 1e-15);
    }

    #[test]
    fn copy_special_cases_for_skewed_source() {
        let dist = SourceDistribution::from_p0(0.7).unwrap();
        // b = 0: faithful copy.
        let faithful = copy_dense(&dist, &MediumNoise::new(0.0).unwrap());
        assert!(faithful.reduced_b.matrix().max_abs_diff(&diag(&[0.7, 0.3])) <= 1e-12);
        // b = 1/2: the copy carries nothing.
        let scrambled = copy_dense(&dist, &MediumNoise::new(0.5).unwrap());
        assert!(scrambled.reduced_b.matrix().max_abs_diff(&diag(&[0.5, 0.5])) <= 1e-12);
        // b = 1: faithful copy with negation.
        let negated = copy_dense(&dist, &MediumNoise::new(1.0).unwrap());
        assert!(negated.reduced_b.matrix().max_abs_diff(&diag(&[0.3, 0.7])) <= 1e-12);
    }

    #[test]
    fn closed_form_matches_worked_example() {
        let result = copy_closed_form(
            &SourceDistribution::from_p0(0.7).unwrap(),
            &MediumNoise::new(0.1).unwrap(),
        );
        assert!(result.reduced_b.matrix().max_abs_diff(&diag(&[0.66, 0.34])) <= 1e-12);
        assert!(result.reduced_a.matrix().max_abs_diff(&diag(&[0.7, 0.3])) <= 1e-12);
        assert!(result
            .joint_after
            .matrix()
            .max_abs_diff(&diag(&[0.63, 0.07, 0.03, 0.27]))
            <= 1e-12);
    }

    #[test]
    fn copying_basis_states_yields_product_states() {
        let zero = copy_pure_input(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let mut expected = vec![c(0.0, 0.0); 16];
        expected[0] = c(1.0, 0.0);
        assert!(zero.matrix().max_abs_diff(&ComplexMatrix::from_entries(4, expected).unwrap()) <= 1e-15);
        let b = partial_trace(&zero, Subsystem::B).unwrap();
        assert_abs_diff_eq!(b.purity(), 1.0, epsilon = 1e-12);

        let one = copy_pure_input(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let mut expected = vec![c(0.0, 0.0); 16];
        expected[15] = c(1.0, 0.0);
        assert!(one.matrix().max_abs_diff(&ComplexMatrix::from_entries(4, expected).unwrap()) <= 1e-15);
    }

    #[test]
    fn copying_a_superposition_entangles_instead_of_cloning() {
        let amp = 0.5f64.sqrt();
        let out = copy_pure_input(c(amp, 0.0), c(amp, 0.0)).unwrap();

        // Independent oracle: the expected output projector onto
        // (|00> + |11>)/sqrt(2), written out entry by entry.
        let mut expected = vec![c(0.0, 0.0); 16];
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                expected[i * 4 + j] = c(0.5, 0.0);
            }
        }
        let expected = ComplexMatrix::from_entries(4, expected).unwrap();
        assert!(out.matrix().max_abs_diff(&expected) <= 1e-12);

        let reduced_b = partial_trace(&out, Subsystem::B).unwrap();
        assert!(reduced_b.matrix().max_abs_diff(&diag(&[0.5, 0.5])) <= 1e-12);
        assert_abs_diff_eq!(reduced_b.purity(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn copying_a_complex_superposition_also_mixes_the_copy() {
        let amp = 0.5f64.sqrt();
        let out = copy_pure_input(c(amp, 0.0), c(0.0, amp)).unwrap();
        let reduced_b = partial_trace(&out, Subsystem::B).unwrap();
        assert!(reduced_b.matrix().max_abs_diff(&diag(&[0.5, 0.5])) <= 1e-12);
        assert_abs_diff_eq!(reduced_b.purity(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn copy_pure_input_rejects_unnormalized_amplitudes() {
        assert!(matches!(
            copy_pure_input(c(1.0, 0.0), c(0.5, 0.0)),
            Err(Error::UnnormalizedAmplitudes { .. })
        ));
    }

    proptest! {
        #[test]
        fn dense_and_closed_form_agree(p0 in 0.0..=1.0f64, b in 0.0..=1.0f64) {
            let dist = SourceDistribution::from_p0(p0).unwrap();
            let noise = MediumNoise::new(b).unwrap();
            let dense = copy_dense(&dist, &noise);
            let closed = copy_closed_form(&dist, &noise);
            prop_assert!(dense.joint_after.matrix().max_abs_diff(closed.joint_after.matrix()) <= 1e-12);
            prop_assert!(dense.reduced_a.matrix().max_abs_diff(closed.reduced_a.matrix()) <= 1e-12);
            prop_assert!(dense.reduced_b.matrix().max_abs_diff(closed.reduced_b.matrix()) <= 1e-12);
        }

        #[test]
        fn source_is_untouched_and_copying_twice_undoes_itself(p0 in 0.0..=1.0f64, b in 0.0..=1.0f64) {
            let dist = SourceDistribution::from_p0(p0).unwrap();
            let noise = MediumNoise::new(b).unwrap();
            let result = copy_dense(&dist, &noise);
            prop_assert!(result.reduced_a.matrix().max_abs_diff(source_state(&dist).matrix()) <= 1e-12);

            let u = copier_unitary();
            let before = tensor(source_state(&dist).matrix(), medium_state(&noise).matrix()).unwrap();
            let twice = conjugate_by_unitary(&result.joint_after, &u).unwrap();
            prop_assert!(twice.matrix().max_abs_diff(&before) <= 1e-15);
        }
    }
}
