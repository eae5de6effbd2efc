use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use super::choi::{ChoiMatrix, CHOI_PSD_TOL};
use super::state::{bloch_matrix, density_to_bloch, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{pauli, paulis, C64, CMat2};

/// Real 4×4 affine representation acting on `(1, a₁, a₂, a₃)`.
///
/// Row 0 is exactly `(1, 0, 0, 0)`; column 0 below it is the translation
/// vector `t` and the lower-right 3×3 block is the linear part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TMatrix(Matrix4<f64>);

impl TMatrix {
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let row0 = [m[(0, 0)] - 1.0, m[(0, 1)], m[(0, 2)], m[(0, 3)]];
        if row0.iter().any(|x| x.abs() > 1e-12) {
            return Err(Error::InvalidTMatrix(format!(
                "first row must be (1,0,0,0), got ({}, {}, {}, {})",
                m[(0, 0)],
                m[(0, 1)],
                m[(0, 2)],
                m[(0, 3)]
            )));
        }
        let mut m = m;
        m[(0, 0)] = 1.0;
        m[(0, 1)] = 0.0;
        m[(0, 2)] = 0.0;
        m[(0, 3)] = 0.0;
        Ok(Self(m))
    }

    pub fn from_row_major(values: &[f64]) -> Result<Self> {
        if values.len() != 16 {
            return Err(Error::DimensionMismatch {
                expected: 16,
                found: values.len(),
            });
        }
        Self::new(Matrix4::from_row_slice(values))
    }

    pub fn from_parts(translation: Vector3<f64>, block: Matrix3<f64>) -> Self {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = 1.0;
        for i in 0..3 {
            m[(i + 1, 0)] = translation[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] = block[(i, j)];
            }
        }
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn diagonal(lambdas: [f64; 3]) -> Self {
        Self(Matrix4::from_diagonal(&Vector4::new(
            1.0, lambdas[0], lambdas[1], lambdas[2],
        )))
    }

    /// `diag(k₁, k₁, k₃)` block with translation `t` along z.
    pub fn nonunital(k1: f64, k3: f64, t: f64) -> Self {
        let mut m = Self::diagonal([k1, k1, k3]).0;
        m[(3, 0)] = t;
        Self(m)
    }

    /// Only `(3,0) = t` and `(3,3) = λ` survive outside the leading 1.
    pub fn coherence_breaking(t: f64, lambda: f64) -> Self {
        Self::nonunital(0.0, lambda, t)
    }

    /// Affine matrix of a Hermiticity-preserving linear map in the Pauli basis.
    /// Row 0 is not forced, so trace-decreasing maps are represented faithfully.
    pub fn affine_of(map: impl Fn(&CMat2) -> CMat2) -> Matrix4<f64> {
        let sig = paulis();
        let images: Vec<CMat2> = sig.iter().map(&map).collect();
        Matrix4::from_fn(|i, j| 0.5 * (sig[i] * images[j]).trace().re)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn translation(&self) -> Vector3<f64> {
        Vector3::new(self.0[(1, 0)], self.0[(2, 0)], self.0[(3, 0)])
    }

    pub fn block(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.0[(i + 1, j + 1)])
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.translation().amax() <= tol
    }

    pub fn to_row_major(&self) -> Vec<f64> {
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| self.0[(i, j)])
            .collect()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &TMatrix) -> TMatrix {
        TMatrix(self.0 * inner.0)
    }

    pub fn apply_bloch(&self, a: [f64; 3]) -> [f64; 3] {
        let v = self.0 * Vector4::new(1.0, a[0], a[1], a[2]);
        [v[1], v[2], v[3]]
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let a = density_to_bloch(rho)?;
        Ok(DensityMatrix::qubit_unchecked(bloch_matrix(
            self.apply_bloch(a),
        )))
    }

    /// Linear extension to arbitrary (non-Hermitian) operators.
    pub fn apply_operator(&self, x: &CMat2) -> CMat2 {
        let sig = paulis();
        let coeffs: Vec<C64> = sig.iter().map(|s| (s * x).trace() * 0.5).collect();
        let mut out = CMat2::zeros();
        for i in 0..4 {
            let ci: C64 = (0..4).map(|j| coeffs[j] * self.0[(i, j)]).sum();
            out += pauli(i) * ci;
        }
        out
    }

    pub fn choi(&self) -> ChoiMatrix {
        ChoiMatrix::from_map(|x| self.apply_operator(x))
    }

    pub fn is_completely_positive(&self) -> bool {
        self.choi().is_psd(CHOI_PSD_TOL)
    }

    pub fn max_abs_diff(&self, other: &TMatrix) -> f64 {
        (self.0 - other.0).iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

/// Minimal Kraus set reproducing a completely positive T-matrix.
pub fn kraus_from_tmatrix(t: &TMatrix) -> Result<Vec<CMat2>> {
    t.choi().to_kraus()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, r, ONE, ZERO};
    use crate::qchannel::pauli::PauliChannel;

    fn tmatrix_of_kraus(ops: &[CMat2]) -> Matrix4<f64> {
        TMatrix::affine_of(|x| ops.iter().map(|k| k * x * k.adjoint()).sum())
    }

    #[test]
    fn first_row_is_enforced() {
        let mut m = Matrix4::identity();
        m[(0, 2)] = 0.1;
        assert!(TMatrix::new(m).is_err());
        assert!(TMatrix::from_row_major(&[1.0; 15]).is_err());
    }

    #[test]
    fn identity_round_trips_to_single_kraus() {
        let ops = kraus_from_tmatrix(&TMatrix::identity()).unwrap();
        assert_eq!(ops.len(), 1);
        assert!(max_abs_diff(&ops[0], &CMat2::identity()) < 1e-12);
    }

    #[test]
    fn pauli_tmatrix_round_trips_to_weighted_paulis() {
        let lambdas = [0.5, -0.2, 0.1];
        let pc = PauliChannel::from_lambdas(lambdas).unwrap();
        let ops = kraus_from_tmatrix(&TMatrix::diagonal(lambdas)).unwrap();
        assert_eq!(ops.len(), 4);
        // Each extracted operator is √p_μ σ_μ for a distinct μ (phase fixed).
        let mut seen = [false; 4];
        for op in &ops {
            let mu = (0..4)
                .find(|&mu| {
                    let w = pc.probs()[mu].sqrt();
                    max_abs_diff(op, &crate::qchannel::choi::fix_phase(pauli(mu) * r(w))) < 1e-9
                })
                .expect("operator matches a weighted Pauli");
            seen[mu] = true;
        }
        assert!(seen.iter().all(|&s| s));
        let back = tmatrix_of_kraus(&ops);
        assert!((back - TMatrix::diagonal(lambdas).0).amax() < 1e-9);
    }

    #[test]
    fn replacement_map_sends_everything_to_ket_zero() {
        let t = TMatrix::nonunital(0.0, 0.0, 1.0);
        let ops = kraus_from_tmatrix(&t).unwrap();
        assert!(ops.len() <= 4);
        let zero = CMat2::new(ONE, ZERO, ZERO, ZERO);
        for basis in [CMat2::new(ONE, ZERO, ZERO, ZERO), CMat2::new(ZERO, ZERO, ZERO, ONE)] {
            let out: CMat2 = ops.iter().map(|k| k * basis * k.adjoint()).sum();
            assert!(max_abs_diff(&out, &zero) < 1e-9);
        }
        assert!((tmatrix_of_kraus(&ops) - t.0).amax() < 1e-9);
    }

    #[test]
    fn non_cp_tmatrix_is_rejected() {
        // λ = (1, 1, -1) lies outside the CP tetrahedron.
        let err = kraus_from_tmatrix(&TMatrix::diagonal([1.0, 1.0, -1.0])).unwrap_err();
        assert!(matches!(err, Error::NotCompletelyPositive { .. }));
    }

    #[test]
    fn linear_extension_matches_bloch_action() {
        let t = TMatrix::nonunital(0.3, 0.5, 0.2);
        let rho = crate::qchannel::state::bloch_to_density([0.2, 0.1, -0.6]).unwrap();
        let via_bloch = t.apply(&rho).unwrap();
        let via_linear = t.apply_operator(rho.as_qubit().unwrap());
        assert!(max_abs_diff(via_bloch.as_qubit().unwrap(), &via_linear) < 1e-14);
    }
}
