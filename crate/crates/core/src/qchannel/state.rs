use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen4, hermitian_eigenvalues2, hermiticity_defect, kron, pauli, r, C64, CMat2,
    CMat4, Ket2, Ket4, ONE, ZERO,
};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-10;
pub const BLOCH_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Qubit(CMat2),
    Pair(CMat4),
}

/// A validated density matrix on one qubit (2×2) or two qubits (4×4).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Repr);

fn check_trace_and_hermitian(trace: C64, herm_defect: f64) -> Result<()> {
    if herm_defect > HERMITIAN_TOL {
        return Err(Error::InvalidState(format!(
            "not Hermitian (defect {herm_defect:.3e})"
        )));
    }
    if (trace - ONE).norm() > TRACE_TOL {
        return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
    }
    Ok(())
}

impl DensityMatrix {
    pub fn qubit(m: CMat2) -> Result<Self> {
        check_trace_and_hermitian(m.trace(), hermiticity_defect(&m))?;
        let lo = hermitian_eigenvalues2(&m)[0];
        if lo < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {lo:.3e}")));
        }
        Ok(Self(Repr::Qubit(m)))
    }

    pub fn bipartite(m: CMat4) -> Result<Self> {
        check_trace_and_hermitian(m.trace(), hermiticity_defect(&m))?;
        let lo = hermitian_eigen4(&m).0[0];
        if lo < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {lo:.3e}")));
        }
        Ok(Self(Repr::Pair(m)))
    }

    /// Accepts a 2×2 or 4×4 matrix of any storage.
    pub fn from_dmatrix(m: &DMatrix<C64>) -> Result<Self> {
        match (m.nrows(), m.ncols()) {
            (2, 2) => Self::qubit(CMat2::from_fn(|i, j| m[(i, j)])),
            (4, 4) => Self::bipartite(CMat4::from_fn(|i, j| m[(i, j)])),
            (rows, _) => Err(Error::DimensionMismatch {
                expected: 2,
                found: rows,
            }),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.0 {
            Repr::Qubit(_) => 2,
            Repr::Pair(_) => 4,
        }
    }

    pub fn as_qubit(&self) -> Result<&CMat2> {
        match &self.0 {
            Repr::Qubit(m) => Ok(m),
            Repr::Pair(_) => Err(Error::DimensionMismatch {
                expected: 2,
                found: 4,
            }),
        }
    }

    pub fn as_bipartite(&self) -> Result<&CMat4> {
        match &self.0 {
            Repr::Pair(m) => Ok(m),
            Repr::Qubit(_) => Err(Error::DimensionMismatch {
                expected: 4,
                found: 2,
            }),
        }
    }

    pub fn to_dmatrix(&self) -> DMatrix<C64> {
        match &self.0 {
            Repr::Qubit(m) => DMatrix::from_fn(2, 2, |i, j| m[(i, j)]),
            Repr::Pair(m) => DMatrix::from_fn(4, 4, |i, j| m[(i, j)]),
        }
    }

    pub fn maximally_mixed_qubit() -> Self {
        Self(Repr::Qubit(CMat2::identity() * r(0.5)))
    }

    pub fn pure_qubit(v: &Ket2) -> Result<Self> {
        let n = v.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v = v / r(n);
        Self::qubit(v * v.adjoint())
    }

    pub fn pure_pair(v: &Ket4) -> Result<Self> {
        let n = v.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v = v / r(n);
        Self::bipartite(v * v.adjoint())
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn phi_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = Ket4::new(r(s), ZERO, ZERO, r(s));
        Self(Repr::Pair(v * v.adjoint()))
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Ok(Self(Repr::Pair(kron(a.as_qubit()?, b.as_qubit()?))))
    }

    /// Expectation value `Tr[ρ O]`.
    pub fn expect2(&self, op: &CMat2) -> Result<C64> {
        Ok((self.as_qubit()? * op).trace())
    }

    pub fn expect4(&self, op: &CMat4) -> Result<C64> {
        Ok((self.as_bipartite()? * op).trace())
    }

    pub(crate) fn qubit_unchecked(m: CMat2) -> Self {
        Self(Repr::Qubit(m))
    }

    pub(crate) fn pair_unchecked(m: CMat4) -> Self {
        Self(Repr::Pair(m))
    }
}

/// `½(I + a·σ)` for a Bloch vector inside the unit ball.
pub fn bloch_to_density(a: [f64; 3]) -> Result<DensityMatrix> {
    let norm = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    if norm > 1.0 + BLOCH_TOL {
        return Err(Error::BlochOutOfBall { norm });
    }
    Ok(DensityMatrix::qubit_unchecked(bloch_matrix(a)))
}

/// `½(I + a·σ)` without range checks; also used for linear extension.
pub(crate) fn bloch_matrix(a: [f64; 3]) -> CMat2 {
    (pauli(0) + pauli(1) * r(a[0]) + pauli(2) * r(a[1]) + pauli(3) * r(a[2])) * r(0.5)
}

pub fn density_to_bloch(rho: &DensityMatrix) -> Result<[f64; 3]> {
    let m = rho.as_qubit()?;
    Ok([1, 2, 3].map(|k| (m * pauli(k)).trace().re))
}
