use crate::error::{Error, Result};
use crate::linalg::{
    contract_second, hermitian_eigen4, hermiticity_defect, ket, kron, partial_transpose_second,
    ptrace_first, r, unit, CMat2, CMat4, ONE, ZERO,
};

/// Choi eigenvalues below this are dropped when extracting Kraus operators.
pub const KRAUS_CUTOFF: f64 = 1e-12;
pub const CHOI_PSD_TOL: f64 = 1e-9;

/// `(Λ ⊗ id)(|Φ⁺⟩⟨Φ⁺|)` with the output on the first factor, normalised so that
/// a trace-preserving map has unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix(CMat4);

impl ChoiMatrix {
    pub fn from_kraus(ops: &[CMat2]) -> Self {
        Self::from_map(|x| ops.iter().map(|k| k * x * k.adjoint()).sum())
    }

    /// Builds the Choi matrix of any linear map given by its action on operators.
    pub fn from_map(map: impl Fn(&CMat2) -> CMat2) -> Self {
        let mut m = CMat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m += kron(&map(&unit(i, j)), &unit(i, j));
            }
        }
        Self(m * r(0.5))
    }

    pub fn from_matrix(m: CMat4) -> Result<Self> {
        let defect = hermiticity_defect(&m);
        if defect > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "Choi matrix not Hermitian (defect {defect:.3e})"
            )));
        }
        Ok(Self(m))
    }

    pub fn zero() -> Self {
        Self(CMat4::zeros())
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigen4(&self.0).0[0]
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    pub fn partial_transpose(&self) -> CMat4 {
        partial_transpose_second(&self.0)
    }

    pub fn min_partial_transpose_eigenvalue(&self) -> f64 {
        hermitian_eigen4(&self.partial_transpose()).0[0]
    }

    /// Partial trace over the output factor; `I/2` for trace-preserving maps.
    pub fn input_marginal(&self) -> CMat2 {
        ptrace_first(&self.0)
    }

    /// Recovers the map's action through channel-state duality.
    pub fn apply(&self, x: &CMat2) -> CMat2 {
        let basis = [ket(ONE, ZERO), ket(ZERO, ONE)];
        let mut out = CMat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out += contract_second(&self.0, &basis[i], &basis[j]) * x[(i, j)];
            }
        }
        out * r(2.0)
    }

    pub fn scaled(&self, w: f64) -> Self {
        Self(self.0 * r(w))
    }

    /// Minimal Kraus set from the eigendecomposition, each operator phased so
    /// its largest-magnitude entry is real and positive.
    pub fn to_kraus(&self) -> Result<Vec<CMat2>> {
        let (values, vectors) = hermitian_eigen4(&self.0);
        if values[0] < -CHOI_PSD_TOL {
            return Err(Error::NotCompletelyPositive {
                min_eigenvalue: values[0],
            });
        }
        let mut ops = Vec::new();
        // largest weight first
        for k in (0..4).rev() {
            let mu = values[k];
            if mu <= KRAUS_CUTOFF {
                continue;
            }
            let scale = (2.0 * mu).sqrt();
            let v = vectors.column(k);
            let op = CMat2::from_fn(|a, i| v[2 * a + i] * r(scale));
            ops.push(fix_phase(op));
        }
        Ok(ops)
    }
}

pub(crate) fn fix_phase(op: CMat2) -> CMat2 {
    let max = op.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return op;
    }
    // first entry (column-major) within rounding of the maximum
    let pivot = op
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-9))
        .copied()
        .unwrap_or(ONE);
    op * (pivot.conj() / pivot.norm())
}
