use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{
    choi_is_entanglement_breaking, pauli_is_entanglement_breaking, pauli_switch_usefulness,
    switch_usefulness, SwitchUsefulness, UselessPredicate,
};
use crate::error::{Error, Result};
use crate::qchannel::choi::CHOI_PSD_TOL;
use crate::qchannel::{Channel, PauliChannel, TMatrix};

/// Channel families with three real parameters.
///
/// `Pauli`: `(λ₁, λ₂, λ₃)`, T = diag(1, λ₁, λ₂, λ₃).
/// `Nonunital`: `(k₁, k₃, t)`, block diag(k₁, k₁, k₃) with z-translation t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pauli,
    Nonunital,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pauli" => Ok(Self::Pauli),
            "nonunital" => Ok(Self::Nonunital),
            other => Err(Error::InvalidParameter(format!("unknown family {other}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Pauli => "pauli",
            Self::Nonunital => "nonunital",
        }
    }

    pub fn tmatrix(&self, p: [f64; 3]) -> TMatrix {
        match self {
            Self::Pauli => TMatrix::diagonal(p),
            Self::Nonunital => TMatrix::nonunital(p[0], p[1], p[2]),
        }
    }

    /// One cube proposal, kept if the channel is CP and entanglement breaking.
    pub fn propose(&self, rng: &mut impl Rng) -> Option<[f64; 3]> {
        let p: [f64; 3] = [0; 3].map(|_| rng.random_range(-1.0..=1.0));
        self.is_ebc(p).then_some(p)
    }

    pub fn is_ebc(&self, p: [f64; 3]) -> bool {
        match self {
            Self::Pauli => pauli_is_entanglement_breaking(p),
            Self::Nonunital => {
                let choi = self.tmatrix(p).choi();
                choi.is_psd(CHOI_PSD_TOL) && choi_is_entanglement_breaking(&choi).unwrap_or(false)
            }
        }
    }

    pub fn sample_ebc(&self, rng: &mut impl Rng) -> [f64; 3] {
        loop {
            if let Some(p) = self.propose(rng) {
                return p;
            }
        }
    }

    /// Parameters of `a ∘ b` (apply `b` first).
    pub fn compose(&self, a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        match self {
            Self::Pauli => [a[0] * b[0], a[1] * b[1], a[2] * b[2]],
            // (k₁, k₃, t): t_ab = t_a + k₃_a t_b
            Self::Nonunital => [a[0] * b[0], a[1] * b[1], a[2] + a[1] * b[2]],
        }
    }

    /// Entanglement-breaking switch usefulness.
    pub fn usefulness(&self, p: [f64; 3]) -> Result<SwitchUsefulness> {
        match self {
            Self::Pauli => Ok(pauli_switch_usefulness(&PauliChannel::from_lambdas(p)?)),
            Self::Nonunital => switch_usefulness(
                &Channel::from_tmatrix(&self.tmatrix(p))?,
                UselessPredicate::EntanglementBreaking,
            ),
        }
    }

    /// Parameter names in the order they are stored.
    pub fn parameter_names(&self) -> [&'static str; 3] {
        match self {
            Self::Pauli => ["l1", "l2", "l3"],
            Self::Nonunital => ["k1", "k3", "t"],
        }
    }
}

pub fn sample_pauli_ebc(rng: &mut impl Rng, count: usize) -> Vec<[f64; 3]> {
    (0..count).map(|_| Family::Pauli.sample_ebc(rng)).collect()
}

/// Nonunital samples as `(k₁, k₃, t)`.
pub fn sample_nonunital_ebc(rng: &mut impl Rng, count: usize) -> Vec<[f64; 3]> {
    (0..count).map(|_| Family::Nonunital.sample_ebc(rng)).collect()
}
