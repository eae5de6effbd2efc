use super::kraus::Channel;
use super::tmatrix::TMatrix;
use crate::error::{Error, Result};
use crate::linalg::{pauli, r, CMat2};

pub const PROB_TOL: f64 = 1e-12;

/// `ρ ↦ Σ_μ p_μ σ_μ ρ σ_μ`, equivalently `diag(1, λ₁, λ₂, λ₃)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliChannel {
    p: [f64; 4],
}

impl PauliChannel {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if let Some(bad) = p.iter().find(|&&x| x < -PROB_TOL || !x.is_finite()) {
            return Err(Error::NotCompletelyPositive {
                min_eigenvalue: *bad,
            });
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidProbabilities(format!(
                "weights sum to {total}"
            )));
        }
        Ok(Self { p })
    }

    pub fn from_lambdas(lambdas: [f64; 3]) -> Result<Self> {
        lambdas_to_probs(lambdas)
    }

    pub fn identity() -> Self {
        Self {
            p: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn probs(&self) -> [f64; 4] {
        self.p
    }

    pub fn lambdas(&self) -> [f64; 3] {
        probs_to_lambdas(self)
    }

    pub fn tmatrix(&self) -> TMatrix {
        TMatrix::diagonal(self.lambdas())
    }

    pub fn kraus(&self) -> Vec<CMat2> {
        (0..4)
            .filter(|&mu| self.p[mu] > 0.0)
            .map(|mu| pauli(mu) * r(self.p[mu].sqrt()))
            .collect()
    }

    pub fn channel(&self) -> Channel {
        Channel::from_kraus(self.kraus()).expect("Pauli weights sum to one")
    }

    /// Composition of Pauli channels multiplies λ-vectors.
    pub fn compose(&self, inner: &PauliChannel) -> Result<PauliChannel> {
        let a = self.lambdas();
        let b = inner.lambdas();
        lambdas_to_probs([a[0] * b[0], a[1] * b[1], a[2] * b[2]])
    }
}

pub fn lambdas_to_probs(l: [f64; 3]) -> Result<PauliChannel> {
    let p = [
        (1.0 + l[0] + l[1] + l[2]) / 4.0,
        (1.0 + l[0] - l[1] - l[2]) / 4.0,
        (1.0 - l[0] + l[1] - l[2]) / 4.0,
        (1.0 - l[0] - l[1] + l[2]) / 4.0,
    ];
    if let Some(bad) = p.iter().find(|&&x| x < -PROB_TOL) {
        return Err(Error::NotCompletelyPositive {
            min_eigenvalue: *bad,
        });
    }
    Ok(PauliChannel { p })
}

pub fn probs_to_lambdas(ch: &PauliChannel) -> [f64; 3] {
    let [p0, p1, p2, p3] = ch.p;
    [p0 + p1 - p2 - p3, p0 - p1 + p2 - p3, p0 - p1 - p2 + p3]
}
