//! Two-setting steering functional `F(ρ) = |⟨σₓ⊗σₓ⟩ + ⟨σ_z⊗σ_z⟩| / √2`.
//!
//! `F > 1` certifies steerability. `F ≤ 1` is reported as undetected, not as unsteerable.

use crate::error::Result;
use crate::linalg::{kron, pauli};
use crate::qchannel::{Channel, DensityMatrix};

#[derive(Clone, Debug)]
pub struct SteeringInput {
    pub rho_ab: DensityMatrix,
    pub channel_on_a: Channel,
}

impl SteeringInput {
    pub fn new(rho_ab: DensityMatrix, channel_on_a: Channel) -> Result<Self> {
        rho_ab.as_bipartite()?;
        Ok(Self { rho_ab, channel_on_a })
    }

    pub fn output(&self) -> Result<DensityMatrix> {
        steered_state(&self.channel_on_a, &self.rho_ab)
    }

    pub fn f(&self) -> Result<f64> {
        steering_f(&self.output()?)
    }
}

pub fn steering_f(rho_ab: &DensityMatrix) -> Result<f64> {
    let xx = rho_ab.expect4(&kron(&pauli(1), &pauli(1)))?.re;
    let zz = rho_ab.expect4(&kron(&pauli(3), &pauli(3)))?.re;
    Ok((xx + zz).abs() * std::f64::consts::FRAC_1_SQRT_2)
}

/// `(Λ ⊗ id)(ρ_AB)` with `Λ` on the first factor.
pub fn steered_state(ch: &Channel, rho_ab: &DensityMatrix) -> Result<DensityMatrix> {
    let m = rho_ab.as_bipartite()?;
    let id = crate::linalg::CMat2::identity();
    let out = ch
        .kraus()
        .ops()
        .iter()
        .map(|k| {
            let kk = kron(k, &id);
            kk * m * kk.adjoint()
        })
        .sum();
    Ok(DensityMatrix::pair_unchecked(out))
}

/// `F` of `(C ⊗ id)|Φ⁺⟩⟨Φ⁺|` for `C = diag(1, (1+λ)²/4, (1+λ)²/4, λ²)`:
/// `((1+λ)²/4 + λ²)/√2`.
pub fn corrected_phi_f(lambda3: f64) -> f64 {
    ((1.0 + lambda3).powi(2) / 4.0 + lambda3 * lambda3) * std::f64::consts::FRAC_1_SQRT_2
}

/// λ₃ in `[0, 1]` with `corrected_phi_f = 1`.
pub fn corrected_phi_threshold() -> Result<f64> {
    super::bisect(|l| corrected_phi_f(l) - 1.0, 0.0, 1.0, super::ROOT_TOL)
}
