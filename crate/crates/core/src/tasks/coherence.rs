//! Coherence transfer through a switched coherence-breaking channel followed by
//! the controlled unitary `I ⊗ |+⟩⟨+| + U(θ, φ₁, φ₂) ⊗ |−⟩⟨−|`, with ω = |+⟩⟨+|.

use nalgebra::Matrix4;

use crate::error::Result;
use crate::linalg::{c, paulis, pauli, C64, CMat2};
use crate::qchannel::{presets, TMatrix};
use crate::switch::{default_control, effective_channel_brute, ControlledOp};

/// `[[e^{iφ₁}cosθ, e^{iφ₂}sinθ], [−e^{−iφ₂}sinθ, e^{−iφ₁}cosθ]]`.
pub fn coherence_unitary(theta: f64, phi1: f64, phi2: f64) -> CMat2 {
    let e = |phi: f64| C64::from_polar(1.0, phi);
    CMat2::new(
        e(phi1) * theta.cos(),
        e(phi2) * theta.sin(),
        -e(-phi2) * theta.sin(),
        e(-phi1) * theta.cos(),
    )
}

/// Effective T-matrix computed from the full switched joint state.
pub fn coherence_effective_channel(
    lambda: f64,
    t: f64,
    theta: f64,
    phi1: f64,
    phi2: f64,
) -> Result<TMatrix> {
    let ch = presets::coherence_breaking_channel(lambda, t)?;
    let op = ControlledOp::controlled_unitary(coherence_unitary(theta, phi1, phi2))?;
    Ok(*effective_channel_brute(ch.kraus(), &op, &default_control(), None)?.tmatrix())
}

/// Effective T-matrix when the control is discarded without any correction.
pub fn coherence_trace_out(lambda: f64, t: f64) -> Result<TMatrix> {
    let ch = presets::coherence_breaking_channel(lambda, t)?;
    Ok(*effective_channel_brute(ch.kraus(), &ControlledOp::trace_out(), &default_control(), None)?
        .tmatrix())
}

/// `t₁ = t(1+λ)(3 + cos 2θ)/4`, the z-translation of the effective channel.
pub fn t1_closed(lambda: f64, t: f64, theta: f64) -> f64 {
    t * (1.0 + lambda) * (3.0 + (2.0 * theta).cos()) / 4.0
}

/// Closed-form effective channel.
///
/// With ω = |+⟩⟨+| the effective map is `C₊ + U C₋ U†`. Both branches split
/// into a population transfer part and a multiple of `ρ` (resp. `σ_zρσ_z`), which
/// gives `T = T(D₊) + A/2·I + R_U T(D₋) + A/2·R_{Uσ_z}`, where `R_V` is the
/// Bloch rotation of `V` and `A = ((1−λ)² − t²)/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceEffectiveForm {
    pub lambda: f64,
    pub t: f64,
    pub theta: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub t1: f64,
    pub t2: C64,
    pub eta: [f64; 3],
    pub gamma: [C64; 3],
    tmatrix: TMatrix,
}

impl CoherenceEffectiveForm {
    pub fn new(lambda: f64, t: f64, theta: f64, phi1: f64, phi2: f64) -> Result<Self> {
        // validates 1 ± λ ± t ≥ 0
        presets::coherence_breaking_kraus(lambda, t)?;
        let [w1, w2, w3, w4] = presets::coherence_breaking_weights(lambda, t);
        let half = 0.5 * (1.0 + lambda);
        let a = w1 * w3;
        let d_plus = population_map(w4 * w4, half * w3, half * w1, w2 * w2);
        let d_minus = population_map(0.0, half * w3, half * w1, 0.0);
        let u = coherence_unitary(theta, phi1, phi2);
        let m = d_plus
            + Matrix4::identity() * (0.5 * a)
            + rotation(&u) * d_minus
            + rotation(&(u * pauli(3))) * (0.5 * a);
        let tmatrix = TMatrix::new(m)?;
        let e = |i, j| m[(i, j)];
        Ok(Self {
            lambda,
            t,
            theta,
            phi1,
            phi2,
            t1: e(3, 0),
            t2: c(e(1, 0), e(2, 0)),
            eta: [e(3, 1), e(3, 2), e(3, 3)],
            gamma: [c(e(1, 1), e(2, 1)), c(e(2, 2), -e(1, 2)), c(e(1, 3), e(2, 3))],
            tmatrix,
        })
    }

    pub fn tmatrix(&self) -> &TMatrix {
        &self.tmatrix
    }
}

/// T-matrix of `ρ ↦ (αρ₀₀ + βρ₁₁)|0⟩⟨0| + (γρ₀₀ + δρ₁₁)|1⟩⟨1|`.
fn population_map(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = 0.5 * (alpha + beta + gamma + delta);
    m[(0, 3)] = 0.5 * (alpha + gamma - beta - delta);
    m[(3, 0)] = 0.5 * (alpha - gamma + beta - delta);
    m[(3, 3)] = 0.5 * (alpha - gamma - beta + delta);
    m
}

/// `diag(1, R_V)` with `R_ij = ½ Tr[σ_i V σ_j V†]`.
fn rotation(v: &CMat2) -> Matrix4<f64> {
    let s = paulis();
    Matrix4::from_fn(|i, j| 0.5 * (s[i] * v * s[j] * v.adjoint()).trace().re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn worked_point_from_joint_state() {
        let t = coherence_effective_channel(0.5, 0.1, 0.0, FRAC_PI_2, 0.0).unwrap();
        assert!((t.entry(1, 1) - 0.06).abs() < 1e-12);
        assert!((t.entry(2, 2) - 0.06).abs() < 1e-12);
        assert!((t.entry(3, 3) - 0.25).abs() < 1e-12);
        assert!((t.entry(3, 0) - 0.15).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_joint_state() {
        let cases = [
            (0.5, 0.1, 0.0, FRAC_PI_2, 0.0),
            (0.2, -0.3, 0.4, 0.7, -1.1),
            (-0.6, 0.3, 1.2, 2.0, 0.5),
            (0.0, 0.0, 0.3, 0.1, 0.2),
        ];
        for (l, t, th, p1, p2) in cases {
            let brute = coherence_effective_channel(l, t, th, p1, p2).unwrap();
            let form = CoherenceEffectiveForm::new(l, t, th, p1, p2).unwrap();
            assert!(form.tmatrix().max_abs_diff(&brute) < 1e-12, "{l} {t} {th}");
            assert!((form.t1 - t1_closed(l, t, th)).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_out_keeps_coherence_breaking_form() {
        let t = coherence_trace_out(0.4, 0.2).unwrap();
        let expected = TMatrix::coherence_breaking(0.2 * 1.4, 0.16);
        assert!(t.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn out_of_domain_parameters() {
        assert!(CoherenceEffectiveForm::new(0.9, 0.2, 0.0, 0.0, 0.0).is_err());
        assert!(coherence_effective_channel(-0.9, 0.2, 0.0, 0.0, 0.0).is_err());
    }
}
