//! Named channels used throughout the switch analysis.

use super::kraus::Channel;
use super::pauli::PauliChannel;
use crate::error::{Error, Result};
use crate::linalg::{pauli, r, unit, CMat2};

pub fn identity() -> Channel {
    Channel::from_kraus(vec![CMat2::identity()]).expect("identity is a channel")
}

/// `tρ + (1−t) I/2`, completely positive for `−1/3 ≤ t ≤ 1`.
pub fn depolarizing(t: f64) -> Result<Channel> {
    if !(-1.0 / 3.0 - 1e-12..=1.0 + 1e-12).contains(&t) {
        return Err(Error::InvalidNoiseParameter(t));
    }
    Ok(PauliChannel::from_lambdas([t, t, t])?.channel())
}

/// `(σₓρσₓ + σ_yρσ_y)/2`, λ = (0, 0, −1).
pub fn perfect() -> Channel {
    PauliChannel::new([0.0, 0.5, 0.5, 0.0])
        .expect("valid weights")
        .channel()
}

/// `(ρ + σ_zρσ_z)/2`, λ = (0, 0, 1).
pub fn obs1() -> Channel {
    PauliChannel::new([0.5, 0.0, 0.0, 0.5])
        .expect("valid weights")
        .channel()
}

/// Pauli channel with weights `((1−λ₃), (1+λ₃), (1+λ₃), (1−λ₃))/4`, λ = (0, 0, −λ₃).
pub fn phi_pauli(lambda3: f64) -> Result<PauliChannel> {
    if !(-1.0..=1.0).contains(&lambda3) {
        return Err(Error::InvalidParameter(format!(
            "phi parameter {lambda3} outside [-1, 1]"
        )));
    }
    PauliChannel::from_lambdas([0.0, 0.0, -lambda3])
}

pub fn phi(lambda3: f64) -> Result<Channel> {
    Ok(phi_pauli(lambda3)?.channel())
}

/// `σ_μ ρ σ_μ`.
pub fn pauli_conjugation(mu: usize) -> Channel {
    Channel::from_kraus(vec![pauli(mu)]).expect("Pauli conjugation is unitary")
}

pub fn unitary(u: CMat2) -> Result<Channel> {
    Channel::from_kraus(vec![u])
}

/// Kraus weights `(1−λ−t, 1+λ−t, 1−λ+t, 1+λ+t)/2` of the coherence-breaking family.
pub fn coherence_breaking_weights(lambda: f64, t: f64) -> [f64; 4] {
    [
        0.5 * (1.0 - lambda - t),
        0.5 * (1.0 + lambda - t),
        0.5 * (1.0 - lambda + t),
        0.5 * (1.0 + lambda + t),
    ]
}

/// Channel with T-matrix rows `(1,0,0,0), 0, 0, (t,0,0,λ)`, built from
/// `K₁ ∝ |1⟩⟨0|`, `K₂ ∝ |1⟩⟨1|`, `K₃ ∝ |0⟩⟨1|`, `K₄ ∝ |0⟩⟨0|`.
pub fn coherence_breaking_kraus(lambda: f64, t: f64) -> Result<Vec<CMat2>> {
    let w = coherence_breaking_weights(lambda, t);
    if let Some(&bad) = w.iter().find(|&&x| x < -1e-12) {
        return Err(Error::NotCompletelyPositive { min_eigenvalue: bad });
    }
    let shapes = [unit(1, 0), unit(1, 1), unit(0, 1), unit(0, 0)];
    Ok(shapes
        .iter()
        .zip(w)
        .map(|(e, wk)| e * r(wk.max(0.0).sqrt()))
        .collect())
}

pub fn coherence_breaking_channel(lambda: f64, t: f64) -> Result<Channel> {
    Channel::from_kraus(coherence_breaking_kraus(lambda, t)?)
}

/// Parses `"perfect"`, `"obs1"`, `"identity"`, `"phi:<λ₃>"` or `"depolarizing:<t>"`.
pub fn by_name(name: &str) -> Result<Channel> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let number = |a: Option<&str>| -> Result<f64> {
        a.ok_or_else(|| Error::InvalidParameter(format!("preset {head} needs a parameter")))?
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::InvalidParameter(format!("preset {head}: {e}")))
    };
    match head {
        "identity" => Ok(identity()),
        "perfect" => Ok(perfect()),
        "obs1" => Ok(obs1()),
        "phi" => phi(number(arg)?),
        "depolarizing" => depolarizing(number(arg)?),
        other => Err(Error::InvalidParameter(format!("unknown preset {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchannel::state::{bloch_to_density, density_to_bloch, DensityMatrix};
    use crate::qchannel::tmatrix::TMatrix;

    #[test]
    fn depolarizing_limits() {
        let rho = bloch_to_density([0.3, -0.2, 0.5]).unwrap();
        let out = depolarizing(1.0).unwrap().apply(&rho).unwrap();
        assert!(crate::linalg::max_abs_diff(out.as_qubit().unwrap(), rho.as_qubit().unwrap()) < 1e-14);
        let pole = bloch_to_density([0.0, 0.0, 1.0]).unwrap();
        let mixed = depolarizing(0.0).unwrap().apply(&pole).unwrap();
        assert!(
            crate::linalg::max_abs_diff(
                mixed.as_qubit().unwrap(),
                DensityMatrix::maximally_mixed_qubit().as_qubit().unwrap()
            ) < 1e-14
        );
        assert!(depolarizing(-0.5).is_err());
    }

    #[test]
    fn obs1_dephases_plus_state() {
        let plus = bloch_to_density([1.0, 0.0, 0.0]).unwrap();
        let out = obs1().apply(&plus).unwrap();
        let a = density_to_bloch(&out).unwrap();
        assert!(a.iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn phi_has_z_only_contraction() {
        let ch = phi(0.6).unwrap();
        assert!(ch.tmatrix().max_abs_diff(&TMatrix::diagonal([0.0, 0.0, -0.6])) < 1e-14);
    }

    #[test]
    fn coherence_breaking_tmatrix() {
        let ch = coherence_breaking_channel(0.5, 0.1).unwrap();
        assert!(ch.tmatrix().max_abs_diff(&TMatrix::coherence_breaking(0.1, 0.5)) < 1e-14);
        assert!(matches!(
            coherence_breaking_channel(0.8, 0.5),
            Err(Error::NotCompletelyPositive { .. })
        ));
    }

    #[test]
    fn names_parse() {
        assert!(by_name("phi:0.5").is_ok());
        assert!(by_name("depolarizing:0.2").is_ok());
        assert!(by_name("phi").is_err());
        assert!(by_name("bogus").is_err());
    }
}
