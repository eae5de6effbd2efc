//! (2,2) quantum random access codes sent through a channel.
//!
//! Success is averaged uniformly over the four strings and the two queried bits:
//! `P = 1/8 Σ_x Tr[Λ(ρ_x)(M₁(x₁) + M₂(x₂))]`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues2, hermiticity_defect, max_abs_diff, pauli, r, CMat2};
use crate::qchannel::{bloch_to_density, Channel, DensityMatrix};

pub const POVM_TOL: f64 = 1e-10;

/// Two-outcome POVM `{E₀, E₁}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm2 {
    elements: [CMat2; 2],
}

impl Povm2 {
    pub fn new(e0: CMat2, e1: CMat2) -> Result<Self> {
        for e in [&e0, &e1] {
            if hermiticity_defect(e) > POVM_TOL {
                return Err(Error::InvalidPovm("element not Hermitian".into()));
            }
            let lo = hermitian_eigenvalues2(e)[0];
            if lo < -POVM_TOL {
                return Err(Error::InvalidPovm(format!("negative eigenvalue {lo:.3e}")));
            }
        }
        let dev = max_abs_diff(&(e0 + e1), &CMat2::identity());
        if dev > POVM_TOL {
            return Err(Error::InvalidPovm(format!("elements sum to I only within {dev:.3e}")));
        }
        Ok(Self { elements: [e0, e1] })
    }

    /// Projective measurement of `n·σ` with outcome 0 on the `+1` eigenspace.
    pub fn along(n: [f64; 3]) -> Result<Self> {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPovm(format!("axis norm {norm}")));
        }
        let ns = pauli(1) * r(n[0]) + pauli(2) * r(n[1]) + pauli(3) * r(n[2]);
        let id = CMat2::identity();
        Self::new((id + ns) * r(0.5), (id - ns) * r(0.5))
    }

    /// `{E, I − E}` for an effect `0 ≤ E ≤ I`.
    pub fn from_effect(e: CMat2) -> Result<Self> {
        Self::new(e, CMat2::identity() - e)
    }

    pub fn element(&self, outcome: usize) -> &CMat2 {
        &self.elements[outcome]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QracStrategy {
    /// Code states indexed by `2·x₁ + x₂`.
    pub encode: [DensityMatrix; 4],
    pub measurements: [Povm2; 2],
}

impl QracStrategy {
    pub fn new(encode: [DensityMatrix; 4], measurements: [Povm2; 2]) -> Result<Self> {
        for rho in &encode {
            rho.as_qubit()?;
        }
        Ok(Self { encode, measurements })
    }

    /// Code states `((−1)^{x₁}, (−1)^{x₂}, 0)/√2`, measurements of σₓ and σ_y.
    pub fn standard() -> Self {
        Self::in_plane(0, 1, [1.0, 1.0])
    }

    /// Standard strategy rotated into the plane of Bloch axes `i` and `j`, with
    /// the response to each bit optionally flipped by `signs`.
    pub fn in_plane(i: usize, j: usize, signs: [f64; 2]) -> Self {
        assert!(i < 3 && j < 3 && i != j, "two distinct Bloch axes");
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let encode = [0usize, 1, 2, 3].map(|x| {
            let (x1, x2) = (x >> 1, x & 1);
            let mut a = [0.0; 3];
            a[i] = s * if x1 == 0 { 1.0 } else { -1.0 };
            a[j] = s * if x2 == 0 { 1.0 } else { -1.0 };
            bloch_to_density(a).expect("unit vector")
        });
        let axis = |k: usize, sign: f64| {
            let mut n = [0.0; 3];
            n[k] = sign;
            Povm2::along(n).expect("unit axis")
        };
        Self {
            encode,
            measurements: [axis(i, signs[0]), axis(j, signs[1])],
        }
    }

    /// The twelve planar strategies used as incompatibility witnesses.
    pub fn witness_family() -> Vec<Self> {
        let mut out = Vec::with_capacity(12);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    out.push(Self::in_plane(i, j, [s1, s2]));
                }
            }
        }
        out
    }
}

pub fn qrac_success(strategy: &QracStrategy, ch: &Channel) -> Result<f64> {
    let mut total = 0.0;
    for x in 0..4 {
        let (x1, x2) = (x >> 1, x & 1);
        let out = ch.apply(&strategy.encode[x])?;
        let m = out.as_qubit()?;
        let effect = strategy.measurements[0].element(x1) + strategy.measurements[1].element(x2);
        total += (m * effect).trace().re;
    }
    Ok(total / 8.0)
}

/// Best success over [`QracStrategy::witness_family`].
pub fn best_witness_success(ch: &Channel) -> Result<f64> {
    QracStrategy::witness_family()
        .iter()
        .map(|s| qrac_success(s, ch))
        .try_fold(f64::NEG_INFINITY, |acc, p| p.map(|p| acc.max(p)))
}

/// `½(1 + 1/d)`.
pub fn qrac_classical_bound(d: u32) -> f64 {
    0.5 * (1.0 + 1.0 / d as f64)
}

/// `½(1 + 1/√d)`.
pub fn qrac_quantum_bound(d: u32) -> f64 {
    0.5 * (1.0 + 1.0 / (d as f64).sqrt())
}

/// Standard-strategy success through `diag(1, (1+λ)²/4, (1+λ)²/4, λ²)`:
/// `½[1 + (1+λ)²/(4√2)]`.
pub fn corrected_phi_success(lambda3: f64) -> f64 {
    0.5 * (1.0 + (1.0 + lambda3).powi(2) / (4.0 * std::f64::consts::SQRT_2))
}

/// λ₃ at which [`corrected_phi_success`] reaches the classical bound: `2^{3/4} − 1`.
pub fn corrected_phi_threshold() -> Result<f64> {
    super::bisect(
        |l| corrected_phi_success(l) - qrac_classical_bound(2),
        0.0,
        1.0,
        super::ROOT_TOL,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchannel::{presets, TMatrix};

    #[test]
    fn identity_reaches_quantum_bound() {
        let p = qrac_success(&QracStrategy::standard(), &presets::identity()).unwrap();
        assert!((p - qrac_quantum_bound(2)).abs() < 1e-14);
        assert!((p - 0.853_553_390_593_273_8).abs() < 1e-12);
    }

    #[test]
    fn bounds() {
        assert_eq!(qrac_classical_bound(2), 0.75);
        assert_eq!(qrac_classical_bound(4), 0.625);
    }

    #[test]
    fn corrected_channel_matches_closed_form() {
        for l in [0.0, 0.3, 0.9] {
            let a = (1.0 + l) * (1.0 + l) / 4.0;
            let ch = Channel::from_tmatrix(&TMatrix::diagonal([a, a, l * l])).unwrap();
            let p = qrac_success(&QracStrategy::standard(), &ch).unwrap();
            assert!((p - corrected_phi_success(l)).abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_is_two_to_three_quarters_minus_one() {
        let root = corrected_phi_threshold().unwrap();
        assert!((root - (2f64.powf(0.75) - 1.0)).abs() < 1e-9);
        assert!((corrected_phi_success(2f64.powf(0.75) - 1.0) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn witness_family_handles_negative_lambdas() {
        let ch = Channel::from_tmatrix(&TMatrix::diagonal([-0.9, -0.9, 0.8])).unwrap();
        let standard = qrac_success(&QracStrategy::standard(), &ch).unwrap();
        let best = best_witness_success(&ch).unwrap();
        assert!(standard < 0.5);
        assert!(best > 0.75);
    }

    #[test]
    fn invalid_povm_rejected() {
        assert!(Povm2::new(CMat2::identity(), CMat2::identity()).is_err());
        assert!(Povm2::along([1.0, 1.0, 0.0]).is_err());
        let e = CMat2::new(r(1.2), r(0.0), r(0.0), r(0.5));
        assert!(Povm2::from_effect(e).is_err());
    }
}
