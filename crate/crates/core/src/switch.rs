//! The quantum switch on two uses of the same qubit channel.
//!
//! Joint operators are ordered `system ⊗ control`. With Kraus operators `{A_x}`
//! the switch acts through `S_xy = ½{A_x, A_y} ⊗ I + ½[A_x, A_y] ⊗ σ_z`, so the
//! output splits into `C₊(ρ) ⊗ ω + C₋(ρ) ⊗ σ_z ω σ_z`.

use crate::error::{Error, Result};
use crate::linalg::{
    anticommutator, commutator, contract_second, kron, pauli, ptrace_second, r, CMat2, CMat4,
    Ket2, ONE, ZERO,
};
use crate::qchannel::{Channel, ChoiMatrix, DensityMatrix, KrausSet, PauliChannel};

/// Overlap tolerance for the control measurement basis.
pub const BASIS_TOL: f64 = 1e-12;
/// `1 − q` below this makes the minus branch the zero map.
pub const DEGENERATE_TOL: f64 = 1e-12;

pub fn switch_kraus(ch: &KrausSet) -> Vec<CMat4> {
    let z = pauli(3);
    let id = CMat2::identity();
    let mut out = Vec::with_capacity(ch.len() * ch.len());
    for a in ch.ops() {
        for b in ch.ops() {
            let plus = anticommutator(a, b) * r(0.5);
            let minus = commutator(a, b) * r(0.5);
            out.push(kron(&plus, &id) + kron(&minus, &z));
        }
    }
    out
}

/// `C₊` with Kraus `{½{A_x, A_y}}` and `C₋` with Kraus `{½[A_x, A_y]}`.
pub fn branch_maps(ch: &KrausSet) -> (KrausSet, KrausSet) {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for a in ch.ops() {
        for b in ch.ops() {
            plus.push(anticommutator(a, b) * r(0.5));
            minus.push(commutator(a, b) * r(0.5));
        }
    }
    (KrausSet::new(plus), KrausSet::new(minus))
}

/// Switch output for an arbitrary system operator, from the joint Kraus set.
pub fn joint_operator(kraus: &[CMat4], x: &CMat2, omega: &CMat2) -> CMat4 {
    let input = kron(x, omega);
    kraus.iter().map(|s| s * input * s.adjoint()).sum()
}

/// `|+⟩⟨+|`, the default control state.
pub fn default_control() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DensityMatrix::pure_qubit(&Ket2::new(r(s), r(s))).expect("normalised")
}

#[derive(Clone, Debug)]
pub struct SwitchResult {
    pub joint: DensityMatrix,
    pub branch_plus: KrausSet,
    pub branch_minus: KrausSet,
    pub control_in: DensityMatrix,
}

impl SwitchResult {
    /// `C₊(ρ) ⊗ ω + C₋(ρ) ⊗ σ_z ω σ_z` rebuilt from the branches.
    pub fn recombined(&self, rho: &CMat2) -> Result<CMat4> {
        let omega = self.control_in.as_qubit()?;
        let z = pauli(3);
        Ok(kron(&self.branch_plus.apply_operator(rho), omega)
            + kron(&self.branch_minus.apply_operator(rho), &(z * omega * z)))
    }

    /// System state with the control simply discarded.
    pub fn system_marginal(&self) -> Result<DensityMatrix> {
        DensityMatrix::qubit(ptrace_second(self.joint.as_bipartite()?))
    }
}

pub fn run_switch(ch: &KrausSet, rho: &DensityMatrix, omega: &DensityMatrix) -> Result<SwitchResult> {
    let rho_m = rho.as_qubit()?;
    let omega_m = omega.as_qubit()?;
    let joint = joint_operator(&switch_kraus(ch), rho_m, omega_m);
    let (branch_plus, branch_minus) = branch_maps(ch);
    Ok(SwitchResult {
        joint: DensityMatrix::pair_unchecked(joint),
        branch_plus,
        branch_minus,
        control_in: omega.clone(),
    })
}

/// A normalised branch of a switched Pauli channel, or the zero map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PauliBranch {
    Channel(PauliChannel),
    Zero,
}

impl PauliBranch {
    pub fn is_zero(&self) -> bool {
        matches!(self, PauliBranch::Zero)
    }

    pub fn lambdas(&self) -> Option<[f64; 3]> {
        match self {
            PauliBranch::Channel(p) => Some(p.lambdas()),
            PauliBranch::Zero => None,
        }
    }

    /// Kraus set of `w · branch`.
    pub fn weighted(&self, w: f64) -> KrausSet {
        match self {
            PauliBranch::Channel(p) => KrausSet::new(p.kraus()).scaled(w),
            PauliBranch::Zero => KrausSet::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliBranches {
    pub q: f64,
    pub c_plus: PauliChannel,
    pub c_minus: PauliBranch,
}

impl PauliBranches {
    pub fn degenerate(&self) -> bool {
        self.c_minus.is_zero()
    }

    /// The unnormalised branches `qC̄₊` and `(1−q)C̄₋`.
    pub fn cp_maps(&self) -> (KrausSet, KrausSet) {
        (
            PauliBranch::Channel(self.c_plus).weighted(self.q),
            self.c_minus.weighted(1.0 - self.q),
        )
    }
}

pub fn pauli_branches(ch: &PauliChannel) -> PauliBranches {
    let [p0, p1, p2, p3] = ch.probs();
    let q = 1.0 - 2.0 * (p1 * p2 + p2 * p3 + p3 * p1);
    let sq = p0 * p0 + p1 * p1 + p2 * p2 + p3 * p3;
    let plus = [sq / q, 2.0 * p0 * p1 / q, 2.0 * p0 * p2 / q, 2.0 * p0 * p3 / q];
    let c_plus = PauliChannel::new(renormalised(plus)).expect("plus branch weights are a distribution");
    let c_minus = if 1.0 - q <= DEGENERATE_TOL {
        PauliBranch::Zero
    } else {
        let m = 1.0 - q;
        let minus = [0.0, 2.0 * p2 * p3 / m, 2.0 * p1 * p3 / m, 2.0 * p1 * p2 / m];
        PauliBranch::Channel(
            PauliChannel::new(renormalised(minus)).expect("minus branch weights are a distribution"),
        )
    };
    PauliBranches { q, c_plus, c_minus }
}

fn renormalised(mut p: [f64; 4]) -> [f64; 4] {
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x = x.max(0.0) / s);
    p
}

/// Measure the control in `{|a⟩, |a⊥⟩}` and apply `Λ₁` or `Λ₂` to the system.
#[derive(Clone, Debug)]
pub struct ControlledOp {
    basis: [Ket2; 2],
    channels: [Channel; 2],
}

impl ControlledOp {
    pub fn new(a: Ket2, a_perp: Ket2, first: Channel, second: Channel) -> Result<Self> {
        for v in [&a, &a_perp] {
            let n = v.norm();
            if (n - 1.0).abs() > BASIS_TOL {
                return Err(Error::InvalidParameter(format!("basis vector norm {n}")));
            }
        }
        let overlap = a.dotc(&a_perp).norm();
        if overlap > BASIS_TOL {
            return Err(Error::NonOrthogonalBasis { overlap });
        }
        Ok(Self {
            basis: [a, a_perp],
            channels: [first, second],
        })
    }

    /// `I ⊗ |+⟩⟨+| + U ⊗ |−⟩⟨−|`, which acts on the system like measuring the
    /// control in the `±` basis.
    pub fn controlled_unitary(u: CMat2) -> Result<Self> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(
            Ket2::new(r(s), r(s)),
            Ket2::new(r(s), r(-s)),
            crate::qchannel::presets::identity(),
            crate::qchannel::presets::unitary(u)?,
        )
    }

    /// The correction `I ⊗ |+⟩⟨+| + σ_z ⊗ |−⟩⟨−|`.
    pub fn default_correction() -> Self {
        Self::controlled_unitary(pauli(3)).expect("σ_z is unitary")
    }

    /// Identity on both outcomes in the computational basis: plain trace-out.
    pub fn trace_out() -> Self {
        let id = crate::qchannel::presets::identity();
        Self::new(Ket2::new(ONE, ZERO), Ket2::new(ZERO, ONE), id.clone(), id)
            .expect("computational basis")
    }

    pub fn basis(&self) -> &[Ket2; 2] {
        &self.basis
    }

    pub fn channels(&self) -> &[Channel; 2] {
        &self.channels
    }

    /// Control-traced system operator after the measurement and correction.
    pub fn apply_joint(&self, joint: &CMat4) -> CMat2 {
        (0..2)
            .map(|k| {
                let block = contract_second(joint, &self.basis[k], &self.basis[k]);
                self.channels[k].apply_operator(&block)
            })
            .sum()
    }

    /// `Σ_k Λ_k ∘ (⟨k|ω|k⟩ C₊ + ⟨k|σ_zωσ_z|k⟩ C₋)` as a Kraus set.
    pub fn effective_map(&self, plus: &KrausSet, minus: &KrausSet, omega: &CMat2) -> KrausSet {
        let z = pauli(3);
        let flipped = z * omega * z;
        let parts: Vec<KrausSet> = (0..2)
            .map(|k| {
                let v = &self.basis[k];
                let wp = (v.adjoint() * omega * v)[(0, 0)].re.max(0.0);
                let wm = (v.adjoint() * flipped * v)[(0, 0)].re.max(0.0);
                let inner = KrausSet::sum([&plus.scaled(wp), &minus.scaled(wm)]);
                self.channels[k].kraus().after(&inner)
            })
            .collect();
        KrausSet::sum(parts.iter())
    }
}

/// Effective system channel from the branch decomposition.
pub fn apply_controlled(op: &ControlledOp, sr: &SwitchResult) -> Result<Channel> {
    let omega = sr.control_in.as_qubit()?;
    Channel::from_kraus_set(op.effective_map(&sr.branch_plus, &sr.branch_minus, omega))
}

/// Effective channel through the branch decomposition, without a sample state.
pub fn effective_channel(ch: &KrausSet, op: &ControlledOp, omega: &DensityMatrix) -> Result<Channel> {
    let (plus, minus) = branch_maps(ch);
    Channel::from_kraus_set(op.effective_map(&plus, &minus, omega.as_qubit()?))
}

/// Effective channel computed from the full joint state, with an optional
/// map applied to the control register before the measurement.
pub fn effective_channel_brute(
    ch: &KrausSet,
    op: &ControlledOp,
    omega: &DensityMatrix,
    control_noise: Option<f64>,
) -> Result<Channel> {
    let omega_m = *omega.as_qubit()?;
    let kraus = switch_kraus(ch);
    let map = |x: &CMat2| {
        let mut joint = joint_operator(&kraus, x, &omega_m);
        if let Some(t) = control_noise {
            joint = depolarize_control(&joint, t);
        }
        op.apply_joint(&joint)
    };
    Channel::from_choi(&ChoiMatrix::from_map(map))
}

/// `(id ⊗ Γ_t)` on the control factor: `t M + (1−t) Tr_c[M] ⊗ I/2`.
pub fn depolarize_control(joint: &CMat4, t: f64) -> CMat4 {
    joint * r(t) + kron(&ptrace_second(joint), &(CMat2::identity() * r(0.5))) * r(1.0 - t)
}

pub fn check_noise(t: f64) -> Result<()> {
    if !t.is_finite() || !(-1.0 / 3.0 - 1e-12..=1.0 + 1e-12).contains(&t) {
        return Err(Error::InvalidNoiseParameter(t));
    }
    Ok(())
}

/// Effective channel when the control qubit is depolarised with parameter `t`
/// before the controlled operation.
pub fn noisy_control_effective(
    ch: &KrausSet,
    noise_t: f64,
    op: &ControlledOp,
    omega: &DensityMatrix,
) -> Result<Channel> {
    check_noise(noise_t)?;
    effective_channel_brute(ch, op, omega, Some(noise_t))
}
