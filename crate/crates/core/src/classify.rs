//! Channel classes and the switch-usefulness predicates built on them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qchannel::{Channel, ChoiMatrix, DensityMatrix, KrausSet, PauliChannel, TMatrix};
use crate::switch::{branch_maps, pauli_branches, PauliBranch};
use crate::tasks::{qrac, steering};

/// Tolerance on the sign of the smallest partial-transpose eigenvalue.
pub const PPT_TOL: f64 = 1e-9;
/// Octahedron margin up to which a Pauli channel counts as entanglement breaking.
pub const MARGIN_TOL: f64 = 1e-9;
pub const COHERENCE_TOL: f64 = 1e-10;
/// Choi trace below which a CP map is the zero map.
pub const ZERO_MAP_TOL: f64 = 1e-12;

/// PPT verdict on a (possibly unnormalised) Choi matrix.
pub fn choi_is_entanglement_breaking(choi: &ChoiMatrix) -> Result<bool> {
    let trace = choi.trace();
    if trace <= ZERO_MAP_TOL {
        return Ok(true);
    }
    let normalised = choi.scaled(1.0 / trace);
    let lo = normalised.min_eigenvalue();
    if lo < -crate::qchannel::choi::CHOI_PSD_TOL {
        return Err(Error::NotCompletelyPositive { min_eigenvalue: lo });
    }
    Ok(normalised.min_partial_transpose_eigenvalue() >= -PPT_TOL)
}

pub fn is_entanglement_breaking(map: &KrausSet) -> Result<bool> {
    choi_is_entanglement_breaking(&map.choi())
}

/// `Σ|λᵢ| − 1`; nonpositive inside the entanglement-breaking octahedron.
pub fn pauli_ebc_margin(lambdas: [f64; 3]) -> f64 {
    lambdas.iter().map(|l| l.abs()).sum::<f64>() - 1.0
}

pub fn pauli_is_entanglement_breaking(lambdas: [f64; 3]) -> bool {
    pauli_ebc_margin(lambdas) <= MARGIN_TOL
}

/// Depolarizing parameter below which `Γ_d^t` is n-incompatibility breaking: `(n+d)/(n(1+d))`.
pub fn depolarizing_ibc_threshold(n: u32, d: u32) -> f64 {
    let (n, d) = (n as f64, d as f64);
    (n + d) / (n * (1.0 + d))
}

/// Bound below which `Γ_d^t` breaks incompatibility for every n:
/// `(3d−1)(d−1)^{d−1} / (d^d (d+1))`.
pub fn depolarizing_all_n_ibc_bound(d: u32) -> f64 {
    let df = d as f64;
    (3.0 * df - 1.0) * (df - 1.0).powi(d as i32 - 1) / (df.powi(d as i32) * (df + 1.0))
}

/// True when only `(0,0)`, `(3,0)` and `(3,3)` are nonzero.
pub fn is_coherence_breaking(t: &TMatrix) -> bool {
    (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&ij| !matches!(ij, (0, 0) | (3, 0) | (3, 3)))
        .all(|(i, j)| t.entry(i, j).abs() <= COHERENCE_TOL)
}

/// Whether a CP map only ever outputs operators diagonal in the σ_z basis.
pub fn map_is_coherence_breaking(map: &KrausSet) -> bool {
    let m = map.affine_matrix();
    (1..3).all(|i| (0..4).all(|j| m[(i, j)].abs() <= COHERENCE_TOL))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IbcVerdict {
    Breaking,
    NotBreaking,
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UselessPredicate {
    #[default]
    EntanglementBreaking,
    CoherenceBreaking,
}

impl UselessPredicate {
    /// The zero map is useless under every predicate.
    pub fn is_useless(&self, map: &KrausSet) -> Result<bool> {
        if map.is_zero(ZERO_MAP_TOL) {
            return Ok(true);
        }
        match self {
            Self::EntanglementBreaking => is_entanglement_breaking(map),
            Self::CoherenceBreaking => Ok(map_is_coherence_breaking(map)),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "eb" | "entanglement_breaking" => Ok(Self::EntanglementBreaking),
            "cb" | "coherence_breaking" => Ok(Self::CoherenceBreaking),
            other => Err(Error::InvalidParameter(format!("unknown predicate {other}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::EntanglementBreaking => "entanglement_breaking",
            Self::CoherenceBreaking => "coherence_breaking",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelClassification {
    pub is_ebc: bool,
    /// Present for Pauli (diagonal, unital) channels.
    pub pauli_octahedron_margin: Option<f64>,
    pub ibc_flags: BTreeMap<u32, IbcVerdict>,
    pub is_coherence_breaking: bool,
}

/// Orders for which incompatibility-breaking verdicts are reported.
pub const IBC_ORDERS: [u32; 3] = [2, 3, 4];

fn diagonal_lambdas(t: &TMatrix, tol: f64) -> Option<[f64; 3]> {
    let unital = t.is_unital(tol);
    let b = t.block();
    let off = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .all(|(i, j)| b[(i, j)].abs() <= tol);
    (unital && off).then(|| [b[(0, 0)], b[(1, 1)], b[(2, 2)]])
}

pub fn classify_channel(ch: &Channel) -> Result<ChannelClassification> {
    let lambdas = diagonal_lambdas(ch.tmatrix(), 1e-12);
    let is_ebc = choi_is_entanglement_breaking(ch.choi())?;
    let mut flags = BTreeMap::new();
    let depolarizing_t = lambdas
        .filter(|l| (l[0] - l[1]).abs() <= 1e-12 && (l[1] - l[2]).abs() <= 1e-12)
        .map(|l| l[0]);
    let witnessed = !is_ebc && witness_not_2_ibc(ch)?;
    for n in IBC_ORDERS {
        let below_threshold = depolarizing_t.is_some_and(|t| {
            t <= depolarizing_ibc_threshold(n, 2) + 1e-12 || t <= depolarizing_all_n_ibc_bound(2) + 1e-12
        });
        let verdict = if is_ebc || below_threshold {
            IbcVerdict::Breaking
        } else if witnessed {
            // a pair of incompatible observables survives, so no larger set is compatible
            IbcVerdict::NotBreaking
        } else {
            IbcVerdict::Unknown
        };
        flags.insert(n, verdict);
    }
    Ok(ChannelClassification {
        is_ebc,
        pauli_octahedron_margin: lambdas.map(pauli_ebc_margin),
        ibc_flags: flags,
        is_coherence_breaking: is_coherence_breaking(ch.tmatrix()),
    })
}

/// QRAC success above 3/4 or steering `F > 1` on `(Λ⊗id)|Φ⁺⟩`; either rules out 2-IBC.
pub fn witness_not_2_ibc(ch: &Channel) -> Result<bool> {
    if qrac::best_witness_success(ch)? > qrac::qrac_classical_bound(2) + 1e-12 {
        return Ok(true);
    }
    let f = steering::steering_f(&steering::steered_state(ch, &DensityMatrix::phi_plus())?)?;
    Ok(f > 1.0 + 1e-12)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchUsefulness {
    pub useless_plain: bool,
    pub useful_under_plus: bool,
    pub useful_under_minus: bool,
    pub completely_useless: bool,
}

impl SwitchUsefulness {
    pub fn from_flags(useless_plain: bool, useful_under_plus: bool, useful_under_minus: bool) -> Self {
        Self {
            useless_plain,
            useful_under_plus,
            useful_under_minus,
            completely_useless: useless_plain && !useful_under_plus && !useful_under_minus,
        }
    }
}

pub fn switch_usefulness(ch: &Channel, pred: UselessPredicate) -> Result<SwitchUsefulness> {
    let (plus, minus) = branch_maps(ch.kraus());
    Ok(SwitchUsefulness::from_flags(
        pred.is_useless(ch.kraus())?,
        !pred.is_useless(&plus)?,
        !pred.is_useless(&minus)?,
    ))
}

/// Entanglement-breaking usefulness of a Pauli channel from the closed-form branches.
pub fn pauli_switch_usefulness(p: &PauliChannel) -> SwitchUsefulness {
    let br = pauli_branches(p);
    let minus_useful = match br.c_minus {
        PauliBranch::Zero => false,
        PauliBranch::Channel(m) => !pauli_is_entanglement_breaking(m.lambdas()),
    };
    SwitchUsefulness::from_flags(
        pauli_is_entanglement_breaking(p.lambdas()),
        !pauli_is_entanglement_breaking(br.c_plus.lambdas()),
        minus_useful,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchannel::presets;

    #[test]
    fn entanglement_breaking_examples() {
        assert!(!is_entanglement_breaking(presets::identity().kraus()).unwrap());
        assert!(is_entanglement_breaking(presets::depolarizing(0.3).unwrap().kraus()).unwrap());
        assert!(!is_entanglement_breaking(presets::depolarizing(0.4).unwrap().kraus()).unwrap());
        assert!(is_entanglement_breaking(presets::depolarizing(1.0 / 3.0).unwrap().kraus()).unwrap());
        for l in [-1.0, -0.4, 0.0, 0.5, 1.0] {
            assert!(is_entanglement_breaking(presets::phi(l).unwrap().kraus()).unwrap());
        }
        assert!(is_entanglement_breaking(&KrausSet::zero()).unwrap());
    }

    #[test]
    fn margins() {
        assert_eq!(pauli_ebc_margin([0.0, 0.0, 0.0]), -1.0);
        assert_eq!(pauli_ebc_margin([1.0, 1.0, 1.0]), 2.0);
    }

    #[test]
    fn ibc_thresholds() {
        assert!((depolarizing_ibc_threshold(2, 2) - 2.0 / 3.0).abs() < 1e-15);
        assert!((depolarizing_ibc_threshold(3, 2) - 5.0 / 9.0).abs() < 1e-15);
        assert!((depolarizing_all_n_ibc_bound(2) - 5.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn coherence_breaking_examples() {
        assert!(is_coherence_breaking(&TMatrix::coherence_breaking(0.1, 0.5)));
        assert!(!is_coherence_breaking(&TMatrix::identity()));
    }

    #[test]
    fn usefulness_examples() {
        let perfect = switch_usefulness(&presets::perfect(), UselessPredicate::EntanglementBreaking).unwrap();
        assert!(perfect.useless_plain && perfect.useful_under_plus && perfect.useful_under_minus);
        assert!(!perfect.completely_useless);
        let obs1 = switch_usefulness(&presets::obs1(), UselessPredicate::EntanglementBreaking).unwrap();
        assert!(obs1.completely_useless);
        let full = switch_usefulness(&presets::depolarizing(0.0).unwrap(), UselessPredicate::EntanglementBreaking)
            .unwrap();
        assert!(full.completely_useless);
    }

    #[test]
    fn pauli_fast_path_agrees() {
        for l in [[0.0, 0.0, -1.0], [0.0, 0.0, 1.0], [0.2, -0.3, 0.4], [-0.5, 0.1, -0.3]] {
            let p = PauliChannel::from_lambdas(l).unwrap();
            let fast = pauli_switch_usefulness(&p);
            let slow = switch_usefulness(&p.channel(), UselessPredicate::EntanglementBreaking).unwrap();
            assert_eq!(fast, slow, "{l:?}");
        }
    }

    #[test]
    fn classification_flags() {
        let id = classify_channel(&presets::identity()).unwrap();
        assert!(!id.is_ebc);
        assert_eq!(id.pauli_octahedron_margin, Some(2.0));
        assert_eq!(id.ibc_flags[&2], IbcVerdict::NotBreaking);
        let dep = classify_channel(&presets::depolarizing(0.6).unwrap()).unwrap();
        assert!(!dep.is_ebc);
        assert_eq!(dep.ibc_flags[&2], IbcVerdict::Breaking);
        assert_eq!(dep.ibc_flags[&4], IbcVerdict::Unknown);
        let ebc = classify_channel(&presets::perfect()).unwrap();
        assert!(ebc.ibc_flags.values().all(|v| *v == IbcVerdict::Breaking));
        let cb = classify_channel(&presets::coherence_breaking_channel(0.5, 0.1).unwrap()).unwrap();
        assert!(cb.is_coherence_breaking);
        assert_eq!(cb.pauli_octahedron_margin, None);
    }

    #[test]
    fn coherence_predicate_on_switch_branches() {
        let ch = presets::coherence_breaking_channel(0.5, 0.1).unwrap();
        let u = switch_usefulness(&ch, UselessPredicate::CoherenceBreaking).unwrap();
        // each branch keeps a multiple of ρ (or σ_zρσ_z); only their sum is diagonal
        assert!(u.useless_plain && u.useful_under_plus && u.useful_under_minus);
        let (p, m) = branch_maps(ch.kraus());
        assert!(map_is_coherence_breaking(&KrausSet::sum([&p, &m])));
    }
}
