use serde::{Deserialize, Serialize};

use super::{chunked, sampling::Family};
use crate::classify::pauli_is_entanglement_breaking;
use crate::error::Result;
use crate::qchannel::PauliChannel;
use crate::random::substream;
use crate::switch::pauli_branches;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MappingRow {
    pub lambda_in: [f64; 3],
    /// `None` for the zero branch.
    pub lambda_out: Option<[f64; 3]>,
    pub useful: bool,
}

/// Image of a Pauli channel under the normalised branch and its usefulness.
pub fn mapping_row(lambda_in: [f64; 3], branch: Branch) -> Result<MappingRow> {
    let br = pauli_branches(&PauliChannel::from_lambdas(lambda_in)?);
    let lambda_out = match branch {
        Branch::Plus => Some(br.c_plus.lambdas()),
        Branch::Minus => br.c_minus.lambdas(),
    };
    Ok(MappingRow {
        lambda_in,
        lambda_out,
        useful: lambda_out.is_some_and(|l| !pauli_is_entanglement_breaking(l)),
    })
}

/// `count` uniform Pauli EBCs with their branch images.
pub fn octahedron_mapping_dataset(seed: u64, count: u64, branch: Branch) -> Result<Vec<MappingRow>> {
    let parts = chunked(count, |k, len| -> Result<Vec<MappingRow>> {
        let mut rng = substream(seed, k);
        (0..len)
            .map(|_| mapping_row(Family::Pauli.sample_ebc(&mut rng), branch))
            .collect()
    });
    let mut out = Vec::with_capacity(count as usize);
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// Distance of `λ` from the plane `λ₁ + λ₂ + λ₃ = −1`.
pub fn minus_plane_offset(l: [f64; 3]) -> f64 {
    (l[0] + l[1] + l[2] + 1.0).abs() / 3f64.sqrt()
}
