//! JSON form of channels: `{"kind": "pauli" | "tmatrix" | "kraus", ...}`.
//!
//! Matrices are row-major. Complex matrices carry separate `re` and `im` arrays.

use serde::{Deserialize, Serialize};

use super::kraus::Channel;
use super::pauli::PauliChannel;
use super::tmatrix::TMatrix;
use crate::error::{Error, Result};
use crate::linalg::{c, CMat2};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexMatrix {
    pub fn from_mat2(m: &CMat2) -> Self {
        let mut re = Vec::with_capacity(4);
        let mut im = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                re.push(m[(i, j)].re);
                im.push(m[(i, j)].im);
            }
        }
        Self { re, im }
    }

    pub fn to_mat2(&self) -> Result<CMat2> {
        if self.re.len() != 4 || self.im.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: self.re.len().max(self.im.len()),
            });
        }
        Ok(CMat2::from_fn(|i, j| c(self.re[2 * i + j], self.im[2 * i + j])))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelSpec {
    Pauli { lambdas: [f64; 3] },
    Tmatrix { rows: Vec<f64> },
    Kraus { ops: Vec<ComplexMatrix> },
}

impl ChannelSpec {
    pub fn from_pauli(p: &PauliChannel) -> Self {
        Self::Pauli { lambdas: p.lambdas() }
    }

    pub fn from_tmatrix(t: &TMatrix) -> Self {
        Self::Tmatrix { rows: t.to_row_major() }
    }

    pub fn from_channel(ch: &Channel) -> Self {
        Self::Kraus {
            ops: ch.kraus().ops().iter().map(ComplexMatrix::from_mat2).collect(),
        }
    }

    pub fn to_channel(&self) -> Result<Channel> {
        match self {
            Self::Pauli { lambdas } => Ok(PauliChannel::from_lambdas(*lambdas)?.channel()),
            Self::Tmatrix { rows } => Channel::from_tmatrix(&TMatrix::from_row_major(rows)?),
            Self::Kraus { ops } => {
                Channel::from_kraus(ops.iter().map(|m| m.to_mat2()).collect::<Result<_>>()?)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("channel JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchannel::presets;

    #[test]
    fn pauli_json_shape() {
        let spec = ChannelSpec::Pauli {
            lambdas: [0.0, 0.0, -1.0],
        };
        assert_eq!(spec.to_json(), r#"{"kind":"pauli","lambdas":[0.0,0.0,-1.0]}"#);
        let ch = ChannelSpec::from_json(&spec.to_json()).unwrap().to_channel().unwrap();
        assert!(ch.tmatrix().max_abs_diff(presets::perfect().tmatrix()) < 1e-14);
    }

    #[test]
    fn kraus_round_trip() {
        let ch = presets::coherence_breaking_channel(0.3, 0.2).unwrap();
        let spec = ChannelSpec::from_channel(&ch);
        let back = ChannelSpec::from_json(&spec.to_json()).unwrap().to_channel().unwrap();
        assert!(back.tmatrix().max_abs_diff(ch.tmatrix()) < 1e-14);
    }

    #[test]
    fn tmatrix_round_trip_and_errors() {
        let t = TMatrix::nonunital(0.2, 0.1, 0.3);
        let spec = ChannelSpec::from_tmatrix(&t);
        let back = ChannelSpec::from_json(&spec.to_json()).unwrap().to_channel().unwrap();
        assert!(back.tmatrix().max_abs_diff(&t) < 1e-9);
        assert!(ChannelSpec::from_json(r#"{"kind":"tmatrix","rows":[1,0]}"#)
            .unwrap()
            .to_channel()
            .is_err());
        assert!(ChannelSpec::from_json(r#"{"kind":"nope"}"#).is_err());
    }
}
