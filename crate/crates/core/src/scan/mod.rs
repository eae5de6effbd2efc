//! Monte-Carlo scans over entanglement-breaking channel families.
//!
//! Work is split into fixed-size chunks; chunk `k` draws from
//! [`substream`](crate::random::substream)`(seed, k)`, and chunk results are merged
//! in index order, so the output does not depend on the number of threads.

pub mod census;
pub mod mapping;
pub mod sampling;
pub mod stats;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::UselessPredicate;
use crate::error::{Error, Result};

pub use census::{
    concat_census, conjecture_search, CensusSummary, ConcatRecord, ConjectureReport, InputCategory,
    OutputCategory,
};
pub use mapping::{mapping_row, octahedron_mapping_dataset, Branch, MappingRow};
pub use sampling::{sample_nonunital_ebc, sample_pauli_ebc, Family};
pub use stats::{distance_stats, DistanceStats};

/// Samples per RNG substream.
pub const CHUNK: u64 = 4096;

/// Uniform rejection sampling from the parameter cube `[−1, 1]³`.
pub const SAMPLING_MEASURE: &str = "uniform on [-1,1]^3, rejection to the EB region";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub family: Family,
    pub sample_count: u64,
    pub seed: u64,
    pub useless_predicate: UselessPredicate,
    pub output_path: Option<String>,
}

impl ScanConfig {
    pub fn new(family: Family, sample_count: u64, seed: u64) -> Result<Self> {
        let cfg = Self {
            family,
            sample_count,
            seed,
            useless_predicate: UselessPredicate::EntanglementBreaking,
            output_path: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_count == 0 {
            return Err(Error::InvalidParameter("sample_count must be at least 1".into()));
        }
        if self.useless_predicate != UselessPredicate::EntanglementBreaking {
            return Err(Error::InvalidParameter(
                "scans sample entanglement-breaking channels; other predicates are not supported".into(),
            ));
        }
        Ok(())
    }
}

/// Runs `work(chunk_index, chunk_len)` over all chunks in parallel and returns
/// the results in chunk order.
pub(crate) fn chunked<T: Send>(total: u64, work: impl Fn(u64, u64) -> T + Sync) -> Vec<T> {
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let len = CHUNK.min(total - k * CHUNK);
            work(k, len)
        })
        .collect()
}
