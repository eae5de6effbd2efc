use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const HISTOGRAM_WIDTH: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceStats {
    pub count: u64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Counts in bins `[k·w, (k+1)·w)` with `w = HISTOGRAM_WIDTH`, starting at 0.
    pub histogram: Vec<u64>,
}

pub fn distance_stats(distances: &[f64]) -> Result<DistanceStats> {
    if distances.is_empty() {
        return Err(Error::EmptyInput);
    }
    let min = distances.iter().copied().fold(f64::INFINITY, f64::min);
    let max = distances.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = distances.iter().sum::<f64>() / distances.len() as f64;
    let bins = (max / HISTOGRAM_WIDTH).floor() as usize + 1;
    let mut histogram = vec![0u64; bins];
    for d in distances {
        let k = ((d / HISTOGRAM_WIDTH).floor() as usize).min(bins - 1);
        histogram[k] += 1;
    }
    Ok(DistanceStats {
        count: distances.len() as u64,
        mean,
        min,
        max,
        histogram,
    })
}

pub fn euclidean(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}
