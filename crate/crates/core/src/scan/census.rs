//! Concatenation census: pairs of switch-useless EBCs, composed, then re-tested.
//!
//! A pair enters the census when both members are useless under the plus branch,
//! the minus branch, or both; otherwise it is counted as rejected. The composed
//! channel `a ∘ b` is then sorted by the branches under which it became useful.

use serde::{Deserialize, Serialize};

use super::sampling::Family;
use super::stats::{distance_stats, euclidean, DistanceStats};
use super::{chunked, SAMPLING_MEASURE};
use crate::classify::SwitchUsefulness;
use crate::error::{Error, Result};
use crate::random::{substream, RNG_NAME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputCategory {
    /// Both useless under the plus branch only.
    PlusOnly,
    /// Both useless under the minus branch only.
    MinusOnly,
    /// Both useless under both branches (completely useless pair).
    Both,
}

impl InputCategory {
    pub const ALL: [InputCategory; 3] = [Self::PlusOnly, Self::MinusOnly, Self::Both];

    /// Both members must be useless without the switch as well.
    pub fn of(a: &SwitchUsefulness, b: &SwitchUsefulness) -> Option<Self> {
        if !(a.useless_plain && b.useless_plain) {
            return None;
        }
        let plus = !a.useful_under_plus && !b.useful_under_plus;
        let minus = !a.useful_under_minus && !b.useful_under_minus;
        match (plus, minus) {
            (true, true) => Some(Self::Both),
            (true, false) => Some(Self::PlusOnly),
            (false, true) => Some(Self::MinusOnly),
            (false, false) => None,
        }
    }

    pub fn gated_on_plus(&self) -> bool {
        matches!(self, Self::PlusOnly | Self::Both)
    }

    pub fn gated_on_minus(&self) -> bool {
        matches!(self, Self::MinusOnly | Self::Both)
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputCategory {
    PlusOnly,
    MinusOnly,
    Both,
    Neither,
}

impl OutputCategory {
    pub const ALL: [OutputCategory; 4] = [Self::PlusOnly, Self::MinusOnly, Self::Both, Self::Neither];

    pub fn of(f: &SwitchUsefulness) -> Self {
        match (f.useful_under_plus, f.useful_under_minus) {
            (true, true) => Self::Both,
            (true, false) => Self::PlusOnly,
            (false, true) => Self::MinusOnly,
            (false, false) => Self::Neither,
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcatRecord {
    pub family: Family,
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub ab: [f64; 3],
    pub flags_a: SwitchUsefulness,
    pub flags_b: SwitchUsefulness,
    pub flags_ab: SwitchUsefulness,
    pub input: InputCategory,
    pub output: OutputCategory,
    pub distance: f64,
}

/// Evaluates one pair; `None` when the pair fails the uselessness gate.
pub fn classify_pair(family: Family, a: [f64; 3], b: [f64; 3]) -> Result<Option<ConcatRecord>> {
    let flags_a = family.usefulness(a)?;
    let flags_b = family.usefulness(b)?;
    let Some(input) = InputCategory::of(&flags_a, &flags_b) else {
        return Ok(None);
    };
    let ab = family.compose(a, b);
    let flags_ab = family.usefulness(ab)?;
    Ok(Some(ConcatRecord {
        family,
        a,
        b,
        ab,
        flags_a,
        flags_b,
        flags_ab,
        input,
        output: OutputCategory::of(&flags_ab),
        distance: euclidean(a, b),
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TallyRow {
    pub input: InputCategory,
    pub plus_only: u64,
    pub minus_only: u64,
    pub both: u64,
    pub neither: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub family: Family,
    pub seed: u64,
    pub rng: String,
    pub sampling_measure: String,
    pub total_pairs: u64,
    pub rejected: u64,
    pub tallies: Vec<TallyRow>,
    /// Pairs useless under the plus branch that became useful under it.
    pub plus_distances: Option<DistanceStats>,
    /// Pairs useless under the minus branch that became useful under it.
    pub minus_distances: Option<DistanceStats>,
}

impl CensusSummary {
    /// Output-category totals over all admitted pairs, in [`OutputCategory::ALL`] order.
    pub fn output_totals(&self) -> [u64; 4] {
        let mut t = [0; 4];
        for row in &self.tallies {
            t[0] += row.plus_only;
            t[1] += row.minus_only;
            t[2] += row.both;
            t[3] += row.neither;
        }
        t
    }

    pub fn admitted(&self) -> u64 {
        self.output_totals().iter().sum()
    }

    pub fn row(&self, input: InputCategory) -> &TallyRow {
        &self.tallies[input.index()]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusOutput {
    pub summary: CensusSummary,
    /// Admitted pairs whose composition is useful under at least one branch.
    pub records: Vec<ConcatRecord>,
}

#[derive(Default)]
struct ChunkTally {
    rejected: u64,
    table: [[u64; 4]; 3],
    records: Vec<ConcatRecord>,
}

pub fn concat_census(family: Family, count_pairs: u64, seed: u64) -> Result<CensusOutput> {
    if count_pairs == 0 {
        return Err(Error::InvalidParameter("census needs at least one pair".into()));
    }
    let parts = chunked(count_pairs, |k, len| -> Result<ChunkTally> {
        let mut rng = substream(seed, k);
        let mut tally = ChunkTally::default();
        for _ in 0..len {
            let a = family.sample_ebc(&mut rng);
            let b = family.sample_ebc(&mut rng);
            match classify_pair(family, a, b)? {
                None => tally.rejected += 1,
                Some(rec) => {
                    tally.table[rec.input.index()][rec.output.index()] += 1;
                    if rec.output != OutputCategory::Neither {
                        tally.records.push(rec);
                    }
                }
            }
        }
        Ok(tally)
    });
    let mut total = ChunkTally::default();
    for part in parts {
        let part = part?;
        total.rejected += part.rejected;
        for (i, row) in part.table.iter().enumerate() {
            for (j, n) in row.iter().enumerate() {
                total.table[i][j] += n;
            }
        }
        total.records.extend(part.records);
    }
    let branch_distances = |gate: fn(&InputCategory) -> bool, useful: fn(&SwitchUsefulness) -> bool| {
        let d: Vec<f64> = total
            .records
            .iter()
            .filter(|r| gate(&r.input) && useful(&r.flags_ab))
            .map(|r| r.distance)
            .collect();
        distance_stats(&d).ok()
    };
    let plus_distances = branch_distances(InputCategory::gated_on_plus, |f| f.useful_under_plus);
    let minus_distances = branch_distances(InputCategory::gated_on_minus, |f| f.useful_under_minus);
    let tallies = InputCategory::ALL
        .iter()
        .map(|&input| {
            let r = total.table[input.index()];
            TallyRow {
                input,
                plus_only: r[0],
                minus_only: r[1],
                both: r[2],
                neither: r[3],
            }
        })
        .collect();
    Ok(CensusOutput {
        summary: CensusSummary {
            family,
            seed,
            rng: RNG_NAME.into(),
            sampling_measure: SAMPLING_MEASURE.into(),
            total_pairs: count_pairs,
            rejected: total.rejected,
            tallies,
            plus_distances,
            minus_distances,
        },
        records: total.records,
    })
}

/// Number of counterexamples kept verbatim in a [`ConjectureReport`].
pub const KEPT_COUNTEREXAMPLES: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub family: Family,
    pub seed: u64,
    pub pairs_tested: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<ConcatRecord>,
}

/// Draws a completely useless EBC by rejection.
pub fn sample_completely_useless(family: Family, rng: &mut impl rand::Rng) -> Result<([f64; 3], SwitchUsefulness)> {
    loop {
        let p = family.sample_ebc(rng);
        let f = family.usefulness(p)?;
        if f.completely_useless {
            return Ok((p, f));
        }
    }
}

/// Composes pairs of completely useless channels and reports any composition
/// that is useful under either branch.
pub fn conjecture_search(family: Family, pairs: u64, seed: u64) -> Result<ConjectureReport> {
    if pairs == 0 {
        return Err(Error::InvalidParameter("search needs at least one pair".into()));
    }
    let parts = chunked(pairs, |k, len| -> Result<(u64, Vec<ConcatRecord>)> {
        let mut rng = substream(seed, k);
        let mut found = 0;
        let mut kept = Vec::new();
        for _ in 0..len {
            let (a, flags_a) = sample_completely_useless(family, &mut rng)?;
            let (b, flags_b) = sample_completely_useless(family, &mut rng)?;
            let ab = family.compose(a, b);
            let flags_ab = family.usefulness(ab)?;
            if !flags_ab.completely_useless {
                found += 1;
                if kept.len() < KEPT_COUNTEREXAMPLES {
                    kept.push(ConcatRecord {
                        family,
                        a,
                        b,
                        ab,
                        flags_a,
                        flags_b,
                        flags_ab,
                        input: InputCategory::Both,
                        output: OutputCategory::of(&flags_ab),
                        distance: euclidean(a, b),
                    });
                }
            }
        }
        Ok((found, kept))
    });
    let mut count = 0;
    let mut counterexamples = Vec::new();
    for part in parts {
        let (n, kept) = part?;
        count += n;
        for rec in kept {
            if counterexamples.len() < KEPT_COUNTEREXAMPLES {
                counterexamples.push(rec);
            }
        }
    }
    Ok(ConjectureReport {
        family,
        seed,
        pairs_tested: pairs,
        counterexample_count: count,
        counterexamples,
    })
}
