use proptest::prelude::*;

use switchlab::random::substream;
use switchlab::scan::{self, Family};

#[test]
fn pauli_acceptance_rate_is_octahedron_volume_fraction() {
    let mut rng = substream(2024, 0);
    let n = 1_000_000;
    let accepted = (0..n).filter(|_| Family::Pauli.propose(&mut rng).is_some()).count();
    let rate = accepted as f64 / n as f64;
    assert!((rate - 1.0 / 6.0).abs() < 0.01, "rate {rate}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn census_is_deterministic_and_partitions(seed in any::<u64>(), pairs in 1u64..20_000) {
        let a = scan::concat_census(Family::Pauli, pairs, seed).unwrap();
        let b = scan::concat_census(Family::Pauli, pairs, seed).unwrap();
        prop_assert_eq!(&a.summary, &b.summary);
        prop_assert_eq!(a.records.len(), b.records.len());
        let s = &a.summary;
        prop_assert_eq!(s.total_pairs, pairs);
        prop_assert_eq!(s.admitted() + s.rejected, pairs);
        let tallied: u64 = s.output_totals().iter().sum();
        prop_assert_eq!(tallied, s.admitted());
    }

    #[test]
    fn census_distances_are_euclidean(seed in any::<u64>()) {
        let out = scan::concat_census(Family::Pauli, 20_000, seed).unwrap();
        for rec in &out.records {
            prop_assert!((rec.distance - scan::stats::euclidean(rec.a, rec.b)).abs() < 1e-12);
        }
    }

    #[test]
    fn useful_minus_images_are_planar(seed in any::<u64>()) {
        let rows = scan::octahedron_mapping_dataset(seed, 5000, scan::Branch::Minus).unwrap();
        for row in rows.iter().filter(|r| r.useful) {
            prop_assert!(scan::mapping::minus_plane_offset(row.lambda_out.unwrap()) < 1e-9);
        }
    }
}
