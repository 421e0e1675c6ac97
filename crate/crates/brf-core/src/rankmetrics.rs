//! Agreement metrics between two band rankings of the same level.
//!
//! Values analysis (VA) asks how much the two rankings agree on *which*
//! bands matter: the set intersection over the longer list's length.
//! Position analysis (PA) asks how much they agree on *where*: positions
//! holding the same band, over the longer list's length.  Both are
//! percentages; two empty rankings agree vacuously at 100.

use std::collections::HashSet;

use crate::bands::BandSpec;
use crate::error::{Error, Result};

/// Two rankings of one level, trimmed to a common cap, ready to compare.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingPair {
    level: u32,
    list_a: Vec<BandSpec>,
    list_b: Vec<BandSpec>,
}

impl RankingPair {
    /// Pairs two rankings, truncating each to `cap` entries.
    ///
    /// Every band must belong to `level` and neither list may repeat a
    /// band.
    pub fn new(
        level: u32,
        mut list_a: Vec<BandSpec>,
        mut list_b: Vec<BandSpec>,
        cap: usize,
    ) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Config("ranking cap must be at least 1".into()));
        }
        list_a.truncate(cap);
        list_b.truncate(cap);
        for (name, list) in [("first", &list_a), ("second", &list_b)] {
            let mut seen = HashSet::new();
            for band in list {
                if band.level != level {
                    return Err(Error::Config(format!(
                        "{name} ranking holds band {} of level {}, expected level {level}",
                        band.label(),
                        band.level
                    )));
                }
                if !seen.insert(band.index) {
                    return Err(Error::Config(format!(
                        "{name} ranking repeats band {}",
                        band.label()
                    )));
                }
            }
        }
        Ok(Self {
            level,
            list_a,
            list_b,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn list_a(&self) -> &[BandSpec] {
        &self.list_a
    }

    pub fn list_b(&self) -> &[BandSpec] {
        &self.list_b
    }

    fn longer_len(&self) -> usize {
        self.list_a.len().max(self.list_b.len())
    }
}

/// Percentage of bands the two rankings share, regardless of order.
pub fn values_analysis(pair: &RankingPair) -> f64 {
    let longer = pair.longer_len();
    if longer == 0 {
        return 100.0;
    }
    let a: HashSet<u32> = pair.list_a.iter().map(|b| b.index).collect();
    let shared = pair
        .list_b
        .iter()
        .filter(|band| a.contains(&band.index))
        .count();
    100.0 * shared as f64 / longer as f64
}

/// Percentage of positions where the two rankings hold the same band.
pub fn position_analysis(pair: &RankingPair) -> f64 {
    let longer = pair.longer_len();
    if longer == 0 {
        return 100.0;
    }
    let matched = pair
        .list_a
        .iter()
        .zip(&pair.list_b)
        .filter(|(a, b)| a.index == b.index)
        .count();
    100.0 * matched as f64 / longer as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bands(level: u32, indices: &[u32]) -> Vec<BandSpec> {
        indices
            .iter()
            .map(|&i| BandSpec::new(level, i, 10240.0))
            .collect()
    }

    fn pair(level: u32, a: &[u32], b: &[u32]) -> RankingPair {
        RankingPair::new(level, bands(level, a), bands(level, b), 5).unwrap()
    }

    #[test]
    fn identical_rankings_agree_fully() {
        let p = pair(3, &[0, 2, 1], &[0, 2, 1]);
        assert_eq!(values_analysis(&p), 100.0);
        assert_eq!(position_analysis(&p), 100.0);
    }

    #[test]
    fn disjoint_rankings_agree_on_nothing() {
        let p = pair(3, &[0, 1], &[4, 5]);
        assert_eq!(values_analysis(&p), 0.0);
        assert_eq!(position_analysis(&p), 0.0);
    }

    #[test]
    fn empty_rankings_agree_vacuously() {
        let p = pair(3, &[], &[]);
        assert_eq!(values_analysis(&p), 100.0);
        assert_eq!(position_analysis(&p), 100.0);
    }

    #[test]
    fn one_empty_ranking_agrees_on_nothing() {
        let p = pair(3, &[], &[0, 1, 2]);
        assert_eq!(values_analysis(&p), 0.0);
        assert_eq!(position_analysis(&p), 0.0);
    }

    #[test]
    fn shorter_against_longer_uses_the_longer_length() {
        let p = pair(1, &[0], &[0, 1]);
        assert_eq!(values_analysis(&p), 50.0);
        assert_eq!(position_analysis(&p), 50.0);
    }

    #[test]
    fn three_of_five_shared_in_matching_positions() {
        let p = pair(3, &[0, 2, 1], &[0, 2, 1, 7, 4]);
        assert_eq!(values_analysis(&p), 60.0);
        assert_eq!(position_analysis(&p), 60.0);
    }

    #[test]
    fn same_members_swapped_positions() {
        let p = pair(2, &[0, 1], &[1, 0]);
        assert_eq!(values_analysis(&p), 100.0);
        assert_eq!(position_analysis(&p), 0.0);
    }

    #[test]
    fn lists_are_truncated_to_the_cap() {
        let p = RankingPair::new(3, bands(3, &[0, 1, 2]), bands(3, &[0, 1, 7]), 2).unwrap();
        assert_eq!(values_analysis(&p), 100.0);
        assert_eq!(position_analysis(&p), 100.0);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(RankingPair::new(3, bands(3, &[0, 0]), bands(3, &[]), 5).is_err());
        assert!(RankingPair::new(3, bands(3, &[0]), bands(2, &[0]), 5).is_err());
        assert!(RankingPair::new(3, bands(3, &[0]), bands(3, &[0]), 0).is_err());
    }

    fn arb_ranking(level: u32) -> impl Strategy<Value = Vec<u32>> {
        let count = 1u32 << level;
        prop::collection::hash_set(0..count, 0..=(count.min(5) as usize))
            .prop_map(|set| set.into_iter().collect())
    }

    proptest! {
        #[test]
        fn agreement_is_bounded_and_ordered(
            level in 1u32..8,
            a_seed in arb_ranking(7),
            b_seed in arb_ranking(7),
        ) {
            let count = 1u32 << level;
            let a: Vec<u32> = a_seed.into_iter().filter(|i| *i < count).collect();
            let b: Vec<u32> = b_seed.into_iter().filter(|i| *i < count).collect();
            let p = pair(level, &a, &b);
            let va = values_analysis(&p);
            let pa = position_analysis(&p);
            prop_assert!((0.0..=100.0).contains(&va));
            prop_assert!((0.0..=100.0).contains(&pa));
            prop_assert!(pa <= va, "pa {pa} must not exceed va {va}");
        }

        #[test]
        fn agreement_is_symmetric(
            a_seed in arb_ranking(6),
            b_seed in arb_ranking(6),
        ) {
            let p_ab = pair(6, &a_seed, &b_seed);
            let p_ba = pair(6, &b_seed, &a_seed);
            prop_assert_eq!(values_analysis(&p_ab), values_analysis(&p_ba));
            prop_assert_eq!(position_analysis(&p_ab), position_analysis(&p_ba));
        }
    }
}
