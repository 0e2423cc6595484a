//! Shot execution and the walk experiments built on it.

mod engine;
mod table;
mod zeno;

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::statevector::Bits;

pub use engine::{arc_walk_step_changes, run_shots, shot_positions};
pub use table::{design_histogram, distance_table, DistanceCell, DistanceRow, DistanceTable, TableOptions};
pub use zeno::{
    simulate_single_qubit_zeno, single_qubit_zeno, zeno_experiment, ZenoPoint, ZenoSurvival,
};

/// Shots run per deterministic-design table cell.
pub const DEFAULT_SHOTS: usize = 1000;
/// Random-jump cells average this many seeded circuits …
pub const RANDOM_CIRCUITS: usize = 30;
/// … with this many shots each.
pub const RANDOM_CIRCUIT_SHOTS: usize = 30;

/// How often the counter register is measured mid-circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ZenoSchedule {
    /// 0 never measures; `k` measures after every `k`-th step.
    pub period: usize,
}

impl ZenoSchedule {
    pub const NEVER: ZenoSchedule = ZenoSchedule { period: 0 };

    pub fn every(period: usize) -> Self {
        Self { period }
    }

    pub fn measures_after(&self, step: usize) -> bool {
        self.period > 0 && step.is_multiple_of(self.period)
    }
}

/// Counts of decoded positions over a run of shots.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ShotHistogram {
    counts: BTreeMap<i64, u64>,
    total_shots: u64,
}

impl ShotHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_positions<I: IntoIterator<Item = i64>>(positions: I) -> Self {
        let mut h = Self::new();
        positions.into_iter().for_each(|p| h.record(p));
        h
    }

    pub fn from_counts<I: IntoIterator<Item = (i64, u64)>>(counts: I) -> Self {
        let mut h = Self::new();
        for (pos, n) in counts {
            if n > 0 {
                *h.counts.entry(pos).or_default() += n;
                h.total_shots += n;
            }
        }
        h
    }

    pub fn record(&mut self, position: i64) {
        *self.counts.entry(position).or_default() += 1;
        self.total_shots += 1;
    }

    pub fn merge(&mut self, other: &ShotHistogram) {
        for (&pos, &n) in &other.counts {
            *self.counts.entry(pos).or_default() += n;
        }
        self.total_shots += other.total_shots;
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }

    pub fn count(&self, position: i64) -> u64 {
        self.counts.get(&position).copied().unwrap_or(0)
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    pub fn is_empty(&self) -> bool {
        self.total_shots == 0
    }

    pub fn frequencies(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let total = self.total_shots as f64;
        self.counts.iter().map(move |(&p, &n)| (p, n as f64 / total))
    }

    pub fn frequency(&self, position: i64) -> f64 {
        if self.total_shots == 0 {
            return 0.0;
        }
        self.count(position) as f64 / self.total_shots as f64
    }

    pub fn mean(&self) -> f64 {
        if self.total_shots == 0 {
            return 0.0;
        }
        let sum: f64 = self.counts.iter().map(|(&p, &n)| p as f64 * n as f64).sum();
        sum / self.total_shots as f64
    }

    /// Sample variance with the `n - 1` denominator; 0 for fewer than two shots.
    pub fn sample_variance(&self) -> f64 {
        if self.total_shots < 2 {
            return 0.0;
        }
        let mean = self.mean();
        let ss: f64 = self
            .counts
            .iter()
            .map(|(&p, &n)| n as f64 * (p as f64 - mean).powi(2))
            .sum();
        ss / (self.total_shots - 1) as f64
    }

    pub fn sample_std(&self) -> f64 {
        self.sample_variance().sqrt()
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.total_shots == 0 {
            return 0.0;
        }
        self.sample_std() / (self.total_shots as f64).sqrt()
    }
}

/// Integer value of the counter bits, qubit `counter.start` least significant.
pub fn decode(bits: Bits, counter: Range<usize>) -> u64 {
    let width = counter.len();
    let shifted = (bits.value() >> counter.start) as u64;
    if width >= 64 {
        shifted
    } else {
        shifted & ((1u64 << width) - 1)
    }
}

/// Exact ideal mean of the decoded arc-counter value:
/// `Σ_k 2^k sin²(steps · θ_k / 2)` with `θ_k = base_angle / 2^k`.
///
/// The arc counter never entangles its qubits, so each qubit's marginal is
/// a single rotated qubit.
pub fn arc_expected(width: usize, steps: usize, base_angle: f64) -> f64 {
    (0..width)
        .map(|k| {
            let theta = base_angle / (1u64 << k) as f64;
            (1u64 << k) as f64 * (steps as f64 * theta / 2.0).sin().powi(2)
        })
        .sum()
}

/// Distribution of `U - D` for independent `U ~ up`, `D ~ down`.
///
/// Computed exactly as the cross-correlation of the two count tables, so the
/// result carries `up.total * down.total` weighted outcomes.
pub fn two_way_distribution(up: &ShotHistogram, down: &ShotHistogram) -> Result<ShotHistogram> {
    if up.is_empty() || down.is_empty() {
        return Err(Error::EmptyHistogram);
    }
    let mut out = ShotHistogram::new();
    for (&u, &cu) in &up.counts {
        for (&d, &cd) in &down.counts {
            *out.counts.entry(u - d).or_default() += cu * cd;
        }
    }
    out.total_shots = up.total_shots * down.total_shots;
    Ok(out)
}

/// SplitMix64 finalizer; mixes a base seed with experiment coordinates.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mix = |mut z: u64| {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    tags.iter().fold(mix(base), |acc, &t| mix(acc ^ mix(t)))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    #[test]
    fn decode_examples() {
        assert_eq!(decode(Bits::from_lsb_first("000000").unwrap(), 0..6), 0);
        assert_eq!(decode(Bits::from_lsb_first("000001").unwrap(), 0..6), 32);
        assert_eq!(decode(Bits::from_lsb_first("110").unwrap(), 0..3), 3);
        // counter offset inside a larger register
        assert_eq!(decode(Bits::from_lsb_first("1011").unwrap(), 1..3), 2);
    }

    #[test]
    fn arc_expected_examples() {
        assert_eq!(arc_expected(6, 0, FRAC_PI_2), 0.0);
        assert!((arc_expected(1, 1, PI) - 1.0).abs() < 1e-15);
        // Frozen from an independent evaluation of the closed form.
        assert!((arc_expected(6, 1, FRAC_PI_2) - 1.079_788).abs() < 1e-6);
        assert!((arc_expected(6, 10, FRAC_PI_2) - 16.389_645).abs() < 1e-6);
        assert!((arc_expected(8, 20, FRAC_PI_2) - 34.697_290).abs() < 1e-6);
    }

    #[test]
    fn two_way_examples() {
        let up = ShotHistogram::from_counts([(1, 10)]);
        let down = ShotHistogram::from_counts([(0, 7)]);
        let tw = two_way_distribution(&up, &down).unwrap();
        assert_eq!(tw.frequency(1), 1.0);

        let h = ShotHistogram::from_counts([(0, 5), (2, 5)]);
        let tw = two_way_distribution(&h, &h).unwrap();
        assert_eq!(tw.frequency(-2), 0.25);
        assert_eq!(tw.frequency(0), 0.5);
        assert_eq!(tw.frequency(2), 0.25);
        assert_eq!(tw.mean(), 0.0);

        assert_eq!(two_way_distribution(&ShotHistogram::new(), &h), Err(Error::EmptyHistogram));
    }

    #[test]
    fn histogram_statistics() {
        let h = ShotHistogram::from_positions([1, 2, 3]);
        assert_eq!(h.total_shots(), 3);
        assert_eq!(h.mean(), 2.0);
        assert_eq!(h.sample_variance(), 1.0);
        let mut merged = h.clone();
        merged.merge(&ShotHistogram::from_positions([5]));
        assert_eq!(merged.total_shots(), 4);
        assert_eq!(merged.count(5), 1);
    }

    #[test]
    fn schedule_boundaries() {
        assert!(!ZenoSchedule::NEVER.measures_after(7));
        let s = ZenoSchedule::every(7);
        assert!(s.measures_after(7) && s.measures_after(14) && !s.measures_after(20));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, &[0]), derive_seed(1, &[1]));
        assert_ne!(derive_seed(1, &[0, 1]), derive_seed(1, &[1, 0]));
        assert_eq!(derive_seed(9, &[3, 4]), derive_seed(9, &[3, 4]));
    }
}
