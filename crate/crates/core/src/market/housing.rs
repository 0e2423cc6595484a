use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{pearson, MarketError, MarketResult};

/// Default number of equal-width bins over `[-1, 1]`.
pub const DEFAULT_R_BINS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YearMonth {
    pub year: i32,
    pub month: u8,
}

impl FromStr for YearMonth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected YYYY-MM, got {s:?}");
        let (y, m) = s.trim().split_once('-').ok_or_else(bad)?;
        if y.len() != 4 || m.len() != 2 {
            return Err(bad());
        }
        let year = y.parse().map_err(|_| bad())?;
        let month: u8 = m.parse().map_err(|_| bad())?;
        if !(1..=12).contains(&month) {
            return Err(bad());
        }
        Ok(Self { year, month })
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl Serialize for YearMonth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One month of summary sales data for one metro area.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetroMonthlyRecord {
    pub metro: String,
    pub month: YearMonth,
    pub sales_count: u64,
    /// Mean sale price over mean list price; below 1 means sold under asking.
    pub sale_to_list_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetroCorrelation {
    pub r: f64,
    pub months_used: usize,
    /// Months dropped because the ratio exceeded 1.
    pub months_excluded: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum SkipReason {
    TooFewMonths { months_used: usize },
    ConstantColumn { months_used: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RHistogram {
    /// `bins + 1` edges from -1 to 1.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl RHistogram {
    fn build(rs: impl Iterator<Item = f64>, bins: usize) -> Self {
        let width = 2.0 / bins as f64;
        let edges = (0..=bins).map(|i| -1.0 + i as f64 * width).collect();
        let mut counts = vec![0u64; bins];
        for r in rs {
            let idx = (((r + 1.0) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        Self { edges, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Fraction of the histogram in bins whose lower edge is at least `x`.
    pub fn mass_at_or_above(&self, x: f64) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let above: u64 = self
            .counts
            .iter()
            .zip(&self.edges)
            .filter(|(_, &lo)| lo >= x)
            .map(|(c, _)| c)
            .sum();
        above as f64 / total as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub per_metro: BTreeMap<String, MetroCorrelation>,
    pub skipped: BTreeMap<String, SkipReason>,
    pub histogram: RHistogram,
}

impl CorrelationReport {
    /// Share of reported metros with `r > 0`.
    pub fn positive_fraction(&self) -> f64 {
        if self.per_metro.is_empty() {
            return 0.0;
        }
        let pos = self.per_metro.values().filter(|m| m.r > 0.0).count();
        pos as f64 / self.per_metro.len() as f64
    }
}

/// Months that enter the correlation: those sold at or under asking.
pub fn usable_months<'a>(
    records: impl IntoIterator<Item = &'a MetroMonthlyRecord>,
) -> impl Iterator<Item = &'a MetroMonthlyRecord> {
    records.into_iter().filter(|r| r.sale_to_list_ratio <= 1.0)
}

fn correlate_metro(records: &[&MetroMonthlyRecord]) -> Result<MetroCorrelation, SkipReason> {
    let used: Vec<&MetroMonthlyRecord> = usable_months(records.iter().copied()).collect();
    let months_used = used.len();
    if months_used < 2 {
        return Err(SkipReason::TooFewMonths { months_used });
    }
    let sales: Vec<f64> = used.iter().map(|r| r.sales_count as f64).collect();
    let ratios: Vec<f64> = used.iter().map(|r| r.sale_to_list_ratio).collect();
    match pearson(&sales, &ratios) {
        Ok(r) => Ok(MetroCorrelation { r, months_used, months_excluded: records.len() - months_used }),
        Err(_) => Err(SkipReason::ConstantColumn { months_used }),
    }
}

/// Per-metro Pearson correlation between monthly sales count and
/// sale-to-list ratio, skipping months above asking, binned over `[-1, 1]`.
pub fn housing_correlations(records: &[MetroMonthlyRecord], bins: usize) -> MarketResult<CorrelationReport> {
    if bins == 0 {
        return Err(MarketError::NoBins);
    }
    let mut by_metro: BTreeMap<&str, Vec<&MetroMonthlyRecord>> = BTreeMap::new();
    for rec in records {
        by_metro.entry(rec.metro.as_str()).or_default().push(rec);
    }
    let outcomes: Vec<(String, Result<MetroCorrelation, SkipReason>)> = by_metro
        .into_par_iter()
        .map(|(metro, recs)| (metro.to_string(), correlate_metro(&recs)))
        .collect();

    let mut per_metro = BTreeMap::new();
    let mut skipped = BTreeMap::new();
    for (metro, outcome) in outcomes {
        match outcome {
            Ok(c) => {
                per_metro.insert(metro, c);
            }
            Err(reason) => {
                skipped.insert(metro, reason);
            }
        }
    }
    let histogram = RHistogram::build(per_metro.values().map(|m: &MetroCorrelation| m.r), bins);
    Ok(CorrelationReport { per_metro, skipped, histogram })
}
