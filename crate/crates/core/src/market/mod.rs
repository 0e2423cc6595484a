//! Classical statistics over price series and per-metro housing records.

mod housing;
mod ingest;
mod stats;

use thiserror::Error;

pub use housing::{
    housing_correlations, usable_months, CorrelationReport, MetroCorrelation, MetroMonthlyRecord,
    RHistogram, SkipReason, YearMonth, DEFAULT_R_BINS,
};
pub use ingest::{
    ingest_metro, ingest_prices, read_metro, read_prices, Ingested, PriceFormat,
};
pub use stats::{
    density_histogram, excess_kurtosis, fit_normal, normal_pdf, pearson, relative_changes,
    relative_changes_of, DensityBin, NormalFit,
};

use chrono::NaiveDate;
use serde::Serialize;

#[derive(Debug, Error)]
pub enum MarketError {
    #[error("need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("input has zero variance")]
    DegenerateVariance,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("bin count must be at least 1")]
    NoBins,

    #[error("row {row}, column {column:?}: {message}")]
    Parse { row: u64, column: String, message: String },

    #[error("missing column {0:?}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type MarketResult<T> = std::result::Result<T, MarketError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PricePoint {
    pub date: NaiveDate,
    pub close: f64,
}

/// Closing prices with strictly increasing dates and positive closes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriceSeries {
    points: Vec<PricePoint>,
}

impl PriceSeries {
    pub fn new(points: Vec<PricePoint>) -> MarketResult<Self> {
        for (i, p) in points.iter().enumerate() {
            if !(p.close.is_finite() && p.close > 0.0) {
                return Err(MarketError::Parse {
                    row: i as u64 + 1,
                    column: "close".into(),
                    message: format!("price must be positive, got {}", p.close),
                });
            }
            if i > 0 && points[i - 1].date >= p.date {
                return Err(MarketError::Parse {
                    row: i as u64 + 1,
                    column: "date".into(),
                    message: "dates must be strictly increasing".into(),
                });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[PricePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn closes(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.close)
    }
}
