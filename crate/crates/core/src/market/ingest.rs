//! CSV ingestion for price series (`date,close`) and metro records
//! (`metro,month,sales_count,sale_to_list_ratio`).

use std::fs::File;
use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;
use csv::StringRecord;

use super::{MarketError, MarketResult, MetroMonthlyRecord, PricePoint, PriceSeries, YearMonth};

/// Column names and date format of a price CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceFormat {
    pub date_column: String,
    pub close_column: String,
    pub date_format: String,
}

impl Default for PriceFormat {
    fn default() -> Self {
        Self { date_column: "date".into(), close_column: "close".into(), date_format: "%Y-%m-%d".into() }
    }
}

/// Parsed data plus the number of rows that arrived out of order and were
/// moved during sorting.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested<T> {
    pub data: T,
    pub reordered_rows: usize,
}

fn column_index(headers: &StringRecord, name: &str) -> MarketResult<usize> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| MarketError::Schema(name.to_string()))
}

fn row_of(record: &StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn field<'r>(record: &'r StringRecord, idx: usize, column: &str) -> MarketResult<&'r str> {
    record.get(idx).map(str::trim).ok_or_else(|| MarketError::Parse {
        row: row_of(record),
        column: column.to_string(),
        message: "missing field".into(),
    })
}

fn parse_error(record: &StringRecord, column: &str, message: String) -> MarketError {
    MarketError::Parse { row: row_of(record), column: column.to_string(), message }
}

fn csv_error(err: csv::Error) -> MarketError {
    let row = err.position().map_or(0, |p| p.line());
    MarketError::Parse { row, column: String::new(), message: err.to_string() }
}

fn count_descents<T: PartialOrd>(keys: &[T]) -> usize {
    keys.windows(2).filter(|w| w[1] < w[0]).count()
}

pub fn read_prices<R: Read>(reader: R, format: &PriceFormat) -> MarketResult<Ingested<PriceSeries>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let date_idx = column_index(&headers, &format.date_column)?;
    let close_idx = column_index(&headers, &format.close_column)?;

    let mut rows: Vec<(u64, PricePoint)> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let date_text = field(&record, date_idx, &format.date_column)?;
        let date = NaiveDate::parse_from_str(date_text, &format.date_format)
            .map_err(|e| parse_error(&record, &format.date_column, format!("bad date {date_text:?}: {e}")))?;
        let close_text = field(&record, close_idx, &format.close_column)?;
        let close: f64 = close_text
            .parse()
            .map_err(|_| parse_error(&record, &format.close_column, format!("bad price {close_text:?}")))?;
        if !(close.is_finite() && close > 0.0) {
            return Err(parse_error(&record, &format.close_column, format!("price must be positive, got {close}")));
        }
        rows.push((row_of(&record), PricePoint { date, close }));
    }

    let dates: Vec<NaiveDate> = rows.iter().map(|(_, p)| p.date).collect();
    let reordered_rows = count_descents(&dates);
    rows.sort_by_key(|(_, p)| p.date);
    if let Some(w) = rows.windows(2).find(|w| w[0].1.date == w[1].1.date) {
        return Err(MarketError::Parse {
            row: w[1].0.max(w[0].0),
            column: format.date_column.clone(),
            message: format!("duplicate date {}", w[1].1.date),
        });
    }
    let data = PriceSeries::new(rows.into_iter().map(|(_, p)| p).collect())?;
    Ok(Ingested { data, reordered_rows })
}

pub fn ingest_prices(path: impl AsRef<Path>, format: &PriceFormat) -> MarketResult<Ingested<PriceSeries>> {
    read_prices(File::open(path)?, format)
}

pub fn read_metro<R: Read>(reader: R) -> MarketResult<Ingested<Vec<MetroMonthlyRecord>>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let metro_idx = column_index(&headers, "metro")?;
    let month_idx = column_index(&headers, "month")?;
    let sales_idx = column_index(&headers, "sales_count")?;
    let ratio_idx = column_index(&headers, "sale_to_list_ratio")?;

    let mut rows: Vec<(u64, MetroMonthlyRecord)> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let metro = field(&record, metro_idx, "metro")?;
        if metro.is_empty() {
            return Err(parse_error(&record, "metro", "empty metro name".into()));
        }
        let month: YearMonth = field(&record, month_idx, "month")?
            .parse()
            .map_err(|e| parse_error(&record, "month", e))?;
        let sales_text = field(&record, sales_idx, "sales_count")?;
        let sales_count: u64 = sales_text
            .parse()
            .map_err(|_| parse_error(&record, "sales_count", format!("bad count {sales_text:?}")))?;
        let ratio_text = field(&record, ratio_idx, "sale_to_list_ratio")?;
        let ratio: f64 = ratio_text
            .parse()
            .map_err(|_| parse_error(&record, "sale_to_list_ratio", format!("bad ratio {ratio_text:?}")))?;
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(parse_error(&record, "sale_to_list_ratio", format!("ratio must be positive, got {ratio}")));
        }
        rows.push((
            row_of(&record),
            MetroMonthlyRecord { metro: metro.to_string(), month, sales_count, sale_to_list_ratio: ratio },
        ));
    }

    let keys: Vec<(&str, YearMonth)> = rows.iter().map(|(_, r)| (r.metro.as_str(), r.month)).collect();
    let reordered_rows = count_descents(&keys);
    rows.sort_by(|a, b| (&a.1.metro, a.1.month).cmp(&(&b.1.metro, b.1.month)));
    if let Some(w) = rows.windows(2).find(|w| w[0].1.metro == w[1].1.metro && w[0].1.month == w[1].1.month) {
        return Err(MarketError::Parse {
            row: w[1].0.max(w[0].0),
            column: "month".into(),
            message: format!("duplicate month {} for {}", w[1].1.month, w[1].1.metro),
        });
    }
    Ok(Ingested { data: rows.into_iter().map(|(_, r)| r).collect(), reordered_rows })
}

pub fn ingest_metro(path: impl AsRef<Path>) -> MarketResult<Ingested<Vec<MetroMonthlyRecord>>> {
    read_metro(File::open(path)?)
}
