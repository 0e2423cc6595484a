use qwalk_core::market::{
    density_histogram, excess_kurtosis, fit_normal, housing_correlations, ingest_metro, ingest_prices,
    relative_changes, DensityBin, NormalFit, PriceFormat,
};
use serde::Serialize;

use super::{csv_row, Artifact};
use crate::args::{HistFormat, HousingArgs, ReturnsArgs};
use crate::error::CliError;
use crate::manifest::RunManifest;

#[derive(Serialize)]
struct ReturnsReport {
    changes: usize,
    reordered_rows: usize,
    fit: NormalFit,
    excess_kurtosis: f64,
    bins: Vec<DensityBin>,
}

pub fn returns(a: &ReturnsArgs) -> Result<Vec<Artifact>, CliError> {
    let format = PriceFormat {
        date_column: a.date_column.clone(),
        close_column: a.close_column.clone(),
        date_format: a.date_format.clone(),
    };
    let ingested = ingest_prices(&a.input, &format)?;
    if ingested.reordered_rows > 0 {
        eprintln!("qwalk: warning: {} rows were out of date order and have been sorted", ingested.reordered_rows);
    }
    let changes = relative_changes(&ingested.data)?;
    let report = ReturnsReport {
        changes: changes.len(),
        reordered_rows: ingested.reordered_rows,
        fit: fit_normal(&changes)?,
        excess_kurtosis: excess_kurtosis(&changes)?,
        bins: density_histogram(&changes, a.bins)?,
    };

    let manifest = RunManifest::new("market returns", a).with_output(a.out.as_deref());
    let content = match a.format {
        HistFormat::Json => manifest.wrap_json(&report),
        HistFormat::Csv => {
            let mut s = manifest.comment_lines();
            s += &csv_row(["bin_lo", "bin_hi", "count", "density", "normal_density", "mean", "std", "excess_kurtosis"]);
            let summary = [report.fit.mean, report.fit.std, report.excess_kurtosis].map(|x| format!("{x:.8e}"));
            for b in &report.bins {
                let mut row = vec![
                    format!("{:.8e}", b.lo),
                    format!("{:.8e}", b.hi),
                    b.count.to_string(),
                    format!("{:.8e}", b.density),
                    format!("{:.8e}", b.normal_density),
                ];
                row.extend(summary.iter().cloned());
                s += &csv_row(row);
            }
            s
        }
    };
    Ok(vec![Artifact::new(a.out.clone(), content)])
}

pub fn housing(a: &HousingArgs) -> Result<Vec<Artifact>, CliError> {
    let ingested = ingest_metro(&a.input)?;
    if ingested.reordered_rows > 0 {
        eprintln!("qwalk: warning: {} rows were out of order and have been sorted", ingested.reordered_rows);
    }
    let report = housing_correlations(&ingested.data, a.bins)?;
    for (metro, reason) in &report.skipped {
        eprintln!("qwalk: skipped {metro}: {reason:?}");
    }

    let manifest = RunManifest::new("market housing", a).with_output(a.out.as_deref()).with_output(a.json.as_deref());
    let mut csv = manifest.comment_lines();
    csv += &csv_row(["metro", "r", "months_used"]);
    for (metro, c) in &report.per_metro {
        csv += &csv_row([metro.clone(), format!("{:.12}", c.r), c.months_used.to_string()]);
    }
    let mut out = vec![Artifact::new(a.out.clone(), csv)];
    if let Some(path) = &a.json {
        out.push(Artifact::new(Some(path.clone()), manifest.wrap_json(&report)));
    }
    Ok(out)
}
