use serde::Serialize;

use super::{MarketError, MarketResult, PriceSeries};

/// `(p[t+1] - p[t]) / p[t]` for consecutive closes.
pub fn relative_changes(series: &PriceSeries) -> MarketResult<Vec<f64>> {
    let closes: Vec<f64> = series.closes().collect();
    relative_changes_of(&closes)
}

pub fn relative_changes_of(closes: &[f64]) -> MarketResult<Vec<f64>> {
    if closes.len() < 2 {
        return Err(MarketError::TooShort { needed: 2, got: closes.len() });
    }
    Ok(closes.windows(2).map(|w| (w[1] - w[0]) / w[0]).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalFit {
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator).
    pub std: f64,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn fit_normal(xs: &[f64]) -> MarketResult<NormalFit> {
    if xs.len() < 2 {
        return Err(MarketError::TooShort { needed: 2, got: xs.len() });
    }
    let mu = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - mu).powi(2)).sum();
    Ok(NormalFit { mean: mu, std: (ss / (xs.len() - 1) as f64).sqrt() })
}

/// Fourth standardized moment minus 3, from the biased central moments
/// `m4 / m2²`. Positive values mean heavier tails than a normal.
pub fn excess_kurtosis(xs: &[f64]) -> MarketResult<f64> {
    if xs.len() < 4 {
        return Err(MarketError::TooShort { needed: 4, got: xs.len() });
    }
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(MarketError::DegenerateVariance);
    }
    let n = xs.len() as f64;
    let mu = mean(xs);
    let (m2, m4) = xs.iter().fold((0.0, 0.0), |(m2, m4), x| {
        let d2 = (x - mu).powi(2);
        (m2 + d2, m4 + d2 * d2)
    });
    let (m2, m4) = (m2 / n, m4 / n);
    Ok(m4 / (m2 * m2) - 3.0)
}

/// Product-moment correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> MarketResult<f64> {
    if xs.len() != ys.len() {
        return Err(MarketError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(MarketError::TooShort { needed: 2, got: xs.len() });
    }
    if xs.iter().all(|&x| x == xs[0]) || ys.iter().all(|&y| y == ys[0]) {
        return Err(MarketError::DegenerateVariance);
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

pub fn normal_pdf(x: f64, fit: &NormalFit) -> f64 {
    let z = (x - fit.mean) / fit.std;
    (-0.5 * z * z).exp() / (fit.std * (2.0 * std::f64::consts::PI).sqrt())
}

/// One bin of an empirical density with the fitted normal evaluated at its center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    pub density: f64,
    pub normal_density: f64,
}

/// Equal-width density histogram over `[min, max]`, normalized to unit area,
/// overlaid with the normal of matching mean and standard deviation.
pub fn density_histogram(xs: &[f64], bins: usize) -> MarketResult<Vec<DensityBin>> {
    if bins == 0 {
        return Err(MarketError::NoBins);
    }
    let fit = fit_normal(xs)?;
    if fit.std == 0.0 {
        return Err(MarketError::DegenerateVariance);
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &x in xs {
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let n = xs.len() as f64;
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| {
            let (a, b) = (lo + i as f64 * width, lo + (i + 1) as f64 * width);
            DensityBin {
                lo: a,
                hi: b,
                count,
                density: count as f64 / (n * width),
                normal_density: normal_pdf((a + b) / 2.0, &fit),
            }
        })
        .collect())
}
