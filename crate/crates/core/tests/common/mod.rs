//! Fixtures shared by the integration tests.

#![allow(dead_code)]

use qwalk_core::gate::GateOp;
use qwalk_core::market::{MetroMonthlyRecord, YearMonth};
use qwalk_core::statevector::StateVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Correlation between monthly sales and sale-to-list ratio in the fixture.
pub const FIXTURE_RHO: f64 = 0.9;

/// `metros × months` records whose (sales, ratio) pairs are bivariate normal
/// with correlation `rho`. Ratios sit around 0.95 with a 0.008 spread, so the
/// occasional month above asking is possible but rare.
pub fn synthetic_metros(metros: usize, months: usize, rho: f64, seed: u64) -> Vec<MetroMonthlyRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(metros * months);
    for m in 0..metros {
        let base_sales = 300.0 + 40.0 * m as f64;
        for t in 0..months {
            let z1: f64 = StandardNormal.sample(&mut rng);
            let e: f64 = StandardNormal.sample(&mut rng);
            let z2 = rho * z1 + (1.0 - rho * rho).sqrt() * e;
            out.push(MetroMonthlyRecord {
                metro: format!("Metro {m:02}"),
                month: YearMonth { year: 2020 + (t / 12) as i32, month: (t % 12) as u8 + 1 },
                sales_count: (base_sales + 0.15 * base_sales * z1).round().max(0.0) as u64,
                sale_to_list_ratio: 0.95 + 0.008 * z2,
            });
        }
    }
    out
}

/// Image of a basis state under a permutation circuit, resets included.
pub fn basis_image(n: usize, ops: &[GateOp], input: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut s = StateVector::basis(n, input).unwrap();
    for op in ops {
        match op {
            GateOp::Reset(q) => {
                s.reset_qubit(*q, &mut rng).unwrap();
            }
            other => s.apply(other).unwrap(),
        }
    }
    s.probabilities()
        .iter()
        .position(|&p| (p - 1.0).abs() < 1e-12)
        .expect("permutation circuit maps basis states to basis states")
}
