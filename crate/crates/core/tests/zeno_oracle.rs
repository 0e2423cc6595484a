//! Zeno experiment against an exact per-qubit Markov chain.
//!
//! Arc-counter qubits never interact, so measuring the counter only resets
//! each qubit's phase. Between measurements qubit `k` flips with probability
//! `sin²(L·θ_k/2)` over a segment of `L` steps.

use std::f64::consts::FRAC_PI_2;

use qwalk_core::walk::{zeno_experiment, ZenoSchedule};

fn markov_mean(width: usize, steps: usize, base: f64, period: usize) -> f64 {
    let segments: Vec<usize> = if period == 0 || period >= steps {
        vec![steps]
    } else {
        let mut s = vec![period; steps / period];
        if !steps.is_multiple_of(period) {
            s.push(steps % period);
        }
        s
    };
    (0..width)
        .map(|k| {
            let theta = base / (1u64 << k) as f64;
            let p_one = segments.iter().fold(0.0, |p, &len| {
                let flip = (len as f64 * theta / 2.0).sin().powi(2);
                p * (1.0 - flip) + (1.0 - p) * flip
            });
            (1u64 << k) as f64 * p_one
        })
        .sum()
}

#[test]
fn markov_oracle_frozen_values() {
    // Width 8, 20 steps, independently evaluated.
    assert!((markov_mean(8, 20, FRAC_PI_2, 0) - 34.697_290_191_755_094).abs() < 1e-9);
    assert!((markov_mean(8, 20, FRAC_PI_2, 7) - 17.0156).abs() < 1e-4);
    assert!((markov_mean(8, 20, FRAC_PI_2, 1) - 5.7807).abs() < 1e-4);
}

#[test]
fn sampled_means_match_markov_chain() {
    let periods = [0, 1, 2, 3, 5, 7, 10];
    let schedules: Vec<ZenoSchedule> = periods.iter().map(|&p| ZenoSchedule::every(p)).collect();
    let points = zeno_experiment(8, 20, FRAC_PI_2, &schedules, 4000, 99).unwrap();
    for (pt, &period) in points.iter().zip(&periods) {
        let expected = markov_mean(8, 20, FRAC_PI_2, period);
        assert!(
            (pt.mean - expected).abs() <= 4.0 * pt.stderr,
            "period {period}: sampled {} vs chain {expected} (stderr {})",
            pt.mean,
            pt.stderr
        );
    }
}
