use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{derive_seed, run_shots, ShotHistogram, ZenoSchedule};
use crate::circuit::{arc_counter_circuit, Design, WalkConfig};
use crate::error::{Error, Result};
use crate::gate::GateOp;
use crate::statevector::StateVector;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZenoPoint {
    pub period: usize,
    pub mean: f64,
    pub stderr: f64,
    #[serde(skip)]
    pub histogram: ShotHistogram,
}

/// Runs the arc counter once per schedule, collapsing the counter register
/// at each scheduled step boundary.
pub fn zeno_experiment(
    width: usize,
    steps: usize,
    base_angle: f64,
    periods: &[ZenoSchedule],
    shots: usize,
    seed: u64,
) -> Result<Vec<ZenoPoint>> {
    let cfg = WalkConfig::new(Design::Arc, width, steps).with_base_angle(base_angle);
    let circuit = arc_counter_circuit(&cfg)?;
    periods
        .iter()
        .map(|schedule| {
            let h = run_shots(&circuit, shots, None, *schedule, derive_seed(seed, &[schedule.period as u64]))?;
            Ok(ZenoPoint { period: schedule.period, mean: h.mean(), stderr: h.stderr(), histogram: h })
        })
        .collect()
}

/// Probability that a qubit driven by a total `Rx(2θ)` stays in `|0⟩` when
/// observed after each of `segments` equal slices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZenoSurvival {
    /// `cos²(θ / segments)^segments`.
    pub closed_form: f64,
    /// Product of `|0⟩` branch probabilities along the statevector, projecting
    /// back onto `|0⟩` after each slice.
    pub projected: f64,
}

pub fn single_qubit_zeno(theta: f64, segments: usize) -> Result<ZenoSurvival> {
    if segments == 0 {
        return Err(Error::InvalidConfig("segments must be at least 1".into()));
    }
    let closed_form = (theta / segments as f64).cos().powi(2).powi(segments as i32);

    let slice = GateOp::rx(0, 2.0 * theta / segments as f64)?;
    let mut state = StateVector::new(1)?;
    let mut projected = 1.0;
    for _ in 0..segments {
        state.apply(&slice)?;
        let stay = 1.0 - state.prob_one(0)?;
        projected *= stay;
        if stay <= 0.0 {
            break;
        }
        state.collapse(0, 0)?;
    }
    Ok(ZenoSurvival { closed_form, projected })
}

/// Sampled survival fraction over `shots` runs of slice-then-measure.
pub fn simulate_single_qubit_zeno(theta: f64, segments: usize, shots: usize, seed: u64) -> Result<f64> {
    if segments == 0 || shots == 0 {
        return Err(Error::InvalidConfig("segments and shots must be at least 1".into()));
    }
    let slice = GateOp::rx(0, 2.0 * theta / segments as f64)?;
    let mut survived = 0usize;
    for shot in 0..shots {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(shot as u64));
        let mut state = StateVector::new(1)?;
        let mut alive = true;
        for _ in 0..segments {
            state.apply(&slice)?;
            if state.measure_qubit(0, &mut rng)? == 1 {
                alive = false;
                break;
            }
        }
        survived += usize::from(alive);
    }
    Ok(survived as f64 / shots as f64)
}
