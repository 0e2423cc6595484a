use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{decode, derive_seed, ShotHistogram, ZenoSchedule};
use crate::circuit::{arc_walk_circuit, Circuit, Design, WalkConfig};
use crate::error::{Error, Result};
use crate::gate::GateOp;
use crate::noise::{apply_readout_noise, noisy_apply, NoiseModel};
use crate::statevector::{sample_index, Bits, StateVector};

fn shot_rng(base_seed: u64, shot: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(base_seed.wrapping_add(shot as u64))
}

/// Runs one shot from `|0…0⟩`, returning the final measured bits.
fn execute_shot<R: Rng>(
    circuit: &Circuit,
    noise: Option<&NoiseModel>,
    schedule: ZenoSchedule,
    rng: &mut R,
) -> Result<Bits> {
    let mut state = StateVector::new(circuit.n_qubits())?;
    let marks = circuit.step_marks();
    let counter = circuit.roles().counter.clone();
    let mut next_mark = 0;
    for (i, op) in circuit.ops().iter().enumerate() {
        match (op, noise) {
            (GateOp::Measure { qubit, .. }, _) => {
                state.measure_qubit(*qubit, rng)?;
            }
            (GateOp::Reset(q), None) => {
                state.reset_qubit(*q, rng)?;
            }
            // Reset on noisy hardware: measure, then a (noisy) conditional X.
            (GateOp::Reset(q), Some(model)) => {
                if state.measure_qubit(*q, rng)? == 1 {
                    noisy_apply(&mut state, &GateOp::X(*q), model, rng)?;
                }
            }
            (op, None) => state.apply(op)?,
            (op, Some(model)) => noisy_apply(&mut state, op, model, rng)?,
        }
        while next_mark < marks.len() && marks[next_mark] == i + 1 {
            next_mark += 1;
            if schedule.measures_after(next_mark) {
                for q in counter.clone() {
                    state.measure_qubit(q, rng)?;
                }
            }
        }
    }
    let bits = state.measure_all(rng);
    Ok(match noise {
        Some(model) => apply_readout_noise(bits, model, rng),
        None => bits,
    })
}

/// Decoded counter position of every shot, in shot order.
///
/// Shot `i` draws from a generator seeded with `base_seed + i`, so results
/// do not depend on how shots are scheduled across threads.
pub fn shot_positions(
    circuit: &Circuit,
    shots: usize,
    noise: Option<&NoiseModel>,
    schedule: ZenoSchedule,
    base_seed: u64,
) -> Result<Vec<i64>> {
    if shots == 0 {
        return Err(Error::InvalidConfig("shots must be at least 1".into()));
    }
    let noise = noise.filter(|m| !m.is_ideal());
    let counter = circuit.roles().counter.clone();
    let decode_pos = |bits: Bits| decode(bits, counter.clone()) as i64;

    let unitary_only = noise.is_none()
        && !circuit.has_mid_circuit_ops()
        && (schedule.period == 0 || circuit.steps() == 0);
    if unitary_only {
        // Gates consume no randomness here, so evolving once and sampling
        // per shot matches a fresh simulation of every shot exactly.
        let mut state = StateVector::new(circuit.n_qubits())?;
        for op in circuit.ops() {
            state.apply(op)?;
        }
        let probs = state.probabilities();
        let n = circuit.n_qubits();
        return Ok((0..shots)
            .into_par_iter()
            .map(|i| {
                let r: f64 = shot_rng(base_seed, i).random();
                decode_pos(Bits::new(sample_index(probs.iter().copied(), r), n))
            })
            .collect());
    }

    (0..shots)
        .into_par_iter()
        .map(|i| {
            let mut rng = shot_rng(base_seed, i);
            execute_shot(circuit, noise, schedule, &mut rng).map(decode_pos)
        })
        .collect()
}

/// Runs `shots` independent shots and histograms the decoded positions.
pub fn run_shots(
    circuit: &Circuit,
    shots: usize,
    noise: Option<&NoiseModel>,
    schedule: ZenoSchedule,
    base_seed: u64,
) -> Result<ShotHistogram> {
    let positions = shot_positions(circuit, shots, noise, schedule, base_seed)?;
    Ok(ShotHistogram::from_positions(positions))
}

/// Signed per-shot changes `up_i - down_i` from two independent ideal arc
/// walks of `steps` steps.
pub fn arc_walk_step_changes(width: usize, steps: usize, shots: usize, seed: u64) -> Result<Vec<f64>> {
    let circuit = arc_walk_circuit(&WalkConfig::new(Design::ArcWalk, width, steps))?;
    let up = shot_positions(&circuit, shots, None, ZenoSchedule::NEVER, derive_seed(seed, &[0]))?;
    let down = shot_positions(&circuit, shots, None, ZenoSchedule::NEVER, derive_seed(seed, &[1]))?;
    Ok(up.iter().zip(&down).map(|(u, d)| (u - d) as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_circuit, Roles};
    use crate::walk::arc_expected;

    fn bell_circuit() -> Circuit {
        let mut c = Circuit::new(2, Roles::counter_only(2)).unwrap();
        c.extend([GateOp::H(0), GateOp::cnot(0, 1)]).unwrap();
        c
    }

    /// Per-shot simulation with no shortcuts, for comparison with the fast path.
    fn slow_positions(circuit: &Circuit, shots: usize, seed: u64) -> Vec<i64> {
        (0..shots)
            .map(|i| {
                let mut rng = shot_rng(seed, i);
                let bits = execute_shot(circuit, None, ZenoSchedule::NEVER, &mut rng).unwrap();
                decode(bits, circuit.roles().counter.clone()) as i64
            })
            .collect()
    }

    #[test]
    fn bell_pair_histogram() {
        let h = run_shots(&bell_circuit(), 1000, None, ZenoSchedule::NEVER, 7).unwrap();
        assert_eq!(h.total_shots(), 1000);
        assert_eq!(h.count(1) + h.count(2), 0);
        let sigma = (0.25f64 / 1000.0).sqrt();
        assert!((h.frequency(0) - 0.5).abs() <= 4.0 * sigma);
        assert!((h.frequency(3) - 0.5).abs() <= 4.0 * sigma);
    }

    #[test]
    fn empty_circuit_stays_at_zero() {
        let c = Circuit::new(3, Roles::counter_only(3)).unwrap();
        let h = run_shots(&c, 50, None, ZenoSchedule::NEVER, 0).unwrap();
        assert_eq!(h.count(0), 50);
        assert!(run_shots(&c, 0, None, ZenoSchedule::NEVER, 0).is_err());
    }

    #[test]
    fn fast_path_matches_per_shot_simulation() {
        let c = build_circuit(&WalkConfig::new(Design::ArcWalk, 4, 5)).unwrap();
        let fast = shot_positions(&c, 300, None, ZenoSchedule::NEVER, 99).unwrap();
        assert_eq!(fast, slow_positions(&c, 300, 99));
    }

    #[test]
    fn ideal_noise_model_is_noise_free() {
        let c = build_circuit(&WalkConfig::new(Design::Arc, 4, 3)).unwrap();
        let a = run_shots(&c, 200, None, ZenoSchedule::NEVER, 5).unwrap();
        let b = run_shots(&c, 200, Some(&NoiseModel::ideal()), ZenoSchedule::NEVER, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arc_counter_mean_tracks_oracle() {
        let c = build_circuit(&WalkConfig::new(Design::Arc, 6, 10)).unwrap();
        let h = run_shots(&c, 1000, None, ZenoSchedule::NEVER, 2024).unwrap();
        let oracle = arc_expected(6, 10, std::f64::consts::FRAC_PI_2);
        assert!((h.mean() - oracle).abs() <= 4.0 * h.stderr(), "{} vs {oracle}", h.mean());
    }

    #[test]
    fn seeded_runs_repeat() {
        let c = build_circuit(&WalkConfig::new(Design::RandomJumpCascading, 5, 6).with_seed(4)).unwrap();
        let noise = NoiseModel::nisq_default();
        let a = run_shots(&c, 64, Some(&noise), ZenoSchedule::every(2), 11).unwrap();
        let b = run_shots(&c, 64, Some(&noise), ZenoSchedule::every(2), 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total_shots(), 64);
    }

    #[test]
    fn binary_counter_is_exact_every_shot() {
        for steps in [0, 1, 5, 17, 63, 64] {
            let c = build_circuit(&WalkConfig::new(Design::Binary, 6, steps)).unwrap();
            let h = run_shots(&c, 20, None, ZenoSchedule::NEVER, 1).unwrap();
            assert_eq!(h.count((steps % 64) as i64), 20, "steps {steps}");
        }
    }

    #[test]
    fn noise_degrades_binary_counter() {
        let c = build_circuit(&WalkConfig::new(Design::Binary, 6, 5)).unwrap();
        let noise = NoiseModel::nisq_default();
        let positions = shot_positions(&c, 200, Some(&noise), ZenoSchedule::NEVER, 3).unwrap();
        let err: f64 = positions.iter().map(|p| (p - 5).abs() as f64).sum::<f64>() / 200.0;
        assert!(err > 0.0);
    }
}
