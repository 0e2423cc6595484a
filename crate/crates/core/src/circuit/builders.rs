use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Circuit, Design, Roles, WalkConfig};
use crate::error::{Error, Result};
use crate::gate::GateOp;

fn distinct(name: &str, qubits: &[usize]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(Error::InvalidTarget(format!("{name} uses qubit {q} more than once")));
        }
    }
    Ok(())
}

fn require_design(cfg: &WalkConfig, allowed: &[Design], builder: &str) -> Result<()> {
    cfg.validate()?;
    if !allowed.contains(&cfg.design) {
        return Err(Error::InvalidConfig(format!("{builder} cannot build design {}", cfg.design)));
    }
    Ok(())
}

/// Rotation applied to counter qubit `k` per step.
fn arc_angle(base_angle: f64, k: usize) -> f64 {
    base_angle / (1u64 << k) as f64
}

/// Two-Toffoli, three-CNOT full adder.
///
/// `out` must start in `|0⟩`. Afterwards `a` and `b` are restored, the
/// `carry_in` wire holds `a ⊕ b ⊕ carry_in` and `out` holds the carry.
pub fn full_adder_block(a: usize, b: usize, carry_in: usize, out: usize) -> Result<Vec<GateOp>> {
    distinct("full adder", &[a, b, carry_in, out])?;
    Ok(vec![
        GateOp::toffoli(a, b, out),
        GateOp::cnot(a, b),
        GateOp::toffoli(b, carry_in, out),
        GateOp::cnot(b, carry_in),
        GateOp::cnot(a, b),
    ])
}

/// Flips `target` when every control is set, using Toffolis only.
///
/// Qubits in `spare` may hold arbitrary values and are returned unchanged.
/// Three or more controls need at least one spare qubit.
pub fn multi_controlled_x(controls: &[usize], target: usize, spare: &[usize]) -> Result<Vec<GateOp>> {
    let mut all = controls.to_vec();
    all.push(target);
    all.extend_from_slice(spare);
    distinct("multi-controlled X", &all)?;
    let mut out = Vec::new();
    mcx_into(controls, target, spare, &mut out)?;
    Ok(out)
}

fn mcx_into(controls: &[usize], target: usize, spare: &[usize], out: &mut Vec<GateOp>) -> Result<()> {
    let m = controls.len();
    match m {
        0 => out.push(GateOp::X(target)),
        1 => out.push(GateOp::cnot(controls[0], target)),
        2 => out.push(GateOp::toffoli(controls[0], controls[1], target)),
        _ if spare.len() >= m - 2 => toffoli_ladder(controls, target, &spare[..m - 2], out),
        _ if !spare.is_empty() => {
            // Split the controls in two halves joined through one spare qubit.
            let link = spare[0];
            let rest = &spare[1..];
            let (low, high) = controls.split_at(m.div_ceil(2));
            let mut high_ctrl = high.to_vec();
            high_ctrl.push(link);
            let mut spare_low: Vec<usize> = high.to_vec();
            spare_low.push(target);
            spare_low.extend_from_slice(rest);
            let mut spare_high: Vec<usize> = low.to_vec();
            spare_high.extend_from_slice(rest);
            for _ in 0..2 {
                mcx_into(low, link, &spare_low, out)?;
                mcx_into(&high_ctrl, target, &spare_high, out)?;
            }
        }
        _ => return Err(Error::NeedsAncilla(m + 1)),
    }
    Ok(())
}

/// Toffoli ladder with `m - 2` borrowed qubits (4(m - 2) Toffolis).
fn toffoli_ladder(controls: &[usize], target: usize, work: &[usize], out: &mut Vec<GateOp>) {
    let m = controls.len();
    let top = GateOp::toffoli(controls[m - 1], work[m - 3], target);
    let bottom = GateOp::toffoli(controls[0], controls[1], work[0]);
    // rungs[j] writes work[j + 1] from controls[j + 2] and work[j]
    let rungs: Vec<GateOp> = (0..m - 3)
        .map(|j| GateOp::toffoli(controls[j + 2], work[j], work[j + 1]))
        .collect();

    out.push(top);
    out.extend(rungs.iter().rev());
    out.push(bottom);
    out.extend(rungs.iter());
    out.push(top);

    out.extend(rungs.iter().rev());
    out.push(bottom);
    out.extend(rungs.iter());
}

/// One `+1 mod 2^width` step on `counter`, as a descending cascade of
/// multi-controlled X gates.
pub fn increment_ops(counter: std::ops::Range<usize>, ancilla: Option<usize>) -> Result<Vec<GateOp>> {
    let qubits: Vec<usize> = counter.collect();
    let width = qubits.len();
    let mut out = Vec::new();
    for k in (1..width).rev() {
        let mut spare: Vec<usize> = qubits[k + 1..].to_vec();
        spare.extend(ancilla);
        mcx_into(&qubits[..k], qubits[k], &spare, &mut out).map_err(|e| match e {
            Error::NeedsAncilla(_) => Error::NeedsAncilla(width),
            other => other,
        })?;
    }
    if let Some(&q0) = qubits.first() {
        out.push(GateOp::X(q0));
    }
    Ok(out)
}

fn binary_layout(width: usize, use_ancilla: bool) -> Result<Circuit> {
    let ancilla = (use_ancilla && width > 2).then_some(width);
    let n = width + usize::from(ancilla.is_some());
    Circuit::new(n, Roles { coin: None, counter: 0..width, ancilla })
}

/// A single increment step on a `width`-qubit counter.
pub fn increment_circuit(width: usize, use_ancilla: bool) -> Result<Circuit> {
    if width == 0 {
        return Err(Error::InvalidConfig("increment width must be at least 1".into()));
    }
    let mut circuit = binary_layout(width, use_ancilla)?;
    circuit.extend(increment_ops(0..width, circuit.roles.ancilla)?)?;
    circuit.end_step()?;
    Ok(circuit)
}

/// Exact binary counter: `cfg.steps` increments.
pub fn binary_counter_circuit(cfg: &WalkConfig) -> Result<Circuit> {
    require_design(cfg, &[Design::Binary], "binary_counter_circuit")?;
    let mut circuit = binary_layout(cfg.counter_width, true)?;
    let step = increment_ops(0..cfg.counter_width, circuit.roles.ancilla)?;
    for _ in 0..cfg.steps {
        circuit.extend(step.iter().copied())?;
        circuit.end_step()?;
    }
    Ok(circuit)
}

/// Arc counter: counter qubit `k` turns by `base_angle / 2^k` each step.
pub fn arc_counter_circuit(cfg: &WalkConfig) -> Result<Circuit> {
    require_design(cfg, &[Design::Arc], "arc_counter_circuit")?;
    let width = cfg.counter_width;
    let mut circuit = Circuit::new(width, Roles::counter_only(width))?;
    for _ in 0..cfg.steps {
        for k in 0..width {
            circuit.push(GateOp::rx(k, arc_angle(cfg.base_angle, k))?)?;
        }
        circuit.end_step()?;
    }
    Ok(circuit)
}

/// Arc walk: a Hadamard coin toss, then coin-controlled arc rotations.
pub fn arc_walk_circuit(cfg: &WalkConfig) -> Result<Circuit> {
    require_design(cfg, &[Design::ArcWalk], "arc_walk_circuit")?;
    let width = cfg.counter_width;
    let coin = width;
    let mut circuit =
        Circuit::new(width + 1, Roles { coin: Some(coin), counter: 0..width, ancilla: None })?;
    for step in 0..cfg.steps {
        if cfg.coin_reset && step > 0 {
            circuit.push(GateOp::Reset(coin))?;
        }
        circuit.push(GateOp::H(coin))?;
        for k in 0..width {
            circuit.push(GateOp::crx(coin, k, arc_angle(cfg.base_angle, k))?)?;
        }
        circuit.end_step()?;
    }
    Ok(circuit)
}

/// Random jump: a Hadamard coin toss, then a coin-controlled flip of a
/// counter qubit drawn from `cfg.jump_weights`.
///
/// The cascading design reserves an ancilla qubit but adds no OR blocks here;
/// see [`with_cascading_disjunctions`].
pub fn random_jump_circuit(cfg: &WalkConfig) -> Result<Circuit> {
    require_design(cfg, &[Design::RandomJump, Design::RandomJumpCascading], "random_jump_circuit")?;
    let width = cfg.counter_width;
    let coin = width;
    let ancilla = (cfg.design == Design::RandomJumpCascading).then_some(width + 1);
    let n = width + 1 + usize::from(ancilla.is_some());
    let mut circuit = Circuit::new(n, Roles { coin: Some(coin), counter: 0..width, ancilla })?;
    let sampler = WeightedIndex::new(&cfg.jump_weights)
        .map_err(|e| Error::InvalidConfig(format!("jump weights: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for step in 0..cfg.steps {
        let target = sampler.sample(&mut rng);
        if cfg.coin_reset && step > 0 {
            circuit.push(GateOp::Reset(coin))?;
        }
        circuit.push(GateOp::H(coin))?;
        circuit.push(GateOp::cnot(coin, target))?;
        circuit.end_step()?;
    }
    Ok(circuit)
}

/// In-place OR: `high ← low ∨ high`, with `low` restored and `ancilla`
/// reset to `|0⟩`.
pub fn or_inplace_block(low: usize, high: usize, ancilla: usize) -> Result<Vec<GateOp>> {
    distinct("OR block", &[low, high, ancilla])?;
    Ok(vec![
        GateOp::X(low),
        GateOp::X(high),
        GateOp::Reset(ancilla),
        GateOp::toffoli(low, high, ancilla),
        GateOp::X(low),
        GateOp::X(high),
        GateOp::X(ancilla),
        GateOp::Swap(high, ancilla),
        GateOp::Reset(ancilla),
    ])
}

/// Inserts OR blocks after each step of `circuit`, joining a lower counter
/// qubit drawn from the jump weights to a uniformly chosen higher one.
pub fn with_cascading_disjunctions(circuit: &Circuit, cfg: &WalkConfig) -> Result<Circuit> {
    let ancilla = circuit.roles.ancilla.ok_or(Error::NoAncilla)?;
    let counter = circuit.roles.counter.clone();
    let width = counter.len();
    if cfg.jump_weights.len() != width {
        return Err(Error::InvalidConfig(format!(
            "{} jump weights for a {width}-qubit counter",
            cfg.jump_weights.len()
        )));
    }
    if !(0.0..=1.0).contains(&cfg.cascade_rate) {
        return Err(Error::InvalidConfig(format!("cascade rate {} not in [0, 1]", cfg.cascade_rate)));
    }
    // Only qubits below the top have a higher partner.
    let lower_sampler = if width >= 2 { WeightedIndex::new(&cfg.jump_weights[..width - 1]).ok() } else { None };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);

    let mut out = Circuit::new(circuit.n_qubits, circuit.roles.clone())?;
    for step in circuit.step_ops() {
        out.extend(step.iter().copied())?;
        if let Some(sampler) = &lower_sampler {
            if rng.random::<f64>() < cfg.cascade_rate {
                let low = sampler.sample(&mut rng);
                let high = rng.random_range(low + 1..width);
                out.extend(or_inplace_block(counter.start + low, counter.start + high, ancilla)?)?;
            }
        }
        out.end_step()?;
    }
    let tail = circuit.step_marks.last().copied().unwrap_or(0);
    out.extend(circuit.ops[tail..].iter().copied())?;
    Ok(out)
}

/// Builds the circuit for `cfg.design`.
pub fn build_circuit(cfg: &WalkConfig) -> Result<Circuit> {
    match cfg.design {
        Design::Binary => binary_counter_circuit(cfg),
        Design::Arc => arc_counter_circuit(cfg),
        Design::ArcWalk => arc_walk_circuit(cfg),
        Design::RandomJump => random_jump_circuit(cfg),
        Design::RandomJumpCascading => {
            let base = random_jump_circuit(cfg)?;
            with_cascading_disjunctions(&base, cfg)
        }
    }
}
