//! Gate-fidelity noise: static fidelity budgets and Monte Carlo Pauli trajectories.

use std::ops::{Add, AddAssign};

use rand::Rng;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{GateOp, Primitive, SingleGate};
use crate::statevector::{Bits, StateVector};

/// Per-gate-class fidelities plus a symmetric readout flip probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    fidelity_1q: f64,
    fidelity_2q: f64,
    readout_flip: f64,
}

impl NoiseModel {
    pub fn new(fidelity_1q: f64, fidelity_2q: f64, readout_flip: f64) -> Result<Self> {
        let in_unit = |f: f64| f > 0.0 && f <= 1.0;
        if !in_unit(fidelity_1q) {
            return Err(Error::InvalidNoise(format!("fidelity-1q {fidelity_1q} not in (0, 1]")));
        }
        if !in_unit(fidelity_2q) {
            return Err(Error::InvalidNoise(format!("fidelity-2q {fidelity_2q} not in (0, 1]")));
        }
        if !(0.0..1.0).contains(&readout_flip) && readout_flip != 1.0 {
            return Err(Error::InvalidNoise(format!("readout-flip {readout_flip} not in [0, 1]")));
        }
        Ok(Self { fidelity_1q, fidelity_2q, readout_flip })
    }

    /// No gate or readout error.
    pub fn ideal() -> Self {
        Self { fidelity_1q: 1.0, fidelity_2q: 1.0, readout_flip: 0.0 }
    }

    /// 99.7% single-qubit and 97.8% two-qubit gate fidelity.
    pub fn nisq_default() -> Self {
        Self { fidelity_1q: 0.997, fidelity_2q: 0.978, readout_flip: 0.0 }
    }

    /// Default single-qubit fidelity with a 99.9% two-qubit gate.
    pub fn high_end() -> Self {
        Self { fidelity_1q: 0.997, fidelity_2q: 0.999, readout_flip: 0.0 }
    }

    pub fn fidelity_1q(&self) -> f64 {
        self.fidelity_1q
    }

    pub fn fidelity_2q(&self) -> f64 {
        self.fidelity_2q
    }

    pub fn readout_flip(&self) -> f64 {
        self.readout_flip
    }

    pub fn is_ideal(&self) -> bool {
        self.fidelity_1q == 1.0 && self.fidelity_2q == 1.0 && self.readout_flip == 0.0
    }

    fn error_prob(&self, p: &Primitive) -> f64 {
        match p {
            Primitive::Single(_, g) if !g.is_physical() => 0.0,
            Primitive::Single(..) => 1.0 - self.fidelity_1q,
            Primitive::Cnot(..) => 1.0 - self.fidelity_2q,
        }
    }
}

/// Gate totals after expansion to the {single-qubit, CNOT} basis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GateCensus {
    pub count_1q: u64,
    pub count_2q: u64,
}

impl Add for GateCensus {
    type Output = GateCensus;

    fn add(self, rhs: GateCensus) -> GateCensus {
        GateCensus {
            count_1q: self.count_1q + rhs.count_1q,
            count_2q: self.count_2q + rhs.count_2q,
        }
    }
}

impl AddAssign for GateCensus {
    fn add_assign(&mut self, rhs: GateCensus) {
        *self = *self + rhs;
    }
}

/// Counts physical gates in `ops`. Measure and reset are not gates and
/// contribute nothing; `S` frame changes inside `CRx` are virtual.
pub fn census_ops<'a, I>(ops: I) -> GateCensus
where
    I: IntoIterator<Item = &'a GateOp>,
{
    let mut total = GateCensus::default();
    for op in ops {
        for p in op.decompose() {
            match p {
                Primitive::Single(_, g) if g.is_physical() => total.count_1q += 1,
                Primitive::Single(..) => {}
                Primitive::Cnot(..) => total.count_2q += 1,
            }
        }
    }
    total
}

pub fn census(circuit: &Circuit) -> GateCensus {
    census_ops(circuit.ops())
}

/// Probability that no gate in the census fails.
pub fn estimate_fidelity(census: GateCensus, model: &NoiseModel) -> f64 {
    model.fidelity_1q.powf(census.count_1q as f64) * model.fidelity_2q.powf(census.count_2q as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pauli {
    X,
    Y,
    Z,
}

fn apply_pauli(state: &mut StateVector, q: usize, pauli: Pauli) {
    match pauli {
        Pauli::X => state.apply_primitive(&Primitive::Single(q, SingleGate::PauliX)),
        // Rx(π) followed by Z: amplitudes (a, b) -> (i·b, -i·a).
        Pauli::Y => {
            state.apply_primitive(&Primitive::Single(q, SingleGate::Rx(std::f64::consts::PI)));
            state.apply_primitive(&Primitive::Single(q, SingleGate::PauliZ));
        }
        Pauli::Z => state.apply_primitive(&Primitive::Single(q, SingleGate::PauliZ)),
    }
}

/// Applies `op` along one stochastic Pauli trajectory.
///
/// Each constituent of the op's decomposition may fail independently on each
/// of its qubits with probability `1 - fidelity` of its class, in which case a
/// uniformly chosen X, Y or Z follows it. When nothing fails the op is applied
/// directly, so unit fidelities reproduce [`StateVector::apply`] exactly.
pub fn noisy_apply<R: Rng + ?Sized>(
    state: &mut StateVector,
    op: &GateOp,
    model: &NoiseModel,
    rng: &mut R,
) -> Result<()> {
    op.validate(state.n_qubits())?;
    if !op.is_unitary() {
        return Err(Error::NotUnitary(op.name()));
    }
    let prims = op.decompose();
    let mut faults: Vec<(usize, usize, Pauli)> = Vec::new();
    for (i, p) in prims.iter().enumerate() {
        let prob = model.error_prob(p);
        if prob <= 0.0 {
            continue;
        }
        let qubits: &[usize] = match p {
            Primitive::Single(q, _) => std::slice::from_ref(q),
            Primitive::Cnot(c, t) => &[*c, *t],
        };
        for &q in qubits {
            if rng.random::<f64>() < prob {
                let pauli = match rng.random_range(0..3u8) {
                    0 => Pauli::X,
                    1 => Pauli::Y,
                    _ => Pauli::Z,
                };
                faults.push((i, q, pauli));
            }
        }
    }
    if faults.is_empty() {
        return state.apply(op);
    }
    let mut pending = faults.iter().peekable();
    for (i, p) in prims.iter().enumerate() {
        state.apply_primitive(p);
        while let Some(&&(at, q, pauli)) = pending.peek() {
            if at != i {
                break;
            }
            apply_pauli(state, q, pauli);
            pending.next();
        }
    }
    Ok(())
}

/// Flips each bit independently with probability `readout_flip`.
pub fn apply_readout_noise<R: Rng + ?Sized>(bits: Bits, model: &NoiseModel, rng: &mut R) -> Bits {
    if model.readout_flip <= 0.0 {
        return bits;
    }
    let mut out = bits;
    for k in 0..bits.len() {
        if rng.random::<f64>() < model.readout_flip {
            out.flip(k);
        }
    }
    out
}
