//! Dense complex statevector with gate application and projective measurement.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gate::{GateOp, Matrix2, Primitive, SingleGate};

/// Widest register the simulator accepts unless a caller raises the limit.
pub const DEFAULT_MAX_QUBITS: usize = 20;

/// Branch probabilities at or below this are treated as impossible outcomes.
const MIN_BRANCH_NORM: f64 = 1e-300;

/// Measured classical bits. Bit `k` holds qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bits {
    value: usize,
    len: usize,
}

impl Bits {
    pub fn new(value: usize, len: usize) -> Self {
        debug_assert!(len >= usize::BITS as usize || value >> len == 0);
        Self { value, len }
    }

    /// Parses a string whose first character is qubit 0.
    pub fn from_lsb_first(s: &str) -> Option<Self> {
        let mut value = 0;
        for (k, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => value |= 1 << k,
                _ => return None,
            }
        }
        Some(Self { value, len: s.len() })
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> u8 {
        ((self.value >> k) & 1) as u8
    }

    pub fn flip(&mut self, k: usize) {
        self.value ^= 1 << k;
    }
}

/// Displays qubit 0 first.
impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            f.write_str(if self.get(k) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Outcome of a single-qubit measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub slot: usize,
    pub qubit: usize,
    pub outcome: u8,
}

/// Picks the first index whose cumulative weight exceeds `r`.
///
/// Falls back to the last index with nonzero weight so that rounding in the
/// cumulative sum never selects an impossible outcome.
pub fn sample_index<I>(weights: I, r: f64) -> usize
where
    I: IntoIterator<Item = f64>,
{
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, w) in weights.into_iter().enumerate() {
        if w > 0.0 {
            last_nonzero = i;
        }
        acc += w;
        if r < acc && w > 0.0 {
            return i;
        }
    }
    last_nonzero
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn new(n_qubits: usize) -> Result<Self> {
        Self::with_max(n_qubits, DEFAULT_MAX_QUBITS)
    }

    pub fn with_max(n_qubits: usize, max_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > max_qubits {
            return Err(Error::OutOfRange { requested: n_qubits, max: max_qubits });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut state = Self::new(n_qubits)?;
        if index >= state.amps.len() {
            return Err(Error::InvalidTarget(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        state.amps[0] = Complex64::new(0.0, 0.0);
        state.amps[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Wraps an amplitude array. The length must be a power of two; the
    /// vector is normalized to unit norm.
    pub fn from_amplitudes(mut amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidTarget(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::OutOfRange { requested: n_qubits, max: DEFAULT_MAX_QUBITS });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm <= MIN_BRANCH_NORM {
            return Err(Error::DegenerateState(norm));
        }
        let scale = 1.0 / norm.sqrt();
        amps.iter_mut().for_each(|a| *a *= scale);
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probability that qubit `q` reads 1.
    pub fn prob_one(&self, q: usize) -> Result<f64> {
        self.check_qubit(q)?;
        let bit = 1 << q;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Compares two states up to a global phase.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        let Some((k, _)) = self
            .amps
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        else {
            return false;
        };
        if other.amps[k].norm() <= tol {
            return false;
        }
        let phase = other.amps[k] / self.amps[k];
        let phase = phase / phase.norm();
        self.amps
            .iter()
            .zip(&other.amps)
            .all(|(a, b)| (a * phase - b).norm() <= tol)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::InvalidTarget(format!(
                "qubit {q} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// Applies a unitary op in place.
    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        match *op {
            GateOp::X(q) => self.flip(q, 0),
            GateOp::H(q) => self.apply_single(q, &SingleGate::Hadamard.matrix(), 0),
            GateOp::Rx { target, theta } => {
                self.apply_single(target, &SingleGate::Rx(theta).matrix(), 0)
            }
            GateOp::Cnot { control, target } => self.flip(target, 1 << control),
            GateOp::CRx { control, target, theta } => {
                self.apply_single(target, &SingleGate::Rx(theta).matrix(), 1 << control)
            }
            GateOp::Toffoli { controls: [a, b], target } => {
                self.flip(target, (1 << a) | (1 << b))
            }
            GateOp::Swap(a, b) => self.swap(a, b),
            GateOp::Measure { .. } => return Err(Error::NotUnitary("MEASURE")),
            GateOp::Reset(_) => return Err(Error::NotUnitary("RESET")),
        }
        Ok(())
    }

    pub(crate) fn apply_primitive(&mut self, p: &Primitive) {
        match *p {
            Primitive::Single(q, SingleGate::PauliX) => self.flip(q, 0),
            Primitive::Single(q, g) => self.apply_single(q, &g.matrix(), 0),
            Primitive::Cnot(c, t) => self.flip(t, 1 << c),
        }
    }

    /// Applies `m` to `target` on every basis pair whose control bits are all set.
    pub(crate) fn apply_single(&mut self, target: usize, m: &Matrix2, control_mask: usize) {
        let bit = 1 << target;
        for i in 0..self.amps.len() {
            if i & bit != 0 || i & control_mask != control_mask {
                continue;
            }
            let j = i | bit;
            let (a, b) = (self.amps[i], self.amps[j]);
            self.amps[i] = m[0][0] * a + m[0][1] * b;
            self.amps[j] = m[1][0] * a + m[1][1] * b;
        }
    }

    /// Controlled bit flip as an exact amplitude permutation.
    fn flip(&mut self, target: usize, control_mask: usize) {
        let bit = 1 << target;
        for i in 0..self.amps.len() {
            if i & bit == 0 && i & control_mask == control_mask {
                self.amps.swap(i, i | bit);
            }
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        let (abit, bbit) = (1 << a, 1 << b);
        for i in 0..self.amps.len() {
            if i & abit != 0 && i & bbit == 0 {
                self.amps.swap(i, i ^ abit ^ bbit);
            }
        }
    }

    /// Samples every qubit, collapsing onto the observed basis state.
    pub fn measure_all<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Bits {
        let r: f64 = rng.random();
        let index = sample_index(self.amps.iter().map(|a| a.norm_sqr()), r);
        let kept = self.amps[index];
        let kept = if kept.norm() > 0.0 { kept / kept.norm() } else { Complex64::new(1.0, 0.0) };
        self.amps.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        self.amps[index] = kept;
        Bits::new(index, self.n_qubits)
    }

    /// Measures qubit `q`, projecting and renormalizing the state.
    pub fn measure_qubit<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<u8> {
        let p1 = self.prob_one(q)?;
        let r: f64 = rng.random();
        let outcome = u8::from(r < p1);
        self.collapse(q, outcome)?;
        Ok(outcome)
    }

    /// Projects qubit `q` onto `outcome`, returning the branch probability.
    pub fn collapse(&mut self, q: usize, outcome: u8) -> Result<f64> {
        self.check_qubit(q)?;
        let bit = 1 << q;
        let want = if outcome == 1 { bit } else { 0 };
        let branch: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == want)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if branch <= MIN_BRANCH_NORM {
            return Err(Error::DegenerateState(branch));
        }
        let scale = 1.0 / branch.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit == want {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(branch)
    }

    /// Measures `q` and flips it back to `|0⟩` when the outcome was 1.
    /// Returns the measured value.
    pub fn reset_qubit<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<u8> {
        let outcome = self.measure_qubit(q, rng)?;
        if outcome == 1 {
            self.flip(q, 0);
        }
        Ok(outcome)
    }
}
