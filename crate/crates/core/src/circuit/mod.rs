//! Circuits over named qubit roles and the builders for every counter design.

mod builders;
mod text;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::GateOp;
use crate::statevector::DEFAULT_MAX_QUBITS;

pub use builders::{
    arc_counter_circuit, arc_walk_circuit, binary_counter_circuit, build_circuit,
    full_adder_block, increment_circuit, increment_ops, multi_controlled_x, or_inplace_block,
    random_jump_circuit, with_cascading_disjunctions,
};
pub use text::{parse_text, to_text};

/// Which qubits play which part in a walk circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Roles {
    pub coin: Option<usize>,
    pub counter: Range<usize>,
    pub ancilla: Option<usize>,
}

impl Roles {
    pub fn counter_only(width: usize) -> Self {
        Self { coin: None, counter: 0..width, ancilla: None }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let counter = &self.counter;
        if counter.start >= counter.end || counter.end > n_qubits {
            return Err(Error::InvalidConfig(format!(
                "counter range {}..{} invalid for {n_qubits} qubits",
                counter.start, counter.end
            )));
        }
        let singles: Vec<(&str, usize)> = [("coin", self.coin), ("ancilla", self.ancilla)]
            .into_iter()
            .filter_map(|(name, q)| q.map(|q| (name, q)))
            .collect();
        for (name, q) in &singles {
            if *q >= n_qubits || counter.contains(q) {
                return Err(Error::InvalidConfig(format!("{name} qubit {q} overlaps or is out of range")));
            }
        }
        if let [(_, a), (_, b)] = singles[..] {
            if a == b {
                return Err(Error::InvalidConfig("coin and ancilla share a qubit".into()));
            }
        }
        Ok(())
    }
}

/// Ordered gate list with step boundaries.
///
/// `step_marks[i]` is the op offset at which step `i + 1` ends; marks are
/// strictly increasing and never exceed the op count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    n_qubits: usize,
    roles: Roles,
    #[serde(skip)]
    ops: Vec<GateOp>,
    step_marks: Vec<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize, roles: Roles) -> Result<Self> {
        if n_qubits == 0 || n_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::OutOfRange { requested: n_qubits, max: DEFAULT_MAX_QUBITS });
        }
        roles.validate(n_qubits)?;
        Ok(Self { n_qubits, roles, ops: Vec::new(), step_marks: Vec::new() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn roles(&self) -> &Roles {
        &self.roles
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn step_marks(&self) -> &[usize] {
        &self.step_marks
    }

    pub fn steps(&self) -> usize {
        self.step_marks.len()
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = GateOp>>(&mut self, ops: I) -> Result<()> {
        ops.into_iter().try_for_each(|op| self.push(op))
    }

    /// Closes the current step at the present op count.
    pub fn end_step(&mut self) -> Result<()> {
        let at = self.ops.len();
        if self.step_marks.last().is_some_and(|&last| last >= at) {
            return Err(Error::InvalidConfig(format!("empty step ending at op {at}")));
        }
        self.step_marks.push(at);
        Ok(())
    }

    /// Ops belonging to each step, in order. Ops after the final mark are not included.
    pub fn step_ops(&self) -> impl Iterator<Item = &[GateOp]> + '_ {
        let starts = std::iter::once(0).chain(self.step_marks.iter().copied());
        starts.zip(self.step_marks.iter().copied()).map(move |(a, b)| &self.ops[a..b])
    }

    /// Appends `other`, shifting its step marks.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::InvalidConfig(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        let offset = self.ops.len();
        if let (Some(&last), Some(&first)) = (self.step_marks.last(), other.step_marks.first()) {
            if offset + first <= last {
                return Err(Error::InvalidConfig("appended step would be empty".into()));
            }
        }
        self.ops.extend_from_slice(&other.ops);
        self.step_marks.extend(other.step_marks.iter().map(|m| m + offset));
        Ok(())
    }

    /// True when the circuit contains measure or reset operations.
    pub fn has_mid_circuit_ops(&self) -> bool {
        self.ops.iter().any(|op| !op.is_unitary())
    }
}

/// Counter designs available to the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Design {
    Binary,
    Arc,
    ArcWalk,
    RandomJump,
    RandomJumpCascading,
}

impl Design {
    pub const ALL: [Design; 5] = [
        Design::Binary,
        Design::Arc,
        Design::ArcWalk,
        Design::RandomJump,
        Design::RandomJumpCascading,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Design::Binary => "binary",
            Design::Arc => "arc",
            Design::ArcWalk => "arc_walk",
            Design::RandomJump => "random_jump",
            Design::RandomJumpCascading => "random_jump_cascading",
        }
    }

    /// Designs whose circuit construction draws classical randomness.
    pub fn is_random(&self) -> bool {
        matches!(self, Design::RandomJump | Design::RandomJumpCascading)
    }
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Design::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| Error::UnknownDesign(s.to_string()))
    }
}

/// `{1/2, 1/4, 1/8, …}` over `width` qubits, renormalized to sum to 1.
pub fn default_jump_weights(width: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..width).map(|k| 0.5f64.powi(k as i32 + 1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// Parameters shared by the walk circuit builders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkConfig {
    pub counter_width: usize,
    pub steps: usize,
    /// Rotation of counter qubit 0 per step; qubit `k` turns by `base_angle / 2^k`.
    pub base_angle: f64,
    pub design: Design,
    pub seed: u64,
    pub jump_weights: Vec<f64>,
    /// Probability of inserting an OR block after a step (cascading design).
    pub cascade_rate: f64,
    /// Reset the coin to `|0⟩` before every toss after the first, making each
    /// toss a fresh classical coin. Off by default: the coin stays coherent.
    pub coin_reset: bool,
}

impl WalkConfig {
    pub fn new(design: Design, counter_width: usize, steps: usize) -> Self {
        Self {
            counter_width,
            steps,
            base_angle: std::f64::consts::FRAC_PI_2,
            design,
            seed: 0,
            jump_weights: default_jump_weights(counter_width),
            cascade_rate: 1.0,
            coin_reset: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_base_angle(mut self, base_angle: f64) -> Self {
        self.base_angle = base_angle;
        self
    }

    pub fn with_coin_reset(mut self, coin_reset: bool) -> Self {
        self.coin_reset = coin_reset;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.counter_width == 0 || self.counter_width + 2 > DEFAULT_MAX_QUBITS {
            return Err(Error::InvalidConfig(format!(
                "counter width {} must be in 1..={}",
                self.counter_width,
                DEFAULT_MAX_QUBITS - 2
            )));
        }
        if !(self.base_angle.is_finite() && self.base_angle > 0.0) {
            return Err(Error::InvalidConfig(format!("base angle {} must be positive", self.base_angle)));
        }
        if self.jump_weights.len() != self.counter_width {
            return Err(Error::InvalidConfig(format!(
                "{} jump weights for a {}-qubit counter",
                self.jump_weights.len(),
                self.counter_width
            )));
        }
        if self.jump_weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidConfig("jump weights must be nonnegative".into()));
        }
        let total: f64 = self.jump_weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!("jump weights sum to {total}, not 1")));
        }
        if !(0.0..=1.0).contains(&self.cascade_rate) {
            return Err(Error::InvalidConfig(format!("cascade rate {} not in [0, 1]", self.cascade_rate)));
        }
        Ok(())
    }
}
