//! Dense statevector simulation of quantum-walk counters, with a Pauli gate
//! noise model, circuit builders, shot-based walk experiments and the
//! classical market statistics the walks are compared against.
//!
//! Qubit 0 is the least significant bit of every basis index.

pub mod circuit;
pub mod error;
pub mod gate;
pub mod market;
pub mod noise;
pub mod statevector;
pub mod walk;

pub use circuit::{build_circuit, Circuit, Design, Roles, WalkConfig};
pub use error::{Error, Result};
pub use gate::{GateOp, Primitive, SingleGate};
pub use noise::{census, estimate_fidelity, GateCensus, NoiseModel};
pub use statevector::{Bits, StateVector, DEFAULT_MAX_QUBITS};
pub use walk::{distance_table, run_shots, zeno_experiment, ShotHistogram, ZenoSchedule};
