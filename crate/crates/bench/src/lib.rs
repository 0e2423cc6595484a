//! Fixed workloads shared by the benchmarks, kept here so they can also be
//! exercised by `cargo test`.

use qwalk_core::circuit::{build_circuit, Circuit, Design, WalkConfig};
use qwalk_core::gate::GateOp;
use qwalk_core::statevector::StateVector;

/// An equal superposition over `n` qubits.
pub fn spread_state(n: usize) -> StateVector {
    let mut s = StateVector::new(n).expect("qubit count within limits");
    for q in 0..n {
        s.apply(&GateOp::H(q)).expect("valid qubit");
    }
    s
}

/// A gate mix touching every qubit with one- two- and three-qubit gates.
pub fn gate_layer(n: usize) -> Vec<GateOp> {
    assert!(n >= 3, "layer needs three qubits");
    let mut ops = Vec::new();
    for q in 0..n {
        ops.push(GateOp::rx(q, 0.1 + q as f64).expect("finite angle"));
        ops.push(GateOp::cnot(q, (q + 1) % n));
    }
    ops.push(GateOp::crx(0, n - 1, 0.7).expect("finite angle"));
    ops.push(GateOp::toffoli(0, 1, 2));
    ops
}

pub fn walk_circuit(design: Design, width: usize, steps: usize) -> Circuit {
    build_circuit(&WalkConfig::new(design, width, steps).with_seed(1)).expect("valid walk configuration")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_build() {
        let mut s = spread_state(5);
        for op in gate_layer(5) {
            s.apply(&op).unwrap();
        }
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert_eq!(walk_circuit(Design::Arc, 8, 20).steps(), 20);
    }
}
