//! Gate operations and their decomposition into the {single-qubit, CNOT} basis.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::fmt;
use std::ops::Deref;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Period of the `Rx` family. Angles are reduced modulo this value.
pub const RX_PERIOD: f64 = 4.0 * PI;

pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// One operation in a circuit.
///
/// Qubit arguments are indices into the register; qubit 0 is the least
/// significant bit of a basis index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    X(usize),
    H(usize),
    Rx { target: usize, theta: f64 },
    Cnot { control: usize, target: usize },
    CRx { control: usize, target: usize, theta: f64 },
    Toffoli { controls: [usize; 2], target: usize },
    Swap(usize, usize),
    Measure { qubit: usize, slot: Option<usize> },
    Reset(usize),
}

/// Up to three qubit indices, in argument order.
#[derive(Debug, Clone, Copy)]
pub struct QubitList {
    buf: [usize; 3],
    len: usize,
}

impl Deref for QubitList {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.buf[..self.len]
    }
}

impl QubitList {
    fn of(qs: &[usize]) -> Self {
        let mut buf = [0; 3];
        buf[..qs.len()].copy_from_slice(qs);
        Self { buf, len: qs.len() }
    }
}

fn reduce_angle(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::InvalidAngle(theta));
    }
    Ok(theta.rem_euclid(RX_PERIOD))
}

impl GateOp {
    pub fn rx(target: usize, theta: f64) -> Result<Self> {
        Ok(GateOp::Rx { target, theta: reduce_angle(theta)? })
    }

    pub fn crx(control: usize, target: usize, theta: f64) -> Result<Self> {
        Ok(GateOp::CRx { control, target, theta: reduce_angle(theta)? })
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp::Cnot { control, target }
    }

    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Self {
        GateOp::Toffoli { controls: [c0, c1], target }
    }

    pub fn measure(qubit: usize) -> Self {
        GateOp::Measure { qubit, slot: None }
    }

    /// Upper-case mnemonic used by the circuit text format.
    pub fn name(&self) -> &'static str {
        match self {
            GateOp::X(_) => "X",
            GateOp::H(_) => "H",
            GateOp::Rx { .. } => "RX",
            GateOp::Cnot { .. } => "CNOT",
            GateOp::CRx { .. } => "CRX",
            GateOp::Toffoli { .. } => "TOFFOLI",
            GateOp::Swap(..) => "SWAP",
            GateOp::Measure { .. } => "MEASURE",
            GateOp::Reset(_) => "RESET",
        }
    }

    /// Qubits touched by the op; controls come before the target.
    pub fn qubits(&self) -> QubitList {
        match *self {
            GateOp::X(q) | GateOp::H(q) | GateOp::Reset(q) => QubitList::of(&[q]),
            GateOp::Rx { target, .. } => QubitList::of(&[target]),
            GateOp::Measure { qubit, .. } => QubitList::of(&[qubit]),
            GateOp::Cnot { control, target } | GateOp::CRx { control, target, .. } => {
                QubitList::of(&[control, target])
            }
            GateOp::Toffoli { controls, target } => {
                QubitList::of(&[controls[0], controls[1], target])
            }
            GateOp::Swap(a, b) => QubitList::of(&[a, b]),
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match *self {
            GateOp::Rx { theta, .. } | GateOp::CRx { theta, .. } => Some(theta),
            _ => None,
        }
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self, GateOp::Measure { .. } | GateOp::Reset(_))
    }

    /// Checks that targets are distinct, in range, and that angles are finite.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::InvalidTarget(format!(
                    "{} qubit {q} out of range for {n_qubits} qubits",
                    self.name()
                )));
            }
            if qs[..i].contains(&q) {
                return Err(Error::InvalidTarget(format!(
                    "{} uses qubit {q} more than once",
                    self.name()
                )));
            }
        }
        if let Some(theta) = self.theta() {
            if !theta.is_finite() {
                return Err(Error::InvalidAngle(theta));
            }
        }
        Ok(())
    }

    /// Expands the op into single-qubit gates and CNOTs.
    ///
    /// `Toffoli` uses the standard 6-CNOT, 7-T network; `CRx` uses two CNOTs and
    /// two `Ry` rotations inside an `S` frame change; `SWAP` uses three CNOTs.
    /// Measure and reset have no unitary expansion and return an empty list.
    pub fn decompose(&self) -> Vec<Primitive> {
        use Primitive::{Cnot, Single};
        use SingleGate::*;
        match *self {
            GateOp::X(q) => vec![Single(q, PauliX)],
            GateOp::H(q) => vec![Single(q, Hadamard)],
            GateOp::Rx { target, theta } => vec![Single(target, Rx(theta))],
            GateOp::Cnot { control, target } => vec![Cnot(control, target)],
            GateOp::CRx { control, target, theta } => vec![
                Single(target, S),
                Cnot(control, target),
                Single(target, Ry(-theta / 2.0)),
                Cnot(control, target),
                Single(target, Ry(theta / 2.0)),
                Single(target, Sdg),
            ],
            GateOp::Toffoli { controls: [a, b], target: t } => vec![
                Single(t, Hadamard),
                Cnot(b, t),
                Single(t, Tdg),
                Cnot(a, t),
                Single(t, T),
                Cnot(b, t),
                Single(t, Tdg),
                Cnot(a, t),
                Single(b, T),
                Single(t, T),
                Single(t, Hadamard),
                Cnot(a, b),
                Single(a, T),
                Single(b, Tdg),
                Cnot(a, b),
            ],
            GateOp::Swap(a, b) => vec![Cnot(a, b), Cnot(b, a), Cnot(a, b)],
            GateOp::Measure { .. } | GateOp::Reset(_) => Vec::new(),
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for q in self.qubits().iter() {
            write!(f, " {q}")?;
        }
        if let Some(theta) = self.theta() {
            write!(f, " {theta}")?;
        }
        if let GateOp::Measure { slot: Some(slot), .. } = self {
            write!(f, " c{slot}")?;
        }
        Ok(())
    }
}

/// Single-qubit gates appearing in decompositions.
///
/// `Rx` and `Ry` follow the same sign convention: `exp(+i θ/2 P)`, so that
/// `Rx(θ)` has `cos θ/2` on the diagonal and `i sin θ/2` off it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingleGate {
    PauliX,
    PauliZ,
    Hadamard,
    S,
    Sdg,
    T,
    Tdg,
    Rx(f64),
    Ry(f64),
}

impl SingleGate {
    pub fn matrix(&self) -> Matrix2 {
        match *self {
            SingleGate::PauliX => [[ZERO, ONE], [ONE, ZERO]],
            SingleGate::PauliZ => [[ONE, ZERO], [ZERO, -ONE]],
            SingleGate::Hadamard => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            SingleGate::S => [[ONE, ZERO], [ZERO, I]],
            SingleGate::Sdg => [[ONE, ZERO], [ZERO, -I]],
            SingleGate::T => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, FRAC_PI_4)]],
            SingleGate::Tdg => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, -FRAC_PI_4)]],
            SingleGate::Rx(theta) => rx_matrix(theta),
            SingleGate::Ry(theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                [
                    [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
                    [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
                ]
            }
        }
    }

    /// Whether the gate costs a physical operation. `S`/`S†` frame changes
    /// are virtual phase updates and are neither counted nor noised.
    pub fn is_physical(&self) -> bool {
        !matches!(self, SingleGate::S | SingleGate::Sdg)
    }
}

pub fn rx_matrix(theta: f64) -> Matrix2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(0.0, s)],
        [Complex64::new(0.0, s), Complex64::new(c, 0.0)],
    ]
}

/// Element of the {single-qubit, CNOT} basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Single(usize, SingleGate),
    Cnot(usize, usize),
}
