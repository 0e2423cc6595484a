//! Line-oriented circuit text: one op per line, `GATE q0 [q1 [q2]] [theta]`,
//! with `# step N` markers opening each step.
//!
//! Header comments record the register layout:
//!
//! ```text
//! # qubits 7
//! # counter 0..6
//! # coin 6
//! # step 1
//! H 6
//! CRX 6 0 1.5707963267948966
//! ```
//!
//! Without a `qubits` header the register is sized to the largest index used
//! and treated as all counter. Other comment lines are ignored.

use std::fmt::Write as _;

use super::{Circuit, Roles};
use crate::error::{Error, Result};
use crate::gate::GateOp;

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    let roles = circuit.roles();
    let _ = writeln!(out, "# qubits {}", circuit.n_qubits());
    let _ = writeln!(out, "# counter {}..{}", roles.counter.start, roles.counter.end);
    if let Some(coin) = roles.coin {
        let _ = writeln!(out, "# coin {coin}");
    }
    if let Some(ancilla) = roles.ancilla {
        let _ = writeln!(out, "# ancilla {ancilla}");
    }
    for (i, step) in circuit.step_ops().enumerate() {
        let _ = writeln!(out, "# step {}", i + 1);
        for op in step {
            let _ = writeln!(out, "{op}");
        }
    }
    let tail = circuit.step_marks().last().copied().unwrap_or(0);
    for op in &circuit.ops()[tail..] {
        let _ = writeln!(out, "{op}");
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::CircuitParse { line, message: message.into() }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("bad qubit index {tok:?}")))
}

fn parse_op(text: &str, line: usize) -> Result<GateOp> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let (name, args) = toks.split_first().ok_or_else(|| parse_err(line, "empty op"))?;
    let name = name.to_ascii_uppercase();
    let arity = |n: usize| -> Result<Vec<usize>> {
        if args.len() < n {
            return Err(parse_err(line, format!("{name} needs {n} qubit arguments")));
        }
        args[..n].iter().map(|t| parse_index(t, line)).collect()
    };
    let theta_at = |i: usize| -> Result<f64> {
        let tok = args.get(i).ok_or_else(|| parse_err(line, format!("{name} needs an angle")))?;
        tok.parse().map_err(|_| parse_err(line, format!("bad angle {tok:?}")))
    };
    let expect_len = |n: usize| -> Result<()> {
        if args.len() != n {
            return Err(parse_err(line, format!("{name} takes {n} arguments, got {}", args.len())));
        }
        Ok(())
    };
    let op = match name.as_str() {
        "X" => {
            expect_len(1)?;
            GateOp::X(arity(1)?[0])
        }
        "H" => {
            expect_len(1)?;
            GateOp::H(arity(1)?[0])
        }
        "RESET" => {
            expect_len(1)?;
            GateOp::Reset(arity(1)?[0])
        }
        "RX" => {
            expect_len(2)?;
            GateOp::rx(arity(1)?[0], theta_at(1)?)?
        }
        "CNOT" => {
            expect_len(2)?;
            let q = arity(2)?;
            GateOp::cnot(q[0], q[1])
        }
        "CRX" => {
            expect_len(3)?;
            let q = arity(2)?;
            GateOp::crx(q[0], q[1], theta_at(2)?)?
        }
        "SWAP" => {
            expect_len(2)?;
            let q = arity(2)?;
            GateOp::Swap(q[0], q[1])
        }
        "TOFFOLI" => {
            expect_len(3)?;
            let q = arity(3)?;
            GateOp::toffoli(q[0], q[1], q[2])
        }
        "MEASURE" => {
            let qubit = arity(1)?[0];
            let slot = match args.get(1) {
                None => None,
                Some(tok) => {
                    let digits = tok.strip_prefix('c').unwrap_or(tok);
                    Some(parse_index(digits, line)?)
                }
            };
            if args.len() > 2 {
                return Err(parse_err(line, "MEASURE takes a qubit and an optional slot"));
            }
            GateOp::Measure { qubit, slot }
        }
        other => return Err(parse_err(line, format!("unknown gate {other:?}"))),
    };
    Ok(op)
}

fn parse_range(s: &str, line: usize) -> Result<std::ops::Range<usize>> {
    let (a, b) = s.split_once("..").ok_or_else(|| parse_err(line, format!("bad range {s:?}")))?;
    Ok(parse_index(a.trim(), line)?..parse_index(b.trim(), line)?)
}

pub fn parse_text(text: &str) -> Result<Circuit> {
    let mut n_qubits: Option<usize> = None;
    let mut counter = None;
    let mut coin = None;
    let mut ancilla = None;
    let mut ops: Vec<(usize, GateOp)> = Vec::new();
    let mut marks: Vec<usize> = Vec::new();
    let mut steps_seen = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            let (Some(key), Some(value), None) = (words.next(), words.next(), words.next()) else {
                continue;
            };
            match key {
                "qubits" => n_qubits = Some(parse_index(value, line)?),
                "counter" => counter = Some(parse_range(value, line)?),
                "coin" => coin = Some(parse_index(value, line)?),
                "ancilla" => ancilla = Some(parse_index(value, line)?),
                "step" => {
                    let n = parse_index(value, line)?;
                    if n != steps_seen + 1 {
                        return Err(parse_err(line, format!("expected step {}, found {n}", steps_seen + 1)));
                    }
                    if steps_seen > 0 {
                        marks.push(ops.len());
                    }
                    steps_seen = n;
                }
                _ => {}
            }
            continue;
        }
        ops.push((line, parse_op(trimmed, line)?));
    }
    if steps_seen > 0 {
        marks.push(ops.len());
    }

    let n = match n_qubits {
        Some(n) => n,
        None => ops
            .iter()
            .flat_map(|(_, op)| op.qubits().iter().copied().collect::<Vec<_>>())
            .max()
            .map_or(1, |m| m + 1),
    };
    let roles = Roles { coin, counter: counter.unwrap_or(0..n), ancilla };
    let mut circuit = Circuit::new(n, roles)?;
    let mut next_mark = marks.iter().peekable();
    for (idx, (line, op)) in ops.into_iter().enumerate() {
        while next_mark.peek().is_some_and(|&&m| m == idx) {
            circuit.end_step().map_err(|e| parse_err(line, e.to_string()))?;
            next_mark.next();
        }
        circuit.push(op).map_err(|e| parse_err(line, e.to_string()))?;
    }
    for _ in next_mark {
        circuit.end_step().map_err(|e| parse_err(text.lines().count(), e.to_string()))?;
    }
    Ok(circuit)
}
