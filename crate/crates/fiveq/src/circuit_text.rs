//! Line-oriented circuit text format.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! h 0
//! cx 0 1
//! rz(pi/4) 1
//! measure 0 -> c0
//! measure 1 -> c1 x
//! ```
//!
//! The full grammar is in `docs/circuit-format.md`.

use std::f64::consts::PI;
use std::fmt::Write;

use fiveq_core::circuit::{Basis, Circuit, Gate, SingleOp};

use crate::error::{Error, Result};

/// Strip a `#` comment and surrounding whitespace.
pub(crate) fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub(crate) fn parse_index(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {token:?}")))
}

/// Angle literal: a decimal number, or a multiple of pi such as `pi`, `-pi/2`,
/// `3*pi/4` or `0.5*pi`.
pub fn parse_angle(text: &str) -> Option<f64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.to_ascii_lowercase();
    if !t.contains("pi") {
        return t.parse::<f64>().ok().filter(|v| v.is_finite());
    }
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, t.strip_prefix('+').unwrap_or(&t)),
    };
    let (factor, after) = match rest.split_once("pi") {
        Some(("", after)) => (1.0, after),
        Some((f, after)) => (f.strip_suffix('*')?.parse::<f64>().ok()?, after),
        None => return None,
    };
    let divisor = match after {
        "" => 1.0,
        d => d.strip_prefix('/')?.parse::<f64>().ok()?,
    };
    let v = sign * factor * PI / divisor;
    v.is_finite().then_some(v)
}

fn single_op(name: &str) -> Option<SingleOp> {
    Some(match name {
        "h" => SingleOp::H,
        "x" => SingleOp::X,
        "y" => SingleOp::Y,
        "z" => SingleOp::Z,
        "s" => SingleOp::S,
        "sdg" => SingleOp::Sdg,
        "t" => SingleOp::T,
        "tdg" => SingleOp::Tdg,
        _ => return None,
    })
}

fn parse_basis(token: &str, line: usize) -> Result<Basis> {
    match token.to_ascii_lowercase().as_str() {
        "z" => Ok(Basis::Z),
        "x" => Ok(Basis::X),
        "y" => Ok(Basis::Y),
        other => Err(Error::parse(line, format!("unknown basis {other:?}"))),
    }
}

fn parse_measure(rest: &[&str], line: usize, c: &mut Circuit) -> Result<()> {
    let (q, arrow, bit, basis) = match rest {
        [q, arrow, bit] => (q, arrow, bit, Basis::Z),
        [q, arrow, bit, b] => (q, arrow, bit, parse_basis(b, line)?),
        _ => return Err(Error::parse(line, "expected `measure <q> -> c<k> [z|x|y]`")),
    };
    if *arrow != "->" {
        return Err(Error::parse(line, format!("expected `->`, found {arrow:?}")));
    }
    let cbit = bit
        .strip_prefix('c')
        .ok_or_else(|| Error::parse(line, format!("expected classical bit c<k>, found {bit:?}")))?;
    let q = parse_index(q, line, "qubit index")?;
    let k = parse_index(cbit, line, "classical bit index")?;
    c.measure(q, k, basis).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parse circuit text. Errors carry 1-based line numbers.
pub fn parse(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let head = tokens[0].to_ascii_lowercase();
        let Some(c) = circuit.as_mut() else {
            match tokens.as_slice() {
                [kw, n] if kw.eq_ignore_ascii_case("qubits") => {
                    let n = parse_index(n, line, "qubit count")?;
                    if n == 0 || n > fiveq_core::state::MAX_QUBITS {
                        return Err(Error::parse(line, format!("qubit count {n} out of range")));
                    }
                    circuit = Some(Circuit::new(n));
                    continue;
                }
                _ => return Err(Error::parse(line, "expected `qubits <n>` header")),
            }
        };
        let gate = if head == "qubits" {
            return Err(Error::parse(line, "duplicate `qubits` header"));
        } else if head == "measure" {
            parse_measure(&tokens[1..], line, c)?;
            continue;
        } else if head == "cx" {
            let [_, ctl, tgt] = tokens.as_slice() else {
                return Err(Error::parse(line, "expected `cx <control> <target>`"));
            };
            Gate::cx(parse_index(ctl, line, "control")?, parse_index(tgt, line, "target")?)
        } else if head.starts_with("rz(") {
            // The angle may contain spaces, so split on the closing paren.
            let (angle, rest) = body[3..]
                .split_once(')')
                .ok_or_else(|| Error::parse(line, "unclosed `rz(`"))?;
            let angle = parse_angle(angle).ok_or_else(|| Error::parse(line, format!("bad angle {angle:?}")))?;
            let [q] = rest.split_whitespace().collect::<Vec<_>>()[..] else {
                return Err(Error::parse(line, "expected `rz(<angle>) <qubit>`"));
            };
            Gate::rz(angle, parse_index(q, line, "qubit index")?)
        } else if let Some(op) = single_op(&head) {
            let [_, q] = tokens.as_slice() else {
                return Err(Error::parse(line, format!("expected `{head} <qubit>`")));
            };
            Gate::Single {
                op,
                qubit: parse_index(q, line, "qubit index")?,
            }
        } else {
            return Err(Error::parse(line, format!("unknown gate {:?}", tokens[0])));
        };
        c.push(gate).map_err(|e| Error::parse(line, e.to_string()))?;
    }
    circuit.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `qubits <n>` header"))
}

/// Nine significant digits, printed in the shortest form that reads back as
/// the rounded value.
pub fn format_angle(angle: f64) -> String {
    let rounded: f64 = format!("{angle:.8e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

/// Canonical text: header, one gate per line, then the measurements.
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", circuit.num_qubits()).unwrap();
    for g in circuit.gates() {
        match *g {
            Gate::Cx { control, target } => writeln!(out, "cx {control} {target}"),
            Gate::Single {
                op: SingleOp::Rz(a),
                qubit,
            } => writeln!(out, "rz({}) {qubit}", format_angle(a)),
            Gate::Single { op, qubit } => writeln!(out, "{} {qubit}", op.name()),
        }
        .unwrap();
    }
    for m in circuit.measurements() {
        write!(out, "measure {} -> c{}", m.qubit, m.cbit).unwrap();
        if m.basis != Basis::Z {
            write!(out, " {}", m.basis.letter().to_ascii_lowercase()).unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_example() {
        let c = parse("qubits 2\nh 0\ncx 0 1\nmeasure 0 -> c0 z").unwrap();
        assert_eq!(c.gates(), &[Gate::h(0), Gate::cx(0, 1)]);
        assert_eq!(c.measurements().len(), 1);
        assert_eq!(c.measurements()[0].basis, Basis::Z);
    }

    #[test]
    fn angles() {
        assert!((parse_angle("1.5707963").unwrap() - PI / 2.0).abs() < 1e-7);
        assert_eq!(parse_angle("pi/2"), Some(PI / 2.0));
        assert_eq!(parse_angle("-pi"), Some(-PI));
        assert_eq!(parse_angle("3*pi/4"), Some(3.0 * PI / 4.0));
        assert_eq!(parse_angle("pi / 4"), Some(PI / 4.0));
        assert_eq!(parse_angle("2pi"), None);
        assert_eq!(parse_angle("nan"), None);
        let c = parse("qubits 3\nrz(1.5707963) 2").unwrap();
        assert!(c.gates()[0].approx_eq(&Gate::rz(PI / 2.0, 2), 1e-7));
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse("qubits 4\n# fine\ncx 3 3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(matches!(parse("h 0").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(
            parse("qubits 2\nfoo 1").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse("qubits 2\nh 2").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse("qubits 2\nmeasure 0 -> 0").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse("qubits 1\nmeasure 0 -> c0\nh 0").unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
        assert!(parse("").is_err());
    }

    #[test]
    fn serializes_canonically() {
        let text = "qubits 2\nh 0\nrz(0.785398163) 1\ncx 0 1\nmeasure 1 -> c0 y\nmeasure 0 -> c1\n";
        let c = parse(text).unwrap();
        assert_eq!(serialize(&c), text);
    }
}
