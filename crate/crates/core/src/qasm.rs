//! OpenQASM 2.0 emission and parsing for the h/rx/rz/cx subset.
//!
//! Angles are printed with Rust's shortest round-trip float formatting, so
//! `parse(emit(c)) == c` holds exactly, including every angle bit.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

pub fn emit(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\n");
    out.push_str(&format!("qreg q[{}];\n", c.n_qubits()));
    for gate in c.gates() {
        match *gate {
            Gate::H { qubit } => out.push_str(&format!("h q[{}];\n", qubit)),
            Gate::Rx { qubit, angle } => out.push_str(&format!("rx({}) q[{}];\n", angle, qubit)),
            Gate::Rz { qubit, angle } => out.push_str(&format!("rz({}) q[{}];\n", angle, qubit)),
            Gate::Cnot { control, target } => {
                out.push_str(&format!("cx q[{}],q[{}];\n", control, target))
            }
        }
    }
    out
}

pub fn parse(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty input".into()))?;
    if header != "OPENQASM 2.0;" {
        return Err(err(line, format!("expected `OPENQASM 2.0;`, got {:?}", header)));
    }

    let (mut line, mut stmt) = lines
        .next()
        .ok_or_else(|| err(line, "missing qreg declaration".into()))?;
    if stmt == "include \"qelib1.inc\";" {
        let next = lines
            .next()
            .ok_or_else(|| err(line, "missing qreg declaration".into()))?;
        line = next.0;
        stmt = next.1;
    }
    let n_qubits = stmt
        .strip_prefix("qreg q[")
        .and_then(|rest| rest.strip_suffix("];"))
        .and_then(|digits| digits.parse::<usize>().ok())
        .ok_or_else(|| err(line, format!("expected `qreg q[<n>];`, got {:?}", stmt)))?;

    let mut circuit = Circuit::new(n_qubits);
    for (line, stmt) in lines {
        let body = stmt
            .strip_suffix(';')
            .ok_or_else(|| err(line, format!("missing `;` in {:?}", stmt)))?;
        let gate = parse_gate(body).map_err(|msg| err(line, msg))?;
        circuit
            .push(gate)
            .map_err(|e| err(line, e.to_string()))?;
    }
    Ok(circuit)
}

fn err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

fn parse_gate(body: &str) -> std::result::Result<Gate, String> {
    if let Some(rest) = body.strip_prefix("h ") {
        return Ok(Gate::H { qubit: parse_operand(rest)? });
    }
    if let Some(rest) = body.strip_prefix("cx ") {
        let packed: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
        let (a, b) = packed
            .split_once(',')
            .ok_or_else(|| format!("expected two operands in {:?}", body))?;
        return Ok(Gate::Cnot { control: parse_qubit(a)?, target: parse_qubit(b)? });
    }
    for (prefix, is_rx) in [("rx(", true), ("rz(", false)] {
        if let Some(rest) = body.strip_prefix(prefix) {
            let (angle_text, operand) = rest
                .split_once(')')
                .ok_or_else(|| format!("unterminated angle in {:?}", body))?;
            let angle = angle_text
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid angle {:?}", angle_text))?;
            if !angle.is_finite() {
                return Err(format!("angle must be finite, got {}", angle));
            }
            let qubit = parse_operand(operand)?;
            return Ok(if is_rx {
                Gate::Rx { qubit, angle }
            } else {
                Gate::Rz { qubit, angle }
            });
        }
    }
    Err(format!("unsupported statement {:?}", body))
}

fn parse_operand(text: &str) -> std::result::Result<usize, String> {
    parse_qubit(text.trim())
}

fn parse_qubit(text: &str) -> std::result::Result<usize, String> {
    text.strip_prefix("q[")
        .and_then(|rest| rest.strip_suffix(']'))
        .and_then(|digits| digits.parse::<usize>().ok())
        .ok_or_else(|| format!("expected `q[<i>]`, got {:?}", text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn emits_the_subset_verbatim() {
        let mut c = Circuit::new(2);
        c.push(Gate::H { qubit: 0 }).unwrap();
        c.push(Gate::Rz { qubit: 1, angle: 1.5 }).unwrap();
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(
            emit(&c),
            "OPENQASM 2.0;\nqreg q[2];\nh q[0];\nrz(1.5) q[1];\ncx q[0],q[1];\n"
        );
    }

    #[test]
    fn parses_own_output_and_tolerates_include() {
        let text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\nh q[2];\nrx(0.25) q[0];\ncx q[2],q[0];\n";
        let c = parse(text).unwrap();
        assert_eq!(c.n_qubits(), 3);
        assert_eq!(c.gates().len(), 3);
        assert_eq!(c.gates()[2], Gate::Cnot { control: 2, target: 0 });
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse("OPENQASM 3.0;\nqreg q[1];\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("OPENQASM 2.0;\nqreg q[2];\nt q[0];\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse("OPENQASM 2.0;\nqreg q[2];\nh q[0]\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse("OPENQASM 2.0;\nqreg q[2];\nrx(abc) q[0];\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        // Out-of-range operands surface with their line number.
        assert!(matches!(
            parse("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse("OPENQASM 2.0;\nqreg q[2];\ncx q[1],q[1];\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    fn arbitrary_gate(n_qubits: usize) -> impl Strategy<Value = Gate> {
        let angle = prop_oneof![
            -10.0..10.0f64,
            Just(1.5),
            Just(std::f64::consts::PI),
            Just(1e-17),
            Just(-2.0 / 3.0),
        ];
        prop_oneof![
            (0..n_qubits).prop_map(|qubit| Gate::H { qubit }),
            (0..n_qubits, angle.clone()).prop_map(|(qubit, angle)| Gate::Rx { qubit, angle }),
            (0..n_qubits, angle).prop_map(|(qubit, angle)| Gate::Rz { qubit, angle }),
            (0..n_qubits, 0..n_qubits)
                .prop_filter("distinct", |(a, b)| a != b)
                .prop_map(|(control, target)| Gate::Cnot { control, target }),
        ]
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(gates in proptest::collection::vec(arbitrary_gate(5), 0..40)) {
            let mut c = Circuit::new(5);
            for g in gates {
                c.push(g).unwrap();
            }
            let parsed = parse(&emit(&c)).unwrap();
            prop_assert_eq!(parsed, c);
        }
    }
}
