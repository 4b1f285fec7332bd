//! Line-oriented netlist text.
//!
//! ```text
//! # comment
//! VARS 2            (optional, defaults to max variable + 1)
//! FANIN 2           (optional: 2, a bound c, or UNBOUNDED)
//! INPUT x0          (named g<pos>, also reachable as x0)
//! INPUT x1
//! g2 = AND g0 g1
//! OUTPUT g2
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::ir::circuit::Circuit;
use crate::ir::formula::Formula;
use crate::ir::gate::{FaninMode, Gate, GateKind};

pub fn parse_netlist(text: &str) -> Result<Circuit> {
    parse(text, false)
}

/// Parses a tree-shaped netlist; INPUT lines may repeat a variable.
pub fn parse_formula(text: &str) -> Result<Formula> {
    Formula::from_circuit(parse(text, true)?)
}

pub fn serialize(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "VARS {}", c.num_vars()).unwrap();
    writeln!(out, "FANIN {}", c.fanin()).unwrap();
    for (id, g) in c.gates().iter().enumerate() {
        match g.kind {
            GateKind::Input(v) => writeln!(out, "INPUT x{v}").unwrap(),
            GateKind::Const(b) => writeln!(out, "g{id} = CONST {}", b as u8).unwrap(),
            kind => {
                let args: Vec<String> = g.children.iter().map(|c| format!("g{c}")).collect();
                writeln!(out, "g{id} = {} {}", kind.mnemonic(), args.join(" ")).unwrap();
            }
        }
    }
    writeln!(out, "OUTPUT g{}", c.output()).unwrap();
    out
}

fn syntax(line: usize, detail: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        detail: detail.into(),
    }
}

fn is_positional(name: &str) -> bool {
    name.strip_prefix('g')
        .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

fn parse(text: &str, allow_dup_inputs: bool) -> Result<Circuit> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, t)| !t.is_empty())
        .collect();

    let mut defined_later: HashSet<&str> = HashSet::new();
    for (_, t) in &lines {
        if t.len() >= 2 && t[1] == "=" {
            defined_later.insert(t[0]);
        }
    }

    let mut names: HashMap<String, usize> = HashMap::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut num_vars: Option<usize> = None;
    let mut fanin: Option<FaninMode> = None;
    let mut output = None;
    let mut max_var: Option<usize> = None;

    for (line, t) in &lines {
        let line = *line;
        if output.is_some() {
            return Err(syntax(line, "content after OUTPUT"));
        }
        let resolve = |name: &str, current: &str| -> Result<usize> {
            if let Some(&id) = names.get(name) {
                return Ok(id);
            }
            if name == current || defined_later.contains(name) || is_positional(name) {
                Err(Error::CycleOrForwardRef {
                    line,
                    name: name.to_string(),
                })
            } else {
                Err(Error::UnknownGateRef {
                    line,
                    name: name.to_string(),
                })
            }
        };
        match t[0] {
            "VARS" => {
                let n = t
                    .get(1)
                    .and_then(|k| k.parse().ok())
                    .filter(|_| t.len() == 2);
                num_vars = Some(n.ok_or_else(|| syntax(line, "expected `VARS <n>`"))?);
            }
            "FANIN" => {
                let mode = match t.get(1).copied().filter(|_| t.len() == 2) {
                    Some("2") => FaninMode::Fanin2,
                    Some("UNBOUNDED") => FaninMode::Unbounded,
                    Some(k) => match k.parse::<usize>() {
                        Ok(c) if c >= 3 => FaninMode::Bounded(c),
                        _ => return Err(syntax(line, format!("bad fan-in `{k}`"))),
                    },
                    None => return Err(syntax(line, "expected `FANIN 2|<c>|UNBOUNDED`")),
                };
                fanin = Some(mode);
            }
            "INPUT" => {
                let var: usize = t
                    .get(1)
                    .filter(|_| t.len() == 2)
                    .and_then(|x| x.strip_prefix('x'))
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| syntax(line, "expected `INPUT x<k>`"))?;
                let id = gates.len();
                let pos_name = format!("g{id}");
                if names.contains_key(&pos_name) {
                    return Err(Error::DuplicateName {
                        line,
                        name: pos_name,
                    });
                }
                names.insert(pos_name, id);
                if gates.iter().any(|g| g.kind == GateKind::Input(var)) {
                    if !allow_dup_inputs {
                        return Err(Error::DuplicateInputVar { var });
                    }
                } else {
                    names.insert(format!("x{var}"), id);
                }
                max_var = max_var.max(Some(var));
                gates.push(Gate::input(var));
            }
            "OUTPUT" => {
                if t.len() != 2 {
                    return Err(syntax(line, "expected `OUTPUT <ref>`"));
                }
                output = Some(resolve(t[1], "")?);
            }
            name if t.len() >= 3 && t[1] == "=" => {
                if names.contains_key(name) {
                    return Err(Error::DuplicateName {
                        line,
                        name: name.to_string(),
                    });
                }
                let id = gates.len();
                let args = &t[3..];
                let gate = match t[2] {
                    "CONST" => match args {
                        ["0"] => Gate::constant(false),
                        ["1"] => Gate::constant(true),
                        _ => return Err(syntax(line, "expected `CONST 0|1`")),
                    },
                    op @ ("NOT" | "AND" | "OR") => {
                        let children = args
                            .iter()
                            .map(|a| resolve(a, name))
                            .collect::<Result<Vec<_>>>()?;
                        let kind = match op {
                            "NOT" => GateKind::Not,
                            "AND" => GateKind::And,
                            _ => GateKind::Or,
                        };
                        let ok = if kind == GateKind::Not {
                            children.len() == 1
                        } else {
                            children.len() >= 2
                        };
                        if !ok {
                            return Err(Error::ArityViolation {
                                gate: id,
                                detail: format!("{op} with {} children", children.len()),
                            });
                        }
                        Gate { kind, children }
                    }
                    other => return Err(syntax(line, format!("unknown gate type `{other}`"))),
                };
                names.insert(name.to_string(), id);
                gates.push(gate);
            }
            other => {
                return Err(syntax(
                    line,
                    format!("unrecognized line starting with `{other}`"),
                ))
            }
        }
    }

    let last_line = lines.last().map_or(0, |(l, _)| *l);
    let output = output.ok_or_else(|| syntax(last_line, "missing OUTPUT"))?;
    let num_vars = num_vars.unwrap_or(max_var.map_or(0, |v| v + 1));
    let fanin = fanin.unwrap_or_else(|| {
        let all_two = gates
            .iter()
            .filter(|g| matches!(g.kind, GateKind::And | GateKind::Or))
            .all(|g| g.children.len() == 2);
        if all_two {
            FaninMode::Fanin2
        } else {
            FaninMode::Unbounded
        }
    });
    Circuit::build(num_vars, gates, output, fanin, allow_dup_inputs)
}
