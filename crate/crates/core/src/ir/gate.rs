use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type GateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Input(usize),
    Const(bool),
    Not,
    And,
    Or,
}

impl GateKind {
    /// NOT, AND and OR gates; the ones that count toward size and energy.
    pub fn is_logic(self) -> bool {
        matches!(self, GateKind::Not | GateKind::And | GateKind::Or)
    }

    pub fn is_leaf(self) -> bool {
        matches!(self, GateKind::Input(_) | GateKind::Const(_))
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Input(_) => "INPUT",
            GateKind::Const(_) => "CONST",
            GateKind::Not => "NOT",
            GateKind::And => "AND",
            GateKind::Or => "OR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub children: Vec<GateId>,
}

impl Gate {
    pub fn input(var: usize) -> Self {
        Gate {
            kind: GateKind::Input(var),
            children: Vec::new(),
        }
    }

    pub fn constant(bit: bool) -> Self {
        Gate {
            kind: GateKind::Const(bit),
            children: Vec::new(),
        }
    }

    pub fn not(child: GateId) -> Self {
        Gate {
            kind: GateKind::Not,
            children: vec![child],
        }
    }

    pub fn and(children: Vec<GateId>) -> Self {
        Gate {
            kind: GateKind::And,
            children,
        }
    }

    pub fn or(children: Vec<GateId>) -> Self {
        Gate {
            kind: GateKind::Or,
            children,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaninMode {
    Fanin2,
    Bounded(usize),
    Unbounded,
}

impl FaninMode {
    pub fn allows(self, arity: usize) -> bool {
        match self {
            FaninMode::Fanin2 => arity == 2,
            FaninMode::Bounded(c) => (2..=c).contains(&arity),
            FaninMode::Unbounded => arity >= 2,
        }
    }

    pub fn limit(self) -> Option<usize> {
        match self {
            FaninMode::Fanin2 => Some(2),
            FaninMode::Bounded(c) => Some(c),
            FaninMode::Unbounded => None,
        }
    }

    /// The narrowest mode admitting every circuit valid under either argument.
    pub fn widest(self, other: FaninMode) -> FaninMode {
        match (self.limit(), other.limit()) {
            (Some(2), Some(2)) => FaninMode::Fanin2,
            (Some(a), Some(b)) => FaninMode::Bounded(a.max(b)),
            _ => FaninMode::Unbounded,
        }
    }
}

impl fmt::Display for FaninMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaninMode::Fanin2 => write!(f, "2"),
            FaninMode::Bounded(c) => write!(f, "{c}"),
            FaninMode::Unbounded => write!(f, "UNBOUNDED"),
        }
    }
}

impl FromStr for FaninMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "2" => Ok(FaninMode::Fanin2),
            "UNBOUNDED" => Ok(FaninMode::Unbounded),
            t => match t.parse::<usize>() {
                Ok(c) if c >= 3 => Ok(FaninMode::Bounded(c)),
                _ => Err(Error::Malformed {
                    what: "fan-in mode",
                    detail: format!("expected 2, c >= 3 or UNBOUNDED, got {s:?}"),
                }),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fanin_modes() {
        assert!(FaninMode::Fanin2.allows(2));
        assert!(!FaninMode::Fanin2.allows(3));
        assert!(FaninMode::Bounded(4).allows(4));
        assert!(!FaninMode::Bounded(4).allows(5));
        assert!(!FaninMode::Unbounded.allows(1));
        assert_eq!(
            FaninMode::Fanin2.widest(FaninMode::Fanin2),
            FaninMode::Fanin2
        );
        assert_eq!(
            FaninMode::Fanin2.widest(FaninMode::Bounded(3)),
            FaninMode::Bounded(3)
        );
        assert_eq!(
            FaninMode::Bounded(5).widest(FaninMode::Unbounded),
            FaninMode::Unbounded
        );
    }

    #[test]
    fn fanin_text_round_trip() {
        for m in [
            FaninMode::Fanin2,
            FaninMode::Bounded(3),
            FaninMode::Unbounded,
        ] {
            assert_eq!(m.to_string().parse::<FaninMode>().unwrap(), m);
        }
        assert_eq!(
            "unbounded".parse::<FaninMode>().unwrap(),
            FaninMode::Unbounded
        );
        assert!("1".parse::<FaninMode>().is_err());
    }
}
