use thiserror::Error;

use crate::ir::GateId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: unknown gate reference `{name}`")]
    UnknownGateRef { line: usize, name: String },
    #[error("line {line}: `{name}` is not defined before its use")]
    CycleOrForwardRef { line: usize, name: String },
    #[error("gate {gate}: {detail}")]
    ArityViolation { gate: GateId, detail: String },
    #[error("variable x{var} is declared by more than one INPUT gate")]
    DuplicateInputVar { var: usize },
    #[error("line {line}: name `{name}` is defined twice")]
    DuplicateName { line: usize, name: String },
    #[error("line {line}: {detail}")]
    Syntax { line: usize, detail: String },
    #[error("variable x{var} out of range for {num_vars} variables")]
    VarOutOfRange { var: usize, num_vars: usize },
    #[error("gate {0} does not exist")]
    NoSuchGate(GateId),
    #[error("not a formula: {0}")]
    NotAFormula(String),
    #[error("input has {got} bits, circuit expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{what} needs {num_vars} variables, above the enumeration cap of {cap}")]
    CapExceeded {
        what: &'static str,
        num_vars: usize,
        cap: usize,
    },
    #[error("circuits range over {left} and {right} variables")]
    IncompatibleArity { left: usize, right: usize },
    #[error("no continuous positive path from x{var}")]
    NoPathFound { var: usize },
    #[error("x{var} is not positively sensitive at the given input")]
    NotPositivelySensitive { var: usize },
    #[error("function is not monotone")]
    NotMonotone,
    #[error("input is not in f^-1(1)")]
    NotAOneInput,
    #[error("input is not in f^-1(0)")]
    NotAZeroInput,
    #[error("protocol exhausted all traced indices without a hit")]
    NoSensitiveIndexFound,
    #[error("the root gate cannot be replaced")]
    RootNotAllowed,
    #[error("formula is not read-once: x{var} labels several leaves")]
    NotReadOnce { var: usize },
    #[error("gate {0} is a negation above a non-leaf")]
    NonLeafNegation(GateId),
    #[error("generator budget infeasible: {0}")]
    BudgetInfeasible(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
