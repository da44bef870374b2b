use thiserror::Error;

/// Errors raised by the automata, symbolic, encoding and driver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {0:?} is not part of the alphabet")]
    ForeignSymbol(char),
    #[error("symbol index {0} is out of range for the alphabet")]
    SymbolIndex(usize),
    #[error("operands are defined over different alphabets")]
    AlphabetMismatch,
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("regex syntax error at offset {offset}: {message}")]
    RegexSyntax { offset: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed automaton: {0}")]
    Construction(String),
    #[error("branch domains overlap on input {witness:?}")]
    OverlappingDomains { witness: String },
    #[error("template pins transition ({state}, {symbol:?}) inconsistently")]
    TemplateConflict { state: usize, symbol: char },
    #[error("offset {offset} applied to {ch:?} leaves the code-point range")]
    OffsetOutOfRange { ch: u32, offset: i64 },
    #[error("model decoding failed: {0}")]
    Decode(String),
    #[error("verification of a decoded machine failed: {0}")]
    Soundness(String),
    #[error("could not run solver: {0}")]
    SolverLaunch(String),
    #[error("unexpected solver output: {0}")]
    SolverOutput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
