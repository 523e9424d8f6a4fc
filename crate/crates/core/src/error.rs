//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PolyError {
    #[error("variable-list mismatch: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact polynomial division, remainder {remainder}")]
    InexactDivision { remainder: String },
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum QesError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("grading index k={k} outside [-1, {n}]")]
    GradingOutOfRange { n: i64, k: i64 },
    #[error("invalid sextic domain: need a>0 (any b) or a>=0 with b>0, got a={a}, b={b}")]
    InvalidSexticDomain { a: String, b: String },
    #[error("parity label q must be 0 or 1, got {q}")]
    InvalidParity { q: i64 },
    #[error("operator is not quasi-exactly-solvable on P_{n}: {leaking} basis monomials leak")]
    NotQuasiExactlySolvable { n: u32, leaking: usize },
    #[error("parameter mismatch between operator target and quasi-polynomial family")]
    ParameterMismatch,
    #[error("eigen-decomposition failed: {0}")]
    EigenFailure(String),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum NumericError {
    #[error(
        "potential is not confining at the box edge: V({x}) = {v} <= max requested energy {e}"
    )]
    NonConfining { x: f64, v: f64, e: f64 },
    #[error("requested {count} eigenvalues, only the lowest {reliable} of {dim} grid modes are reliable")]
    CountOutsideReliableWindow {
        count: usize,
        reliable: usize,
        dim: usize,
    },
    #[error("P4 is not positive on the integration path (P4({t}) = {value})")]
    QuarticVanishesOnPath { t: f64, value: f64 },
    #[error("could not bracket the variable-change inversion for x = {x}")]
    InversionBracketingFailure { x: f64 },
    #[error("grid spec invalid: {0}")]
    BadGrid(String),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum CsError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("unsupported root family {0}; only the A series is implemented")]
    UnsupportedFamily(String),
    #[error("rank must be >= 1")]
    BadRank,
    #[error("gauge-rotated coefficient is not polynomial; offending rational function: {witness}")]
    NonPolynomialCoefficient { witness: String },
    #[error("polynomial is not expressible in the invariant chart: {0}")]
    NotInInvariantRing(String),
    #[error("no characteristic vector with components <= {bound} preserves the flag up to n = {n_probe}")]
    NoCharacteristicVector { bound: u32, n_probe: u32 },
    #[error("ground-state energy is not constant: {0}")]
    NonConstantGroundTerm(String),
}
