//! Log-canonical brackets on edge weights and the matrix and Grassmannian brackets they induce.

pub mod bracket;
pub mod grass;
pub mod pushforward;
pub mod rmatrix;
pub mod sfun;

pub use bracket::{log_canonical_bracket, Bracket};
pub use grass::{check_coincidence, check_epsilon_lemmas, epsilon, grassmann_bracket_a, Variant};
pub use network::BracketSpec;
pub use pushforward::{verify_pushforward, verify_pushforward_full, verify_grassmannian, CheckRecord, Params, Report};
pub use rmatrix::{mcybe_check, McybeReport, RMatrix};
pub use sfun::{check_jacobi_ij, matrix_bracket_ij, s_cross, s_eq, sklyanin_bracket, EntryBracket, JacobiReport};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PoissonError {
    #[error("variable {0} is not in the bracket spec")]
    UnknownVariable(String),
    #[error("b{0} is not a source")]
    NotASource(usize),
    #[error("b{0} is not a sink")]
    NotASink(usize),
}
