//! Quaternary linear codes from simplicial complexes, and their binary
//! subfield codes.
//!
//! A defining set `D` in `F4^m` yields the linear code whose codewords are
//! the evaluation vectors `(a . d)_{d in D}` over all messages `a`.  This
//! crate builds such sets from pairs of simplicial complexes over `[m]`,
//! computes weight distributions both by brute force and by closed-form
//! tables, derives the binary subfield codes, and checks the results
//! against the Griesmer and sphere-packing bounds.
//!
//! Module map:
//!
//! * [`gf4_algebra`]: bit-sliced arithmetic over `F4 = F2(w)`, ranks over
//!   `F4` and `F2`.
//! * [`simplicial`]: complexes given by maximal faces, face enumeration,
//!   character sums, and the five-class partition of `F2^m` induced by a
//!   pair of faces.
//! * [`defining_sets`]: product sets `D1 + w D2`, puncturing, complements
//!   in `F4^m \ {0}`, and binary subfield images.
//! * [`code_engine`]: exhaustive weight distributions with an explicit
//!   work budget, character-sum weights, dual-distance probes, subfield
//!   subcodes.
//! * [`closed_forms`]: closed-form weight distributions for the product,
//!   complement, and subfield families.  The default rows are corrected
//!   against the brute-force oracle; a strict mode evaluates the published
//!   rows verbatim, misprints included.
//! * [`bounds`]: Griesmer and sphere-packing reports, optionally against a
//!   table of best-known minimum distances.

pub mod bounds;
pub mod closed_forms;
pub mod code_engine;
pub mod defining_sets;
pub mod gf4_algebra;
pub mod simplicial;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An exhaustive computation would exceed its work budget (for weight
    /// distributions, `code_engine::COORD_EVAL_BUDGET` coordinate
    /// evaluations; for complements, the size of the ambient space).
    #[error("work budget exceeded: {needed} units needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    /// The requested object is degenerate (typically a zero-length code).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A documented precondition of the called operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed textual input (complex encodings, CSV tables, JSON).
    #[error("parse error: {0}")]
    Parse(String),

    /// A brute-force tally failed the kernel-multiplicity division check.
    /// This indicates an internal inconsistency, not bad user input.
    #[error("tally {tally} at weight {weight} is not divisible by kernel multiplicity {multiplicity}")]
    NonExactDivision {
        weight: u64,
        tally: u64,
        multiplicity: u64,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
