//! Realization theory for string functions at desk scale.
//!
//! A string function assigns a value to every finite word over a fixed
//! alphabet. This crate works with complete value tables over `Σ^n`
//! (shorter words marginalize by summing suffix completions), builds finite
//! Hankel minors `[p(wv)]` from them, extracts observable-operator style
//! quasi-realizations, and decides membership in the finite-dimensional,
//! hidden-Markov-derived and Markov model families through rank and
//! determinantal invariants. The default arithmetic is exact rational, so
//! rank identities are testable as identities; a float mode with a single
//! tolerance exists for measured data.
//!
//! ```
//! use strfn::*;
//!
//! // a seeded two-state hidden Markov chain, tabulated over words of length 5
//! let alphabet = Alphabet::binary();
//! let chain = random_hmm(2, &alphabet, 7);
//! let table = chain.to_table(5);
//!
//! // its Hankel minors never exceed rank 2 ...
//! let minor = build_partial_hankel(&table, 2, 2)?;
//! assert!(minor.rank() <= 2);
//!
//! // ... so the dimension-2 membership check passes, and the extracted
//! // realization reproduces the table exactly
//! assert!(check_membership_gnd(&table, 2, 4)?.passed);
//! let realization = extract_realization(&table, 2)?;
//! assert_eq!(realization.to_table(5).first_difference(&table)?, None);
//! # Ok::<(), strfn::Error>(())
//! ```

pub mod error;
pub mod hankel;
pub mod invariants;
pub mod io;
pub mod lifting;
pub mod matrix;
pub mod models;
pub mod realization;
mod rng;
pub mod scalar;
pub mod table;
pub mod word;

pub use error::{Error, Result};
pub use hankel::{build_partial_hankel, dimension, PartialHankel, RankReport};
pub use invariants::{
    check_markov_invariants, check_membership_gnd, enumerate_failing_minors, probe_conjecture,
    MembershipReport, MinorWitness,
};
pub use lifting::{
    check_lift_finite, check_lift_hmm, eval_lifted_polynomial, reconstruct_extension, slc_probe,
    LiftReport, LiftedPolynomialValues, SlcProbeOutcome, TablePolynomial,
};
pub use models::{
    hmm_brute_force, random_hmm, random_markov, random_realization, random_table, random_trace,
    HmmParams, MarkovParams, TraceModel,
};
pub use realization::{extract_realization, select_basis, BasisSelection, QuasiRealization};
pub use scalar::{ArithmeticMode, Scalar, DEFAULT_TOL};
pub use table::{Classification, DistributionTable, TableKind};
pub use word::{shortlex_words, words_of_length, Alphabet, Word};
