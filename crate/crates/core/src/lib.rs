//! Graphical Mahonian statistics on words.
//!
//! A directed relation `U` on the alphabet `{1..n}` generalizes the comparison
//! `x > y` in the classical inversion number, major index and sorting index.
//! This crate computes those statistics on words of a rearrangement class
//! `R(α)`, decides when `U` is bipartitional (or bipartitional up to loops on
//! letters of multiplicity one), builds the b-code bijection for the sorting
//! index, and produces exact q-polynomial generating functions together with
//! brute-force oracles that compare them against enumeration.
//!
//! ```
//! use mahonian::{Relation, Word, TieRule, stats};
//!
//! let natural = Relation::natural_order(7);
//! let sigma: Word = "2413576".parse().unwrap();
//! assert_eq!(stats::graphical_sorting_index(&natural, &sigma, TieRule::default()).unwrap(), 5);
//! ```

pub mod bcode;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod qseries;
pub mod relation;
pub mod stats;
pub mod word;

pub use bcode::BCode;
pub use error::{Error, Result};
pub use oracle::{OracleConfig, StatisticId, VerificationReport};
pub use qseries::QPolynomial;
pub use relation::{EssentialWitness, OrderedBipartition, Relation, SorConditions};
pub use stats::{SortStep, SortTrace, TieRule};
pub use word::{MultiplicityVector, RearrangementClass, Word};
