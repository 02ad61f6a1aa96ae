//! Minimality analysis for substitution subshifts.
//!
//! Given `σ : A → A⁺`, the crate classifies letters into growing and bounded
//! ones, decides tameness and l-primitivity exactly, builds σ-periodic points,
//! measures bounded languages and factor complexity, and combines the results
//! into a verdict backed by re-checkable evidence.

pub mod config;
pub mod error;
pub mod expand;
pub mod fixpoint;
mod graph;
pub mod growth;
pub mod lang;
pub mod lprim;
pub mod par;
pub mod reach;
pub mod report;
pub mod sample;
pub mod substitution;
pub mod tame;
pub mod verdict;
pub mod word;

pub use config::AnalysisConfig;
pub use error::{Error, ParseErrorKind, Result};
pub use expand::{expand, Expander, ExpansionBudget};
pub use fixpoint::{
    bounded_gap_constants, find_seed, interior_pump, periodic_word_from_isolation, window,
    BoundedGapReport, FixpointSeed, InteriorWitness, PeriodicWitness, Point,
};
pub use growth::{classify_letters, stable_constants, LetterClassification, StableConstants};
pub use lang::{
    bounded_language, complexity_profile, repetitivity_estimate, subshift_table,
    uniform_recurrence_check, BoundedLanguage, ComplexityProfile, RecurrenceReport,
    RepetitivityEstimate, SubshiftTable,
};
pub use lprim::{l_primitivity, LPrimitivityReport};
pub use par::Exec;
pub use reach::{
    damanik_lenz_check, reachability, set_map, set_trajectory, DLReport, ReachReport, SetTrajectory,
};
pub use report::{run_analysis, AnalysisReport};
pub use substitution::{parse_substitution, Substitution};
pub use tame::{
    edge_trajectory, gap, isolation, long_form, tameness, EdgeTrajectory, GapReport,
    IsolationStatus, LongFormDecomposition, Side, TamenessReport,
};
pub use verdict::{
    build_periodic_substitution, decide_minimality, extract_sub_substitution, verify_evidence,
    Evidence, MinimalityVerdict, SubSubstitution, Verdict,
};
pub use word::{occurrences, Letter, LetterSet, Word};
