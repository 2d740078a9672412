//! Rough-set span measures over categorical decision tables.
//!
//! The crate covers ingestion ([`table`]), classical rough-set machinery
//! ([`rough`]), the span family of measures ([`span`]), spanning-set and
//! decision-class search ([`search`]), and the report layer behind the
//! `roughspan` binary ([`report`]).

pub mod cli;
pub mod error;
pub mod object_set;
pub mod report;
pub mod rough;
pub mod search;
pub mod span;
pub mod table;

pub use error::{Error, Result};
pub use object_set::ObjectSet;
pub use rough::{
    approximate, enumerate_reducts, indiscernibility, is_reduct, positive_region, Approximation,
    AttributeSubset,
};
pub use search::{
    compare_decisions, learn_decision, spanning_search, spanning_search_exact,
    spanning_search_local, spanning_search_pso, Method, PsoParams, SearchConfig, SearchResult,
    SetObjective, Solution,
};
pub use span::{
    complete_decision_span, complete_set_span, complete_weighted_decision_span, decision_span,
    set_span, weighted_decision_span,
};
pub use table::{
    decision_partition, parse_partition, parse_table, ClassWeights, DecisionTable,
    LabeledPartition, Partition, SpanWeights,
};
