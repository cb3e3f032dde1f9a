//! Matrix realizations, word evaluation, axial distances and the simple-axis search.

pub mod distance;
pub mod matrix;
pub mod simple;
pub mod words;

pub use distance::{
    axial_distance, conj_axis_distance, conj_map, conj_map_exact, explore_csv, word_map_iterate, Grid, Trajectory,
    Verdict, WordMap,
};
pub use matrix::{realize, working_tolerance, Mat2C};
pub use simple::{classify_simple, SimpleVerdict};
pub use words::{
    enumerate_words, gamma_of_word, search_words, simple_axis_search, word_parameters, Letter, SearchResult, Witness,
    WitnessKind, WordSpec, WITNESS_TOLERANCE,
};

/// Default syllable bound for the simple-axis search.
pub const DEFAULT_MAX_SYLLABLES: usize = 9;
