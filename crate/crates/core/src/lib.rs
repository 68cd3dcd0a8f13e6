//! Morphology injection for factored translation corpora.
//!
//! The toolkit generates the inflected forms a target-language root can
//! take, pairs them with source-side factor bundles, and appends them to a
//! training corpus so that factor combinations unseen in the corpus still
//! have evidence. A small count-based factored model measures how many
//! out-of-vocabulary failures the injection removes.
//!
//! Module map:
//!
//! - [`script`]: grapheme segmentation, ending categories, joiner and splitter
//! - [`noun`]: noun classes, suffix table, class prediction, paradigms
//! - [`verb`]: verb paradigm table and verb records
//! - [`extract`]: source factors from dependency parses
//! - [`dict`]: word-form dictionaries, filtering and corpus injection
//! - [`oov`]: toy factored model and OOV reports
//! - [`profile`]: language profiles bundling the data files

pub mod cli;
pub mod dict;
mod error;
pub mod extract;
pub mod factors;
pub mod grammar;
pub mod noun;
pub mod oov;
pub mod profile;
pub mod script;
pub mod tsv;
pub mod verb;

pub use error::{Error, Result};
pub use factors::{normalize_factors, FactoredToken, Mode, Pos, WordFormRecord};
pub use noun::{classify, noun_paradigm, NounClass, NounLexEntry, NounPair, NumberCase};
pub use profile::Profile;
pub use script::{ending_category, graphemes, EndingCategory, JoinerRules, Splitter, Suffix};
pub use verb::{verb_paradigm, VerbFeatures, VerbLexEntry, VerbParadigmTable};
