//! Language profiles.
//!
//! A profile bundles what porting the technique to a new target language
//! requires: the source factors that drive inflection, the table saying
//! which suffix a factor combination takes, and the joiner that builds the
//! surface form. All of it is data, loaded from a directory of TSV files:
//!
//! | file                   | contents                          |
//! |------------------------|-----------------------------------|
//! | `noun_suffixes.tsv`    | [`NounSuffixTable`]               |
//! | `joiner_rules.tsv`     | [`JoinerRules`]                   |
//! | `verb_paradigm.tsv`    | [`VerbParadigmTable`]             |
//! | `relation_aliases.tsv` | [`RelationAliases`] (optional)    |
//!
//! The Hindi profile (`hi`) is compiled in.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::extract::{FactorSet, RelationAliases};
use crate::noun::NounSuffixTable;
use crate::script::{JoinerRules, Suffix};
use crate::verb::VerbParadigmTable;

pub const NOUN_SUFFIXES_FILE: &str = "noun_suffixes.tsv";
pub const JOINER_RULES_FILE: &str = "joiner_rules.tsv";
pub const VERB_PARADIGM_FILE: &str = "verb_paradigm.tsv";
pub const RELATION_ALIASES_FILE: &str = "relation_aliases.tsv";

/// Sample Hindi data shipped with the crate.
pub mod hindi {
    pub const NOUN_SUFFIXES: &str = include_str!("../data/hi/noun_suffixes.tsv");
    pub const JOINER_RULES: &str = include_str!("../data/hi/joiner_rules.tsv");
    pub const VERB_PARADIGM: &str = include_str!("../data/hi/verb_paradigm.tsv");
    pub const RELATION_ALIASES: &str = include_str!("../data/hi/relation_aliases.tsv");
    pub const NOUN_LEXICON: &str = include_str!("../data/hi/noun_lexicon.tsv");
    pub const VERB_LEXICON: &str = include_str!("../data/hi/verb_lexicon.tsv");
    pub const BILINGUAL: &str = include_str!("../data/hi/bilingual.tsv");
    pub const FREQUENCIES: &str = include_str!("../data/hi/frequencies.tsv");
}

#[derive(Clone, Debug)]
pub struct Profile {
    pub id: String,
    pub noun_suffixes: NounSuffixTable,
    pub joiner: JoinerRules,
    pub verbs: VerbParadigmTable,
    pub relation_aliases: RelationAliases,
}

impl Profile {
    /// The built-in Hindi profile.
    pub fn hindi() -> Profile {
        Profile::from_texts(
            "hi",
            hindi::NOUN_SUFFIXES,
            hindi::JOINER_RULES,
            hindi::VERB_PARADIGM,
            Some(hindi::RELATION_ALIASES),
        )
        .expect("built-in Hindi profile data is valid")
    }

    pub fn builtin(id: &str) -> Result<Profile> {
        match id {
            "hi" => Ok(Profile::hindi()),
            other => Err(Error::UnknownProfile(other.to_owned())),
        }
    }

    pub fn from_texts(
        id: &str,
        noun_suffixes: &str,
        joiner_rules: &str,
        verb_paradigm: &str,
        relation_aliases: Option<&str>,
    ) -> Result<Profile> {
        Ok(Profile {
            id: id.to_owned(),
            noun_suffixes: NounSuffixTable::parse(noun_suffixes, NOUN_SUFFIXES_FILE)?,
            joiner: JoinerRules::parse(joiner_rules, JOINER_RULES_FILE)?,
            verbs: VerbParadigmTable::parse(verb_paradigm, VERB_PARADIGM_FILE)?,
            relation_aliases: match relation_aliases {
                Some(text) => RelationAliases::parse(text, RELATION_ALIASES_FILE)?,
                None => RelationAliases::default(),
            },
        })
    }

    /// Loads `<dir>/<id>/` when it exists, else `<dir>` itself.
    pub fn from_dir(dir: &Path, id: &str) -> Result<Profile> {
        let nested = dir.join(id);
        let dir = if nested.is_dir() { nested } else { dir.to_path_buf() };
        let read = |name: &str| fs::read_to_string(dir.join(name));
        let aliases = match read(RELATION_ALIASES_FILE) {
            Ok(text) => Some(text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(e) => return Err(e.into()),
        };
        Profile::from_texts(
            id,
            &read(NOUN_SUFFIXES_FILE)?,
            &read(JOINER_RULES_FILE)?,
            &read(VERB_PARADIGM_FILE)?,
            aliases.as_deref(),
        )
    }

    /// Noun and verb suffixes, without the null suffix.
    pub fn suffix_inventory(&self) -> Vec<Suffix> {
        let mut all = self.noun_suffixes.suffix_inventory();
        all.extend(self.verbs.suffix_inventory());
        all.into_iter().collect()
    }

    /// Source factors (besides surface and lemma) for a factor set.
    pub fn factor_names(set: FactorSet) -> &'static [&'static str] {
        match set {
            FactorSet::Noun => &["number", "case"],
            FactorSet::Verb | FactorSet::NounVerb => &["number", "person", "tense", "aspect", "modality"],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_profiles() {
        let p = Profile::builtin("hi").unwrap();
        assert_eq!(p.id, "hi");
        assert!(!p.joiner.is_empty());
        assert_eq!(p.verbs.len(), 6);
        assert!(matches!(Profile::builtin("mr"), Err(Error::UnknownProfile(_))));
    }

    #[test]
    fn loads_from_directory() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        let p = Profile::from_dir(&dir, "hi").unwrap();
        assert_eq!(p.suffix_inventory(), Profile::hindi().suffix_inventory());
        assert!(Profile::from_dir(Path::new("/nonexistent"), "hi").is_err());
    }
}
