//! Verb paradigm generation.
//!
//! Suffixes are looked up by number, person, tense, aspect and modality.
//! Gender cannot be read off the source verb, so every feature bundle maps
//! to one suffix per gender and each becomes its own record.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::factors::{Pos, WordFormRecord};
use crate::grammar::{Aspect, Gender, Number, Person, Tense};
use crate::script::{JoinerRules, Suffix};
use crate::tsv::{self, LineIssue};

/// Unmarked modality in files and factors.
pub const NO_MODALITY: &str = "-";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VerbFeatures {
    pub number: Number,
    pub person: Person,
    pub tense: Tense,
    pub aspect: Aspect,
    /// Modal auxiliary lemma such as `can`; `None` is unmarked.
    pub modality: Option<String>,
}

impl VerbFeatures {
    pub fn new(number: Number, person: Person, tense: Tense, aspect: Aspect, modality: Option<&str>) -> Self {
        VerbFeatures {
            number,
            person,
            tense,
            aspect,
            modality: modality.map(str::to_owned),
        }
    }

    pub fn modality_str(&self) -> &str {
        self.modality.as_deref().unwrap_or(NO_MODALITY)
    }

    /// `[number, person, tense, aspect, modality]` as factor strings.
    pub fn to_factors(&self) -> Vec<String> {
        vec![
            self.number.to_string(),
            self.person.to_string(),
            self.tense.to_string(),
            self.aspect.to_string(),
            self.modality_str().to_owned(),
        ]
    }
}

impl fmt::Display for VerbFeatures {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}/{}/{}",
            self.number,
            self.person,
            self.tense,
            self.aspect,
            self.modality_str()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerbLexEntry {
    pub source_lemma: String,
    pub root: String,
}

impl VerbLexEntry {
    pub fn new(source_lemma: &str, root: &str) -> Result<Self> {
        if source_lemma.trim().is_empty() || root.trim().is_empty() {
            return Err(Error::EmptyRoot);
        }
        Ok(VerbLexEntry {
            source_lemma: source_lemma.trim().to_lowercase(),
            root: root.trim().to_owned(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenderedSuffix {
    pub gender: Gender,
    pub suffix: Suffix,
}

/// Feature bundle → gender-variant suffixes.
#[derive(Clone, Debug, Default)]
pub struct VerbParadigmTable {
    entries: BTreeMap<VerbFeatures, Vec<GenderedSuffix>>,
}

impl VerbParadigmTable {
    /// Parses `number, person, tense, aspect, modality, gender, suffix` rows.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut table = VerbParadigmTable::default();
        for (line, cols) in tsv::records(text) {
            let [number, person, tense, aspect, modality, gender, suffix] = cols[..] else {
                return Err(Error::parse(origin, line, format!("expected 7 columns, found {}", cols.len())));
            };
            let bad = |e: String| Error::parse(origin, line, e);
            let features = VerbFeatures::new(
                number.parse().map_err(bad)?,
                person.parse().map_err(bad)?,
                tense.parse().map_err(bad)?,
                aspect.parse().map_err(bad)?,
                (modality != NO_MODALITY).then_some(modality),
            );
            let suffix = Suffix::new(suffix);
            if suffix.is_null() {
                return Err(Error::parse(origin, line, "verb suffix must not be empty"));
            }
            let gender = gender.parse().map_err(bad)?;
            let variants = table.entries.entry(features).or_default();
            if variants.iter().any(|v| v.gender == gender && v.suffix == suffix) {
                return Err(Error::parse(origin, line, "duplicate paradigm row"));
            }
            variants.push(GenderedSuffix { gender, suffix });
        }
        Ok(table)
    }

    pub fn insert(&mut self, features: VerbFeatures, gender: Gender, suffix: Suffix) {
        self.entries.entry(features).or_default().push(GenderedSuffix { gender, suffix });
    }

    /// Number of feature bundles.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn bundles(&self) -> impl Iterator<Item = &VerbFeatures> {
        self.entries.keys()
    }

    pub fn variant_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn suffix_inventory(&self) -> BTreeSet<Suffix> {
        self.entries.values().flatten().map(|v| v.suffix.clone()).collect()
    }

    /// All gender variants for a feature bundle.
    pub fn verb_suffixes(&self, features: &VerbFeatures) -> Result<&[GenderedSuffix]> {
        self.entries
            .get(features)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnsupportedFeatures(features.to_string()))
    }
}

/// One record per (bundle × gender variant) in `feature_space`.
pub fn verb_paradigm(
    table: &VerbParadigmTable,
    joiner: &JoinerRules,
    entry: &VerbLexEntry,
    feature_space: &[VerbFeatures],
) -> Result<Vec<WordFormRecord>> {
    let mut records = Vec::new();
    for features in feature_space {
        for variant in table.verb_suffixes(features)? {
            records.push(WordFormRecord {
                pos: Pos::Verb,
                source_surface: None,
                source_root: entry.source_lemma.clone(),
                source_factors: features.to_factors(),
                target_surface: joiner.join(&entry.root, &variant.suffix, None)?,
                target_root: entry.root.clone(),
                target_suffix: variant.suffix.clone(),
                noun_class: None,
            });
        }
    }
    Ok(records)
}

/// Parses a verb lexicon (`source_lemma, target_stem`).
pub fn parse_verb_lexicon(text: &str) -> (Vec<VerbLexEntry>, Vec<LineIssue>) {
    let mut entries = Vec::new();
    let mut issues = Vec::new();
    for (line, cols) in tsv::records(text) {
        let parsed = match cols[..] {
            [lemma, stem] => VerbLexEntry::new(lemma, stem).map_err(|e| e.to_string()),
            _ => Err(format!("expected 2 columns, found {}", cols.len())),
        };
        match parsed {
            Ok(entry) => entries.push(entry),
            Err(message) => issues.push(LineIssue { line, message }),
        }
    }
    (entries, issues)
}
