//! Noun inflection: the class × number-case suffix table, class prediction
//! for new lexemes, and four-cell paradigm generation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::factors::{Pos, WordFormRecord};
use crate::grammar::{Case, Gender, Number};
use crate::script::{ending_category, ends_with_ya, EndingCategory, JoinerRules, Suffix};
use crate::tsv::{self, LineIssue};

/// Inflectional class of a noun. All nouns of a class take the same
/// number-case suffixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NounClass {
    A,
    B,
    C,
    D,
    E,
}

impl NounClass {
    pub const ALL: [NounClass; 5] = [NounClass::A, NounClass::B, NounClass::C, NounClass::D, NounClass::E];

    /// Preference order for breaking evidence ties, most null cells first.
    pub const TIE_BREAK: [NounClass; 5] = [NounClass::A, NounClass::E, NounClass::D, NounClass::C, NounClass::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NounClass::A => "A",
            NounClass::B => "B",
            NounClass::C => "C",
            NounClass::D => "D",
            NounClass::E => "E",
        }
    }
}

impl fmt::Display for NounClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NounClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        NounClass::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown noun class `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberCase {
    pub number: Number,
    pub case: Case,
}

impl NumberCase {
    pub const ALL: [NumberCase; 4] = [
        NumberCase::new(Number::Singular, Case::Direct),
        NumberCase::new(Number::Singular, Case::Oblique),
        NumberCase::new(Number::Plural, Case::Direct),
        NumberCase::new(Number::Plural, Case::Oblique),
    ];

    pub const fn new(number: Number, case: Case) -> Self {
        NumberCase { number, case }
    }
}

impl fmt::Display for NumberCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.number, self.case)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Countability {
    Countable,
    /// Mass or abstract nouns; these never inflect.
    Mass,
}

impl Countability {
    pub fn as_str(self) -> &'static str {
        match self {
            Countability::Countable => "count",
            Countability::Mass => "mass",
        }
    }
}

impl FromStr for Countability {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "count" | "countable" => Ok(Countability::Countable),
            "mass" | "abstract" | "mass_or_abstract" => Ok(Countability::Mass),
            _ => Err(format!("unknown countability `{s}`")),
        }
    }
}

/// A row of the target-language noun lexicon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NounLexEntry {
    pub root: String,
    pub gender: Gender,
    pub countability: Countability,
    pub ending: EndingCategory,
    pub class_override: Option<NounClass>,
}

impl NounLexEntry {
    pub fn new(
        root: impl Into<String>,
        gender: Gender,
        countability: Countability,
        class_override: Option<NounClass>,
    ) -> Result<Self> {
        let root = root.into();
        let ending = ending_category(&root)?;
        Ok(NounLexEntry {
            root,
            gender,
            countability,
            ending,
            class_override,
        })
    }
}

/// A source lemma paired with its target-language noun.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NounPair {
    pub source_root: String,
    pub target: NounLexEntry,
}

impl NounPair {
    /// The source lemma is lowercased.
    pub fn new(source_root: &str, target: NounLexEntry) -> Result<Self> {
        let source_root = source_root.trim().to_lowercase();
        if source_root.is_empty() {
            return Err(Error::EmptyRoot);
        }
        Ok(NounPair { source_root, target })
    }
}

#[derive(Clone, Debug)]
struct SuffixRow {
    class: NounClass,
    cell: NumberCase,
    ending: Option<EndingCategory>,
    suffix: Suffix,
}

/// The noun suffix table, one column per class and one row per
/// number-case cell. A cell may hold ending-specific alternatives; the
/// first row (in file order) whose ending matches wins.
#[derive(Clone, Debug)]
pub struct NounSuffixTable {
    rows: Vec<SuffixRow>,
}

impl NounSuffixTable {
    /// Parses `class, number, case, ending, suffix` rows. Every cell must
    /// have a catch-all (`*`) row.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (line, cols) in tsv::records(text) {
            let [class, number, case, ending, suffix] = cols[..] else {
                return Err(Error::parse(origin, line, format!("expected 5 columns, found {}", cols.len())));
            };
            let bad = |e: String| Error::parse(origin, line, e);
            rows.push(SuffixRow {
                class: class.parse().map_err(bad)?,
                cell: NumberCase::new(number.parse().map_err(bad)?, case.parse().map_err(bad)?),
                ending: match ending {
                    "*" => None,
                    e => Some(e.parse().map_err(bad)?),
                },
                suffix: Suffix::new(suffix),
            });
        }
        for class in NounClass::ALL {
            for cell in NumberCase::ALL {
                if !rows.iter().any(|r| r.class == class && r.cell == cell && r.ending.is_none()) {
                    return Err(Error::parse(origin, 0, format!("no catch-all row for class {class} {cell}")));
                }
            }
        }
        Ok(NounSuffixTable { rows })
    }

    pub fn suffix_for(&self, class: NounClass, cell: NumberCase, ending: EndingCategory) -> Suffix {
        self.rows
            .iter()
            .find(|r| r.class == class && r.cell == cell && r.ending.is_none_or(|e| e == ending))
            .map(|r| r.suffix.clone())
            .expect("table validated to have a catch-all row per cell")
    }

    /// Every non-null suffix the table can produce.
    pub fn suffix_inventory(&self) -> BTreeSet<Suffix> {
        self.rows.iter().filter(|r| !r.suffix.is_null()).map(|r| r.suffix.clone()).collect()
    }

    /// Classes whose cell for `(cell, ending)` is exactly `suffix`.
    pub fn classes_matching(&self, cell: NumberCase, ending: EndingCategory, suffix: &Suffix) -> Vec<NounClass> {
        NounClass::ALL
            .into_iter()
            .filter(|c| &self.suffix_for(*c, cell, ending) == suffix)
            .collect()
    }
}

/// Predicts the inflectional class from gender, countability and ending.
pub fn classify(entry: &NounLexEntry) -> Result<NounClass> {
    if let Some(class) = entry.class_override {
        return Ok(class);
    }
    if entry.countability == Countability::Mass {
        return Ok(NounClass::A);
    }
    match (entry.gender, entry.ending) {
        (Gender::Feminine, EndingCategory::IiVowel) => Ok(NounClass::B),
        (Gender::Feminine, EndingCategory::AVowel) if ends_with_ya(&entry.root) => Ok(NounClass::B),
        (Gender::Feminine, _) => Ok(NounClass::C),
        (Gender::Masculine, EndingCategory::AVowel) => Ok(NounClass::D),
        (Gender::Masculine, EndingCategory::UuVowel | EndingCategory::IiVowel | EndingCategory::Consonant) => {
            Ok(NounClass::E)
        }
        (Gender::Masculine, ending) => Err(Error::Unclassifiable {
            root: entry.root.clone(),
            reason: format!("countable masculine noun with ending {ending}"),
        }),
    }
}

/// The four number-case records for a target root of a known class.
///
/// `source_surface` supplies an observed source surface form per cell;
/// cells without one are written with a dotted surface.
pub fn noun_forms(
    table: &NounSuffixTable,
    joiner: &JoinerRules,
    source_root: &str,
    target_root: &str,
    class: NounClass,
    source_surface: impl Fn(NumberCase) -> Option<String>,
) -> Result<Vec<WordFormRecord>> {
    let ending = ending_category(target_root)?;
    NumberCase::ALL
        .into_iter()
        .map(|cell| {
            let suffix = table.suffix_for(class, cell, ending);
            let surface = joiner.join(target_root, &suffix, Some(class))?;
            Ok(WordFormRecord {
                pos: Pos::Noun,
                source_surface: source_surface(cell),
                source_root: source_root.to_owned(),
                source_factors: vec![cell.number.to_string(), cell.case.to_string()],
                target_surface: surface,
                target_root: target_root.to_owned(),
                target_suffix: suffix,
                noun_class: Some(class),
            })
        })
        .collect()
}

/// Classifies the target noun and generates its four records.
pub fn noun_paradigm(table: &NounSuffixTable, joiner: &JoinerRules, pair: &NounPair) -> Result<Vec<WordFormRecord>> {
    let class = classify(&pair.target)?;
    noun_forms(table, joiner, &pair.source_root, &pair.target.root, class, |_| None)
}

/// Parses a noun lexicon (`root, gender, countability[, class]`). Bad lines
/// are reported and skipped.
pub fn parse_noun_lexicon(text: &str) -> (Vec<NounLexEntry>, Vec<LineIssue>) {
    let mut entries = Vec::new();
    let mut issues = Vec::new();
    for (line, cols) in tsv::records(text) {
        match parse_lexicon_row(&cols) {
            Ok(entry) => entries.push(entry),
            Err(message) => issues.push(LineIssue { line, message }),
        }
    }
    (entries, issues)
}

fn parse_lexicon_row(cols: &[&str]) -> std::result::Result<NounLexEntry, String> {
    if !(3..=4).contains(&cols.len()) {
        return Err(format!("expected 3 or 4 columns, found {}", cols.len()));
    }
    let gender: Gender = cols[1].parse()?;
    let countability: Countability = cols[2].parse()?;
    let class = match cols.get(3).copied() {
        None | Some("") | Some("-") => None,
        Some(c) => Some(c.parse()?),
    };
    NounLexEntry::new(cols[0], gender, countability, class).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Profile;

    fn entry(root: &str, gender: Gender, countability: Countability) -> NounLexEntry {
        NounLexEntry::new(root, gender, countability, None).unwrap()
    }

    #[test]
    fn suffix_cells() {
        let t = Profile::hindi().noun_suffixes;
        let cell = |n, c| NumberCase::new(n, c);
        use EndingCategory::*;
        assert_eq!(t.suffix_for(NounClass::D, cell(Number::Singular, Case::Oblique), AVowel), Suffix::new("ए"));
        for e in EndingCategory::ALL {
            assert!(t.suffix_for(NounClass::A, cell(Number::Plural, Case::Oblique), e).is_null());
        }
        assert_eq!(t.suffix_for(NounClass::B, cell(Number::Plural, Case::Oblique), IiVowel), Suffix::new("यों"));
        assert_eq!(t.suffix_for(NounClass::B, cell(Number::Plural, Case::Direct), IiVowel), Suffix::new("याँ"));
        assert_eq!(t.suffix_for(NounClass::E, cell(Number::Plural, Case::Oblique), IiVowel), Suffix::new("यों"));
        assert_eq!(t.suffix_for(NounClass::E, cell(Number::Plural, Case::Oblique), UuVowel), Suffix::new("ओं"));
        assert_eq!(t.suffix_for(NounClass::E, cell(Number::Plural, Case::Oblique), Consonant), Suffix::new("ओं"));
    }

    #[test]
    fn classify_examples() {
        use Countability::*;
        use Gender::*;
        assert_eq!(classify(&entry("लड़की", Feminine, Countable)).unwrap(), NounClass::B);
        assert_eq!(classify(&entry("प्यार", Masculine, Mass)).unwrap(), NounClass::A);
        assert_eq!(classify(&entry("आलू", Masculine, Countable)).unwrap(), NounClass::E);
        assert_eq!(classify(&entry("लड़का", Masculine, Countable)).unwrap(), NounClass::D);
        assert_eq!(classify(&entry("चिड़िया", Feminine, Countable)).unwrap(), NounClass::B);
        assert_eq!(classify(&entry("माला", Feminine, Countable)).unwrap(), NounClass::C);
        assert_eq!(classify(&entry("घर", Masculine, Countable)).unwrap(), NounClass::E);
        let overridden = NounLexEntry::new("लड़का", Masculine, Countable, Some(NounClass::E)).unwrap();
        assert_eq!(classify(&overridden).unwrap(), NounClass::E);
    }

    #[test]
    fn masculine_other_ending_is_unclassifiable() {
        let err = classify(&entry("xyz", Gender::Masculine, Countability::Countable)).unwrap_err();
        assert!(matches!(err, Error::Unclassifiable { .. }));
    }

    #[test]
    fn mass_noun_paradigm_is_all_root() {
        let p = Profile::hindi();
        let pair = NounPair::new("hunger", entry("भूख", Gender::Feminine, Countability::Mass)).unwrap();
        let recs = noun_paradigm(&p.noun_suffixes, &p.joiner, &pair).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.target_surface == "भूख" && r.target_suffix.is_null()));
    }

    #[test]
    fn lexicon_parse_reports_bad_lines() {
        let (entries, issues) = parse_noun_lexicon("# c\nनदी\tf\tcount\nलड़का\tx\tcount\nघर\tm\n\nमाला\tf\tcount\tC\n");
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[1].class_override, Some(NounClass::C));
        assert_eq!(issues.iter().map(|i| i.line).collect::<Vec<_>>(), [3, 4]);
    }

    #[test]
    fn table_requires_catch_all_rows() {
        assert!(NounSuffixTable::parse("A\tsingular\tdirect\t*\tnull\n", "t").is_err());
    }

    #[test]
    fn source_root_is_lowercased() {
        let pair = NounPair::new("River", entry("नदी", Gender::Feminine, Countability::Countable)).unwrap();
        assert_eq!(pair.source_root, "river");
    }
}
