//! Devanagari text primitives and the rule-based joiner.
//!
//! The joiner fuses a root and a suffix into a surface form ("reverse
//! morphology"). Its behaviour is driven entirely by a rule table loaded
//! from TSV, so a language profile can ship its own rules without code
//! changes. [`Splitter`] inverts the joiner over a known set of roots and
//! suffixes; it is used for target-side factorization and as a round-trip
//! check of the rule table.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use regex::Regex;
use unicode_segmentation::UnicodeSegmentation;

use crate::error::{Error, Result};
use crate::noun::NounClass;
use crate::tsv;

const NUKTA: char = '\u{093C}';
const NASAL_MARKS: [char; 3] = ['\u{0901}', '\u{0902}', '\u{0903}'];

/// One extended grapheme cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grapheme<'a>(&'a str);

impl<'a> Grapheme<'a> {
    pub fn as_str(&self) -> &'a str {
        self.0
    }
}

impl fmt::Display for Grapheme<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Splits `text` into extended grapheme clusters.
pub fn graphemes(text: &str) -> Vec<Grapheme<'_>> {
    text.graphemes(true).map(Grapheme).collect()
}

/// Like [`graphemes`], but validates the encoding first.
pub fn graphemes_from_bytes(bytes: &[u8]) -> Result<Vec<Grapheme<'_>>> {
    Ok(graphemes(std::str::from_utf8(bytes)?))
}

/// Phonological ending class of a root, keyed on its final vowel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndingCategory {
    /// आ / ा final (includes या-final roots).
    AVowel,
    /// ई / ी or इ / ि final.
    IiVowel,
    /// ऊ / ू or उ / ु final.
    UuVowel,
    /// ए / े, ऐ / ै or ओ / ो final.
    EClassVowel,
    /// Ends in a consonant with no vowel sign.
    Consonant,
    Other,
}

impl EndingCategory {
    pub const ALL: [EndingCategory; 6] = [
        EndingCategory::AVowel,
        EndingCategory::IiVowel,
        EndingCategory::UuVowel,
        EndingCategory::EClassVowel,
        EndingCategory::Consonant,
        EndingCategory::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EndingCategory::AVowel => "A_VOWEL",
            EndingCategory::IiVowel => "II_VOWEL",
            EndingCategory::UuVowel => "UU_VOWEL",
            EndingCategory::EClassVowel => "E_CLASS_VOWEL",
            EndingCategory::Consonant => "CONSONANT",
            EndingCategory::Other => "OTHER",
        }
    }
}

impl fmt::Display for EndingCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EndingCategory {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        EndingCategory::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown ending category `{s}`"))
    }
}

fn is_consonant(c: char) -> bool {
    matches!(c, '\u{0915}'..='\u{0939}' | '\u{0958}'..='\u{095F}' | '\u{0978}'..='\u{097F}')
}

fn is_vowel_sign(c: char) -> bool {
    matches!(c, '\u{093A}' | '\u{093B}' | '\u{093E}'..='\u{094C}' | '\u{094E}' | '\u{094F}' | '\u{0962}' | '\u{0963}')
}

/// Vowel sign for an independent vowel letter. `None` for अ, which has no
/// sign, and for anything that is not a vowel letter.
fn vowel_sign(c: char) -> Option<Option<char>> {
    let sign = match c {
        'अ' => None,
        'आ' => Some('ा'),
        'इ' => Some('ि'),
        'ई' => Some('ी'),
        'उ' => Some('ु'),
        'ऊ' => Some('ू'),
        'ऋ' => Some('ृ'),
        'ए' => Some('े'),
        'ऐ' => Some('ै'),
        'ओ' => Some('ो'),
        'औ' => Some('ौ'),
        _ => return None,
    };
    Some(sign)
}

fn ends_in_consonant(text: &str) -> bool {
    let mut rev = text.chars().rev();
    match rev.next() {
        Some(NUKTA) => rev.next().is_some_and(is_consonant),
        Some(c) => is_consonant(c),
        None => false,
    }
}

fn strip_nasal(text: &str) -> &str {
    text.trim_end_matches(NASAL_MARKS)
}

/// Classifies a root by the vowel content of its final grapheme.
pub fn ending_category(root: &str) -> Result<EndingCategory> {
    let last = graphemes(root).pop().ok_or(Error::EmptyRoot)?;
    let cluster = strip_nasal(last.as_str());
    let category = match cluster.chars().last() {
        Some('ा' | 'आ') => EndingCategory::AVowel,
        Some('ी' | 'ई' | 'ि' | 'इ') => EndingCategory::IiVowel,
        Some('ू' | 'ऊ' | 'ु' | 'उ') => EndingCategory::UuVowel,
        Some('े' | 'ए' | 'ै' | 'ऐ' | 'ो' | 'ओ') => EndingCategory::EClassVowel,
        Some(_) if ends_in_consonant(cluster) => EndingCategory::Consonant,
        _ => EndingCategory::Other,
    };
    Ok(category)
}

/// True for roots ending in या (a sub-case of [`EndingCategory::AVowel`]).
pub fn ends_with_ya(root: &str) -> bool {
    strip_nasal(root).ends_with("या")
}

/// An inflectional suffix. The empty suffix is the null inflection.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Suffix(String);

impl Suffix {
    pub fn null() -> Self {
        Suffix(String::new())
    }

    /// Builds a suffix; `"null"` (any case) and the empty string both give
    /// the null suffix.
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        if text.eq_ignore_ascii_case("null") {
            Suffix::null()
        } else {
            Suffix(text)
        }
    }

    pub fn is_null(&self) -> bool {
        self.0.is_empty()
    }

    /// Suffix text; empty for the null suffix.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Suffix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_null() {
            f.write_str("null")
        } else {
            f.write_str(&self.0)
        }
    }
}

/// How a matching joiner rule fuses root and suffix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinAction {
    /// Append the suffix. A suffix-initial vowel letter is written as its
    /// vowel sign when the root ends in a consonant.
    Concat,
    /// Remove the root's final vowel sign, then concatenate.
    DropMatraConcat,
    /// Shorten a final ई / ी to इ / ि, then concatenate.
    ShortenIiConcat,
    /// Shorten a final ऊ / ू to उ / ु, then concatenate.
    ShortenUuConcat,
    /// Remove a final या, then concatenate.
    DropYaConcat,
}

impl JoinAction {
    pub fn as_str(self) -> &'static str {
        match self {
            JoinAction::Concat => "CONCAT",
            JoinAction::DropMatraConcat => "DROP_MATRA_CONCAT",
            JoinAction::ShortenIiConcat => "SHORTEN_II_CONCAT",
            JoinAction::ShortenUuConcat => "SHORTEN_UU_CONCAT",
            JoinAction::DropYaConcat => "DROP_YA_CONCAT",
        }
    }

    /// Applies the action, or returns `None` when the root does not have the
    /// shape the action needs.
    fn apply(self, root: &str, suffix: &str) -> Option<String> {
        match self {
            JoinAction::Concat => Some(attach(root, suffix)),
            JoinAction::DropMatraConcat => {
                let last = root.chars().last()?;
                is_vowel_sign(last).then(|| attach(&root[..root.len() - last.len_utf8()], suffix))
            }
            JoinAction::ShortenIiConcat => Some(attach(&shorten(root, 'ी', 'ि', 'ई', 'इ'), suffix)),
            JoinAction::ShortenUuConcat => Some(attach(&shorten(root, 'ू', 'ु', 'ऊ', 'उ'), suffix)),
            JoinAction::DropYaConcat => root.strip_suffix("या").map(|stem| attach(stem, suffix)),
        }
    }
}

impl FromStr for JoinAction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            JoinAction::Concat,
            JoinAction::DropMatraConcat,
            JoinAction::ShortenIiConcat,
            JoinAction::ShortenUuConcat,
            JoinAction::DropYaConcat,
        ]
        .into_iter()
        .find(|a| a.as_str() == s)
        .ok_or_else(|| format!("unknown joiner action `{s}`"))
    }
}

fn shorten(root: &str, long_sign: char, short_sign: char, long_letter: char, short_letter: char) -> String {
    let mut out = root.to_owned();
    match out.pop() {
        Some(c) if c == long_sign => out.push(short_sign),
        Some(c) if c == long_letter => out.push(short_letter),
        Some(c) => out.push(c),
        None => {}
    }
    out
}

fn attach(stem: &str, suffix: &str) -> String {
    let mut out = String::with_capacity(stem.len() + suffix.len());
    out.push_str(stem);
    let mut chars = suffix.chars();
    match chars.next() {
        Some(first) if ends_in_consonant(stem) => match vowel_sign(first) {
            Some(sign) => {
                out.extend(sign);
                out.push_str(chars.as_str());
            }
            None => out.push_str(suffix),
        },
        _ => out.push_str(suffix),
    }
    out
}

#[derive(Clone, Debug)]
struct JoinRule {
    group: Regex,
    ending: Option<EndingCategory>,
    action: JoinAction,
    priority: i64,
    class: Option<NounClass>,
}

impl JoinRule {
    fn matches(&self, suffix: &str, ending: EndingCategory, hint: Option<NounClass>) -> bool {
        self.ending.is_none_or(|e| e == ending)
            && self.class.is_none_or(|c| hint == Some(c))
            && self.group.is_match(suffix)
    }
}

/// An ordered joiner rule table.
///
/// File columns: `suffix_group` (regex over the suffix text), `ending`
/// (an [`EndingCategory`] name or `*`), `action` (a [`JoinAction`] name),
/// `priority` (integer, lower runs first) and an optional `class` column
/// restricting the rule to a noun class hint (`A`-`E` or `*`).
#[derive(Clone, Debug)]
pub struct JoinerRules {
    rules: Vec<JoinRule>,
}

impl JoinerRules {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for (line, cols) in tsv::records(text) {
            if cols.len() < 4 || cols.len() > 5 {
                return Err(Error::parse(origin, line, format!("expected 4 or 5 columns, found {}", cols.len())));
            }
            let group = Regex::new(cols[0])?;
            let ending = match cols[1] {
                "*" => None,
                s => Some(s.parse().map_err(|e: String| Error::parse(origin, line, e))?),
            };
            let action = cols[2].parse().map_err(|e: String| Error::parse(origin, line, e))?;
            let priority = cols[3]
                .parse()
                .map_err(|_| Error::parse(origin, line, format!("bad priority `{}`", cols[3])))?;
            let class = match cols.get(4).copied() {
                None | Some("*") => None,
                Some(s) => Some(s.parse().map_err(|e: String| Error::parse(origin, line, e))?),
            };
            rules.push(JoinRule {
                group,
                ending,
                action,
                priority,
                class,
            });
        }
        // stable: file order breaks priority ties
        rules.sort_by_key(|r| r.priority);
        Ok(JoinerRules { rules })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Joins `root` and `suffix`. The null suffix is the identity.
    pub fn join(&self, root: &str, suffix: &Suffix, class_hint: Option<NounClass>) -> Result<String> {
        if root.is_empty() {
            return Err(Error::EmptyRoot);
        }
        if suffix.is_null() {
            return Ok(root.to_owned());
        }
        let ending = ending_category(root)?;
        self.rules
            .iter()
            .filter(|rule| rule.matches(suffix.as_str(), ending, class_hint))
            .find_map(|rule| rule.action.apply(root, suffix.as_str()))
            .ok_or_else(|| Error::Unjoinable {
                root: root.to_owned(),
                suffix: suffix.to_string(),
                ending: ending.to_string(),
            })
    }
}

const HINTS: [Option<NounClass>; 6] = [
    None,
    Some(NounClass::A),
    Some(NounClass::B),
    Some(NounClass::C),
    Some(NounClass::D),
    Some(NounClass::E),
];

/// Inverse of [`JoinerRules::join`] over a fixed root lexicon and suffix
/// inventory.
///
/// Every joiner action keeps all of the root except its final character as
/// a prefix of the surface form, so candidate roots are found by looking up
/// surface prefixes in an index keyed on that truncated root.
#[derive(Clone, Debug)]
pub struct Splitter<'r> {
    rules: &'r JoinerRules,
    roots: HashSet<String>,
    by_stem: HashMap<String, Vec<String>>,
    suffixes: Vec<Suffix>,
}

impl<'r> Splitter<'r> {
    pub fn new<I, S>(rules: &'r JoinerRules, roots: I, suffixes: &[Suffix]) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let roots: HashSet<String> = roots.into_iter().map(Into::into).filter(|r| !r.is_empty()).collect();
        let mut by_stem: HashMap<String, Vec<String>> = HashMap::new();
        for root in &roots {
            let last = root.chars().last().map_or(0, char::len_utf8);
            by_stem.entry(root[..root.len() - last].to_owned()).or_default().push(root.clone());
        }
        let mut suffixes: Vec<Suffix> = suffixes.iter().filter(|s| !s.is_null()).cloned().collect();
        suffixes.sort();
        suffixes.dedup();
        Splitter {
            rules,
            roots,
            by_stem,
            suffixes,
        }
    }

    pub fn contains_root(&self, root: &str) -> bool {
        self.roots.contains(root)
    }

    /// All `(root, suffix)` analyses of `surface`, longest root first.
    ///
    /// A candidate is returned when joining it under some class hint
    /// reproduces `surface` exactly.
    pub fn split(&self, surface: &str) -> Vec<(String, Suffix)> {
        let mut out: Vec<(String, Suffix)> = Vec::new();
        if surface.is_empty() {
            return out;
        }
        if self.roots.contains(surface) {
            out.push((surface.to_owned(), Suffix::null()));
        }
        let boundaries = surface.char_indices().map(|(i, _)| i).chain(std::iter::once(surface.len()));
        for end in boundaries {
            let Some(roots) = self.by_stem.get(&surface[..end]) else {
                continue;
            };
            for root in roots {
                for suffix in &self.suffixes {
                    let hit = HINTS
                        .iter()
                        .any(|hint| self.rules.join(root, suffix, *hint).is_ok_and(|s| s == surface));
                    if hit {
                        out.push((root.clone(), suffix.clone()));
                    }
                }
            }
        }
        out.sort_by(|a, b| b.0.chars().count().cmp(&a.0.chars().count()).then_with(|| a.cmp(b)));
        out.dedup();
        out
    }
}

/// One-shot split against an ad-hoc root set. Prefer [`Splitter`] when
/// splitting many tokens.
pub fn split(rules: &JoinerRules, surface: &str, roots: &HashSet<String>, suffixes: &[Suffix]) -> Vec<(String, Suffix)> {
    Splitter::new(rules, roots.iter().cloned(), suffixes).split(surface)
}
