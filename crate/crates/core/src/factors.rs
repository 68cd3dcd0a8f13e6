//! Factored tokens and generated word-form records.
//!
//! A factored token is written `surface|f1|f2|...`. Factor values never
//! contain `|` or whitespace; multi-word values (verb suffixes such as
//! `ता हूँ`) are written with `_` in place of spaces.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::noun::NounClass;
use crate::script::Suffix;

/// Placeholder for a factor a word cannot have.
pub const NULL: &str = "null";

/// Placeholder for a source surface form that is not known.
pub const DOT: &str = ".";

/// Encodes free text as a single factor value.
pub fn factor_value(text: &str) -> String {
    if text.is_empty() {
        return NULL.to_owned();
    }
    text.split_whitespace().collect::<Vec<_>>().join("_").replace('|', "/")
}

/// Decodes a factor value back into free text.
pub fn factor_text(value: &str) -> String {
    value.replace('_', " ")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredToken {
    factors: Vec<String>,
}

impl FactoredToken {
    pub fn new(surface: impl Into<String>) -> Self {
        FactoredToken {
            factors: vec![surface.into()],
        }
    }

    /// Builds a token from its factors; the first is the surface form.
    ///
    /// # Panics
    ///
    /// Panics if `factors` is empty.
    pub fn from_factors(factors: Vec<String>) -> Self {
        assert!(!factors.is_empty(), "a factored token needs a surface factor");
        FactoredToken { factors }
    }

    pub fn parse(token: &str) -> Self {
        FactoredToken {
            factors: token.split('|').map(str::to_owned).collect(),
        }
    }

    pub fn surface(&self) -> &str {
        &self.factors[0]
    }

    pub fn factor(&self, index: usize) -> Option<&str> {
        self.factors.get(index).map(String::as_str)
    }

    pub fn factors(&self) -> &[String] {
        &self.factors
    }

    /// Number of factors, surface included.
    pub fn width(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for FactoredToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.factors.join("|"))
    }
}

/// Pads a token with `null` factors to exactly `width`.
pub fn normalize_factors(token: &FactoredToken, width: usize) -> Result<FactoredToken> {
    if token.width() > width {
        return Err(Error::Width {
            token: token.to_string(),
            found: token.width(),
            width,
        });
    }
    let mut factors = token.factors.clone();
    factors.resize(width, NULL.to_owned());
    Ok(FactoredToken { factors })
}

/// Splits a corpus line into factored tokens.
pub fn parse_sentence(line: &str) -> Vec<FactoredToken> {
    line.split_whitespace().map(FactoredToken::parse).collect()
}

pub fn render_sentence(tokens: &[FactoredToken]) -> String {
    tokens.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
}

impl Pos {
    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
        }
    }

    /// Source factors carried besides surface and root.
    pub fn source_factor_count(self) -> usize {
        match self {
            Pos::Noun => 2,
            Pos::Verb => 5,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "noun" => Ok(Pos::Noun),
            "verb" => Ok(Pos::Verb),
            _ => Err(format!("unknown part of speech `{s}`")),
        }
    }
}

/// Training material is either fully factored or surface forms only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Factored,
    Surface,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "factored" => Ok(Mode::Factored),
            "surface" => Ok(Mode::Surface),
            _ => Err(format!("unknown mode `{s}` (expected factored or surface)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Factored => "factored",
            Mode::Surface => "surface",
        })
    }
}

/// One generated dictionary entry: a source root with its factor bundle
/// mapped to a target surface, root and suffix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordFormRecord {
    pub pos: Pos,
    /// Observed source surface form, when one is known.
    pub source_surface: Option<String>,
    pub source_root: String,
    /// Nouns: number, case. Verbs: number, person, tense, aspect, modality.
    pub source_factors: Vec<String>,
    pub target_surface: String,
    pub target_root: String,
    pub target_suffix: Suffix,
    /// Class hint used when joining, for nouns.
    pub noun_class: Option<NounClass>,
}

impl WordFormRecord {
    /// `surface|root|factors...`, with `.` for an unknown surface.
    pub fn source_token(&self) -> FactoredToken {
        let mut factors = Vec::with_capacity(2 + self.source_factors.len());
        factors.push(self.source_surface.as_deref().map_or_else(|| DOT.to_owned(), factor_value));
        factors.push(factor_value(&self.source_root));
        factors.extend(self.source_factors.iter().map(|f| factor_value(f)));
        FactoredToken { factors }
    }

    /// `surface|root|suffix`.
    pub fn target_token(&self) -> FactoredToken {
        FactoredToken {
            factors: vec![
                factor_value(&self.target_surface),
                factor_value(&self.target_root),
                factor_value(self.target_suffix.as_str()),
            ],
        }
    }

    /// Source surface for surface-only output; falls back to the root when
    /// the surface is not known.
    pub fn source_surface_or_root(&self) -> &str {
        self.source_surface.as_deref().unwrap_or(&self.source_root)
    }

    /// Dictionary file line: `source<TAB>target<TAB>pos`.
    pub fn to_line(&self) -> String {
        format!("{}\t{}\t{}", self.source_token(), self.target_token(), self.pos)
    }

    /// Parses a line written by [`WordFormRecord::to_line`].
    pub fn from_line(line: &str) -> std::result::Result<Self, String> {
        let cols: Vec<&str> = line.split('\t').collect();
        let [source, target, pos] = cols[..] else {
            return Err(format!("expected 3 columns, found {}", cols.len()));
        };
        let pos: Pos = pos.trim().parse()?;
        let source = FactoredToken::parse(source.trim());
        let target = FactoredToken::parse(target.trim());
        if source.width() != 2 + pos.source_factor_count() {
            return Err(format!("{pos} source token `{source}` must have {} factors", 2 + pos.source_factor_count()));
        }
        if target.width() != 3 {
            return Err(format!("target token `{target}` must have 3 factors"));
        }
        let surface = source.surface();
        Ok(WordFormRecord {
            pos,
            source_surface: (surface != DOT).then(|| factor_text(surface)),
            source_root: factor_text(&source.factors[1]),
            source_factors: source.factors[2..].iter().map(|f| factor_text(f)).collect(),
            target_surface: factor_text(target.surface()),
            target_root: factor_text(&target.factors[1]),
            target_suffix: Suffix::new(factor_text(&target.factors[2])),
            noun_class: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pads_to_width() {
        let t = normalize_factors(&FactoredToken::parse("खेलते"), 3).unwrap();
        assert_eq!(t.to_string(), "खेलते|null|null");
    }

    #[test]
    fn width_identity_and_overflow() {
        let t = FactoredToken::parse("boys|boy|plural");
        assert_eq!(normalize_factors(&t, 3).unwrap(), t);
        assert!(matches!(normalize_factors(&t, 2), Err(Error::Width { found: 3, width: 2, .. })));
    }

    #[test]
    fn multiword_values_use_underscores() {
        assert_eq!(factor_value("ता हूँ"), "ता_हूँ");
        assert_eq!(factor_text("ता_हूँ"), "ता हूँ");
        assert_eq!(factor_value(""), "null");
    }

    #[test]
    fn record_line_round_trip() {
        let rec = WordFormRecord {
            pos: Pos::Verb,
            source_surface: None,
            source_root: "run".into(),
            source_factors: ["singular", "first", "present", "simple", "-"].map(String::from).to_vec(),
            target_surface: "भागता हूँ".into(),
            target_root: "भाग".into(),
            target_suffix: Suffix::new("ता हूँ"),
            noun_class: None,
        };
        let line = rec.to_line();
        assert_eq!(line, ".|run|singular|first|present|simple|-\tभागता_हूँ|भाग|ता_हूँ\tverb");
        assert_eq!(WordFormRecord::from_line(&line).unwrap(), rec);
        assert!(WordFormRecord::from_line(".|run|singular\tx|y|z\tverb").is_err());
    }
}
