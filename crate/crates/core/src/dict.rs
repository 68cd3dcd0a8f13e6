//! Word-form dictionaries and corpus injection.
//!
//! Dictionaries come from two pipelines: a target-language lexicon plus a
//! bilingual dictionary ([`build_from_lexicon`]), or an aligned factored
//! parallel corpus whose noun pairs are classified from the suffixes they
//! are observed with ([`classify_from_parallel`], [`build_from_parallel`]).
//! Either way the result can be filtered by root frequency and appended to
//! a training corpus with [`inject`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::factors::{factor_value, normalize_factors, parse_sentence, FactoredToken, Mode, Pos, WordFormRecord, NULL};
use crate::grammar::{Case, Number};
use crate::noun::{classify, noun_forms, NounClass, NounLexEntry, NumberCase};
use crate::profile::Profile;
use crate::script::{ending_category, JoinerRules, Splitter, Suffix};
use crate::tsv::{self, LineIssue};
use crate::verb::{verb_paradigm, VerbFeatures, VerbLexEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Lexicon,
    Parallel,
}

/// An ordered, duplicate-free list of word-form records.
#[derive(Clone, Debug)]
pub struct WordFormDictionary {
    provenance: Provenance,
    records: Vec<WordFormRecord>,
    seen: HashSet<(String, String)>,
}

impl WordFormDictionary {
    pub fn new(provenance: Provenance) -> Self {
        WordFormDictionary {
            provenance,
            records: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Adds a record unless an identical one is already present.
    pub fn push(&mut self, record: WordFormRecord) -> bool {
        let key = (record.source_token().to_string(), record.target_token().to_string());
        if self.seen.insert(key) {
            self.records.push(record);
            true
        } else {
            false
        }
    }

    pub fn records(&self) -> &[WordFormRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn count(&self, pos: Pos) -> usize {
        self.records.iter().filter(|r| r.pos == pos).count()
    }

    /// Checks that every record's surface is the join of its root and
    /// suffix.
    pub fn verify(&self, joiner: &JoinerRules) -> Result<()> {
        for r in &self.records {
            let joined = joiner.join(&r.target_root, &r.target_suffix, r.noun_class)?;
            if joined != r.target_surface {
                return Err(Error::Unjoinable {
                    root: r.target_root.clone(),
                    suffix: r.target_suffix.to_string(),
                    ending: format!("record surface `{}` but join gives `{joined}`", r.target_surface),
                });
            }
        }
        Ok(())
    }

    pub fn write_to(&self, mut out: impl Write) -> io::Result<()> {
        for r in &self.records {
            writeln!(out, "{}", r.to_line())?;
        }
        Ok(())
    }

    /// Reads a dictionary file. Provenance is `Parallel` when any record
    /// carries a source surface form.
    pub fn parse(text: &str) -> (WordFormDictionary, Vec<LineIssue>) {
        let mut records = Vec::new();
        let mut issues = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            match WordFormRecord::from_line(line) {
                Ok(r) => records.push(r),
                Err(message) => issues.push(LineIssue { line: idx + 1, message }),
            }
        }
        let provenance = if records.iter().any(|r| r.source_surface.is_some()) {
            Provenance::Parallel
        } else {
            Provenance::Lexicon
        };
        let mut dict = WordFormDictionary::new(provenance);
        for r in records {
            dict.push(r);
        }
        (dict, issues)
    }
}

/// Reads `target_root<TAB>source_root` rows; the first translation of a
/// root wins.
pub fn parse_bilingual(text: &str) -> (HashMap<String, String>, Vec<LineIssue>) {
    let mut map = HashMap::new();
    let mut issues = Vec::new();
    for (line, cols) in tsv::records(text) {
        match cols[..] {
            [target, source] if !target.is_empty() && !source.is_empty() => {
                map.entry(target.to_owned()).or_insert_with(|| source.to_lowercase());
            }
            _ => issues.push(LineIssue {
                line,
                message: "expected `target_root<TAB>source_root`".into(),
            }),
        }
    }
    (map, issues)
}

/// Reads `root<TAB>count` rows.
pub fn parse_frequencies(text: &str) -> (HashMap<String, u64>, Vec<LineIssue>) {
    let mut map = HashMap::new();
    let mut issues = Vec::new();
    for (line, cols) in tsv::records(text) {
        match cols[..] {
            [root, count] => match count.parse::<u64>() {
                Ok(n) => {
                    *map.entry(root.to_owned()).or_insert(0) += n;
                }
                Err(_) => issues.push(LineIssue {
                    line,
                    message: format!("bad count `{count}`"),
                }),
            },
            _ => issues.push(LineIssue {
                line,
                message: "expected `root<TAB>count`".into(),
            }),
        }
    }
    (map, issues)
}

/// Result of the lexicon pipeline.
#[derive(Clone, Debug)]
pub struct LexiconBuild {
    pub dictionary: WordFormDictionary,
    pub classified_nouns: usize,
    /// Target roots with no bilingual entry.
    pub untranslated: Vec<String>,
    /// Nouns that could not be classified or joined, with the reason.
    pub rejected: Vec<(String, String)>,
}

/// Lexicon pipeline: classify each translated noun and emit its four
/// records, then emit every verb's paradigm over `feature_space`.
pub fn build_from_lexicon(
    profile: &Profile,
    nouns: &[NounLexEntry],
    verbs: &[VerbLexEntry],
    bilingual: &HashMap<String, String>,
    feature_space: &[VerbFeatures],
) -> Result<LexiconBuild> {
    let mut build = LexiconBuild {
        dictionary: WordFormDictionary::new(Provenance::Lexicon),
        classified_nouns: 0,
        untranslated: Vec::new(),
        rejected: Vec::new(),
    };
    for noun in nouns {
        let Some(source) = bilingual.get(&noun.root) else {
            build.untranslated.push(noun.root.clone());
            continue;
        };
        let forms = classify(noun)
            .and_then(|class| noun_forms(&profile.noun_suffixes, &profile.joiner, source, &noun.root, class, |_| None));
        match forms {
            Ok(records) => {
                build.classified_nouns += 1;
                for r in records {
                    build.dictionary.push(r);
                }
            }
            Err(e) => build.rejected.push((noun.root.clone(), e.to_string())),
        }
    }
    for verb in verbs {
        for r in verb_paradigm(&profile.verbs, &profile.joiner, verb, feature_space)? {
            build.dictionary.push(r);
        }
    }
    build.dictionary.verify(&profile.joiner)?;
    Ok(build)
}

/// Per-class evidence counts for one noun pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassEvidence {
    counts: [u64; 5],
    total: u64,
}

impl ClassEvidence {
    pub fn add(&mut self, class: NounClass) {
        self.counts[class.index()] += 1;
        self.total += 1;
    }

    pub fn count(&self, class: NounClass) -> u64 {
        self.counts[class.index()]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Normalized counts; `None` without evidence.
    pub fn probabilities(&self) -> Option<[f64; 5]> {
        (self.total > 0).then(|| self.counts.map(|c| c as f64 / self.total as f64))
    }

    /// Most probable class; ties go to the class earliest in
    /// [`NounClass::TIE_BREAK`].
    pub fn best(&self) -> Option<NounClass> {
        if self.total == 0 {
            return None;
        }
        let mut best = NounClass::TIE_BREAK[0];
        for class in NounClass::TIE_BREAK {
            if self.count(class) > self.count(best) {
                best = class;
            }
        }
        Some(best)
    }
}

/// Everything observed about one (source lemma, target root) pair.
#[derive(Clone, Debug, Default)]
pub struct PairObservations {
    pub evidence: ClassEvidence,
    /// Occurrences whose suffix matched no class cell.
    pub unclassified: u64,
    /// A source surface form seen for each number-case cell.
    pub source_surfaces: BTreeMap<NumberCase, String>,
}

/// `(source lemma, target root)`.
pub type NounPairKey = (String, String);

fn noun_cell(token: &FactoredToken) -> Option<NumberCase> {
    let number: Number = token.factor(2)?.parse().ok()?;
    let case: Case = token.factor(3)?.parse().ok()?;
    Some(NumberCase::new(number, case))
}

/// Counts, for every aligned noun occurrence, each class whose table cell
/// for the observed number and case equals the observed target suffix.
///
/// Source tokens are nouns when their third and fourth factors are a
/// number and a case; target tokens must be `surface|root|suffix`.
pub fn classify_from_parallel(profile: &Profile, corpus: &[AlignedSentencePair]) -> BTreeMap<NounPairKey, PairObservations> {
    let mut out: BTreeMap<NounPairKey, PairObservations> = BTreeMap::new();
    for pair in corpus {
        for &(i, j) in &pair.alignment {
            let (source, target) = (&pair.source[i], &pair.target[j]);
            let Some(cell) = noun_cell(source) else { continue };
            let (Some(lemma), Some(root), Some(suffix)) = (source.factor(1), target.factor(1), target.factor(2)) else {
                continue;
            };
            let Ok(ending) = ending_category(root) else { continue };
            let suffix = Suffix::new(crate::factors::factor_text(suffix));
            let obs = out.entry((lemma.to_owned(), root.to_owned())).or_default();
            obs.source_surfaces.entry(cell).or_insert_with(|| source.surface().to_owned());
            let classes = profile.noun_suffixes.classes_matching(cell, ending, &suffix);
            if classes.is_empty() {
                obs.unclassified += 1;
            }
            for class in classes {
                obs.evidence.add(class);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ParallelBuild {
    pub dictionary: WordFormDictionary,
    pub classes: BTreeMap<NounPairKey, NounClass>,
    /// Pairs with no classifiable occurrence.
    pub unclassified: Vec<NounPairKey>,
    pub rejected: Vec<(NounPairKey, String)>,
}

/// Emits four records per classified pair, keeping the observed source
/// surface form for cells seen in the corpus.
pub fn build_from_parallel(profile: &Profile, evidence: &BTreeMap<NounPairKey, PairObservations>) -> Result<ParallelBuild> {
    let mut build = ParallelBuild {
        dictionary: WordFormDictionary::new(Provenance::Parallel),
        classes: BTreeMap::new(),
        unclassified: Vec::new(),
        rejected: Vec::new(),
    };
    for (key, obs) in evidence {
        let Some(class) = obs.evidence.best() else {
            build.unclassified.push(key.clone());
            continue;
        };
        let (source, target) = key;
        let forms = noun_forms(&profile.noun_suffixes, &profile.joiner, source, target, class, |cell| {
            obs.source_surfaces.get(&cell).cloned()
        });
        match forms {
            Ok(records) => {
                build.classes.insert(key.clone(), class);
                for r in records {
                    build.dictionary.push(r);
                }
            }
            Err(e) => build.rejected.push((key.clone(), e.to_string())),
        }
    }
    build.dictionary.verify(&profile.joiner)?;
    Ok(build)
}

/// Drops records whose target root occurs fewer than `min_count` times.
/// Roots missing from `freq` count as zero.
pub fn filter_infrequent(dict: &WordFormDictionary, freq: &HashMap<String, u64>, min_count: u64) -> WordFormDictionary {
    let mut out = WordFormDictionary::new(dict.provenance());
    for r in dict.records() {
        if freq.get(&r.target_root).copied().unwrap_or(0) >= min_count {
            out.push(r.clone());
        }
    }
    out
}

/// Writes a target surface token as `surface|root|suffix` using the
/// longest-root analysis, or `surface|surface|null` when none exists.
pub fn factorize_target(token: &str, splitter: &Splitter<'_>) -> FactoredToken {
    let (root, suffix) = splitter
        .split(token)
        .into_iter()
        .next()
        .unwrap_or_else(|| (token.to_owned(), Suffix::null()));
    FactoredToken::from_factors(vec![token.to_owned(), factor_value(&root), factor_value(suffix.as_str())])
}

/// A sentence pair with its word alignment (0-based `(source, target)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignedSentencePair {
    pub source: Vec<FactoredToken>,
    pub target: Vec<FactoredToken>,
    pub alignment: BTreeSet<(usize, usize)>,
}

impl AlignedSentencePair {
    pub fn new(source: Vec<FactoredToken>, target: Vec<FactoredToken>, alignment: BTreeSet<(usize, usize)>) -> Result<Self> {
        if let Some(&(i, j)) = alignment.iter().find(|(i, j)| *i >= source.len() || *j >= target.len()) {
            return Err(Error::parse(
                "alignment",
                0,
                format!("link {i}-{j} out of range for {}x{} tokens", source.len(), target.len()),
            ));
        }
        Ok(AlignedSentencePair { source, target, alignment })
    }

    /// Links token `k` to token `k` for every position both sides have.
    pub fn diagonal(source: Vec<FactoredToken>, target: Vec<FactoredToken>) -> Self {
        let alignment = (0..source.len().min(target.len())).map(|k| (k, k)).collect();
        AlignedSentencePair { source, target, alignment }
    }
}

/// Parses space-separated `i-j` links.
pub fn parse_alignment(line: &str) -> std::result::Result<BTreeSet<(usize, usize)>, String> {
    line.split_whitespace()
        .map(|link| {
            let (i, j) = link.split_once('-').ok_or_else(|| format!("bad alignment link `{link}`"))?;
            let i = i.parse().map_err(|_| format!("bad alignment link `{link}`"))?;
            let j = j.parse().map_err(|_| format!("bad alignment link `{link}`"))?;
            Ok((i, j))
        })
        .collect()
}

/// A line-aligned parallel corpus, kept as raw lines so injection can
/// reproduce it byte for byte.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParallelCorpus {
    pub source: Vec<String>,
    pub target: Vec<String>,
    /// `None` means token `k` aligns to token `k`.
    pub alignment: Option<Vec<String>>,
}

impl ParallelCorpus {
    pub fn new(source: Vec<String>, target: Vec<String>, alignment: Option<Vec<String>>) -> Result<Self> {
        if source.len() != target.len() || alignment.as_ref().is_some_and(|a| a.len() != source.len()) {
            return Err(Error::parse(
                "corpus",
                0,
                format!(
                    "line counts differ: {} source, {} target, {} alignment",
                    source.len(),
                    target.len(),
                    alignment.as_ref().map_or(source.len(), Vec::len)
                ),
            ));
        }
        Ok(ParallelCorpus { source, target, alignment })
    }

    pub fn from_texts(source: &str, target: &str, alignment: Option<&str>) -> Result<Self> {
        let lines = |t: &str| t.lines().map(str::to_owned).collect::<Vec<_>>();
        ParallelCorpus::new(lines(source), lines(target), alignment.map(lines))
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn pairs(&self) -> Result<Vec<AlignedSentencePair>> {
        (0..self.len())
            .map(|k| {
                let source = parse_sentence(&self.source[k]);
                let target = parse_sentence(&self.target[k]);
                match &self.alignment {
                    None => Ok(AlignedSentencePair::diagonal(source, target)),
                    Some(lines) => {
                        let links = parse_alignment(&lines[k]).map_err(|m| Error::parse("alignment", k + 1, m))?;
                        AlignedSentencePair::new(source, target, links).map_err(|e| match e {
                            Error::Parse { message, .. } => Error::parse("alignment", k + 1, message),
                            other => other,
                        })
                    }
                }
            })
            .collect()
    }
}

/// Common factor width of every token in `lines`, `None` when there are
/// no tokens.
pub fn corpus_width(lines: &[String], side: &str) -> Result<Option<usize>> {
    let mut width = None;
    for (k, line) in lines.iter().enumerate() {
        for token in parse_sentence(line) {
            match width {
                None => width = Some(token.width()),
                Some(w) if w != token.width() => {
                    return Err(Error::parse(
                        side,
                        k + 1,
                        format!("token `{token}` has {} factors, corpus has {w}", token.width()),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    Ok(width)
}

/// Appends one single-token sentence pair per record to `corpus`.
///
/// The original lines are kept unchanged as a prefix. In factored mode
/// records are padded with `null` to the corpus widths (`width` overrides
/// the source width); a record wider than the corpus is an error, raised
/// before anything is produced. In surface mode only surface forms are
/// written. Pairs already present in the corpus, or emitted earlier, are
/// skipped.
pub fn inject(corpus: &ParallelCorpus, dict: &WordFormDictionary, mode: Mode, width: Option<usize>) -> Result<ParallelCorpus> {
    let rendered: Vec<(String, String)> = match mode {
        Mode::Factored => {
            let widest = |f: fn(&WordFormRecord) -> FactoredToken| dict.records().iter().map(|r| f(r).width()).max();
            let source_width = match width {
                Some(w) => Some(w),
                None => corpus_width(&corpus.source, "source")?,
            }
            .or_else(|| widest(WordFormRecord::source_token))
            .unwrap_or(1);
            let target_width = corpus_width(&corpus.target, "target")?
                .or_else(|| widest(WordFormRecord::target_token))
                .unwrap_or(1);
            dict.records()
                .iter()
                .map(|r| {
                    Ok((
                        normalize_factors(&r.source_token(), source_width)?.to_string(),
                        normalize_factors(&r.target_token(), target_width)?.to_string(),
                    ))
                })
                .collect::<Result<_>>()?
        }
        Mode::Surface => dict
            .records()
            .iter()
            .map(|r| (factor_value(r.source_surface_or_root()), factor_value(&r.target_surface)))
            .collect(),
    };

    let mut seen: HashSet<(&str, &str)> = corpus.source.iter().map(String::as_str).zip(corpus.target.iter().map(String::as_str)).collect();
    let mut out = corpus.clone();
    for (source, target) in &rendered {
        if seen.insert((source.as_str(), target.as_str())) {
            out.source.push(source.clone());
            out.target.push(target.clone());
            if let Some(links) = out.alignment.as_mut() {
                links.push("0-0".to_owned());
            }
        }
    }
    Ok(out)
}

/// Number of `null` factors a token carries, for diagnostics.
pub fn null_factor_count(token: &FactoredToken) -> usize {
    token.factors().iter().filter(|f| f.as_str() == NULL).count()
}
