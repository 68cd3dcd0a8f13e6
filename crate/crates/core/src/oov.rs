//! Out-of-vocabulary measurement with a count-based toy factored model.
//!
//! In factored mode a source token translates in two steps: its lemma and
//! morphological factors map to a target `(root, suffix)` pair, which a
//! generation table then maps to a target surface form. Either lookup can
//! miss. In surface mode a source surface maps straight to a target
//! surface.
//!
//! Reports serialize as one JSON object per line with the keys `label`,
//! `total`, `oov`, `steps` (`translation`, `generation`), `test_set_sha256`
//! and, for the post-injection line, `reduction_percent` and
//! `retained_percent`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dict::{inject, AlignedSentencePair, ParallelCorpus, WordFormDictionary};
use crate::error::{Error, Result};
use crate::factors::{FactoredToken, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Translation,
    Generation,
}

impl Step {
    pub fn as_str(self) -> &'static str {
        match self {
            Step::Translation => "translation",
            Step::Generation => "generation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Translation {
    Known(String),
    Unknown { form: String, step: Step },
}

impl Translation {
    pub fn is_unknown(&self) -> bool {
        matches!(self, Translation::Unknown { .. })
    }
}

impl fmt::Display for Translation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Translation::Known(s) => f.write_str(s),
            Translation::Unknown { form, .. } => write!(f, "@UNK:{form}@"),
        }
    }
}

type CountTable = HashMap<String, BTreeMap<String, u64>>;

/// Highest count wins; ties go to the lexicographically smallest key.
fn best(options: &BTreeMap<String, u64>) -> Option<&str> {
    let mut top: Option<(&str, u64)> = None;
    for (k, &n) in options {
        if top.is_none_or(|(_, m)| n > m) {
            top = Some((k, n));
        }
    }
    top.map(|(k, _)| k)
}

#[derive(Clone, Debug)]
pub struct ToyFactoredModel {
    mode: Mode,
    translation: CountTable,
    generation: CountTable,
}

impl ToyFactoredModel {
    pub fn empty(mode: Mode) -> Self {
        ToyFactoredModel {
            mode,
            translation: HashMap::new(),
            generation: HashMap::new(),
        }
    }

    /// Counts one translation (and, in factored mode, one generation)
    /// entry per aligned token pair.
    pub fn train(pairs: &[AlignedSentencePair], mode: Mode) -> Result<Self> {
        let mut model = ToyFactoredModel::empty(mode);
        for pair in pairs {
            for &(i, j) in &pair.alignment {
                model.observe(&pair.source[i], &pair.target[j])?;
            }
        }
        Ok(model)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn source_key(&self, token: &FactoredToken) -> Option<String> {
        match self.mode {
            Mode::Surface => Some(token.surface().to_owned()),
            Mode::Factored if token.width() >= 2 => Some(token.factors()[1..].join("|")),
            Mode::Factored => None,
        }
    }

    /// Adds one aligned token pair.
    pub fn observe(&mut self, source: &FactoredToken, target: &FactoredToken) -> Result<()> {
        match self.mode {
            Mode::Surface => {
                self.add_translation(source.surface(), target.surface());
            }
            Mode::Factored => {
                if source.width() < 2 {
                    return Err(Error::IncompleteToken { token: source.to_string(), needed: 2 });
                }
                if target.width() < 3 {
                    return Err(Error::IncompleteToken { token: target.to_string(), needed: 3 });
                }
                let key = self.source_key(source).unwrap_or_default();
                let analysis = format!("{}|{}", target.factors()[1], target.factors()[2]);
                self.add_translation(&key, &analysis);
                self.add_generation(&analysis, target.surface());
            }
        }
        Ok(())
    }

    /// Adds a translation entry; in factored mode `source_key` is the
    /// source token without its surface and `target` is `root|suffix`.
    pub fn add_translation(&mut self, source_key: &str, target: &str) {
        *self.translation.entry(source_key.to_owned()).or_default().entry(target.to_owned()).or_insert(0) += 1;
    }

    /// Adds a generation entry from `root|suffix` to a surface form.
    pub fn add_generation(&mut self, analysis: &str, surface: &str) {
        *self.generation.entry(analysis.to_owned()).or_default().entry(surface.to_owned()).or_insert(0) += 1;
    }

    pub fn translate_token(&self, token: &FactoredToken) -> Translation {
        let unknown = |step| Translation::Unknown {
            form: token.surface().to_owned(),
            step,
        };
        let Some(target) = self
            .source_key(token)
            .and_then(|k| self.translation.get(&k))
            .and_then(best)
        else {
            return unknown(Step::Translation);
        };
        match self.mode {
            Mode::Surface => Translation::Known(target.to_owned()),
            Mode::Factored => match self.generation.get(target).and_then(best) {
                Some(surface) => Translation::Known(surface.to_owned()),
                None => unknown(Step::Generation),
            },
        }
    }

    pub fn translate_sentence(&self, tokens: &[FactoredToken]) -> Vec<Translation> {
        tokens.iter().map(|t| self.translate_token(t)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OovReport {
    pub total_tokens: usize,
    pub oov_tokens: usize,
    pub translation_failures: usize,
    pub generation_failures: usize,
    /// Unknown surface forms with their counts.
    pub oov_forms: BTreeMap<String, usize>,
    /// SHA-256 of the test set, so reports over different sets are not
    /// compared.
    pub test_set_sha256: String,
}

pub fn test_set_digest(test: &[Vec<FactoredToken>]) -> String {
    let mut hasher = Sha256::new();
    for sentence in test {
        for token in sentence {
            hasher.update(token.to_string().as_bytes());
            hasher.update(b" ");
        }
        hasher.update(b"\n");
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn count_oov(model: &ToyFactoredModel, test: &[Vec<FactoredToken>]) -> OovReport {
    let mut report = OovReport {
        total_tokens: 0,
        oov_tokens: 0,
        translation_failures: 0,
        generation_failures: 0,
        oov_forms: BTreeMap::new(),
        test_set_sha256: test_set_digest(test),
    };
    for token in test.iter().flatten() {
        report.total_tokens += 1;
        if let Translation::Unknown { form, step } = model.translate_token(token) {
            report.oov_tokens += 1;
            match step {
                Step::Translation => report.translation_failures += 1,
                Step::Generation => report.generation_failures += 1,
            }
            *report.oov_forms.entry(form).or_insert(0) += 1;
        }
    }
    report
}

/// `100 * (before - after) / before`; `None` when `before` is zero.
pub fn reduction_percent(before: usize, after: usize) -> Option<f64> {
    (before > 0).then(|| 100.0 * (before as f64 - after as f64) / before as f64)
}

/// `100 * after / before`; `None` when `before` is zero.
pub fn retained_percent(before: usize, after: usize) -> Option<f64> {
    (before > 0).then(|| 100.0 * after as f64 / before as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OovComparison {
    pub before: OovReport,
    pub after: OovReport,
}

impl OovComparison {
    pub fn reduction_percent(&self) -> Option<f64> {
        reduction_percent(self.before.oov_tokens, self.after.oov_tokens)
    }

    pub fn retained_percent(&self) -> Option<f64> {
        retained_percent(self.before.oov_tokens, self.after.oov_tokens)
    }

    /// The two JSON report lines.
    pub fn json_lines(&self) -> [String; 2] {
        [
            report_json("baseline", &self.before, None),
            report_json("injected", &self.after, Some(self)),
        ]
    }
}

pub fn compare(before: OovReport, after: OovReport) -> Result<OovComparison> {
    if before.test_set_sha256 != after.test_set_sha256 || before.total_tokens != after.total_tokens {
        return Err(Error::TestSetMismatch);
    }
    Ok(OovComparison { before, after })
}

#[derive(Serialize)]
struct StepsJson {
    translation: usize,
    generation: usize,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    label: &'a str,
    total: usize,
    oov: usize,
    steps: StepsJson,
    test_set_sha256: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduction_percent: Option<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    retained_percent: Option<Option<f64>>,
}

fn report_json(label: &str, report: &OovReport, comparison: Option<&OovComparison>) -> String {
    let json = ReportJson {
        label,
        total: report.total_tokens,
        oov: report.oov_tokens,
        steps: StepsJson {
            translation: report.translation_failures,
            generation: report.generation_failures,
        },
        test_set_sha256: &report.test_set_sha256,
        reduction_percent: comparison.map(|c| c.reduction_percent().map(round2)),
        retained_percent: comparison.map(|c| c.retained_percent().map(round2)),
    };
    serde_json::to_string(&json).expect("report serializes")
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Trains on `corpus` with and without `dict` injected and measures OOV
/// on `test` both times.
pub fn simulate(
    corpus: &ParallelCorpus,
    dict: &WordFormDictionary,
    test: &[Vec<FactoredToken>],
    mode: Mode,
    width: Option<usize>,
) -> Result<OovComparison> {
    let base = ToyFactoredModel::train(&corpus.pairs()?, mode)?;
    let injected = inject(corpus, dict, mode, width)?;
    let augmented = ToyFactoredModel::train(&injected.pairs()?, mode)?;
    compare(count_oov(&base, test), count_oov(&augmented, test))
}
