//! Source-side factor extraction from dependency-parsed English.
//!
//! Reads tab-separated parses (`index, form, lemma, pos, head, relation`, or
//! 10-column CoNLL-U) and derives tense/aspect/modality, person, number,
//! gender and direct/oblique case, then writes factored tokens.
//!
//! The rules work on Stanford typed-dependency labels. Other label sets
//! are mapped onto them through [`RelationAliases`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factors::{factor_value, FactoredToken, NULL};
use crate::grammar::{Aspect, Case, Number, Person, Tense};
use crate::tsv::{self, LineIssue};
use crate::verb::NO_MODALITY;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepToken {
    /// 1-based position.
    pub index: usize,
    pub form: String,
    pub lemma: String,
    /// Penn Treebank tag.
    pub pos: String,
    /// Head index; 0 for the root.
    pub head: usize,
    pub rel: String,
}

impl DepToken {
    pub fn new(index: usize, form: &str, lemma: &str, pos: &str, head: usize, rel: &str) -> Self {
        DepToken {
            index,
            form: form.to_owned(),
            lemma: lemma.to_owned(),
            pos: pos.to_owned(),
            head,
            rel: rel.to_owned(),
        }
    }

    pub fn is_noun(&self) -> bool {
        self.pos.starts_with("NN")
    }

    pub fn is_verb(&self) -> bool {
        self.pos.starts_with("VB")
    }

    /// Lemma, falling back to the lowercased form when the parse has none.
    pub fn lemma_or_form(&self) -> String {
        if self.lemma.is_empty() || self.lemma == "_" {
            self.form.to_lowercase()
        } else {
            self.lemma.to_lowercase()
        }
    }
}

/// The canonical relation names the extraction rules use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Relation {
    Nsubj,
    Dobj,
    Prep,
    Prepc,
    Pobj,
}

impl Relation {
    pub const ALL: [Relation; 5] = [Relation::Nsubj, Relation::Dobj, Relation::Prep, Relation::Prepc, Relation::Pobj];

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Nsubj => "nsubj",
            Relation::Dobj => "dobj",
            Relation::Prep => "prep",
            Relation::Prepc => "prepc",
            Relation::Pobj => "pobj",
        }
    }
}

/// Canonical relation → accepted input labels.
///
/// A label is accepted when it equals an alias or extends it with `_` or
/// `:` (so `prep` accepts collapsed `prep_in` and `obl` accepts `obl:tmod`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationAliases {
    map: BTreeMap<Relation, Vec<String>>,
}

impl Default for RelationAliases {
    fn default() -> Self {
        let mut map = BTreeMap::new();
        map.insert(Relation::Nsubj, vec!["nsubj".into()]);
        map.insert(Relation::Dobj, vec!["dobj".into(), "obj".into()]);
        map.insert(Relation::Prep, vec!["prep".into(), "prepc".into(), "obl".into(), "nmod".into()]);
        map.insert(Relation::Prepc, vec!["prepc".into()]);
        map.insert(Relation::Pobj, vec!["pobj".into()]);
        RelationAliases { map }
    }
}

impl RelationAliases {
    /// Parses `canonical<TAB>label[,label...]` rows. Canonical relations
    /// missing from the file keep only their own name as alias.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut map: BTreeMap<Relation, Vec<String>> =
            Relation::ALL.into_iter().map(|r| (r, vec![r.as_str().to_owned()])).collect();
        for (line, cols) in tsv::records(text) {
            let [canonical, labels] = cols[..] else {
                return Err(Error::parse(origin, line, format!("expected 2 columns, found {}", cols.len())));
            };
            let relation = Relation::ALL
                .into_iter()
                .find(|r| r.as_str() == canonical)
                .ok_or_else(|| Error::parse(origin, line, format!("unknown canonical relation `{canonical}`")))?;
            map.insert(
                relation,
                labels.split(',').map(str::trim).filter(|l| !l.is_empty()).map(str::to_owned).collect(),
            );
        }
        Ok(RelationAliases { map })
    }

    pub fn matches(&self, relation: Relation, label: &str) -> bool {
        self.map.get(&relation).is_some_and(|aliases| {
            aliases.iter().any(|a| {
                label == a
                    || label
                        .strip_prefix(a.as_str())
                        .is_some_and(|rest| rest.starts_with('_') || rest.starts_with(':'))
            })
        })
    }
}

const AUX_RELS: [&str; 4] = ["aux", "auxpass", "aux:pass", "cop"];

/// A dependency-parsed sentence.
#[derive(Clone, Debug)]
pub struct DepGraph {
    tokens: Vec<DepToken>,
    aliases: RelationAliases,
}

impl DepGraph {
    /// Validates indices, heads, the single root and acyclicity.
    pub fn new(tokens: Vec<DepToken>, aliases: RelationAliases) -> Result<Self> {
        let n = tokens.len();
        for (i, t) in tokens.iter().enumerate() {
            if t.index != i + 1 {
                return Err(Error::Graph(format!("token {} has index {}", i + 1, t.index)));
            }
            if t.head > n {
                return Err(Error::Graph(format!("token {} has head {} out of range", t.index, t.head)));
            }
            if t.head == t.index {
                return Err(Error::Graph(format!("token {} heads itself", t.index)));
            }
            if t.rel.is_empty() {
                return Err(Error::Graph(format!("token {} has no relation", t.index)));
            }
        }
        let roots = tokens.iter().filter(|t| t.head == 0).count();
        if n > 0 && roots != 1 {
            return Err(Error::Graph(format!("expected one root, found {roots}")));
        }
        for start in &tokens {
            let mut at = start.head;
            let mut steps = 0;
            while at != 0 {
                steps += 1;
                if steps > n {
                    return Err(Error::Graph(format!("head chain from token {} has a cycle", start.index)));
                }
                at = tokens[at - 1].head;
            }
        }
        Ok(DepGraph { tokens, aliases })
    }

    pub fn tokens(&self) -> &[DepToken] {
        &self.tokens
    }

    pub fn token(&self, index: usize) -> Option<&DepToken> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn root(&self) -> Option<&DepToken> {
        self.tokens.iter().find(|t| t.head == 0)
    }

    pub fn children(&self, index: usize) -> impl Iterator<Item = &DepToken> {
        self.tokens.iter().filter(move |t| t.head == index)
    }

    fn is(&self, relation: Relation, token: &DepToken) -> bool {
        self.aliases.matches(relation, &token.rel)
    }

    fn child_with(&self, head: usize, relation: Relation) -> Option<&DepToken> {
        self.children(head).find(|t| self.is(relation, t))
    }

    fn is_auxiliary(&self, token: &DepToken) -> bool {
        token.pos == "MD" || AUX_RELS.contains(&token.rel.as_str())
    }

    /// Verbs that are not auxiliaries, copulas or modals.
    pub fn main_verbs(&self) -> impl Iterator<Item = &DepToken> {
        self.tokens.iter().filter(|t| t.is_verb() && !self.is_auxiliary(t))
    }

    /// The sentence subject: the `nsubj` dependent of the root.
    pub fn subject(&self) -> Option<&DepToken> {
        self.root().and_then(|root| self.child_with(root.index, Relation::Nsubj))
    }

    /// The direct object of the root.
    pub fn direct_object(&self) -> Option<&DepToken> {
        self.root().and_then(|root| self.child_with(root.index, Relation::Dobj))
    }

    /// Subject of a particular verb, falling back to the sentence subject.
    fn subject_of(&self, verb: &DepToken) -> Option<&DepToken> {
        self.child_with(verb.index, Relation::Nsubj).or_else(|| self.subject())
    }
}

/// Reads a parsed-input file. Sentences are separated by blank lines;
/// malformed sentences are reported by the line they start on and skipped.
pub fn parse_parsed(text: &str, aliases: &RelationAliases) -> (Vec<DepGraph>, Vec<LineIssue>) {
    let mut graphs = Vec::new();
    let mut issues = Vec::new();
    let mut tokens: Vec<DepToken> = Vec::new();
    let mut start = 0;
    let mut broken: Option<String> = None;

    let mut finish = |tokens: &mut Vec<DepToken>, broken: &mut Option<String>, start: usize| {
        if let Some(message) = broken.take() {
            issues.push(LineIssue { line: start, message });
        } else if !tokens.is_empty() {
            match DepGraph::new(std::mem::take(tokens), aliases.clone()) {
                Ok(g) => graphs.push(g),
                Err(e) => issues.push(LineIssue {
                    line: start,
                    message: e.to_string(),
                }),
            }
        }
        tokens.clear();
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            finish(&mut tokens, &mut broken, start);
            start = 0;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if start == 0 {
            start = idx + 1;
        }
        if broken.is_some() {
            continue;
        }
        match parse_token_line(line) {
            Ok(Some(token)) => tokens.push(token),
            Ok(None) => {}
            Err(message) => broken = Some(format!("line {}: {message}", idx + 1)),
        }
    }
    finish(&mut tokens, &mut broken, start);
    (graphs, issues)
}

fn parse_token_line(line: &str) -> std::result::Result<Option<DepToken>, String> {
    let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
    let (index, form, lemma, pos, head, rel) = match cols.len() {
        6 => (cols[0], cols[1], cols[2], cols[3], cols[4], cols[5]),
        n if n >= 8 => {
            let pos = if cols[4] != "_" { cols[4] } else { cols[3] };
            (cols[0], cols[1], cols[2], pos, cols[6], cols[7])
        }
        n => return Err(format!("expected 6 or 10 columns, found {n}")),
    };
    if index.contains('-') || index.contains('.') {
        // multiword ranges and empty nodes carry no dependency
        return Ok(None);
    }
    let index = index.parse().map_err(|_| format!("bad token index `{index}`"))?;
    let head = head.parse().map_err(|_| format!("bad head `{head}`"))?;
    Ok(Some(DepToken::new(index, form, lemma, pos, head, rel)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TamResult {
    pub tense: Vec<Tense>,
    /// Only progressive and perfect are ever recorded.
    pub aspect: Vec<Aspect>,
    pub modality: Vec<String>,
}

impl TamResult {
    fn has_tense(&self, tense: Tense) -> bool {
        self.tense.contains(&tense)
    }

    fn has_aspect(&self, aspect: Aspect) -> bool {
        self.aspect.contains(&aspect)
    }
}

fn tam_over<'a>(tokens: impl IntoIterator<Item = &'a DepToken>) -> TamResult {
    let mut out = TamResult::default();
    for token in tokens {
        match token.pos.as_str() {
            "VBP" | "VBZ" | "VB" => out.tense.push(Tense::Present),
            "VBD" => out.tense.push(Tense::Past),
            "MD" => {
                let word = token.form.to_lowercase();
                if word == "can" || word == "could" {
                    out.modality.push(word);
                } else {
                    out.tense.push(Tense::Future);
                }
            }
            "VBG" => out.aspect.push(Aspect::Progressive),
            "VBN" => out.aspect.push(Aspect::Perfect),
            _ => {}
        }
    }
    out
}

/// Tense, aspect and modality read off the POS tags of every token.
pub fn tam(graph: &DepGraph) -> TamResult {
    tam_over(graph.tokens())
}

/// Person of the sentence subject, by pronoun lookup. Non-pronoun and
/// missing subjects are third person.
pub fn person(graph: &DepGraph) -> Person {
    person_of(graph.subject())
}

fn person_of(subject: Option<&DepToken>) -> Person {
    match subject.map(|s| s.form.to_lowercase()).as_deref() {
        Some("i" | "we") => Person::First,
        Some("you") => Person::Second,
        _ => Person::Third,
    }
}

/// Number of the subject from its noun tag; `None` when the subject is
/// missing or not tagged as a noun.
pub fn subject_number(graph: &DepGraph) -> Option<Number> {
    number_of(graph.subject())
}

fn number_of(token: Option<&DepToken>) -> Option<Number> {
    let pos = &token?.pos;
    if !pos.starts_with("NN") {
        None
    } else if pos.ends_with('S') {
        Some(Number::Plural)
    } else {
        Some(Number::Singular)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubjectGender {
    /// `+musc`
    Masculine,
    /// `-musc`
    NonMasculine,
    Neutral,
    Unknown,
}

impl SubjectGender {
    pub fn as_str(self) -> &'static str {
        match self {
            SubjectGender::Masculine => "+musc",
            SubjectGender::NonMasculine => "-musc",
            SubjectGender::Neutral => "neutral",
            SubjectGender::Unknown => "unknown",
        }
    }
}

/// Gender of the subject from the pronouns he/she/it only.
pub fn subject_gender(graph: &DepGraph) -> SubjectGender {
    match graph.subject().map(|s| s.form.to_lowercase()).as_deref() {
        Some("he") => SubjectGender::Masculine,
        Some("she") => SubjectGender::NonMasculine,
        Some("it") => SubjectGender::Neutral,
        _ => SubjectGender::Unknown,
    }
}

/// Noun token index → case.
pub type CaseMap = BTreeMap<usize, Case>;

/// Direct/oblique case of every noun.
///
/// The subject is oblique when the sentence has a direct object and is in
/// past, present perfect or past perfect tense. Objects of prepositions
/// are oblique. Every other noun is direct.
pub fn noun_cases(graph: &DepGraph, tam: &TamResult) -> CaseMap {
    let mut cases = CaseMap::new();
    let perfective = tam.has_tense(Tense::Past) || (tam.has_tense(Tense::Present) && tam.has_aspect(Aspect::Perfect));
    if let (Some(subject), Some(_)) = (graph.subject(), graph.direct_object()) {
        if perfective && subject.is_noun() {
            cases.insert(subject.index, Case::Oblique);
        }
    }
    for token in graph.tokens().iter().filter(|t| t.is_noun()) {
        let prepositional = graph.is(Relation::Pobj, token)
            || graph.is(Relation::Prep, token)
            || graph.is(Relation::Prepc, token);
        if prepositional {
            cases.insert(token.index, Case::Oblique);
        }
    }
    for token in graph.tokens().iter().filter(|t| t.is_noun()) {
        cases.entry(token.index).or_insert(Case::Direct);
    }
    cases
}

/// Lemma of the main verb with auxiliaries and modals removed.
pub fn main_verb_lemma(graph: &DepGraph) -> Result<String> {
    let root = graph.root().filter(|r| r.is_verb() && !graph.is_auxiliary(r));
    root.or_else(|| graph.main_verbs().next())
        .map(DepToken::lemma_or_form)
        .ok_or(Error::NoVerb)
}

/// Which factors [`annotate`] fills in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSet {
    /// `surface|lemma|number|case`
    Noun,
    /// `surface|lemma|number|person|tense|aspect|modality`
    Verb,
    /// Both, padded to the verb width.
    NounVerb,
}

impl FactorSet {
    pub fn width(self) -> usize {
        match self {
            FactorSet::Noun => 4,
            FactorSet::Verb | FactorSet::NounVerb => 7,
        }
    }

    fn nouns(self) -> bool {
        matches!(self, FactorSet::Noun | FactorSet::NounVerb)
    }

    fn verbs(self) -> bool {
        matches!(self, FactorSet::Verb | FactorSet::NounVerb)
    }
}

impl std::str::FromStr for FactorSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "noun" => Ok(FactorSet::Noun),
            "verb" => Ok(FactorSet::Verb),
            "both" | "noun-verb" => Ok(FactorSet::NounVerb),
            _ => Err(format!("unknown factor set `{s}` (expected noun, verb or both)")),
        }
    }
}

/// TAM of one verb along its own auxiliary chain, first value in surface
/// order for each slot.
fn verb_tam(graph: &DepGraph, verb: &DepToken) -> (Option<Tense>, Aspect, Option<String>) {
    let mut chain: Vec<&DepToken> = graph.children(verb.index).filter(|t| graph.is_auxiliary(t)).collect();
    chain.push(verb);
    chain.sort_by_key(|t| t.index);
    let tam = tam_over(chain);
    (
        tam.tense.first().copied(),
        tam.aspect.first().copied().unwrap_or(Aspect::Simple),
        tam.modality.into_iter().next(),
    )
}

/// Writes every token of the sentence as a factored token of uniform width.
pub fn annotate(graph: &DepGraph, set: FactorSet) -> Vec<FactoredToken> {
    let sentence_tam = tam(graph);
    let cases = noun_cases(graph, &sentence_tam);
    let width = set.width();
    graph
        .tokens()
        .iter()
        .map(|token| {
            let mut factors = vec![factor_value(&token.form.to_lowercase())];
            if set.nouns() && token.is_noun() {
                factors.push(factor_value(&token.lemma_or_form()));
                factors.push(number_of(Some(token)).map_or(NULL, Number::as_str).to_owned());
                factors.push(cases.get(&token.index).map_or(NULL, |c| c.as_str()).to_owned());
            } else if set.verbs() && token.is_verb() && !graph.is_auxiliary(token) {
                let subject = graph.subject_of(token);
                let (tense, aspect, modality) = verb_tam(graph, token);
                factors.push(factor_value(&token.lemma_or_form()));
                factors.push(number_of(subject).map_or(NULL, Number::as_str).to_owned());
                factors.push(person_of(subject).as_str().to_owned());
                factors.push(tense.map_or(NULL, Tense::as_str).to_owned());
                factors.push(aspect.as_str().to_owned());
                factors.push(modality.unwrap_or_else(|| NO_MODALITY.to_owned()));
            }
            factors.resize(width, NULL.to_owned());
            FactoredToken::from_factors(factors)
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Builds a graph from `(form, lemma, pos, head, rel)` rows.
    pub fn graph(rows: &[(&str, &str, &str, usize, &str)]) -> DepGraph {
        let tokens = rows
            .iter()
            .enumerate()
            .map(|(i, (form, lemma, pos, head, rel))| DepToken::new(i + 1, form, lemma, pos, *head, rel))
            .collect();
        DepGraph::new(tokens, RelationAliases::default()).unwrap()
    }

    pub fn boys_ate_apples() -> DepGraph {
        graph(&[
            ("Boys", "boy", "NNS", 2, "nsubj"),
            ("ate", "eat", "VBD", 0, "root"),
            ("apples", "apple", "NNS", 2, "dobj"),
        ])
    }

    pub fn boys_went_to_school() -> DepGraph {
        graph(&[
            ("Boys", "boy", "NNS", 2, "nsubj"),
            ("went", "go", "VBD", 0, "root"),
            ("to", "to", "TO", 2, "prep"),
            ("school", "school", "NN", 3, "pobj"),
        ])
    }

    pub fn fishes_live_in_the_rivers() -> DepGraph {
        graph(&[
            ("Fishes", "fish", "NNS", 2, "nsubj"),
            ("live", "live", "VBP", 0, "root"),
            ("in", "in", "IN", 2, "prep"),
            ("the", "the", "DT", 5, "det"),
            ("rivers", "river", "NNS", 3, "pobj"),
        ])
    }

    pub fn pronoun_subject(pronoun: &str, pos: &str) -> DepGraph {
        graph(&[(pronoun, &pronoun.to_lowercase(), pos, 2, "nsubj"), ("swim", "swim", "VBP", 0, "root")])
    }
}
