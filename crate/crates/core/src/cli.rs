//! Command-line interface.
//!
//! Exit status is 0 on success, 1 when some input lines were reported and
//! skipped, and 2 on a fatal error. Diagnostics go to stderr; results go
//! to stdout or to `--out`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::dict::{
    build_from_lexicon, build_from_parallel, classify_from_parallel, factorize_target, filter_infrequent, inject,
    parse_bilingual, parse_frequencies, ParallelCorpus, WordFormDictionary,
};
use crate::extract::{annotate, parse_parsed, FactorSet};
use crate::factors::{parse_sentence, render_sentence, FactoredToken, Mode};
use crate::grammar::Gender;
use crate::noun::{classify, noun_paradigm, parse_noun_lexicon, Countability, NounClass, NounLexEntry, NounPair};
use crate::oov::simulate;
use crate::profile::{hindi, Profile};
use crate::script::{Splitter, Suffix};
use crate::tsv::LineIssue;
use crate::verb::{parse_verb_lexicon, verb_paradigm, VerbFeatures, VerbLexEntry};

pub const PROFILE_DIR_ENV: &str = "MORPHINJECT_PROFILE_DIR";

#[derive(Debug, Parser)]
#[command(name = "morphinject", version, about = "Generate inflected word forms and inject them into factored training data")]
pub struct Cli {
    /// Language profile id.
    #[arg(long, global = true)]
    profile: Option<String>,

    /// Directory holding profile TSV files.
    #[arg(long, global = true, env = PROFILE_DIR_ENV)]
    profile_dir: Option<PathBuf>,

    /// TOML file with defaults for any option; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the inflectional class of nouns.
    Classify(ClassifyArgs),
    /// Print the word-form records of a noun or verb.
    Inflect(InflectArgs),
    /// Join a root and a suffix.
    Join(JoinArgs),
    /// List root and suffix analyses of a surface form.
    Split(SplitArgs),
    /// Turn dependency parses into factored source sentences.
    Extract(ExtractArgs),
    /// Build a word-form dictionary.
    BuildDict(BuildDictArgs),
    /// Append dictionary records to a parallel corpus.
    Inject(InjectArgs),
    /// Compare OOV counts on a test set with and without injection.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    root: Option<String>,
    gender: Option<String>,
    countability: Option<String>,
    /// Noun lexicon (`root, gender, countability[, class]`).
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InflectArgs {
    /// Target root (or verb stem with --verb).
    root: Option<String>,
    gender: Option<String>,
    countability: Option<String>,
    /// Source lemma paired with the root.
    #[arg(long)]
    source: Option<String>,
    /// Force an inflectional class.
    #[arg(long)]
    class: Option<String>,
    /// Treat ROOT as a verb stem.
    #[arg(long)]
    verb: bool,
}

#[derive(Debug, Args)]
struct JoinArgs {
    root: String,
    /// Suffix; `null` or empty for none.
    suffix: String,
    #[arg(long)]
    class: Option<String>,
}

#[derive(Debug, Args)]
struct SplitArgs {
    surface: String,
    /// Noun lexicon whose roots are recognized.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Verb lexicon whose stems are recognized.
    #[arg(long)]
    verb_lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    /// Parsed input; `-` for stdin.
    #[arg(long)]
    parsed: PathBuf,
    /// noun, verb or both.
    #[arg(long, default_value = "both")]
    factors: FactorSet,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BuildDictArgs {
    #[command(subcommand)]
    source: BuildSource,
}

#[derive(Debug, Subcommand)]
enum BuildSource {
    /// From a noun lexicon, a verb lexicon and a bilingual dictionary.
    Lexicon(LexiconArgs),
    /// From an aligned factored parallel corpus.
    Parallel(ParallelArgs),
}

#[derive(Debug, Args)]
struct FilterArgs {
    /// Root frequency list (`root, count`).
    #[arg(long)]
    freq: Option<PathBuf>,
    /// Drop records whose root occurs fewer times.
    #[arg(long)]
    min_count: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LexiconArgs {
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    verb_lexicon: Option<PathBuf>,
    /// `target_root, source_root` pairs.
    #[arg(long)]
    bilingual: Option<PathBuf>,
    #[command(flatten)]
    filter: FilterArgs,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Source side, one factored sentence per line.
    #[arg(long)]
    corpus_src: Option<PathBuf>,
    /// Target side, one factored sentence per line.
    #[arg(long)]
    corpus_tgt: Option<PathBuf>,
    /// Word alignments (`i-j` pairs); token k aligns to token k without it.
    #[arg(long)]
    align: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ParallelArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Factorize a surface-only target side using this noun lexicon's roots.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[command(flatten)]
    filter: FilterArgs,
}

#[derive(Debug, Args)]
struct InjectArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Word-form dictionary to inject.
    #[arg(long)]
    dict: Option<PathBuf>,
    /// factored or surface.
    #[arg(long)]
    mode: Option<Mode>,
    /// Source factor width; defaults to the corpus width.
    #[arg(long)]
    width: Option<usize>,
    /// Output prefix; writes PREFIX.src, PREFIX.tgt and PREFIX.align.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Word-form dictionary to inject.
    #[arg(long)]
    dict: Option<PathBuf>,
    /// Factored source test sentences.
    #[arg(long)]
    test: Option<PathBuf>,
    /// factored or surface.
    #[arg(long)]
    mode: Option<Mode>,
    /// Factor width; defaults to the corpus width.
    #[arg(long)]
    width: Option<usize>,
    /// Print JSON report lines.
    #[arg(long)]
    json: bool,
}

/// Defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    profile: Option<String>,
    profile_dir: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    verb_lexicon: Option<PathBuf>,
    bilingual: Option<PathBuf>,
    freq: Option<PathBuf>,
    min_count: Option<u64>,
    corpus_src: Option<PathBuf>,
    corpus_tgt: Option<PathBuf>,
    align: Option<PathBuf>,
    dict: Option<PathBuf>,
    test: Option<PathBuf>,
    mode: Option<String>,
    width: Option<usize>,
}

struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Fatal>;

struct Session<'a> {
    config: Config,
    profile: Profile,
    profile_dir: Option<PathBuf>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    line_issues: usize,
}

/// Runs the tool with `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(0) => 0,
        Ok(_) => 1,
        Err(Fatal(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            2
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome<usize> {
    let config: Config = match &cli.config {
        Some(path) => toml::from_str(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))?,
        None => Config::default(),
    };
    let profile_id = cli.profile.clone().or_else(|| config.profile.clone()).unwrap_or_else(|| "hi".to_owned());
    let profile_dir = cli.profile_dir.clone().or_else(|| config.profile_dir.clone());
    let profile = match &profile_dir {
        Some(dir) => Profile::from_dir(dir, &profile_id)?,
        None => Profile::builtin(&profile_id)?,
    };
    let mut session = Session {
        config,
        profile,
        profile_dir,
        stdout,
        stderr,
        line_issues: 0,
    };
    match cli.command {
        Command::Classify(a) => session.classify(a)?,
        Command::Inflect(a) => session.inflect(a)?,
        Command::Join(a) => session.join(a)?,
        Command::Split(a) => session.split(a)?,
        Command::Extract(a) => session.extract(a)?,
        Command::BuildDict(a) => match a.source {
            BuildSource::Lexicon(a) => session.build_lexicon(a)?,
            BuildSource::Parallel(a) => session.build_parallel(a)?,
        },
        Command::Inject(a) => session.inject(a)?,
        Command::Simulate(a) => session.simulate(a)?,
    }
    session.stdout.flush()?;
    Ok(session.line_issues)
}

fn read(path: &Path) -> Outcome<String> {
    if path == Path::new("-") {
        return Ok(io::read_to_string(io::stdin())?);
    }
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn lines(text: &str) -> Vec<String> {
    text.lines().map(str::to_owned).collect()
}

fn parse_class(text: Option<&str>) -> Outcome<Option<NounClass>> {
    text.map(|c| c.parse::<NounClass>().map_err(Fatal)).transpose()
}

impl Session<'_> {
    fn report(&mut self, origin: &str, issues: &[LineIssue]) {
        for issue in issues {
            let _ = writeln!(self.stderr, "{origin}: {issue}");
        }
        self.line_issues += issues.len();
    }

    fn warn(&mut self, message: &str) {
        let _ = writeln!(self.stderr, "warning: {message}");
        self.line_issues += 1;
    }

    /// Reads a data file given by flag or config, falling back to the
    /// profile directory and then to the built-in sample data.
    fn data(&self, flag: Option<&PathBuf>, config: Option<&PathBuf>, file: &str, option: &str) -> Outcome<(String, String)> {
        if let Some(path) = flag.or(config) {
            return Ok((read(path)?, path.display().to_string()));
        }
        if let Some(dir) = &self.profile_dir {
            for candidate in [dir.join(&self.profile.id).join(file), dir.join(file)] {
                if candidate.is_file() {
                    return Ok((read(&candidate)?, candidate.display().to_string()));
                }
            }
        }
        let builtin = match (self.profile.id.as_str(), file) {
            ("hi", "noun_lexicon.tsv") => Some(hindi::NOUN_LEXICON),
            ("hi", "verb_lexicon.tsv") => Some(hindi::VERB_LEXICON),
            ("hi", "bilingual.tsv") => Some(hindi::BILINGUAL),
            ("hi", "frequencies.tsv") => Some(hindi::FREQUENCIES),
            _ => None,
        };
        match builtin {
            Some(text) if self.profile_dir.is_none() => Ok((text.to_owned(), format!("builtin:{file}"))),
            _ => Err(Fatal(format!("missing --{option}"))),
        }
    }

    fn noun_lexicon(&mut self, flag: Option<&PathBuf>) -> Outcome<Vec<NounLexEntry>> {
        let config = self.config.lexicon.clone();
        let (text, origin) = self.data(flag, config.as_ref(), "noun_lexicon.tsv", "lexicon")?;
        let (entries, issues) = parse_noun_lexicon(&text);
        self.report(&origin, &issues);
        Ok(entries)
    }

    fn verb_lexicon(&mut self, flag: Option<&PathBuf>) -> Outcome<Vec<VerbLexEntry>> {
        let config = self.config.verb_lexicon.clone();
        let (text, origin) = self.data(flag, config.as_ref(), "verb_lexicon.tsv", "verb-lexicon")?;
        let (entries, issues) = parse_verb_lexicon(&text);
        self.report(&origin, &issues);
        Ok(entries)
    }

    fn feature_space(&self) -> Vec<VerbFeatures> {
        self.profile.verbs.bundles().cloned().collect()
    }

    fn write_dictionary(&mut self, dict: &WordFormDictionary, out: Option<&PathBuf>) -> Outcome<()> {
        match out {
            Some(path) => dict.write_to(io::BufWriter::new(fs::File::create(path)?))?,
            None => dict.write_to(&mut *self.stdout)?,
        }
        Ok(())
    }

    fn filter(&mut self, dict: WordFormDictionary, args: &FilterArgs) -> Outcome<WordFormDictionary> {
        let min_count = args.min_count.or(self.config.min_count);
        let path = args.freq.clone().or_else(|| self.config.freq.clone());
        let Some(min_count) = min_count else {
            return Ok(dict);
        };
        let (text, origin) = self.data(path.as_ref(), None, "frequencies.tsv", "freq")?;
        let (freq, issues) = parse_frequencies(&text);
        self.report(&origin, &issues);
        Ok(filter_infrequent(&dict, &freq, min_count))
    }

    fn corpus(&mut self, args: &CorpusArgs) -> Outcome<ParallelCorpus> {
        let src = args.corpus_src.clone().or_else(|| self.config.corpus_src.clone()).ok_or(Fatal("missing --corpus-src".into()))?;
        let tgt = args.corpus_tgt.clone().or_else(|| self.config.corpus_tgt.clone()).ok_or(Fatal("missing --corpus-tgt".into()))?;
        let align = args.align.clone().or_else(|| self.config.align.clone());
        let align = align.map(|p| read(&p).map(|t| lines(&t))).transpose()?;
        Ok(ParallelCorpus::new(lines(&read(&src)?), lines(&read(&tgt)?), align)?)
    }

    fn dictionary(&mut self, flag: Option<&PathBuf>) -> Outcome<WordFormDictionary> {
        let path = flag.cloned().or_else(|| self.config.dict.clone()).ok_or(Fatal("missing --dict".into()))?;
        let (dict, issues) = WordFormDictionary::parse(&read(&path)?);
        self.report(&path.display().to_string(), &issues);
        Ok(dict)
    }

    fn mode(&self, flag: Option<Mode>) -> Outcome<Mode> {
        match flag {
            Some(m) => Ok(m),
            None => match &self.config.mode {
                Some(m) => m.parse().map_err(Fatal),
                None => Ok(Mode::Factored),
            },
        }
    }

    fn classify(&mut self, a: ClassifyArgs) -> Outcome<()> {
        let entries = match (&a.root, &a.gender, &a.countability) {
            (Some(root), Some(gender), Some(countability)) => {
                let gender: Gender = gender.parse().map_err(Fatal)?;
                let countability: Countability = countability.parse().map_err(Fatal)?;
                vec![NounLexEntry::new(root.as_str(), gender, countability, None)?]
            }
            (None, None, None) => self.noun_lexicon(a.lexicon.as_ref())?,
            _ => return Err(Fatal("give ROOT GENDER COUNTABILITY or --lexicon".into())),
        };
        let single = a.root.is_some();
        for entry in &entries {
            match classify(entry) {
                Ok(class) => writeln!(self.stdout, "{}\t{}\t{}", entry.root, entry.ending, class)?,
                Err(e) if single => return Err(e.into()),
                Err(e) => self.warn(&e.to_string()),
            }
        }
        Ok(())
    }

    fn inflect(&mut self, a: InflectArgs) -> Outcome<()> {
        let root = a.root.ok_or(Fatal("missing ROOT".into()))?;
        let source = a.source.unwrap_or_else(|| root.clone());
        let records = if a.verb {
            let entry = VerbLexEntry::new(&source, &root)?;
            verb_paradigm(&self.profile.verbs, &self.profile.joiner, &entry, &self.feature_space())?
        } else {
            let (Some(gender), Some(countability)) = (a.gender, a.countability) else {
                return Err(Fatal("nouns need ROOT GENDER COUNTABILITY".into()));
            };
            let entry = NounLexEntry::new(root, gender.parse().map_err(Fatal)?, countability.parse().map_err(Fatal)?, parse_class(a.class.as_deref())?)?;
            noun_paradigm(&self.profile.noun_suffixes, &self.profile.joiner, &NounPair::new(&source, entry)?)?
        };
        for r in records {
            writeln!(self.stdout, "{}", r.to_line())?;
        }
        Ok(())
    }

    fn join(&mut self, a: JoinArgs) -> Outcome<()> {
        let surface = self.profile.joiner.join(&a.root, &Suffix::new(a.suffix), parse_class(a.class.as_deref())?)?;
        writeln!(self.stdout, "{surface}")?;
        Ok(())
    }

    fn split(&mut self, a: SplitArgs) -> Outcome<()> {
        let mut roots: Vec<String> = self.noun_lexicon(a.lexicon.as_ref())?.into_iter().map(|e| e.root).collect();
        roots.extend(self.verb_lexicon(a.verb_lexicon.as_ref())?.into_iter().map(|e| e.root));
        let suffixes = self.profile.suffix_inventory();
        let splitter = Splitter::new(&self.profile.joiner, roots, &suffixes);
        for (root, suffix) in splitter.split(&a.surface) {
            writeln!(self.stdout, "{root}\t{suffix}")?;
        }
        Ok(())
    }

    fn extract(&mut self, a: ExtractArgs) -> Outcome<()> {
        let text = read(&a.parsed)?;
        let (graphs, issues) = parse_parsed(&text, &self.profile.relation_aliases);
        self.report(&a.parsed.display().to_string(), &issues);
        let mut out = String::new();
        for g in &graphs {
            out.push_str(&render_sentence(&annotate(g, a.factors)));
            out.push('\n');
        }
        match &a.out {
            Some(path) => fs::write(path, out)?,
            None => self.stdout.write_all(out.as_bytes())?,
        }
        Ok(())
    }

    fn build_lexicon(&mut self, a: LexiconArgs) -> Outcome<()> {
        let nouns = self.noun_lexicon(a.lexicon.as_ref())?;
        let verbs = self.verb_lexicon(a.verb_lexicon.as_ref())?;
        let config = self.config.bilingual.clone();
        let (text, origin) = self.data(a.bilingual.as_ref(), config.as_ref(), "bilingual.tsv", "bilingual")?;
        let (bilingual, issues) = parse_bilingual(&text);
        self.report(&origin, &issues);
        let build = build_from_lexicon(&self.profile, &nouns, &verbs, &bilingual, &self.feature_space())?;
        for root in &build.untranslated {
            let _ = writeln!(self.stderr, "note: no translation for `{root}`, skipped");
        }
        for (root, reason) in &build.rejected {
            self.warn(&format!("{root}: {reason}"));
        }
        let dict = self.filter(build.dictionary, &a.filter)?;
        self.write_dictionary(&dict, a.filter.out.as_ref())
    }

    fn build_parallel(&mut self, a: ParallelArgs) -> Outcome<()> {
        let mut corpus = self.corpus(&a.corpus)?;
        if a.lexicon.is_some() {
            let roots: Vec<String> = self.noun_lexicon(a.lexicon.as_ref())?.into_iter().map(|e| e.root).collect();
            let suffixes = self.profile.suffix_inventory();
            let splitter = Splitter::new(&self.profile.joiner, roots, &suffixes);
            for line in &mut corpus.target {
                let tokens: Vec<FactoredToken> = parse_sentence(line).iter().map(|t| factorize_target(t.surface(), &splitter)).collect();
                *line = render_sentence(&tokens);
            }
        }
        let pairs = corpus.pairs()?;
        let evidence = classify_from_parallel(&self.profile, &pairs);
        let build = build_from_parallel(&self.profile, &evidence)?;
        for (source, target) in &build.unclassified {
            let _ = writeln!(self.stderr, "note: no class evidence for {source} / {target}, skipped");
        }
        for ((source, target), reason) in &build.rejected {
            self.warn(&format!("{source} / {target}: {reason}"));
        }
        let dict = self.filter(build.dictionary, &a.filter)?;
        self.write_dictionary(&dict, a.filter.out.as_ref())
    }

    fn inject(&mut self, a: InjectArgs) -> Outcome<()> {
        let corpus = self.corpus(&a.corpus)?;
        let dict = self.dictionary(a.dict.as_ref())?;
        let mode = self.mode(a.mode)?;
        let width = a.width.or(self.config.width);
        let out = inject(&corpus, &dict, mode, width)?;
        let join = |v: &[String]| v.iter().map(|l| format!("{l}\n")).collect::<String>();
        let alignment = out
            .alignment
            .clone()
            .unwrap_or_else(|| out.source.iter().zip(&out.target).map(|(s, t)| diagonal(s, t)).collect());
        match &a.out {
            Some(prefix) => {
                let with = |ext: &str| {
                    let mut p = prefix.clone().into_os_string();
                    p.push(ext);
                    PathBuf::from(p)
                };
                fs::write(with(".src"), join(&out.source))?;
                fs::write(with(".tgt"), join(&out.target))?;
                fs::write(with(".align"), join(&alignment))?;
            }
            None => {
                for (s, t) in out.source.iter().zip(&out.target) {
                    writeln!(self.stdout, "{s}\t{t}")?;
                }
            }
        }
        let _ = writeln!(self.stderr, "appended {} of {} records", out.len() - corpus.len(), dict.len());
        Ok(())
    }

    fn simulate(&mut self, a: SimulateArgs) -> Outcome<()> {
        let corpus = self.corpus(&a.corpus)?;
        let dict = self.dictionary(a.dict.as_ref())?;
        let test_path = a.test.clone().or_else(|| self.config.test.clone()).ok_or(Fatal("missing --test".into()))?;
        let test: Vec<Vec<FactoredToken>> = read(&test_path)?.lines().map(parse_sentence).collect();
        let mode = self.mode(a.mode)?;
        let comparison = simulate(&corpus, &dict, &test, mode, a.width.or(self.config.width))?;
        if a.json {
            for line in comparison.json_lines() {
                writeln!(self.stdout, "{line}")?;
            }
        } else {
            let (b, c) = (&comparison.before, &comparison.after);
            writeln!(self.stdout, "tokens\t{}", b.total_tokens)?;
            writeln!(self.stdout, "oov_before\t{}\t(translation {}, generation {})", b.oov_tokens, b.translation_failures, b.generation_failures)?;
            writeln!(self.stdout, "oov_after\t{}\t(translation {}, generation {})", c.oov_tokens, c.translation_failures, c.generation_failures)?;
            match (comparison.reduction_percent(), comparison.retained_percent()) {
                (Some(r), Some(k)) => writeln!(self.stdout, "reduction\t{r:.2}%\nretained\t{k:.2}%")?,
                _ => writeln!(self.stdout, "reduction\tn/a")?,
            }
        }
        Ok(())
    }
}

fn diagonal(source: &str, target: &str) -> String {
    let n = source.split_whitespace().count().min(target.split_whitespace().count());
    (0..n).map(|k| format!("{k}-{k}")).collect::<Vec<_>>().join(" ")
}
