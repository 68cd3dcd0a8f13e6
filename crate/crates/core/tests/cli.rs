use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn morphinject(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morphinject"))
        .args(args)
        .env_remove("MORPHINJECT_PROFILE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn join_and_split() {
    let o = morphinject(&["join", "नदी", "यों"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "नदियों\n");

    let o = morphinject(&["join", "माला", "एं", "--class", "C"]);
    assert_eq!(stdout(&o), "मालाएं\n");

    let o = morphinject(&["split", "लड़कों"]);
    assert_eq!(stdout(&o), "लड़का\tओं\n");
}

#[test]
fn inflects_nouns_and_verbs() {
    let o = morphinject(&["inflect", "लड़का", "m", "count", "--source", "boy"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        ".|boy|singular|direct\tलड़का|लड़का|null\tnoun\n\
         .|boy|singular|oblique\tलड़के|लड़का|ए\tnoun\n\
         .|boy|plural|direct\tलड़के|लड़का|ए\tnoun\n\
         .|boy|plural|oblique\tलड़कों|लड़का|ओं\tnoun\n"
    );

    let o = morphinject(&["inflect", "भाग", "--verb", "--source", "run"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 12);
    assert!(out.contains(".|run|singular|first|present|simple|-\tभागता_हूँ|भाग|ता_हूँ\tverb"));
}

#[test]
fn unclassifiable_noun_is_fatal() {
    let o = morphinject(&["classify", "abc", "m", "count"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("abc"));
}

#[test]
fn bad_lexicon_lines_are_reported_and_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = dir.path().join("nouns.tsv");
    fs::write(&lexicon, "नदी\tf\tcount\nघर\tx\tcount\nलड़का\tm\tcount\n").unwrap();
    let o = morphinject(&["classify", "--lexicon", path(&lexicon)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "नदी\tII_VOWEL\tB\nलड़का\tA_VOWEL\tD\n");
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn extracts_factors_from_parses() {
    let dir = tempfile::tempdir().unwrap();
    let parsed = dir.path().join("parsed.tsv");
    fs::write(
        &parsed,
        "1\tBoys\tboy\tNNS\t2\tnsubj\n2\tate\teat\tVBD\t0\troot\n3\tapples\tapple\tNNS\t2\tdobj\n4\t.\t.\t.\t2\tpunct\n",
    )
    .unwrap();
    let o = morphinject(&["extract", "--parsed", path(&parsed), "--factors", "noun"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "boys|boy|plural|oblique ate|null|null|null apples|apple|plural|direct .|null|null|null\n"
    );
    let o = morphinject(&["extract", "--parsed", path(&parsed)]);
    assert!(stdout(&o).contains("ate|eat|plural|third|past|simple|-"));
}

#[test]
fn build_inject_simulate_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("train.src"), "boys|boy|plural|direct play|play|null|null\n").unwrap();
    fs::write(d.join("train.tgt"), "लड़के|लड़का|ए खेलते|null|null हैं|null|null\n").unwrap();
    fs::write(d.join("train.align"), "0-0 1-1\n").unwrap();
    fs::write(d.join("test.src"), "boys|boy|plural|oblique\n").unwrap();
    fs::write(d.join("nouns.tsv"), "लड़का\tm\tcount\n").unwrap();
    fs::write(d.join("bilingual.tsv"), "लड़का\tboy\n").unwrap();
    fs::write(d.join("verbs.tsv"), "").unwrap();

    let dict = d.join("dict.tsv");
    let build = |out: &Path| {
        morphinject(&[
            "build-dict",
            "lexicon",
            "--lexicon",
            path(&d.join("nouns.tsv")),
            "--verb-lexicon",
            path(&d.join("verbs.tsv")),
            "--bilingual",
            path(&d.join("bilingual.tsv")),
            "--out",
            path(out),
        ])
    };
    assert_eq!(build(&dict).status.code(), Some(0));
    let again = d.join("dict2.tsv");
    build(&again);
    assert_eq!(fs::read(&dict).unwrap(), fs::read(&again).unwrap());
    assert_eq!(fs::read_to_string(&dict).unwrap().lines().count(), 4);

    let (train_src, train_tgt, train_align, test) =
        (d.join("train.src"), d.join("train.tgt"), d.join("train.align"), d.join("test.src"));
    let corpus = [
        "--corpus-src",
        path(&train_src),
        "--corpus-tgt",
        path(&train_tgt),
        "--align",
        path(&train_align),
        "--dict",
        path(&dict),
    ];
    let prefix = d.join("augmented");
    let mut args = vec!["inject"];
    args.extend(corpus);
    args.extend(["--out", path(&prefix)]);
    let o = morphinject(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let src = fs::read_to_string(d.join("augmented.src")).unwrap();
    let tgt = fs::read_to_string(d.join("augmented.tgt")).unwrap();
    let align = fs::read_to_string(d.join("augmented.align")).unwrap();
    assert!(src.starts_with("boys|boy|plural|direct play|play|null|null\n"));
    assert_eq!(src.lines().count(), 5);
    assert_eq!(tgt.lines().count(), 5);
    assert_eq!(align.lines().collect::<Vec<_>>(), ["0-0 1-1", "0-0", "0-0", "0-0", "0-0"]);
    assert!(src.contains(".|boy|plural|oblique\n"));
    assert!(tgt.contains("लड़कों|लड़का|ओं\n"));

    let mut args = vec!["simulate"];
    args.extend(corpus);
    args.extend(["--test", path(&test), "--json"]);
    let o = morphinject(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["oov"], 1);
    assert_eq!(lines[0]["steps"]["translation"], 1);
    assert_eq!(lines[1]["oov"], 0);
    assert_eq!(lines[1]["reduction_percent"], 100.0);

    let mut args = vec!["simulate"];
    args.extend(corpus);
    args.extend(["--test", path(&test), "--mode", "surface"]);
    let o = morphinject(&args);
    assert!(stdout(&o).contains("oov_before\t0"), "{}", stdout(&o));
}

#[test]
fn wide_records_fail_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("src"), "boys|boy|plural|direct\n").unwrap();
    fs::write(d.join("tgt"), "लड़के|लड़का|ए\n").unwrap();
    fs::write(d.join("dict"), ".|run|singular|first|present|simple|-\tभागता_हूँ|भाग|ता_हूँ\tverb\n").unwrap();
    let prefix = d.join("out");
    let o = morphinject(&[
        "inject",
        "--corpus-src",
        path(&d.join("src")),
        "--corpus-tgt",
        path(&d.join("tgt")),
        "--dict",
        path(&d.join("dict")),
        "--out",
        path(&prefix),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("7 factors"));
    assert!(!d.join("out.src").exists());
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("nouns.tsv"), "नदी\tf\tcount\n").unwrap();
    fs::write(d.join("other.tsv"), "घर\tm\tcount\n").unwrap();
    let config = d.join("config.toml");
    fs::write(&config, format!("lexicon = {:?}\n", path(&d.join("nouns.tsv")))).unwrap();
    let o = morphinject(&["--config", path(&config), "classify"]);
    assert_eq!(stdout(&o), "नदी\tII_VOWEL\tB\n");
    let o = morphinject(&["--config", path(&config), "classify", "--lexicon", path(&d.join("other.tsv"))]);
    assert_eq!(stdout(&o), "घर\tCONSONANT\tE\n");

    fs::write(&config, "colour = 1\n").unwrap();
    assert_eq!(morphinject(&["--config", path(&config), "classify"]).status.code(), Some(2));
}

#[test]
fn profiles_resolve_from_flag_and_environment() {
    assert_eq!(morphinject(&["--profile", "mr", "join", "a", "null"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let hi = dir.path().join("hi");
    fs::create_dir(&hi).unwrap();
    for name in ["noun_suffixes.tsv", "joiner_rules.tsv", "verb_paradigm.tsv"] {
        let text = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/hi").join(name)).unwrap();
        fs::write(hi.join(name), text).unwrap();
    }
    let o = Command::new(env!("CARGO_BIN_EXE_morphinject"))
        .args(["join", "लड़का", "ओं"])
        .env("MORPHINJECT_PROFILE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "लड़कों\n");

    let o = Command::new(env!("CARGO_BIN_EXE_morphinject"))
        .args(["join", "लड़का", "ओं"])
        .env("MORPHINJECT_PROFILE_DIR", dir.path().join("missing"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(morphinject(&["frobnicate"]).status.code(), Some(2));
    let o = morphinject(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("build-dict"));
}
