use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use morphinject_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
    mi_string_free(s);
    owned
}

fn last_error() -> String {
    let p = mi_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p).to_str().unwrap().to_owned() }
}

struct Hindi(*mut MiProfile);

impl Hindi {
    fn new() -> Self {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { mi_profile_builtin(c("hi").as_ptr(), &mut p) }, MiStatus::Ok);
        Hindi(p)
    }
}

impl Drop for Hindi {
    fn drop(&mut self) {
        unsafe { mi_profile_free(self.0) }
    }
}

#[test]
fn join_with_and_without_hint() {
    let hi = Hindi::new();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(mi_join(hi.0, c("नदी").as_ptr(), c("यों").as_ptr(), 0, &mut out), MiStatus::Ok);
        assert_eq!(take(out), "नदियों");
        assert_eq!(mi_join(hi.0, c("लड़का").as_ptr(), c("null").as_ptr(), b'D' as c_char, &mut out), MiStatus::Ok);
        assert_eq!(take(out), "लड़का");
        assert_eq!(
            mi_join(hi.0, c("लड़का").as_ptr(), c("ओं").as_ptr(), b'Z' as c_char, &mut out),
            MiStatus::InvalidArgument
        );
    }
    assert!(last_error().contains("noun class"));
}

#[test]
fn unjoinable_suffix_reports_status_and_message() {
    let hi = Hindi::new();
    let mut out = ptr::null_mut();
    let status = unsafe { mi_join(hi.0, c("लड़का").as_ptr(), c("xyz").as_ptr(), 0, &mut out) };
    assert_eq!(status, MiStatus::Unjoinable);
    assert!(out.is_null());
    assert!(last_error().contains("xyz"));
}

#[test]
fn classify_and_ending_category() {
    let mut class: c_char = 0;
    unsafe {
        assert_eq!(mi_classify(c("नदी").as_ptr(), c("f").as_ptr(), c("count").as_ptr(), &mut class), MiStatus::Ok);
        assert_eq!(class as u8, b'B');
        assert_eq!(mi_classify(c("घर").as_ptr(), c("m").as_ptr(), c("count").as_ptr(), &mut class), MiStatus::Ok);
        assert_eq!(class as u8, b'E');
        assert_eq!(
            mi_classify(c("abc").as_ptr(), c("m").as_ptr(), c("count").as_ptr(), &mut class),
            MiStatus::Unclassifiable
        );
        let mut out = ptr::null_mut();
        assert_eq!(mi_ending_category(c("नदी").as_ptr(), &mut out), MiStatus::Ok);
        assert_eq!(take(out), "II_VOWEL");
    }
}

#[test]
fn noun_and_verb_paradigms() {
    let hi = Hindi::new();
    let mut out = ptr::null_mut();
    unsafe {
        let status = mi_noun_paradigm(
            hi.0,
            c("Boy").as_ptr(),
            c("लड़का").as_ptr(),
            c("m").as_ptr(),
            c("count").as_ptr(),
            0,
            &mut out,
        );
        assert_eq!(status, MiStatus::Ok);
        assert_eq!(
            take(out),
            ".|boy|singular|direct\tलड़का|लड़का|null\tnoun\n\
             .|boy|singular|oblique\tलड़के|लड़का|ए\tnoun\n\
             .|boy|plural|direct\tलड़के|लड़का|ए\tnoun\n\
             .|boy|plural|oblique\tलड़कों|लड़का|ओं\tnoun\n"
        );

        assert_eq!(mi_verb_paradigm(hi.0, c("run").as_ptr(), c("भाग").as_ptr(), &mut out), MiStatus::Ok);
        let verbs = take(out);
        assert_eq!(verbs.lines().count(), 12);
        assert!(verbs.contains(".|run|singular|first|present|simple|-\tभागता_हूँ|भाग|ता_हूँ\tverb"));
    }
}

#[test]
fn annotate_parses() {
    let hi = Hindi::new();
    let parsed = "1\tBoys\tboy\tNNS\t2\tnsubj\n2\tate\teat\tVBD\t0\troot\n3\tapples\tapple\tNNS\t2\tdobj\n";
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(mi_annotate(hi.0, c(parsed).as_ptr(), c("noun").as_ptr(), &mut out), MiStatus::Ok);
        assert_eq!(take(out), "boys|boy|plural|oblique ate|null|null|null apples|apple|plural|direct\n");
        let broken = "1\tBoys\tboy\tNNS\n";
        assert_eq!(mi_annotate(hi.0, c(broken).as_ptr(), c("noun").as_ptr(), &mut out), MiStatus::Parse);
        assert_eq!(
            mi_annotate(hi.0, c(parsed).as_ptr(), c("adjective").as_ptr(), &mut out),
            MiStatus::InvalidArgument
        );
    }
}

#[test]
fn model_translates_and_counts_unknowns() {
    let src = c("boys|boy|plural|direct play|play|null|null\n");
    let tgt = c("लड़के|लड़का|ए खेलते|खेल|ते\n");
    let mut model = ptr::null_mut();
    unsafe {
        assert_eq!(
            mi_model_train(src.as_ptr(), tgt.as_ptr(), ptr::null(), c("factored").as_ptr(), &mut model),
            MiStatus::Ok
        );
        let mut out = ptr::null_mut();
        let mut unknown = 99usize;
        let sentence = c("boys|boy|plural|direct boys|boy|plural|oblique");
        assert_eq!(mi_model_translate(model, sentence.as_ptr(), &mut out, &mut unknown), MiStatus::Ok);
        assert_eq!(unknown, 1);
        assert_eq!(take(out), "लड़के @UNK:boys@");
        assert_eq!(mi_model_translate(model, sentence.as_ptr(), &mut out, ptr::null_mut()), MiStatus::Ok);
        mi_string_free(out);
        mi_model_free(model);

        let short = c("boys\n");
        assert_eq!(
            mi_model_train(short.as_ptr(), tgt.as_ptr(), ptr::null(), c("factored").as_ptr(), &mut model),
            MiStatus::InvalidArgument
        );
        assert_eq!(
            mi_model_train(src.as_ptr(), tgt.as_ptr(), ptr::null(), c("phrase").as_ptr(), &mut model),
            MiStatus::InvalidArgument
        );
    }
}

#[test]
fn null_and_invalid_inputs() {
    let mut p = ptr::null_mut();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(mi_profile_builtin(ptr::null(), &mut p), MiStatus::NullPointer);
        assert_eq!(mi_profile_builtin(c("hi").as_ptr(), ptr::null_mut()), MiStatus::NullPointer);
        assert_eq!(mi_profile_builtin(c("mr").as_ptr(), &mut p), MiStatus::UnknownProfile);
        assert!(last_error().contains("mr"));
        assert_eq!(mi_join(ptr::null(), c("a").as_ptr(), c("b").as_ptr(), 0, &mut out), MiStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(mi_ending_category(bad.as_ptr() as *const c_char, &mut out), MiStatus::InvalidUtf8);
        assert_eq!(mi_profile_from_dir(c("/nonexistent").as_ptr(), c("hi").as_ptr(), &mut p), MiStatus::Io);
        mi_string_free(ptr::null_mut());
        mi_profile_free(ptr::null_mut());
        mi_model_free(ptr::null_mut());
    }
    let hi = Hindi::new();
    let mut category = ptr::null_mut();
    assert_eq!(unsafe { mi_ending_category(c("नदी").as_ptr(), &mut category) }, MiStatus::Ok);
    assert!(mi_last_error_message().is_null());
    unsafe { mi_string_free(category) };
    drop(hi);
}

#[test]
fn profile_from_directory() {
    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/hi");
    for name in ["noun_suffixes.tsv", "joiner_rules.tsv", "verb_paradigm.tsv"] {
        std::fs::copy(data.join(name), dir.path().join(name)).unwrap();
    }
    let mut p = ptr::null_mut();
    let path = c(dir.path().to_str().unwrap());
    unsafe {
        assert_eq!(mi_profile_from_dir(path.as_ptr(), c("hi").as_ptr(), &mut p), MiStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(mi_join(p, c("लड़का").as_ptr(), c("ओं").as_ptr(), 0, &mut out), MiStatus::Ok);
        assert_eq!(take(out), "लड़कों");
        mi_profile_free(p);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/morphinject.h")).unwrap();
    for name in [
        "mi_last_error_message",
        "mi_string_free",
        "mi_profile_builtin",
        "mi_profile_from_dir",
        "mi_profile_free",
        "mi_ending_category",
        "mi_join",
        "mi_classify",
        "mi_noun_paradigm",
        "mi_verb_paradigm",
        "mi_annotate",
        "mi_model_train",
        "mi_model_translate",
        "mi_model_free",
        "typedef struct MiProfile MiProfile",
        "typedef struct MiModel MiModel",
        "MI_STATUS_UNJOINABLE = 4",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Builds the static library into a private target directory, since test
/// builds only produce the rlib.
fn static_library() -> PathBuf {
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).join("staticlib");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let status = Command::new(cargo)
        .args(["build", "--quiet", "--lib", "-p", "morphinject-ffi", "--target-dir"])
        .arg(&target)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .expect("cargo runs");
    assert!(status.success());
    target.join("debug/libmorphinject_ffi.a")
}

#[test]
fn c_program_links_against_static_library() {
    let lib = static_library();
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8(run.stdout).unwrap(), "ok\n");
}
