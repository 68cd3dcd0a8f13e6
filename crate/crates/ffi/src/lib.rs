//! C ABI over the `morphinject` toolkit.
//!
//! Every function returns an [`MiStatus`]. Results come back through out
//! pointers; strings returned that way are owned by the caller and must be
//! released with [`mi_string_free`]. After a non-OK status,
//! [`mi_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use morphinject::dict::ParallelCorpus;
use morphinject::extract::{annotate, parse_parsed, FactorSet};
use morphinject::factors::{parse_sentence, Mode};
use morphinject::grammar::Gender;
use morphinject::noun::{noun_forms, Countability};
use morphinject::oov::ToyFactoredModel;
use morphinject::{classify, ending_category, Error, NounClass, NounLexEntry, Profile, Suffix, VerbLexEntry};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Unjoinable = 4,
    Unclassifiable = 5,
    UnsupportedFeatures = 6,
    Width = 7,
    Parse = 8,
    Graph = 9,
    UnknownProfile = 10,
    Io = 11,
    Panic = 12,
}

/// Opaque language profile.
pub struct MiProfile(Profile);

/// Opaque trained toy factored model.
pub struct MiModel(ToyFactoredModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MiStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Encoding(_) => MiStatus::InvalidUtf8,
            Error::EmptyRoot | Error::IncompleteToken { .. } | Error::TestSetMismatch => MiStatus::InvalidArgument,
            Error::Unjoinable { .. } => MiStatus::Unjoinable,
            Error::Unclassifiable { .. } => MiStatus::Unclassifiable,
            Error::UnsupportedFeatures(_) => MiStatus::UnsupportedFeatures,
            Error::Width { .. } => MiStatus::Width,
            Error::Parse { .. } | Error::Pattern(_) => MiStatus::Parse,
            Error::Graph(_) | Error::NoVerb => MiStatus::Graph,
            Error::UnknownProfile(_) => MiStatus::UnknownProfile,
            Error::Io(_) => MiStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure(MiStatus::InvalidArgument, message.into())
}

fn set_last_error(message: &str) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MiStatus {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MiStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(&format!("panic: {message}"));
            MiStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(MiStatus::NullPointer, format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MiStatus::InvalidUtf8, format!("`{name}` is not valid UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, name).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(MiStatus::NullPointer, format!("`{name}` is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(MiStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> Result<(), Failure> {
    let value = CString::new(value).map_err(|_| invalid("result contains a NUL byte"))?;
    *out = value.into_raw();
    Ok(())
}

fn parse_arg<T: std::str::FromStr>(value: &str, name: &str) -> Result<T, Failure> {
    value
        .parse()
        .map_err(|_| invalid(format!("invalid {name} `{value}`")))
}

fn class_hint(class: c_char) -> Result<Option<NounClass>, Failure> {
    if class == 0 {
        return Ok(None);
    }
    let letter = (class as u8 as char).to_string();
    parse_arg(&letter, "noun class").map(Some)
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn mi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in profile by id (`"hi"`).
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mi_profile_builtin(id: *const c_char, out: *mut *mut MiProfile) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let profile = Profile::builtin(text(id, "id")?)?;
        *out = Box::into_raw(Box::new(MiProfile(profile)));
        Ok(())
    })
}

/// Loads a profile from `<dir>/<id>/`, or from `dir` itself.
///
/// # Safety
/// `dir` and `id` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mi_profile_from_dir(
    dir: *const c_char,
    id: *const c_char,
    out: *mut *mut MiProfile,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let profile = Profile::from_dir(Path::new(text(dir, "dir")?), text(id, "id")?)?;
        *out = Box::into_raw(Box::new(MiProfile(profile)));
        Ok(())
    })
}

/// # Safety
/// `profile` must come from a profile constructor and not be used after.
#[no_mangle]
pub unsafe extern "C" fn mi_profile_free(profile: *mut MiProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Writes the ending category name of `root` (e.g. `II_VOWEL`).
///
/// # Safety
/// `root` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mi_ending_category(root: *const c_char, out: *mut *mut c_char) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let category = ending_category(text(root, "root")?)?;
        write_string(out, category.to_string())
    })
}

/// Joins `suffix` (`"null"` or empty for none) onto `root`. `noun_class` is a
/// class letter `'A'`..`'E'`, or 0 for no hint.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mi_join(
    profile: *const MiProfile,
    root: *const c_char,
    suffix: *const c_char,
    noun_class: c_char,
    out: *mut *mut c_char,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let profile = &handle(profile, "profile")?.0;
        let suffix = Suffix::new(text(suffix, "suffix")?);
        let joined = profile.joiner.join(text(root, "root")?, &suffix, class_hint(noun_class)?)?;
        write_string(out, joined)
    })
}

/// Predicts the noun class of `root` and writes its letter to `out`.
/// `gender` is `m`/`f`, `countability` is `count`/`mass`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mi_classify(
    root: *const c_char,
    gender: *const c_char,
    countability: *const c_char,
    out: *mut c_char,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let entry = lex_entry(root, gender, countability, 0)?;
        *out = classify(&entry)?.as_str().as_bytes()[0] as c_char;
        Ok(())
    })
}

unsafe fn lex_entry(
    root: *const c_char,
    gender: *const c_char,
    countability: *const c_char,
    noun_class: c_char,
) -> Result<NounLexEntry, Failure> {
    let gender: Gender = parse_arg(text(gender, "gender")?, "gender")?;
    let countability: Countability = parse_arg(text(countability, "countability")?, "countability")?;
    Ok(NounLexEntry::new(text(root, "root")?, gender, countability, class_hint(noun_class)?)?)
}

/// Writes the four dictionary lines of a noun, one per line. `noun_class`
/// overrides the predicted class when non-zero.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mi_noun_paradigm(
    profile: *const MiProfile,
    source: *const c_char,
    root: *const c_char,
    gender: *const c_char,
    countability: *const c_char,
    noun_class: c_char,
    out: *mut *mut c_char,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let profile = &handle(profile, "profile")?.0;
        let source = text(source, "source")?.trim().to_lowercase();
        if source.is_empty() {
            return Err(Error::EmptyRoot.into());
        }
        let entry = lex_entry(root, gender, countability, noun_class)?;
        let class = classify(&entry)?;
        let records = noun_forms(&profile.noun_suffixes, &profile.joiner, &source, &entry.root, class, |_| None)?;
        write_string(out, records.iter().map(|r| r.to_line() + "\n").collect())
    })
}

/// Writes the dictionary lines of a verb stem over every bundle in the
/// profile's paradigm table.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mi_verb_paradigm(
    profile: *const MiProfile,
    source: *const c_char,
    stem: *const c_char,
    out: *mut *mut c_char,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let profile = &handle(profile, "profile")?.0;
        let entry = VerbLexEntry::new(text(source, "source")?, text(stem, "stem")?)?;
        let space: Vec<_> = profile.verbs.bundles().cloned().collect();
        let records = morphinject::verb_paradigm(&profile.verbs, &profile.joiner, &entry, &space)?;
        write_string(out, records.iter().map(|r| r.to_line() + "\n").collect())
    })
}

/// Annotates 6-column parses (blank-line separated sentences) with
/// source factors, one factored sentence per output line. `factors` is
/// `noun`, `verb` or `both`. Any malformed sentence fails the call.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mi_annotate(
    profile: *const MiProfile,
    parsed: *const c_char,
    factors: *const c_char,
    out: *mut *mut c_char,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let profile = &handle(profile, "profile")?.0;
        let set: FactorSet = parse_arg(text(factors, "factors")?, "factor set")?;
        let (graphs, issues) = parse_parsed(text(parsed, "parsed")?, &profile.relation_aliases);
        if let Some(issue) = issues.first() {
            return Err(Failure(MiStatus::Parse, format!("line {}: {}", issue.line, issue.message)));
        }
        let lines: String = graphs
            .iter()
            .map(|g| morphinject::factors::render_sentence(&annotate(g, set)) + "\n")
            .collect();
        write_string(out, lines)
    })
}

/// Trains a toy factored model on a line-aligned corpus. `alignment` may
/// be null, in which case each line is aligned on its diagonal. `mode` is
/// `factored` or `surface`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mi_model_train(
    source: *const c_char,
    target: *const c_char,
    alignment: *const c_char,
    mode: *const c_char,
    out: *mut *mut MiModel,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let mode: Mode = parse_arg(text(mode, "mode")?, "mode")?;
        let corpus = ParallelCorpus::from_texts(
            text(source, "source")?,
            text(target, "target")?,
            optional_text(alignment, "alignment")?,
        )?;
        let model = ToyFactoredModel::train(&corpus.pairs()?, mode)?;
        *out = Box::into_raw(Box::new(MiModel(model)));
        Ok(())
    })
}

/// Translates one factored sentence. Unknown tokens render as
/// `@UNK:form@`; their number goes to `unknown` when it is not null.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mi_model_translate(
    model: *const MiModel,
    sentence: *const c_char,
    out: *mut *mut c_char,
    unknown: *mut usize,
) -> MiStatus {
    guard(|| {
        check_out(out)?;
        let model = &handle(model, "model")?.0;
        let translations = model.translate_sentence(&parse_sentence(text(sentence, "sentence")?));
        if !unknown.is_null() {
            *unknown = translations.iter().filter(|t| t.is_unknown()).count();
        }
        let rendered: Vec<String> = translations.iter().map(|t| t.to_string()).collect();
        write_string(out, rendered.join(" "))
    })
}

/// # Safety
/// `model` must come from [`mi_model_train`] and not be used after.
#[no_mangle]
pub unsafe extern "C" fn mi_model_free(model: *mut MiModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}
