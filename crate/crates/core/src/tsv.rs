//! Helpers for the tab-separated data files used throughout the toolkit.

use std::fmt;

/// A recoverable problem with one line of an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineIssue {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Yields `(1-based line number, columns)` for every line that is neither
/// blank nor a `#` comment.
pub(crate) fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            None
        } else {
            Some((idx + 1, line.split('\t').map(str::trim).collect()))
        }
    })
}
