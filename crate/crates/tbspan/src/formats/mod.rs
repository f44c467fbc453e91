//! Text formats: PACE-style graphs and plain edge lists ([`gr`]) and PACE
//! tree decompositions ([`td`]).

pub mod gr;
pub mod td;

use std::fmt;

/// Written graph or tree format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    /// `p tw <n> <m>` header, then 1-based `u v` lines.
    #[default]
    Pace,
    /// One `u v` line per edge using vertex labels; isolated vertices on
    /// lines of their own.
    Edgelist,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Pace => "pace",
            Format::Edgelist => "edgelist",
        })
    }
}

#[derive(Debug, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

pub(crate) fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Non-empty, non-comment lines with their 1-based line numbers. Comments
/// start with `c` as a whole token or with `#`.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            None => None,
            Some(&"c") => None,
            Some(t) if t.starts_with('#') => None,
            Some(_) => Some((i + 1, tokens)),
        }
    })
}

pub(crate) fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token.parse().or_else(|_| parse_err(line, format!("{what} must be a non-negative integer, got {token:?}")))
}
