//! The `key = value` instance file.

use std::fmt;

use reeskit_core::groebner::Guards;
use reeskit_core::reescomb::Instance;
use reeskit_core::truncation::{base_ring, TruncationInstance};
use reeskit_core::verifier::Target;
use reeskit_core::{polyring::parse_poly, Error as CoreError, FieldSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}, column {column}: {message}")]
    At { line: usize, column: usize, message: String },
    #[error("{0}")]
    Missing(String),
    #[error("{0}")]
    Instance(#[from] CoreError),
}

fn at(line: usize, column: usize, message: impl Into<String>) -> FileError {
    FileError::At { line, column, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Powers,
    Truncation,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Powers => "powers",
            Mode::Truncation => "truncation",
        })
    }
}

/// A form of `f` with the position of its text, for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub mode: Mode,
    pub field: FieldSpec,
    pub n: usize,
    pub a: Vec<u32>,
    pub f: Vec<Located>,
    pub d: Option<u32>,
    pub guards: Guards,
    pub seed: u64,
}

const KEYS: [&str; 9] = ["mode", "field", "n", "a", "f", "d", "pair-cap", "deg-cap", "seed"];

/// Splits `1, 2` or `(1, 2)` into items with their 1-based columns.
fn list_items(value: &str, col: usize) -> Vec<(String, usize)> {
    let (inner, mut offset) = match value.strip_prefix('(').and_then(|v| v.strip_suffix(')')) {
        Some(inner) => (inner, col + 1),
        None => (value, col),
    };
    let mut out = Vec::new();
    for piece in inner.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let item = piece.trim();
        if !item.is_empty() {
            out.push((item.to_string(), offset + lead));
        }
        offset += piece.len() + 1;
    }
    out
}

fn number<T: std::str::FromStr>(value: &str, line: usize, col: usize, key: &str) -> Result<T, FileError> {
    value
        .parse()
        .map_err(|_| at(line, col, format!("`{key}` expects a nonnegative integer, found `{value}`")))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        let mut seen: Vec<(&str, usize)> = Vec::new();
        let mut mode = None;
        let mut field = FieldSpec::Rationals;
        let mut n = None;
        let mut a = None;
        let mut f = None;
        let mut d = None;
        let mut guards = Guards::default();
        let mut seed = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap();
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(at(line, col, "expected `key = value`"));
            };
            let key = content[..eq].trim();
            let key_col = content.len() - content.trim_start().len() + 1;
            let after = &content[eq + 1..];
            let value = after.trim();
            let col = eq + 2 + (after.len() - after.trim_start().len());
            let Some(&key) = KEYS.iter().find(|k| **k == key) else {
                return Err(at(line, key_col, format!("unknown key `{key}`")));
            };
            if let Some((_, first)) = seen.iter().find(|(k, _)| *k == key) {
                return Err(at(line, key_col, format!("duplicate key `{key}` (first set on line {first})")));
            }
            seen.push((key, line));
            if value.is_empty() {
                return Err(at(line, col, format!("`{key}` has no value")));
            }
            match key {
                "mode" => {
                    mode = Some(match value {
                        "powers" => Mode::Powers,
                        "truncation" => Mode::Truncation,
                        _ => return Err(at(line, col, format!("unknown mode `{value}` (powers or truncation)"))),
                    })
                }
                "field" => field = value.parse().map_err(|e: CoreError| at(line, col, e.to_string()))?,
                "n" => n = Some(number(value, line, col, key)?),
                "a" => {
                    let items = list_items(value, col);
                    let parsed = items
                        .iter()
                        .map(|(s, c)| number(s, line, *c, key))
                        .collect::<Result<Vec<u32>, _>>()?;
                    a = Some(parsed);
                }
                "f" => {
                    let items = list_items(value, col);
                    f = Some(
                        items
                            .into_iter()
                            .map(|(text, column)| Located { text, line, column })
                            .collect::<Vec<_>>(),
                    );
                }
                "d" => d = Some(number(value, line, col, key)?),
                "pair-cap" | "deg-cap" => {
                    let v: usize = number(value, line, col, key)?;
                    if v == 0 {
                        return Err(at(line, col, format!("`{key}` must be positive")));
                    }
                    if key == "pair-cap" {
                        guards.max_pairs = v;
                    } else {
                        guards.max_degree = u32::try_from(v).map_err(|_| at(line, col, "`deg-cap` is too large"))?;
                    }
                }
                "seed" => seed = number(value, line, col, key)?,
                _ => unreachable!(),
            }
        }
        let mode = mode.ok_or_else(|| FileError::Missing("missing key `mode`".into()))?;
        let n = n.ok_or_else(|| FileError::Missing("missing key `n`".into()))?;
        let line_of = |k: &str| seen.iter().find(|(key, _)| *key == k).map(|&(_, l)| l).unwrap();
        match mode {
            Mode::Powers => {
                for k in ["f", "d"] {
                    if seen.iter().any(|(key, _)| *key == k) {
                        return Err(at(line_of(k), 1, format!("`{k}` is a truncation key")));
                    }
                }
                if a.is_none() {
                    return Err(FileError::Missing("missing key `a`".into()));
                }
            }
            Mode::Truncation => {
                if seen.iter().any(|(key, _)| *key == "a") {
                    return Err(at(line_of("a"), 1, "`a` is a powers key"));
                }
                if f.is_none() || d.is_none() {
                    return Err(FileError::Missing("truncation mode needs `f` and `d`".into()));
                }
            }
        }
        Ok(InstanceFile { mode, field, n, a: a.unwrap_or_default(), f: f.unwrap_or_default(), d, guards, seed })
    }

    /// Builds the instance; the forms are parsed in `k[x1, ..., xn]`.
    pub fn target(&self) -> Result<Target, FileError> {
        match self.mode {
            Mode::Powers => Ok(Target::Powers(Instance::new(self.n, &self.a, self.field)?)),
            Mode::Truncation => {
                let base = base_ring(self.n, self.field)?;
                let f = self
                    .f
                    .iter()
                    .map(|loc| {
                        parse_poly(&base, &loc.text).map_err(|e| match e {
                            CoreError::Parse { column, message } => at(loc.line, loc.column + column - 1, message),
                            other => at(loc.line, loc.column, other.to_string()),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Target::Truncation(TruncationInstance::new(self.n, self.field, f, self.d.unwrap(), &self.guards)?))
            }
        }
    }

    /// The file in canonical form; parses back to an equal value.
    pub fn render(&self) -> String {
        let mut out = format!("mode = {}\nfield = {}\nn = {}\n", self.mode, self.field, self.n);
        match self.mode {
            Mode::Powers => {
                let a: Vec<String> = self.a.iter().map(u32::to_string).collect();
                out += &format!("a = {}\n", a.join(", "));
            }
            Mode::Truncation => {
                let f: Vec<&str> = self.f.iter().map(|l| l.text.as_str()).collect();
                out += &format!("f = {}\nd = {}\n", f.join(", "), self.d.unwrap());
            }
        }
        out += &format!(
            "pair-cap = {}\ndeg-cap = {}\nseed = {}\n",
            self.guards.max_pairs, self.guards.max_degree, self.seed
        );
        out
    }
}
