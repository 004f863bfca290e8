//! Plain-text array files.
//!
//! ```text
//! kind=universal n=4 q=2 rows=5 d=2 method=greedy
//! 0000
//! 0111
//! ...
//! ```
//!
//! Line 1 holds space-separated `key=value` pairs: `kind`, `n`, `q`, `rows`
//! in that order, then whichever of `d`, `method`, `r`, `s`, `seed` apply,
//! alphabetically. Each following line is one row written in base-36
//! digits. Lines end in LF, the last one included, and no other whitespace
//! appears.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matrix::{CffSpec, SymbolMatrix, UniversalSpec, MAX_ALPHABET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayKind {
    Universal,
    Cff,
    Raw,
}

impl ArrayKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ArrayKind::Universal => "universal",
            ArrayKind::Cff => "cff",
            ArrayKind::Raw => "raw",
        }
    }
}

impl FromStr for ArrayKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "universal" => Ok(ArrayKind::Universal),
            "cff" => Ok(ArrayKind::Cff),
            "raw" => Ok(ArrayKind::Raw),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayFileHeader {
    pub kind: ArrayKind,
    pub n: usize,
    pub q: usize,
    pub rows: usize,
    pub d: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub method: Option<String>,
    pub seed: Option<u64>,
}

impl ArrayFileHeader {
    fn for_matrix(kind: ArrayKind, m: &SymbolMatrix) -> Self {
        Self {
            kind,
            n: m.n(),
            q: m.q(),
            rows: m.len(),
            d: None,
            r: None,
            s: None,
            method: None,
            seed: None,
        }
    }

    pub fn raw(m: &SymbolMatrix) -> Self {
        Self::for_matrix(ArrayKind::Raw, m)
    }

    pub fn universal(m: &SymbolMatrix, d: usize) -> Self {
        Self {
            d: Some(d),
            ..Self::for_matrix(ArrayKind::Universal, m)
        }
    }

    pub fn cff(m: &SymbolMatrix, r: usize, s: usize) -> Self {
        Self {
            r: Some(r),
            s: Some(s),
            ..Self::for_matrix(ArrayKind::Cff, m)
        }
    }

    pub fn with_method(mut self, method: impl Into<String>) -> Self {
        self.method = Some(method.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Checks that do not need the rows.
    fn validate(&self) -> Result<(), String> {
        if self.n == 0 {
            return Err("n must be positive".into());
        }
        if !(2..=MAX_ALPHABET).contains(&self.q) {
            return Err(format!("q={} outside 2..={MAX_ALPHABET}", self.q));
        }
        if let Some(method) = &self.method {
            if method.is_empty() || method.chars().any(|c| c.is_whitespace() || c == '=') {
                return Err(format!("method {method:?} must be non-empty without whitespace or '='"));
            }
        }
        match self.kind {
            ArrayKind::Universal => {
                if self.r.is_some() || self.s.is_some() {
                    return Err("kind=universal does not take r or s".into());
                }
                let d = self.d.ok_or("kind=universal requires d")?;
                UniversalSpec::new(self.n, d, self.q).map_err(|e| e.to_string())?;
            }
            ArrayKind::Cff => {
                if self.d.is_some() {
                    return Err("kind=cff does not take d".into());
                }
                let (r, s) = self.r.zip(self.s).ok_or("kind=cff requires r and s")?;
                if self.q != 2 {
                    return Err("kind=cff requires q=2".into());
                }
                CffSpec::new(self.n, r, s).map_err(|e| e.to_string())?;
            }
            ArrayKind::Raw => {
                if self.d.is_some() || self.r.is_some() || self.s.is_some() {
                    return Err("kind=raw takes none of d, r, s".into());
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ArrayFileHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kind={} n={} q={} rows={}",
            self.kind.as_str(),
            self.n,
            self.q,
            self.rows
        )?;
        if let Some(d) = self.d {
            write!(f, " d={d}")?;
        }
        if let Some(method) = &self.method {
            write!(f, " method={method}")?;
        }
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        if let Some(s) = self.s {
            write!(f, " s={s}")?;
        }
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        Ok(())
    }
}

/// Where a row-count mismatch was noticed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    EndOfInput,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::EndOfInput => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed header at line 1: {0}")]
    MalformedHeader(String),
    #[error("row length mismatch at line {line}: expected {expected} symbols, found {found}")]
    RowLength { line: usize, expected: usize, found: usize },
    #[error("invalid digit {found:?} at line {line}")]
    InvalidDigit { line: usize, found: char },
    #[error("symbol out of range at line {line}: {symbol:?} is not below q={q}")]
    SymbolOutOfRange { line: usize, symbol: char, q: usize },
    #[error("row count mismatch at {at}: header declares {declared}, found {found}")]
    RowCountMismatch { at: Location, declared: usize, found: usize },
    #[error("missing trailing newline at line {line}")]
    MissingNewline { line: usize },
    #[error("header does not match matrix: {0}")]
    Inconsistent(String),
}

/// Serialize `m` under `header`.
pub fn write_array(m: &SymbolMatrix, header: &ArrayFileHeader) -> Result<String, FormatError> {
    header.validate().map_err(FormatError::Inconsistent)?;
    if header.n != m.n() || header.q != m.q() || header.rows != m.len() {
        return Err(FormatError::Inconsistent(format!(
            "header says n={} q={} rows={}, matrix is n={} q={} rows={}",
            header.n,
            header.q,
            header.rows,
            m.n(),
            m.q(),
            m.len()
        )));
    }
    let mut out = String::with_capacity((m.n() + 1) * (m.len() + 1) + 64);
    out.push_str(&header.to_string());
    out.push('\n');
    for i in 0..m.len() {
        out.push_str(&m.row_digits(i));
        out.push('\n');
    }
    Ok(out)
}

const OPTIONAL_KEYS: [&str; 5] = ["d", "method", "r", "s", "seed"];

fn parse_number<T: FromStr>(key: &str, value: &str) -> Result<T, FormatError> {
    if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FormatError::MalformedHeader(format!("{key}={value:?} is not a non-negative integer")));
    }
    value
        .parse()
        .map_err(|_| FormatError::MalformedHeader(format!("{key}={value} is out of range")))
}

fn parse_header(line: &str) -> Result<ArrayFileHeader, FormatError> {
    let bad = |msg: String| FormatError::MalformedHeader(msg);
    let mut pairs = Vec::new();
    for token in line.split(' ') {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| bad(format!("token {token:?} is not key=value")))?;
        pairs.push((key, value));
    }
    let fixed = ["kind", "n", "q", "rows"];
    if pairs.len() < fixed.len() || pairs.iter().zip(fixed).any(|((k, _), want)| *k != want) {
        return Err(bad("header must start with kind, n, q, rows in that order".into()));
    }
    let mut header = ArrayFileHeader {
        kind: pairs[0].1.parse().map_err(bad)?,
        n: parse_number("n", pairs[1].1)?,
        q: parse_number("q", pairs[2].1)?,
        rows: parse_number("rows", pairs[3].1)?,
        d: None,
        r: None,
        s: None,
        method: None,
        seed: None,
    };
    let mut last_rank = None;
    for &(key, value) in &pairs[4..] {
        let rank = OPTIONAL_KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| bad(format!("unknown key {key:?}")))?;
        if last_rank.is_some_and(|last| rank <= last) {
            return Err(bad(format!("key {key:?} repeated or out of alphabetical order")));
        }
        last_rank = Some(rank);
        match key {
            "d" => header.d = Some(parse_number(key, value)?),
            "method" => header.method = Some(value.to_string()),
            "r" => header.r = Some(parse_number(key, value)?),
            "s" => header.s = Some(parse_number(key, value)?),
            "seed" => header.seed = Some(parse_number(key, value)?),
            _ => unreachable!(),
        }
    }
    header.validate().map_err(bad)?;
    Ok(header)
}

/// Parse a document produced by [`write_array`], checking every invariant.
pub fn read_array(text: &str) -> Result<(SymbolMatrix, ArrayFileHeader), FormatError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    // a terminated document splits into a trailing empty piece
    if lines.last() == Some(&"") && lines.len() > 1 {
        lines.pop();
    } else {
        return Err(FormatError::MissingNewline { line: lines.len() });
    }
    let header = parse_header(lines[0])?;
    let body = &lines[1..];
    let mut cells = Vec::with_capacity(header.n * header.rows);
    for (i, row) in body.iter().enumerate() {
        let line = i + 2;
        if i >= header.rows {
            return Err(FormatError::RowCountMismatch {
                at: Location::Line(line),
                declared: header.rows,
                found: body.len(),
            });
        }
        let found = row.chars().count();
        if found != header.n {
            return Err(FormatError::RowLength {
                line,
                expected: header.n,
                found,
            });
        }
        for ch in row.chars() {
            let value = match ch {
                '0'..='9' | 'a'..='z' => ch.to_digit(36).expect("base-36 digit") as usize,
                _ => return Err(FormatError::InvalidDigit { line, found: ch }),
            };
            if value >= header.q {
                return Err(FormatError::SymbolOutOfRange {
                    line,
                    symbol: ch,
                    q: header.q,
                });
            }
            cells.push(value as u8);
        }
    }
    if body.len() < header.rows {
        return Err(FormatError::RowCountMismatch {
            at: Location::EndOfInput,
            declared: header.rows,
            found: body.len(),
        });
    }
    let m = SymbolMatrix::from_flat(header.n, header.q, cells)
        .map_err(|e| FormatError::Inconsistent(e.to_string()))?;
    Ok((m, header))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(rows: &[&str]) -> SymbolMatrix {
        SymbolMatrix::from_digit_rows(2, rows).unwrap()
    }

    #[test]
    fn raw_encoding() {
        let m = bin(&["00", "11"]);
        assert_eq!(
            write_array(&m, &ArrayFileHeader::raw(&m)).unwrap(),
            "kind=raw n=2 q=2 rows=2\n00\n11\n"
        );
    }

    #[test]
    fn optional_keys_alphabetical() {
        let m = bin(&["01", "10"]);
        let h = ArrayFileHeader::cff(&m, 1, 1).with_method("derand").with_seed(7);
        let text = write_array(&m, &h).unwrap();
        assert_eq!(text, "kind=cff n=2 q=2 rows=2 method=derand r=1 s=1 seed=7\n01\n10\n");
        assert_eq!(read_array(&text).unwrap(), (m, h));
    }

    #[test]
    fn base36_rows() {
        let m = SymbolMatrix::from_digit_rows(36, &["0az", "9b1"]).unwrap();
        let h = ArrayFileHeader::universal(&m, 1);
        let text = write_array(&m, &h).unwrap();
        assert_eq!(text, "kind=universal n=3 q=36 rows=2 d=1\n0az\n9b1\n");
        assert_eq!(read_array(&text).unwrap().0, m);
    }

    #[test]
    fn read_single_row() {
        let (m, h) = read_array("kind=raw n=2 q=2 rows=1\n01\n").unwrap();
        assert_eq!(m, bin(&["01"]));
        assert_eq!(h.kind, ArrayKind::Raw);
    }

    #[test]
    fn read_errors_name_their_line() {
        assert_eq!(
            read_array("kind=raw n=2 q=2 rows=2\n01\n"),
            Err(FormatError::RowCountMismatch {
                at: Location::EndOfInput,
                declared: 2,
                found: 1
            })
        );
        assert_eq!(
            read_array("kind=raw n=2 q=2 rows=1\n02\n"),
            Err(FormatError::SymbolOutOfRange {
                line: 2,
                symbol: '2',
                q: 2
            })
        );
        assert_eq!(
            read_array("kind=raw n=2 q=2 rows=1\n01\n10\n"),
            Err(FormatError::RowCountMismatch {
                at: Location::Line(3),
                declared: 1,
                found: 2
            })
        );
        assert_eq!(
            read_array("kind=raw n=3 q=2 rows=1\n01\n"),
            Err(FormatError::RowLength {
                line: 2,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            read_array("kind=raw n=2 q=2 rows=1\n0A\n"),
            Err(FormatError::InvalidDigit { line: 2, found: 'A' })
        );
        assert_eq!(
            read_array("kind=raw n=2 q=2 rows=1\n01"),
            Err(FormatError::MissingNewline { line: 2 })
        );
        assert_eq!(read_array(""), Err(FormatError::MissingNewline { line: 1 }));
    }

    #[test]
    fn malformed_headers() {
        for text in [
            "n=2 kind=raw q=2 rows=0\n",
            "kind=raw n=2 q=2\n",
            "kind=raw n=2 q=2 rows=0 extra=1\n",
            "kind=raw n=2 q=2 rows=0 s=1 r=1\n",
            "kind=raw n=2 q=2 rows=0 d=1\n",
            "kind=universal n=2 q=2 rows=0\n",
            "kind=universal n=2 q=2 rows=0 d=3\n",
            "kind=cff n=2 q=3 rows=0 r=1 s=1\n",
            "kind=cff n=2 q=2 rows=0 r=1\n",
            "kind=raw n=2 q=1 rows=0\n",
            "kind=raw n=2 q=37 rows=0\n",
            "kind=raw  n=2 q=2 rows=0\n",
            "kind=raw n=-2 q=2 rows=0\n",
            "kind=matrix n=2 q=2 rows=0\n",
            "kind=raw n=2 q=2 rows=0 \n",
        ] {
            assert!(
                matches!(read_array(text), Err(FormatError::MalformedHeader(_))),
                "{text:?}"
            );
        }
    }

    #[test]
    fn write_rejects_mismatch() {
        let m = bin(&["01"]);
        let mut h = ArrayFileHeader::raw(&m);
        h.rows = 2;
        assert!(matches!(write_array(&m, &h), Err(FormatError::Inconsistent(_))));
        let h = ArrayFileHeader::raw(&m).with_method("two words");
        assert!(matches!(write_array(&m, &h), Err(FormatError::Inconsistent(_))));
        let h = ArrayFileHeader::universal(&m, 3);
        assert!(matches!(write_array(&m, &h), Err(FormatError::Inconsistent(_))));
    }

    #[test]
    fn pairwise_set_document() {
        let m = bin(&["0000", "0111", "1011", "1101", "1110"]);
        let text = write_array(&m, &ArrayFileHeader::universal(&m, 2)).unwrap();
        assert_eq!(text.lines().count(), 6);
        let (back, header) = read_array(&text).unwrap();
        assert!(crate::verify::verify_universal(&back, header.d.unwrap()).unwrap().is_valid());
    }

    #[test]
    fn empty_matrix_round_trip() {
        let m = SymbolMatrix::empty(3, 2).unwrap();
        let text = write_array(&m, &ArrayFileHeader::raw(&m)).unwrap();
        assert_eq!(text, "kind=raw n=3 q=2 rows=0\n");
        assert_eq!(read_array(&text).unwrap().0, m);
    }
}
