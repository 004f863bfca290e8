//! Parameter specs and the symbol matrix shared by every other module.
//!
//! A [`SymbolMatrix`] is a sequence of rows over the alphabet `{0, .., q-1}`.
//! Rows read as test vectors for universal sets; for cover-free families the
//! matrix is the incidence matrix, row `i` being ground element `i` and
//! column `j` being block `B_j`. Rows may repeat; every property in this
//! crate is a property of the row *set*, and duplicates are only dropped by
//! an explicit [`SymbolMatrix::dedup_rows`].

use std::collections::HashSet;
use std::fmt;

use crate::combin::binomial;
use crate::error::{Error, Result};

/// Largest alphabet representable with one base-36 digit per symbol.
pub const MAX_ALPHABET: usize = 36;

/// Requirement `(n, d, q)`: every `d` of the `n` coordinates must show all
/// `q^d` patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UniversalSpec {
    n: usize,
    d: usize,
    q: usize,
}

impl UniversalSpec {
    pub fn new(n: usize, d: usize, q: usize) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::Parameter(format!(
                "strength d={d} must satisfy 1 <= d <= n={n}"
            )));
        }
        if !(2..=MAX_ALPHABET).contains(&q) {
            return Err(Error::Parameter(format!(
                "alphabet size q={q} must lie in 2..={MAX_ALPHABET}"
            )));
        }
        Ok(Self { n, d, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of `(S, sigma)` constraints, `C(n,d) * q^d`, if it fits.
    pub fn constraint_count(&self) -> Option<u128> {
        let patterns = (self.q as u128).checked_pow(self.d as u32)?;
        binomial(self.n as u64, self.d as u64)?.checked_mul(patterns)
    }
}

impl fmt::Display for UniversalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.d, self.q)
    }
}

/// Requirement `(n, (r, s))`: for every `r` blocks and `s` other blocks some
/// element lies in all of the first and none of the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CffSpec {
    n: usize,
    r: usize,
    s: usize,
}

impl CffSpec {
    pub fn new(n: usize, r: usize, s: usize) -> Result<Self> {
        let d = r + s;
        if d == 0 || d > n {
            return Err(Error::Parameter(format!(
                "cover parameters need 1 <= r+s <= n, got r={r} s={s} n={n}"
            )));
        }
        Ok(Self { n, r, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `r + s`.
    pub fn d(&self) -> usize {
        self.r + self.s
    }

    /// The spec with `r` and `s` exchanged; complements of `(r,s)`-families
    /// are `(s,r)`-families.
    pub fn swapped(&self) -> Self {
        Self {
            n: self.n,
            r: self.s,
            s: self.r,
        }
    }

    /// Number of disjoint `(R, S)` pairs, `C(n,r) * C(n-r,s)`, if it fits.
    pub fn constraint_count(&self) -> Option<u128> {
        let n = self.n as u64;
        binomial(n, self.r as u64)?.checked_mul(binomial(n - self.r as u64, self.s as u64)?)
    }
}

impl fmt::Display for CffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},({},{}))", self.n, self.r, self.s)
    }
}

/// An `N x n` matrix over `{0, .., q-1}`, stored row-major with one byte per
/// symbol.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolMatrix {
    n: usize,
    q: usize,
    cells: Vec<u8>,
}

impl SymbolMatrix {
    /// Matrix with `n` columns and no rows.
    pub fn empty(n: usize, q: usize) -> Result<Self> {
        Self::from_flat(n, q, Vec::new())
    }

    pub fn new(n: usize, q: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        let mut cells = Vec::with_capacity(rows.len() * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parameter(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            cells.extend_from_slice(row);
        }
        Self::from_flat(n, q, cells)
    }

    /// Build from row-major cells; `cells.len()` must be a multiple of `n`.
    pub fn from_flat(n: usize, q: usize, cells: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("matrix needs at least one column".into()));
        }
        if !(2..=MAX_ALPHABET).contains(&q) {
            return Err(Error::Alphabet(format!(
                "alphabet size q={q} must lie in 2..={MAX_ALPHABET}"
            )));
        }
        if !cells.len().is_multiple_of(n) {
            return Err(Error::Parameter(format!(
                "{} cells do not form rows of length {n}",
                cells.len()
            )));
        }
        if let Some(pos) = cells.iter().position(|&c| c as usize >= q) {
            return Err(Error::Alphabet(format!(
                "symbol {} at row {} column {} is outside 0..{q}",
                cells[pos],
                pos / n,
                pos % n
            )));
        }
        Ok(Self { n, q, cells })
    }

    /// Parse rows written as base-36 digit strings, e.g. `["000", "111"]`.
    pub fn from_digit_rows<S: AsRef<str>>(q: usize, rows: &[S]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().chars().count());
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .map(|c| {
                        c.to_digit(36)
                            .filter(|_| c.is_ascii_digit() || c.is_ascii_lowercase())
                            .map(|v| v as u8)
                            .ok_or_else(|| Error::Alphabet(format!("invalid digit {c:?}")))
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, q, parsed)
    }

    /// Number of columns.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Alphabet size.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of rows `N`.
    pub fn len(&self) -> usize {
        self.cells.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.cells.chunks_exact(self.n)
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    /// Row `i` as a string of base-36 digits.
    pub fn row_digits(&self, i: usize) -> String {
        digits(self.row(i))
    }

    /// Every bit flipped, row order preserved.
    pub fn complement(&self) -> Result<Self> {
        if !self.is_binary() {
            return Err(Error::Alphabet(format!(
                "complement needs a binary matrix, got q={}",
                self.q
            )));
        }
        Ok(Self {
            n: self.n,
            q: 2,
            cells: self.cells.iter().map(|&b| b ^ 1).collect(),
        })
    }

    /// Drop repeated rows, keeping first occurrences in their original order.
    pub fn dedup_rows(&self) -> Self {
        let mut seen = HashSet::with_capacity(self.len());
        let mut cells = Vec::with_capacity(self.cells.len());
        for row in self.rows() {
            if seen.insert(row) {
                cells.extend_from_slice(row);
            }
        }
        Self {
            n: self.n,
            q: self.q,
            cells,
        }
    }

    /// Rows of `parts` concatenated in order. All parts must share `n` and `q`.
    pub fn stack(n: usize, q: usize, parts: &[SymbolMatrix]) -> Result<Self> {
        let mut cells = Vec::new();
        for part in parts {
            if part.n != n || part.q != q {
                return Err(Error::Parameter(format!(
                    "cannot stack a {}-column q={} matrix onto {n} columns q={q}",
                    part.n, part.q
                )));
            }
            cells.extend_from_slice(&part.cells);
        }
        Self::from_flat(n, q, cells)
    }

    /// Append one row; the row must already be validated by the caller.
    pub(crate) fn push_row_unchecked(&mut self, row: &[u8]) {
        debug_assert_eq!(row.len(), self.n);
        debug_assert!(row.iter().all(|&s| (s as usize) < self.q));
        self.cells.extend_from_slice(row);
    }

    /// Binary rows packed into 64-bit words, column `j` at bit `j % 64` of
    /// word `j / 64`.
    pub(crate) fn packed_bits(&self) -> PackedRows {
        debug_assert!(self.is_binary());
        let words = self.n.div_ceil(64);
        let mut data = vec![0u64; words * self.len()];
        for (i, row) in self.rows().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b == 1 {
                    data[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        PackedRows { words, data }
    }
}

impl fmt::Debug for SymbolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolMatrix")
            .field("n", &self.n)
            .field("q", &self.q)
            .field("rows", &(0..self.len()).map(|i| self.row_digits(i)).collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) fn digits(symbols: &[u8]) -> String {
    symbols
        .iter()
        .map(|&s| char::from_digit(s as u32, 36).expect("symbol below 36"))
        .collect()
}

pub(crate) struct PackedRows {
    pub words: usize,
    pub data: Vec<u64>,
}

impl PackedRows {
    pub fn rows(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.data.chunks_exact(self.words.max(1))
    }
}
