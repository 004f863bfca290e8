//! Exhaustive verification of the universal-set and cover-free properties.
//!
//! Both verifiers enumerate every constraint in lexicographic order and stop
//! at the first one no row satisfies, so a violated verdict always carries
//! the lexicographically first witness. Column indices are 0-based in the
//! API and printed 1-based by the `Display` impls.
//!
//! For cover-free checks the intersection of zero blocks is the whole ground
//! set: with `r = 0` a constraint `(∅, S)` asks for a row that is all-0 on
//! `S`, and with `s = 0` a constraint `(R, ∅)` asks for a row all-1 on `R`.
//! These are exactly the constant-weight classes a universal set needs.

use std::fmt;

use crate::combin::{first_combination, for_each_combination, next_combination};
use crate::error::{Error, Result};
use crate::matrix::{CffSpec, SymbolMatrix, UniversalSpec};

/// Upper limit on `q^d`, the size of the per-subset pattern bitmap.
pub const MAX_PATTERNS: u64 = 1 << 24;

/// A concrete unmet constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// No row shows `pattern` on `columns`.
    Universal { columns: Vec<usize>, pattern: Vec<u8> },
    /// No row is all-1 on `ones` and all-0 on `zeros`.
    Cff { ones: Vec<usize>, zeros: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Violated(Witness),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Valid => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}

fn one_based(cols: &[usize]) -> String {
    if cols.is_empty() {
        return "-".to_string();
    }
    cols.iter()
        .map(|c| (c + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Universal { columns, pattern } => write!(
                f,
                "S={} sigma={}",
                one_based(columns),
                crate::matrix::digits(pattern)
            ),
            Witness::Cff { ones, zeros } => {
                write!(f, "R={} S={}", one_based(ones), one_based(zeros))
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Violated(w) => write!(f, "violated {w}"),
        }
    }
}

/// Either kind of requirement, for [`count_uncovered`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    Universal(UniversalSpec),
    Cff(CffSpec),
}

impl From<UniversalSpec> for Requirement {
    fn from(s: UniversalSpec) -> Self {
        Requirement::Universal(s)
    }
}

impl From<CffSpec> for Requirement {
    fn from(s: CffSpec) -> Self {
        Requirement::Cff(s)
    }
}

fn check_strength(m: &SymbolMatrix, d: usize) -> Result<u64> {
    if d == 0 || d > m.n() {
        return Err(Error::Parameter(format!(
            "strength d={d} must satisfy 1 <= d <= n={}",
            m.n()
        )));
    }
    match (m.q() as u64).checked_pow(d as u32) {
        Some(p) if p <= MAX_PATTERNS => Ok(p),
        _ => Err(Error::Resource(format!(
            "q^d = {}^{d} exceeds the pattern bitmap cap {MAX_PATTERNS}",
            m.q()
        ))),
    }
}

fn check_cff(m: &SymbolMatrix, r: usize, s: usize) -> Result<()> {
    if !m.is_binary() {
        return Err(Error::Alphabet(format!(
            "cover-free checks need a binary matrix, got q={}",
            m.q()
        )));
    }
    CffSpec::new(m.n(), r, s).map(|_| ())
}

/// Walk every d-subset of columns in lexicographic order, handing the
/// visitor the subset and the bitmap of patterns present on it. Pattern
/// `sigma` has index `sum sigma_k * q^(d-1-k)`, so index order is
/// lexicographic pattern order.
fn scan_projections(
    m: &SymbolMatrix,
    d: usize,
    patterns: u64,
    mut visit: impl FnMut(&[usize], &[u64]) -> bool,
) {
    let q = m.q();
    let mut seen = vec![0u64; (patterns as usize).div_ceil(64)];
    for_each_combination(m.n(), d, |cols| {
        seen.iter_mut().for_each(|w| *w = 0);
        for row in m.rows() {
            let idx = cols.iter().fold(0usize, |acc, &c| acc * q + row[c] as usize);
            seen[idx / 64] |= 1 << (idx % 64);
        }
        visit(cols, &seen)
    });
}

fn first_missing(seen: &[u64], patterns: u64) -> Option<u64> {
    for (w, &word) in seen.iter().enumerate() {
        if word != u64::MAX {
            let idx = w as u64 * 64 + (!word).trailing_zeros() as u64;
            return (idx < patterns).then_some(idx);
        }
    }
    None
}

fn pattern_digits(mut idx: u64, q: usize, d: usize) -> Vec<u8> {
    let mut out = vec![0u8; d];
    for slot in out.iter_mut().rev() {
        *slot = (idx % q as u64) as u8;
        idx /= q as u64;
    }
    out
}

/// Is every pattern in `{0..q-1}^d` present on every `d` columns?
pub fn verify_universal(m: &SymbolMatrix, d: usize) -> Result<Verdict> {
    let patterns = check_strength(m, d)?;
    let mut verdict = Verdict::Valid;
    scan_projections(m, d, patterns, |cols, seen| match first_missing(seen, patterns) {
        Some(idx) => {
            verdict = Verdict::Violated(Witness::Universal {
                columns: cols.to_vec(),
                pattern: pattern_digits(idx, m.q(), d),
            });
            false
        }
        None => true,
    });
    Ok(verdict)
}

/// Walk all disjoint `(R, S)` pairs with `|R| = r`, `|S| = s`, `R` in
/// lexicographic order and, for each `R`, `S` in lexicographic order among
/// the remaining columns. The visitor gets `(R, S, covered)`.
fn scan_cff(m: &SymbolMatrix, r: usize, s: usize, mut visit: impl FnMut(&[usize], &[usize], bool) -> bool) {
    let n = m.n();
    let packed = m.packed_bits();
    let words = packed.words;
    let mut ones_mask = vec![0u64; words];
    let mut zeros_mask = vec![0u64; words];
    let mut rest = Vec::with_capacity(n);
    let mut zeros = Vec::with_capacity(s);
    let mut keep_going = true;
    for_each_combination(n, r, |ones| {
        ones_mask.iter_mut().for_each(|w| *w = 0);
        for &c in ones {
            ones_mask[c / 64] |= 1 << (c % 64);
        }
        rest.clear();
        rest.extend((0..n).filter(|c| !ones.contains(c)));
        let mut pick = first_combination(s);
        loop {
            zeros.clear();
            zeros.extend(pick.iter().map(|&i| rest[i]));
            zeros_mask.iter_mut().for_each(|w| *w = 0);
            for &c in &zeros {
                zeros_mask[c / 64] |= 1 << (c % 64);
            }
            let covered = packed.rows().any(|row| {
                row.iter()
                    .zip(&ones_mask)
                    .zip(&zeros_mask)
                    .all(|((&x, &o), &z)| x & o == o && x & z == 0)
            });
            if !visit(ones, &zeros, covered) {
                keep_going = false;
                return false;
            }
            if !next_combination(&mut pick, rest.len()) {
                break;
            }
        }
        keep_going
    });
}

/// Does every disjoint `(R, S)` pair have a row that is 1 on `R` and 0 on
/// `S`?
pub fn verify_cff(m: &SymbolMatrix, r: usize, s: usize) -> Result<Verdict> {
    check_cff(m, r, s)?;
    let mut verdict = Verdict::Valid;
    scan_cff(m, r, s, |ones, zeros, covered| {
        if covered {
            return true;
        }
        verdict = Verdict::Violated(Witness::Cff {
            ones: ones.to_vec(),
            zeros: zeros.to_vec(),
        });
        false
    });
    Ok(verdict)
}

/// Exact number of constraints of `req` that no row of `m` meets.
pub fn count_uncovered(m: &SymbolMatrix, req: impl Into<Requirement>) -> Result<u64> {
    match req.into() {
        Requirement::Universal(spec) => {
            if spec.n() != m.n() || spec.q() != m.q() {
                return Err(Error::Parameter(format!(
                    "spec {spec} does not match a {}-column q={} matrix",
                    m.n(),
                    m.q()
                )));
            }
            let patterns = check_strength(m, spec.d())?;
            let mut missing = 0u64;
            scan_projections(m, spec.d(), patterns, |_, seen| {
                let present: u64 = seen.iter().map(|w| w.count_ones() as u64).sum();
                missing += patterns - present;
                true
            });
            Ok(missing)
        }
        Requirement::Cff(spec) => {
            if spec.n() != m.n() {
                return Err(Error::Parameter(format!(
                    "spec {spec} does not match a {}-column matrix",
                    m.n()
                )));
            }
            check_cff(m, spec.r(), spec.s())?;
            let mut missing = 0u64;
            scan_cff(m, spec.r(), spec.s(), |_, _, covered| {
                missing += u64::from(!covered);
                true
            });
            Ok(missing)
        }
    }
}
