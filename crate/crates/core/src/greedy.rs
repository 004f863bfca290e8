//! Row-by-row greedy cover by the method of conditional expectations.
//!
//! A constraint is a list of `(column, symbol)` requirements; a row covers
//! it when it agrees on every listed column. Rows are built one coordinate
//! at a time. Undecided coordinates are modelled as independent draws with
//! `P(symbol v) = w[v] / W`, and each coordinate is fixed to the symbol
//! maximizing the expected number of still-uncovered constraints the
//! finished row will cover. Smaller symbols win ties.
//!
//! Expectations are compared exactly: a constraint with `o` open positions,
//! `o1` of them asking for symbol 1, contributes `w1^o1 * w0^(o-o1) *
//! W^(width-o)` over the common denominator `W^width`.

use crate::combin::{first_combination, for_each_combination, next_combination};
use crate::error::{Error, Result};
use crate::matrix::{CffSpec, SymbolMatrix, UniversalSpec};

/// Cap on the number of constraints a greedy constructor will materialize.
pub const MAX_CONSTRAINTS: u128 = 1 << 26;

/// One emitted row and its effect on the uncovered set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub row: Vec<u8>,
    pub newly_covered: u64,
    pub remaining: u64,
}

/// Audit trail of a greedy construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GreedyTrace {
    pub rows: Vec<TraceRow>,
}

impl GreedyTrace {
    pub fn total_rows(&self) -> usize {
        self.rows.len()
    }

    /// Remaining counts strictly decrease and end at zero.
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].remaining < w[0].remaining)
            && self.rows.last().is_none_or(|r| r.remaining == 0)
    }
}

pub(crate) fn check_cap(count: Option<u128>, what: &str) -> Result<usize> {
    match count {
        Some(c) if c <= MAX_CONSTRAINTS => Ok(c as usize),
        _ => Err(Error::Resource(format!(
            "{what} has more than {MAX_CONSTRAINTS} constraints"
        ))),
    }
}

/// Flat list of fixed-width constraints.
pub(crate) struct ConstraintSet {
    width: usize,
    cols: Vec<u32>,
    syms: Vec<u8>,
}

impl ConstraintSet {
    pub fn len(&self) -> usize {
        self.cols.len().checked_div(self.width).unwrap_or(0)
    }

    /// Columns and required symbols of constraint `c`.
    pub fn constraint(&self, c: usize) -> (&[u32], &[u8]) {
        let span = c * self.width..(c + 1) * self.width;
        (&self.cols[span.clone()], &self.syms[span])
    }

    /// Every `(S, sigma)` pair of a universal requirement.
    pub fn universal(spec: UniversalSpec) -> Result<Self> {
        let count = check_cap(spec.constraint_count(), "universal spec")?;
        let (n, d, q) = (spec.n(), spec.d(), spec.q());
        let patterns = q.pow(d as u32);
        let mut cols = Vec::with_capacity(count * d);
        let mut syms = Vec::with_capacity(count * d);
        let mut pattern = vec![0u8; d];
        for_each_combination(n, d, |subset| {
            pattern.iter_mut().for_each(|p| *p = 0);
            for _ in 0..patterns {
                cols.extend(subset.iter().map(|&c| c as u32));
                syms.extend_from_slice(&pattern);
                // odometer increment, last position fastest
                for slot in pattern.iter_mut().rev() {
                    *slot += 1;
                    if (*slot as usize) < q {
                        break;
                    }
                    *slot = 0;
                }
            }
            true
        });
        Ok(Self { width: d, cols, syms })
    }

    /// Every disjoint `(R, S)` pair of a cover-free requirement.
    pub fn cff(spec: CffSpec) -> Result<Self> {
        let count = check_cap(spec.constraint_count(), "cover-free spec")?;
        let (n, r, s) = (spec.n(), spec.r(), spec.s());
        let d = r + s;
        let mut cols = Vec::with_capacity(count * d);
        let mut syms = Vec::with_capacity(count * d);
        let mut rest = Vec::with_capacity(n);
        for_each_combination(n, r, |ones| {
            rest.clear();
            rest.extend((0..n).filter(|c| !ones.contains(c)));
            let mut pick = first_combination(s);
            loop {
                cols.extend(ones.iter().map(|&c| c as u32));
                cols.extend(pick.iter().map(|&i| rest[i] as u32));
                syms.extend(std::iter::repeat_n(1u8, r));
                syms.extend(std::iter::repeat_n(0u8, s));
                if !next_combination(&mut pick, rest.len()) {
                    break;
                }
            }
            true
        });
        Ok(Self { width: d, cols, syms })
    }
}

/// Run the conditional-expectations greedy until every constraint is
/// covered. `weights[v]` is the sampling weight of symbol `v`; for `q > 2`
/// the weights must be uniform. All weights must be positive.
pub(crate) fn cover_greedily(
    n: usize,
    q: usize,
    weights: &[u64],
    cons: &ConstraintSet,
) -> Result<(SymbolMatrix, GreedyTrace)> {
    assert_eq!(weights.len(), q);
    assert!(weights.iter().all(|&w| w > 0));
    assert!(q == 2 || weights.windows(2).all(|w| w[0] == w[1]));

    let width = cons.width;
    let m = cons.len();
    let total: u64 = weights.iter().sum();
    let (w0, w1) = (weights[0] as u128, weights[1] as u128);

    // Every contribution is at most W^width; the sum over all constraints
    // must stay inside u128.
    let top = (total as u128)
        .checked_pow(width as u32)
        .and_then(|t| t.checked_mul(m.max(1) as u128))
        .ok_or_else(|| {
            Error::Resource(format!(
                "exact expectation arithmetic overflows for weight total {total} and width {width}"
            ))
        })?;
    debug_assert!(top > 0);

    // table[o1][o] for 0 <= o1 <= o <= width
    let mut table = vec![vec![0u128; width + 1]; width + 1];
    for (o1, row) in table.iter_mut().enumerate() {
        for (o, cell) in row.iter_mut().enumerate().skip(o1) {
            *cell = w1.pow(o1 as u32) * w0.pow((o - o1) as u32) * (total as u128).pow((width - o) as u32);
        }
    }

    let mut by_col: Vec<Vec<(u32, u8)>> = vec![Vec::new(); n];
    let mut ones_needed = vec![0u8; m];
    for (c, needed) in ones_needed.iter_mut().enumerate() {
        let (cols, syms) = cons.constraint(c);
        for (&col, &sym) in cols.iter().zip(syms) {
            by_col[col as usize].push((c as u32, sym));
            *needed += u8::from(sym == 1);
        }
    }

    let mut live: Vec<u32> = (0..m as u32).collect();
    let mut alive = vec![true; m];
    let mut open = vec![0u8; m];
    let mut open_ones = vec![0u8; m];
    let mut dead = vec![false; m];
    let mut matrix = SymbolMatrix::empty(n, q)?;
    let mut trace = GreedyTrace::default();
    let mut row = vec![0u8; n];
    let mut sums = vec![0u128; q];

    while !live.is_empty() {
        for &c in &live {
            let c = c as usize;
            open[c] = width as u8;
            open_ones[c] = ones_needed[c];
            dead[c] = false;
        }
        for (j, entries) in by_col.iter().enumerate() {
            sums.iter_mut().for_each(|s| *s = 0);
            for &(c, v) in entries {
                let c = c as usize;
                if dead[c] {
                    continue;
                }
                let o = open[c] as usize - 1;
                let o1 = open_ones[c] as usize - usize::from(v == 1);
                sums[v as usize] += table[o1][o];
            }
            let mut best = 0;
            for v in 1..q {
                if sums[v] > sums[best] {
                    best = v;
                }
            }
            for &(c, v) in entries {
                let c = c as usize;
                if dead[c] {
                    continue;
                }
                if v as usize == best {
                    open[c] -= 1;
                    open_ones[c] -= u8::from(v == 1);
                } else {
                    dead[c] = true;
                }
            }
            row[j] = best as u8;
        }

        let before = live.len();
        live.retain(|&c| {
            let covered = !dead[c as usize];
            if covered {
                alive[c as usize] = false;
            }
            !covered
        });
        let newly = (before - live.len()) as u64;
        if newly == 0 {
            // the expectation argument guarantees progress; this only
            // guards against an infinite loop if that is ever violated
            return Err(Error::Resource("greedy row covered no constraint".into()));
        }
        for entries in by_col.iter_mut() {
            entries.retain(|&(c, _)| alive[c as usize]);
        }
        matrix.push_row_unchecked(&row);
        trace.rows.push(TraceRow {
            row: row.clone(),
            newly_covered: newly,
            remaining: live.len() as u64,
        });
    }
    Ok((matrix, trace))
}

/// `floor(ln M / -ln(1 - c)) + 1`, the row count after which a greedy that
/// covers at least a `c` fraction of what remains must have finished.
pub fn greedy_row_bound(constraints: f64, c: f64) -> usize {
    if constraints <= 1.0 {
        return 1;
    }
    if c >= 1.0 {
        return 1;
    }
    (constraints.ln() / -(1.0 - c).ln()).floor() as usize + 1
}
