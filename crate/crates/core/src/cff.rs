//! Constructors for `(n,(r,s))`-cover-free families.
//!
//! Three routes are provided: a derandomized greedy (conditional
//! expectations with each entry 1 with probability `p = r/(r+s)`), a seeded
//! Las Vegas sampler with the same density, and the optimal antichain
//! construction for `(1,1)`. The degenerate specs `r = 0` and `s = 0` are a
//! single constant row under the convention that an empty intersection is
//! the whole ground set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combin::{binomial, first_combination, next_combination};
use crate::error::{Error, Result};
use crate::greedy::{cover_greedily, greedy_row_bound, ConstraintSet, TraceRow};
use crate::matrix::{CffSpec, SymbolMatrix};
use crate::verify::count_uncovered;

pub use crate::greedy::GreedyTrace;

/// Batch cap for [`construct_cff_randomized`].
pub const MAX_BATCHES: usize = 10_000;

/// How to build a single cover-free family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CffMethod {
    Derandomized,
    Randomized { seed: u64, batch: usize },
    Sperner,
}

/// The single constant row answering an `r = 0` or `s = 0` spec.
fn constant_row(spec: CffSpec) -> Option<SymbolMatrix> {
    let fill = match (spec.r(), spec.s()) {
        (0, _) => 0u8,
        (_, 0) => 1u8,
        _ => return None,
    };
    Some(SymbolMatrix::new(spec.n(), 2, vec![vec![fill; spec.n()]]).expect("valid constant row"))
}

/// Derandomized greedy; returns the family and its per-row trace.
pub fn construct_cff_derandomized(spec: CffSpec) -> Result<(SymbolMatrix, GreedyTrace)> {
    let constraints = ConstraintSet::cff(spec)?;
    if let Some(m) = constant_row(spec) {
        let trace = GreedyTrace {
            rows: vec![TraceRow {
                row: m.row(0).to_vec(),
                newly_covered: constraints.len() as u64,
                remaining: 0,
            }],
        };
        return Ok((m, trace));
    }
    let weights = [spec.s() as u64, spec.r() as u64];
    cover_greedily(spec.n(), 2, &weights, &constraints)
}

/// Row count the derandomized greedy is guaranteed not to exceed:
/// `floor(ln M / -ln(1 - c)) + 1` with `M = C(n,r) C(n-r,s)` and
/// `c = p^r (1-p)^s`, `p = r/(r+s)`, `0^0 = 1`.
pub fn derandomized_row_bound(spec: CffSpec) -> usize {
    let d = spec.d() as f64;
    let p = spec.r() as f64 / d;
    let c = p.powi(spec.r() as i32) * (1.0 - p).powi(spec.s() as i32);
    let m = spec.constraint_count().map_or(f64::INFINITY, |m| m as f64);
    greedy_row_bound(m, c)
}

/// Las Vegas construction: append `batch` random rows at a time until the
/// family is cover-free. Deterministic in `(spec, seed, batch)`.
pub fn construct_cff_randomized(spec: CffSpec, seed: u64, batch: usize) -> Result<SymbolMatrix> {
    if batch == 0 {
        return Err(Error::Parameter("batch size must be positive".into()));
    }
    let constraints = ConstraintSet::cff(spec)?;
    if let Some(m) = constant_row(spec) {
        return Ok(m);
    }
    let (n, r, d) = (spec.n(), spec.r(), spec.d());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrix = SymbolMatrix::empty(n, 2)?;
    let mut live: Vec<usize> = (0..constraints.len()).collect();
    let mut row = vec![0u8; n];
    for _ in 0..MAX_BATCHES {
        for _ in 0..batch {
            for cell in row.iter_mut() {
                *cell = u8::from(rng.gen_range(0..d) < r);
            }
            live.retain(|&c| !constraints.is_met_by(c, &row));
            matrix.push_row_unchecked(&row);
        }
        if live.is_empty() {
            debug_assert_eq!(count_uncovered(&matrix, spec), Ok(0));
            return Ok(matrix);
        }
    }
    Err(Error::NonConvergence {
        batches: MAX_BATCHES,
        uncovered: live.len() as u64,
    })
}

/// Smallest `N` with `C(N, floor(N/2)) >= n`.
pub fn sperner_rows(n: usize) -> usize {
    let mut rows = 1usize;
    while binomial(rows as u64, rows as u64 / 2).is_some_and(|c| c < n as u128) {
        rows += 1;
    }
    rows
}

/// Optimal `(n,(1,1))` family: column `j` is the `j`-th `floor(N/2)`-subset
/// of the `N` rows in lexicographic order, so no column contains another.
pub fn construct_cff_sperner(n: usize) -> Result<SymbolMatrix> {
    if n < 2 {
        return Err(Error::Parameter(format!(
            "antichain construction needs n >= 2, got {n}"
        )));
    }
    let rows = sperner_rows(n);
    let weight = rows / 2;
    let mut cells = vec![0u8; rows * n];
    let mut subset = first_combination(weight);
    for col in 0..n {
        for &i in &subset {
            cells[i * n + col] = 1;
        }
        let more = next_combination(&mut subset, rows);
        debug_assert!(more || col + 1 == n);
    }
    SymbolMatrix::from_flat(n, 2, cells)
}

/// Build a family by the chosen method. `Sperner` only applies to `(1,1)`.
pub fn construct_cff(spec: CffSpec, method: CffMethod) -> Result<SymbolMatrix> {
    match method {
        CffMethod::Derandomized => construct_cff_derandomized(spec).map(|(m, _)| m),
        CffMethod::Randomized { seed, batch } => construct_cff_randomized(spec, seed, batch),
        CffMethod::Sperner if spec.r() == 1 && spec.s() == 1 => construct_cff_sperner(spec.n()),
        CffMethod::Sperner => Err(Error::Parameter(format!(
            "antichain construction only builds (1,1) families, not {spec}"
        ))),
    }
}

impl ConstraintSet {
    fn is_met_by(&self, c: usize, row: &[u8]) -> bool {
        let (cols, syms) = self.constraint(c);
        cols.iter().zip(syms).all(|(&col, &sym)| row[col as usize] == sym)
    }
}
