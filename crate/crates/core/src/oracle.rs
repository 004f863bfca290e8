//! Exact minimum sizes for tiny instances by exhaustive backtracking.
//!
//! Candidate rows are all `q^n` vectors in lexicographic order. For each
//! target size `N`, starting at the trivial lower bound, the search picks
//! the first uncovered constraint and branches over the candidate rows that
//! cover it, in lexicographic order; a branch excludes the candidates tried
//! by its earlier siblings, so every row set is explored at most once. A
//! node is pruned when the rows still to be chosen, each covering at most
//! the maximum any single candidate covers, cannot cover what remains.

use crate::error::{Error, Result};
use crate::greedy::ConstraintSet;
use crate::matrix::{CffSpec, SymbolMatrix, UniversalSpec};

/// Largest candidate row space, `q^n`.
pub const MAX_CANDIDATES: u64 = 1 << 20;

/// Largest coverage table, in 64-bit words.
pub const MAX_TABLE_WORDS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest row count tried.
    pub max_rows: usize,
    /// Backtracking nodes allowed across all target sizes.
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_rows: 32,
            node_limit: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Least feasible row count together with a set of that size.
    Minimum { size: usize, certificate: SymbolMatrix },
    /// Searched every size up to `max_rows` and none works.
    Infeasible { max_rows: usize },
    /// A cap or the node limit stopped the search before an answer.
    BudgetExceeded { reason: String },
}

impl SearchOutcome {
    pub fn size(&self) -> Option<usize> {
        match self {
            SearchOutcome::Minimum { size, .. } => Some(*size),
            _ => None,
        }
    }
}

/// `U(n,d,q)`, the least size of an `(n,d)`-universal set over `q` symbols.
pub fn minimal_universal_size(spec: UniversalSpec, budget: SearchBudget) -> Result<SearchOutcome> {
    let start = spec.q().pow(spec.d() as u32);
    search(spec.n(), spec.q(), start, budget, || ConstraintSet::universal(spec))
}

/// `N(n,(r,s))`, the least size of an `(n,(r,s))`-cover-free family.
pub fn minimal_cff_size(spec: CffSpec, budget: SearchBudget) -> Result<SearchOutcome> {
    search(spec.n(), 2, 1, budget, || ConstraintSet::cff(spec))
}

fn search(
    n: usize,
    q: usize,
    start: usize,
    budget: SearchBudget,
    constraints: impl FnOnce() -> Result<ConstraintSet>,
) -> Result<SearchOutcome> {
    if budget.max_rows == 0 || budget.node_limit == 0 {
        return Err(Error::Parameter("search budget must be positive".into()));
    }
    let candidates = match (q as u64).checked_pow(n as u32) {
        Some(c) if c <= MAX_CANDIDATES => c as usize,
        _ => {
            return Ok(SearchOutcome::BudgetExceeded {
                reason: format!("candidate space {q}^{n} exceeds {MAX_CANDIDATES}"),
            })
        }
    };
    let constraints = match constraints() {
        Ok(c) => c,
        Err(Error::Resource(reason)) => return Ok(SearchOutcome::BudgetExceeded { reason }),
        Err(e) => return Err(e),
    };
    let m = constraints.len();
    let words = m.div_ceil(64);
    if (candidates as u64).saturating_mul(words as u64) > MAX_TABLE_WORDS {
        return Ok(SearchOutcome::BudgetExceeded {
            reason: format!("coverage table of {candidates} rows x {m} constraints is too large"),
        });
    }

    let rows: Vec<Vec<u8>> = (0..candidates).map(|x| decode(x, n, q)).collect();
    // coverers[c]: candidate indices (ascending) whose row meets constraint c
    let mut coverers: Vec<Vec<u32>> = vec![Vec::new(); m];
    let mut cover = vec![0u64; candidates * words];
    let mut max_cover = 0u64;
    for (x, row) in rows.iter().enumerate() {
        let mut count = 0;
        for (c, list) in coverers.iter_mut().enumerate() {
            let (cols, syms) = constraints.constraint(c);
            if cols.iter().zip(syms).all(|(&col, &sym)| row[col as usize] == sym) {
                list.push(x as u32);
                cover[x * words + c / 64] |= 1 << (c % 64);
                count += 1;
            }
        }
        max_cover = max_cover.max(count);
    }

    let mut state = Search {
        m,
        words,
        cover: &cover,
        coverers: &coverers,
        max_cover,
        excluded: vec![false; candidates],
        chosen: Vec::new(),
        nodes: 0,
        node_limit: budget.node_limit,
    };
    for size in start..=budget.max_rows {
        let covered = vec![0u64; words];
        match state.descend(&covered, size) {
            Step::Found => {
                let mut picked = state.chosen.clone();
                picked.sort_unstable();
                let certificate =
                    SymbolMatrix::new(n, q, picked.iter().map(|&x| rows[x as usize].clone()).collect())?;
                return Ok(SearchOutcome::Minimum { size, certificate });
            }
            Step::Exhausted => {}
            Step::OutOfNodes => {
                return Ok(SearchOutcome::BudgetExceeded {
                    reason: format!("node limit {} reached while trying {size} rows", budget.node_limit),
                })
            }
        }
    }
    Ok(SearchOutcome::Infeasible {
        max_rows: budget.max_rows,
    })
}

fn decode(mut x: usize, n: usize, q: usize) -> Vec<u8> {
    let mut row = vec![0u8; n];
    for slot in row.iter_mut().rev() {
        *slot = (x % q) as u8;
        x /= q;
    }
    row
}

enum Step {
    Found,
    Exhausted,
    OutOfNodes,
}

struct Search<'a> {
    m: usize,
    words: usize,
    cover: &'a [u64],
    coverers: &'a [Vec<u32>],
    max_cover: u64,
    excluded: Vec<bool>,
    chosen: Vec<u32>,
    nodes: u64,
    node_limit: u64,
}

impl Search<'_> {
    fn descend(&mut self, covered: &[u64], rows_left: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Step::OutOfNodes;
        }
        let done: u64 = covered.iter().map(|w| w.count_ones() as u64).sum();
        let uncovered = self.m as u64 - done;
        if uncovered == 0 {
            return Step::Found;
        }
        if (rows_left as u64) * self.max_cover < uncovered {
            return Step::Exhausted;
        }
        let target = covered
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| i * 64 + (!w).trailing_zeros() as usize)
            .expect("some constraint is uncovered");

        let mut tried = Vec::new();
        let mut next = vec![0u64; self.words];
        let mut outcome = Step::Exhausted;
        for &x in &self.coverers[target] {
            if self.excluded[x as usize] {
                continue;
            }
            let row_cover = &self.cover[x as usize * self.words..(x as usize + 1) * self.words];
            for ((out, &a), &b) in next.iter_mut().zip(covered).zip(row_cover) {
                *out = a | b;
            }
            self.chosen.push(x);
            match self.descend(&next, rows_left - 1) {
                Step::Found => {
                    outcome = Step::Found;
                    break;
                }
                Step::OutOfNodes => {
                    self.chosen.pop();
                    outcome = Step::OutOfNodes;
                    break;
                }
                Step::Exhausted => {}
            }
            self.chosen.pop();
            self.excluded[x as usize] = true;
            tried.push(x);
        }
        for x in tried {
            self.excluded[x as usize] = false;
        }
        outcome
    }
}
