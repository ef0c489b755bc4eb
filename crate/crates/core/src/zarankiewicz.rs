//! Exact small-scale solver for the forbidden-submatrix extremal problem
//! z(m, n, patterns) — the maximum number of 1s in an m-by-n 0/1 matrix
//! containing no family pattern as a submatrix (up to row and column
//! selection in any order) — plus the closed-form extremal envelopes.

use crate::budget::{Budget, Meter, SearchStatus};
use crate::graphs::{embeds_side_respecting, BipartiteGraph};
use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZarankiewiczError {
    #[error("m*n = {0} exceeds the brute-force limit of 25 cells")]
    BruteForceTooLarge(usize),
    #[error("pattern family must be nonempty")]
    EmptyFamily,
    #[error("m and n must be at least 1")]
    EmptyMatrix,
}

#[derive(Clone, Debug)]
pub struct ZarankiewiczInstance {
    pub m: usize,
    pub n: usize,
    pub patterns: Vec<BipartiteGraph>,
    pub budget: Budget,
}

#[derive(Clone, Debug)]
pub struct ZarankiewiczResult {
    pub value: usize,
    pub status: SearchStatus,
    /// An extremal (or best-found) matrix, which is family-free.
    pub witness: BipartiteGraph,
    pub nodes_explored: u64,
}

fn matrix_is_free(rows: &[Vec<u8>], patterns: &[BipartiteGraph]) -> bool {
    let host = BipartiteGraph::from_rows(rows);
    patterns
        .iter()
        .all(|p| embeds_side_respecting(p, &host).is_none())
}

/// Branch and bound over cells in row-major order, trying 1 before 0, with
/// row-lexicographic symmetry breaking (rows non-increasing; sound because
/// the containment convention is closed under row permutation). The top
/// branching level — the choice of first row — fans out across worker
/// threads. Subtrees share nothing: each prunes against its own best and
/// carries an even share of the node budget, so the optimum, the witness,
/// and the node counter are all schedule-independent, budget-truncated runs
/// included; results reduce by a fixed first-row order.
pub fn z_exact(inst: &ZarankiewiczInstance) -> Result<ZarankiewiczResult, ZarankiewiczError> {
    if inst.patterns.is_empty() {
        return Err(ZarankiewiczError::EmptyFamily);
    }
    if inst.m == 0 || inst.n == 0 {
        return Err(ZarankiewiczError::EmptyMatrix);
    }
    // First rows in the order sequential 1-first search would visit them.
    let mut first_rows: Vec<Vec<u8>> = (0..(1u64 << inst.n))
        .map(|mask| (0..inst.n).map(|c| ((mask >> c) & 1) as u8).collect())
        .collect();
    first_rows.sort_unstable();
    first_rows.reverse();
    first_rows.retain(|row| matrix_is_free(std::slice::from_ref(row), &inst.patterns));

    let quota = if inst.budget.max_nodes == u64::MAX {
        u64::MAX
    } else {
        (inst.budget.max_nodes / first_rows.len() as u64).max(1)
    };
    let subtrees: Vec<(usize, Vec<Vec<u8>>, SearchStatus, u64)> = first_rows
        .par_iter()
        .map(|first| {
            let mut solver = Solver {
                m: inst.m,
                n: inst.n,
                patterns: &inst.patterns,
                rows: vec![first.clone()],
                best_value: 0,
                best_rows: vec![vec![0; inst.n]; inst.m],
                meter: Meter::new(Budget {
                    max_nodes: quota,
                    max_millis: inst.budget.max_millis,
                }),
            };
            let ones: usize = first.iter().map(|&b| b as usize).sum();
            solver.place_cell(inst.n, ones, true);
            (
                solver.best_value,
                solver.best_rows,
                solver.meter.status(),
                solver.meter.nodes(),
            )
        })
        .collect();

    let mut value = 0;
    let mut witness_rows = vec![vec![0u8; inst.n]; inst.m];
    let mut status = SearchStatus::Exact;
    let mut nodes = 0;
    for (v, rows, st, nd) in subtrees {
        if v > value {
            value = v;
            witness_rows = rows;
        }
        if st == SearchStatus::LowerBound {
            status = SearchStatus::LowerBound;
        }
        nodes += nd;
    }
    assert!(
        matrix_is_free(&witness_rows, &inst.patterns),
        "extremal witness contains a forbidden pattern"
    );
    let witness = BipartiteGraph::from_rows(&witness_rows);
    debug_assert_eq!(witness.edge_count(), value);
    Ok(ZarankiewiczResult {
        value,
        status,
        witness,
        nodes_explored: nodes,
    })
}

struct Solver<'a> {
    m: usize,
    n: usize,
    patterns: &'a [BipartiteGraph],
    rows: Vec<Vec<u8>>,
    best_value: usize,
    best_rows: Vec<Vec<u8>>,
    meter: Meter,
}

impl Solver<'_> {
    /// `cell` indexes row-major; `tied` tracks whether the current row still
    /// equals the previous row on the filled prefix.
    fn place_cell(&mut self, cell: usize, ones: usize, tied: bool) {
        if !self.meter.tick() {
            return;
        }
        if cell == self.m * self.n {
            if ones > self.best_value {
                self.best_value = ones;
                self.best_rows = self.rows.clone();
            }
            return;
        }
        let remaining = self.m * self.n - cell;
        if ones + remaining <= self.best_value {
            return;
        }
        let (r, c) = (cell / self.n, cell % self.n);
        if c == 0 {
            self.rows.push(vec![0; self.n]);
        }
        let tied = if c == 0 { true } else { tied };
        let prev = if r > 0 { self.rows[r - 1][c] } else { 1 };
        for val in [1u8, 0u8] {
            if tied && val > prev {
                continue;
            }
            self.rows[r][c] = val;
            let ok = val == 0 || {
                let prefix: Vec<Vec<u8>> = self.rows[..=r].to_vec();
                matrix_is_free(&prefix, self.patterns)
            };
            if ok {
                self.place_cell(cell + 1, ones + val as usize, tied && val == prev);
            }
            if self.meter.exhausted() {
                break;
            }
        }
        self.rows[r][c] = 0;
        if c == 0 {
            self.rows.pop();
        }
    }
}

/// Exhaustive maximum over all 2^(mn) matrices; the test oracle for
/// [`z_exact`].
pub fn z_bruteforce(
    m: usize,
    n: usize,
    patterns: &[BipartiteGraph],
) -> Result<usize, ZarankiewiczError> {
    if m * n > 25 {
        return Err(ZarankiewiczError::BruteForceTooLarge(m * n));
    }
    if patterns.is_empty() {
        return Err(ZarankiewiczError::EmptyFamily);
    }
    let mut best = 0;
    for mask in 0u64..(1 << (m * n)) {
        let ones = mask.count_ones() as usize;
        if ones <= best {
            continue;
        }
        let rows: Vec<Vec<u8>> = (0..m)
            .map(|r| (0..n).map(|c| ((mask >> (r * n + c)) & 1) as u8).collect())
            .collect();
        if matrix_is_free(&rows, patterns) {
            best = ones;
        }
    }
    Ok(best)
}

/// Constant-free envelope of the girth-based extremal bound: a bipartite
/// graph of girth above 4l+2 has O((mn)^beta + m + n) edges with
/// beta = (l+1)/(2l+1). Shape only; the hidden constant is not asserted.
pub fn hoory_bound(m: u64, n: u64, l: u32) -> f64 {
    let beta = (l as f64 + 1.0) / (2.0 * l as f64 + 1.0);
    ((m as f64) * (n as f64)).powf(beta) + m as f64 + n as f64
}

pub fn hoory_beta(l: u32) -> Ratio<i64> {
    Ratio::new(l as i64 + 1, 2 * l as i64 + 1)
}

#[derive(Debug, Error)]
#[error("the complete-graph exponents need s >= 3, got {0}")]
pub struct KsExponentError(pub u64);

/// Exponents (mu_m, mu_n) of the extremal bound
/// O(m^{(s-1)/(2s-3)} n^{(2s-4)/(2s-3)} + m + n) for the family of K_s.
pub fn ks_zarankiewicz_exponents(s: u64) -> Result<(Ratio<i64>, Ratio<i64>), KsExponentError> {
    if s < 3 {
        return Err(KsExponentError(s));
    }
    let s = s as i64;
    Ok((
        Ratio::new(s - 1, 2 * s - 3),
        Ratio::new(2 * s - 4, 2 * s - 3),
    ))
}
