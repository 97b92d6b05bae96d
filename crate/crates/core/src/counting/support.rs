//! Invertible matrices confined to a support pattern.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;

use crate::budget::saturating_pow;
use crate::count::{Engine, Executor};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::odometer::AssignmentSpace;
use crate::template::MatrixTemplate;

use super::kernel::{DetEval, NonvanishingJob};

/// Lines of the Fano plane, one per row of its incidence pattern.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 5, 6],
];

/// Cells of an `n x n` matrix that may be nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportPattern {
    n: usize,
    allowed: Vec<bool>,
    symmetric: bool,
}

impl SupportPattern {
    /// Builds a pattern from 0-based `(row, col)` cells. With `symmetric`
    /// set, the cell set must be closed under transposition.
    pub fn new(n: usize, cells: &[(usize, usize)], symmetric: bool) -> Result<Self> {
        let mut allowed = vec![false; n * n];
        for &(i, j) in cells {
            if i >= n || j >= n {
                return Err(Error::InvalidParameter(format!("cell ({i}, {j}) outside a {n}x{n} pattern")));
            }
            allowed[i * n + j] = true;
        }
        Self::from_mask(n, allowed, symmetric)
    }

    /// Row-major mask of length `n * n`.
    pub fn from_mask(n: usize, allowed: Vec<bool>, symmetric: bool) -> Result<Self> {
        if allowed.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "mask has {} cells, expected {}",
                allowed.len(),
                n * n
            )));
        }
        let p = SupportPattern { n, allowed, symmetric };
        if symmetric && !p.is_transpose_closed() {
            return Err(Error::InvalidParameter("pattern flagged symmetric is not closed under transpose".into()));
        }
        Ok(p)
    }

    pub fn full(n: usize) -> Self {
        SupportPattern { n, allowed: vec![true; n * n], symmetric: true }
    }

    pub fn diagonal(n: usize) -> Self {
        let mut allowed = vec![false; n * n];
        for i in 0..n {
            allowed[i * n + i] = true;
        }
        SupportPattern { n, allowed, symmetric: true }
    }

    /// Every cell except the main diagonal.
    pub fn off_diagonal(n: usize) -> Self {
        let mut p = SupportPattern::full(n);
        for i in 0..n {
            p.allowed[i * n + i] = false;
        }
        p
    }

    /// Incidence pattern of the Fano plane: row `i` is a line, column `j`
    /// a point.
    pub fn fano() -> Self {
        let mut cells = Vec::new();
        for (i, line) in FANO_LINES.iter().enumerate() {
            cells.extend(line.iter().map(|&pt| (i, pt - 1)));
        }
        SupportPattern::new(7, &cells, false).expect("static pattern")
    }

    /// The `2n x 2n` symmetric pattern `{(i, j+n), (j+n, i) : (i, j) in T}`.
    /// Symmetric matrices with this support are exactly `[[0, A], [A^t, 0]]`
    /// with `A` supported in `T`.
    pub fn block_embedding(t: &SupportPattern) -> Self {
        let n = t.n;
        let mut cells = Vec::new();
        for (i, j) in t.cells() {
            cells.push((i, j + n));
            cells.push((j + n, i));
        }
        SupportPattern::new(2 * n, &cells, true).expect("embedding is symmetric")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_allowed(&self, i: usize, j: usize) -> bool {
        self.allowed[i * self.n + j]
    }

    pub fn is_transpose_closed(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.is_allowed(i, j) == self.is_allowed(j, i)))
    }

    /// Allowed cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n).filter(|&c| self.allowed[c]).map(move |c| (c / n, c % n))
    }

    pub fn num_cells(&self) -> usize {
        self.allowed.iter().filter(|&&a| a).count()
    }

    /// Allowed columns of a row.
    pub fn row_cells(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.is_allowed(i, j)).collect()
    }

    /// Rows as strings of '0'/'1'.
    pub fn rows(&self) -> Vec<alloc::string::String> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| if self.is_allowed(i, j) { '1' } else { '0' }).collect())
            .collect()
    }

    /// One variable per allowed cell, row-major.
    pub fn template(&self) -> MatrixTemplate {
        let mut t = MatrixTemplate::new(self.n, self.num_cells(), true);
        for (v, (i, j)) in self.cells().enumerate() {
            t.push(i, j, v, false);
        }
        t
    }

    /// One variable per allowed cell on or above the diagonal, mirrored
    /// below it.
    pub fn symmetric_template(&self) -> MatrixTemplate {
        let free: Vec<(usize, usize)> = self.cells().filter(|&(i, j)| i <= j).collect();
        let mut t = MatrixTemplate::new(self.n, free.len(), false);
        for (v, &(i, j)) in free.iter().enumerate() {
            t.push(i, j, v, false);
            if i != j {
                t.push(j, i, v, false);
            }
        }
        t
    }
}

/// Algorithm for [`count_support_invertible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportAlgo {
    /// Enumerate every matrix supported in the pattern.
    Brute,
    /// Row-by-row dynamic program over the span of the rows chosen so far.
    SpanDp,
}

/// `h_S(q)`: invertible matrices with support contained in `S`.
pub fn count_support_invertible<E: Executor>(
    s: &SupportPattern,
    algo: SupportAlgo,
    ctx: &FieldCtx,
    engine: &Engine<E>,
) -> Result<BigUint> {
    match algo {
        SupportAlgo::Brute => {
            let job = NonvanishingJob::new(
                ctx,
                DetEval::new(s.template()),
                AssignmentSpace::free(ctx.q(), s.num_cells()),
                true,
            );
            engine.budget.check(job.estimate())?;
            Ok(BigUint::from(engine.exec.run(&job).0))
        }
        SupportAlgo::SpanDp => {
            engine.budget.check(span_dp_estimate(s, ctx.q()))?;
            Ok(span_dp(s, ctx))
        }
    }
}

/// `k_S(q)`: invertible symmetric matrices with support contained in `S`.
pub fn count_support_symmetric<E: Executor>(
    s: &SupportPattern,
    ctx: &FieldCtx,
    engine: &Engine<E>,
) -> Result<BigUint> {
    if !s.is_symmetric() {
        return Err(Error::InvalidParameter("pattern is not flagged symmetric".into()));
    }
    let t = s.symmetric_template();
    let vars = t.num_vars();
    let job = NonvanishingJob::new(ctx, DetEval::new(t), AssignmentSpace::free(ctx.q(), vars), false);
    engine.budget.check(job.estimate())?;
    Ok(BigUint::from(engine.exec.run(&job).0))
}

/// Number of `k`-dimensional subspaces of `GF(q)^n`, saturating.
fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(saturating_pow(q, n - i).saturating_sub(1));
        den = den.saturating_mul(saturating_pow(q, i + 1) - 1);
    }
    if num == u128::MAX {
        u128::MAX
    } else {
        num / den
    }
}

/// Field operations for the span DP: states at each row times candidates
/// times an `n^2` reduction.
pub fn span_dp_estimate(s: &SupportPattern, q: u32) -> u128 {
    let n = s.n();
    let q = q as u128;
    let mut reachable: u128 = 1;
    let mut total: u128 = 0;
    for i in 0..n {
        let free = s.row_cells(i).len();
        let states = reachable.min(gaussian_binomial(n, i, q));
        total = total.saturating_add(
            states
                .saturating_mul(saturating_pow(q, free))
                .saturating_mul((n * n).max(1) as u128),
        );
        reachable = reachable.saturating_mul(saturating_pow(q, free));
    }
    total
}

/// Reduced row echelon basis: rows sorted by pivot column, each pivot 1 and
/// the only nonzero in its column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Rref {
    rows: Vec<u32>,
    pivots: Vec<usize>,
}

impl Rref {
    /// Reduces `v` against the basis in place.
    fn reduce(&self, ctx: &FieldCtx, n: usize, v: &mut [u32]) {
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                let row = &self.rows[r * n..(r + 1) * n];
                for j in 0..n {
                    if row[j] != 0 {
                        v[j] = ctx.sub_code(v[j], ctx.mul_code(c, row[j]));
                    }
                }
            }
        }
    }

    /// Adds a vector already reduced against the basis and nonzero.
    fn insert(&self, ctx: &FieldCtx, n: usize, mut v: Vec<u32>) -> Rref {
        let p = v.iter().position(|&x| x != 0).expect("vector must be nonzero");
        let inv = ctx.inv_code(v[p]);
        for x in v.iter_mut() {
            *x = ctx.mul_code(*x, inv);
        }
        let mut rows = Vec::with_capacity(self.rows.len() + n);
        let mut pivots = Vec::with_capacity(self.pivots.len() + 1);
        let mut placed = false;
        for (r, &rp) in self.pivots.iter().enumerate() {
            if !placed && p < rp {
                rows.extend_from_slice(&v);
                pivots.push(p);
                placed = true;
            }
            let mut row = self.rows[r * n..(r + 1) * n].to_vec();
            let c = row[p];
            if c != 0 {
                for j in 0..n {
                    row[j] = ctx.sub_code(row[j], ctx.mul_code(c, v[j]));
                }
            }
            rows.extend_from_slice(&row);
            pivots.push(rp);
        }
        if !placed {
            rows.extend_from_slice(&v);
            pivots.push(p);
        }
        Rref { rows, pivots }
    }
}

/// Advances a base-`q` counter, last digit fastest. False once it wraps.
fn step_digits(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

fn span_dp(s: &SupportPattern, ctx: &FieldCtx) -> BigUint {
    let n = s.n();
    let q = ctx.q();
    let mut states: HashMap<Rref, u128> = HashMap::new();
    states.insert(Rref::default(), 1);
    let mut cand = vec![0u32; n];
    for i in 0..n {
        let free = s.row_cells(i);
        let mut next: HashMap<Rref, u128> = HashMap::with_capacity(states.len());
        for (state, &mult) in &states {
            let mut digits = vec![0u32; free.len()];
            loop {
                cand.iter_mut().for_each(|x| *x = 0);
                for (&c, &d) in free.iter().zip(&digits) {
                    cand[c] = d;
                }
                state.reduce(ctx, n, &mut cand);
                if cand.iter().any(|&x| x != 0) {
                    let grown = state.insert(ctx, n, cand.clone());
                    let slot = next.entry(grown).or_insert(0);
                    *slot = slot.checked_add(mult).expect("span DP count overflowed u128");
                }
                if !step_digits(&mut digits, q) {
                    break;
                }
            }
        }
        states = next;
    }
    states.values().map(|&c| BigUint::from(c)).sum()
}
