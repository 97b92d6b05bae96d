//! Nondegenerate symmetric scalar products and small exhaustive counts
//! over them: orthogonality-constrained ordered bases, isotropic vectors,
//! and stabilizer groups.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::graph::Graph;
use crate::linalg;

/// The two inequivalent classes of scalar product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `<a, b> = sum a_i b_i`.
    Plus,
    /// `alpha a_1 b_1 + sum_{i>1} a_i b_i` for odd `q` (alpha a nonsquare);
    /// the hyperbolic form `sum a_{2i-1} b_{2i} + a_{2i} b_{2i-1}` for even
    /// `q` and even `n`.
    Minus,
}

/// Gram matrix of a symmetric scalar product on `GF(q)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarProduct {
    n: usize,
    gram: Vec<u32>,
}

impl ScalarProduct {
    pub fn new(kind: FormKind, n: usize, ctx: &FieldCtx) -> Result<Self> {
        let mut gram = vec![0u32; n * n];
        match kind {
            FormKind::Plus => {
                for i in 0..n {
                    gram[i * n + i] = 1;
                }
            }
            FormKind::Minus if ctx.p() != 2 => {
                for i in 0..n {
                    gram[i * n + i] = 1;
                }
                if n > 0 {
                    gram[0] = ctx.find_nonsquare()?.code();
                }
            }
            FormKind::Minus => {
                if n % 2 == 1 {
                    return Err(Error::InvalidParameter(format!(
                        "no second scalar product for even q = {} and odd n = {n}",
                        ctx.q()
                    )));
                }
                for i in (0..n).step_by(2) {
                    gram[i * n + i + 1] = 1;
                    gram[(i + 1) * n + i] = 1;
                }
            }
        }
        Ok(ScalarProduct { n, gram })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &[u32] {
        &self.gram
    }

    pub fn eval(&self, ctx: &FieldCtx, a: &[u32], b: &[u32]) -> u32 {
        let mut acc = 0;
        if self.n == 0 {
            return acc;
        }
        for (row, &ai) in self.gram.chunks_exact(self.n).zip(a) {
            if ai == 0 {
                continue;
            }
            for (&g, &bj) in row.iter().zip(b) {
                if g != 0 && bj != 0 {
                    acc = ctx.add_code(acc, ctx.mul_code(ai, ctx.mul_code(g, bj)));
                }
            }
        }
        acc
    }
}

fn all_vectors(q: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut v = vec![0u32; n];
    loop {
        out.push(v.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
    }
}

fn independent(ctx: &FieldCtx, rows: &[&[u32]], n: usize) -> bool {
    let mut m: Vec<u32> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    linalg::rank(ctx, &mut m, rows.len(), n) == rows.len()
}

/// Decides whether a candidate vector may follow the ones chosen so far.
type Accept<'a> = &'a dyn Fn(&[&[u32]], &[u32]) -> bool;

/// Counts sequences `(u_1, .., u_n)` built one vector at a time, where
/// `accept(chosen, candidate)` decides whether the candidate may follow.
fn count_sequences(
    ctx: &FieldCtx,
    n: usize,
    accept: Accept<'_>,
) -> BigUint {
    let vectors = all_vectors(ctx.q(), n);
    let mut chosen: Vec<&[u32]> = Vec::with_capacity(n);
    let mut total = BigUint::from(0u32);
    fn go<'v>(
        vectors: &'v [Vec<u32>],
        n: usize,
        chosen: &mut Vec<&'v [u32]>,
        accept: Accept<'_>,
        total: &mut BigUint,
    ) {
        if chosen.len() == n {
            *total += 1u32;
            return;
        }
        for v in vectors {
            if accept(chosen, v) {
                chosen.push(v);
                go(vectors, n, chosen, accept, total);
                chosen.pop();
            }
        }
    }
    go(&vectors, n, &mut chosen, accept, &mut total);
    total
}

/// `b_G^{+/-}(q)`: ordered bases `(u_1, .., u_n)` of `GF(q)^n` with
/// `<u_i, u_j> = 0` whenever `i != j` and `ij` is not an edge. The graph
/// must be simple with `n + 1` vertices and an apex at vertex `n + 1`.
pub fn ordered_basis_count(g: &Graph, kind: FormKind, ctx: &FieldCtx, budget: &Budget) -> Result<BigUint> {
    let n = g.n() - 1;
    if !g.is_apex(n + 1)? {
        return Err(Error::NotApex(n + 1));
    }
    budget.check(saturating_pow(ctx.q() as u128, n * n).saturating_mul((n * n * n).max(1) as u128))?;
    let form = ScalarProduct::new(kind, n, ctx)?;
    let accept = |chosen: &[&[u32]], v: &[u32]| {
        let k = chosen.len();
        for (i, u) in chosen.iter().enumerate() {
            if !g.has_edge(i + 1, k + 1) && form.eval(ctx, u, v) != 0 {
                return false;
            }
        }
        let mut rows = chosen.to_vec();
        rows.push(v);
        independent(ctx, &rows, n)
    };
    Ok(count_sequences(ctx, n, &accept))
}

/// `N_{+/-}(n)`: vectors `u` with `<u, u> = 0`.
pub fn isotropic_count(n: usize, kind: FormKind, ctx: &FieldCtx, budget: &Budget) -> Result<BigUint> {
    budget.check(saturating_pow(ctx.q() as u128, n).saturating_mul((n * n).max(1) as u128))?;
    let form = ScalarProduct::new(kind, n, ctx)?;
    let count = all_vectors(ctx.q(), n)
        .iter()
        .filter(|u| form.eval(ctx, u, u) == 0)
        .count();
    Ok(BigUint::from(count))
}

/// Order of `{A : A H A^t = H}` for the Gram matrix `H` of the form.
pub fn stabilizer_count(n: usize, kind: FormKind, ctx: &FieldCtx, budget: &Budget) -> Result<BigUint> {
    budget.check(saturating_pow(ctx.q() as u128, n * n).saturating_mul((n * n).max(1) as u128))?;
    let form = ScalarProduct::new(kind, n, ctx)?;
    let gram = form.gram().to_vec();
    // Rows of A must have the same pairwise products as the standard basis.
    let accept = |chosen: &[&[u32]], v: &[u32]| {
        let k = chosen.len();
        chosen
            .iter()
            .enumerate()
            .all(|(i, u)| form.eval(ctx, u, v) == gram[i * n + k])
            && form.eval(ctx, v, v) == gram[k * n + k]
    };
    Ok(count_sequences(ctx, n, &accept))
}
