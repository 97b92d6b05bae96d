//! Matroids given by their bases, and the basis polynomial
//! `Q_M(x) = sum_B prod_{e in B} x_e`.

use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigUint;

use crate::count::{Engine, Executor};
use crate::counting::{MonomialEval, NonvanishingJob};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::graph::Graph;
use crate::linalg::gf2_rank;
use crate::odometer::AssignmentSpace;
use crate::treepoly::{enumerate_trees, eval_monomials, Assignment};

pub use crate::formulas::fourpoint_formula;

/// Basis pairs checked exhaustively below this many bases; above it a
/// fixed stride of pairs is sampled.
const EXHAUSTIVE_EXCHANGE_LIMIT: usize = 200;

/// `g_{R10}(q)` for small `q`, from exhaustive counts. Exploratory data: a
/// handful of values cannot decide whether `g_{R10}` is a polynomial.
pub const R10_G_VALUES: [(u64, u64); 3] = [(2, 232), (3, 33_804), (4, 743_616)];

/// A matroid on `{1..=s}` listed by its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    bases: Vec<Vec<usize>>,
}

impl Matroid {
    /// Validates a basis list: nonempty, equal sizes, elements in range, no
    /// duplicates, and the exchange axiom on sampled pairs.
    pub fn from_bases(ground_size: usize, bases: Vec<Vec<usize>>) -> Result<Self> {
        let Some(first) = bases.first() else {
            return Err(Error::InvalidParameter("a matroid needs at least one basis".into()));
        };
        let rank = first.len();
        let mut normalized = Vec::with_capacity(bases.len());
        let mut seen = HashSet::new();
        for b in bases {
            if b.len() != rank {
                return Err(Error::InvalidParameter(format!(
                    "basis {b:?} has {} elements, expected {rank}",
                    b.len()
                )));
            }
            let mut b = b;
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!("basis {b:?} repeats an element")));
            }
            if let Some(&e) = b.iter().find(|&&e| e == 0 || e > ground_size) {
                return Err(Error::InvalidParameter(format!("element {e} outside 1..={ground_size}")));
            }
            if !seen.insert(b.clone()) {
                return Err(Error::InvalidParameter(format!("basis {b:?} listed twice")));
            }
            normalized.push(b);
        }
        let m = Matroid {
            ground_size,
            rank,
            bases: normalized,
        };
        if let Some((a, b)) = m.exchange_violation() {
            return Err(Error::InvalidParameter(format!(
                "bases {:?} and {:?} violate basis exchange",
                m.bases[a], m.bases[b]
            )));
        }
        Ok(m)
    }

    /// `U_{r,n}`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidParameter(format!("uniform matroid needs r <= n, got r={r} n={n}")));
        }
        Ok(Matroid {
            ground_size: n,
            rank: r,
            bases: subsets(n, r),
        })
    }

    /// The binary matroid of the ten weight-3 vectors of `GF(2)^5`, columns
    /// ordered lexicographically by support.
    pub fn r10() -> Self {
        let columns: Vec<u64> = subsets(5, 3)
            .iter()
            .map(|s| s.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1)))
            .collect();
        let bases = subsets(10, 5)
            .into_iter()
            .filter(|b| {
                let mut rows: Vec<u64> = b.iter().map(|&e| columns[e - 1]).collect();
                gf2_rank(&mut rows) == 5
            })
            .collect();
        Matroid {
            ground_size: 10,
            rank: 5,
            bases,
        }
    }

    /// Cycle matroid of a connected graph: bases are spanning trees.
    pub fn graphic(g: &Graph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::InvalidParameter("graphic matroid needs a connected graph".into()));
        }
        Ok(Matroid {
            ground_size: g.num_edges(),
            rank: g.n() - 1,
            bases: enumerate_trees(g),
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Sorted 1-based bases.
    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    /// First pair `(i, j)` of basis indices violating the exchange axiom.
    pub fn exchange_violation(&self) -> Option<(usize, usize)> {
        let set: HashSet<&[usize]> = self.bases.iter().map(|b| b.as_slice()).collect();
        let n = self.bases.len();
        let stride = if n <= EXHAUSTIVE_EXCHANGE_LIMIT { 1 } else { n / EXHAUSTIVE_EXCHANGE_LIMIT * 7 + 1 };
        let mut swapped = Vec::with_capacity(self.rank);
        let mut idx = 0usize;
        while idx < n * n {
            let (i, j) = (idx / n, idx % n);
            idx += stride;
            let (a, b) = (&self.bases[i], &self.bases[j]);
            for &x in a.iter().filter(|x| !b.contains(x)) {
                let ok = b.iter().filter(|y| !a.contains(y)).any(|&y| {
                    swapped.clear();
                    swapped.extend(a.iter().copied().filter(|&e| e != x));
                    swapped.push(y);
                    swapped.sort_unstable();
                    set.contains(swapped.as_slice())
                });
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn monomials(&self) -> Vec<Vec<usize>> {
        self.bases
            .iter()
            .map(|b| b.iter().map(|e| e - 1).collect())
            .collect()
    }
}

/// All `k`-subsets of `{1..=n}` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `Q_M(a)`.
pub fn eval_basis_poly(m: &Matroid, a: &Assignment, ctx: &FieldCtx) -> FieldElem {
    assert_eq!(a.len(), m.ground_size, "assignment must cover the ground set");
    FieldElem::from_code_unchecked(eval_monomials(ctx, &m.monomials(), &a.codes()))
}

/// `g_M(q)`: assignments of the ground set with `Q_M != 0`.
pub fn count_g_matroid<E: Executor>(m: &Matroid, ctx: &FieldCtx, engine: &Engine<E>) -> Result<BigUint> {
    let job = NonvanishingJob::new(
        ctx,
        MonomialEval::new(m.ground_size, m.monomials()),
        AssignmentSpace::free(ctx.q(), m.ground_size),
        true,
    );
    engine.budget.check(job.estimate())?;
    Ok(BigUint::from(engine.exec.run(&job).0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn gf(q: u64) -> FieldCtx {
        FieldCtx::parse(&alloc::format!("{q}")).unwrap()
    }

    #[test]
    fn constructions() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.bases().len(), 6);
        assert_eq!(Matroid::uniform(1, 2).unwrap().bases(), &[vec![1], vec![2]]);
        let r10 = Matroid::r10();
        assert_eq!((r10.ground_size(), r10.rank()), (10, 5));
        assert_eq!(r10.bases().len(), 162);
        assert!(r10.exchange_violation().is_none());
        assert!(Matroid::from_bases(3, vec![]).is_err());
        assert!(Matroid::from_bases(3, vec![vec![1], vec![1, 2]]).is_err());
        assert!(Matroid::from_bases(3, vec![vec![1, 4]]).is_err());
        // {1,2} and {3,4}: removing 1 from the first needs {2,3} or {2,4}
        assert!(Matroid::from_bases(4, vec![vec![1, 2], vec![3, 4]]).is_err());
        assert!(Matroid::from_bases(4, vec![vec![2, 1], vec![1, 3]]).is_ok());
    }

    #[test]
    fn basis_polynomial_values() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let f2 = gf(2);
        let ones = Assignment::constant(FieldElem::ONE, 4);
        assert_eq!(eval_basis_poly(&u24, &ones, &f2), FieldElem::ZERO);
        let a = Assignment::from_codes(&f2, &[1, 1, 0, 0]).unwrap();
        assert_eq!(eval_basis_poly(&u24, &a, &f2), FieldElem::ONE);
    }

    #[test]
    fn four_point_line_counts() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let e = Engine::sequential();
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            assert_eq!(count_g_matroid(&u24, &gf(q), &e).unwrap(), fourpoint_formula(q), "q={q}");
        }
    }

    #[test]
    fn graphic_matches_tree_counts() {
        let e = Engine::sequential();
        let g = Graph::family(Family::CompleteMinusStar { n: 4, s: 1 }).unwrap();
        let m = Matroid::graphic(&g).unwrap();
        for q in [2, 3] {
            let ctx = gf(q);
            assert_eq!(
                count_g_matroid(&m, &ctx, &e).unwrap(),
                crate::counting::count_nonvanishing(&g, crate::treepoly::TreePoly::Q, &ctx, &e).unwrap()
            );
        }
        assert!(Matroid::graphic(&Graph::new(3, vec![(1, 2)]).unwrap()).is_err());
    }
}
