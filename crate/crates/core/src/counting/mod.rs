//! Exact counters for nonvanishing assignments and rank distributions.
//!
//! Every counter is exhaustive. Results are arbitrary-precision integers;
//! shard tallies are `u128` and overflow panics rather than wrapping.

pub mod forms;
pub mod kernel;
pub mod support;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::count::{Engine, Executor};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::graph::Graph;
use crate::odometer::{AssignmentSpace, Domain};
use crate::template::MatrixTemplate;
use crate::treepoly::{reduced_laplacian, tree_monomials, TreePoly};

pub use forms::{isotropic_count, ordered_basis_count, stabilizer_count, FormKind, ScalarProduct};
pub use kernel::{DetEval, MonomialEval, NonvanishingJob, PolyEval, RankJob};
pub use support::{
    count_support_invertible, count_support_symmetric, SupportAlgo, SupportPattern,
};

/// Number of assignments per rank `r = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub counts: Vec<BigUint>,
}

impl RankProfile {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Count at full rank.
    pub fn top(&self) -> &BigUint {
        self.counts.last().expect("profile is never empty")
    }

    pub fn from_u128(counts: &[u128]) -> Self {
        RankProfile {
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }
}

/// Whether the zero pattern on `S` is a lower bound or exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSetMode {
    /// `x_e = 0` for `e` in `S`, other edges unconstrained.
    AtLeast,
    /// `x_e = 0` exactly on `S`, computed by inclusion-exclusion.
    Exact,
}

/// Which kernel evaluates the polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Enumerate every variable.
    Plain,
    /// Enumerate all but the last active variable (multilinear only).
    #[default]
    Eliminate,
}

/// `g_G(q)` (kind `Q`) or `f_G(q)` (kind `P`).
pub fn count_nonvanishing<E: Executor>(
    g: &Graph,
    kind: TreePoly,
    ctx: &FieldCtx,
    engine: &Engine<E>,
) -> Result<BigUint> {
    count_with_domains(g, kind, &vec![Domain::Free; g.num_edges()], ctx, engine, Kernel::default())
}

/// Like [`count_nonvanishing`] with an explicit kernel choice.
pub fn count_nonvanishing_with<E: Executor>(
    g: &Graph,
    kind: TreePoly,
    ctx: &FieldCtx,
    engine: &Engine<E>,
    kernel: Kernel,
) -> Result<BigUint> {
    count_with_domains(g, kind, &vec![Domain::Free; g.num_edges()], ctx, engine, kernel)
}

/// Counts with each edge variable restricted to a domain.
///
/// For `Q`, loop variables never occur in the polynomial: they are dropped
/// from the enumeration and contribute their domain size as a factor.
pub fn count_with_domains<E: Executor>(
    g: &Graph,
    kind: TreePoly,
    domains: &[Domain],
    ctx: &FieldCtx,
    engine: &Engine<E>,
    kernel: Kernel,
) -> Result<BigUint> {
    assert_eq!(domains.len(), g.num_edges());
    if !g.is_connected() {
        return Ok(BigUint::zero());
    }
    let q = ctx.q();
    let eliminate = kernel == Kernel::Eliminate;
    match kind {
        TreePoly::Q => {
            let mut factor = BigUint::one();
            let mut kept_edges = Vec::new();
            let mut kept_domains = Vec::new();
            for (&(u, v), &d) in g.edges().iter().zip(domains) {
                if u == v {
                    factor *= d.size(q);
                } else {
                    kept_edges.push((u, v));
                    kept_domains.push(d);
                }
            }
            let loopless = Graph::new(g.n(), kept_edges)?;
            let l0 = reduced_laplacian(&loopless, loopless.n())?;
            let job = NonvanishingJob::new(
                ctx,
                DetEval::new(l0.to_template()),
                AssignmentSpace::new(q, kept_domains),
                eliminate,
            );
            engine.budget.check(job.estimate())?;
            Ok(factor * BigUint::from(engine.exec.run(&job).0))
        }
        TreePoly::P => {
            let poly = MonomialEval::new(g.num_edges(), tree_monomials(g, TreePoly::P));
            let job = NonvanishingJob::new(ctx, poly, AssignmentSpace::new(q, domains.to_vec()), eliminate);
            engine.budget.check(job.estimate())?;
            Ok(BigUint::from(engine.exec.run(&job).0))
        }
    }
}

fn zero_domains(g: &Graph, zero_set: &[usize]) -> Result<Vec<Domain>> {
    let m = g.num_edges();
    let mut domains = vec![Domain::Free; m];
    for &e in zero_set {
        if e == 0 || e > m {
            return Err(Error::EdgeOutOfRange { index: e, m });
        }
        domains[e - 1] = Domain::Zero;
    }
    Ok(domains)
}

/// `g_{G,S}` / `f_{G,S}` (at least) or `g^+_{G,S}` / `f^+_{G,S}` (exact).
/// `zero_set` holds 1-based edge indices.
pub fn count_zero_set<E: Executor>(
    g: &Graph,
    zero_set: &[usize],
    kind: TreePoly,
    mode: ZeroSetMode,
    ctx: &FieldCtx,
    engine: &Engine<E>,
) -> Result<BigUint> {
    let base = zero_domains(g, zero_set)?;
    match mode {
        ZeroSetMode::AtLeast => count_with_domains(g, kind, &base, ctx, engine, Kernel::default()),
        ZeroSetMode::Exact => {
            let extra: Vec<usize> = (0..g.num_edges()).filter(|&e| base[e] == Domain::Free).collect();
            let mut total = BigInt::zero();
            for mask in 0u64..(1u64 << extra.len()) {
                let mut domains = base.clone();
                for (bit, &e) in extra.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        domains[e] = Domain::Zero;
                    }
                }
                let c = BigInt::from(count_with_domains(g, kind, &domains, ctx, engine, Kernel::default())?);
                if mask.count_ones() % 2 == 0 {
                    total += c;
                } else {
                    total -= c;
                }
            }
            Ok(total.to_biguint().expect("inclusion-exclusion produced a negative count"))
        }
    }
}

/// Exact zero pattern counted directly: zero on `S`, nonzero elsewhere.
pub fn count_exact_direct<E: Executor>(
    g: &Graph,
    zero_set: &[usize],
    kind: TreePoly,
    ctx: &FieldCtx,
    engine: &Engine<E>,
) -> Result<BigUint> {
    let domains: Vec<Domain> = zero_domains(g, zero_set)?
        .into_iter()
        .map(|d| if d == Domain::Free { Domain::Nonzero } else { d })
        .collect();
    count_with_domains(g, kind, &domains, ctx, engine, Kernel::default())
}

/// `h(G, r)`: assignments of the edge variables giving `L_0` (rooted at
/// `root`) rank `r`, for `r = 0..n-1`. Loop variables are free and scale
/// every entry by `q`.
pub fn rank_profile<E: Executor>(
    g: &Graph,
    root: usize,
    ctx: &FieldCtx,
    engine: &Engine<E>,
) -> Result<RankProfile> {
    let (loopless, loops) = g.without_loops();
    let l0 = reduced_laplacian(&loopless, root)?;
    let job = RankJob::new(ctx, l0.to_template(), AssignmentSpace::free(ctx.q(), loopless.num_edges()));
    engine.budget.check(job.estimate())?;
    let hist = engine.exec.run(&job);
    let scale = BigUint::from(ctx.q()).pow(loops as u32);
    Ok(RankProfile {
        counts: hist.0.iter().map(|&c| BigUint::from(c) * &scale).collect(),
    })
}

/// Number of symmetric `n x n` matrices of each rank `0..=n`.
pub fn sym_rank_census<E: Executor>(n: usize, ctx: &FieldCtx, engine: &Engine<E>) -> Result<RankProfile> {
    let t = MatrixTemplate::symmetric_generic(n);
    let vars = t.num_vars();
    let job = RankJob::new(ctx, t, AssignmentSpace::free(ctx.q(), vars));
    engine.budget.check(job.estimate())?;
    Ok(RankProfile::from_u128(&engine.exec.run(&job).0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::SequentialShards;
    use crate::graph::Family;
    use crate::Budget;

    fn fam(f: Family) -> Graph {
        Graph::family(f).unwrap()
    }

    fn gf(q: u64) -> FieldCtx {
        FieldCtx::parse(&alloc::format!("{q}")).unwrap()
    }

    fn count(g: &Graph, kind: TreePoly, q: u64) -> u64 {
        let c = count_nonvanishing(g, kind, &gf(q), &Engine::sequential()).unwrap();
        u64::try_from(c).unwrap()
    }

    #[test]
    fn cycle_four_examples() {
        let c4 = fam(Family::Cycle(4));
        assert_eq!(count(&c4, TreePoly::Q, 2), 4);
        assert_eq!(count(&c4, TreePoly::P, 2), 8);
        let k3 = fam(Family::Complete(3));
        assert_eq!(count(&k3, TreePoly::Q, 2), 4);
        let disc = Graph::new(3, vec![(1, 2)]).unwrap();
        assert_eq!(count(&disc, TreePoly::Q, 3), 0);
        assert_eq!(count(&disc, TreePoly::P, 3), 0);
    }

    #[test]
    fn kernels_agree() {
        let e = Engine::sequential();
        for g in [fam(Family::Cycle(4)), fam(Family::CompleteMinusStar { n: 4, s: 1 })] {
            for q in [2, 3, 4, 5] {
                for kind in [TreePoly::Q, TreePoly::P] {
                    let a = count_nonvanishing_with(&g, kind, &gf(q), &e, Kernel::Plain).unwrap();
                    let b = count_nonvanishing_with(&g, kind, &gf(q), &e, Kernel::Eliminate).unwrap();
                    assert_eq!(a, b, "{g:?} q={q} {kind:?}");
                }
            }
        }
    }

    #[test]
    fn shard_layout_does_not_matter() {
        let g = fam(Family::Complete(4));
        let ctx = gf(3);
        let whole = count_nonvanishing(&g, TreePoly::Q, &ctx, &Engine::sequential()).unwrap();
        for len in 0..6 {
            let e = Engine::new(SequentialShards(len), Budget::default());
            assert_eq!(count_nonvanishing(&g, TreePoly::Q, &ctx, &e).unwrap(), whole);
        }
    }

    #[test]
    fn zero_set_examples() {
        let c4 = fam(Family::Cycle(4));
        let ctx = gf(3);
        let e = Engine::sequential();
        let at_least = count_zero_set(&c4, &[1], TreePoly::Q, ZeroSetMode::AtLeast, &ctx, &e).unwrap();
        assert_eq!(at_least, BigUint::from(8u32));
        // S = {1, 2} is not a cycle; S = all four edges is.
        let full = count_zero_set(&c4, &[1, 2, 3, 4], TreePoly::P, ZeroSetMode::AtLeast, &ctx, &e).unwrap();
        assert!(full.is_zero());
        for s in [&[][..], &[1], &[1, 3], &[2, 3, 4]] {
            for kind in [TreePoly::Q, TreePoly::P] {
                let ie = count_zero_set(&c4, s, kind, ZeroSetMode::Exact, &ctx, &e).unwrap();
                let direct = count_exact_direct(&c4, s, kind, &ctx, &e).unwrap();
                assert_eq!(ie, direct, "S={s:?} {kind:?}");
            }
        }
        assert!(count_zero_set(&c4, &[5], TreePoly::Q, ZeroSetMode::AtLeast, &ctx, &e).is_err());
    }

    #[test]
    fn loops_and_doubled_edges_scale_by_q() {
        let g = fam(Family::CompleteMinusStar { n: 4, s: 1 });
        for q in [2u64, 3, 4] {
            let base = count(&g, TreePoly::Q, q);
            assert_eq!(count(&g.with_edge(2, 2).unwrap(), TreePoly::Q, q), q * base);
            assert_eq!(count(&g.with_edge(1, 3).unwrap(), TreePoly::Q, q), q * base);
        }
    }

    #[test]
    fn rank_profiles() {
        let e = Engine::sequential();
        let star = fam(Family::CompleteMinusClique { n: 4, k: 3 });
        let p = rank_profile(&star, 4, &gf(2), &e).unwrap();
        assert_eq!(p, RankProfile::from_u128(&[1, 3, 3, 1]));
        let k2 = Graph::new(2, vec![(1, 2)]).unwrap();
        assert_eq!(rank_profile(&k2, 2, &gf(5), &e).unwrap(), RankProfile::from_u128(&[1, 4]));
        let k4 = fam(Family::Complete(4));
        let p = rank_profile(&k4, 4, &gf(3), &e).unwrap();
        assert_eq!(p.total(), BigUint::from(3u32).pow(6));
        assert_eq!(p.top(), &count_nonvanishing(&k4, TreePoly::Q, &gf(3), &e).unwrap());
    }

    #[test]
    fn small_symmetric_censuses() {
        let e = Engine::sequential();
        assert_eq!(sym_rank_census(2, &gf(2), &e).unwrap(), RankProfile::from_u128(&[1, 3, 4]));
        assert_eq!(sym_rank_census(1, &gf(7), &e).unwrap(), RankProfile::from_u128(&[1, 6]));
        let p3 = sym_rank_census(3, &gf(2), &e).unwrap();
        assert_eq!(p3.top(), &BigUint::from(28u32));
    }

    #[test]
    fn budget_refusal() {
        let e = Engine::new(crate::Sequential, Budget { limit: 10, force: false });
        let r = count_nonvanishing(&fam(Family::Complete(4)), TreePoly::Q, &gf(3), &e);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
