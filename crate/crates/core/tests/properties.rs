//! Randomized invariants.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use qforest_core::count::SequentialShards;
use qforest_core::counting::{
    count_nonvanishing, count_nonvanishing_with, count_support_invertible, Kernel, SupportAlgo, SupportPattern,
};
use qforest_core::fit::{interpolate, polynomiality_probe, RationalPoly};
use qforest_core::treepoly::{eval_det_rank, eval_tree_poly, reduced_laplacian, Assignment, TreePoly};
use qforest_core::{Budget, Engine, FieldCtx, Graph};

const FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn gf(q: u64) -> FieldCtx {
    FieldCtx::parse(&q.to_string()).unwrap()
}

/// Loopless multigraphs on 2..=5 vertices with up to 7 edges.
fn graphs() -> impl Strategy<Value = Graph> {
    (2usize..=5)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((1..=n, 1..n), 0..=7)))
        .prop_map(|(n, raw)| {
            let edges = raw.into_iter().map(|(u, d)| (u, (u - 1 + d) % n + 1)).collect();
            Graph::new(n, edges).unwrap()
        })
}

fn assignment(ctx: &FieldCtx, seed: &[u64], m: usize, nonzero: bool) -> Assignment {
    let q = ctx.q() as u64;
    let codes: Vec<u64> = (0..m)
        .map(|i| {
            let x = seed[i % seed.len()].wrapping_mul(i as u64 + 1);
            if nonzero { 1 + x % (q - 1) } else { x % q }
        })
        .collect();
    Assignment::from_codes(ctx, &codes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_tree_determinant(g in graphs(), qi in 0usize..FIELDS.len(), seed in prop::collection::vec(any::<u64>(), 1..8), root_pick in 0usize..5) {
        let ctx = gf(FIELDS[qi]);
        let a = assignment(&ctx, &seed, g.num_edges(), false);
        let root = root_pick % g.n() + 1;
        let (det, _) = eval_det_rank(&reduced_laplacian(&g, root).unwrap(), &a, &ctx);
        prop_assert_eq!(det, eval_tree_poly(&g, &a, TreePoly::Q, &ctx));
    }

    #[test]
    fn complement_duality(g in graphs(), qi in 0usize..FIELDS.len(), seed in prop::collection::vec(any::<u64>(), 1..8)) {
        let ctx = gf(FIELDS[qi]);
        let a = assignment(&ctx, &seed, g.num_edges(), true);
        let inv = Assignment::new(a.values().iter().map(|&x| ctx.inv(x).unwrap()).collect());
        let prod = a.values().iter().fold(ctx.one(), |acc, &x| ctx.mul(acc, x));
        let q_inv = eval_tree_poly(&g, &inv, TreePoly::Q, &ctx);
        prop_assert_eq!(eval_tree_poly(&g, &a, TreePoly::P, &ctx), ctx.mul(prod, q_inv));
    }

    #[test]
    fn deletion_contraction_tree_counts(g in graphs(), pick in 0usize..7) {
        prop_assume!(g.num_edges() > 0);
        let e = pick % g.num_edges() + 1;
        let deleted = g.minor(&[e], &[]).unwrap().spanning_tree_count();
        let contracted = g.minor(&[], &[e]).unwrap().spanning_tree_count();
        prop_assert_eq!(g.spanning_tree_count(), deleted + contracted);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernels_and_shards_agree(g in graphs(), qi in 0usize..4, shard_len in 0usize..5) {
        let ctx = gf(FIELDS[qi]);
        let seq = Engine::sequential();
        let sharded = Engine::new(SequentialShards(shard_len), Budget::default());
        for kind in [TreePoly::Q, TreePoly::P] {
            let plain = count_nonvanishing_with(&g, kind, &ctx, &seq, Kernel::Plain).unwrap();
            prop_assert_eq!(&count_nonvanishing_with(&g, kind, &ctx, &seq, Kernel::Eliminate).unwrap(), &plain);
            prop_assert_eq!(&count_nonvanishing(&g, kind, &ctx, &sharded).unwrap(), &plain);
        }
    }

    #[test]
    fn doubled_edges_and_loops_scale_by_q(g in graphs(), qi in 0usize..4, pick in 0usize..7, w in 1usize..=5) {
        prop_assume!(g.num_edges() > 0);
        let q = FIELDS[qi];
        let ctx = gf(q);
        let e = Engine::sequential();
        let base = count_nonvanishing(&g, TreePoly::Q, &ctx, &e).unwrap() * q;
        let (u, v) = g.edges()[pick % g.num_edges()];
        prop_assert_eq!(&count_nonvanishing(&g.with_edge(u, v).unwrap(), TreePoly::Q, &ctx, &e).unwrap(), &base);
        let w = (w - 1) % g.n() + 1;
        prop_assert_eq!(&count_nonvanishing(&g.with_edge(w, w).unwrap(), TreePoly::Q, &ctx, &e).unwrap(), &base);
    }

    #[test]
    fn span_dp_matches_brute(n in 1usize..=4, bits in prop::collection::vec(prop::bool::weighted(0.6), 16), q in 2u64..=3) {
        let s = SupportPattern::from_mask(n, bits[..n * n].to_vec(), false).unwrap();
        let ctx = gf(q);
        let e = Engine::sequential();
        prop_assert_eq!(
            count_support_invertible(&s, SupportAlgo::SpanDp, &ctx, &e).unwrap(),
            count_support_invertible(&s, SupportAlgo::Brute, &ctx, &e).unwrap()
        );
    }

    #[test]
    fn interpolation_reproduces_points(ys in prop::collection::vec(-1000i64..1000, 1..8)) {
        let pts: Vec<(u64, BigInt)> = ys.iter().enumerate().map(|(i, &y)| (2 + 3 * i as u64, BigInt::from(y))).collect();
        let p = interpolate(&pts).unwrap();
        prop_assert!(p.degree().is_none_or(|d| d < pts.len()));
        for (q, y) in &pts {
            prop_assert_eq!(p.eval(*q), num_rational::BigRational::from_integer(y.clone()));
        }
    }

    #[test]
    fn probe_verdict_ignores_point_order(coeffs in prop::collection::vec(-5i64..5, 1..4), bump in prop::option::of(0usize..6), rot in 0usize..6) {
        let poly = RationalPoly::from_integers(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let mut pts: Vec<(u64, BigInt)> = [2u64, 3, 4, 5, 7, 8]
            .iter()
            .map(|&q| (q, poly.eval(q).to_integer()))
            .collect();
        if let Some(i) = bump {
            pts[i].1 += 1;
        }
        let verdict = polynomiality_probe(&pts, 3).unwrap();
        pts.rotate_left(rot);
        pts.reverse();
        prop_assert_eq!(polynomiality_probe(&pts, 3).unwrap(), verdict);
    }
}

#[test]
fn counts_fit_in_the_assignment_space() {
    let g = Graph::new(3, vec![(1, 2), (2, 3), (1, 3), (1, 3)]).unwrap();
    for q in FIELDS {
        let c = count_nonvanishing(&g, TreePoly::Q, &gf(q), &Engine::sequential()).unwrap();
        assert!(c <= BigUint::from(q).pow(4));
    }
}
