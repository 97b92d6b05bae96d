//! Counters checked against independent computations: direct monomial
//! evaluation, brute enumeration written out here, and group-theoretic
//! identities.

use num_bigint::BigUint;
use qforest_core::counting::{
    count_exact_direct, count_nonvanishing, count_nonvanishing_with, count_zero_set, isotropic_count,
    ordered_basis_count, rank_profile, stabilizer_count, sym_rank_census, FormKind, Kernel, ZeroSetMode,
};
use qforest_core::formulas::{self, GroupKind};
use qforest_core::treepoly::{eval_det_rank, eval_tree_poly, reduced_laplacian, Assignment, TreePoly};
use qforest_core::{Budget, Engine, FieldCtx, Graph};

fn gf(q: u64) -> FieldCtx {
    FieldCtx::parse(&q.to_string()).unwrap()
}

/// Every simple graph on `n` labelled vertices.
fn simple_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

/// Every assignment of `m` variables over the field, by code.
fn assignments(ctx: &FieldCtx, m: usize) -> impl Iterator<Item = Vec<u64>> + '_ {
    let q = ctx.q() as u64;
    (0..q.pow(m as u32)).map(move |mut idx| {
        let mut v = vec![0; m];
        for slot in v.iter_mut().rev() {
            *slot = idx % q;
            idx /= q;
        }
        v
    })
}

/// `g` or `f` by evaluating the tree polynomial at every assignment.
fn brute_count(g: &Graph, kind: TreePoly, ctx: &FieldCtx) -> BigUint {
    let n = assignments(ctx, g.num_edges())
        .filter(|codes| !eval_tree_poly(g, &Assignment::from_codes(ctx, codes).unwrap(), kind, ctx).is_zero())
        .count();
    BigUint::from(n)
}

#[test]
fn matrix_tree_on_all_small_graphs() {
    for n in 1..=4 {
        for g in simple_graphs(n).into_iter().filter(|g| g.is_connected()) {
            for q in [2, 3] {
                let ctx = gf(q);
                let l0 = reduced_laplacian(&g, n).unwrap();
                for codes in assignments(&ctx, g.num_edges()) {
                    let a = Assignment::from_codes(&ctx, &codes).unwrap();
                    let (det, rank) = eval_det_rank(&l0, &a, &ctx);
                    assert_eq!(det, eval_tree_poly(&g, &a, TreePoly::Q, &ctx), "{g:?} {codes:?}");
                    assert_eq!(det.is_zero(), rank < n - 1);
                }
            }
        }
    }
}

#[test]
fn counters_match_direct_evaluation() {
    let e = Engine::sequential();
    for n in 2..=4 {
        for g in simple_graphs(n) {
            for q in [2, 3] {
                let ctx = gf(q);
                for kind in [TreePoly::Q, TreePoly::P] {
                    let brute = brute_count(&g, kind, &ctx);
                    for kernel in [Kernel::Plain, Kernel::Eliminate] {
                        assert_eq!(count_nonvanishing_with(&g, kind, &ctx, &e, kernel).unwrap(), brute);
                    }
                }
            }
        }
    }
}

#[test]
fn every_root_gives_the_same_count() {
    let e = Engine::sequential();
    let ctx = gf(3);
    for g in simple_graphs(4).into_iter().filter(|g| g.is_connected()) {
        let tops: Vec<BigUint> = (1..=4)
            .map(|root| {
                let p = rank_profile(&g, root, &ctx, &e).unwrap();
                p.top().clone()
            })
            .collect();
        assert!(tops.windows(2).all(|w| w[0] == w[1]), "{g:?}");
        assert_eq!(tops[0], count_nonvanishing(&g, TreePoly::Q, &ctx, &e).unwrap());
    }
}

#[test]
fn apex_root_top_rank_is_g() {
    let e = Engine::sequential();
    for n in 3..=5 {
        let qs: &[u64] = if n == 5 { &[2, 3] } else { &[2, 3, 4] };
        for g in simple_graphs(n).into_iter().filter(|g| g.is_apex(n).unwrap()) {
            for &q in qs {
                let ctx = gf(q);
                let p = rank_profile(&g, n, &ctx, &e).unwrap();
                assert_eq!(p.total(), BigUint::from(q).pow(g.num_edges() as u32));
                assert_eq!(p.top(), &count_nonvanishing(&g, TreePoly::Q, &ctx, &e).unwrap());
            }
        }
    }
}

#[test]
fn zero_set_counts_against_minors() {
    let e = Engine::sequential();
    for g in simple_graphs(4).into_iter().filter(|g| g.is_connected()).step_by(3) {
        let m = g.num_edges();
        for q in [2, 3] {
            let ctx = gf(q);
            for mask in 0u32..1 << m {
                let s: Vec<usize> = (1..=m).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
                let g_s = count_zero_set(&g, &s, TreePoly::Q, ZeroSetMode::AtLeast, &ctx, &e).unwrap();
                let deleted = g.minor(&s, &[]).unwrap();
                let expect = count_nonvanishing(&deleted, TreePoly::Q, &ctx, &e).unwrap();
                assert_eq!(g_s, expect);
                let f_s = count_zero_set(&g, &s, TreePoly::P, ZeroSetMode::AtLeast, &ctx, &e).unwrap();
                let contracted = g.minor(&[], &s).unwrap();
                if contracted.n() + s.len() == g.n() {
                    assert_eq!(f_s, count_nonvanishing(&contracted, TreePoly::P, &ctx, &e).unwrap());
                } else {
                    assert_eq!(f_s, BigUint::from(0u32));
                }
                let exact = count_zero_set(&g, &s, TreePoly::Q, ZeroSetMode::Exact, &ctx, &e).unwrap();
                assert_eq!(exact, count_exact_direct(&g, &s, TreePoly::Q, &ctx, &e).unwrap());
            }
            let fp = count_zero_set(&g, &[], TreePoly::P, ZeroSetMode::Exact, &ctx, &e).unwrap();
            let gp = count_zero_set(&g, &[], TreePoly::Q, ZeroSetMode::Exact, &ctx, &e).unwrap();
            assert_eq!(fp, gp);
        }
    }
}

#[test]
fn symmetric_census_against_closed_form_and_recurrence() {
    let e = Engine::sequential();
    for q in [2, 3, 4] {
        let ctx = gf(q);
        let mut prev: Option<Vec<BigUint>> = None;
        for n in 1..=3 {
            let census = sym_rank_census(n, &ctx, &e).unwrap().counts;
            assert_eq!(census, formulas::macwilliams_profile(n, q));
            if let Some(p) = prev {
                assert_eq!(formulas::macwilliams_step(&p, n - 1, q), census);
            }
            assert_eq!(census[n], formulas::sym_count_via_groups(n, q).unwrap());
            prev = Some(census);
        }
    }
}

#[test]
fn stabilizer_orders_match_group_formulas() {
    let b = Budget::default();
    let cases: &[(usize, u64, FormKind, GroupKind)] = &[
        (1, 3, FormKind::Plus, GroupKind::OmegaPlus),
        (2, 3, FormKind::Plus, GroupKind::OmegaPlus),
        (2, 3, FormKind::Minus, GroupKind::OmegaMinus),
        (2, 5, FormKind::Plus, GroupKind::OmegaPlus),
        (2, 5, FormKind::Minus, GroupKind::OmegaMinus),
        (3, 3, FormKind::Plus, GroupKind::OmegaPlus),
        (3, 3, FormKind::Minus, GroupKind::OmegaMinus),
        (2, 2, FormKind::Plus, GroupKind::OmegaPlus),
        (2, 2, FormKind::Minus, GroupKind::OmegaMinus),
        (2, 4, FormKind::Plus, GroupKind::OmegaPlus),
        (2, 4, FormKind::Minus, GroupKind::OmegaMinus),
        (4, 2, FormKind::Plus, GroupKind::OmegaPlus),
        (4, 2, FormKind::Minus, GroupKind::OmegaMinus),
        (3, 2, FormKind::Plus, GroupKind::OmegaPlain),
        (1, 2, FormKind::Plus, GroupKind::OmegaPlain),
    ];
    for &(n, q, form, group) in cases {
        assert_eq!(
            stabilizer_count(n, form, &gf(q), &b).unwrap(),
            formulas::group_order(group, n, q).unwrap(),
            "n={n} q={q} {group}"
        );
    }
}

#[test]
fn ordered_bases_reconstruct_g() {
    let e = Engine::sequential();
    let b = Budget::default();
    for n in 2..=3 {
        for g in simple_graphs(n + 1).into_iter().filter(|g| g.is_apex(n + 1).unwrap()) {
            for q in [2u64, 3] {
                let ctx = gf(q);
                let expect = count_nonvanishing(&g, TreePoly::Q, &ctx, &e).unwrap();
                let plus = ordered_basis_count(&g, FormKind::Plus, &ctx, &b).unwrap();
                let got = if q % 2 == 0 && n % 2 == 1 {
                    plus / formulas::group_order(GroupKind::OmegaPlain, n, q).unwrap()
                } else {
                    let minus = ordered_basis_count(&g, FormKind::Minus, &ctx, &b).unwrap();
                    let op = formulas::group_order(GroupKind::OmegaPlus, n, q).unwrap();
                    let om = formulas::group_order(GroupKind::OmegaMinus, n, q).unwrap();
                    assert_eq!(&plus % &op, BigUint::from(0u32));
                    assert_eq!(&minus % &om, BigUint::from(0u32));
                    plus / op + minus / om
                };
                assert_eq!(got, expect, "{g:?} q={q}");
            }
        }
    }
}

#[test]
fn isotropic_table_rows() {
    let b = Budget::default();
    let mut rows = std::collections::HashSet::new();
    for n in 1..=4 {
        for q in [2, 3, 4, 5, 7] {
            for form in [FormKind::Plus, FormKind::Minus] {
                match formulas::isotropic_formula(n, q, form) {
                    Ok((row, v)) => {
                        rows.insert(row);
                        assert_eq!(isotropic_count(n, form, &gf(q), &b).unwrap(), v, "n={n} q={q} {form:?}");
                    }
                    Err(_) => assert!(q % 2 == 0 && n % 2 == 1 && form == FormKind::Minus),
                }
            }
        }
    }
    assert_eq!(rows.len(), formulas::IsotropicRow::ALL.len());
}

#[test]
fn cycle_formulas_against_brute_force() {
    for n in 2..=6 {
        let g = Graph::family(qforest_core::Family::Cycle(n)).unwrap();
        for q in [2, 3] {
            let ctx = gf(q);
            for kind in [TreePoly::Q, TreePoly::P] {
                assert_eq!(brute_count(&g, kind, &ctx), formulas::cycle_counts(n, q, kind).unwrap());
            }
        }
    }
}

#[test]
fn r10_golden_values_by_direct_evaluation() {
    use qforest_core::matroid::{count_g_matroid, eval_basis_poly, Matroid, R10_G_VALUES};
    let r10 = Matroid::r10();
    let e = Engine::sequential();
    for (q, golden) in R10_G_VALUES {
        let ctx = gf(q);
        assert_eq!(count_g_matroid(&r10, &ctx, &e).unwrap(), BigUint::from(golden));
        if q <= 3 {
            let direct = assignments(&ctx, 10)
                .filter(|codes| !eval_basis_poly(&r10, &Assignment::from_codes(&ctx, codes).unwrap(), &ctx).is_zero())
                .count();
            assert_eq!(direct as u64, golden, "q={q}");
        }
    }
}
