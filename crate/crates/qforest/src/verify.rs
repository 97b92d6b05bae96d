//! Self-verification battery.
//!
//! Fourteen criteria, each an exact comparison between an exhaustive count
//! and a closed form, a recurrence, a published value, or a second counting
//! algorithm. `quick` skips the largest exhaustive instances of criteria 1,
//! 2, 5 and 14; `full` runs everything.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use qforest_core::counting::{
    count_nonvanishing, count_nonvanishing_with, count_support_invertible, count_support_symmetric,
    count_zero_set, isotropic_count, ordered_basis_count, rank_profile, sym_rank_census, FormKind, Kernel,
    SupportAlgo, SupportPattern, ZeroSetMode,
};
use qforest_core::fit::{self, integer_coeff_check, PolyVerdict, RationalPoly};
use qforest_core::formulas::{self, GroupKind};
use qforest_core::gf::PrimePower;
use qforest_core::matroid::{count_g_matroid, Matroid};
use qforest_core::treepoly::{eval_det_rank, eval_tree_poly, reduced_laplacian, Assignment, TreePoly};
use qforest_core::{Budget, Engine, Executor, FieldCtx, Family, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for the randomized criteria when none is given.
pub const DEFAULT_SEED: u64 = 1729;

/// Number of criteria in the battery.
pub const CRITERIA: u8 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

/// Outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub checks: usize,
    /// Headline `expected = actual` lines.
    pub notes: Vec<String>,
    /// One line per failed comparison.
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {:>2} {status} {} ({} checks, {} ms)",
            self.id, self.title, self.checks, self.elapsed_ms
        );
        for n in &self.notes {
            line.push_str(&format!("\n    {n}"));
        }
        for f in &self.failures {
            line.push_str(&format!("\n    failed: {f}"));
        }
        line
    }
}

#[derive(Default)]
struct Checker {
    checks: usize,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Checker {
    fn eq<T: PartialEq + Display>(&mut self, what: impl Display, expected: T, actual: T) -> bool {
        self.checks += 1;
        let ok = expected == actual;
        if !ok {
            self.failures.push(format!("{what}: expected {expected}, actual {actual}"));
        }
        ok
    }

    /// Like [`Checker::eq`] and also records the comparison as a headline.
    fn headline<T: PartialEq + Display>(&mut self, what: impl Display, expected: T, actual: T) {
        self.notes.push(format!("{what}: expected {expected}, actual {actual}"));
        self.eq(what, expected, actual);
    }

    fn truth(&mut self, what: impl Display, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

type Step = Result<(), qforest_core::Error>;

fn gf(q: u64) -> Result<FieldCtx, qforest_core::Error> {
    FieldCtx::parse(&q.to_string())
}

fn family(f: Family) -> Result<Graph, qforest_core::Error> {
    Graph::family(f)
}

/// The first `count` prime powers.
pub fn prime_powers(count: usize) -> Vec<u64> {
    (2u64..).filter(|&q| PrimePower::from_q(q).is_ok()).take(count).collect()
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "complete graphs against the closed form",
        2 => "symmetric rank census against closed form and recurrence",
        3 => "apex pipeline for complete minus clique",
        4 => "conjectured complete-minus-clique formulas",
        5 => "complete minus star",
        6 => "cycles, both polynomials",
        7 => "Fano support pattern",
        8 => "zero-diagonal symmetric pattern and block embedding",
        9 => "four-point line",
        10 => "zero-set, two-edge-cut and scaling identities",
        11 => "Matrix-Tree oracle",
        12 => "ordered bases and symmetric matrix count via group orders",
        13 => "isotropic vector counts",
        14 => "integer coefficients of fitted g-polynomials",
        _ => "unknown",
    }
}

/// Runs one criterion.
pub fn run_criterion<E: Executor>(id: u8, level: Level, seed: u64, engine: &Engine<E>) -> Outcome {
    let start = Instant::now();
    let mut c = Checker::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let res = match id {
        1 => complete_graphs(&mut c, level, engine),
        2 => census(&mut c, level, engine),
        3 => apex_pipeline(&mut c, engine),
        4 => conjecture(&mut c, engine),
        5 => minus_star(&mut c, level, engine),
        6 => cycles(&mut c, engine),
        7 => fano(&mut c, engine),
        8 => zero_diagonal(&mut c, &mut rng, engine),
        9 => four_point_line(&mut c, engine),
        10 => identities(&mut c, &mut rng, engine),
        11 => matrix_tree(&mut c, &mut rng),
        12 => ordered_bases(&mut c, engine),
        13 => isotropic(&mut c),
        14 => integer_coefficients(&mut c, level, engine),
        other => Err(qforest_core::Error::InvalidParameter(format!("no criterion {other}"))),
    };
    if let Err(e) = res {
        c.failures.push(format!("error: {e}"));
    }
    Outcome {
        id,
        title: title(id),
        checks: c.checks,
        notes: c.notes,
        failures: c.failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the whole battery in order.
pub fn run_all<E: Executor>(level: Level, seed: u64, engine: &Engine<E>) -> Vec<Outcome> {
    (1..=CRITERIA).map(|id| run_criterion(id, level, seed, engine)).collect()
}

fn complete_graphs<E: Executor>(c: &mut Checker, level: Level, engine: &Engine<E>) -> Step {
    for n in 2..=5 {
        for q in [2u64, 3, 4, 5] {
            if level == Level::Quick && n == 5 && q > 3 {
                continue;
            }
            let counted = count_nonvanishing(&family(Family::Complete(n))?, TreePoly::Q, &gf(q)?, engine)?;
            c.eq(format_args!("g(K_{n}) at q={q}"), formulas::g_complete(n, q), counted);
        }
    }
    let k5 = count_nonvanishing(&family(Family::Complete(5))?, TreePoly::Q, &gf(3)?, engine)?;
    c.headline("g(K_5) at q=3", formulas::g_complete(5, 3), k5);
    Ok(())
}

fn census<E: Executor>(c: &mut Checker, level: Level, engine: &Engine<E>) -> Step {
    for q in [2u64, 3, 4, 5] {
        let mut iterated = vec![BigUint::from(1u32), BigUint::from(q - 1)];
        for n in 1..=4 {
            if n > 1 {
                iterated = formulas::macwilliams_step(&iterated, n - 1, q);
            }
            if level == Level::Quick && n == 4 && q > 3 {
                continue;
            }
            let census = sym_rank_census(n, &gf(q)?, engine)?.counts;
            for r in 0..=n {
                c.eq(format_args!("h({n},{r}) at q={q}"), formulas::macwilliams_h(n, r, q), census[r].clone());
                c.eq(format_args!("step h({n},{r}) at q={q}"), iterated[r].clone(), census[r].clone());
            }
        }
    }
    Ok(())
}

const CLIQUE_CASES: [(usize, usize); 6] = [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4), (6, 3)];

fn apex_pipeline<E: Executor>(c: &mut Checker, engine: &Engine<E>) -> Step {
    for (n, k) in CLIQUE_CASES {
        let g = family(Family::CompleteMinusClique { n, k })?;
        for q in [2u64, 3] {
            let ctx = gf(q)?;
            let counted = count_nonvanishing(&g, TreePoly::Q, &ctx, engine)?;
            c.eq(
                format_args!("g(K_{n}-K_{k}) at q={q}"),
                formulas::g_complete_minus_clique(n, k, q)?,
                counted,
            );
            let profile = rank_profile(&g, n, &ctx, engine)?.counts;
            c.eq(
                format_args!("rank profile of K_{n}-K_{k} at q={q}"),
                format!("{:?}", formulas::complete_minus_clique_profile(n, k, q)?),
                format!("{profile:?}"),
            );
        }
    }
    Ok(())
}

fn conjecture<E: Executor>(c: &mut Checker, engine: &Engine<E>) -> Step {
    for (n, k) in [(5, 3), (5, 4), (6, 3)] {
        let g = family(Family::CompleteMinusClique { n, k })?;
        for q in [2u64, 3] {
            let counted = count_nonvanishing(&g, TreePoly::Q, &gf(q)?, engine)?;
            c.eq(format_args!("conjecture K_{n}-K_{k} at q={q}"), formulas::conjecture_knk(n, k, q)?, counted);
        }
    }
    let mut both = 0;
    for n in 3..=12 {
        for k in 2..n {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                if let (Ok(a), Ok(b)) = (formulas::conjecture_knk(n, k, q), formulas::g_complete_minus_clique(n, k, q)) {
                    both += 1;
                    c.eq(format_args!("conjecture vs pipeline K_{n}-K_{k} at q={q}"), b, a);
                }
            }
        }
    }
    c.note(format!("{both} conjecture/pipeline comparisons"));
    c.truth("conjecture and pipeline overlap somewhere", both > 0);
    Ok(())
}

const STAR_CASES: [(usize, usize); 6] = [(4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3)];

fn minus_star<E: Executor>(c: &mut Checker, level: Level, engine: &Engine<E>) -> Step {
    for (n, s) in STAR_CASES {
        let g = family(Family::CompleteMinusStar { n, s })?;
        for q in [2u64, 3] {
            if level == Level::Quick && n == 6 && q == 3 && s == 1 {
                continue;
            }
            let counted = count_nonvanishing(&g, TreePoly::Q, &gf(q)?, engine)?;
            c.eq(format_args!("g(K_{n}-K_1,{s}) at q={q}"), formulas::g_minus_star(n, s, q)?, counted);
        }
    }
    Ok(())
}

fn cycles<E: Executor>(c: &mut Checker, engine: &Engine<E>) -> Step {
    for n in 2..=6 {
        let g = family(Family::Cycle(n))?;
        for q in [2u64, 3, 4, 5] {
            let ctx = gf(q)?;
            for kind in [TreePoly::Q, TreePoly::P] {
                let counted = count_nonvanishing_with(&g, kind, &ctx, engine, Kernel::Plain)?;
                c.eq(format_args!("{kind:?} of C_{n} at q={q}"), formulas::cycle_counts(n, q, kind)?, counted);
            }
        }
    }
    Ok(())
}

fn fano<E: Executor>(c: &mut Checker, engine: &Engine<E>) -> Step {
    let s = SupportPattern::fano();
    let f2 = gf(2)?;
    let brute = count_support_invertible(&s, SupportAlgo::Brute, &f2, engine)?;
    let even = formulas::eval_int_poly(&formulas::fano_branch(false), 2);
    c.headline("brute h_S(2) vs even-q polynomial", even, BigInt::from(brute.clone()));
    let dp2 = count_support_invertible(&s, SupportAlgo::SpanDp, &f2, engine)?;
    c.headline("span DP vs brute at q=2", brute, dp2);
    let dp3 = count_support_invertible(&s, SupportAlgo::SpanDp, &gf(3)?, engine)?;
    let odd = formulas::eval_int_poly(&formulas::fano_branch(true), 3);
    c.headline("span DP h_S(3) vs odd-q polynomial", odd, BigInt::from(dp3));
    c.truth(
        "the odd-q and even-q polynomials differ",
        formulas::polys_differ(&formulas::fano_branch(true), &formulas::fano_branch(false)),
    );
    Ok(())
}

fn random_pattern(rng: &mut ChaCha8Rng, n: usize) -> Result<SupportPattern, qforest_core::Error> {
    let mask = (0..n * n).map(|_| rng.gen_bool(0.6)).collect();
    SupportPattern::from_mask(n, mask, false)
}

fn zero_diagonal<E: Executor>(c: &mut Checker, rng: &mut ChaCha8Rng, engine: &Engine<E>) -> Step {
    let s = SupportPattern::off_diagonal(3);
    for (q, expect) in [(2u64, 0u32), (3, 8), (4, 0)] {
        let k = count_support_symmetric(&s, &gf(q)?, engine)?;
        c.headline(format_args!("k_S({q}) for the zero-diagonal 3x3 pattern"), BigUint::from(expect), k);
    }
    for i in 0..20 {
        let n = rng.gen_range(1..=3);
        let t = random_pattern(rng, n)?;
        let embedded = SupportPattern::block_embedding(&t);
        for q in [2u64, 3] {
            let ctx = gf(q)?;
            let h = count_support_invertible(&t, SupportAlgo::Brute, &ctx, engine)?;
            let k = count_support_symmetric(&embedded, &ctx, engine)?;
            c.eq(format_args!("pattern #{i} {:?} at q={q}", t.rows()), h, k);
        }
    }
    Ok(())
}

/// Prime powers up to 729 chosen so that every residue class modulo 1, 2
/// and 3 has at least six samples.
pub const FOURPOINT_EXTENDED: [u64; 19] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27, 32, 64, 81, 243, 729];

fn four_point_line<E: Executor>(c: &mut Checker, engine: &Engine<E>) -> Step {
    let u24 = Matroid::uniform(2, 4)?;
    let mut points = Vec::new();
    for q in FOURPOINT_EXTENDED {
        let counted = count_g_matroid(&u24, &gf(q)?, engine)?;
        c.eq(format_args!("g(U_2,4) at q={q}"), formulas::fourpoint_formula(q), counted.clone());
        points.push((q, BigInt::from(counted)));
    }
    let six: Vec<_> = points.iter().filter(|(q, _)| [2, 3, 4, 5, 7, 9].contains(q)).cloned().collect();
    match fit::polynomiality_probe(&six, 4)? {
        PolyVerdict::NotPolynomial { witness, .. } => {
            c.truth("polynomiality probe rejects", true);
            c.note(format!("not a polynomial, witness q={} count={}", witness.0, witness.1));
        }
        PolyVerdict::Polynomial(p) => c.truth(format_args!("polynomiality probe accepted {p}"), false),
    }
    let expected = |coeffs: &[i64]| RationalPoly::from_integers(&coeffs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    // q^3(q-1), q(q-1)(q^2-1), q(q-1)(q^2+1) for q = 0, 1, 2 mod 3
    let branches = [
        expected(&[0, 0, 0, -1, 1]),
        expected(&[0, 1, -1, -1, 1]),
        expected(&[0, -1, 1, -1, 1]),
    ];
    match fit::quasipoly_probe(&points, 3, 4)? {
        Some(qp) => {
            c.headline("quasipolynomial modulus", 3, qp.modulus);
            for (r, want) in branches.iter().enumerate() {
                let got = qp.branches.get(r).cloned().flatten();
                c.eq(
                    format_args!("branch q = {r} mod 3"),
                    want.to_string(),
                    got.map_or("missing".into(), |p| p.to_string()),
                );
            }
        }
        None => c.truth("quasipolynomial probe found a modulus <= 3", false),
    }
    Ok(())
}

/// A random connected simple graph on `n` vertices: a random tree plus
/// each remaining pair with probability one half.
fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 2..=n {
        edges.push((rng.gen_range(1..v), v));
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if !edges.contains(&(u, v)) && !edges.contains(&(v, u)) && rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    edges.shuffle(rng);
    Graph::new(n, edges).expect("vertices in range")
}

fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, edges).expect("vertices in range")
        })
        .filter(Graph::is_connected)
        .collect()
}

/// Two random connected graphs joined by two edges that do not share both
/// endpoints. Returns the joined graph and both sides.
fn two_cut_graph(rng: &mut ChaCha8Rng) -> (Graph, Graph, Graph) {
    loop {
        let a = rng.gen_range(1..=3);
        let b = rng.gen_range(1..=3);
        if a + b < 3 {
            continue;
        }
        let g1 = random_connected(rng, a);
        let g2 = random_connected(rng, b);
        let e = (rng.gen_range(1..=a), a + rng.gen_range(1..=b));
        let f = (rng.gen_range(1..=a), a + rng.gen_range(1..=b));
        if e == f {
            continue;
        }
        let mut edges: Vec<(usize, usize)> = g1.edges().to_vec();
        edges.extend(g2.edges().iter().map(|&(u, v)| (u + a, v + a)));
        edges.push(e);
        edges.push(f);
        return (Graph::new(a + b, edges).expect("vertices in range"), g1, g2);
    }
}

fn identities<E: Executor>(c: &mut Checker, rng: &mut ChaCha8Rng, engine: &Engine<E>) -> Step {
    for n in 1..=4 {
        for g in connected_graphs(n) {
            for q in [2u64, 3] {
                let ctx = gf(q)?;
                let f = count_zero_set(&g, &[], TreePoly::P, ZeroSetMode::Exact, &ctx, engine)?;
                let gq = count_zero_set(&g, &[], TreePoly::Q, ZeroSetMode::Exact, &ctx, engine)?;
                c.eq(format_args!("f+ = g+ for {:?} at q={q}", g.edges()), f, gq);
            }
        }
    }
    let c4 = family(Family::Cycle(4))?;
    let k2 = Graph::new(2, vec![(1, 2)])?;
    let mut cases = vec![(c4, k2.clone(), k2)];
    cases.extend((0..10).map(|_| two_cut_graph(rng)));
    for (g, g1, g2) in &cases {
        let m = g.num_edges();
        let once = g.minor(&[], &[m - 1])?;
        let twice = g.minor(&[], &[m - 1, m])?;
        for q in [2u64, 3] {
            let ctx = gf(q)?;
            let count = |h: &Graph| count_nonvanishing(h, TreePoly::Q, &ctx, engine);
            let rhs = formulas::two_cut_rhs(&count(g1)?, &count(g2)?, &count(&once)?, &count(&twice)?, q);
            c.eq(format_args!("two-cut {:?} at q={q}", g.edges()), rhs, BigInt::from(count(g)?));
        }
    }
    for i in 0..10 {
        let n = rng.gen_range(2..=5);
        let g = random_connected(rng, n);
        let &(u, v) = g.edges().choose(rng).expect("connected graph on >= 2 vertices has edges");
        let doubled = g.with_edge(u, v)?;
        let w = rng.gen_range(1..=n);
        let looped = g.with_edge(w, w)?;
        for q in [2u64, 3] {
            let ctx = gf(q)?;
            let base = count_nonvanishing(&g, TreePoly::Q, &ctx, engine)? * q;
            let d = count_nonvanishing(&doubled, TreePoly::Q, &ctx, engine)?;
            c.eq(format_args!("graph #{i} doubled edge at q={q}"), base.clone(), d);
            let l = count_nonvanishing(&looped, TreePoly::Q, &ctx, engine)?;
            c.eq(format_args!("graph #{i} loop at q={q}"), base, l);
        }
    }
    Ok(())
}

fn assignment_codes(q: u64, m: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..q.pow(m as u32)).map(move |mut idx| {
        let mut v = vec![0; m];
        for slot in v.iter_mut().rev() {
            *slot = idx % q;
            idx /= q;
        }
        v
    })
}

fn matrix_tree(c: &mut Checker, rng: &mut ChaCha8Rng) -> Step {
    let f2 = gf(2)?;
    let mut exhaustive = 0;
    for n in 1..=4 {
        for g in connected_graphs(n) {
            let l0 = reduced_laplacian(&g, n)?;
            for codes in assignment_codes(2, g.num_edges()) {
                let a = Assignment::from_codes(&f2, &codes)?;
                let det = eval_det_rank(&l0, &a, &f2).0;
                exhaustive += 1;
                c.eq(format_args!("{:?} at {codes:?}", g.edges()), eval_tree_poly(&g, &a, TreePoly::Q, &f2), det);
            }
        }
    }
    c.note(format!("{exhaustive} exhaustive assignments at q=2"));
    for i in 0..200 {
        let n = rng.gen_range(2..=6);
        let g = random_connected(rng, n);
        let q = *[2u64, 3, 4, 5].choose(rng).expect("nonempty");
        let ctx = gf(q)?;
        let codes: Vec<u64> = (0..g.num_edges()).map(|_| rng.gen_range(0..q)).collect();
        let a = Assignment::from_codes(&ctx, &codes)?;
        let root = rng.gen_range(1..=n);
        let det = eval_det_rank(&reduced_laplacian(&g, root)?, &a, &ctx).0;
        c.eq(format_args!("random instance #{i} at q={q}"), eval_tree_poly(&g, &a, TreePoly::Q, &ctx), det);
    }
    Ok(())
}

/// `b+/|Omega+| + b-/|Omega-|`, or `b+/|Omega|` when only one form exists.
fn reconstruct(g: &Graph, q: u64) -> Result<BigUint, qforest_core::Error> {
    let ctx = gf(q)?;
    let b = Budget::default();
    let n = g.n() - 1;
    let plus = ordered_basis_count(g, FormKind::Plus, &ctx, &b)?;
    if q.is_multiple_of(2) && n % 2 == 1 {
        return Ok(plus / formulas::group_order(GroupKind::OmegaPlain, n, q)?);
    }
    let minus = ordered_basis_count(g, FormKind::Minus, &ctx, &b)?;
    Ok(plus / formulas::group_order(GroupKind::OmegaPlus, n, q)?
        + minus / formulas::group_order(GroupKind::OmegaMinus, n, q)?)
}

fn ordered_bases<E: Executor>(c: &mut Checker, engine: &Engine<E>) -> Step {
    let path = Graph::new(3, vec![(1, 3), (2, 3)])?;
    for q in [2u64, 3] {
        let g = count_nonvanishing(&path, TreePoly::Q, &gf(q)?, engine)?;
        c.headline(format_args!("path reconstruction at q={q}"), g, reconstruct(&path, q)?);
    }
    for n in 2..=3 {
        for g in connected_graphs(n + 1).into_iter().filter(|g| g.is_apex(n + 1).unwrap_or(false)) {
            for q in [2u64, 3] {
                let counted = count_nonvanishing(&g, TreePoly::Q, &gf(q)?, engine)?;
                c.eq(format_args!("reconstruction {:?} at q={q}", g.edges()), counted, reconstruct(&g, q)?);
            }
        }
    }
    for n in 2..=3 {
        for q in [2u64, 3, 5] {
            let via_groups = formulas::sym_count_via_groups(n, q)?;
            let census = sym_rank_census(n, &gf(q)?, engine)?;
            c.eq(format_args!("#Sym({n},{q}) via group orders"), census.top().clone(), via_groups.clone());
            c.eq(format_args!("#Sym({n},{q}) closed form"), formulas::macwilliams_h(n, n, q), via_groups);
        }
    }
    Ok(())
}

fn isotropic(c: &mut Checker) -> Step {
    let mut rows = BTreeSet::new();
    let b = Budget::default();
    for n in 1..=4 {
        for q in [2u64, 3, 4, 5] {
            for form in [FormKind::Plus, FormKind::Minus] {
                let Ok((row, value)) = formulas::isotropic_formula(n, q, form) else {
                    continue;
                };
                rows.insert(format!("{row:?}"));
                c.eq(format_args!("N_{form:?}({n}) at q={q}"), value, isotropic_count(n, form, &gf(q)?, &b)?);
            }
        }
    }
    c.note(format!("table rows exercised: {}", rows.into_iter().collect::<Vec<_>>().join(", ")));
    Ok(())
}

/// A named g-count sequence sampled at enough prime powers to pin down a
/// polynomial of degree `degree` with one point held out.
struct Sequence {
    name: String,
    degree: usize,
    points: Vec<(u64, BigInt)>,
}

fn brute_sequence<E: Executor>(g: &Graph, name: String, engine: &Engine<E>) -> Result<Sequence, qforest_core::Error> {
    let degree = g.num_edges();
    let mut points = Vec::new();
    for q in prime_powers(degree + 2) {
        points.push((q, BigInt::from(count_nonvanishing(g, TreePoly::Q, &gf(q)?, engine)?)));
    }
    Ok(Sequence { name, degree, points })
}

fn formula_sequence(
    name: String,
    degree: usize,
    f: impl Fn(u64) -> Result<BigUint, qforest_core::Error>,
) -> Result<Sequence, qforest_core::Error> {
    let points = prime_powers(degree + 2)
        .into_iter()
        .map(|q| Ok((q, BigInt::from(f(q)?))))
        .collect::<Result<_, qforest_core::Error>>()?;
    Ok(Sequence { name, degree, points })
}

fn integer_coefficients<E: Executor>(c: &mut Checker, level: Level, engine: &Engine<E>) -> Step {
    let brute_limit = if level == Level::Quick { 5 } else { 7 };
    let mut seqs = Vec::new();
    let graphs: Vec<(String, Graph)> = (2..=6).map(|n| (format!("C_{n}"), Family::Cycle(n))).chain(
        (2..=5).map(|n| (format!("K_{n}"), Family::Complete(n))),
    )
    .chain(CLIQUE_CASES.iter().map(|&(n, k)| (format!("K_{n}-K_{k}"), Family::CompleteMinusClique { n, k })))
    .chain(STAR_CASES.iter().map(|&(n, s)| (format!("K_{n}-K_1,{s}"), Family::CompleteMinusStar { n, s })))
    .map(|(name, f)| Ok((name, family(f)?)))
    .collect::<Result<_, qforest_core::Error>>()?;
    for (name, g) in graphs {
        if g.num_edges() <= brute_limit {
            seqs.push(brute_sequence(&g, format!("{name} (counted)"), engine)?);
        }
    }
    for n in 2..=5 {
        seqs.push(formula_sequence(format!("K_{n} (closed form)"), n * (n - 1) / 2, |q| Ok(formulas::g_complete(n, q)))?);
    }
    for (n, k) in CLIQUE_CASES {
        let degree = n * (n - 1) / 2 - k * (k - 1) / 2;
        seqs.push(formula_sequence(format!("K_{n}-K_{k} (pipeline)"), degree, |q| {
            formulas::g_complete_minus_clique(n, k, q)
        })?);
    }
    for (n, s) in STAR_CASES {
        let degree = n * (n - 1) / 2 - s;
        seqs.push(formula_sequence(format!("K_{n}-K_1,{s} (closed form)"), degree, |q| formulas::g_minus_star(n, s, q))?);
    }
    for seq in &seqs {
        match fit::polynomiality_probe(&seq.points, seq.degree)? {
            PolyVerdict::Polynomial(p) => {
                c.truth(format_args!("{} has integer coefficients: {p}", seq.name), integer_coeff_check(&p));
            }
            PolyVerdict::NotPolynomial { witness, .. } => {
                c.truth(format_args!("{} is not polynomial at q={}", seq.name, witness.0), false)
            }
        }
    }
    c.note(format!("{} sequences fitted", seqs.len()));
    Ok(())
}
