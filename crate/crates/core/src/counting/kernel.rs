//! Inner loops of the exhaustive counters.

use alloc::vec::Vec;

use crate::budget::saturating_pow;
use crate::count::{Count, Histogram, ShardedCount};
use crate::gf::FieldCtx;
use crate::linalg;
use crate::odometer::{AssignmentSpace, Domain};
use crate::template::MatrixTemplate;
use crate::treepoly::eval_monomials;

/// Per-thread buffers reused across evaluations.
#[derive(Default)]
pub struct Scratch {
    dense: Vec<u32>,
    bits: Vec<u64>,
}

/// A polynomial in the job's variables that can be evaluated at codes.
pub trait PolyEval: Sync {
    fn num_vars(&self) -> usize;

    /// True when the polynomial has degree at most one in every variable.
    fn multilinear(&self) -> bool;

    /// Rough field-operation cost of one evaluation.
    fn cost(&self) -> u128;

    fn eval(&self, ctx: &FieldCtx, values: &[u32], scratch: &mut Scratch) -> u32;
}

/// Determinant of a matrix template.
#[derive(Clone, Debug)]
pub struct DetEval {
    template: MatrixTemplate,
}

impl DetEval {
    pub fn new(template: MatrixTemplate) -> Self {
        DetEval { template }
    }

    pub fn template(&self) -> &MatrixTemplate {
        &self.template
    }
}

impl PolyEval for DetEval {
    fn num_vars(&self) -> usize {
        self.template.num_vars()
    }

    fn multilinear(&self) -> bool {
        self.template.is_multilinear()
    }

    fn cost(&self) -> u128 {
        let n = self.template.size().max(1) as u128;
        n * n * n
    }

    fn eval(&self, ctx: &FieldCtx, values: &[u32], scratch: &mut Scratch) -> u32 {
        let n = self.template.size();
        if ctx.q() == 2 && n <= 64 {
            self.template.fill_gf2(values, &mut scratch.bits);
            return (linalg::gf2_rank(&mut scratch.bits) == n) as u32;
        }
        self.template.fill(ctx, values, &mut scratch.dense);
        linalg::det_rank(ctx, &mut scratch.dense, n).0
    }
}

/// Sum of squarefree monomials.
#[derive(Clone, Debug)]
pub struct MonomialEval {
    num_vars: usize,
    monomials: Vec<Vec<usize>>,
}

impl MonomialEval {
    pub fn new(num_vars: usize, monomials: Vec<Vec<usize>>) -> Self {
        MonomialEval {
            num_vars,
            monomials,
        }
    }
}

impl PolyEval for MonomialEval {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn multilinear(&self) -> bool {
        self.monomials.iter().all(|m| {
            let mut seen = alloc::vec![false; self.num_vars];
            m.iter().all(|&v| !core::mem::replace(&mut seen[v], true))
        })
    }

    fn cost(&self) -> u128 {
        self.monomials.iter().map(|m| m.len() as u128 + 1).sum::<u128>().max(1)
    }

    fn eval(&self, ctx: &FieldCtx, values: &[u32], _: &mut Scratch) -> u32 {
        eval_monomials(ctx, &self.monomials, values)
    }
}

/// Counts assignments where a polynomial does not vanish.
///
/// With elimination enabled (multilinear polynomials only) the trailing
/// active variables are not enumerated. With one variable held back the
/// polynomial is `a*x + b`; with two free variables held back it is
/// `a*x*y + b*x + c*y + d`. In both cases a handful of evaluations give
/// the coefficients and the number of nonvanishing completions follows in
/// closed form.
pub struct NonvanishingJob<'a, P> {
    ctx: &'a FieldCtx,
    poly: P,
    space: AssignmentSpace,
    depth: usize,
}

impl<'a, P: PolyEval> NonvanishingJob<'a, P> {
    pub fn new(ctx: &'a FieldCtx, poly: P, space: AssignmentSpace, eliminate: bool) -> Self {
        assert_eq!(poly.num_vars(), space.num_vars());
        let active = space.active();
        let depth = if !eliminate || !poly.multilinear() || active.is_empty() {
            0
        } else if active.len() >= 2
            && active[active.len() - 2..]
                .iter()
                .all(|&v| space.domains()[v] == Domain::Free)
        {
            2
        } else {
            1
        };
        NonvanishingJob {
            ctx,
            poly,
            space,
            depth,
        }
    }

    /// Number of trailing variables solved in closed form.
    pub fn eliminated(&self) -> usize {
        self.depth
    }

    pub fn estimate(&self) -> u128 {
        let q = self.ctx.q() as u128;
        let evals = match self.depth {
            0 => self.space.size(),
            1 => (self.space.size() / q).saturating_mul(2),
            _ => (self.space.size() / (q * q)).saturating_mul(4),
        };
        evals.saturating_mul(self.poly.cost())
    }
}

/// Completions of `a*x + b` that do not vanish, `x` free or nonzero.
fn linear_good(q: u128, a: u32, b: u32, nonzero_only: bool) -> u128 {
    match (a != 0, b != 0, nonzero_only) {
        // a x + b vanishes at exactly one x, namely -b/a
        (true, _, false) => q - 1,
        (true, b_nonzero, true) => q - 1 - b_nonzero as u128,
        (false, true, false) => q,
        (false, true, true) => q - 1,
        (false, false, _) => 0,
    }
}

/// Completions of `a*x*y + b*x + c*y + d` over free `x, y` that do not vanish.
fn bilinear_good(ctx: &FieldCtx, a: u32, b: u32, c: u32, d: u32) -> u128 {
    let q = ctx.q() as u128;
    let zeros = if a != 0 {
        // a (x + c/a)(y + b/a) + d - bc/a
        let k = ctx.sub_code(d, ctx.mul_code(ctx.mul_code(b, c), ctx.inv_code(a)));
        if k == 0 {
            2 * q - 1
        } else {
            q - 1
        }
    } else if b != 0 || c != 0 {
        q
    } else if d == 0 {
        q * q
    } else {
        0
    };
    q * q - zeros
}

impl<P: PolyEval> ShardedCount for NonvanishingJob<'_, P> {
    type Tally = Count;

    fn space(&self) -> &AssignmentSpace {
        &self.space
    }

    fn max_prefix(&self) -> usize {
        self.space.active().len() - self.depth
    }

    fn count_prefix(&self, prefix: &[u32]) -> Count {
        let ctx = self.ctx;
        let mut scratch = Scratch::default();
        let mut total: u128 = 0;
        let active = self.space.active();
        match self.depth {
            0 => self.space.visit(prefix, 0, |vals| {
                if self.poly.eval(ctx, vals, &mut scratch) != 0 {
                    total += 1;
                }
            }),
            1 => {
                let last = active[active.len() - 1];
                let q = ctx.q() as u128;
                let nonzero_only = self.space.domains()[last] == Domain::Nonzero;
                self.space.visit(prefix, 1, |vals| {
                    vals[last] = 0;
                    let b = self.poly.eval(ctx, vals, &mut scratch);
                    vals[last] = 1;
                    let ab = self.poly.eval(ctx, vals, &mut scratch);
                    total += linear_good(q, ctx.sub_code(ab, b), b, nonzero_only);
                });
            }
            _ => {
                let (x, y) = (active[active.len() - 2], active[active.len() - 1]);
                self.space.visit(prefix, 2, |vals| {
                    let mut at = |vx: u32, vy: u32| {
                        vals[x] = vx;
                        vals[y] = vy;
                        self.poly.eval(ctx, vals, &mut scratch)
                    };
                    let f00 = at(0, 0);
                    let f10 = at(1, 0);
                    let f01 = at(0, 1);
                    let f11 = at(1, 1);
                    vals[x] = 0;
                    vals[y] = 0;
                    let b = ctx.sub_code(f10, f00);
                    let c = ctx.sub_code(f01, f00);
                    let a = ctx.sub_code(ctx.sub_code(f11, f10), c);
                    total += bilinear_good(ctx, a, b, c, f00);
                });
            }
        }
        Count(total)
    }
}

/// Histogram of ranks of a matrix template over the assignment space.
pub struct RankJob<'a> {
    ctx: &'a FieldCtx,
    template: MatrixTemplate,
    space: AssignmentSpace,
}

impl<'a> RankJob<'a> {
    pub fn new(ctx: &'a FieldCtx, template: MatrixTemplate, space: AssignmentSpace) -> Self {
        assert_eq!(template.num_vars(), space.num_vars());
        RankJob {
            ctx,
            template,
            space,
        }
    }

    pub fn estimate(&self) -> u128 {
        let n = self.template.size().max(1) as u128;
        self.space.size().saturating_mul(n * n * n)
    }
}

impl ShardedCount for RankJob<'_> {
    type Tally = Histogram;

    fn space(&self) -> &AssignmentSpace {
        &self.space
    }

    fn count_prefix(&self, prefix: &[u32]) -> Histogram {
        let n = self.template.size();
        let mut hist = Histogram::zeros(n + 1);
        let mut dense = Vec::new();
        let mut bits = Vec::new();
        let gf2 = self.ctx.q() == 2 && n <= 64;
        self.space.visit(prefix, 0, |vals| {
            let r = if gf2 {
                self.template.fill_gf2(vals, &mut bits);
                linalg::gf2_rank(&mut bits)
            } else {
                self.template.fill(self.ctx, vals, &mut dense);
                linalg::det_rank(self.ctx, &mut dense, n).1
            };
            hist.bump(r);
        });
        hist
    }
}

/// Size of the space `q^vars`, saturating; handy for budget estimates.
pub fn space_size(q: u32, vars: usize) -> u128 {
    saturating_pow(q as u128, vars)
}
