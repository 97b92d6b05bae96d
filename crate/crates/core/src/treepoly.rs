//! Spanning-tree polynomials: the generic reduced Laplacian and direct
//! evaluation over an enumerated list of spanning trees.
//!
//! `Q_G(x)` is the sum over spanning trees `T` of the product of `x_e` for
//! `e` in `T`; `P_G(x)` uses the edges outside `T` instead. The determinant
//! of the reduced Laplacian equals `Q_G`, which the tests check against the
//! tree enumeration.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::graph::{Graph, UnionFind};
use crate::linalg;
use crate::template::MatrixTemplate;

/// Which tree polynomial to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreePoly {
    /// Sum of tree monomials.
    Q,
    /// Sum of tree-complement monomials.
    P,
}

/// Reduced Laplacian with one signed edge-variable list per cell.
///
/// Rows and columns are the non-root vertices in increasing order. The
/// diagonal cell of `v` holds `+x_e` for every non-loop edge at `v`; the
/// off-diagonal cell `(u, v)` holds `-x_e` for every edge joining them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericLaplacian {
    root: usize,
    vertices: Vec<usize>,
    num_edges: usize,
    /// Row-major, edge indices 0-based, `true` for a negated term.
    cells: Vec<Vec<(usize, bool)>>,
}

impl GenericLaplacian {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Graph vertex for each row.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Terms of cell `(i, j)`, 0-based row and column.
    pub fn cell(&self, i: usize, j: usize) -> &[(usize, bool)] {
        &self.cells[i * self.size() + j]
    }

    pub fn to_template(&self) -> MatrixTemplate {
        let n = self.size();
        // det L_0 = Q_G is multilinear in the edge variables
        let mut t = MatrixTemplate::new(n, self.num_edges, true);
        for i in 0..n {
            for j in 0..n {
                for &(e, neg) in self.cell(i, j) {
                    t.push(i, j, e, neg);
                }
            }
        }
        t
    }
}

/// Builds `L_0` with the given root removed. Loops do not enter the
/// Laplacian and are skipped.
pub fn reduced_laplacian(g: &Graph, root: usize) -> Result<GenericLaplacian> {
    if root == 0 || root > g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    let vertices: Vec<usize> = (1..=g.n()).filter(|&v| v != root).collect();
    let size = vertices.len();
    let row = |v: usize| if v == root { None } else if v < root { Some(v - 1) } else { Some(v - 2) };
    let mut cells = vec![Vec::new(); size * size];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            continue;
        }
        let (ru, rv) = (row(u), row(v));
        for r in [ru, rv].into_iter().flatten() {
            cells[r * size + r].push((e, false));
        }
        if let (Some(a), Some(b)) = (ru, rv) {
            cells[a * size + b].push((e, true));
            cells[b * size + a].push((e, true));
        }
    }
    Ok(GenericLaplacian {
        root,
        vertices,
        num_edges: g.num_edges(),
        cells,
    })
}

/// Total assignment of field values to edge variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<FieldElem>,
}

impl Assignment {
    pub fn new(values: Vec<FieldElem>) -> Self {
        Assignment { values }
    }

    pub fn from_codes(ctx: &FieldCtx, codes: &[u64]) -> Result<Self> {
        codes
            .iter()
            .map(|&c| ctx.elem(c))
            .collect::<Result<Vec<_>>>()
            .map(Assignment::new)
    }

    pub fn constant(value: FieldElem, len: usize) -> Self {
        Assignment::new(vec![value; len])
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }

    pub fn codes(&self) -> Vec<u32> {
        self.values.iter().map(|v| v.code()).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Determinant and rank of `L_0` at the assignment. The empty matrix has
/// determinant 1 and rank 0.
pub fn eval_det_rank(l0: &GenericLaplacian, a: &Assignment, ctx: &FieldCtx) -> (FieldElem, usize) {
    assert_eq!(a.len(), l0.num_edges, "assignment must cover every edge");
    let t = l0.to_template();
    let mut m = Vec::new();
    t.fill(ctx, &a.codes(), &mut m);
    let (det, rank) = linalg::det_rank(ctx, &mut m, t.size());
    (FieldElem::from_code_unchecked(det), rank)
}

/// All spanning trees as sorted lists of 1-based edge indices, in
/// lexicographic order. Empty for disconnected graphs; the single-vertex
/// graph has one empty tree.
pub fn enumerate_trees(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let uf = UnionFind::new(g.n() + 1);
    grow(g, 0, &mut chosen, uf, &mut out);
    out
}

fn grow(g: &Graph, i: usize, chosen: &mut Vec<usize>, uf: UnionFind, out: &mut Vec<Vec<usize>>) {
    let need = g.n() - 1;
    if chosen.len() == need {
        out.push(chosen.clone());
        return;
    }
    if chosen.len() + (g.num_edges() - i) < need {
        return;
    }
    let (u, v) = g.edges()[i];
    let mut with = uf.clone();
    if u != v && with.union(u, v) {
        chosen.push(i + 1);
        grow(g, i + 1, chosen, with, out);
        chosen.pop();
    }
    grow(g, i + 1, chosen, uf, out);
}

/// Monomials of `Q_G` or `P_G` as 0-based variable lists.
pub fn tree_monomials(g: &Graph, kind: TreePoly) -> Vec<Vec<usize>> {
    let trees = enumerate_trees(g);
    match kind {
        TreePoly::Q => trees
            .into_iter()
            .map(|t| t.into_iter().map(|e| e - 1).collect())
            .collect(),
        TreePoly::P => trees
            .into_iter()
            .map(|t| {
                let mut in_tree = vec![false; g.num_edges()];
                for e in t {
                    in_tree[e - 1] = true;
                }
                (0..g.num_edges()).filter(|&e| !in_tree[e]).collect()
            })
            .collect(),
    }
}

/// Evaluates a sum of monomials at variable codes.
pub fn eval_monomials(ctx: &FieldCtx, monomials: &[Vec<usize>], values: &[u32]) -> u32 {
    let mut sum = 0;
    'outer: for mono in monomials {
        let mut prod = 1;
        for &v in mono {
            let x = values[v];
            if x == 0 {
                continue 'outer;
            }
            prod = ctx.mul_code(prod, x);
        }
        sum = ctx.add_code(sum, prod);
    }
    sum
}

/// `Q_G(a)` or `P_G(a)` by direct monomial evaluation.
pub fn eval_tree_poly(g: &Graph, a: &Assignment, kind: TreePoly, ctx: &FieldCtx) -> FieldElem {
    assert_eq!(a.len(), g.num_edges(), "assignment must cover every edge");
    let monos = tree_monomials(g, kind);
    FieldElem::from_code_unchecked(eval_monomials(ctx, &monos, &a.codes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn cycle(n: usize) -> Graph {
        Graph::family(Family::Cycle(n)).unwrap()
    }

    #[test]
    fn c4_laplacian_cells() {
        let l0 = reduced_laplacian(&cycle(4), 4).unwrap();
        assert_eq!(l0.size(), 3);
        // edges: 0=(1,2) 1=(2,3) 2=(3,4) 3=(4,1)
        assert_eq!(l0.cell(0, 0), &[(0, false), (3, false)]);
        assert_eq!(l0.cell(1, 1), &[(0, false), (1, false)]);
        assert_eq!(l0.cell(2, 2), &[(1, false), (2, false)]);
        assert_eq!(l0.cell(0, 1), &[(0, true)]);
        assert_eq!(l0.cell(1, 2), &[(1, true)]);
        assert!(l0.cell(0, 2).is_empty());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l0.cell(i, j), l0.cell(j, i));
            }
        }
    }

    #[test]
    fn tiny_laplacians() {
        let k2 = Graph::new(2, vec![(1, 2)]).unwrap();
        let l0 = reduced_laplacian(&k2, 2).unwrap();
        assert_eq!(l0.cell(0, 0), &[(0, false)]);
        let f5 = FieldCtx::new(5, 1).unwrap();
        let zero = Assignment::constant(FieldElem::ZERO, 1);
        assert_eq!(eval_det_rank(&l0, &zero, &f5), (FieldElem::ZERO, 0));
        let pt = Graph::new(1, vec![]).unwrap();
        let l0 = reduced_laplacian(&pt, 1).unwrap();
        assert_eq!(l0.size(), 0);
        assert_eq!(eval_det_rank(&l0, &Assignment::new(vec![]), &f5), (FieldElem::ONE, 0));
    }

    #[test]
    fn c4_determinant_counts_trees_mod_p() {
        let g = cycle(4);
        let l0 = reduced_laplacian(&g, 4).unwrap();
        let f2 = FieldCtx::new(2, 1).unwrap();
        let f3 = FieldCtx::new(3, 1).unwrap();
        let ones = Assignment::constant(FieldElem::ONE, 4);
        assert_eq!(eval_det_rank(&l0, &ones, &f2).0, FieldElem::ZERO);
        assert_eq!(eval_det_rank(&l0, &ones, &f3).0, FieldElem::ONE);
    }

    #[test]
    fn tree_enumeration() {
        let trees = enumerate_trees(&cycle(4));
        assert_eq!(trees, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]);
        assert_eq!(enumerate_trees(&Graph::family(Family::Complete(4)).unwrap()).len(), 16);
        assert!(enumerate_trees(&Graph::new(3, vec![(1, 2)]).unwrap()).is_empty());
        assert_eq!(enumerate_trees(&Graph::new(1, vec![(1, 1)]).unwrap()), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn c4_tree_polynomials() {
        let g = cycle(4);
        let f7 = FieldCtx::new(7, 1).unwrap();
        let a = Assignment::from_codes(&f7, &[1, 2, 3, 5]).unwrap();
        // P = x1 + x2 + x3 + x4 = 11 = 4 mod 7
        assert_eq!(eval_tree_poly(&g, &a, TreePoly::P, &f7).code(), 4);
        let f2 = FieldCtx::new(2, 1).unwrap();
        let b = Assignment::from_codes(&f2, &[1, 1, 1, 0]).unwrap();
        assert_eq!(eval_tree_poly(&g, &b, TreePoly::Q, &f2), FieldElem::ONE);
    }
}
