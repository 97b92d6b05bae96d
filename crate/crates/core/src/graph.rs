//! Finite multigraphs with 1-indexed vertices and stable edge indices.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A multigraph on vertices `1..=n`. Loops and parallel edges are allowed;
/// edge `i` (1-based) is `edges()[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `C_n`; `C_2` is a doubled edge.
    Cycle(usize),
    /// `K_n`.
    Complete(usize),
    /// `K_n` without the edges among vertices `1..=k`.
    CompleteMinusClique { n: usize, k: usize },
    /// `K_n` without the edges from vertex 1 to vertices `2..=s+1`.
    CompleteMinusStar { n: usize, s: usize },
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        for &(u, v) in &edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn family(family: Family) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match family {
            Family::Cycle(n) => {
                if n < 2 {
                    return bad(format!("cycle needs n >= 2, got {n}"));
                }
                let edges = (1..=n).map(|i| (i, i % n + 1)).collect();
                Graph::new(n, edges)
            }
            Family::Complete(n) => Graph::new(n, complete_edges(n, |_, _| true)),
            Family::CompleteMinusClique { n, k } => {
                if k == 0 || k >= n {
                    return bad(format!("complete-minus-clique needs n > k >= 1, got n={n} k={k}"));
                }
                Graph::new(n, complete_edges(n, |i, j| !(i <= k && j <= k)))
            }
            Family::CompleteMinusStar { n, s } => {
                if n <= s + 1 {
                    return bad(format!("complete-minus-star needs n > s + 1, got n={n} s={s}"));
                }
                Graph::new(n, complete_edges(n, |i, j| !(i == 1 && (2..=s + 1).contains(&j))))
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = vec![false; self.n * self.n];
        for &(u, v) in &self.edges {
            if u == v {
                return false;
            }
            let (a, b) = (u.min(v) - 1, u.max(v) - 1);
            if core::mem::replace(&mut seen[a * self.n + b], true) {
                return false;
            }
        }
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    /// Returns the graph with loops removed and the number removed.
    pub fn without_loops(&self) -> (Graph, usize) {
        let edges: Vec<_> = self.edges.iter().copied().filter(|(u, v)| u != v).collect();
        let removed = self.edges.len() - edges.len();
        (Graph { n: self.n, edges }, removed)
    }

    /// Appends an edge (a loop when `u == v`).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Graph::new(self.n, edges)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n + 1);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index_of = vec![usize::MAX; self.n + 1];
        for v in 1..=self.n {
            let r = uf.find(v);
            if index_of[r] == usize::MAX {
                index_of[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[index_of[r]].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced on `vertices`, relabelled `1..` in increasing order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut label = vec![0usize; self.n + 1];
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            label[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| label[u] != 0 && label[v] != 0)
            .map(|&(u, v)| (label[u], label[v]))
            .collect();
        Graph::new(sorted.len(), edges)
    }

    /// Deletes and contracts the given 1-based edge indices. A contracted
    /// class is labelled by its smallest vertex and labels are then
    /// compacted in order. Loops created by contraction are kept.
    pub fn minor(&self, delete: &[usize], contract: &[usize]) -> Result<Graph> {
        let m = self.edges.len();
        let mut role = vec![0u8; m];
        for (set, tag) in [(delete, 1u8), (contract, 2u8)] {
            for &i in set {
                if i == 0 || i > m {
                    return Err(Error::EdgeOutOfRange { index: i, m });
                }
                if role[i - 1] != 0 && role[i - 1] != tag {
                    return Err(Error::InvalidParameter(format!(
                        "edge {i} is both deleted and contracted"
                    )));
                }
                role[i - 1] = tag;
            }
        }
        let mut uf = UnionFind::new(self.n + 1);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if role[i] == 2 {
                uf.union(u, v);
            }
        }
        // representative = smallest member; members are visited in order
        let mut rep = vec![0usize; self.n + 1];
        let mut label = vec![0usize; self.n + 1];
        let mut next = 0;
        for v in 1..=self.n {
            let r = uf.find(v);
            if rep[r] == 0 {
                rep[r] = v;
                next += 1;
                label[v] = next;
            }
        }
        let relabel = |v: usize| label[rep[uf.find_const(v)]];
        let edges = self
            .edges
            .iter()
            .zip(&role)
            .filter(|(_, &r)| r == 0)
            .map(|(&(u, v), _)| (relabel(u), relabel(v)))
            .collect();
        Graph::new(next, edges)
    }

    pub fn is_apex(&self, v: usize) -> Result<bool> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let deg = self.edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        Ok(deg == self.n - 1)
    }

    /// Number of spanning trees: the integer determinant of the reduced
    /// Laplacian at all-ones (fraction-free elimination).
    pub fn spanning_tree_count(&self) -> BigUint {
        let k = self.n - 1;
        let mut m = vec![BigInt::zero(); k * k];
        for &(u, v) in &self.edges {
            if u == v {
                continue;
            }
            for w in [u, v] {
                if w < self.n {
                    m[(w - 1) * k + (w - 1)] += 1;
                }
            }
            if u < self.n && v < self.n {
                m[(u - 1) * k + (v - 1)] -= 1;
                m[(v - 1) * k + (u - 1)] -= 1;
            }
        }
        let det = bareiss_det(&mut m, k);
        debug_assert!(!det.is_negative());
        det.magnitude().clone()
    }
}

fn complete_edges(n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if keep(i, j) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn bareiss_det(m: &mut [BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(k * n + c, r * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j]) / &prev;
                m[i * n + j] = v;
            }
        }
        prev = m[k * n + k].clone();
    }
    sign * &m[(n - 1) * n + (n - 1)]
}

#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteMinusClique { n, k } => write!(f, "complete-minus-clique:{n},{k}"),
            Family::CompleteMinusStar { n, s } => write!(f, "complete-minus-star:{n},{s}"),
        }
    }
}

/// `cycle:N`, `complete:N`, `complete-minus-clique:N,K`, `complete-minus-star:N,S`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad family {s:?}"));
        let (name, params) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums = params
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match (name, nums.as_slice()) {
            ("cycle", &[n]) => Ok(Family::Cycle(n)),
            ("complete", &[n]) => Ok(Family::Complete(n)),
            ("complete-minus-clique", &[n, k]) => Ok(Family::CompleteMinusClique { n, k }),
            ("complete-minus-star", &[n, s]) => Ok(Family::CompleteMinusStar { n, s }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(f: Family) -> Graph {
        Graph::family(f).unwrap()
    }

    #[test]
    fn families() {
        let c4 = fam(Family::Cycle(4));
        assert_eq!(c4.edges(), &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        let star = fam(Family::CompleteMinusClique { n: 4, k: 3 });
        assert_eq!(star.edges(), &[(1, 4), (2, 4), (3, 4)]);
        let k4e = fam(Family::CompleteMinusStar { n: 4, s: 1 });
        assert_eq!(k4e.num_edges(), 5);
        assert!(!k4e.has_edge(1, 2));
        assert!(Graph::family(Family::CompleteMinusClique { n: 3, k: 3 }).is_err());
        assert!(Graph::family(Family::CompleteMinusStar { n: 3, s: 2 }).is_err());
        assert!(Graph::family(Family::Cycle(1)).is_err());
    }

    #[test]
    fn family_strings_round_trip() {
        for f in [
            Family::Cycle(5),
            Family::Complete(3),
            Family::CompleteMinusClique { n: 6, k: 3 },
            Family::CompleteMinusStar { n: 5, s: 2 },
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("wheel:5".parse::<Family>().is_err());
        assert!("cycle:x".parse::<Family>().is_err());
    }

    #[test]
    fn construction_checks_range() {
        assert_eq!(
            Graph::new(3, vec![(1, 4)]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
    }

    #[test]
    fn minors() {
        let c4 = fam(Family::Cycle(4));
        assert_eq!(c4.minor(&[], &[]).unwrap(), c4);
        let c3 = c4.minor(&[], &[1]).unwrap();
        assert_eq!(c3.n(), 3);
        assert_eq!(c3.edges(), &[(1, 2), (2, 3), (3, 1)]);
        let split = c4.minor(&[1, 3], &[]).unwrap();
        assert_eq!(split.components(), vec![vec![1, 4], vec![2, 3]]);
        // Contracting two triangle edges leaves one vertex with a loop.
        let tri = fam(Family::Cycle(3));
        let pt = tri.minor(&[], &[1, 2]).unwrap();
        assert_eq!((pt.n(), pt.edges()), (1, &[(1, 1)][..]));
        assert!(c4.minor(&[1], &[1]).is_err());
        assert!(c4.minor(&[5], &[]).is_err());
    }

    #[test]
    fn apex() {
        let k4 = fam(Family::Complete(4));
        assert!((1..=4).all(|v| k4.is_apex(v).unwrap()));
        let c4 = fam(Family::Cycle(4));
        assert!(!(1..=4).any(|v| c4.is_apex(v).unwrap()));
        let g = fam(Family::CompleteMinusClique { n: 5, k: 3 });
        assert!(g.is_apex(5).unwrap() && g.is_apex(4).unwrap() && !g.is_apex(1).unwrap());
        assert_eq!(fam(Family::Cycle(2)).is_apex(1), Err(Error::NotSimple));
    }

    #[test]
    fn spanning_trees() {
        for n in 2..8 {
            assert_eq!(fam(Family::Cycle(n)).spanning_tree_count(), BigUint::from(n));
        }
        assert_eq!(fam(Family::Complete(4)).spanning_tree_count(), BigUint::from(16u32));
        assert_eq!(fam(Family::Complete(6)).spanning_tree_count(), BigUint::from(1296u32));
        assert!(Graph::new(2, vec![]).unwrap().spanning_tree_count().is_zero());
        assert!(Graph::new(1, vec![]).unwrap().spanning_tree_count().is_one());
    }

    #[test]
    fn deletion_contraction_on_tree_counts() {
        let g = fam(Family::CompleteMinusStar { n: 5, s: 2 });
        for e in 1..=g.num_edges() {
            let del = g.minor(&[e], &[]).unwrap().spanning_tree_count();
            let con = g.minor(&[], &[e]).unwrap().spanning_tree_count();
            assert_eq!(del + con, g.spanning_tree_count());
        }
    }
}
