//! Square matrices whose cells are signed sums of variables.
//!
//! Reduced Laplacians, generic symmetric matrices and support-constrained
//! matrices all reduce to this shape, so the counting kernels only need to
//! know how to fill one and take its determinant or rank.

use alloc::vec::Vec;

use crate::gf::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Entry {
    cell: u32,
    var: u32,
    negate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTemplate {
    size: usize,
    num_vars: usize,
    entries: Vec<Entry>,
    multilinear: bool,
}

impl MatrixTemplate {
    /// `multilinear` asserts that the determinant has degree at most one in
    /// every variable, which enables last-variable elimination when counting.
    pub fn new(size: usize, num_vars: usize, multilinear: bool) -> Self {
        MatrixTemplate {
            size,
            num_vars,
            entries: Vec::new(),
            multilinear,
        }
    }

    pub fn push(&mut self, row: usize, col: usize, var: usize, negate: bool) {
        assert!(row < self.size && col < self.size && var < self.num_vars);
        self.entries.push(Entry {
            cell: (row * self.size + col) as u32,
            var: var as u32,
            negate,
        });
    }

    /// All symmetric `n x n` matrices; one variable per cell of the upper
    /// triangle (diagonal included), numbered row by row.
    pub fn symmetric_generic(n: usize) -> Self {
        let mut t = MatrixTemplate::new(n, n * (n + 1) / 2, false);
        let mut var = 0;
        for i in 0..n {
            for j in i..n {
                t.push(i, j, var, false);
                if i != j {
                    t.push(j, i, var, false);
                }
                var += 1;
            }
        }
        t
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_multilinear(&self) -> bool {
        self.multilinear
    }

    /// Signed variables in cell `(row, col)`.
    pub fn cell_terms(&self, row: usize, col: usize) -> impl Iterator<Item = (usize, bool)> + '_ {
        let cell = (row * self.size + col) as u32;
        self.entries
            .iter()
            .filter(move |e| e.cell == cell)
            .map(|e| (e.var as usize, e.negate))
    }

    /// Writes the evaluated matrix, row-major, into `out`.
    pub fn fill(&self, ctx: &FieldCtx, values: &[u32], out: &mut Vec<u32>) {
        out.clear();
        out.resize(self.size * self.size, 0);
        for e in &self.entries {
            let mut v = values[e.var as usize];
            if v == 0 {
                continue;
            }
            if e.negate {
                v = ctx.neg_code(v);
            }
            let c = e.cell as usize;
            out[c] = ctx.add_code(out[c], v);
        }
    }

    /// Over `GF(2)`: rows as bitmasks. Requires `size <= 64`.
    pub fn fill_gf2(&self, values: &[u32], rows: &mut Vec<u64>) {
        rows.clear();
        rows.resize(self.size, 0);
        for e in &self.entries {
            if values[e.var as usize] & 1 == 1 {
                let c = e.cell as usize;
                rows[c / self.size] ^= 1 << (c % self.size);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn symmetric_generic_layout() {
        let t = MatrixTemplate::symmetric_generic(2);
        assert_eq!(t.num_vars(), 3);
        let f5 = FieldCtx::new(5, 1).unwrap();
        let mut out = Vec::new();
        t.fill(&f5, &[1, 2, 3], &mut out);
        assert_eq!(out, vec![1, 2, 2, 3]);
    }

    #[test]
    fn signed_sums() {
        let mut t = MatrixTemplate::new(1, 2, true);
        t.push(0, 0, 0, false);
        t.push(0, 0, 1, true);
        let f7 = FieldCtx::new(7, 1).unwrap();
        let mut out = Vec::new();
        t.fill(&f7, &[5, 2], &mut out);
        assert_eq!(out, vec![3]);
        t.fill(&f7, &[2, 5], &mut out);
        assert_eq!(out, vec![4]);
    }
}
