//! Dense Gaussian elimination over `GF(q)` on row-major code buffers.

use crate::gf::FieldCtx;

/// Determinant and rank of the `n x n` matrix in `m`. Destroys `m`.
pub fn det_rank(ctx: &FieldCtx, m: &mut [u32], n: usize) -> (u32, usize) {
    debug_assert_eq!(m.len(), n * n);
    let mut det = 1u32;
    let mut rank = 0usize;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| m[r * n + col] != 0) else {
            det = 0;
            continue;
        };
        if piv != rank {
            for c in 0..n {
                m.swap(piv * n + c, rank * n + c);
            }
            det = ctx.neg_code(det);
        }
        let pv = m[rank * n + col];
        det = ctx.mul_code(det, pv);
        let inv = ctx.inv_code(pv);
        for r in rank + 1..n {
            let lead = m[r * n + col];
            if lead == 0 {
                continue;
            }
            let f = ctx.neg_code(ctx.mul_code(lead, inv));
            for c in col..n {
                let x = m[rank * n + c];
                if x != 0 {
                    m[r * n + c] = ctx.add_code(m[r * n + c], ctx.mul_code(f, x));
                }
            }
        }
        rank += 1;
    }
    if rank < n {
        det = 0;
    }
    (det, rank)
}

/// Rank of a `rows x cols` matrix. Destroys `m`.
pub fn rank(ctx: &FieldCtx, m: &mut [u32], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            m.swap(piv * cols + c, rank * cols + c);
        }
        let inv = ctx.inv_code(m[rank * cols + col]);
        for r in rank + 1..rows {
            let lead = m[r * cols + col];
            if lead == 0 {
                continue;
            }
            let f = ctx.neg_code(ctx.mul_code(lead, inv));
            for c in col..cols {
                let x = m[rank * cols + c];
                if x != 0 {
                    m[r * cols + c] = ctx.add_code(m[r * cols + c], ctx.mul_code(f, x));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `GF(2)` of rows packed as bitmasks. Destroys `rows`.
pub fn gf2_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_determinants() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        // [[1,2],[3,4]] has det -2 = 3 mod 5
        let mut m = vec![1, 2, 3, 4];
        assert_eq!(det_rank(&f5, &mut m, 2), (3, 2));
        let mut s = vec![1, 2, 2, 4];
        assert_eq!(det_rank(&f5, &mut s, 2), (0, 1));
        // row swap flips the sign: [[0,1],[1,0]] has det -1
        let mut p = vec![0, 1, 1, 0];
        assert_eq!(det_rank(&f5, &mut p, 2), (4, 2));
        let mut empty: [u32; 0] = [];
        assert_eq!(det_rank(&f5, &mut empty, 0), (1, 0));
    }

    #[test]
    fn rectangular_rank() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let mut m = vec![1, 2, 0, 2, 1, 0];
        assert_eq!(rank(&f3, &mut m, 2, 3), 1);
    }

    #[test]
    fn gf2_bit_rank_matches_generic() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        for bits in 0u32..512 {
            let mut dense: alloc::vec::Vec<u32> = (0..9).map(|i| (bits >> i) & 1).collect();
            let mut packed: alloc::vec::Vec<u64> = (0..3)
                .map(|r| (0..3).map(|c| ((bits >> (3 * r + c)) & 1) as u64) .enumerate().fold(0, |a, (c, b)| a | (b << c)))
                .collect();
            assert_eq!(gf2_rank(&mut packed), det_rank(&f2, &mut dense, 3).1);
        }
    }
}
