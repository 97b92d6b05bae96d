//! Odometer over variable assignments.
//!
//! Variables are visited in index order with the last active variable
//! turning fastest. A shard is identified by the values of a prefix of the
//! active variables, so shards are disjoint, cover the space, and can be
//! evaluated in any order.

use alloc::vec;
use alloc::vec::Vec;

/// Values a single variable ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Every field element.
    Free,
    /// Pinned to zero.
    Zero,
    /// Every nonzero element.
    Nonzero,
}

impl Domain {
    fn start(self) -> u32 {
        match self {
            Domain::Nonzero => 1,
            _ => 0,
        }
    }

    pub fn size(self, q: u32) -> u32 {
        match self {
            Domain::Free => q,
            Domain::Zero => 1,
            Domain::Nonzero => q - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentSpace {
    q: u32,
    domains: Vec<Domain>,
    active: Vec<usize>,
}

impl AssignmentSpace {
    pub fn new(q: u32, domains: Vec<Domain>) -> Self {
        let active = domains
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != Domain::Zero)
            .map(|(i, _)| i)
            .collect();
        AssignmentSpace { q, domains, active }
    }

    pub fn free(q: u32, num_vars: usize) -> Self {
        AssignmentSpace::new(q, vec![Domain::Free; num_vars])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    /// Indices of the variables that are not pinned to zero.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// Number of assignments, saturating.
    pub fn size(&self) -> u128 {
        self.domains
            .iter()
            .fold(1u128, |acc, d| acc.saturating_mul(d.size(self.q) as u128))
    }

    /// All value prefixes for the first `len` active variables, in odometer order.
    pub fn prefixes(&self, len: usize) -> Vec<Vec<u32>> {
        let len = len.min(self.active.len());
        let mut out = Vec::new();
        let mut cur: Vec<u32> = self.active[..len]
            .iter()
            .map(|&v| self.domains[v].start())
            .collect();
        let vars = &self.active[..len];
        loop {
            out.push(cur.clone());
            let mut carried = true;
            for pos in (0..len).rev() {
                let next = cur[pos] + 1;
                if next < self.q {
                    cur[pos] = next;
                    carried = false;
                    break;
                }
                cur[pos] = self.domains[vars[pos]].start();
            }
            if carried {
                return out;
            }
        }
    }

    /// Calls `f` with every full assignment whose leading active variables
    /// equal `prefix`. The last `hold` active variables are left at their
    /// starting value for the caller to set.
    pub fn visit(&self, prefix: &[u32], hold: usize, mut f: impl FnMut(&mut [u32])) {
        assert!(prefix.len() + hold <= self.active.len());
        let mut values: Vec<u32> = self.domains.iter().map(|d| d.start()).collect();
        for (&v, &x) in self.active.iter().zip(prefix) {
            values[v] = x;
        }
        let moving = &self.active[prefix.len()..self.active.len() - hold];
        loop {
            f(&mut values);
            for &v in &self.active[self.active.len() - hold..] {
                values[v] = self.domains[v].start();
            }
            let mut carried = true;
            for &v in moving.iter().rev() {
                let next = values[v] + 1;
                if next < self.q {
                    values[v] = next;
                    carried = false;
                    break;
                }
                values[v] = self.domains[v].start();
            }
            if carried {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_every_assignment_once() {
        let space = AssignmentSpace::new(3, vec![Domain::Free, Domain::Zero, Domain::Nonzero]);
        assert_eq!(space.size(), 6);
        let mut seen = Vec::new();
        space.visit(&[], 0, |v| seen.push(v.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 0, 1],
                vec![0, 0, 2],
                vec![1, 0, 1],
                vec![1, 0, 2],
                vec![2, 0, 1],
                vec![2, 0, 2]
            ]
        );
    }

    #[test]
    fn prefixes_partition_the_space() {
        let space = AssignmentSpace::new(2, vec![Domain::Free, Domain::Nonzero, Domain::Free]);
        let mut all = Vec::new();
        for prefix in space.prefixes(2) {
            space.visit(&prefix, 0, |v| all.push(v.to_vec()));
        }
        let mut direct = Vec::new();
        space.visit(&[], 0, |v| direct.push(v.to_vec()));
        assert_eq!(all, direct);
        assert_eq!(space.prefixes(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn held_variables_stay_at_start() {
        let space = AssignmentSpace::free(2, 3);
        let mut n = 0;
        space.visit(&[1], 1, |v| {
            assert_eq!(v[0], 1);
            assert_eq!(v[2], 0);
            n += 1;
        });
        assert_eq!(n, 2);
    }
}
