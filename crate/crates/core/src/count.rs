//! Sharded exhaustive counting.
//!
//! A [`ShardedCount`] job knows how to count the assignments that share a
//! given prefix of active-variable values. Summing over all prefixes of any
//! fixed length gives the same total, which is what lets the std companion
//! crate fan shards out over threads while this crate stays single-threaded.

use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::odometer::AssignmentSpace;

/// A partial result that can be combined with results from other shards.
pub trait Tally: Default + Send {
    fn merge(&mut self, other: Self);
}

/// Number of qualifying assignments.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Count(pub u128);

impl Tally for Count {
    fn merge(&mut self, other: Self) {
        self.0 = self.0.checked_add(other.0).expect("count overflowed u128");
    }
}

/// Number of assignments per rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram(pub Vec<u128>);

impl Histogram {
    pub fn zeros(len: usize) -> Self {
        Histogram(vec![0; len])
    }

    pub fn bump(&mut self, bin: usize) {
        self.0[bin] += 1;
    }
}

impl Tally for Histogram {
    fn merge(&mut self, other: Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a = a.checked_add(b).expect("histogram overflowed u128");
        }
    }
}

pub trait ShardedCount: Sync {
    type Tally: Tally;

    fn space(&self) -> &AssignmentSpace;

    /// Longest prefix the job accepts; kernels that eliminate trailing
    /// variables reserve them.
    fn max_prefix(&self) -> usize {
        self.space().active().len()
    }

    fn count_prefix(&self, prefix: &[u32]) -> Self::Tally;
}

/// Strategy for evaluating the shards of a job.
pub trait Executor {
    fn run<J: ShardedCount>(&self, job: &J) -> J::Tally;
}

/// Evaluates the whole space in the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn run<J: ShardedCount>(&self, job: &J) -> J::Tally {
        job.count_prefix(&[])
    }
}

/// Splits into shards of the given prefix length but still runs them in order.
/// Used to check that results do not depend on the shard layout.
#[derive(Clone, Copy, Debug, Default)]
pub struct SequentialShards(pub usize);

impl Executor for SequentialShards {
    fn run<J: ShardedCount>(&self, job: &J) -> J::Tally {
        let len = self.0.min(job.max_prefix());
        let mut total = J::Tally::default();
        for prefix in job.space().prefixes(len) {
            total.merge(job.count_prefix(&prefix));
        }
        total
    }
}

/// Executor plus budget, threaded through every counting entry point.
#[derive(Clone, Copy, Debug, Default)]
pub struct Engine<E = Sequential> {
    pub exec: E,
    pub budget: Budget,
}

impl Engine<Sequential> {
    pub fn sequential() -> Self {
        Engine::default()
    }
}

impl<E: Executor> Engine<E> {
    pub fn new(exec: E, budget: Budget) -> Self {
        Engine { exec, budget }
    }
}
