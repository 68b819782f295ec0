//! Hierarchical queue: one FIFO bucket per priority.

use std::collections::{BTreeMap, VecDeque};

/// Among the lowest-priority entries, `pop` returns the one pushed first.
#[derive(Clone, Debug)]
pub struct HierarchicalQueue<P: Ord, T> {
    buckets: BTreeMap<P, VecDeque<T>>,
    len: usize,
}

impl<P: Ord + Clone, T> Default for HierarchicalQueue<P, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: Ord + Clone, T> HierarchicalQueue<P, T> {
    pub fn new() -> Self {
        HierarchicalQueue { buckets: BTreeMap::new(), len: 0 }
    }

    pub fn push(&mut self, priority: P, item: T) {
        self.buckets.entry(priority).or_default().push_back(item);
        self.len += 1;
    }

    pub fn pop(&mut self) -> Option<(P, T)> {
        let mut entry = self.buckets.first_entry()?;
        let item = entry.get_mut().pop_front().expect("buckets are never left empty");
        let p = entry.key().clone();
        if entry.get().is_empty() {
            entry.remove();
        }
        self.len -= 1;
        Some((p, item))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}
