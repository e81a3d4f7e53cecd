//! Addressable binary min-heap over dense ids, and the reference backend
//! built on it.

use crate::queue::ledger::Ledger;
use crate::queue::{Element, MonotoneQueue, OpCounters, QueueError};

const NOT_IN_HEAP: usize = usize::MAX;

/// Binary min-heap ordered by `(key, id)` with position tracking, so
/// decrease-key and removal of an arbitrary id are `O(log n)`.
#[derive(Debug, Clone)]
pub struct IndexedBinaryHeap {
    heap: Vec<(u64, usize)>,
    pos: Vec<usize>,
}

impl IndexedBinaryHeap {
    pub fn new(capacity: usize) -> Self {
        IndexedBinaryHeap {
            heap: Vec::new(),
            pos: vec![NOT_IN_HEAP; capacity],
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.pos.get(id).is_some_and(|&p| p != NOT_IN_HEAP)
    }

    pub fn key_of(&self, id: usize) -> Option<u64> {
        self.contains(id).then(|| self.heap[self.pos[id]].0)
    }

    pub fn peek(&self) -> Option<(u64, usize)> {
        self.heap.first().copied()
    }

    /// Keys currently stored, in heap order.
    pub fn keys(&self) -> impl Iterator<Item = u64> + '_ {
        self.heap.iter().map(|&(k, _)| k)
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.heap.iter().map(|&(_, id)| id)
    }

    pub fn push(&mut self, id: usize, key: u64) {
        debug_assert!(!self.contains(id));
        let i = self.heap.len();
        self.heap.push((key, id));
        self.pos[id] = i;
        self.sift_up(i);
    }

    pub fn pop(&mut self) -> Option<(u64, usize)> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.take_at(0);
        Some(top)
    }

    /// Lowers the key of a stored id.
    pub fn decrease(&mut self, id: usize, key: u64) {
        let i = self.pos[id];
        debug_assert!(i != NOT_IN_HEAP && key <= self.heap[i].0);
        self.heap[i].0 = key;
        self.sift_up(i);
    }

    pub fn remove(&mut self, id: usize) -> Option<u64> {
        if !self.contains(id) {
            return None;
        }
        let (key, _) = self.take_at(self.pos[id]);
        Some(key)
    }

    pub fn clear(&mut self) {
        for &(_, id) in &self.heap {
            self.pos[id] = NOT_IN_HEAP;
        }
        self.heap.clear();
    }

    fn take_at(&mut self, i: usize) -> (u64, usize) {
        let last = self.heap.len() - 1;
        self.swap(i, last);
        let out = self.heap.pop().expect("non-empty heap");
        self.pos[out.1] = NOT_IN_HEAP;
        if i < self.heap.len() {
            self.sift_down(i);
            self.sift_up(i);
        }
        out
    }

    #[inline]
    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a].1] = a;
        self.pos[self.heap[b].1] = b;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.heap[i] < self.heap[parent] {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && self.heap[right] < self.heap[left] {
                right
            } else {
                left
            };
            if self.heap[child] < self.heap[i] {
                self.swap(i, child);
                i = child;
            } else {
                break;
            }
        }
    }
}

/// Reference backend: a plain binary heap behind the monotone contract.
#[derive(Debug, Clone)]
pub struct BinaryHeapQueue {
    heap: IndexedBinaryHeap,
    ledger: Ledger,
}

impl BinaryHeapQueue {
    pub fn new(capacity_n: usize, max_key: u64) -> Self {
        BinaryHeapQueue {
            heap: IndexedBinaryHeap::new(capacity_n),
            ledger: Ledger::new(capacity_n, max_key, 1),
        }
    }
}

impl MonotoneQueue for BinaryHeapQueue {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        self.ledger.check_insert(id, key)?;
        self.ledger.record_insert(id, key);
        self.heap.push(id, key);
        self.ledger.counters.heap_ops += 1;
        Ok(())
    }

    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        if self.ledger.check_decrease(id, new_key)? {
            self.ledger.record_decrease(id, new_key);
            self.heap.decrease(id, new_key);
            self.ledger.counters.heap_ops += 1;
        }
        Ok(())
    }

    fn extract_min(&mut self) -> Option<Element> {
        let (_, id) = self.heap.pop()?;
        self.ledger.counters.heap_ops += 1;
        let key = self.ledger.record_extract(id);
        Some(Element { id, key })
    }

    fn len(&self) -> usize {
        self.ledger.len()
    }

    fn key_of(&self, id: usize) -> Option<u64> {
        self.ledger.key_of(id)
    }

    fn last_min(&self) -> u64 {
        self.ledger.last_min
    }

    fn counters(&self) -> OpCounters {
        self.ledger.counters
    }

    fn name(&self) -> &'static str {
        "binheap"
    }
}
