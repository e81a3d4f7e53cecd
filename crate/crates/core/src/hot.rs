//! Heap-on-top queue: multi-level buckets whose expansion stops at any
//! bucket holding at most `t` elements. That bucket turns "hot": its
//! elements are mirrored in a binary heap and extracted from there. If the
//! hot bucket grows past `t` it is expanded normally.
//!
//! With `t = 0` no bucket ever turns hot and the queue behaves exactly like
//! [`MultiLevelBuckets`].

use crate::binary_heap::IndexedBinaryHeap;
use crate::mlb::{MultiLevelBuckets, Slot};
use crate::queue::{
    Backend, ConfigError, Element, MonotoneQueue, OpCounters, QueueConfig, QueueError,
};

#[derive(Debug, Clone)]
pub struct HotQueue {
    mlb: MultiLevelBuckets,
    heap: IndexedBinaryHeap,
    threshold: usize,
    hot: Option<Slot>,
}

impl HotQueue {
    /// `span` is C, `levels` is k, `width` is p and `threshold` is t.
    pub fn new(
        span: u64,
        levels: u32,
        width: u64,
        threshold: usize,
        capacity_n: usize,
        max_key: u64,
    ) -> Self {
        HotQueue {
            mlb: MultiLevelBuckets::new(span, levels, width, capacity_n, max_key),
            heap: IndexedBinaryHeap::new(capacity_n),
            threshold,
            hot: None,
        }
    }

    pub fn from_config(config: &QueueConfig) -> Result<Self, ConfigError> {
        config.validate(Backend::Hot)?;
        Ok(Self::new(
            config.max_span,
            config.levels,
            config.width_multiplier,
            config.threshold(),
            config.capacity_n,
            config.max_key,
        ))
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// The bucket currently mirrored in the heap.
    pub fn hot_slot(&self) -> Option<Slot> {
        self.hot
    }

    pub fn is_hot(&self) -> bool {
        self.hot.is_some()
    }

    pub fn heap_len(&self) -> usize {
        self.heap.len()
    }

    pub fn buckets(&self) -> &MultiLevelBuckets {
        &self.mlb
    }

    /// Scaled-key range of the hot bucket.
    fn hot_range(&self) -> Option<(u64, u64)> {
        self.hot.map(|slot| self.mlb.active_range(slot))
    }

    fn in_hot_range(&self, key: u64) -> bool {
        let y = self.mlb.scaled(key);
        self.hot_range().is_some_and(|(lo, hi)| lo <= y && y <= hi)
    }

    fn activate(&mut self, slot: Slot) {
        let (start, _) = self.mlb.active_range(slot);
        self.mlb.reposition_below(slot.level, start);
        for &id in self.mlb.bucket_members(slot) {
            self.heap.push(id, self.mlb.ledger.key(id));
        }
        self.mlb.ledger.counters.heap_ops += self.heap.len() as u64;
        self.hot = Some(slot);
    }

    fn deactivate(&mut self) {
        let slot = self.hot.take().expect("hot bucket");
        self.heap.clear();
        let y = self.mlb.last_scaled();
        self.mlb.reposition_below(slot.level, y);
    }

    fn pop_hot(&mut self) -> Element {
        let (_, id) = self.heap.pop().expect("hot heap is non-empty");
        self.mlb.ledger.counters.heap_ops += 1;
        self.mlb.remove_from_bucket(id);
        let e = self.mlb.note_extracted(id);
        if self.heap.is_empty() {
            self.deactivate();
        }
        e
    }

    /// Expands the hot bucket once it holds more than `t` elements.
    fn check_overflow(&mut self) {
        let Some(slot) = self.hot else { return };
        if self.mlb.bucket_len(slot) <= self.threshold {
            return;
        }
        self.deactivate();
        let members = self.mlb.bucket_members(slot).to_vec();
        for id in members {
            let to = self.mlb.find_slot(self.mlb.ledger.key(id));
            self.mlb.relocate(id, slot, to);
        }
        self.mlb.ledger.counters.expansions += 1;
    }

    /// Checks that the heap mirrors the hot bucket exactly, on top of the
    /// bucket-structure invariants.
    pub fn check_twins(&self) -> Result<(), String> {
        self.mlb.check_invariants_with(self.hot)?;
        let Some(slot) = self.hot else {
            return if self.heap.is_empty() {
                Ok(())
            } else {
                Err(format!(
                    "{} heap entries without a hot bucket",
                    self.heap.len()
                ))
            };
        };
        if self.heap.is_empty() {
            return Err(format!("hot bucket {slot:?} with an empty heap"));
        }
        let mut bucket: Vec<usize> = self.mlb.bucket_members(slot).to_vec();
        let mut heap: Vec<usize> = self.heap.ids().collect();
        bucket.sort_unstable();
        heap.sort_unstable();
        if bucket != heap {
            return Err(format!(
                "hot bucket holds {bucket:?} but heap holds {heap:?}"
            ));
        }
        for id in heap {
            if self.heap.key_of(id) != self.mlb.key_of(id) {
                return Err(format!("heap key of id {id} is stale"));
            }
        }
        Ok(())
    }
}

impl MonotoneQueue for HotQueue {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        self.mlb.ledger.check_insert(id, key)?;
        self.mlb.check_window(id, key)?;
        if self.in_hot_range(key) {
            let slot = self.hot.expect("hot bucket");
            self.mlb.ledger.record_insert(id, key);
            self.mlb.place(id, slot);
            self.heap.push(id, key);
            self.mlb.ledger.counters.heap_ops += 1;
            self.check_overflow();
        } else {
            self.mlb.insert_unchecked(id, key);
        }
        Ok(())
    }

    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        if !self.mlb.ledger.check_decrease(id, new_key)? {
            return Ok(());
        }
        if self.heap.contains(id) {
            self.mlb.ledger.record_decrease(id, new_key);
            self.heap.decrease(id, new_key);
            self.mlb.ledger.counters.heap_ops += 1;
        } else if self.in_hot_range(new_key) {
            let slot = self.hot.expect("hot bucket");
            let from = self.mlb.slot_of(id).expect("queued id has a bucket");
            self.mlb.ledger.record_decrease(id, new_key);
            self.mlb.relocate(id, from, slot);
            self.heap.push(id, new_key);
            self.mlb.ledger.counters.heap_ops += 1;
            self.check_overflow();
        } else {
            self.mlb.decrease_unchecked(id, new_key);
        }
        Ok(())
    }

    fn extract_min(&mut self) -> Option<Element> {
        if self.mlb.ledger.len() == 0 {
            return None;
        }
        if self.hot.is_some() {
            return Some(self.pop_hot());
        }
        match self.mlb.extract_or_stop(self.threshold) {
            Ok(e) => Some(e),
            Err(slot) => {
                self.activate(slot);
                Some(self.pop_hot())
            }
        }
    }

    fn len(&self) -> usize {
        self.mlb.len()
    }

    fn key_of(&self, id: usize) -> Option<u64> {
        self.mlb.key_of(id)
    }

    fn last_min(&self) -> u64 {
        self.mlb.last_min()
    }

    fn counters(&self) -> OpCounters {
        self.mlb.counters()
    }

    fn max_placements(&self) -> u32 {
        self.mlb.max_placements()
    }

    fn name(&self) -> &'static str {
        "hot"
    }
}
