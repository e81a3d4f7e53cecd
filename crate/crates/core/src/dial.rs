//! Dial's one-level bucket queue with `C + 1` circular buckets.
//!
//! A key `y` lives in bucket `y mod (C + 1)`. Because every live key lies in
//! `[last_min, last_min + C]`, each bucket holds a single key value at a
//! time, so the active bucket can be popped without comparing keys.

use crate::queue::ledger::{Buckets, Ledger};
use crate::queue::{Element, MonotoneQueue, OpCounters, QueueError};

#[derive(Debug, Clone)]
pub struct DialQueue {
    buckets: Buckets,
    bucket_count: usize,
    span: u64,
    alpha: usize,
    ledger: Ledger,
}

impl DialQueue {
    /// `span` is C, the largest arc weight; `span + 1` buckets are allocated.
    pub fn new(span: u64, capacity_n: usize, max_key: u64) -> Self {
        assert!(span >= 1, "Dial queue needs C >= 1");
        let bucket_count = usize::try_from(span + 1).expect("C + 1 buckets must fit in memory");
        DialQueue {
            buckets: Buckets::new(bucket_count, capacity_n),
            bucket_count,
            span,
            alpha: 0,
            ledger: Ledger::new(capacity_n, max_key, 1),
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.bucket_count
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Bucket currently holding `id`.
    pub fn bucket_of(&self, id: usize) -> Option<usize> {
        self.buckets.bucket_of(id)
    }

    #[inline]
    fn slot(&self, key: u64) -> usize {
        (key % (self.span + 1)) as usize
    }

    fn check_window(&self, id: usize, key: u64) -> Result<(), QueueError> {
        let window_end = self.ledger.last_min.saturating_add(self.span);
        if key > window_end {
            return Err(QueueError::WindowViolation {
                id,
                key,
                window_end,
            });
        }
        Ok(())
    }

    /// Verifies bucket placement and the key window. Returns the first problem found.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut lo = u64::MAX;
        let mut hi = 0;
        for b in 0..self.bucket_count {
            for &id in self.buckets.members(b) {
                let key = self.ledger.key(id);
                if self.slot(key) != b {
                    return Err(format!("id {id} with key {key} sits in bucket {b}"));
                }
                lo = lo.min(key);
                hi = hi.max(key);
            }
        }
        if lo != u64::MAX && hi - lo > self.span {
            return Err(format!(
                "live keys span [{lo}, {hi}] wider than C = {}",
                self.span
            ));
        }
        Ok(())
    }
}

impl MonotoneQueue for DialQueue {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        self.ledger.check_insert(id, key)?;
        self.check_window(id, key)?;
        self.ledger.record_insert(id, key);
        let b = self.slot(key);
        self.buckets.push(b, id);
        Ok(())
    }

    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        if !self.ledger.check_decrease(id, new_key)? {
            return Ok(());
        }
        self.buckets.remove(id);
        self.ledger.record_decrease(id, new_key);
        let b = self.slot(new_key);
        self.buckets.push(b, id);
        Ok(())
    }

    fn extract_min(&mut self) -> Option<Element> {
        if self.ledger.len() == 0 {
            return None;
        }
        while self.buckets.is_empty(self.alpha) {
            self.ledger.counters.empty_scan_steps += 1;
            self.alpha += 1;
            if self.alpha == self.bucket_count {
                self.alpha = 0;
            }
        }
        let id = self
            .buckets
            .pop(self.alpha)
            .expect("active bucket is non-empty");
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

    fn max_placements(&self) -> u32 {
        self.ledger.max_placements()
    }

    fn name(&self) -> &'static str {
        "dial"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn queue(c: u64) -> DialQueue {
        DialQueue::new(c, 16, 1000)
    }

    #[test]
    fn bucket_counts() {
        assert_eq!(queue(4).bucket_count(), 5);
        assert_eq!(queue(1).bucket_count(), 2);
        assert_eq!(queue(15).bucket_count(), 16);
    }

    #[test]
    fn insert_wraps_modulo_c_plus_one() {
        let mut q = queue(4);
        q.insert(0, 0).unwrap();
        assert_eq!(q.bucket_of(0), Some(0));
        q.insert(1, 3).unwrap();
        q.extract_min();
        q.extract_min();
        assert_eq!(q.last_min(), 3);
        q.insert(2, 6).unwrap();
        assert_eq!(q.bucket_of(2), Some(1));
        assert_eq!(
            q.insert(3, 8),
            Err(QueueError::WindowViolation {
                id: 3,
                key: 8,
                window_end: 7
            })
        );
    }

    #[test]
    fn decrease_relocates() {
        let mut q = queue(4);
        q.insert(0, 4).unwrap();
        assert_eq!(q.bucket_of(0), Some(4));
        q.decrease_key(0, 2).unwrap();
        assert_eq!(q.bucket_of(0), Some(2));
        assert_eq!(q.decrease_key(7, 1), Err(QueueError::UnknownId { id: 7 }));

        let mut q = queue(4);
        q.insert(0, 3).unwrap();
        q.extract_min();
        q.insert(1, 6).unwrap();
        assert_eq!(q.bucket_of(1), Some(1));
        q.decrease_key(1, 4).unwrap();
        assert_eq!(q.bucket_of(1), Some(4));
    }

    #[test]
    fn extract_counts_empty_buckets() {
        let mut q = queue(4);
        q.insert(0, 0).unwrap();
        assert_eq!(q.extract_min(), Some(Element::new(0, 0)));
        assert_eq!(q.counters().empty_scan_steps, 0);

        let mut q = queue(4);
        q.insert(0, 2).unwrap();
        q.insert(1, 4).unwrap();
        assert_eq!(q.extract_min().unwrap().key, 2);
        let before = q.counters().empty_scan_steps;
        assert_eq!(q.extract_min().unwrap().key, 4);
        assert_eq!(q.counters().empty_scan_steps - before, 2);

        let before = q.counters();
        assert_eq!(q.extract_min(), None);
        assert_eq!(q.counters(), before);
    }

    #[test]
    fn equal_decrease_is_noop() {
        let mut q = queue(4);
        q.insert(2, 4).unwrap();
        q.decrease_key(2, 4).unwrap();
        assert_eq!(q.counters().decreases, 0);
        q.check_invariants().unwrap();
    }
}
