//! One-level radix heap.
//!
//! `k = ceil(lg(C + 1)) + 2` buckets indexed `1..=k` with widths
//! `1, 1, 2, 4, ..., 2^(k-3), max_key + 1`. Bucket `i` accepts keys in
//! `(U(i-1), U(i)]`, where `U(0)` is one below the last extracted key.
//! Elements only ever move toward bucket 1, so each is placed at most `k`
//! times over its lifetime.

use crate::arith::ceil_log;
use crate::queue::ledger::{Buckets, Ledger};
use crate::queue::{Element, MonotoneQueue, OpCounters, QueueError};

#[derive(Debug, Clone)]
pub struct RadixHeap {
    k: usize,
    /// `widths[i]` for `i` in `1..=k`; index 0 unused.
    widths: Vec<u64>,
    /// `upper[i] = U(i)` for `i` in `1..=k`; index 0 unused.
    upper: Vec<u64>,
    buckets: Buckets,
    ledger: Ledger,
    scratch: Vec<usize>,
}

impl RadixHeap {
    pub fn new(span: u64, max_key: u64, capacity_n: usize) -> Self {
        assert!(span >= 1 && max_key >= span && max_key < u64::MAX - 1);
        let k = ceil_log(2, span + 1) as usize + 2;
        let mut widths = vec![0u64; k + 1];
        let mut upper = vec![0u64; k + 1];
        widths[1] = 1;
        upper[1] = 0;
        for i in 2..k {
            widths[i] = 1u64 << (i - 2);
            upper[i] = (1u64 << (i - 1)) - 1;
        }
        widths[k] = max_key + 1;
        upper[k] = max_key + 1;
        RadixHeap {
            k,
            widths,
            upper,
            buckets: Buckets::new(k + 1, capacity_n),
            ledger: Ledger::new(capacity_n, max_key, 1),
            scratch: Vec::new(),
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.k
    }

    /// `U(1), ..., U(k)`.
    pub fn upper_bounds(&self) -> &[u64] {
        &self.upper[1..]
    }

    /// Widths of buckets `1..=k`.
    pub fn widths(&self) -> &[u64] {
        &self.widths[1..]
    }

    /// Bucket (1-based) currently holding `id`.
    pub fn bucket_of(&self, id: usize) -> Option<usize> {
        self.buckets.bucket_of(id)
    }

    /// Scans `i = start, start-1, ..., 1` for the first `U(i) < key` and
    /// returns `i + 1`, or bucket 1 when none qualifies.
    #[inline]
    fn bucket_for(&self, key: u64, start: usize) -> usize {
        (1..=start)
            .rev()
            .find(|&i| self.upper[i] < key)
            .map_or(1, |i| i + 1)
    }

    /// Range-membership and single-key checks over every stored element.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut total = 0;
        let mut bucket_one_key = None;
        for i in 1..=self.k {
            for &id in self.buckets.members(i) {
                total += 1;
                let key = self.ledger.key(id);
                let above_lower = if i == 1 {
                    key >= self.ledger.last_min
                } else {
                    key > self.upper[i - 1]
                };
                if !above_lower || key > self.upper[i] {
                    return Err(format!("id {id} with key {key} outside bucket {i}'s range"));
                }
                if i == 1 {
                    match bucket_one_key {
                        None => bucket_one_key = Some(key),
                        Some(k) if k != key => {
                            return Err(format!("bucket 1 holds keys {k} and {key}"))
                        }
                        _ => {}
                    }
                }
            }
        }
        if total != self.ledger.len() {
            return Err(format!(
                "{total} stored elements but len {}",
                self.ledger.len()
            ));
        }
        Ok(())
    }
}

impl MonotoneQueue for RadixHeap {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        self.ledger.check_insert(id, key)?;
        self.ledger.record_insert(id, key);
        let b = self.bucket_for(key, self.k);
        self.buckets.push(b, id);
        Ok(())
    }

    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        if !self.ledger.check_decrease(id, new_key)? {
            return Ok(());
        }
        self.ledger.record_decrease(id, new_key);
        let from = self.buckets.bucket_of(id).expect("queued id has a bucket");
        let to = self.bucket_for(new_key, from);
        if to != from {
            self.buckets.remove(id);
            self.buckets.push(to, id);
            self.ledger.counters.element_moves += 1;
            self.ledger.record_placement(id);
        }
        Ok(())
    }

    fn extract_min(&mut self) -> Option<Element> {
        if self.ledger.len() == 0 {
            return None;
        }
        if let Some(id) = self.buckets.pop(1) {
            let key = self.ledger.record_extract(id);
            return Some(Element { id, key });
        }
        self.ledger.counters.empty_scan_steps += 1;
        let mut j = 2;
        while self.buckets.is_empty(j) {
            self.ledger.counters.empty_scan_steps += 1;
            j += 1;
        }

        let mut moving = std::mem::take(&mut self.scratch);
        self.buckets.drain_into(j, &mut moving);
        let (pos, _) = moving
            .iter()
            .enumerate()
            .min_by_key(|&(_, &id)| (self.ledger.key(id), id))
            .expect("non-empty bucket");
        let min_id = moving.swap_remove(pos);
        let min_key = self.ledger.key(min_id);

        let cap = self.upper[j];
        self.upper[1] = min_key;
        for i in 2..j {
            self.upper[i] = self.upper[i - 1].saturating_add(self.widths[i]).min(cap);
        }
        for &id in &moving {
            let b = self.bucket_for(self.ledger.key(id), j - 1);
            self.buckets.push(b, id);
            if b != j {
                self.ledger.counters.element_moves += 1;
                self.ledger.record_placement(id);
            }
        }
        moving.clear();
        self.scratch = moving;

        let key = self.ledger.record_extract(min_id);
        Some(Element { id: min_id, key })
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
        "radix1"
    }
}
