//! Two-level radix heap: `k = ceil(log_delta(C + 1)) + 1` buckets of width
//! `delta^i`, each split into `delta` inner buckets of width `delta^(i-1)`.
//! Extraction redistributes only the first non-empty inner bucket.
//!
//! Each bucket lays out its inner grid from a base key fixed when the
//! bucket was last empty. A partial redistribution raises `U(i-1)` above
//! that base without moving the inner buckets that stay behind, so inner
//! indices of those elements never need recomputing.

use crate::arith::{ceil_log, checked_pow};
use crate::queue::ledger::{Buckets, Ledger};
use crate::queue::{Element, MonotoneQueue, OpCounters, QueueError};

#[derive(Debug, Clone)]
pub struct TwoLevelRadixHeap {
    k: usize,
    delta: usize,
    /// Indexed `1..=k`; index 0 unused.
    widths: Vec<u64>,
    inner_width: Vec<u64>,
    upper: Vec<u64>,
    base: Vec<u64>,
    bucket_len: Vec<usize>,
    nonempty_inner: Vec<usize>,
    cells: Buckets,
    ledger: Ledger,
    scratch: Vec<usize>,
}

impl TwoLevelRadixHeap {
    pub fn new(span: u64, max_key: u64, delta: u64, capacity_n: usize) -> Self {
        assert!(span >= 1 && delta >= 2 && max_key >= span && max_key < u64::MAX - 1);
        let k = ceil_log(delta, span + 1) as usize + 1;
        let mut widths = vec![0u64; k + 1];
        let mut inner_width = vec![0u64; k + 1];
        let mut upper = vec![0u64; k + 1];
        let mut base = vec![0u64; k + 1];
        let mut sum: u64 = 0;
        for i in 1..k {
            widths[i] = checked_pow(delta, i as u32).expect("delta^i fits in 64 bits");
            inner_width[i] = checked_pow(delta, i as u32 - 1).expect("delta^(i-1) fits");
            base[i] = sum;
            sum += widths[i];
            upper[i] = sum - 1;
        }
        widths[k] = max_key + 1;
        inner_width[k] = checked_pow(delta, k as u32 - 1).unwrap_or(u64::MAX);
        base[k] = sum;
        upper[k] = max_key + 1;
        let delta = usize::try_from(delta).expect("delta fits in memory");
        TwoLevelRadixHeap {
            k,
            delta,
            widths,
            inner_width,
            upper,
            base,
            bucket_len: vec![0; k + 1],
            nonempty_inner: vec![0; k + 1],
            cells: Buckets::new((k + 1) * delta, capacity_n),
            ledger: Ledger::new(capacity_n, max_key, 1),
            scratch: Vec::new(),
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// `U(1), ..., U(k)`.
    pub fn upper_bounds(&self) -> &[u64] {
        &self.upper[1..]
    }

    pub fn widths(&self) -> &[u64] {
        &self.widths[1..]
    }

    /// `(bucket, inner)` for a queued id; both 1-based.
    pub fn position_of(&self, id: usize) -> Option<(usize, usize)> {
        self.cells
            .bucket_of(id)
            .map(|c| (c / self.delta, c % self.delta + 1))
    }

    #[inline]
    fn bucket_for(&self, key: u64, start: usize) -> usize {
        (1..=start)
            .rev()
            .find(|&i| self.upper[i] < key)
            .map_or(1, |i| i + 1)
    }

    #[inline]
    fn inner_for(&self, bucket: usize, key: u64) -> usize {
        let off = (key - self.base[bucket]) / self.inner_width[bucket];
        (off as usize).min(self.delta - 1)
    }

    #[inline]
    fn cell(&self, bucket: usize, inner: usize) -> usize {
        bucket * self.delta + inner
    }

    fn place(&mut self, id: usize, bucket: usize) {
        let inner = self.inner_for(bucket, self.ledger.key(id));
        let c = self.cell(bucket, inner);
        if self.cells.is_empty(c) {
            self.nonempty_inner[bucket] += 1;
        }
        self.cells.push(c, id);
        self.bucket_len[bucket] += 1;
    }

    fn unplace(&mut self, id: usize) -> usize {
        let c = self.cells.remove(id);
        let bucket = c / self.delta;
        if self.cells.is_empty(c) {
            self.nonempty_inner[bucket] -= 1;
        }
        self.bucket_len[bucket] -= 1;
        bucket
    }

    /// Range membership, inner-index and occupancy-count checks.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut total = 0;
        for i in 1..=self.k {
            let mut len = 0;
            let mut nonempty = 0;
            for inner in 0..self.delta {
                let members = self.cells.members(self.cell(i, inner));
                if !members.is_empty() {
                    nonempty += 1;
                }
                for &id in members {
                    len += 1;
                    let key = self.ledger.key(id);
                    let above = if i == 1 {
                        key >= self.ledger.last_min
                    } else {
                        key > self.upper[i - 1]
                    };
                    if !above || key > self.upper[i] {
                        return Err(format!("id {id} with key {key} outside bucket {i}"));
                    }
                    if self.inner_for(i, key) != inner {
                        return Err(format!(
                            "id {id} with key {key} in wrong inner bucket of {i}"
                        ));
                    }
                }
            }
            if len != self.bucket_len[i] || nonempty != self.nonempty_inner[i] {
                return Err(format!("bucket {i} occupancy counters out of sync"));
            }
            total += len;
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

impl MonotoneQueue for TwoLevelRadixHeap {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        self.ledger.check_insert(id, key)?;
        self.ledger.record_insert(id, key);
        let b = self.bucket_for(key, self.k);
        self.place(id, b);
        Ok(())
    }

    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        if !self.ledger.check_decrease(id, new_key)? {
            return Ok(());
        }
        let from = self.unplace(id);
        self.ledger.record_decrease(id, new_key);
        let to = self.bucket_for(new_key, from);
        self.place(id, to);
        if to != from {
            self.ledger.counters.element_moves += 1;
            self.ledger.record_placement(id);
        }
        Ok(())
    }

    fn extract_min(&mut self) -> Option<Element> {
        if self.ledger.len() == 0 {
            return None;
        }
        let mut i = 1;
        while self.bucket_len[i] == 0 {
            self.ledger.counters.empty_scan_steps += 1;
            i += 1;
        }
        let mut inner = 0;
        while self.cells.is_empty(self.cell(i, inner)) {
            self.ledger.counters.empty_scan_steps += 1;
            inner += 1;
        }
        let c = self.cell(i, inner);

        if i == 1 {
            // Inner buckets of bucket 1 hold a single key each.
            let id = self.cells.pop(c).expect("non-empty inner bucket");
            if self.cells.is_empty(c) {
                self.nonempty_inner[i] -= 1;
            }
            self.bucket_len[i] -= 1;
            let key = self.ledger.record_extract(id);
            return Some(Element { id, key });
        }

        let mut moving = std::mem::take(&mut self.scratch);
        self.cells.drain_into(c, &mut moving);
        self.nonempty_inner[i] -= 1;
        self.bucket_len[i] -= moving.len();
        let (pos, _) = moving
            .iter()
            .enumerate()
            .min_by_key(|&(_, &id)| (self.ledger.key(id), id))
            .expect("non-empty inner bucket");
        let min_id = moving.swap_remove(pos);
        let min_key = self.ledger.key(min_id);

        let cell_end = if inner == self.delta - 1 {
            self.upper[i]
        } else {
            (self.base[i] + (inner as u64 + 1) * self.inner_width[i] - 1).min(self.upper[i])
        };
        // U(0) = min_key - 1; bounds below i restart from the isolated minimum.
        let mut prev = min_key.wrapping_sub(1);
        for l in 1..i {
            self.base[l] = prev.wrapping_add(1);
            self.upper[l] = prev.wrapping_add(self.widths[l]).min(cell_end);
            prev = self.upper[l];
        }
        for &id in &moving {
            let b = self.bucket_for(self.ledger.key(id), i - 1);
            self.place(id, b);
            if b != i {
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
        "radix2"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_bounds() {
        let h = TwoLevelRadixHeap::new(15, 999, 4, 4);
        assert_eq!(h.bucket_count(), 3);
        assert_eq!(h.upper_bounds(), &[3, 19, 1000]);
        let h = TwoLevelRadixHeap::new(3, 999, 4, 4);
        assert_eq!(h.bucket_count(), 2);
        assert_eq!(h.upper_bounds(), &[3, 1000]);
        let h = TwoLevelRadixHeap::new(15, 999, 2, 4);
        assert_eq!(&h.widths()[..3], &[2, 4, 8]);
    }

    #[test]
    fn inner_index() {
        let mut h = TwoLevelRadixHeap::new(15, 999, 4, 4);
        h.insert(0, 9).unwrap();
        assert_eq!(h.position_of(0), Some((2, 2)));
        h.insert(1, 3).unwrap();
        // U(0) = -1 before any extraction, so key 3 is the fourth unit cell.
        assert_eq!(h.position_of(1), Some((1, 4)));
    }

    #[test]
    fn singleton_inner_bucket_returns_directly() {
        let mut h = TwoLevelRadixHeap::new(15, 999, 4, 4);
        h.insert(0, 9).unwrap();
        h.insert(1, 17).unwrap();
        let moves = h.counters().element_moves;
        assert_eq!(h.extract_min(), Some(Element::new(0, 9)));
        assert_eq!(h.counters().element_moves, moves);
        assert_eq!(h.position_of(1).unwrap().0, 2);
        h.check_invariants().unwrap();
    }

    #[test]
    fn partial_redistribution_keeps_remaining_inner_buckets() {
        let mut h = TwoLevelRadixHeap::new(15, 999, 4, 8);
        for (id, key) in [(0, 5), (1, 7), (2, 12), (3, 18)] {
            h.insert(id, key).unwrap();
        }
        assert_eq!(h.extract_min().unwrap().key, 5);
        h.check_invariants().unwrap();
        assert_eq!(h.position_of(1), Some((1, 3)));
        let keys: Vec<u64> = std::iter::from_fn(|| h.extract_min().map(|e| e.key)).collect();
        assert_eq!(keys, vec![7, 12, 18]);
    }
}
