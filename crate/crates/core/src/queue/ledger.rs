//! Bookkeeping shared by the bucket-based backends: the id -> key table,
//! monotonicity checks, counters, and an arena of buckets with O(1)
//! targeted removal.

use super::{OpCounters, QueueError};

pub(crate) const ABSENT: u64 = u64::MAX;
const NO_SLOT: usize = usize::MAX;

/// Validation and accounting state common to every backend.
#[derive(Debug, Clone)]
pub(crate) struct Ledger {
    keys: Vec<u64>,
    placements: Vec<u32>,
    pub(crate) counters: OpCounters,
    pub(crate) last_min: u64,
    pub(crate) max_key: u64,
    /// Monotonicity is compared on `key / granularity` (wide buckets).
    granularity: u64,
    len: usize,
    max_placements: u32,
}

impl Ledger {
    pub(crate) fn new(capacity: usize, max_key: u64, granularity: u64) -> Self {
        Ledger {
            keys: vec![ABSENT; capacity],
            placements: vec![0; capacity],
            counters: OpCounters::default(),
            last_min: 0,
            max_key,
            granularity: granularity.max(1),
            len: 0,
            max_placements: 0,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub(crate) fn key(&self, id: usize) -> u64 {
        self.keys[id]
    }

    pub(crate) fn key_of(&self, id: usize) -> Option<u64> {
        match self.keys.get(id) {
            Some(&k) if k != ABSENT => Some(k),
            _ => None,
        }
    }

    pub(crate) fn max_placements(&self) -> u32 {
        self.max_placements
    }

    fn check_floor(&self, id: usize, key: u64) -> Result<(), QueueError> {
        if key / self.granularity < self.last_min / self.granularity {
            return Err(QueueError::MonotonicityViolation {
                id,
                key,
                last_min: self.last_min,
            });
        }
        Ok(())
    }

    pub(crate) fn check_insert(&self, id: usize, key: u64) -> Result<(), QueueError> {
        if id >= self.keys.len() {
            return Err(QueueError::IdOutOfRange {
                id,
                capacity: self.keys.len(),
            });
        }
        if self.keys[id] != ABSENT {
            return Err(QueueError::DuplicateId {
                id,
                existing_key: self.keys[id],
            });
        }
        if key > self.max_key {
            return Err(QueueError::KeyOutOfRange {
                id,
                key,
                max_key: self.max_key,
            });
        }
        self.check_floor(id, key)
    }

    /// Returns `Ok(false)` when the decrease is a no-op (equal key).
    pub(crate) fn check_decrease(&self, id: usize, new_key: u64) -> Result<bool, QueueError> {
        let current = match self.key_of(id) {
            Some(k) => k,
            None => return Err(QueueError::UnknownId { id }),
        };
        if new_key > current {
            return Err(QueueError::NotADecrease {
                id,
                current,
                requested: new_key,
            });
        }
        if new_key == current {
            return Ok(false);
        }
        self.check_floor(id, new_key)?;
        Ok(true)
    }

    pub(crate) fn record_insert(&mut self, id: usize, key: u64) {
        self.keys[id] = key;
        self.len += 1;
        self.counters.inserts += 1;
        self.placements[id] = 1;
        self.max_placements = self.max_placements.max(1);
    }

    pub(crate) fn record_decrease(&mut self, id: usize, new_key: u64) {
        self.keys[id] = new_key;
        self.counters.decreases += 1;
    }

    pub(crate) fn record_extract(&mut self, id: usize) -> u64 {
        let key = self.keys[id];
        self.keys[id] = ABSENT;
        self.len -= 1;
        self.counters.extracts += 1;
        self.last_min = key;
        key
    }

    /// The element entered a new level (bucket structures) or bucket (radix).
    pub(crate) fn record_placement(&mut self, id: usize) {
        let p = &mut self.placements[id];
        *p += 1;
        self.max_placements = self.max_placements.max(*p);
    }
}

/// A fixed set of buckets over dense ids. Removal of a known id is O(1)
/// by swapping the last member into its slot.
#[derive(Debug, Clone)]
pub(crate) struct Buckets {
    members: Vec<Vec<usize>>,
    bucket_of: Vec<usize>,
    index_in: Vec<usize>,
}

impl Buckets {
    pub(crate) fn new(bucket_count: usize, capacity: usize) -> Self {
        Buckets {
            members: vec![Vec::new(); bucket_count],
            bucket_of: vec![NO_SLOT; capacity],
            index_in: vec![0; capacity],
        }
    }

    #[inline]
    pub(crate) fn push(&mut self, bucket: usize, id: usize) {
        debug_assert_eq!(self.bucket_of[id], NO_SLOT);
        self.bucket_of[id] = bucket;
        self.index_in[id] = self.members[bucket].len();
        self.members[bucket].push(id);
    }

    /// Removes `id` and returns the bucket it was in.
    #[inline]
    pub(crate) fn remove(&mut self, id: usize) -> usize {
        let bucket = self.bucket_of[id];
        debug_assert_ne!(bucket, NO_SLOT);
        let idx = self.index_in[id];
        let list = &mut self.members[bucket];
        list.swap_remove(idx);
        if let Some(&moved) = list.get(idx) {
            self.index_in[moved] = idx;
        }
        self.bucket_of[id] = NO_SLOT;
        bucket
    }

    #[inline]
    pub(crate) fn pop(&mut self, bucket: usize) -> Option<usize> {
        let id = self.members[bucket].pop()?;
        self.bucket_of[id] = NO_SLOT;
        Some(id)
    }

    #[inline]
    pub(crate) fn bucket_of(&self, id: usize) -> Option<usize> {
        match self.bucket_of[id] {
            NO_SLOT => None,
            b => Some(b),
        }
    }

    #[inline]
    pub(crate) fn is_empty(&self, bucket: usize) -> bool {
        self.members[bucket].is_empty()
    }

    #[inline]
    pub(crate) fn len_of(&self, bucket: usize) -> usize {
        self.members[bucket].len()
    }

    pub(crate) fn members(&self, bucket: usize) -> &[usize] {
        &self.members[bucket]
    }

    /// Moves every member of `bucket` into `out` (appending), leaving the
    /// bucket empty and its members unplaced.
    pub(crate) fn drain_into(&mut self, bucket: usize, out: &mut Vec<usize>) {
        for &id in &self.members[bucket] {
            self.bucket_of[id] = NO_SLOT;
        }
        out.append(&mut self.members[bucket]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remove_keeps_positions_consistent() {
        let mut b = Buckets::new(2, 5);
        for id in 0..4 {
            b.push(0, id);
        }
        assert_eq!(b.remove(1), 0);
        assert_eq!(b.remove(3), 0);
        assert_eq!(b.remove(0), 0);
        assert_eq!(b.members(0), &[2]);
        b.push(1, 4);
        let mut out = Vec::new();
        b.drain_into(1, &mut out);
        assert_eq!(out, vec![4]);
        assert_eq!(b.bucket_of(4), None);
        assert_eq!(b.bucket_of(2), Some(0));
    }

    #[test]
    fn ledger_rejects_in_order() {
        let mut l = Ledger::new(3, 100, 1);
        assert!(matches!(
            l.check_insert(3, 1),
            Err(QueueError::IdOutOfRange { .. })
        ));
        assert!(matches!(
            l.check_insert(0, 101),
            Err(QueueError::KeyOutOfRange { .. })
        ));
        l.record_insert(0, 5);
        assert!(matches!(
            l.check_insert(0, 5),
            Err(QueueError::DuplicateId { .. })
        ));
        assert_eq!(l.check_decrease(0, 5), Ok(false));
        assert!(matches!(
            l.check_decrease(0, 6),
            Err(QueueError::NotADecrease { .. })
        ));
        assert!(matches!(
            l.check_decrease(1, 2),
            Err(QueueError::UnknownId { .. })
        ));
        l.record_extract(0);
        assert!(matches!(
            l.check_insert(1, 4),
            Err(QueueError::MonotonicityViolation { .. })
        ));
    }

    #[test]
    fn granularity_compares_scaled_keys() {
        let mut l = Ledger::new(2, 100, 4);
        l.record_insert(0, 11);
        l.record_extract(0);
        // 8 and 11 share the scaled key 2.
        assert!(l.check_insert(1, 8).is_ok());
        assert!(l.check_insert(1, 7).is_err());
    }
}
