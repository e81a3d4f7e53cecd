use std::collections::{BTreeSet, HashMap};

use super::{Element, MonotoneQueue, OpCounters, QueueError};

/// Reference queue: a sorted set of `(key, id)` pairs.
///
/// Ties break lexicographically on `(key, id)`. It is deliberately
/// independent of the bucket machinery so tests can compare against it.
#[derive(Debug, Clone)]
pub struct OracleQueue {
    set: BTreeSet<(u64, usize)>,
    keys: HashMap<usize, u64>,
    capacity: usize,
    max_key: u64,
    last_min: u64,
    counters: OpCounters,
}

impl OracleQueue {
    pub fn new(capacity: usize, max_key: u64) -> Self {
        OracleQueue {
            set: BTreeSet::new(),
            keys: HashMap::new(),
            capacity,
            max_key,
            last_min: 0,
            counters: OpCounters::default(),
        }
    }

    pub fn o_insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        if id >= self.capacity {
            return Err(QueueError::IdOutOfRange {
                id,
                capacity: self.capacity,
            });
        }
        if let Some(&existing_key) = self.keys.get(&id) {
            return Err(QueueError::DuplicateId { id, existing_key });
        }
        if key > self.max_key {
            return Err(QueueError::KeyOutOfRange {
                id,
                key,
                max_key: self.max_key,
            });
        }
        if key < self.last_min {
            return Err(QueueError::MonotonicityViolation {
                id,
                key,
                last_min: self.last_min,
            });
        }
        self.keys.insert(id, key);
        self.set.insert((key, id));
        self.counters.inserts += 1;
        Ok(())
    }

    pub fn o_decrease(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        let current = *self.keys.get(&id).ok_or(QueueError::UnknownId { id })?;
        if new_key > current {
            return Err(QueueError::NotADecrease {
                id,
                current,
                requested: new_key,
            });
        }
        if new_key == current {
            return Ok(());
        }
        if new_key < self.last_min {
            return Err(QueueError::MonotonicityViolation {
                id,
                key: new_key,
                last_min: self.last_min,
            });
        }
        self.set.remove(&(current, id));
        self.set.insert((new_key, id));
        self.keys.insert(id, new_key);
        self.counters.decreases += 1;
        Ok(())
    }

    pub fn o_extract(&mut self) -> Option<Element> {
        let (key, id) = self.set.pop_first()?;
        self.keys.remove(&id);
        self.last_min = key;
        self.counters.extracts += 1;
        Some(Element { id, key })
    }

    /// Smallest queued key, if any.
    pub fn peek_key(&self) -> Option<u64> {
        self.set.first().map(|&(k, _)| k)
    }

    /// Largest queued key, if any.
    pub fn max_queued_key(&self) -> Option<u64> {
        self.set.last().map(|&(k, _)| k)
    }

    /// Queued ids in ascending id order.
    pub fn ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.keys.keys().copied().collect();
        ids.sort_unstable();
        ids
    }
}

impl MonotoneQueue for OracleQueue {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        self.o_insert(id, key)
    }

    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        self.o_decrease(id, new_key)
    }

    fn extract_min(&mut self) -> Option<Element> {
        self.o_extract()
    }

    fn len(&self) -> usize {
        self.set.len()
    }

    fn key_of(&self, id: usize) -> Option<u64> {
        self.keys.get(&id).copied()
    }

    fn last_min(&self) -> u64 {
        self.last_min
    }

    fn counters(&self) -> OpCounters {
        self.counters
    }

    fn name(&self) -> &'static str {
        "oracle"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_tie_break() {
        let mut q = OracleQueue::new(4, 100);
        q.o_insert(1, 1).unwrap();
        q.o_insert(0, 1).unwrap();
        assert_eq!(q.o_extract(), Some(Element::new(0, 1)));
    }

    #[test]
    fn decrease_reorders() {
        let mut q = OracleQueue::new(4, 100);
        q.o_insert(1, 5).unwrap();
        q.o_insert(2, 9).unwrap();
        q.o_decrease(2, 3).unwrap();
        assert_eq!(q.o_extract(), Some(Element::new(2, 3)));
        assert_eq!(q.o_extract(), Some(Element::new(1, 5)));
        assert_eq!(q.o_extract(), None);
    }

    #[test]
    fn rejects_like_the_backends() {
        let mut q = OracleQueue::new(4, 100);
        q.o_insert(0, 5).unwrap();
        assert!(matches!(
            q.o_insert(0, 5),
            Err(QueueError::DuplicateId { .. })
        ));
        assert!(matches!(
            q.o_decrease(3, 1),
            Err(QueueError::UnknownId { .. })
        ));
        assert!(matches!(
            q.o_decrease(0, 6),
            Err(QueueError::NotADecrease { .. })
        ));
        q.o_extract();
        assert!(matches!(
            q.o_insert(1, 4),
            Err(QueueError::MonotonicityViolation { .. })
        ));
        assert!(matches!(
            q.o_insert(1, 101),
            Err(QueueError::KeyOutOfRange { .. })
        ));
    }
}
