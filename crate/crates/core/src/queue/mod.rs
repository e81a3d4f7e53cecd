//! The monotone priority queue contract shared by every backend.
//!
//! A monotone queue never hands out a key smaller than one it already
//! returned. Every backend enforces that discipline on insert and
//! decrease-key, so a caller that breaks it gets a [`QueueError`] instead of
//! a silently corrupted structure.

mod config;
pub(crate) mod ledger;
mod oracle;

pub use config::{Backend, ConfigError, QueueConfig};
pub use oracle::OracleQueue;

use std::fmt;

use thiserror::Error;

/// A queued `(id, key)` pair. Ids are dense vertex handles in `[0, capacity_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub id: usize,
    pub key: u64,
}

impl Element {
    pub fn new(id: usize, key: u64) -> Self {
        Element { id, key }
    }
}

/// Operation tallies. All fields only ever grow over a queue's lifetime.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub inserts: u64,
    pub extracts: u64,
    pub decreases: u64,
    /// Empty buckets stepped over while looking for the next minimum.
    pub empty_scan_steps: u64,
    /// Buckets redistributed into finer buckets.
    pub expansions: u64,
    /// Elements relocated to a different bucket after their first placement.
    pub element_moves: u64,
    pub heap_ops: u64,
}

impl OpCounters {
    /// Field names in the order used by [`OpCounters::values`].
    pub const FIELDS: [&'static str; 7] = [
        "inserts",
        "extracts",
        "decreases",
        "empty_scan_steps",
        "expansions",
        "element_moves",
        "heap_ops",
    ];

    pub fn values(&self) -> [u64; 7] {
        [
            self.inserts,
            self.extracts,
            self.decreases,
            self.empty_scan_steps,
            self.expansions,
            self.element_moves,
            self.heap_ops,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueueError {
    #[error("key {key} for id {id} is below the last extracted minimum {last_min}")]
    MonotonicityViolation { id: usize, key: u64, last_min: u64 },
    #[error("id {id} is already queued (key {existing_key})")]
    DuplicateId { id: usize, existing_key: u64 },
    #[error("id {id} is not queued")]
    UnknownId { id: usize },
    #[error("id {id} is outside the queue capacity {capacity}")]
    IdOutOfRange { id: usize, capacity: usize },
    #[error("decrease-key for id {id} would raise its key from {current} to {requested}")]
    NotADecrease {
        id: usize,
        current: u64,
        requested: u64,
    },
    #[error("key {key} for id {id} exceeds max_key {max_key}")]
    KeyOutOfRange { id: usize, key: u64, max_key: u64 },
    #[error("key {key} for id {id} lies outside the representable window ending at {window_end}")]
    WindowViolation {
        id: usize,
        key: u64,
        window_end: u64,
    },
}

/// Uniform interface over all monotone queue backends.
///
/// `insert` and `decrease_key` validate the monotone discipline before
/// touching the structure; a rejected call leaves the queue unchanged.
/// Ties between equal keys are broken in a backend-defined order.
pub trait MonotoneQueue {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError>;

    /// Lowers the key of a queued id. Lowering to the current key is a no-op.
    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError>;

    fn extract_min(&mut self) -> Option<Element>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Current key of `id`, or `None` when it is not queued.
    fn key_of(&self, id: usize) -> Option<u64>;

    /// Key of the most recent extraction (0 before the first one).
    fn last_min(&self) -> u64;

    fn counters(&self) -> OpCounters;

    /// Largest number of distinct levels (bucket structures) or buckets
    /// (radix heaps) any single element has occupied. Zero for backends that
    /// do not track placements.
    fn max_placements(&self) -> u32 {
        0
    }

    fn name(&self) -> &'static str;
}

impl<Q: MonotoneQueue + ?Sized> MonotoneQueue for Box<Q> {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        (**self).insert(id, key)
    }
    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        (**self).decrease_key(id, new_key)
    }
    fn extract_min(&mut self) -> Option<Element> {
        (**self).extract_min()
    }
    fn len(&self) -> usize {
        (**self).len()
    }
    fn key_of(&self, id: usize) -> Option<u64> {
        (**self).key_of(id)
    }
    fn last_min(&self) -> u64 {
        (**self).last_min()
    }
    fn counters(&self) -> OpCounters {
        (**self).counters()
    }
    fn max_placements(&self) -> u32 {
        (**self).max_placements()
    }
    fn name(&self) -> &'static str {
        (**self).name()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.id, self.key)
    }
}
