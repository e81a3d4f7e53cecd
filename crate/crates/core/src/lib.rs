//! Monotone priority queues for shortest-path search.
//!
//! Backends share the [`MonotoneQueue`] contract:
//!
//! * [`DialQueue`]: `C + 1` circular buckets.
//! * [`MultiLevelBuckets`]: `k` levels of `ceil((C + 1)^(1/k))` buckets.
//! * [`HotQueue`]: multi-level buckets with a binary heap over small buckets.
//! * [`RadixHeap`] and [`TwoLevelRadixHeap`]: radix heaps with power-of-two
//!   and power-of-delta bucket widths.
//! * [`BinaryHeapQueue`]: a plain addressable binary heap, for reference.
//!
//! [`sssp`] runs Dijkstra over any of them and verifies the result.

pub mod arith;
pub mod batch;
pub mod binary_heap;
pub mod dial;
pub mod hot;
pub mod mlb;
pub mod queue;
pub mod radix;
pub mod radix2;
pub mod sssp;

pub use binary_heap::{BinaryHeapQueue, IndexedBinaryHeap};
pub use dial::DialQueue;
pub use hot::HotQueue;
pub use mlb::{MultiLevelBuckets, Slot};
pub use queue::{
    Backend, ConfigError, Element, MonotoneQueue, OpCounters, OracleQueue, QueueConfig, QueueError,
};
pub use radix::RadixHeap;
pub use radix2::TwoLevelRadixHeap;
