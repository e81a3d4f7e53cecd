use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::MonotoneQueue;
use crate::arith::ceil_root;
use crate::binary_heap::BinaryHeapQueue;
use crate::dial::DialQueue;
use crate::hot::HotQueue;
use crate::mlb::MultiLevelBuckets;
use crate::radix::RadixHeap;
use crate::radix2::TwoLevelRadixHeap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("maximum key span C must be at least 1")]
    ZeroSpan,
    #[error("level count k must be at least 1")]
    ZeroLevels,
    #[error("inner bucket count delta must be at least 2, got {0}")]
    DeltaTooSmall(u64),
    #[error("width multiplier p must be at least 1")]
    ZeroWidth,
    #[error("width multiplier p = {p} exceeds the minimum arc weight {min_weight}")]
    WidthAboveMinWeight { p: u64, min_weight: u64 },
    #[error("backend {0} does not support a width multiplier other than 1")]
    WidthUnsupported(Backend),
    #[error("max_key {max_key} is below the key span C = {span}")]
    MaxKeyBelowSpan { max_key: u64, span: u64 },
    #[error("max_key {0} is not representable (must be below 2^64 - 2)")]
    MaxKeyTooLarge(u64),
    #[error("{levels} levels of {buckets} buckets overflow a 64-bit key")]
    LevelsOverflow { levels: u32, buckets: u64 },
    #[error("radix buckets of width {delta}^i overflow a 64-bit key for C = {span}")]
    DeltaOverflow { delta: u64, span: u64 },
    #[error("unknown backend {0:?} (expected dial, mlb, radix1, radix2, hot or binheap)")]
    UnknownBackend(String),
}

/// The queue implementations available behind [`MonotoneQueue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    Dial,
    Mlb,
    Radix1,
    Radix2,
    Hot,
    BinaryHeap,
}

impl Backend {
    pub const ALL: [Backend; 6] = [
        Backend::Dial,
        Backend::Mlb,
        Backend::Radix1,
        Backend::Radix2,
        Backend::Hot,
        Backend::BinaryHeap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Dial => "dial",
            Backend::Mlb => "mlb",
            Backend::Radix1 => "radix1",
            Backend::Radix2 => "radix2",
            Backend::Hot => "hot",
            Backend::BinaryHeap => "binheap",
        }
    }

    pub fn uses_levels(self) -> bool {
        matches!(self, Backend::Mlb | Backend::Hot)
    }

    pub fn uses_delta(self) -> bool {
        self == Backend::Radix2
    }

    pub fn uses_threshold(self) -> bool {
        self == Backend::Hot
    }

    /// Whether the wide-bucket multiplier applies to this backend.
    pub fn uses_width(self) -> bool {
        matches!(self, Backend::Mlb | Backend::Hot)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "dial" => Backend::Dial,
            "mlb" => Backend::Mlb,
            "radix1" | "radix" => Backend::Radix1,
            "radix2" => Backend::Radix2,
            "hot" => Backend::Hot,
            "binheap" | "binary-heap" | "heap" => Backend::BinaryHeap,
            other => return Err(ConfigError::UnknownBackend(other.to_string())),
        })
    }
}

/// Construction parameters for any backend. Fields a backend does not use
/// are ignored by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueueConfig {
    /// Number of distinct ids (ids range over `[0, capacity_n)`).
    pub capacity_n: usize,
    pub max_key: u64,
    /// C: the largest spread between the last extracted key and any live key.
    pub max_span: u64,
    /// k for multi-level buckets and hot queues.
    pub levels: u32,
    /// Inner buckets per bucket in the two-level radix heap.
    pub delta: u64,
    /// Hot-queue threshold t; `None` selects [`QueueConfig::default_threshold`].
    pub hot_threshold: Option<usize>,
    /// Wide-bucket multiplier p.
    pub width_multiplier: u64,
}

impl QueueConfig {
    pub fn new(capacity_n: usize, max_span: u64, max_key: u64) -> Self {
        QueueConfig {
            capacity_n,
            max_key,
            max_span,
            levels: 2,
            delta: 4,
            hot_threshold: None,
            width_multiplier: 1,
        }
    }

    /// Configuration for a graph with `n` vertices and maximum arc weight
    /// `max_weight`: keys never exceed `n * C`.
    pub fn for_graph(n: usize, max_weight: u64) -> Self {
        let span = max_weight.max(1);
        let max_key = span.saturating_mul(n.max(1) as u64).min(u64::MAX - 2);
        QueueConfig::new(n, span, max_key.max(span))
    }

    pub fn with_levels(mut self, k: u32) -> Self {
        self.levels = k;
        self
    }

    pub fn with_delta(mut self, delta: u64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_threshold(mut self, t: Option<usize>) -> Self {
        self.hot_threshold = t;
        self
    }

    pub fn with_width(mut self, p: u64) -> Self {
        self.width_multiplier = p;
        self
    }

    /// `max(2, ceil(C^(1/k)))`.
    pub fn default_threshold(&self) -> usize {
        let root = ceil_root(self.max_span.max(1), self.levels.max(1));
        root.max(2).min(usize::MAX as u64) as usize
    }

    pub fn threshold(&self) -> usize {
        self.hot_threshold
            .unwrap_or_else(|| self.default_threshold())
    }

    /// Checks the parameters relevant to `backend`.
    pub fn validate(&self, backend: Backend) -> Result<(), ConfigError> {
        if self.max_span == 0 {
            return Err(ConfigError::ZeroSpan);
        }
        if self.max_key >= u64::MAX - 1 {
            return Err(ConfigError::MaxKeyTooLarge(self.max_key));
        }
        if self.width_multiplier == 0 {
            return Err(ConfigError::ZeroWidth);
        }
        if self.width_multiplier != 1 && !backend.uses_width() {
            return Err(ConfigError::WidthUnsupported(backend));
        }
        match backend {
            Backend::Radix1 | Backend::Radix2 if self.max_key < self.max_span => {
                return Err(ConfigError::MaxKeyBelowSpan {
                    max_key: self.max_key,
                    span: self.max_span,
                })
            }
            _ => {}
        }
        if backend.uses_delta() {
            if self.delta < 2 {
                return Err(ConfigError::DeltaTooSmall(self.delta));
            }
            let k = crate::arith::ceil_log(self.delta, self.max_span.saturating_add(1)) + 1;
            let total = (1..k).try_fold(0u64, |acc, i| {
                crate::arith::checked_pow(self.delta, i).and_then(|w| acc.checked_add(w))
            });
            if total.is_none() {
                return Err(ConfigError::DeltaOverflow {
                    delta: self.delta,
                    span: self.max_span,
                });
            }
        }
        if backend.uses_levels() {
            if self.levels == 0 {
                return Err(ConfigError::ZeroLevels);
            }
            let scaled = self.max_span.div_ceil(self.width_multiplier);
            let d = ceil_root(scaled + 1, self.levels);
            // The top level needs room for one extra block past the window.
            let span = crate::arith::checked_pow(d, self.levels).and_then(|v| v.checked_mul(2));
            if span.is_none() {
                return Err(ConfigError::LevelsOverflow {
                    levels: self.levels,
                    buckets: d,
                });
            }
        }
        Ok(())
    }

    /// Builds a boxed queue of the given kind.
    pub fn build(&self, backend: Backend) -> Result<Box<dyn MonotoneQueue + Send>, ConfigError> {
        self.validate(backend)?;
        Ok(match backend {
            Backend::Dial => Box::new(DialQueue::new(self.max_span, self.capacity_n, self.max_key)),
            Backend::Mlb => Box::new(MultiLevelBuckets::from_config(self)?),
            Backend::Radix1 => {
                Box::new(RadixHeap::new(self.max_span, self.max_key, self.capacity_n))
            }
            Backend::Radix2 => Box::new(TwoLevelRadixHeap::new(
                self.max_span,
                self.max_key,
                self.delta,
                self.capacity_n,
            )),
            Backend::Hot => Box::new(HotQueue::from_config(self)?),
            Backend::BinaryHeap => Box::new(BinaryHeapQueue::new(self.capacity_n, self.max_key)),
        })
    }
}
