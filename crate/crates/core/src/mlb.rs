//! k-level bucket queue.
//!
//! Level `i` holds `d` buckets of width `d^i`; the active bucket of level
//! `i` is expanded into level `i - 1`. Instead of a round counter, every
//! level keeps an explicit lower bound, so bucket ranges are plain integers:
//!
//! ```text
//! bucket (i, j) covers [lower(i) + j*d^i, lower(i) + (j+1)*d^i - 1]
//! lower(i-1) = lower(i) + alpha(i)*d^i
//! ```
//!
//! The top level is circular: bucket `j` there holds the key block
//! `b = floor(y / d^(k-1))` with `b mod d = j`. Live keys span at most
//! `d^k` values, which can reach one block past the current round; that
//! block is parked in a separate wrap slot until the top level advances.
//!
//! Keys are scaled by the wide-bucket multiplier `p` before indexing
//! (`y = key / p`); original keys are kept for return values.

use crate::arith::{ceil_root, checked_pow};
use crate::queue::ledger::{Buckets, Ledger};
use crate::queue::{ConfigError, Element, MonotoneQueue, OpCounters, QueueConfig, QueueError};

/// Position of an element: a level and a bucket index on that level.
/// On the top level, `bucket == d` denotes the wrap slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub level: usize,
    pub bucket: usize,
}

#[derive(Debug, Clone)]
pub struct MultiLevelBuckets {
    levels: usize,
    d: usize,
    width_multiplier: u64,
    /// `pow[i] = d^i` for `i` in `0..=levels`.
    pow: Vec<u64>,
    buckets: Buckets,
    level_len: Vec<usize>,
    alpha: Vec<usize>,
    lower: Vec<u64>,
    /// Absolute block index of the active top bucket.
    top_block: u64,
    last_scaled: u64,
    pub(crate) ledger: Ledger,
    scratch: Vec<usize>,
}

impl MultiLevelBuckets {
    /// `span` is C, `levels` is k and `width` is p.
    pub fn new(span: u64, levels: u32, width: u64, capacity_n: usize, max_key: u64) -> Self {
        assert!(span >= 1 && levels >= 1 && width >= 1);
        let scaled_span = span.div_ceil(width);
        let d = ceil_root(scaled_span + 1, levels);
        let pow: Vec<u64> = (0..=levels)
            .map(|i| checked_pow(d, i).expect("d^k must fit in 64 bits"))
            .collect();
        let levels = levels as usize;
        let d = usize::try_from(d).expect("bucket count must fit in memory");
        MultiLevelBuckets {
            levels,
            d,
            width_multiplier: width,
            pow,
            buckets: Buckets::new(levels * d + 1, capacity_n),
            level_len: vec![0; levels],
            alpha: vec![0; levels],
            lower: vec![0; levels],
            top_block: 0,
            last_scaled: 0,
            ledger: Ledger::new(capacity_n, max_key, width),
            scratch: Vec::new(),
        }
    }

    pub fn from_config(config: &QueueConfig) -> Result<Self, ConfigError> {
        config.validate(crate::queue::Backend::Mlb)?;
        Ok(Self::new(
            config.max_span,
            config.levels,
            config.width_multiplier,
            config.capacity_n,
            config.max_key,
        ))
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Buckets per level.
    pub fn buckets_per_level(&self) -> usize {
        self.d
    }

    pub fn width_multiplier(&self) -> u64 {
        self.width_multiplier
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    /// Explicit level lower bounds, in scaled-key units.
    pub fn lower(&self) -> &[u64] {
        &self.lower
    }

    pub fn level_len(&self, level: usize) -> usize {
        self.level_len[level]
    }

    pub fn slot_of(&self, id: usize) -> Option<Slot> {
        self.buckets.bucket_of(id).map(|b| self.slot_at(b))
    }

    /// Number of elements in one bucket.
    pub fn bucket_len(&self, slot: Slot) -> usize {
        self.buckets.len_of(self.index(slot))
    }

    /// Ids stored in one bucket.
    pub fn bucket_members(&self, slot: Slot) -> &[usize] {
        self.buckets.members(self.index(slot))
    }

    #[inline]
    pub(crate) fn scaled(&self, key: u64) -> u64 {
        key / self.width_multiplier
    }

    #[inline]
    fn top(&self) -> usize {
        self.levels - 1
    }

    #[inline]
    fn wrap_index(&self) -> usize {
        self.levels * self.d
    }

    #[inline]
    pub(crate) fn index(&self, slot: Slot) -> usize {
        if slot.bucket == self.d {
            debug_assert_eq!(slot.level, self.top());
            self.wrap_index()
        } else {
            slot.level * self.d + slot.bucket
        }
    }

    #[inline]
    fn slot_at(&self, index: usize) -> Slot {
        if index == self.wrap_index() {
            Slot {
                level: self.top(),
                bucket: self.d,
            }
        } else {
            Slot {
                level: index / self.d,
                bucket: index % self.d,
            }
        }
    }

    #[inline]
    fn level_contains(&self, level: usize, y: u64) -> bool {
        y >= self.lower[level] && y - self.lower[level] < self.pow[level + 1]
    }

    /// Slot on level `level` for scaled key `y`, which must lie in that level.
    #[inline]
    fn slot_on_level(&self, level: usize, y: u64) -> Slot {
        if level == self.top() {
            if self.levels == 1 {
                return Slot {
                    level,
                    bucket: (y % self.d as u64) as usize,
                };
            }
            let block = y / self.pow[level];
            debug_assert!(block > self.top_block && block <= self.top_block + self.d as u64);
            let bucket = if block == self.top_block + self.d as u64 {
                self.d
            } else {
                (block % self.d as u64) as usize
            };
            Slot { level, bucket }
        } else {
            Slot {
                level,
                bucket: ((y - self.lower[level]) / self.pow[level]) as usize,
            }
        }
    }

    /// Lowest level whose range holds `key`, and the bucket there.
    /// Searches upward from level 0.
    pub fn find_slot(&self, key: u64) -> Slot {
        let y = self.scaled(key);
        let level = (0..self.top())
            .find(|&i| self.level_contains(i, y))
            .unwrap_or(self.top());
        self.slot_on_level(level, y)
    }

    /// Same result as [`find_slot`](Self::find_slot) for keys that lie in
    /// `from_level`'s range, searching downward.
    fn find_slot_below(&self, y: u64, from_level: usize) -> Slot {
        let mut level = from_level;
        while level > 0 && self.level_contains(level - 1, y) {
            level -= 1;
        }
        self.slot_on_level(level, y)
    }

    /// Largest scaled key the structure can currently hold.
    fn window_end_scaled(&self) -> u64 {
        if self.levels == 1 {
            self.last_scaled.saturating_add(self.d as u64 - 1)
        } else {
            let top = self.pow[self.top()];
            (self.top_block + self.d as u64 + 1)
                .saturating_mul(top)
                .saturating_sub(1)
        }
    }

    pub(crate) fn check_window(&self, id: usize, key: u64) -> Result<(), QueueError> {
        let end = self.window_end_scaled();
        if self.scaled(key) > end {
            let window_end = end
                .saturating_mul(self.width_multiplier)
                .saturating_add(self.width_multiplier - 1);
            return Err(QueueError::WindowViolation {
                id,
                key,
                window_end,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn place(&mut self, id: usize, slot: Slot) {
        let idx = self.index(slot);
        self.buckets.push(idx, id);
        self.level_len[slot.level] += 1;
    }

    #[inline]
    pub(crate) fn unplace(&mut self, id: usize) -> Slot {
        let idx = self.buckets.remove(id);
        let slot = self.slot_at(idx);
        self.level_len[slot.level] -= 1;
        slot
    }

    /// Moves a queued element to `to`, updating move and placement tallies.
    pub(crate) fn relocate(&mut self, id: usize, from: Slot, to: Slot) {
        if from == to {
            return;
        }
        self.unplace(id);
        self.place(id, to);
        self.ledger.counters.element_moves += 1;
        if from.level != to.level {
            self.ledger.record_placement(id);
        }
    }

    /// Inserts after validation has passed; returns the chosen slot.
    pub(crate) fn insert_unchecked(&mut self, id: usize, key: u64) -> Slot {
        self.ledger.record_insert(id, key);
        let slot = self.find_slot(key);
        self.place(id, slot);
        slot
    }

    /// Applies a validated strict decrease.
    pub(crate) fn decrease_unchecked(&mut self, id: usize, new_key: u64) {
        let from = self.slot_of(id).expect("decreased id is queued");
        self.ledger.record_decrease(id, new_key);
        let to = self.find_slot_below(self.scaled(new_key), from.level);
        self.relocate(id, from, to);
    }

    /// Finds the lowest non-empty level above 0 and advances its active
    /// index to the first non-empty bucket, fixing the bound of the level
    /// below. Level 0 must be empty and the queue non-empty.
    fn locate_next(&mut self) -> Slot {
        let level = (1..self.levels)
            .find(|&i| self.level_len[i] > 0)
            .expect("a non-empty level above 0");
        if level < self.top() {
            let mut j = self.alpha[level] + 1;
            while self.buckets.is_empty(level * self.d + j) {
                self.ledger.counters.empty_scan_steps += 1;
                j += 1;
            }
            self.alpha[level] = j;
            self.lower[level - 1] = self.lower[level] + j as u64 * self.pow[level];
            return Slot { level, bucket: j };
        }

        let d = self.d;
        let old = self.alpha[level];
        let mut step = 1;
        while step < d && self.buckets.is_empty(level * d + (old + step) % d) {
            self.ledger.counters.empty_scan_steps += 1;
            step += 1;
        }
        self.top_block += step as u64;
        // The wrap block now maps onto the previously active bucket.
        let wrap = self.wrap_index();
        if !self.buckets.is_empty(wrap) {
            let mut parked = std::mem::take(&mut self.scratch);
            self.buckets.drain_into(wrap, &mut parked);
            self.ledger.counters.element_moves += parked.len() as u64;
            for &id in &parked {
                self.buckets.push(level * d + old, id);
            }
            parked.clear();
            self.scratch = parked;
        }
        let j = (old + step) % d;
        self.alpha[level] = j;
        let top_width = self.pow[level];
        self.lower[level] = (self.top_block - j as u64) * top_width;
        self.lower[level - 1] = self.top_block * top_width;
        Slot { level, bucket: j }
    }

    /// Expansion: locates the bucket holding the minimum and distributes it
    /// downward until level 0 is non-empty. With a threshold, stops at the
    /// first bucket (level >= 1) about to be expanded that holds at most
    /// `threshold` elements and returns it.
    pub(crate) fn descend(&mut self, threshold: Option<usize>) -> Option<Slot> {
        let mut slot = self.locate_next();
        loop {
            let idx = self.index(slot);
            if let Some(t) = threshold {
                if self.buckets.len_of(idx) <= t {
                    return Some(slot);
                }
            }
            let below = slot.level - 1;
            let start = self.lower[below];
            let width = self.pow[below];
            let mut moving = std::mem::take(&mut self.scratch);
            self.buckets.drain_into(idx, &mut moving);
            self.level_len[slot.level] -= moving.len();
            self.level_len[below] += moving.len();
            self.ledger.counters.expansions += 1;
            self.ledger.counters.element_moves += moving.len() as u64;
            let mut first = self.d;
            for &id in &moving {
                let y = self.scaled(self.ledger.key(id));
                let j = ((y - start) / width) as usize;
                debug_assert!(j < self.d);
                self.buckets.push(below * self.d + j, id);
                self.ledger.record_placement(id);
                first = first.min(j);
            }
            moving.clear();
            self.scratch = moving;
            self.alpha[below] = first;
            if below == 0 {
                return None;
            }
            self.lower[below - 1] = self.lower[below] + first as u64 * self.pow[below];
            slot = Slot {
                level: below,
                bucket: first,
            };
        }
    }

    /// Re-anchors the (empty) levels below `level` at scaled key `y`, which
    /// must lie in the active bucket of `level`.
    pub(crate) fn reposition_below(&mut self, level: usize, y: u64) {
        for i in (0..level).rev() {
            debug_assert_eq!(self.level_len[i], 0);
            debug_assert!(self.level_contains(i, y));
            let j = ((y - self.lower[i]) / self.pow[i]) as usize;
            self.alpha[i] = j;
            if i > 0 {
                self.lower[i - 1] = self.lower[i] + j as u64 * self.pow[i];
            }
        }
    }

    /// Key range `[start, end]` (scaled) covered by a bucket on a level
    /// below the top, or by the active top bucket.
    pub(crate) fn active_range(&self, slot: Slot) -> (u64, u64) {
        debug_assert!(slot.level >= 1);
        let start = self.lower[slot.level - 1];
        (start, start + self.pow[slot.level] - 1)
    }

    pub(crate) fn remove_from_bucket(&mut self, id: usize) {
        self.unplace(id);
    }

    pub(crate) fn note_extracted(&mut self, id: usize) -> Element {
        let key = self.ledger.record_extract(id);
        self.last_scaled = self.last_scaled.max(self.scaled(key));
        Element { id, key }
    }

    pub(crate) fn last_scaled(&self) -> u64 {
        self.last_scaled
    }

    fn pop_bottom(&mut self) -> Element {
        let d = self.d;
        if self.levels == 1 {
            while self.buckets.is_empty(self.alpha[0]) {
                self.ledger.counters.empty_scan_steps += 1;
                self.alpha[0] = (self.alpha[0] + 1) % d;
            }
        } else {
            while self.buckets.is_empty(self.alpha[0]) {
                self.ledger.counters.empty_scan_steps += 1;
                self.alpha[0] += 1;
                debug_assert!(self.alpha[0] < d);
            }
        }
        let id = self
            .buckets
            .pop(self.alpha[0])
            .expect("non-empty bottom bucket");
        self.level_len[0] -= 1;
        self.note_extracted(id)
    }

    /// Pops from level 0, expanding first if it is empty. Queue must be
    /// non-empty.
    pub(crate) fn extract_nonempty(&mut self) -> Element {
        if self.level_len[0] == 0 {
            self.descend(None);
        }
        self.pop_bottom()
    }

    /// Extraction used by the hot queue: `threshold` may stop expansion at
    /// a small bucket, which is returned instead of an element.
    pub(crate) fn extract_or_stop(&mut self, threshold: usize) -> Result<Element, Slot> {
        if self.level_len[0] == 0 {
            if let Some(slot) = self.descend(Some(threshold)) {
                return Err(slot);
            }
        }
        Ok(self.pop_bottom())
    }

    /// Checks that the active bucket of every level `i >= 1` spans exactly
    /// the bounds of level `i - 1`.
    pub fn check_active_nesting(&self) -> Result<(), String> {
        for i in 1..self.levels {
            let start = self.lower[i] + self.alpha[i] as u64 * self.pow[i];
            let end = start + self.pow[i] - 1;
            let below = (self.lower[i - 1], self.lower[i - 1] + self.pow[i] - 1);
            if (start, end) != below {
                return Err(format!(
                    "level {i}: active bucket {} spans [{start}, {end}] but level {} spans [{}, {}]",
                    self.alpha[i],
                    i - 1,
                    below.0,
                    below.1
                ));
            }
        }
        Ok(())
    }

    /// Full sweep: every element lies in its bucket's range, level sizes
    /// match, and no element precedes the last extracted key.
    pub fn check_invariants(&self) -> Result<(), String> {
        self.check_invariants_with(None)
    }

    /// As [`check_invariants`](Self::check_invariants), but `hot` may hold
    /// elements even though it is the active bucket of its level.
    pub fn check_invariants_with(&self, hot: Option<Slot>) -> Result<(), String> {
        self.check_active_nesting()?;
        let mut total = 0;
        for level in 0..self.levels {
            let mut count = 0;
            let extra = usize::from(level == self.top());
            for j in 0..self.d + extra {
                let slot = Slot { level, bucket: j };
                for &id in self.buckets.members(self.index(slot)) {
                    count += 1;
                    let y = self.scaled(self.ledger.key(id));
                    if y < self.last_scaled {
                        return Err(format!("id {id} below the last extracted key"));
                    }
                    let (lo, hi) = self.bucket_range(slot);
                    if y < lo || y > hi {
                        return Err(format!(
                            "id {id} (scaled key {y}) in {slot:?} outside [{lo}, {hi}]"
                        ));
                    }
                    if level > 0
                        && j == self.alpha[level]
                        && hot != Some(slot)
                        && !(level == self.top() && self.levels == 1)
                    {
                        return Err(format!("id {id} in expanded bucket {slot:?}"));
                    }
                    if level < self.top() && j < self.alpha[level] {
                        return Err(format!("id {id} left of the active bucket in {slot:?}"));
                    }
                }
            }
            if count != self.level_len[level] {
                return Err(format!(
                    "level {level} count {} but holds {count}",
                    self.level_len[level]
                ));
            }
            total += count;
        }
        if total != self.ledger.len() {
            return Err(format!(
                "{total} stored elements but len {}",
                self.ledger.len()
            ));
        }
        Ok(())
    }

    /// Inclusive scaled-key range of a bucket.
    pub fn bucket_range(&self, slot: Slot) -> (u64, u64) {
        let w = self.pow[slot.level];
        if slot.level == self.top() {
            if self.levels == 1 {
                // Circular single level: the key congruent to the bucket
                // within the window starting at the last extracted key.
                let base = self.last_scaled;
                let off =
                    (slot.bucket as u64 + self.d as u64 - base % self.d as u64) % self.d as u64;
                return (base + off, base + off);
            }
            let d = self.d as u64;
            let block = if slot.bucket == self.d {
                self.top_block + d
            } else {
                let off = (slot.bucket as u64 + d - self.alpha[slot.level] as u64) % d;
                self.top_block + off
            };
            return (block * w, block * w + w - 1);
        }
        let start = self.lower[slot.level] + slot.bucket as u64 * w;
        (start, start + w - 1)
    }
}

impl MonotoneQueue for MultiLevelBuckets {
    fn insert(&mut self, id: usize, key: u64) -> Result<(), QueueError> {
        self.ledger.check_insert(id, key)?;
        self.check_window(id, key)?;
        self.insert_unchecked(id, key);
        Ok(())
    }

    fn decrease_key(&mut self, id: usize, new_key: u64) -> Result<(), QueueError> {
        if self.ledger.check_decrease(id, new_key)? {
            self.decrease_unchecked(id, new_key);
        }
        Ok(())
    }

    fn extract_min(&mut self) -> Option<Element> {
        if self.ledger.len() == 0 {
            return None;
        }
        Some(self.extract_nonempty())
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
        "mlb"
    }
}
