#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use monoqueue::MonotoneQueue;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One scripted step. The fields are raw choices interpreted against the
/// live state, so any sequence of steps is a valid monotone workload.
#[derive(Debug, Clone, Copy)]
pub struct Step {
    pub op: u8,
    pub a: u64,
    pub b: u64,
}

pub fn random_steps(len: usize, seed: u64) -> Vec<Step> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| Step {
            op: rng.random(),
            a: rng.random(),
            b: rng.random(),
        })
        .collect()
}

#[derive(Debug, Default, Clone)]
pub struct Outcome {
    pub extracted: Vec<(usize, u64)>,
    pub max_live: usize,
}

/// Runs `steps` against `q` and a reference model, then drains the queue.
///
/// Inserted keys lie in `[m, m + span]` where `m` is the largest key
/// extracted so far; decreases land in `[m, current]`. Each extraction must
/// return an id holding the minimum key, compared at granularity `p`.
/// `check` runs after every step.
pub fn drive<Q: MonotoneQueue>(
    q: &mut Q,
    n: usize,
    span: u64,
    p: u64,
    steps: &[Step],
    mut check: impl FnMut(&Q) -> Result<(), String>,
) -> Result<Outcome, String> {
    let mut keys: HashMap<usize, u64> = HashMap::new();
    let mut order: BTreeSet<(u64, usize)> = BTreeSet::new();
    let mut live: Vec<usize> = Vec::new();
    let mut floor = 0u64;
    let mut out = Outcome::default();

    let extract = |q: &mut Q,
                   keys: &mut HashMap<usize, u64>,
                   order: &mut BTreeSet<(u64, usize)>,
                   live: &mut Vec<usize>,
                   floor: &mut u64,
                   out: &mut Outcome|
     -> Result<(), String> {
        let expected = order.first().copied();
        let got = q.extract_min();
        match (expected, got) {
            (None, None) => Ok(()),
            (Some((min, _)), Some(e)) => {
                let key = keys
                    .remove(&e.id)
                    .ok_or_else(|| format!("extracted unknown id {}", e.id))?;
                if key != e.key {
                    return Err(format!(
                        "id {} returned key {} but holds {key}",
                        e.id, e.key
                    ));
                }
                if key / p != min / p {
                    return Err(format!("extracted key {key} but minimum is {min}"));
                }
                order.remove(&(key, e.id));
                live.retain(|&x| x != e.id);
                *floor = (*floor).max(key);
                out.extracted.push((e.id, key));
                Ok(())
            }
            (e, g) => Err(format!("expected {e:?}, queue returned {g:?}")),
        }
    };

    for s in steps {
        match s.op % 4 {
            0 | 1 if live.len() < n => {
                let start = (s.a % n as u64) as usize;
                let id = (0..n)
                    .map(|i| (start + i) % n)
                    .find(|id| !keys.contains_key(id))
                    .expect("a free id");
                let key = floor + s.b % (span + 1);
                q.insert(id, key)
                    .map_err(|e| format!("insert({id}, {key}): {e}"))?;
                keys.insert(id, key);
                order.insert((key, id));
                live.push(id);
            }
            2 if !live.is_empty() => {
                let id = live[(s.a % live.len() as u64) as usize];
                let cur = keys[&id];
                let lo = floor.min(cur);
                let new = lo + s.b % (cur - lo + 1);
                q.decrease_key(id, new)
                    .map_err(|e| format!("decrease({id}, {cur} -> {new}): {e}"))?;
                order.remove(&(cur, id));
                order.insert((new, id));
                keys.insert(id, new);
            }
            _ => extract(q, &mut keys, &mut order, &mut live, &mut floor, &mut out)?,
        }
        if q.len() != keys.len() {
            return Err(format!("len {} but model holds {}", q.len(), keys.len()));
        }
        out.max_live = out.max_live.max(keys.len());
        check(q)?;
    }
    while !keys.is_empty() {
        extract(q, &mut keys, &mut order, &mut live, &mut floor, &mut out)?;
        check(q)?;
    }
    if q.extract_min().is_some() {
        return Err("queue returned an element after draining".into());
    }
    Ok(out)
}

/// Non-decreasing at granularity `p`.
pub fn is_monotone(keys: impl IntoIterator<Item = u64>, p: u64) -> bool {
    let mut last = 0;
    keys.into_iter().all(|k| {
        let ok = k / p >= last;
        last = last.max(k / p);
        ok
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Insert(usize, u64),
    Decrease(usize, u64),
    Extract,
}

/// A fixed operation sequence in which live keys are always pairwise
/// distinct, so every correct queue extracts the same `(id, key)` sequence.
/// Inserts and extracts are balanced; keys stay within `span` of the last
/// extracted key. Requires `span >= max_live`.
pub fn distinct_key_script(len: usize, span: u64, max_live: usize, seed: u64) -> Vec<Op> {
    assert!(span >= max_live as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut live: BTreeSet<(u64, usize)> = BTreeSet::new();
    let mut key_of: HashMap<usize, u64> = HashMap::new();
    let mut taken: BTreeSet<u64> = BTreeSet::new();
    let mut free: Vec<usize> = (0..max_live).rev().collect();
    let mut floor = 0u64;
    let mut ops = Vec::with_capacity(len);

    let fresh = |rng: &mut ChaCha8Rng, taken: &BTreeSet<u64>, lo: u64, hi: u64| -> Option<u64> {
        let start = rng.random_range(lo..=hi);
        (start..=hi).chain(lo..start).find(|k| !taken.contains(k))
    };

    while ops.len() < len {
        let roll: u32 = rng.random_range(0..10);
        if roll < 4 && !free.is_empty() {
            let key =
                fresh(&mut rng, &taken, floor, floor + span).expect("window wider than live set");
            let id = free.pop().unwrap();
            live.insert((key, id));
            key_of.insert(id, key);
            taken.insert(key);
            ops.push(Op::Insert(id, key));
        } else if roll < 6 && !live.is_empty() {
            let pick = rng.random_range(0..live.len());
            let &(cur, id) = live.iter().nth(pick).unwrap();
            if let Some(key) = fresh(&mut rng, &taken, floor, cur).filter(|&k| k < cur) {
                live.remove(&(cur, id));
                taken.remove(&cur);
                live.insert((key, id));
                taken.insert(key);
                key_of.insert(id, key);
                ops.push(Op::Decrease(id, key));
            }
        } else if let Some((key, id)) = live.pop_first() {
            taken.remove(&key);
            key_of.remove(&id);
            free.push(id);
            floor = key;
            ops.push(Op::Extract);
        }
    }
    ops
}

/// Applies `ops`, then drains. Returns the extracted `(id, key)` pairs.
pub fn replay<Q: MonotoneQueue + ?Sized>(
    q: &mut Q,
    ops: &[Op],
    mut check: impl FnMut(&Q) -> Result<(), String>,
) -> Result<Vec<(usize, u64)>, String> {
    let mut out = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        match *op {
            Op::Insert(id, key) => q.insert(id, key).map_err(|e| format!("op {i}: {e}"))?,
            Op::Decrease(id, key) => q
                .decrease_key(id, key)
                .map_err(|e| format!("op {i}: {e}"))?,
            Op::Extract => {
                let e = q
                    .extract_min()
                    .ok_or_else(|| format!("op {i}: queue empty"))?;
                out.push((e.id, e.key));
            }
        }
        check(q).map_err(|e| format!("after op {i}: {e}"))?;
    }
    while let Some(e) = q.extract_min() {
        out.push((e.id, e.key));
    }
    Ok(out)
}
