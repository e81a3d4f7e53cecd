//! Exact integer helpers for bucket counts. No floating point anywhere.

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Smallest `d >= 1` with `d^k >= x`.
pub fn ceil_root(x: u64, k: u32) -> u64 {
    assert!(k >= 1, "root degree must be positive");
    if x <= 1 {
        return 1;
    }
    if k == 1 {
        return x;
    }
    let reaches = |d: u64| checked_pow(d, k).is_none_or(|v| v >= x);
    // Binary search over [1, x]; monotone predicate.
    let (mut lo, mut hi) = (1u64, x);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Smallest `e` with `base^e >= x` (that is, the ceiling of `log_base x`).
pub fn ceil_log(base: u64, x: u64) -> u32 {
    assert!(base >= 2, "logarithm base must be at least 2");
    let mut e = 0u32;
    let mut acc: u64 = 1;
    while acc < x {
        acc = match acc.checked_mul(base) {
            Some(v) => v,
            None => return e + 1,
        };
        e += 1;
    }
    e
}
