//! Segmented multiplicative sieve over `1..=x`.
//!
//! Each segment is factored independently against the primes up to `√x`, so
//! segments run in parallel and results are combined in segment order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::primes_up_to;

pub const SEGMENT_LEN: u64 = 1 << 20;

/// Values of a multiplicative function `f` on one segment, given its values
/// `local(p, e)` on prime powers.
pub(crate) fn segment_values<L>(lo: u64, hi: u64, small_primes: &[u64], local: &L) -> Result<Vec<u64>>
where
    L: Fn(u64, u32) -> u64,
{
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).collect();
    let mut val = vec![1u64; len];
    for &p in small_primes {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut n = first;
        while n < hi {
            let i = (n - lo) as usize;
            let mut e = 0u32;
            while rest[i] % p == 0 {
                rest[i] /= p;
                e += 1;
            }
            val[i] = val[i]
                .checked_mul(local(p, e))
                .ok_or(Error::Overflow("multiplicative sieve"))?;
            n += p;
        }
    }
    for i in 0..len {
        if rest[i] > 1 {
            val[i] = val[i]
                .checked_mul(local(rest[i], 1))
                .ok_or(Error::Overflow("multiplicative sieve"))?;
        }
    }
    if lo == 0 {
        val[0] = 0;
    }
    Ok(val)
}

/// Runs `per_segment(lo, values)` on every segment of `1..=x` in parallel and
/// returns the results in segment order.
pub(crate) fn map_segments<L, F, R>(x: u64, local: &L, per_segment: F) -> Result<Vec<R>>
where
    L: Fn(u64, u32) -> u64 + Sync,
    F: Fn(u64, &[u64]) -> Result<R> + Sync,
    R: Send,
{
    if x == 0 {
        return Ok(Vec::new());
    }
    let small = primes_up_to((x as f64).sqrt() as u64 + 1);
    let segments = (x / SEGMENT_LEN) + 1;
    (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = (s * SEGMENT_LEN).max(1);
            let hi = ((s + 1) * SEGMENT_LEN).min(x + 1);
            let values = segment_values(lo, hi, &small, local)?;
            per_segment(lo, &values)
        })
        .collect()
}
