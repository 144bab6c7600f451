//! Deterministic chunked execution.
//!
//! Work over draw indices `0..total` is cut into chunks whose boundaries are
//! a fixed function of `total` (plus any requested checkpoint boundaries) and
//! never of the worker count. Workers process whole chunks; the caller folds
//! the per-chunk results in chunk order. Integer counts and block-compensated
//! sums combined this way are bit-identical for 1, 4, or 64 workers.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Chunk granularity: a fixed function of the workload size only.
fn chunk_len(total: u64) -> u64 {
    let target = (total / 256).max(1);
    let mut len = 64u64;
    while len < target && len < 8192 {
        len *= 2;
    }
    len
}

/// Half-open chunk ranges covering `0..total`, with every value in
/// `boundaries` also a chunk edge (so prefix statistics at those points are
/// whole-chunk folds).
pub fn chunk_ranges(total: u64, boundaries: &[u64]) -> Vec<Range<u64>> {
    assert!(total > 0, "empty workload");
    let len = chunk_len(total);
    let mut edges: Vec<u64> = (0..total).step_by(len as usize).skip(1).collect();
    edges.extend(boundaries.iter().copied().filter(|&b| b > 0 && b < total));
    edges.push(total);
    edges.sort_unstable();
    edges.dedup();
    let mut ranges = Vec::with_capacity(edges.len());
    let mut start = 0;
    for &end in &edges {
        ranges.push(start..end);
        start = end;
    }
    ranges
}

/// Map `f` over the chunk ranges, possibly in parallel, returning results in
/// chunk order. `f` must be a pure function of the range.
pub fn run_chunked<T, F>(ranges: &[Range<u64>], workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    assert!(workers >= 1);
    if workers == 1 || ranges.len() == 1 {
        return ranges.iter().map(|r| f(r.clone())).collect();
    }

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..ranges.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.min(ranges.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= ranges.len() {
                    break;
                }
                let out = f(ranges[i].clone());
                slots.lock().expect("worker panicked")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|t| t.expect("every chunk filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_and_align() {
        let ranges = chunk_ranges(100_000, &[10_000, 50_000]);
        assert_eq!(ranges.first().unwrap().start, 0);
        assert_eq!(ranges.last().unwrap().end, 100_000);
        for w in ranges.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        assert!(ranges.iter().any(|r| r.end == 10_000));
        assert!(ranges.iter().any(|r| r.end == 50_000));
    }

    #[test]
    fn boundaries_independent_of_workers() {
        // Same ranges regardless of how they are later executed.
        let a = chunk_ranges(12_345, &[7]);
        let b = chunk_ranges(12_345, &[7]);
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_matches_serial() {
        let ranges = chunk_ranges(10_000, &[]);
        let serial = run_chunked(&ranges, 1, |r| r.sum::<u64>());
        for workers in [2, 4, 8] {
            let par = run_chunked(&ranges, workers, |r| r.sum::<u64>());
            assert_eq!(serial, par);
        }
    }
}
