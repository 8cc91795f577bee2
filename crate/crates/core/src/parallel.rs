//! Multi-threaded sort with a data-independent merge schedule.
//!
//! The input is cut into a power-of-two number of contiguous chunks whose
//! boundaries depend only on `n` and the thread count. Chunks are sorted
//! independently, then merged pairwise in a fixed binary tree: at every level
//! run `2k` (left) is merged with run `2k + 1` (right). Merges within a level
//! write disjoint output ranges and may run concurrently; levels are separated
//! by a barrier. Because every merge takes the left run first on ties and the
//! runs stay in input order, the result is byte-identical to [`crate::sort`].

use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seq::FloatSeq;
use crate::sort::{from_keys, merge_into, sort_keys, to_keys};
use crate::total_order::RawBits;

/// Environment variable that overrides the default worker count.
pub const THREADS_ENV: &str = "DETSORT_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergePlan {
    pub chunk_count: usize,
    /// Contiguous, in input order.
    pub chunk_boundaries: Vec<Range<usize>>,
    /// Run-index pairs merged at each level, bottom level first.
    pub tree_levels: Vec<Vec<(usize, usize)>>,
}

impl MergePlan {
    /// Index range covered by run `run` after `level` merge levels.
    pub fn span(&self, level: usize, run: usize) -> Range<usize> {
        let per = 1usize << level;
        let first = run * per;
        let last = first + per - 1;
        self.chunk_boundaries[first].start..self.chunk_boundaries[last].end
    }
}

/// Splits `n` elements into the smallest power of two of chunks that is at
/// least `min(threads, max(1, n))`, sizes as even as possible, remainder
/// going to the earliest chunks.
pub fn plan_merge(n: usize, threads: usize) -> Result<MergePlan> {
    if threads == 0 {
        return Err(Error::usage("thread count must be at least 1"));
    }
    let chunk_count = threads.min(n.max(1)).next_power_of_two();
    let (base, rem) = (n / chunk_count, n % chunk_count);
    let mut start = 0;
    let chunk_boundaries = (0..chunk_count)
        .map(|i| {
            let len = base + usize::from(i < rem);
            let r = start..start + len;
            start += len;
            r
        })
        .collect();
    let mut tree_levels = Vec::new();
    let mut runs = chunk_count;
    while runs > 1 {
        tree_levels.push((0..runs / 2).map(|k| (2 * k, 2 * k + 1)).collect());
        runs /= 2;
    }
    Ok(MergePlan {
        chunk_count,
        chunk_boundaries,
        tree_levels,
    })
}

/// Worker count from [`THREADS_ENV`], falling back to hardware parallelism.
pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&t: &usize| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn build_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .thread_name(|i| format!("detsort-{i}"))
        .build()
        .map_err(|e| Error::Execution(format!("failed to start {threads} workers: {e}")))
}

/// Sorts raw bits in place on `threads` workers.
pub fn parallel_sort_slice<T: RawBits>(v: &mut [T], threads: usize) -> Result<()> {
    let plan = plan_merge(v.len(), threads)?;
    if plan.chunk_count == 1 {
        crate::sort::sort_slice(v);
        return Ok(());
    }
    let pool = build_pool(threads)?;
    pool.install(|| run_plan(v, &plan));
    Ok(())
}

fn split_ranges<'a, T>(mut buf: &'a mut [T], ranges: &[Range<usize>]) -> Vec<&'a mut [T]> {
    let mut out = Vec::with_capacity(ranges.len());
    let mut offset = 0;
    for r in ranges {
        let (_, rest) = buf.split_at_mut(r.start - offset);
        let (part, rest) = rest.split_at_mut(r.len());
        out.push(part);
        buf = rest;
        offset = r.end;
    }
    out
}

fn run_plan<T: RawBits>(v: &mut [T], plan: &MergePlan) {
    v.par_chunks_mut(1 << 16).for_each(to_keys);
    let mut scratch = v.to_vec();

    split_ranges(v, &plan.chunk_boundaries)
        .into_par_iter()
        .zip(split_ranges(&mut scratch, &plan.chunk_boundaries))
        .for_each(|(chunk, buf)| sort_keys(chunk, buf));

    let mut in_v = true;
    for (level, pairs) in plan.tree_levels.iter().enumerate() {
        let (src, dst): (&[T], &mut [T]) = if in_v {
            (v, &mut scratch)
        } else {
            (&scratch, v)
        };
        let spans: Vec<_> = (0..pairs.len()).map(|k| plan.span(level + 1, k)).collect();
        let jobs: Vec<_> = pairs
            .iter()
            .map(|&(l, r)| (plan.span(level, l), plan.span(level, r)))
            .zip(split_ranges(dst, &spans))
            .collect();
        jobs.into_par_iter()
            .for_each(|((l, r), out)| merge_into(&src[l], &src[r], out, &|a: &T, b: &T| a > b));
        in_v = !in_v;
    }
    if !in_v {
        v.copy_from_slice(&scratch);
    }
    v.par_chunks_mut(1 << 16).for_each(from_keys);
}

/// Sorted copy of `s` computed on `threads` workers; identical to
/// [`crate::sort`] for every `threads >= 1`.
pub fn parallel_sort(s: &FloatSeq, threads: usize) -> Result<FloatSeq> {
    let mut out = s.clone();
    crate::dispatch_seq!(&mut out, v => parallel_sort_slice(v, threads))?;
    Ok(out)
}
