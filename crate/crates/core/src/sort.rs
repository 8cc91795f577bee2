//! Stable top-down merge sort under the total order.
//!
//! The recursion always splits a range of length `n` at `n / 2`, sorts both
//! halves, and merges them taking from the left half whenever the two heads
//! compare equal. Ranges of at most [`INSERTION_CUTOFF`] elements are sorted
//! with a stable binary insertion sort. One auxiliary buffer of `n` elements
//! is shared by the whole recursion: each level merges from one buffer into
//! the other, so no level copies its input back.
//!
//! Elements are sorted as [`TotalOrderKey`](crate::TotalOrderKey) integers:
//! the bits are transformed in place, sorted with plain unsigned comparison,
//! and transformed back. Since the transform is a bijection, equal keys are
//! bit-identical values.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::metrics::count_inversions;
use crate::seq::FloatSeq;
use crate::total_order::{FloatValue, RawBits};

/// Ranges this short are insertion sorted instead of split further.
pub const INSERTION_CUTOFF: usize = 32;

/// Merges two sorted slices into `out`. On ties the element of `left` goes
/// first; once either side is exhausted the other is copied verbatim.
#[inline]
pub(crate) fn merge_into<T: Copy, F>(left: &[T], right: &[T], out: &mut [T], is_greater: &F)
where
    F: Fn(&T, &T) -> bool,
{
    debug_assert_eq!(left.len() + right.len(), out.len());
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if is_greater(&left[i], &right[j]) {
            out[k] = right[j];
            j += 1;
        } else {
            out[k] = left[i];
            i += 1;
        }
        k += 1;
    }
    if i < left.len() {
        out[k..].copy_from_slice(&left[i..]);
    } else {
        out[k..].copy_from_slice(&right[j..]);
    }
}

fn insertion_sort<T: Copy, F>(v: &mut [T], is_greater: &F)
where
    F: Fn(&T, &T) -> bool,
{
    for i in 1..v.len() {
        let x = v[i];
        // Upper bound: after every element not greater than x.
        let pos = v[..i].partition_point(|e| !is_greater(e, &x));
        if pos < i {
            v.copy_within(pos..i, pos + 1);
            v[pos] = x;
        }
    }
}

/// Sorts `v` in place using `scratch` (same length) as the merge buffer.
pub(crate) fn merge_sort_by<T: Copy, F>(v: &mut [T], scratch: &mut [T], is_greater: &F)
where
    F: Fn(&T, &T) -> bool,
{
    assert_eq!(v.len(), scratch.len(), "scratch must match input length");
    sort_in_place(v, scratch, is_greater);
}

fn sort_in_place<T: Copy, F>(v: &mut [T], scratch: &mut [T], is_greater: &F)
where
    F: Fn(&T, &T) -> bool,
{
    let n = v.len();
    if n <= INSERTION_CUTOFF {
        insertion_sort(v, is_greater);
        return;
    }
    let mid = n / 2;
    {
        let (vl, vr) = v.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        sort_into(vl, sl, is_greater);
        sort_into(vr, sr, is_greater);
    }
    let (sl, sr) = scratch.split_at(mid);
    merge_into(sl, sr, v, is_greater);
}

/// Sorts the elements of `v` into `out`, clobbering `v`.
fn sort_into<T: Copy, F>(v: &mut [T], out: &mut [T], is_greater: &F)
where
    F: Fn(&T, &T) -> bool,
{
    let n = v.len();
    if n <= INSERTION_CUTOFF {
        out.copy_from_slice(v);
        insertion_sort(out, is_greater);
        return;
    }
    let mid = n / 2;
    {
        let (vl, vr) = v.split_at_mut(mid);
        let (ol, or) = out.split_at_mut(mid);
        sort_in_place(vl, ol, is_greater);
        sort_in_place(vr, or, is_greater);
    }
    let (vl, vr) = v.split_at(mid);
    merge_into(vl, vr, out, is_greater);
}

#[inline]
fn key_greater<K: Ord>(a: &K, b: &K) -> bool {
    a > b
}

pub(crate) fn to_keys<T: RawBits>(v: &mut [T]) {
    v.iter_mut().for_each(|b| *b = b.to_order_key());
}

pub(crate) fn from_keys<T: RawBits>(v: &mut [T]) {
    v.iter_mut().for_each(|k| *k = T::from_order_key(*k));
}

/// Sorts already-encoded keys.
pub(crate) fn sort_keys<T: RawBits>(keys: &mut [T], scratch: &mut [T]) {
    merge_sort_by(keys, scratch, &key_greater::<T>);
}

/// Sorts raw bit patterns in place, allocating one scratch buffer.
pub fn sort_slice<T: RawBits>(v: &mut [T]) {
    let mut scratch = v.to_vec();
    sort_slice_with_scratch(v, &mut scratch);
}

/// Sorts raw bit patterns in place with a caller-provided scratch buffer of
/// the same length.
pub fn sort_slice_with_scratch<T: RawBits>(v: &mut [T], scratch: &mut [T]) {
    to_keys(v);
    sort_keys(v, scratch);
    from_keys(v);
}

/// Returns the sorted copy of `s`.
pub fn sort(s: &FloatSeq) -> FloatSeq {
    let mut out = s.clone();
    sort_in_place_seq(&mut out);
    out
}

pub fn sort_in_place_seq(s: &mut FloatSeq) {
    crate::dispatch_seq!(s, v => sort_slice(v))
}

/// Sorts individual values; all must share one width.
pub fn sort_values(values: &[FloatValue]) -> Result<Vec<FloatValue>> {
    let Some(first) = values.first() else {
        return Ok(Vec::new());
    };
    let seq = FloatSeq::from_values(first.width(), values)?;
    Ok(sort(&seq).to_values())
}

/// The stable sorting permutation: `sort(s)[i] == s[perm[i]]`, and indices of
/// bit-identical elements appear in increasing order.
pub fn sort_permutation(s: &FloatSeq) -> Vec<usize> {
    fn perm<T: RawBits>(v: &[T]) -> Vec<usize> {
        let mut tagged: Vec<(T, usize)> = v
            .iter()
            .enumerate()
            .map(|(i, b)| (b.to_order_key(), i))
            .collect();
        let mut scratch = tagged.clone();
        merge_sort_by(
            &mut tagged,
            &mut scratch,
            &|a: &(T, usize), b: &(T, usize)| a.0 > b.0,
        );
        tagged.into_iter().map(|(_, i)| i).collect()
    }
    crate::dispatch_seq!(s, v => perm(v))
}

/// Merges two sorted sequences, left elements first on ties.
///
/// Inputs are not validated (a debug build asserts sortedness); merging
/// unsorted inputs gives an unspecified permutation of them.
pub fn merge(left: &FloatSeq, right: &FloatSeq) -> Result<FloatSeq> {
    fn go<T: RawBits>(l: &[T], r: &[T]) -> Vec<T> {
        debug_assert!(is_sorted_slice(l), "left merge input is not sorted");
        debug_assert!(is_sorted_slice(r), "right merge input is not sorted");
        let mut out = vec![T::from_u64(0); l.len() + r.len()];
        merge_into(l, r, &mut out, &|a: &T, b: &T| {
            a.to_order_key() > b.to_order_key()
        });
        out
    }
    match (left, right) {
        (FloatSeq::F32(l), FloatSeq::F32(r)) => Ok(FloatSeq::F32(go(l, r))),
        (FloatSeq::F64(l), FloatSeq::F64(r)) => Ok(FloatSeq::F64(go(l, r))),
        _ => Err(Error::WidthMismatch {
            expected: left.width(),
            found: right.width(),
        }),
    }
}

pub fn is_sorted_slice<T: RawBits>(v: &[T]) -> bool {
    v.windows(2)
        .all(|w| w[0].to_order_key() <= w[1].to_order_key())
}

/// True iff no adjacent pair is out of total order.
pub fn is_sorted(s: &FloatSeq) -> bool {
    crate::dispatch_seq!(s, v => is_sorted_slice(v))
}

pub fn is_sorted_values(values: &[FloatValue]) -> Result<bool> {
    let mut sorted = true;
    for w in values.windows(2) {
        if crate::cmp_total(w[0], w[1])? == Ordering::Greater {
            sorted = false;
        }
    }
    Ok(sorted)
}

/// Convergence measure recorded after one bottom-up merge pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TracePass {
    /// 0 is the input before any merging; pass `p` merged runs of length `2^(p-1)`.
    pub pass: usize,
    /// Negated inversion count of the working sequence.
    pub phi: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SortTrace {
    pub passes: Vec<TracePass>,
}

impl SortTrace {
    pub fn is_monotone(&self) -> bool {
        self.passes.windows(2).all(|w| w[1].phi >= w[0].phi)
    }

    pub fn final_phi(&self) -> Option<i64> {
        self.passes.last().map(|p| p.phi)
    }
}

/// Bottom-up merge sort from singletons, recording the convergence measure
/// after every pass. The sorted result equals [`sort`] bit for bit.
pub fn sort_with_trace(s: &FloatSeq) -> (FloatSeq, SortTrace) {
    fn go<T: RawBits>(v: &[T]) -> (Vec<T>, SortTrace) {
        let mut src: Vec<T> = v.iter().map(|b| b.to_order_key()).collect();
        let mut dst = src.clone();
        let n = src.len();
        let phi = |keys: &[T]| -(count_inversions(keys) as i64);
        let mut trace = SortTrace {
            passes: vec![TracePass {
                pass: 0,
                phi: phi(&src),
            }],
        };
        let mut run = 1usize;
        let mut pass = 0;
        while run < n {
            pass += 1;
            for (s, d) in src.chunks(2 * run).zip(dst.chunks_mut(2 * run)) {
                let mid = run.min(s.len());
                merge_into(&s[..mid], &s[mid..], d, &key_greater::<T>);
            }
            std::mem::swap(&mut src, &mut dst);
            trace.passes.push(TracePass {
                pass,
                phi: phi(&src),
            });
            run *= 2;
        }
        from_keys(&mut src);
        (src, trace)
    }
    match s {
        FloatSeq::F32(v) => {
            let (out, t) = go(v);
            (FloatSeq::F32(out), t)
        }
        FloatSeq::F64(v) => {
            let (out, t) = go(v);
            (FloatSeq::F64(out), t)
        }
    }
}
