//! Reference oracles shared by the integration tests. Nothing here calls
//! into the sorting or key-encoding code under test.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    rng.next_u64() % bound
}

/// Sign, exponent and significand fields of an IEEE-754 interchange value.
#[derive(Clone, Copy)]
struct Fields {
    negative: bool,
    exponent: u64,
    significand: u64,
    exp_all_ones: u64,
    significand_bits: u32,
}

impl Fields {
    fn f64(bits: u64) -> Self {
        Fields {
            negative: bits >> 63 == 1,
            exponent: (bits >> 52) & 0x7ff,
            significand: bits & ((1 << 52) - 1),
            exp_all_ones: 0x7ff,
            significand_bits: 52,
        }
    }

    fn f32(bits: u32) -> Self {
        let bits = bits as u64;
        Fields {
            negative: bits >> 31 == 1,
            exponent: (bits >> 23) & 0xff,
            significand: bits & ((1 << 23) - 1),
            exp_all_ones: 0xff,
            significand_bits: 23,
        }
    }

    /// Magnitude rank: (class, a, b) compared lexicographically, where class
    /// 0 = finite (zero, subnormal, normal), 1 = infinity, 2 = NaN.
    fn magnitude(self) -> (u8, u64, u64) {
        if self.exponent == self.exp_all_ones {
            if self.significand == 0 {
                (1, 0, 0)
            } else {
                let quiet = self.significand >> (self.significand_bits - 1);
                let payload = self.significand & ((1 << (self.significand_bits - 1)) - 1);
                (2, quiet, payload)
            }
        } else {
            (0, self.exponent, self.significand)
        }
    }
}

fn field_cmp(a: Fields, b: Fields) -> Ordering {
    match (a.negative, b.negative) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.magnitude().cmp(&b.magnitude()),
        (true, true) => b.magnitude().cmp(&a.magnitude()),
    }
}

/// IEEE-754 totalOrder evaluated case by case on the decoded fields:
/// negatives below positives (so -0 < +0), larger magnitude first among
/// negatives, finite < infinity < NaN in magnitude, and NaNs ordered by
/// the quiet bit and then the payload.
pub fn field_total_cmp64(a: u64, b: u64) -> Ordering {
    field_cmp(Fields::f64(a), Fields::f64(b))
}

pub fn field_total_cmp32(a: u32, b: u32) -> Ordering {
    field_cmp(Fields::f32(a), Fields::f32(b))
}

/// Decorate with the original index, sort `(value, index)` by the field
/// oracle then index, strip the index.
pub fn decorate_sort64(v: &[u64]) -> Vec<u64> {
    let mut d: Vec<(u64, usize)> = v.iter().copied().zip(0..).collect();
    d.sort_by(|x, y| field_total_cmp64(x.0, y.0).then(x.1.cmp(&y.1)));
    d.into_iter().map(|(b, _)| b).collect()
}

pub fn decorate_sort32(v: &[u32]) -> Vec<u32> {
    let mut d: Vec<(u32, usize)> = v.iter().copied().zip(0..).collect();
    d.sort_by(|x, y| field_total_cmp32(x.0, y.0).then(x.1.cmp(&y.1)));
    d.into_iter().map(|(b, _)| b).collect()
}

/// O(n^2) inversion count.
pub fn pair_scan64(v: &[u64]) -> u64 {
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if field_total_cmp64(v[i], v[j]) == Ordering::Greater {
                c += 1;
            }
        }
    }
    c
}

/// Sum over bit-identity groups of log2(k!), by direct summation of log2 i.
pub fn closed_form_tie_entropy(v: &[u64]) -> f64 {
    let mut groups: HashMap<u64, u64> = HashMap::new();
    for b in v {
        *groups.entry(*b).or_default() += 1;
    }
    let mut sizes: Vec<u64> = groups.into_values().collect();
    sizes.sort_unstable();
    sizes
        .iter()
        .map(|&k| (2..=k).map(|i| (i as f64).log2()).sum::<f64>())
        .sum()
}

/// A bit pattern from a mix of special classes, NaN space and raw bits.
pub fn interesting64(rng: &mut ChaCha8Rng) -> u64 {
    let r = rng.next_u64();
    let sign = (rng.next_u64() & 1) << 63;
    match below(rng, 8) {
        // NaN space: all-ones exponent, non-zero significand
        0 | 1 => sign | 0x7ff0_0000_0000_0000 | (r & ((1 << 52) - 1)).max(1),
        2 => sign | [0, 0x7ff0_0000_0000_0000, 1, 0x000f_ffff_ffff_ffff][(r % 4) as usize],
        3 => sign | (r & 0x001f_ffff_ffff_ffff),
        _ => r,
    }
}

pub fn interesting32(rng: &mut ChaCha8Rng) -> u32 {
    let r = rng.next_u64() as u32;
    let sign = ((rng.next_u64() & 1) as u32) << 31;
    match below(rng, 8) {
        0 | 1 => sign | 0x7f80_0000 | (r & 0x007f_ffff).max(1),
        2 => sign | [0, 0x7f80_0000, 1, 0x007f_ffff][(r % 4) as usize],
        3 => sign | (r & 0x00ff_ffff),
        _ => r,
    }
}

/// A multiset where roughly half the draws come from a small pool of
/// special values.
pub fn tie_heavy64(rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    const POOL: [u64; 8] = [
        0,
        0x8000_0000_0000_0000,
        0x7ff8_0000_0000_0001,
        0xfff8_0000_0000_0001,
        0x7ff0_0000_0000_0000,
        0x3ff0_0000_0000_0000,
        0xbff0_0000_0000_0000,
        0x4000_0000_0000_0000,
    ];
    (0..n)
        .map(|_| {
            if below(rng, 2) == 0 {
                POOL[below(rng, POOL.len() as u64) as usize]
            } else {
                interesting64(rng)
            }
        })
        .collect()
}

/// Fraction of elements that share their bit pattern with another element.
pub fn tie_fraction(v: &[u64]) -> f64 {
    let mut groups: HashMap<u64, u64> = HashMap::new();
    for b in v {
        *groups.entry(*b).or_default() += 1;
    }
    let tied: u64 = groups.values().filter(|&&k| k > 1).sum();
    tied as f64 / v.len().max(1) as f64
}

pub fn shuffle<T>(rng: &mut ChaCha8Rng, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        let j = below(rng, i as u64 + 1) as usize;
        v.swap(i, j);
    }
}
