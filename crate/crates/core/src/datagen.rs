//! Seeded corpus generation.
//!
//! The random source is ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64`; only its raw `next_u64` stream is used. Floats are built
//! with integer operations and exact binary64 arithmetic, never with
//! platform math functions:
//!
//! * unit variate: `(next_u64 >> 11) * 2^-53`, in `[0, 1)`
//! * `Gaussian`: sum of 12 unit variates minus 6 (Irwin-Hall), added left to right
//! * `Uniform`: `2u - 1`, in `[-1, 1)`
//! * `DuplicateHeavy(f)`: per element draw `u`; if `u < f` take
//!   `DICTIONARY[next_u64 % 16]`, else a Gaussian variate
//! * `SpecialValues`: `n - k` Gaussian variates, then the `k` special values
//!   (quiet NaNs with payloads `nan_count..=1`, `+0/-0` pairs, `+inf/-inf`
//!   pairs) each inserted at position `next_u64 % (len + 1)`
//!
//! Binary32 corpora round each binary64 variate to nearest.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::seq::FloatSeq;
use crate::total_order::Width;

/// Values used for the tied fraction of a duplicate-heavy corpus.
pub const DICTIONARY: [f64; 16] = [
    -1.875, -1.625, -1.375, -1.125, -0.875, -0.625, -0.375, -0.125, 0.125, 0.375, 0.625, 0.875,
    1.125, 1.375, 1.625, 1.875,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    Gaussian,
    Uniform,
    DuplicateHeavy {
        tie_fraction: f64,
    },
    SpecialValues {
        nan_count: usize,
        signed_zero_pairs: usize,
        inf_pairs: usize,
    },
}

impl Distribution {
    pub const DEFAULT_SPECIAL: Distribution = Distribution::SpecialValues {
        nan_count: 3,
        signed_zero_pairs: 2,
        inf_pairs: 1,
    };
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Gaussian => f.write_str("gaussian"),
            Distribution::Uniform => f.write_str("uniform"),
            Distribution::DuplicateHeavy { tie_fraction } => write!(f, "dup:{tie_fraction}"),
            Distribution::SpecialValues {
                nan_count,
                signed_zero_pairs,
                inf_pairs,
            } => write!(f, "special:{nan_count},{signed_zero_pairs},{inf_pairs}"),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    /// `gaussian`, `uniform`, `dup:FRAC`, `special` or `special:NANS,ZERO_PAIRS,INF_PAIRS`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("unknown distribution {s:?}"));
        match s {
            "gaussian" => return Ok(Distribution::Gaussian),
            "uniform" => return Ok(Distribution::Uniform),
            "special" => return Ok(Distribution::DEFAULT_SPECIAL),
            _ => {}
        }
        if let Some(frac) = s.strip_prefix("dup:") {
            let tie_fraction: f64 = frac.parse().map_err(|_| bad())?;
            return Ok(Distribution::DuplicateHeavy { tie_fraction });
        }
        if let Some(counts) = s.strip_prefix("special:") {
            let c: Vec<usize> = counts
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if let [nan_count, signed_zero_pairs, inf_pairs] = c[..] {
                return Ok(Distribution::SpecialValues {
                    nan_count,
                    signed_zero_pairs,
                    inf_pairs,
                });
            }
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub seed: u64,
    pub width: Width,
}

impl CorpusSpec {
    pub fn new(distribution: Distribution, n: usize, seed: u64, width: Width) -> Self {
        CorpusSpec {
            distribution,
            n,
            seed,
            width,
        }
    }

    /// Provenance text written next to generated files.
    pub fn sidecar(&self) -> String {
        format!(
            "generator=chacha20\ndistribution={}\nn={}\nseed={}\nwidth={}\n",
            self.distribution, self.n, self.seed, self.width
        )
    }
}

struct Source(ChaCha20Rng);

impl Source {
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn gaussian(&mut self) -> f64 {
        let mut s = 0.0;
        for _ in 0..12 {
            s += self.unit();
        }
        s - 6.0
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.0.next_u64() % bound as u64) as usize
    }
}

#[derive(Clone, Copy)]
enum Special {
    Nan(u64),
    Value(f64),
}

pub fn generate(spec: &CorpusSpec) -> Result<FloatSeq> {
    let mut rng = Source(ChaCha20Rng::seed_from_u64(spec.seed));
    let mut specials: Vec<Special> = Vec::new();
    let values: Vec<f64> = match spec.distribution {
        Distribution::Gaussian => (0..spec.n).map(|_| rng.gaussian()).collect(),
        Distribution::Uniform => (0..spec.n).map(|_| 2.0 * rng.unit() - 1.0).collect(),
        Distribution::DuplicateHeavy { tie_fraction } => {
            if !(0.0..=1.0).contains(&tie_fraction) {
                return Err(Error::usage(format!(
                    "tie fraction must be within [0, 1], got {tie_fraction}"
                )));
            }
            (0..spec.n)
                .map(|_| {
                    if rng.unit() < tie_fraction {
                        DICTIONARY[rng.below(DICTIONARY.len())]
                    } else {
                        rng.gaussian()
                    }
                })
                .collect()
        }
        Distribution::SpecialValues {
            nan_count,
            signed_zero_pairs,
            inf_pairs,
        } => {
            specials.extend((1..=nan_count as u64).rev().map(Special::Nan));
            for _ in 0..signed_zero_pairs {
                specials.extend([Special::Value(0.0), Special::Value(-0.0)]);
            }
            for _ in 0..inf_pairs {
                specials.extend([
                    Special::Value(f64::INFINITY),
                    Special::Value(f64::NEG_INFINITY),
                ]);
            }
            let base = spec.n.checked_sub(specials.len()).ok_or_else(|| {
                Error::usage(format!(
                    "{} special values do not fit in n = {}",
                    specials.len(),
                    spec.n
                ))
            })?;
            (0..base).map(|_| rng.gaussian()).collect()
        }
    };

    match spec.width {
        Width::Binary64 => {
            let mut bits: Vec<u64> = values.iter().map(|x| x.to_bits()).collect();
            for s in specials {
                let at = rng.below(bits.len() + 1);
                bits.insert(
                    at,
                    match s {
                        Special::Nan(p) => 0x7ff8_0000_0000_0000 | p,
                        Special::Value(x) => x.to_bits(),
                    },
                );
            }
            Ok(FloatSeq::F64(bits))
        }
        Width::Binary32 => {
            let mut bits: Vec<u32> = values.iter().map(|x| (*x as f32).to_bits()).collect();
            for s in specials {
                let at = rng.below(bits.len() + 1);
                bits.insert(
                    at,
                    match s {
                        Special::Nan(p) => 0x7fc0_0000 | p as u32,
                        Special::Value(x) => (x as f32).to_bits(),
                    },
                );
            }
            Ok(FloatSeq::F32(bits))
        }
    }
}
