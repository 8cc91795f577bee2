//! Disorder and entropy measures over float sequences.
//!
//! All comparisons use the total order, so an inversion is a pair `i < j`
//! whose elements compare strictly `Greater`. Bit-identical elements never
//! form an inversion.

use std::fmt;

use crate::error::{Error, Result};
use crate::seq::FloatSeq;
use crate::total_order::{FloatValue, RawBits};

/// Counts pairs `i < j` with `keys[i] > keys[j]` by merge counting.
pub(crate) fn count_inversions<K: Ord + Copy>(keys: &[K]) -> u64 {
    let n = keys.len();
    if n < 2 {
        return 0;
    }
    let mut src = keys.to_vec();
    let mut dst = src.clone();
    let mut total = 0u64;
    let mut run = 1;
    while run < n {
        for (s, d) in src.chunks(2 * run).zip(dst.chunks_mut(2 * run)) {
            let mid = run.min(s.len());
            let (l, r) = s.split_at(mid);
            let (mut i, mut j, mut k) = (0, 0, 0);
            while i < l.len() && j < r.len() {
                if l[i] > r[j] {
                    // r[j] jumps every remaining left element
                    total += (l.len() - i) as u64;
                    d[k] = r[j];
                    j += 1;
                } else {
                    d[k] = l[i];
                    i += 1;
                }
                k += 1;
            }
            d[k..k + l.len() - i].copy_from_slice(&l[i..]);
            let k = k + l.len() - i;
            d[k..].copy_from_slice(&r[j..]);
        }
        std::mem::swap(&mut src, &mut dst);
        run *= 2;
    }
    total
}

fn keys_of<T: RawBits>(v: &[T]) -> Vec<T> {
    v.iter().map(|b| b.to_order_key()).collect()
}

/// Number of inverted pairs, in `O(n log n)`.
pub fn inversion_count(s: &FloatSeq) -> u64 {
    crate::dispatch_seq!(s, v => count_inversions(&keys_of(v)))
}

pub fn inversion_count_values(values: &[FloatValue]) -> Result<u64> {
    Ok(inversion_count(&uniform(values)?))
}

fn uniform(values: &[FloatValue]) -> Result<FloatSeq> {
    match values.first() {
        None => Ok(FloatSeq::F64(Vec::new())),
        Some(v) => FloatSeq::from_values(v.width(), values),
    }
}

/// Weighting applied to each inverted pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSpec {
    /// Weight 1; reproduces the inversion count.
    Unit,
    /// `d^p` for index distance `d = j - i`.
    IndexPower(f64),
    /// `ln(1 + d)` for index distance `d`.
    IndexLog,
    /// `|x_i - x_j|^p` over the value gap.
    ///
    /// Gaps involving a NaN are taken as the distance between the two
    /// total-order keys times the width's machine epsilon.
    ValuePower(f64),
}

impl CurveSpec {
    /// Short stable name used in reports and on the command line.
    pub fn name(&self) -> String {
        match self {
            CurveSpec::Unit => "unit".into(),
            CurveSpec::IndexPower(p) if *p == 2.0 => "d2".into(),
            CurveSpec::IndexPower(p) => format!("d^{p}"),
            CurveSpec::IndexLog => "log1p".into(),
            CurveSpec::ValuePower(p) if *p == 2.0 => "value2".into(),
            CurveSpec::ValuePower(p) => format!("value^{p}"),
        }
    }

    fn exponent_ok(&self) -> Result<()> {
        match self {
            CurveSpec::IndexPower(p) | CurveSpec::ValuePower(p)
                if !(p.is_finite() && *p >= 0.0) =>
            {
                Err(Error::usage(format!(
                    "curve exponent must be finite and >= 0, got {p}"
                )))
            }
            _ => Ok(()),
        }
    }
}

impl std::str::FromStr for CurveSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(CurveSpec::Unit),
            "d2" => Ok(CurveSpec::IndexPower(2.0)),
            "log1p" => Ok(CurveSpec::IndexLog),
            "value2" => Ok(CurveSpec::ValuePower(2.0)),
            other => Err(Error::usage(format!(
                "unknown curve {other:?} (expected unit, d2, log1p or value2)"
            ))),
        }
    }
}

/// Sum of curve weights over all inverted pairs.
///
/// `Unit` runs in `O(n log n)`; every other curve scans all pairs.
pub fn curved_disorder(s: &FloatSeq, curve: CurveSpec) -> Result<f64> {
    curve.exponent_ok()?;
    if curve == CurveSpec::Unit {
        return Ok(inversion_count(s) as f64);
    }
    crate::dispatch_seq!(s, v => curved_pairs(v, curve))
}

pub fn curved_disorder_values(values: &[FloatValue], curve: CurveSpec) -> Result<f64> {
    curved_disorder(&uniform(values)?, curve)
}

fn curved_pairs<T: RawBits>(v: &[T], curve: CurveSpec) -> Result<f64> {
    let keys = keys_of(v);
    let eps = T::WIDTH.epsilon();
    let mut total = 0.0f64;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if keys[i] <= keys[j] {
                continue;
            }
            let d = (j - i) as f64;
            let w = match curve {
                CurveSpec::Unit => 1.0,
                CurveSpec::IndexPower(p) => libm::pow(d, p),
                CurveSpec::IndexLog => libm::log1p(d),
                CurveSpec::ValuePower(p) => {
                    let (a, b) = (v[i].to_f64(), v[j].to_f64());
                    let gap = if a.is_nan() || b.is_nan() {
                        (keys[i].to_u64() - keys[j].to_u64()) as f64 * eps
                    } else {
                        (a - b).abs()
                    };
                    libm::pow(gap, p)
                }
            };
            if !w.is_finite() {
                return Err(Error::Computation(format!(
                    "non-finite {} weight for pair ({i}, {j})",
                    curve.name()
                )));
            }
            total += w;
        }
    }
    if !total.is_finite() {
        return Err(Error::Computation(format!(
            "{} disorder overflowed",
            curve.name()
        )));
    }
    Ok(total)
}

/// `log2(k!)` via log-gamma.
fn log2_factorial(k: u64) -> f64 {
    if k < 2 {
        0.0
    } else {
        libm::lgamma(k as f64 + 1.0) / std::f64::consts::LN_2
    }
}

/// Sum of `log2(k!)` over groups of bit-identical elements.
pub fn residual_tie_entropy(s: &FloatSeq) -> f64 {
    fn go<T: RawBits>(v: &[T]) -> f64 {
        let mut sorted = v.to_vec();
        sorted.sort_unstable();
        sorted
            .chunk_by(|a, b| a == b)
            .map(|g| log2_factorial(g.len() as u64))
            .sum()
    }
    crate::dispatch_seq!(s, v => go(v))
}

pub fn residual_tie_entropy_values(values: &[FloatValue]) -> Result<f64> {
    Ok(residual_tie_entropy(&uniform(values)?))
}

/// `log2(n!)`, the entropy of a uniformly random permutation of `n` items.
pub fn permutation_entropy_baseline(n: u64) -> f64 {
    log2_factorial(n)
}

/// Metrics bundle for one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct DisorderReport {
    pub n: u64,
    pub inversions: u64,
    pub curved: Vec<(CurveSpec, f64)>,
    pub residual_tie_entropy_bits: f64,
    pub permutation_entropy_baseline_bits: f64,
}

impl DisorderReport {
    pub fn compute(s: &FloatSeq, curves: &[CurveSpec]) -> Result<Self> {
        let curved = curves
            .iter()
            .map(|c| curved_disorder(s, *c).map(|d| (*c, d)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DisorderReport {
            n: s.len() as u64,
            inversions: inversion_count(s),
            curved,
            residual_tie_entropy_bits: residual_tie_entropy(s),
            permutation_entropy_baseline_bits: permutation_entropy_baseline(s.len() as u64),
        })
    }
}

/// One `key=value` line per metric, reals with 12 significant digits.
impl fmt::Display for DisorderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "inversions={}", self.inversions)?;
        for (curve, value) in &self.curved {
            writeln!(f, "curved.{}={}", curve.name(), format_sig(*value, 12))?;
        }
        writeln!(
            f,
            "residual_tie_entropy_bits={}",
            format_sig(self.residual_tie_entropy_bits, 12)
        )?;
        writeln!(
            f,
            "permutation_entropy_baseline_bits={}",
            format_sig(self.permutation_entropy_baseline_bits, 12)
        )
    }
}

/// Formats `x` with `digits` significant digits, `%g` style.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let prec = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.prec$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
