//! The IEEE-754 total order over raw bit patterns.
//!
//! Every binary32/binary64 bit pattern, NaNs included, is mapped to an
//! unsigned key of the same width whose natural integer order is the
//! totalOrder predicate:
//!
//! * sign bit set: `key = !bits`
//! * sign bit clear: `key = bits ^ SIGN` (`0x8000_0000` or `0x8000_0000_0000_0000`)
//!
//! The result is the chain
//! `-NaN < -inf < negative finites < -0 < +0 < positive finites < +inf < +NaN`,
//! where NaNs of each sign are ordered by their full encoding (signaling
//! below quiet, then by payload). The transform is a bijection, so two
//! values compare `Equal` exactly when they are bit-identical.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Width {
    Binary32,
    Binary64,
}

impl Width {
    /// Size of one encoded element in bytes.
    pub const fn bytes(self) -> usize {
        match self {
            Width::Binary32 => 4,
            Width::Binary64 => 8,
        }
    }

    /// Machine epsilon (gap between 1.0 and the next representable value).
    pub fn epsilon(self) -> f64 {
        match self {
            Width::Binary32 => f32::EPSILON as f64,
            Width::Binary64 => f64::EPSILON,
        }
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Width::Binary32 => "f32",
            Width::Binary64 => "f64",
        })
    }
}

impl std::str::FromStr for Width {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f32" | "binary32" => Ok(Width::Binary32),
            "f64" | "binary64" => Ok(Width::Binary64),
            other => Err(Error::usage(format!(
                "unknown width {other:?} (expected f32 or f64)"
            ))),
        }
    }
}

/// Raw storage for one float of a fixed width.
///
/// Sorting works on these integers directly so that no value ever passes
/// through a floating-point register, which keeps NaN payloads intact.
pub trait RawBits: Copy + Ord + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    const WIDTH: Width;
    const SIGN: Self;

    fn to_order_key(self) -> Self;
    fn from_order_key(key: Self) -> Self;

    fn to_u64(self) -> u64;
    /// Truncates `bits` to this width.
    fn from_u64(bits: u64) -> Self;

    /// Numeric value, widened to binary64 (exact for binary32).
    fn to_f64(self) -> f64;

    fn extend_le(self, out: &mut Vec<u8>);
    /// `bytes` must hold exactly `WIDTH.bytes()` bytes.
    fn read_le(bytes: &[u8]) -> Self;
}

impl RawBits for u64 {
    const WIDTH: Width = Width::Binary64;
    const SIGN: u64 = 0x8000_0000_0000_0000;

    #[inline]
    fn to_order_key(self) -> u64 {
        if self & Self::SIGN != 0 {
            !self
        } else {
            self ^ Self::SIGN
        }
    }

    #[inline]
    fn from_order_key(key: u64) -> u64 {
        if key & Self::SIGN != 0 {
            key ^ Self::SIGN
        } else {
            !key
        }
    }

    #[inline]
    fn to_u64(self) -> u64 {
        self
    }

    #[inline]
    fn from_u64(bits: u64) -> u64 {
        bits
    }

    #[inline]
    fn to_f64(self) -> f64 {
        f64::from_bits(self)
    }

    #[inline]
    fn extend_le(self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    #[inline]
    fn read_le(bytes: &[u8]) -> u64 {
        u64::from_le_bytes(bytes.try_into().expect("8-byte element"))
    }
}

impl RawBits for u32 {
    const WIDTH: Width = Width::Binary32;
    const SIGN: u32 = 0x8000_0000;

    #[inline]
    fn to_order_key(self) -> u32 {
        if self & Self::SIGN != 0 {
            !self
        } else {
            self ^ Self::SIGN
        }
    }

    #[inline]
    fn from_order_key(key: u32) -> u32 {
        if key & Self::SIGN != 0 {
            key ^ Self::SIGN
        } else {
            !key
        }
    }

    #[inline]
    fn to_u64(self) -> u64 {
        self as u64
    }

    #[inline]
    fn from_u64(bits: u64) -> u32 {
        bits as u32
    }

    #[inline]
    fn to_f64(self) -> f64 {
        f32::from_bits(self) as f64
    }

    #[inline]
    fn extend_le(self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    #[inline]
    fn read_le(bytes: &[u8]) -> u32 {
        u32::from_le_bytes(bytes.try_into().expect("4-byte element"))
    }
}

/// A binary32 or binary64 value carried as its exact bit pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FloatValue {
    bits: u64,
    width: Width,
}

impl FloatValue {
    pub const fn from_bits64(bits: u64) -> Self {
        FloatValue {
            bits,
            width: Width::Binary64,
        }
    }

    pub const fn from_bits32(bits: u32) -> Self {
        FloatValue {
            bits: bits as u64,
            width: Width::Binary32,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_bits64(x.to_bits())
    }

    pub fn from_f32(x: f32) -> Self {
        Self::from_bits32(x.to_bits())
    }

    pub(crate) fn from_raw<T: RawBits>(bits: T) -> Self {
        FloatValue {
            bits: bits.to_u64(),
            width: T::WIDTH,
        }
    }

    /// Exact encoding, zero-extended to 64 bits for binary32.
    pub const fn bits(self) -> u64 {
        self.bits
    }

    pub const fn width(self) -> Width {
        self.width
    }

    /// Numeric value widened to binary64.
    pub fn to_f64(self) -> f64 {
        match self.width {
            Width::Binary32 => (self.bits as u32).to_f64(),
            Width::Binary64 => self.bits.to_f64(),
        }
    }

    pub fn is_nan(self) -> bool {
        self.to_f64().is_nan()
    }

    pub(crate) fn check_width(self, other: FloatValue) -> Result<()> {
        if self.width == other.width {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            })
        }
    }
}

impl fmt::Debug for FloatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.width {
            Width::Binary32 => write!(f, "{:?}f32(0x{:08x})", self.to_f64() as f32, self.bits),
            Width::Binary64 => write!(f, "{:?}(0x{:016x})", self.to_f64(), self.bits),
        }
    }
}

/// Unsigned image of a [`FloatValue`] whose integer order is totalOrder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalOrderKey {
    width: Width,
    key: u64,
}

impl TotalOrderKey {
    pub const fn key(self) -> u64 {
        self.key
    }

    pub const fn width(self) -> Width {
        self.width
    }

    /// Inverse of [`encode_key`].
    pub fn decode(self) -> FloatValue {
        match self.width {
            Width::Binary32 => FloatValue::from_bits32(u32::from_order_key(self.key as u32)),
            Width::Binary64 => FloatValue::from_bits64(u64::from_order_key(self.key)),
        }
    }
}

pub fn encode_key(v: FloatValue) -> TotalOrderKey {
    let key = match v.width {
        Width::Binary32 => (v.bits as u32).to_order_key() as u64,
        Width::Binary64 => v.bits.to_order_key(),
    };
    TotalOrderKey {
        width: v.width,
        key,
    }
}

/// Three-way totalOrder comparison. Values of different widths are rejected.
pub fn cmp_total(a: FloatValue, b: FloatValue) -> Result<Ordering> {
    a.check_width(b)?;
    Ok(encode_key(a).key.cmp(&encode_key(b).key))
}

/// Grouping predicate for ties: bit identity, so `+0 != -0` and NaNs with
/// different encodings are distinct.
pub fn value_equal(a: FloatValue, b: FloatValue) -> Result<bool> {
    a.check_width(b)?;
    Ok(a.bits == b.bits)
}

/// `cmp_total` on raw bits of a known width.
#[inline]
pub fn cmp_bits<T: RawBits>(a: T, b: T) -> Ordering {
    a.to_order_key().cmp(&b.to_order_key())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const NEG_ZERO: u64 = 0x8000_0000_0000_0000;

    fn f(x: f64) -> FloatValue {
        FloatValue::from_f64(x)
    }

    #[test]
    fn negative_zero_below_positive_zero() {
        let neg = encode_key(FloatValue::from_bits64(NEG_ZERO));
        let pos = encode_key(FloatValue::from_bits64(0));
        assert!(neg < pos);
        assert_eq!(neg.key(), 0x7fff_ffff_ffff_ffff);
        assert_eq!(pos.key(), 0x8000_0000_0000_0000);
    }

    #[test]
    fn finite_below_nan_and_neg_inf_lowest_non_nan() {
        assert_eq!(cmp_total(f(5.0), f(f64::NAN)).unwrap(), Ordering::Less);
        assert_eq!(cmp_total(f(5.0), f(-f64::NAN)).unwrap(), Ordering::Greater);
        assert_eq!(
            cmp_total(f(f64::NEG_INFINITY), f(f64::MIN)).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            cmp_total(f(f64::MAX), f(f64::INFINITY)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn nan_payloads_ordered_by_encoding() {
        let quiet = |p: u64| FloatValue::from_bits64(0x7ff8_0000_0000_0000 | p);
        let signaling = FloatValue::from_bits64(0x7ff0_0000_0000_0001);
        assert_eq!(cmp_total(quiet(1), quiet(2)).unwrap(), Ordering::Less);
        assert_eq!(cmp_total(signaling, quiet(0)).unwrap(), Ordering::Less);
        assert_eq!(
            cmp_total(f(f64::INFINITY), signaling).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn binary32_chain() {
        let chain = [
            0xffc0_0000u32, // -qNaN
            0xff80_0001,    // -sNaN
            0xff80_0000,    // -inf
            0xbf80_0000,    // -1
            0x8000_0001,    // -min subnormal
            0x8000_0000,    // -0
            0x0000_0000,    // +0
            0x0000_0001,
            0x3f80_0000,
            0x7f80_0000,
            0x7f80_0001,
            0x7fc0_0000,
        ];
        for w in chain.windows(2) {
            let a = FloatValue::from_bits32(w[0]);
            let b = FloatValue::from_bits32(w[1]);
            assert_eq!(cmp_total(a, b).unwrap(), Ordering::Less, "{a:?} < {b:?}");
        }
    }

    #[test]
    fn width_mismatch_is_rejected() {
        let a = FloatValue::from_f32(1.0);
        let b = FloatValue::from_f64(1.0);
        assert!(matches!(cmp_total(a, b), Err(Error::WidthMismatch { .. })));
        assert!(matches!(
            value_equal(a, b),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn value_equal_is_bit_identity() {
        assert!(!value_equal(f(0.0), f(-0.0)).unwrap());
        let nan = FloatValue::from_bits64(0x7ff8_0000_0000_0001);
        assert!(value_equal(nan, nan).unwrap());
        assert!(value_equal(f(1.5), f(1.5)).unwrap());
    }

    #[test]
    fn width_parses() {
        assert_eq!("f32".parse::<Width>().unwrap(), Width::Binary32);
        assert_eq!("f64".parse::<Width>().unwrap(), Width::Binary64);
        assert!("f16".parse::<Width>().is_err());
    }

    proptest! {
        #[test]
        fn key_is_a_bijection_64(bits in any::<u64>()) {
            let v = FloatValue::from_bits64(bits);
            prop_assert_eq!(encode_key(v).decode(), v);
        }

        #[test]
        fn key_is_a_bijection_32(bits in any::<u32>()) {
            let v = FloatValue::from_bits32(bits);
            prop_assert_eq!(encode_key(v).decode(), v);
        }

        #[test]
        fn refines_numeric_order(a in any::<f64>(), b in any::<f64>()) {
            prop_assume!(!a.is_nan() && !b.is_nan());
            if a < b {
                prop_assert_eq!(cmp_total(f(a), f(b)).unwrap(), Ordering::Less);
            }
        }

        #[test]
        fn matches_std_total_cmp(a in any::<u64>(), b in any::<u64>()) {
            let (x, y) = (f64::from_bits(a), f64::from_bits(b));
            prop_assert_eq!(cmp_bits(a, b), x.total_cmp(&y));
        }

        #[test]
        fn transitive(a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let mut v = [a, b, c];
            v.sort_by(|x, y| cmp_bits(*x, *y));
            prop_assert_ne!(cmp_bits(v[0], v[1]), Ordering::Greater);
            prop_assert_ne!(cmp_bits(v[1], v[2]), Ordering::Greater);
            if cmp_bits(v[0], v[1]) == Ordering::Less && cmp_bits(v[1], v[2]) == Ordering::Less {
                prop_assert_eq!(cmp_bits(v[0], v[2]), Ordering::Less);
            }
        }

        #[test]
        fn equal_iff_bit_identical(a in any::<u64>(), b in any::<u64>()) {
            let eq = cmp_total(FloatValue::from_bits64(a), FloatValue::from_bits64(b)).unwrap()
                == Ordering::Equal;
            prop_assert_eq!(eq, a == b);
        }
    }
}
