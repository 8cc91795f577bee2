use crate::error::{Error, Result};
use crate::total_order::{FloatValue, RawBits, Width};

/// A width-uniform sequence of floats, stored as raw bit patterns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FloatSeq {
    F32(Vec<u32>),
    F64(Vec<u64>),
}

/// Dispatches `$body` over the inner vector of a [`FloatSeq`].
#[macro_export]
#[doc(hidden)]
macro_rules! dispatch_seq {
    ($seq:expr, $v:ident => $body:expr) => {
        match $seq {
            $crate::FloatSeq::F32($v) => $body,
            $crate::FloatSeq::F64($v) => $body,
        }
    };
}

impl FloatSeq {
    pub fn empty(width: Width) -> Self {
        match width {
            Width::Binary32 => FloatSeq::F32(Vec::new()),
            Width::Binary64 => FloatSeq::F64(Vec::new()),
        }
    }

    pub fn from_f64s(xs: &[f64]) -> Self {
        FloatSeq::F64(xs.iter().map(|x| x.to_bits()).collect())
    }

    pub fn from_f32s(xs: &[f32]) -> Self {
        FloatSeq::F32(xs.iter().map(|x| x.to_bits()).collect())
    }

    /// Builds a sequence of `width` from individual values, rejecting any
    /// value of another width.
    pub fn from_values(width: Width, values: &[FloatValue]) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| v.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                found: bad.width(),
            });
        }
        Ok(match width {
            Width::Binary32 => FloatSeq::F32(values.iter().map(|v| v.bits() as u32).collect()),
            Width::Binary64 => FloatSeq::F64(values.iter().map(|v| v.bits()).collect()),
        })
    }

    pub fn width(&self) -> Width {
        match self {
            FloatSeq::F32(_) => Width::Binary32,
            FloatSeq::F64(_) => Width::Binary64,
        }
    }

    pub fn len(&self) -> usize {
        dispatch_seq!(self, v => v.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> Option<FloatValue> {
        dispatch_seq!(self, v => v.get(index).map(|b| FloatValue::from_raw(*b)))
    }

    pub fn to_values(&self) -> Vec<FloatValue> {
        dispatch_seq!(self, v => v.iter().map(|b| FloatValue::from_raw(*b)).collect())
    }

    /// Raw little-endian serialization, the on-disk format.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        dispatch_seq!(self, v => encode_le(v))
    }

    pub fn from_le_bytes(width: Width, bytes: &[u8]) -> Result<Self> {
        Ok(match width {
            Width::Binary32 => FloatSeq::F32(decode_le(bytes)?),
            Width::Binary64 => FloatSeq::F64(decode_le(bytes)?),
        })
    }
}

pub(crate) fn encode_le<T: RawBits>(v: &[T]) -> Vec<u8> {
    let mut out = Vec::with_capacity(v.len() * T::WIDTH.bytes());
    for b in v {
        b.extend_le(&mut out);
    }
    out
}

pub(crate) fn decode_le<T: RawBits>(bytes: &[u8]) -> Result<Vec<T>> {
    let size = T::WIDTH.bytes();
    if !bytes.len().is_multiple_of(size) {
        return Err(Error::Format(format!(
            "{} bytes is not a whole number of {}-byte {} elements",
            bytes.len(),
            size,
            T::WIDTH
        )));
    }
    Ok(bytes.chunks_exact(size).map(T::read_le).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mixed_widths_rejected() {
        let vals = [FloatValue::from_f64(1.0), FloatValue::from_f32(2.0)];
        assert!(matches!(
            FloatSeq::from_values(Width::Binary64, &vals),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn partial_element_is_format_error() {
        assert!(matches!(
            FloatSeq::from_le_bytes(Width::Binary64, &[0u8; 12]),
            Err(Error::Format(_))
        ));
        assert_eq!(
            FloatSeq::from_le_bytes(Width::Binary32, &[0u8; 12])
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn little_endian_layout() {
        let s = FloatSeq::from_f64s(&[1.0]);
        assert_eq!(s.to_le_bytes(), vec![0, 0, 0, 0, 0, 0, 0xf0, 0x3f]);
    }

    proptest! {
        #[test]
        fn round_trip_preserves_bits(bits in proptest::collection::vec(any::<u64>(), 0..64)) {
            let s = FloatSeq::F64(bits);
            prop_assert_eq!(FloatSeq::from_le_bytes(Width::Binary64, &s.to_le_bytes()).unwrap(), s);
        }

        #[test]
        fn round_trip_all_nan_32(payloads in proptest::collection::vec(1u32..0x0040_0000, 0..64)) {
            let s = FloatSeq::F32(payloads.iter().map(|p| 0x7f80_0000 | p).collect());
            prop_assert_eq!(FloatSeq::from_le_bytes(Width::Binary32, &s.to_le_bytes()).unwrap(), s);
        }
    }
}
