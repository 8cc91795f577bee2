//! Output identity checks: SHA-256 over the little-endian serialization.
//!
//! The digest is endian-normalized, so it can be compared across hosts.

use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, Read};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::format::{element_count, ElementReader, DEFAULT_IO_BUFFER};
use crate::seq::FloatSeq;
use crate::total_order::{RawBits, Width};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceDigest {
    hex: String,
}

impl SequenceDigest {
    pub const ALGORITHM: &'static str = "sha256";

    fn from_hasher(h: Sha256) -> Self {
        SequenceDigest {
            hex: hex::encode(h.finalize()),
        }
    }

    /// 64 lowercase hex characters.
    pub fn hex(&self) -> &str {
        &self.hex
    }
}

impl fmt::Display for SequenceDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", Self::ALGORITHM, self.hex)
    }
}

pub fn digest_sequence(s: &FloatSeq) -> SequenceDigest {
    fn go<T: RawBits>(v: &[T]) -> Sha256 {
        let mut h = Sha256::new();
        let mut buf = Vec::with_capacity(1 << 16);
        for block in v.chunks((1 << 16) / T::WIDTH.bytes()) {
            buf.clear();
            for b in block {
                b.extend_le(&mut buf);
            }
            h.update(&buf);
        }
        h
    }
    SequenceDigest::from_hasher(crate::dispatch_seq!(s, v => go(v)))
}

/// Streaming digest of a binary float file of the given width. Equal to
/// [`digest_sequence`] of the decoded contents.
pub fn digest_file(path: &Path, width: Width) -> Result<SequenceDigest> {
    element_count(path, width)?;
    let mut f = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut h = Sha256::new();
    let mut buf = vec![0u8; DEFAULT_IO_BUFFER];
    loop {
        match f.read(&mut buf) {
            Ok(0) => break,
            Ok(n) => h.update(&buf[..n]),
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(Error::io(path, e)),
        }
    }
    Ok(SequenceDigest::from_hasher(h))
}

/// Result of comparing two binary float files element by element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Identical,
    /// Index of the first element that differs or is missing on one side.
    DifferAt(u64),
}

pub fn compare_files(a: &Path, b: &Path, width: Width) -> Result<Comparison> {
    element_count(a, width)?;
    element_count(b, width)?;
    match width {
        Width::Binary32 => compare_typed::<u32>(a, b),
        Width::Binary64 => compare_typed::<u64>(a, b),
    }
}

fn compare_typed<T: RawBits>(a: &Path, b: &Path) -> Result<Comparison> {
    let open = |p: &Path| -> Result<ElementReader<BufReader<File>, T>> {
        ElementReader::open(p, DEFAULT_IO_BUFFER)
    };
    let (mut ra, mut rb) = (open(a)?, open(b)?);
    let mut index = 0u64;
    loop {
        let x = ra.next_element().map_err(|e| Error::io(a, e))?;
        let y = rb.next_element().map_err(|e| Error::io(b, e))?;
        match (x, y) {
            (None, None) => return Ok(Comparison::Identical),
            (x, y) if x != y => return Ok(Comparison::DifferAt(index)),
            _ => index += 1,
        }
    }
}
