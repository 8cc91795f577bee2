//! The binary file format: raw contiguous IEEE-754 values in little-endian
//! byte order, no header. The width is supplied out of band, and the element
//! count is the file size divided by the width.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::marker::PhantomData;
use std::path::Path;

use crate::error::{Error, Result};
use crate::seq::FloatSeq;
use crate::total_order::{RawBits, Width};

/// Default buffer size for streaming readers and writers.
pub const DEFAULT_IO_BUFFER: usize = 1 << 20;

/// Number of elements in the file at `path`, rejecting partial elements.
pub fn element_count(path: &Path, width: Width) -> Result<u64> {
    let len = fs::metadata(path).map_err(|e| Error::io(path, e))?.len();
    if len % width.bytes() as u64 != 0 {
        return Err(Error::Format(format!(
            "{}: size {len} is not a multiple of {} ({width})",
            path.display(),
            width.bytes()
        )));
    }
    Ok(len / width.bytes() as u64)
}

pub fn read_file(path: &Path, width: Width) -> Result<FloatSeq> {
    element_count(path, width)?;
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    FloatSeq::from_le_bytes(width, &bytes)
}

pub fn write_file(path: &Path, seq: &FloatSeq) -> Result<()> {
    fs::write(path, seq.to_le_bytes()).map_err(|e| Error::io(path, e))
}

/// Streams elements of one width from a byte source, front to back.
pub struct ElementReader<R, T> {
    inner: R,
    buf: Vec<u8>,
    _width: PhantomData<T>,
}

impl<T: RawBits> ElementReader<BufReader<File>, T> {
    pub fn open(path: &Path, io_buffer: usize) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::new(BufReader::with_capacity(
            io_buffer.max(T::WIDTH.bytes()),
            file,
        )))
    }
}

impl<R: Read, T: RawBits> ElementReader<R, T> {
    pub fn new(inner: R) -> Self {
        ElementReader {
            inner,
            buf: vec![0; T::WIDTH.bytes()],
            _width: PhantomData,
        }
    }

    /// Next element, `Ok(None)` at a clean end of input. A trailing partial
    /// element is an `UnexpectedEof` error.
    pub fn next_element(&mut self) -> io::Result<Option<T>> {
        let mut filled = 0;
        while filled < self.buf.len() {
            match self.inner.read(&mut self.buf[filled..]) {
                Ok(0) if filled == 0 => return Ok(None),
                Ok(0) => {
                    return Err(io::Error::new(
                        io::ErrorKind::UnexpectedEof,
                        "trailing partial element",
                    ))
                }
                Ok(k) => filled += k,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Some(T::read_le(&self.buf)))
    }

    /// Appends up to `max` elements to `out`; returns how many were read.
    pub fn read_chunk(&mut self, out: &mut Vec<T>, max: usize) -> io::Result<usize> {
        let mut n = 0;
        while n < max {
            match self.next_element()? {
                Some(x) => out.push(x),
                None => break,
            }
            n += 1;
        }
        Ok(n)
    }

    pub fn into_inner(self) -> R {
        self.inner
    }
}

/// Buffered element sink.
pub struct ElementWriter<W: Write, T> {
    inner: BufWriter<W>,
    tmp: Vec<u8>,
    written: u64,
    _width: PhantomData<T>,
}

impl<W: Write, T: RawBits> ElementWriter<W, T> {
    pub fn new(inner: W, io_buffer: usize) -> Self {
        ElementWriter {
            inner: BufWriter::with_capacity(io_buffer.max(T::WIDTH.bytes()), inner),
            tmp: Vec::with_capacity(8),
            written: 0,
            _width: PhantomData,
        }
    }

    #[inline]
    pub fn push(&mut self, x: T) -> io::Result<()> {
        self.tmp.clear();
        x.extend_le(&mut self.tmp);
        self.written += 1;
        self.inner.write_all(&self.tmp)
    }

    pub fn push_all(&mut self, xs: &[T]) -> io::Result<()> {
        self.tmp.clear();
        for x in xs {
            x.extend_le(&mut self.tmp);
        }
        self.written += xs.len() as u64;
        self.inner.write_all(&self.tmp)
    }

    pub fn written(&self) -> u64 {
        self.written
    }

    pub fn finish(self) -> io::Result<W> {
        self.inner.into_inner().map_err(|e| e.into_error())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.bin");
        let s = FloatSeq::F64(vec![0x7ff8_0000_0000_0003, 0x8000_0000_0000_0000, 1]);
        write_file(&p, &s).unwrap();
        assert_eq!(element_count(&p, Width::Binary64).unwrap(), 3);
        assert_eq!(read_file(&p, Width::Binary64).unwrap(), s);
        assert_eq!(read_file(&p, Width::Binary32).unwrap().len(), 6);
    }

    #[test]
    fn partial_file_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.bin");
        fs::write(&p, [0u8; 9]).unwrap();
        assert!(matches!(
            read_file(&p, Width::Binary64),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            read_file(&dir.path().join("missing"), Width::Binary64),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn streaming_reader_chunks() {
        let bytes = FloatSeq::F32(vec![1, 2, 3, 4, 5]).to_le_bytes();
        let mut r: ElementReader<_, u32> = ElementReader::new(&bytes[..]);
        let mut out = Vec::new();
        assert_eq!(r.read_chunk(&mut out, 2).unwrap(), 2);
        assert_eq!(r.read_chunk(&mut out, 10).unwrap(), 3);
        assert_eq!(out, vec![1, 2, 3, 4, 5]);
        assert_eq!(r.next_element().unwrap(), None);

        let mut r: ElementReader<_, u32> = ElementReader::new(&bytes[..7]);
        assert_eq!(r.next_element().unwrap(), Some(1));
        assert_eq!(
            r.next_element().unwrap_err().kind(),
            io::ErrorKind::UnexpectedEof
        );
    }
}
