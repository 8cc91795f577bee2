//! Out-of-core sort under a memory budget.
//!
//! Run formation reads the input front to back in chunks of
//! `memory_budget_bytes / element_size` elements, sorts each chunk with the
//! in-memory sort and spills it as `run_{index:06}.bin`. Run boundaries are a
//! function of the input size and the budget only.
//!
//! The merge emits the smallest head under the total order, and on equal
//! heads the run with the smaller index (earlier in the input) wins. With
//! more runs than `fan_in`, runs are merged in passes over consecutive groups
//! in ascending index order; each merged run inherits the smallest index of
//! its group, so any fan-in produces the same bytes as one wide merge.

mod loser_tree;

use std::fs::{self, File};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::format::{element_count, ElementReader, ElementWriter, DEFAULT_IO_BUFFER};
use crate::parallel::parallel_sort_slice;
use crate::sort::sort_slice_with_scratch;
use crate::total_order::{RawBits, Width};

use loser_tree::LoserTree;

pub const DEFAULT_FAN_IN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalConfig {
    /// Size of the run-formation element buffer.
    pub memory_budget_bytes: usize,
    pub spill_dir: PathBuf,
    /// Maximum runs merged at once, at least 2.
    pub fan_in: usize,
    pub io_buffer_bytes: usize,
    /// Workers used to sort each chunk.
    pub threads: usize,
}

impl ExternalConfig {
    pub fn new(memory_budget_bytes: usize, spill_dir: impl Into<PathBuf>) -> Self {
        ExternalConfig {
            memory_budget_bytes,
            spill_dir: spill_dir.into(),
            fan_in: DEFAULT_FAN_IN,
            io_buffer_bytes: DEFAULT_IO_BUFFER,
            threads: 1,
        }
    }

    pub fn with_fan_in(mut self, fan_in: usize) -> Self {
        self.fan_in = fan_in;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_io_buffer(mut self, bytes: usize) -> Self {
        self.io_buffer_bytes = bytes;
        self
    }

    /// Elements per run for `width`.
    pub fn chunk_elements(&self, width: Width) -> Result<usize> {
        self.validate()?;
        match self.memory_budget_bytes / width.bytes() {
            0 => Err(Error::usage(format!(
                "memory budget of {} bytes cannot hold one {width} element",
                self.memory_budget_bytes
            ))),
            n => Ok(n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.fan_in < 2 {
            return Err(Error::usage(format!(
                "fan-in must be >= 2, got {}",
                self.fan_in
            )));
        }
        if self.io_buffer_bytes == 0 {
            return Err(Error::usage("io buffer size must be positive"));
        }
        if self.threads == 0 {
            return Err(Error::usage("thread count must be at least 1"));
        }
        Ok(())
    }
}

/// One sorted run on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDescriptor {
    /// Position of the run's source data in the input (0-based).
    pub index: usize,
    pub count: u64,
    pub path: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExternalSummary {
    pub elements: u64,
    pub runs: usize,
    /// Merge passes over the data; 0 for empty input.
    pub passes: usize,
    /// Largest run-formation element buffer, in bytes.
    pub peak_element_bytes: usize,
    /// Largest sort scratch buffer, in bytes.
    pub peak_scratch_bytes: usize,
}

pub fn run_file_name(index: usize) -> String {
    format!("run_{index:06}.bin")
}

fn merged_run_file_name(pass: usize, index: usize) -> String {
    format!("pass{pass:02}_run_{index:06}.bin")
}

struct Formed {
    runs: Vec<RunDescriptor>,
    peak_element_bytes: usize,
    peak_scratch_bytes: usize,
}

/// Splits `input` into sorted runs written to `cfg.spill_dir`.
pub fn form_runs<R: Read>(
    input: R,
    width: Width,
    cfg: &ExternalConfig,
) -> Result<Vec<RunDescriptor>> {
    Ok(form_runs_measured(input, width, cfg)?.runs)
}

fn form_runs_measured<R: Read>(input: R, width: Width, cfg: &ExternalConfig) -> Result<Formed> {
    match width {
        Width::Binary32 => form_runs_typed::<R, u32>(input, cfg),
        Width::Binary64 => form_runs_typed::<R, u64>(input, cfg),
    }
}

fn form_runs_typed<R: Read, T: RawBits>(input: R, cfg: &ExternalConfig) -> Result<Formed> {
    let chunk = cfg.chunk_elements(T::WIDTH)?;
    let input_name = PathBuf::from("<input>");
    let mut reader: ElementReader<_, T> = ElementReader::new(input);
    let mut buf: Vec<T> = Vec::with_capacity(chunk);
    let mut scratch: Vec<T> = Vec::new();
    let mut formed = Formed {
        runs: Vec::new(),
        peak_element_bytes: 0,
        peak_scratch_bytes: 0,
    };
    loop {
        buf.clear();
        let n = reader
            .read_chunk(&mut buf, chunk)
            .map_err(|e| read_error(&input_name, e))?;
        if n == 0 {
            break;
        }
        formed.peak_element_bytes = formed
            .peak_element_bytes
            .max(buf.capacity() * T::WIDTH.bytes());
        if cfg.threads > 1 {
            parallel_sort_slice(&mut buf, cfg.threads)?;
            formed.peak_scratch_bytes = formed.peak_scratch_bytes.max(n * T::WIDTH.bytes());
        } else {
            scratch.resize(n, T::from_u64(0));
            sort_slice_with_scratch(&mut buf, &mut scratch);
            formed.peak_scratch_bytes = formed
                .peak_scratch_bytes
                .max(scratch.capacity() * T::WIDTH.bytes());
        }
        let index = formed.runs.len();
        let path = cfg.spill_dir.join(run_file_name(index));
        write_run(&path, &buf, cfg.io_buffer_bytes)?;
        formed.runs.push(RunDescriptor {
            index,
            count: n as u64,
            path,
        });
        if n < chunk {
            break;
        }
    }
    Ok(formed)
}

fn read_error(path: &Path, e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        Error::Format(format!("{}: trailing partial element", path.display()))
    } else {
        Error::io(path, e)
    }
}

fn write_run<T: RawBits>(path: &Path, data: &[T], io_buffer: usize) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w: ElementWriter<_, T> = ElementWriter::new(file, io_buffer);
    for block in data.chunks(1 << 14) {
        w.push_all(block).map_err(|e| Error::io(path, e))?;
    }
    w.finish()
        .and_then(|f| f.sync_data().map(|_| ()))
        .map_err(|e| Error::io(path, e))
}

/// A sorted source for the k-way merge: run index, display name, bytes.
pub struct MergeSource<R> {
    pub run: usize,
    pub name: PathBuf,
    pub reader: R,
}

/// Merges sorted element streams into `out`, smallest run index first on
/// ties. Sources must be given in ascending run order. Every source is read
/// strictly front to back; an out-of-order element is an integrity error
/// naming its run.
pub fn merge_sorted_streams<R: Read, W: Write>(
    width: Width,
    sources: Vec<MergeSource<R>>,
    out: W,
    io_buffer: usize,
) -> Result<u64> {
    match width {
        Width::Binary32 => merge_typed::<R, W, u32>(sources, out, io_buffer),
        Width::Binary64 => merge_typed::<R, W, u64>(sources, out, io_buffer),
    }
}

fn merge_typed<R: Read, W: Write, T: RawBits>(
    sources: Vec<MergeSource<R>>,
    out: W,
    io_buffer: usize,
) -> Result<u64> {
    let out_name = PathBuf::from("<output>");
    let mut readers = Vec::with_capacity(sources.len());
    let mut meta = Vec::with_capacity(sources.len());
    for s in sources {
        readers.push(ElementReader::<R, T>::new(s.reader));
        meta.push((s.run, s.name, 0u64));
    }

    let mut pull = |i: usize, readers: &mut Vec<ElementReader<R, T>>| -> Result<Option<T>> {
        let x = readers[i]
            .next_element()
            .map_err(|e| read_error(&meta[i].1, e))?;
        meta[i].2 += u64::from(x.is_some());
        Ok(x.map(|b| b.to_order_key()))
    };

    let heads = (0..readers.len())
        .map(|i| pull(i, &mut readers))
        .collect::<Result<Vec<_>>>()?;
    let mut tree = LoserTree::new(heads);
    let mut w: ElementWriter<_, T> = ElementWriter::new(out, io_buffer);
    while let Some((src, key)) = tree.winner() {
        w.push(T::from_order_key(key))
            .map_err(|e| Error::io(&out_name, e))?;
        let next = pull(src, &mut readers)?;
        if let Some(n) = next {
            if n < key {
                return Err(Error::Integrity {
                    run: meta[src].0,
                    position: meta[src].2 - 1,
                });
            }
        }
        tree.replace_winner(next);
    }
    let written = w.written();
    let mut sink = w.finish().map_err(|e| Error::io(&out_name, e))?;
    sink.flush().map_err(|e| Error::io(&out_name, e))?;
    Ok(written)
}

fn open_sources(
    runs: &[RunDescriptor],
    io_buffer: usize,
) -> Result<Vec<MergeSource<io::BufReader<File>>>> {
    runs.iter()
        .map(|r| {
            let f = File::open(&r.path).map_err(|e| Error::io(&r.path, e))?;
            Ok(MergeSource {
                run: r.index,
                name: r.path.clone(),
                reader: io::BufReader::with_capacity(io_buffer, f),
            })
        })
        .collect()
}

/// Merges `runs` into `out` and returns the element count. See
/// [`kway_merge_passes`] for the pass structure.
pub fn kway_merge<W: Write>(
    runs: &[RunDescriptor],
    out: W,
    width: Width,
    cfg: &ExternalConfig,
) -> Result<u64> {
    kway_merge_passes(runs, out, width, cfg).map(|(n, _)| n)
}

/// Like [`kway_merge`], also returning the number of passes. Intermediate
/// runs are written to `cfg.spill_dir` and removed once consumed; the input
/// runs are left in place.
pub fn kway_merge_passes<W: Write>(
    runs: &[RunDescriptor],
    out: W,
    width: Width,
    cfg: &ExternalConfig,
) -> Result<(u64, usize)> {
    cfg.validate()?;
    let mut runs = runs.to_vec();
    runs.sort_by_key(|r| r.index);
    if runs.windows(2).any(|w| w[0].index == w[1].index) {
        return Err(Error::usage("run indices must be distinct"));
    }
    if runs.is_empty() {
        return Ok((0, 0));
    }

    let mut pass = 0;
    let mut intermediate = vec![false; runs.len()];
    while runs.len() > cfg.fan_in {
        pass += 1;
        let mut next = Vec::new();
        let mut next_intermediate = Vec::new();
        for (group, temp) in runs.chunks(cfg.fan_in).zip(intermediate.chunks(cfg.fan_in)) {
            if group.len() == 1 {
                next.push(group[0].clone());
                next_intermediate.push(temp[0]);
                continue;
            }
            let index = group[0].index;
            let path = cfg.spill_dir.join(merged_run_file_name(pass, index));
            let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
            let count = merge_sorted_streams(
                width,
                open_sources(group, cfg.io_buffer_bytes)?,
                file,
                cfg.io_buffer_bytes,
            )?;
            for (r, t) in group.iter().zip(temp) {
                if *t {
                    fs::remove_file(&r.path).map_err(|e| Error::io(&r.path, e))?;
                }
            }
            next.push(RunDescriptor { index, count, path });
            next_intermediate.push(true);
        }
        runs = next;
        intermediate = next_intermediate;
    }
    let count = merge_sorted_streams(
        width,
        open_sources(&runs, cfg.io_buffer_bytes)?,
        out,
        cfg.io_buffer_bytes,
    )?;
    for (r, t) in runs.iter().zip(&intermediate) {
        if *t {
            fs::remove_file(&r.path).map_err(|e| Error::io(&r.path, e))?;
        }
    }
    Ok((count, pass + 1))
}

/// Sorts the binary file at `input_path` into `output_path` using at most
/// the configured run buffer. The output is byte-identical to sorting the
/// whole file in memory. Spill files live in a private directory under
/// `cfg.spill_dir` and are removed when the call returns; on failure the
/// partial output file is removed too.
pub fn external_sort(
    input_path: &Path,
    output_path: &Path,
    width: Width,
    cfg: &ExternalConfig,
) -> Result<ExternalSummary> {
    cfg.chunk_elements(width)?;
    let elements = element_count(input_path, width)?;
    let spill = tempfile::Builder::new()
        .prefix("detsort-spill-")
        .tempdir_in(&cfg.spill_dir)
        .map_err(|e| Error::io(&cfg.spill_dir, e))?;
    let run_cfg = ExternalConfig {
        spill_dir: spill.path().to_path_buf(),
        ..cfg.clone()
    };

    let input = File::open(input_path).map_err(|e| Error::io(input_path, e))?;
    let formed = form_runs_measured(
        io::BufReader::with_capacity(cfg.io_buffer_bytes, input),
        width,
        &run_cfg,
    )?;

    let result = File::create(output_path)
        .map_err(|e| Error::io(output_path, e))
        .and_then(|out| {
            let (n, passes) = kway_merge_passes(&formed.runs, &out, width, &run_cfg)?;
            out.sync_data().map_err(|e| Error::io(output_path, e))?;
            Ok((n, passes))
        });
    let (written, passes) = match result {
        Ok(v) => v,
        Err(e) => {
            let _ = fs::remove_file(output_path);
            return Err(e);
        }
    };
    if written != elements {
        let _ = fs::remove_file(output_path);
        return Err(Error::Execution(format!(
            "merged {written} elements but input holds {elements}"
        )));
    }
    spill.close().map_err(|e| Error::io(&cfg.spill_dir, e))?;
    Ok(ExternalSummary {
        elements,
        runs: formed.runs.len(),
        passes,
        peak_element_bytes: formed.peak_element_bytes,
        peak_scratch_bytes: formed.peak_scratch_bytes,
    })
}
