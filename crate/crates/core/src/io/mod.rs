//! Head-vector treebanks: reading, per-sentence feature extraction to CSV,
//! and collections of treebanks.
//!
//! A treebank file holds one sentence per line as a head vector: base-10
//! integers separated by spaces or tabs, `0` marking the root. Blank lines are
//! ignored; LF and CRLF line endings are accepted.
//!
//! The CSV output has the header `sentence_id,n,<features...>` (`n` is not
//! repeated if requested again). `sentence_id` is the 1-based index of the
//! sentence among the non-blank lines of the input, so skipped sentences
//! leave gaps. Integers print as integers, booleans as `0`/`1`, ratios either
//! with six fraction digits or as exact `p/q`, and features undefined on a
//! sentence (hubiness below four vertices, flux on one vertex) as empty cells.

pub mod features;

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::graphs::{Arrangement, GraphError, HeadVector};

pub use features::{
    feature_names, lookup, Feature, FeatureInput, FeatureSpec, FeatureSpecError, FeatureValue,
    FEATURES,
};

/// Sentences handed to the worker pool at a time.
const BATCH: usize = 4096;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}: file not found", .path.display())]
    NotFound { path: PathBuf },
    #[error("{}: read failed: {source}", .path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: write failed: {source}", .path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}: {source}", .path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        source: GraphError,
    },
    #[error("{0}")]
    Config(String),
}

impl IoError {
    fn open(path: &Path, source: std::io::Error) -> Self {
        if source.kind() == std::io::ErrorKind::NotFound {
            IoError::NotFound {
                path: path.to_path_buf(),
            }
        } else {
            IoError::Read {
                path: path.to_path_buf(),
                source,
            }
        }
    }

    fn write(path: &Path, source: std::io::Error) -> Self {
        IoError::Write {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorPolicy {
    /// Stop at the first malformed sentence or missing file.
    #[default]
    FailFast,
    /// Skip it and list it in the report.
    SkipAndReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RationalFormat {
    /// Decimal with six fraction digits.
    #[default]
    Decimal,
    /// Exact `p/q` (or `p` for integers).
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProcessOptions {
    pub policy: ErrorPolicy,
    pub rationals: RationalFormat,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

/// One non-blank line of a treebank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// 1-based line number in the file.
    pub line: usize,
    /// 1-based index among non-blank lines.
    pub sentence: usize,
    pub head_vector: Result<HeadVector, GraphError>,
}

/// Streaming reader over a head-vector file, in file order.
///
/// Under [`ErrorPolicy::FailFast`] a malformed line ends the stream with
/// [`IoError::Malformed`]; otherwise it is yielded as a record holding the
/// error.
pub struct TreebankSource {
    path: PathBuf,
    lines: std::io::Lines<BufReader<File>>,
    policy: ErrorPolicy,
    line: usize,
    sentence: usize,
    failed: bool,
}

pub fn read_head_vectors(
    path: impl AsRef<Path>,
    policy: ErrorPolicy,
) -> Result<TreebankSource, IoError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| IoError::open(path, e))?;
    Ok(TreebankSource {
        path: path.to_path_buf(),
        lines: BufReader::new(file).lines(),
        policy,
        line: 0,
        sentence: 0,
        failed: false,
    })
}

impl TreebankSource {
    pub fn path(&self) -> &Path {
        &self.path
    }
}

impl Iterator for TreebankSource {
    type Item = Result<Record, IoError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            let text = match self.lines.next()? {
                Ok(text) => text,
                Err(source) => {
                    self.failed = true;
                    return Some(Err(IoError::Read {
                        path: self.path.clone(),
                        source,
                    }));
                }
            };
            self.line += 1;
            if text.trim().is_empty() {
                continue;
            }
            self.sentence += 1;
            let head_vector = text.parse::<HeadVector>();
            if let (ErrorPolicy::FailFast, Err(source)) = (self.policy, &head_vector) {
                self.failed = true;
                return Some(Err(IoError::Malformed {
                    path: self.path.clone(),
                    line: self.line,
                    source: source.clone(),
                }));
            }
            return Some(Ok(Record {
                line: self.line,
                sentence: self.sentence,
                head_vector,
            }));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedSentence {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessingReport {
    pub input: PathBuf,
    /// Where rows were written.
    pub output: PathBuf,
    pub processed: usize,
    pub skipped: Vec<SkippedSentence>,
    pub elapsed: Duration,
}

/// Column names of the CSV produced for `features`.
pub fn csv_header(features: &FeatureSpec) -> Vec<String> {
    let mut header = vec!["sentence_id".to_string(), "n".to_string()];
    header.extend(features.names().filter(|&n| n != "n").map(String::from));
    header
}

/// The cells of one sentence's row, without `sentence_id`.
pub fn feature_row(
    hv: &HeadVector,
    features: &FeatureSpec,
    rationals: RationalFormat,
) -> Vec<String> {
    let t = hv.to_tree();
    let a = Arrangement::identity(hv.len());
    let input = FeatureInput::sentence(&t, &a);
    let mut row = vec![hv.len().to_string()];
    for f in features.features().iter().filter(|f| f.name != "n") {
        row.push(match f.evaluate(&input) {
            Ok(v) => render(v, rationals),
            Err(_) => String::new(),
        });
    }
    row
}

pub fn render(v: FeatureValue, rationals: RationalFormat) -> String {
    match (v, rationals) {
        (FeatureValue::Ratio(_), RationalFormat::Decimal) => format!("{:.6}", v.to_f64()),
        _ => v.to_string(),
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn with_pool<T: Send>(
    threads: Option<usize>,
    job: impl FnOnce() -> T + Send,
) -> Result<T, IoError> {
    match threads {
        None => Ok(job()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| IoError::Config(format!("cannot start {k} worker threads: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Computes the rows of every valid sentence of `input`, in input order,
/// handing each to `emit` with its sentence id.
fn process_source(
    input: &Path,
    features: &FeatureSpec,
    options: &ProcessOptions,
    mut emit: impl FnMut(usize, Vec<String>) -> Result<(), IoError>,
) -> Result<(usize, Vec<SkippedSentence>), IoError> {
    let mut source = read_head_vectors(input, options.policy)?;
    let mut processed = 0;
    let mut skipped = Vec::new();
    loop {
        let mut batch = Vec::with_capacity(BATCH);
        let mut done = true;
        for record in source.by_ref() {
            let record = record?;
            match record.head_vector {
                Ok(hv) => batch.push((record.sentence, hv)),
                Err(e) => skipped.push(SkippedSentence {
                    line: record.line,
                    reason: e.to_string(),
                }),
            }
            if batch.len() == BATCH {
                done = false;
                break;
            }
        }
        let rows: Vec<(usize, Vec<String>)> = batch
            .par_iter()
            .map(|(id, hv)| (*id, feature_row(hv, features, options.rationals)))
            .collect();
        processed += rows.len();
        for (id, row) in rows {
            emit(id, row)?;
        }
        if done {
            return Ok((processed, skipped));
        }
    }
}

/// Writes one CSV row per valid sentence of `input` to `output`.
pub fn process_treebank(
    input: impl AsRef<Path>,
    output: impl AsRef<Path>,
    features: &FeatureSpec,
    options: &ProcessOptions,
) -> Result<ProcessingReport, IoError> {
    let (input, output) = (input.as_ref(), output.as_ref());
    let start = Instant::now();
    // Open the input first so a missing file leaves no output behind.
    File::open(input).map_err(|e| IoError::open(input, e))?;
    let file = File::create(output).map_err(|e| IoError::write(output, e))?;
    let mut w = csv_writer(BufWriter::new(file));
    let werr = |e: csv::Error| IoError::write(output, e.into());
    w.write_record(csv_header(features)).map_err(werr)?;
    let (processed, skipped) = with_pool(options.threads, || {
        process_source(input, features, options, |id, row| {
            w.write_field(id.to_string()).map_err(werr)?;
            w.write_record(&row).map_err(werr)
        })
    })??;
    w.flush().map_err(|e| IoError::write(output, e))?;
    Ok(ProcessingReport {
        input: input.to_path_buf(),
        output: output.to_path_buf(),
        processed,
        skipped,
        elapsed: start.elapsed(),
    })
}

/// Where a collection's rows go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollectionOutput {
    /// One `<stem>.csv` per treebank in this directory.
    Directory(PathBuf),
    /// A single CSV with a leading `treebank` column holding file names.
    Merged(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CollectionReport {
    pub treebanks: Vec<ProcessingReport>,
    /// Listed files that could not be opened (only under
    /// [`ErrorPolicy::SkipAndReport`]).
    pub missing: Vec<PathBuf>,
}

/// Reads a collection list: one treebank path per line, relative paths taken
/// from the list's directory, blank lines and `#` comments ignored.
pub fn read_collection_list(list: impl AsRef<Path>) -> Result<Vec<PathBuf>, IoError> {
    let list = list.as_ref();
    let text = std::fs::read_to_string(list).map_err(|e| IoError::open(list, e))?;
    let base = list.parent().unwrap_or(Path::new(""));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect())
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Processes every treebank of a collection; treebanks run in parallel but
/// outputs match a sequential run byte for byte.
pub fn process_collection(
    list: impl AsRef<Path>,
    output: &CollectionOutput,
    features: &FeatureSpec,
    options: &ProcessOptions,
) -> Result<CollectionReport, IoError> {
    let members = read_collection_list(list)?;
    let mut report = CollectionReport::default();
    let mut present = Vec::with_capacity(members.len());
    for m in members {
        if m.is_file() {
            present.push(m);
        } else if options.policy == ErrorPolicy::SkipAndReport {
            report.missing.push(m);
        } else {
            return Err(IoError::NotFound { path: m });
        }
    }
    // Each member runs sequentially inside the collection-level parallelism.
    let inner = ProcessOptions {
        threads: None,
        ..*options
    };
    match output {
        CollectionOutput::Directory(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| IoError::write(dir, e))?;
            let results = with_pool(options.threads, || {
                present
                    .par_iter()
                    .map(|m| {
                        let stem = m.file_stem().map(|s| s.to_string_lossy().into_owned());
                        let out = dir.join(format!("{}.csv", stem.unwrap_or_default()));
                        process_treebank(m, out, features, &inner)
                    })
                    .collect::<Vec<_>>()
            })?;
            for r in results {
                report.treebanks.push(r?);
            }
        }
        CollectionOutput::Merged(path) => {
            let start = Instant::now();
            let results = with_pool(options.threads, || {
                present
                    .par_iter()
                    .map(|m| {
                        let mut rows = Vec::new();
                        let (processed, skipped) =
                            process_source(m, features, &inner, |id, row| {
                                rows.push((id, row));
                                Ok(())
                            })?;
                        Ok((rows, processed, skipped))
                    })
                    .collect::<Vec<Result<_, IoError>>>()
            })?;
            let file = File::create(path).map_err(|e| IoError::write(path, e))?;
            let mut w = csv_writer(BufWriter::new(file));
            let werr = |e: csv::Error| IoError::write(path, e.into());
            let mut header = vec!["treebank".to_string()];
            header.extend(csv_header(features));
            w.write_record(&header).map_err(werr)?;
            for (m, result) in present.iter().zip(results) {
                let (rows, processed, skipped) = result?;
                let name = file_name(m);
                for (id, row) in rows {
                    w.write_field(&name).map_err(werr)?;
                    w.write_field(id.to_string()).map_err(werr)?;
                    w.write_record(&row).map_err(werr)?;
                }
                report.treebanks.push(ProcessingReport {
                    input: m.clone(),
                    output: path.clone(),
                    processed,
                    skipped,
                    elapsed: start.elapsed(),
                });
            }
            w.flush().map_err(|e| IoError::write(path, e))?;
        }
    }
    Ok(report)
}
