//! CoNLL-U input and its conversion to head vectors, with optional removal
//! of punctuation and function words and sentence-length filtering.
//!
//! Token lines have ten tab-separated columns; only ID, UPOS and HEAD are
//! used. Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are skipped.
//!
//! When a token is removed, its dependents attach to its nearest retained
//! ancestor. If the root is removed, the leftmost retained token left without
//! a head becomes the root and the others attach to it. Length filters see
//! the number of retained tokens.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graphs::{GraphError, HeadVector};

/// Universal POS tags removed as function words by default.
pub const DEFAULT_FUNCTION_UPOS: [&str; 7] =
    ["ADP", "AUX", "CCONJ", "DET", "PART", "PRON", "SCONJ"];

#[derive(Debug, Error)]
pub enum ConlluError {
    #[error("{}: file not found", .0.display())]
    NotFound(PathBuf),
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: token ids are not 1, 2, 3, ...")]
    NonContiguousIds { line: usize },
    #[error("line {line}: head {head} outside 0..={n}")]
    HeadOutOfRange { line: usize, head: usize, n: usize },
    #[error("sentence at line {line}: {source}")]
    Structure { line: usize, source: GraphError },
    #[error("minimum length {min} exceeds maximum length {max}")]
    BadLengths { min: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConlluToken {
    pub id: usize,
    pub form: String,
    pub upos: String,
    /// 0 for the root.
    pub head: usize,
    pub deprel: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    /// Line of the first token.
    pub line: usize,
    pub tokens: Vec<ConlluToken>,
}

impl Sentence {
    /// The HEAD column as a head vector.
    pub fn head_vector(&self) -> Result<HeadVector, GraphError> {
        HeadVector::try_from(self.tokens.iter().map(|t| t.head).collect::<Vec<_>>())
    }
}

/// Streams the sentences of a CoNLL-U file. A malformed sentence yields one
/// error and the reader resumes at the next sentence.
pub struct ConlluReader<R> {
    lines: std::io::Lines<R>,
    line: usize,
    path: PathBuf,
}

pub fn parse_conllu(path: impl AsRef<Path>) -> Result<ConlluReader<BufReader<File>>, ConlluError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| open_error(path, e))?;
    Ok(ConlluReader::new(BufReader::new(file), path))
}

fn open_error(path: &Path, source: std::io::Error) -> ConlluError {
    if source.kind() == std::io::ErrorKind::NotFound {
        ConlluError::NotFound(path.to_path_buf())
    } else {
        ConlluError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl<R: BufRead> ConlluReader<R> {
    pub fn new(reader: R, path: &Path) -> Self {
        ConlluReader {
            lines: reader.lines(),
            line: 0,
            path: path.to_path_buf(),
        }
    }
}

impl<R: BufRead> Iterator for ConlluReader<R> {
    type Item = Result<Sentence, ConlluError>;

    fn next(&mut self) -> Option<Self::Item> {
        let mut tokens: Vec<ConlluToken> = Vec::new();
        let mut start = 0;
        let mut error: Option<ConlluError> = None;
        loop {
            let text = match self.lines.next() {
                None => break,
                Some(Ok(text)) => text,
                Some(Err(source)) => {
                    return Some(Err(ConlluError::Io {
                        path: self.path.clone(),
                        source,
                    }))
                }
            };
            self.line += 1;
            let text = text.trim_end_matches('\r');
            if text.trim().is_empty() {
                if tokens.is_empty() && error.is_none() {
                    continue;
                }
                break;
            }
            if text.starts_with('#') || error.is_some() {
                continue;
            }
            if start == 0 {
                start = self.line;
            }
            match parse_token(text, self.line) {
                Ok(None) => {}
                Ok(Some(token)) => {
                    if token.id != tokens.len() + 1 {
                        error = Some(ConlluError::NonContiguousIds { line: self.line });
                    } else {
                        tokens.push(token);
                    }
                }
                Err(e) => error = Some(e),
            }
        }
        if let Some(e) = error {
            return Some(Err(e));
        }
        if tokens.is_empty() {
            return None;
        }
        let n = tokens.len();
        if let Some(t) = tokens.iter().find(|t| t.head > n) {
            return Some(Err(ConlluError::HeadOutOfRange {
                line: start + t.id - 1,
                head: t.head,
                n,
            }));
        }
        Some(Ok(Sentence {
            line: start,
            tokens,
        }))
    }
}

/// `Ok(None)` for multiword ranges and empty nodes.
fn parse_token(text: &str, line: usize) -> Result<Option<ConlluToken>, ConlluError> {
    let cols: Vec<&str> = text.split('\t').collect();
    if cols.len() != 10 {
        return Err(ConlluError::MalformedLine {
            line,
            reason: format!("expected 10 tab-separated columns, found {}", cols.len()),
        });
    }
    if cols[0].contains('-') || cols[0].contains('.') {
        return Ok(None);
    }
    let number = |col: &str, what: &str| {
        col.parse::<usize>()
            .map_err(|_| ConlluError::MalformedLine {
                line,
                reason: format!("{what} {col:?} is not a non-negative integer"),
            })
    };
    Ok(Some(ConlluToken {
        id: number(cols[0], "ID")?,
        form: cols[1].to_string(),
        upos: cols[3].to_string(),
        head: number(cols[6], "HEAD")?,
        deprel: cols[7].to_string(),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessOptions {
    pub remove_punct: bool,
    pub remove_function_words: bool,
    /// UPOS tags treated as function words.
    pub function_upos: Vec<String>,
    pub min_len: Option<usize>,
    pub max_len: Option<usize>,
}

impl Default for PreprocessOptions {
    fn default() -> Self {
        PreprocessOptions {
            remove_punct: false,
            remove_function_words: false,
            function_upos: DEFAULT_FUNCTION_UPOS
                .iter()
                .map(|s| s.to_string())
                .collect(),
            min_len: None,
            max_len: None,
        }
    }
}

impl PreprocessOptions {
    pub fn validate(&self) -> Result<(), ConlluError> {
        match (self.min_len, self.max_len) {
            (Some(min), Some(max)) if min > max => Err(ConlluError::BadLengths { min, max }),
            _ => Ok(()),
        }
    }

    fn removes(&self, upos: &str) -> bool {
        (self.remove_punct && upos == "PUNCT")
            || (self.remove_function_words && self.function_upos.iter().any(|f| f == upos))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preprocessed {
    Kept(HeadVector),
    /// Outside the length bounds, or nothing left after removal.
    Filtered,
}

pub fn preprocess(
    sentence: &Sentence,
    opts: &PreprocessOptions,
) -> Result<Preprocessed, ConlluError> {
    let structure = |source| ConlluError::Structure {
        line: sentence.line,
        source,
    };
    // Validate the full tree first so that walks up the heads terminate.
    sentence.head_vector().map_err(structure)?;
    let tokens = &sentence.tokens;
    let n = tokens.len();
    let mut head = vec![0; n + 1];
    let mut keep = vec![false; n + 1];
    for t in tokens {
        head[t.id] = t.head;
        keep[t.id] = !opts.removes(&t.upos);
    }
    let mut new_id = vec![0; n + 1];
    let mut kept = 0;
    for v in 1..=n {
        if keep[v] {
            kept += 1;
            new_id[v] = kept;
        }
    }
    if kept == 0 || opts.min_len.is_some_and(|m| kept < m) || opts.max_len.is_some_and(|m| kept > m)
    {
        return Ok(Preprocessed::Filtered);
    }
    let mut heads = Vec::with_capacity(kept);
    let mut root = 0;
    for v in (1..=n).filter(|&v| keep[v]) {
        let mut h = head[v];
        while h != 0 && !keep[h] {
            h = head[h];
        }
        if h == 0 {
            if root == 0 {
                root = new_id[v];
                heads.push(0);
            } else {
                heads.push(root);
            }
        } else {
            heads.push(new_id[h]);
        }
    }
    HeadVector::try_from(heads)
        .map(Preprocessed::Kept)
        .map_err(structure)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConvertReport {
    pub sentences: usize,
    pub written: usize,
    pub filtered: usize,
    /// Sentences that could not be parsed or are not trees, with reasons.
    pub errors: Vec<String>,
}

/// Writes one head vector per retained sentence of `input` to `output`.
pub fn convert(
    input: impl AsRef<Path>,
    output: impl AsRef<Path>,
    opts: &PreprocessOptions,
) -> Result<ConvertReport, ConlluError> {
    opts.validate()?;
    let (input, output) = (input.as_ref(), output.as_ref());
    let reader = parse_conllu(input)?;
    let write_err = |source| ConlluError::Io {
        path: output.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(output).map_err(write_err)?);
    let mut report = ConvertReport::default();
    for sentence in reader {
        report.sentences += 1;
        let result = sentence.and_then(|s| preprocess(&s, opts));
        match result {
            Ok(Preprocessed::Kept(hv)) => {
                writeln!(w, "{hv}").map_err(write_err)?;
                report.written += 1;
            }
            Ok(Preprocessed::Filtered) => report.filtered += 1,
            Err(e @ ConlluError::Io { .. }) => return Err(e),
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    w.flush().map_err(write_err)?;
    Ok(report)
}
