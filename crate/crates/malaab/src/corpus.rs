//! Reading documents and gold annotation files.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::{Path, PathBuf};

use malaab_core::evaluation::GoldAnnotation;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Gold {
        path: PathBuf,
        line: u64,
        reason: String,
    },
    #[error("document id `{0}` appears twice")]
    DuplicateDocument(String),
}

/// One input text; `id` is the file stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub id: String,
    pub text: String,
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Read the inputs in order. A directory contributes its `*.txt` files in
/// name order; `-` reads standard input as document `stdin`.
pub fn read_documents(paths: &[PathBuf]) -> Result<Vec<InputDocument>, CorpusError> {
    let mut docs = Vec::new();
    for path in paths {
        if path.as_os_str() == "-" {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(io_error(path))?;
            docs.push(InputDocument {
                id: "stdin".into(),
                text,
            });
        } else if path.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(io_error(path))?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()
                .map_err(io_error(path))?;
            files.retain(|f| f.extension().is_some_and(|e| e == "txt"));
            files.sort();
            for f in files {
                docs.push(read_one(&f)?);
            }
        } else {
            docs.push(read_one(path)?);
        }
    }
    Ok(docs)
}

fn read_one(path: &Path) -> Result<InputDocument, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(io_error(path))?;
    let id = path
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    Ok(InputDocument { id, text })
}

/// Document ids, rejecting duplicates.
pub fn unique_ids(docs: &[InputDocument]) -> Result<BTreeSet<String>, CorpusError> {
    let mut ids = BTreeSet::new();
    for d in docs {
        if !ids.insert(d.id.clone()) {
            return Err(CorpusError::DuplicateDocument(d.id.clone()));
        }
    }
    Ok(ids)
}

/// Parse a gold TSV file: header `doc_id start end arabic french`, char
/// offsets, end exclusive.
pub fn read_gold(path: &Path) -> Result<Vec<GoldAnnotation>, CorpusError> {
    let bytes = std::fs::read(path).map_err(io_error(path))?;
    parse_gold(path, &bytes)
}

pub fn parse_gold(path: &Path, bytes: &[u8]) -> Result<Vec<GoldAnnotation>, CorpusError> {
    let gold_err = |line: u64, reason: String| CorpusError::Gold {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .has_headers(true)
        .from_reader(bytes);
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            gold_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 5 {
            return Err(gold_err(
                line,
                format!("expected 5 columns, found {}", record.len()),
            ));
        }
        let offset = |i: usize| {
            record[i]
                .trim()
                .parse::<usize>()
                .map_err(|_| gold_err(line, format!("bad offset `{}`", &record[i])))
        };
        let (start, end) = (offset(1)?, offset(2)?);
        if start >= end {
            return Err(gold_err(line, format!("empty span {start}..{end}")));
        }
        out.push(GoldAnnotation {
            doc_id: record[0].to_string(),
            chars: start..end,
            arabic: record[3].to_string(),
            french: record[4].to_string(),
        });
    }
    Ok(out)
}

/// Check every gold span against its document: the document must be among
/// the inputs and the span must spell the annotated Arabic.
pub fn check_gold(gold: &[GoldAnnotation], docs: &[InputDocument]) -> Result<(), String> {
    for (i, g) in gold.iter().enumerate() {
        let row = i + 2;
        let doc = docs
            .iter()
            .find(|d| d.id == g.doc_id)
            .ok_or_else(|| format!("gold row {row}: unknown document `{}`", g.doc_id))?;
        let surface: String = doc
            .text
            .chars()
            .skip(g.chars.start)
            .take(g.chars.len())
            .collect();
        if surface.chars().count() != g.chars.len() || surface != g.arabic {
            return Err(format!(
                "gold row {row}: span {}..{} of `{}` reads `{surface}`, not `{}`",
                g.chars.start, g.chars.end, g.doc_id, g.arabic
            ));
        }
    }
    Ok(())
}
