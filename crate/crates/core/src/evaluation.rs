//! Scoring against a gold corpus and keyword-in-context listings.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::recognizer::{ComponentTree, Document};

/// One expected entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldAnnotation {
    pub doc_id: String,
    /// Char (code point) offsets into the document text.
    pub chars: Range<usize>,
    pub arabic: String,
    pub french: String,
}

/// One recognized entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub doc_id: String,
    pub chars: Range<usize>,
    pub french: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// True positives whose French matches the gold string.
    pub translation_matches: usize,
    /// `translation_matches / tp`, 0 when there are no true positives.
    pub translation_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("prediction refers to unknown document `{doc_id}`")]
    DocMismatch { doc_id: String },
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall, 0 when both are 0.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

impl EvalReport {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize, translation_matches: usize) -> Self {
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        EvalReport {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f_measure: f_measure(precision, recall),
            translation_matches,
            translation_accuracy: ratio(translation_matches, tp),
        }
    }
}

/// Collapse whitespace runs and detach hyphens from word edges, so that
/// `Tartous- Tartous`, `Tartous -Tartous` and `Tartous - Tartous` compare
/// equal. Hyphens inside a word (`Al-Hamdaniya`) are kept.
pub fn normalize_french(s: &str) -> String {
    let mut parts: Vec<&str> = Vec::new();
    for word in s.split_whitespace() {
        let core = word.trim_matches('-');
        let lead = word.len() - word.trim_start_matches('-').len();
        let trail = if core.is_empty() {
            0
        } else {
            word.len() - word.trim_end_matches('-').len()
        };
        parts.extend(core::iter::repeat_n("-", lead));
        if !core.is_empty() {
            parts.push(core);
        }
        parts.extend(core::iter::repeat_n("-", trail));
    }
    parts.join(" ")
}

/// Strict span matching: a prediction is a true positive when some unused
/// gold annotation of the same document has exactly its char span.
/// `documents` lists the ids the gold corpus covers.
pub fn score(
    predicted: &[Prediction],
    gold: &[GoldAnnotation],
    documents: &BTreeSet<String>,
) -> Result<EvalReport, EvalError> {
    if let Some(p) = predicted.iter().find(|p| !documents.contains(&p.doc_id)) {
        return Err(EvalError::DocMismatch {
            doc_id: p.doc_id.clone(),
        });
    }
    let mut used = alloc::vec![false; gold.len()];
    let (mut tp, mut good) = (0, 0);
    for p in predicted {
        let hit = gold
            .iter()
            .enumerate()
            .position(|(i, g)| !used[i] && g.doc_id == p.doc_id && g.chars == p.chars);
        if let Some(i) = hit {
            used[i] = true;
            tp += 1;
            if normalize_french(&p.french) == normalize_french(&gold[i].french) {
                good += 1;
            }
        }
    }
    Ok(EvalReport::from_counts(
        tp,
        predicted.len() - tp,
        gold.len() - tp,
        good,
    ))
}

/// One line of a concordance: raw source context around an entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcordanceRow {
    pub before: String,
    pub arabic: String,
    pub french: String,
    pub after: String,
}

impl ConcordanceRow {
    /// The `arabic/french` pair.
    pub fn pair(&self) -> String {
        let mut s = self.arabic.clone();
        s.push('/');
        s.push_str(&self.french);
        s
    }
}

/// One row per entity, with up to `width` tokens of context on each side.
/// `before + arabic + after` is a contiguous piece of the document.
pub fn concordance(
    doc: &Document,
    entities: &[ComponentTree],
    width: usize,
) -> Vec<ConcordanceRow> {
    entities
        .iter()
        .map(|e| {
            let start = e.chars.start;
            let end = e.chars.end;
            let preceding: Vec<_> = doc.tokens.iter().filter(|t| t.chars.end <= start).collect();
            let left = if width == 0 {
                start
            } else {
                preceding
                    .len()
                    .checked_sub(width)
                    .map_or(preceding.first(), |i| preceding.get(i))
                    .map_or(start, |t| t.chars.start)
            };
            let following = doc.tokens.iter().filter(|t| t.chars.start >= end);
            let right = if width == 0 {
                end
            } else {
                following.take(width).last().map_or(end, |t| t.chars.end)
            };
            ConcordanceRow {
                before: String::from(doc.slice(left..start)),
                arabic: e.arabic.clone(),
                french: e.french.clone().unwrap_or_default(),
                after: String::from(doc.slice(end..right)),
            }
        })
        .collect()
}
