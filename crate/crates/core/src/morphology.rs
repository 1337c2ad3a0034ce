//! Proclitic segmentation of agglutinated Arabic words.
//!
//! A word is split as `[conjunction] [preposition] [article] stem`, with
//! conjunctions و/ف, prepositions ل/ب and the article ال. Only splits whose
//! stem is in the lexicon are kept.

use alloc::string::String;
use alloc::vec::Vec;

use crate::lexicon::{Lexicon, Reading};

const TATWEEL: char = '\u{0640}';

/// Tashkeel (U+064B..=U+0652) and tatweel.
pub fn is_ignorable_mark(c: char) -> bool {
    matches!(c, '\u{064B}'..='\u{0652}') || c == TATWEEL
}

/// Strip diacritics and tatweel. Alef and hamza variants are left alone: the
/// dictionaries distinguish them.
pub fn normalize(text: &str) -> String {
    text.chars().filter(|c| !is_ignorable_mark(*c)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Proclitic {
    /// و "and"
    Wa,
    /// ف "then"
    Fa,
    /// ل "for"
    Li,
    /// ب "in, at"
    Bi,
    /// ال definite article
    Al,
}

impl Proclitic {
    pub fn as_str(self) -> &'static str {
        match self {
            Proclitic::Wa => "و",
            Proclitic::Fa => "ف",
            Proclitic::Li => "ل",
            Proclitic::Bi => "ب",
            Proclitic::Al => "ال",
        }
    }

    pub fn is_preposition(self) -> bool {
        matches!(self, Proclitic::Li | Proclitic::Bi)
    }

    pub fn is_conjunction(self) -> bool {
        matches!(self, Proclitic::Wa | Proclitic::Fa)
    }
}

const CONJUNCTIONS: [Option<Proclitic>; 3] = [None, Some(Proclitic::Wa), Some(Proclitic::Fa)];
const PREPOSITIONS: [Option<Proclitic>; 3] = [None, Some(Proclitic::Li), Some(Proclitic::Bi)];
const ARTICLES: [Option<Proclitic>; 2] = [None, Some(Proclitic::Al)];

/// Every legal proclitic sequence, empty one first.
pub fn legal_sequences() -> impl Iterator<Item = Vec<Proclitic>> {
    CONJUNCTIONS.into_iter().flat_map(|c| {
        PREPOSITIONS.into_iter().flat_map(move |p| {
            ARTICLES
                .into_iter()
                .map(move |a| [c, p, a].into_iter().flatten().collect())
        })
    })
}

/// A lexicon-validated decomposition of one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmentation {
    pub proclitics: Vec<Proclitic>,
    pub stem: String,
    pub readings: Vec<Reading>,
    pub determined: bool,
}

impl Segmentation {
    /// Number of chars taken by conjunction and preposition clitics, i.e. what
    /// to drop to display the word without its particles.
    pub fn particle_chars(&self) -> usize {
        self.proclitics
            .iter()
            .filter(|p| !matches!(p, Proclitic::Al))
            .map(|p| p.as_str().chars().count())
            .sum()
    }

    pub fn has_preposition(&self) -> bool {
        self.proclitics.iter().any(|p| p.is_preposition())
    }
}

/// All decompositions of a normalized `token` whose stem has a lexicon
/// reading, longest stem first.
pub fn segment(token: &str, lexicon: &Lexicon) -> Vec<Segmentation> {
    let mut out = Vec::new();
    for seq in legal_sequences() {
        let mut rest = token;
        let mut ok = true;
        for p in &seq {
            match rest.strip_prefix(p.as_str()) {
                Some(r) => rest = r,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || rest.is_empty() {
            continue;
        }
        let readings = lexicon.readings(rest);
        if readings.is_empty() {
            continue;
        }
        out.push(Segmentation {
            determined: seq.contains(&Proclitic::Al),
            proclitics: seq,
            stem: String::from(rest),
            readings: readings.to_vec(),
        });
    }
    out.sort_by_key(|s| core::cmp::Reverse(s.stem.chars().count()));
    out
}

/// The word without its definite article, if it has one and something remains.
pub fn strip_article(token: &str) -> Option<&str> {
    token.strip_prefix("ال").filter(|rest| !rest.is_empty())
}
