//! Analyzed tokens: the input alphabet of the grammar engine.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::lexicon::Reading;
use crate::morphology::Segmentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// A word with its segmentations; none means unknown.
    Word(Vec<Segmentation>),
    Number,
    Punct,
}

/// A lexicon multiword form that starts at this token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiwordHit {
    pub len: usize,
    pub readings: Vec<Reading>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Normalized surface.
    pub surface: String,
    pub kind: TokenKind,
    /// Char (code point) offsets into the source text.
    pub chars: Range<usize>,
    /// Byte offsets into the source text.
    pub bytes: Range<usize>,
    /// Multiword forms starting here, longest first.
    pub multiword: Vec<MultiwordHit>,
    /// Covered by some multiword form, so not an unknown word.
    pub in_multiword: bool,
}

impl Token {
    pub fn segmentations(&self) -> &[Segmentation] {
        match &self.kind {
            TokenKind::Word(s) => s,
            _ => &[],
        }
    }

    /// A word with no analysis at all.
    pub fn is_unknown(&self) -> bool {
        matches!(&self.kind, TokenKind::Word(s) if s.is_empty()) && !self.in_multiword
    }

    pub fn is_number(&self) -> bool {
        self.kind == TokenKind::Number
    }
}
