//! From raw text to typed component trees: tokenization, morphological
//! analysis, grammar matching and tree building.

mod tree;
mod xml;

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

pub use tree::{recognize, ComponentTree, Lead, NodeFlag, ToponymKind};
pub use xml::{document_xml, to_xml};

use crate::lexicon::{Lexicon, Reading};
use crate::morphology::{is_ignorable_mark, normalize, segment};
use crate::token::{MultiwordHit, Token, TokenKind};

/// A tokenized, analyzed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub tokens: Vec<Token>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>, lexicon: &Lexicon) -> Self {
        let text = text.into();
        let tokens = tokenize_tokens(&text, lexicon);
        Document {
            id: id.into(),
            text,
            tokens,
        }
    }

    /// The source substring covering a char range.
    pub fn slice(&self, chars: Range<usize>) -> &str {
        let bytes = char_to_byte(&self.text, chars.start)..char_to_byte(&self.text, chars.end);
        &self.text[bytes]
    }
}

fn char_to_byte(text: &str, chars: usize) -> usize {
    text.char_indices()
        .nth(chars)
        .map_or(text.len(), |(b, _)| b)
}

/// Tokenize and analyze `text` as an anonymous document.
pub fn tokenize(text: &str, lexicon: &Lexicon) -> Document {
    Document::new("", text, lexicon)
}

fn is_word_char(c: char) -> bool {
    (c.is_alphabetic() || is_ignorable_mark(c)) && !is_digit(c)
}

fn is_digit(c: char) -> bool {
    c.is_ascii_digit() || ('\u{0660}'..='\u{0669}').contains(&c)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Space,
    Word,
    Digit,
    Punct,
}

fn class(c: char) -> Class {
    if c.is_whitespace() {
        Class::Space
    } else if is_digit(c) {
        Class::Digit
    } else if is_word_char(c) {
        Class::Word
    } else {
        Class::Punct
    }
}

fn tokenize_tokens(text: &str, lexicon: &Lexicon) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().enumerate().peekable();
    while let Some((ci, (bi, c))) = chars.next() {
        let cls = class(c);
        if cls == Class::Space {
            continue;
        }
        let (mut ce, mut be) = (ci + 1, bi + c.len_utf8());
        if cls != Class::Punct {
            while let Some(&(cj, (bj, d))) = chars.peek() {
                if class(d) != cls {
                    break;
                }
                ce = cj + 1;
                be = bj + d.len_utf8();
                chars.next();
            }
        }
        let raw = &text[bi..be];
        let (surface, kind) = match cls {
            Class::Word => {
                let surface = normalize(raw);
                if surface.is_empty() {
                    // tatweel or diacritics standing alone carry no word
                    (String::from(raw), TokenKind::Punct)
                } else {
                    let segs = segment(&surface, lexicon);
                    (surface, TokenKind::Word(segs))
                }
            }
            Class::Digit => (raw.chars().map(ascii_digit).collect(), TokenKind::Number),
            _ => (String::from(raw), TokenKind::Punct),
        };
        tokens.push(Token {
            surface,
            kind,
            chars: ci..ce,
            bytes: bi..be,
            multiword: Vec::new(),
            in_multiword: false,
        });
    }
    mark_multiwords(&mut tokens, lexicon);
    tokens
}

fn ascii_digit(c: char) -> char {
    match c {
        '\u{0660}'..='\u{0669}' => char::from(b'0' + (c as u32 - 0x0660) as u8),
        c => c,
    }
}

fn mark_multiwords(tokens: &mut [Token], lexicon: &Lexicon) {
    for i in 0..tokens.len() {
        if !matches!(tokens[i].kind, TokenKind::Word(_)) {
            continue;
        }
        let mut hits: Vec<MultiwordHit> = Vec::new();
        for form in lexicon.multiword_starting(&tokens[i].surface) {
            let len = form.words.len();
            let fits = tokens.get(i..i + len).is_some_and(|span| {
                span.iter()
                    .zip(&form.words)
                    .all(|(t, w)| matches!(t.kind, TokenKind::Word(_)) && t.surface == *w)
            });
            if !fits {
                continue;
            }
            match hits.iter_mut().find(|h| h.len == len) {
                Some(h) => push_unique(&mut h.readings, form.reading),
                None => hits.push(MultiwordHit {
                    len,
                    readings: alloc::vec![form.reading],
                }),
            }
        }
        hits.sort_by_key(|h| core::cmp::Reverse(h.len));
        if let Some(longest) = hits.first().map(|h| h.len) {
            for t in &mut tokens[i..i + longest] {
                t.in_multiword = true;
            }
        }
        tokens[i].multiword = hits;
    }
}

fn push_unique(v: &mut Vec<Reading>, r: Reading) {
    if !v.contains(&r) {
        v.push(r);
    }
}
