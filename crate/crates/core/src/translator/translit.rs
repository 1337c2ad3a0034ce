//! Table-driven romanization for proper names missing from the lexicon.
//!
//! Table file: one `arabic TAB latin` pair per line, `#` comments. A key
//! starting with `^` only matches at the beginning of a word. A line
//! `@policy NAME` selects the vowel policy.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::TranslateError;
use crate::morphology::normalize;

/// How vowels missing from the unvocalized script are supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VowelPolicy {
    /// Letters only.
    None,
    /// Append a mute `e` after a word-final ن or م, as French spelling does
    /// for names like "Tchrine".
    FrenchFinalE,
}

impl VowelPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            VowelPolicy::None => "none",
            VowelPolicy::FrenchFinalE => "french-final-e",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" => Some(VowelPolicy::None),
            "french-final-e" => Some(VowelPolicy::FrenchFinalE),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{file}:{line}: {reason}")]
pub struct TableError {
    pub file: String,
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RomanizationTable {
    /// Keys anywhere in a word.
    anywhere: BTreeMap<String, String>,
    /// Keys only at the start of a word (stored without the `^`).
    initial: BTreeMap<String, String>,
    longest_key: usize,
    policy: VowelPolicy,
}

impl RomanizationTable {
    pub fn parse(file: &str, text: &str) -> Result<Self, TableError> {
        let mut table = RomanizationTable {
            anywhere: BTreeMap::new(),
            initial: BTreeMap::new(),
            longest_key: 1,
            policy: VowelPolicy::None,
        };
        let err = |line: usize, reason: String| TableError {
            file: file.into(),
            line,
            reason,
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(p) = line.strip_prefix("@policy") {
                table.policy = VowelPolicy::parse(p.trim())
                    .ok_or_else(|| err(i + 1, format!("unknown policy `{}`", p.trim())))?;
                continue;
            }
            let (key, value) = line
                .split_once('\t')
                .ok_or_else(|| err(i + 1, "expected `arabic<TAB>latin`".into()))?;
            let (map, key) = match key.strip_prefix('^') {
                Some(k) => (&mut table.initial, k),
                None => (&mut table.anywhere, key),
            };
            let key = normalize(key.trim());
            if key.is_empty() {
                return Err(err(i + 1, "empty key".into()));
            }
            table.longest_key = table.longest_key.max(key.chars().count());
            if map.insert(key.clone(), value.trim().into()).is_some() {
                return Err(err(i + 1, format!("duplicate key `{key}`")));
            }
        }
        Ok(table)
    }

    pub fn policy(&self) -> VowelPolicy {
        self.policy
    }

    /// Canonical table text; parsing it yields an equal table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "@policy {}", self.policy.as_str());
        for (k, v) in &self.initial {
            let _ = writeln!(out, "^{k}\t{v}");
        }
        for (k, v) in &self.anywhere {
            let _ = writeln!(out, "{k}\t{v}");
        }
        out
    }

    /// Romanize every word of `text` and capitalize it. Characters the table
    /// does not know (Latin letters, digits, hyphens) are copied, so Latin
    /// input comes back unchanged apart from capitalization.
    pub fn transliterate(&self, text: &str) -> Result<String, TranslateError> {
        let text = normalize(text);
        if text.trim().is_empty() {
            return Err(TranslateError::EmptyInput);
        }
        let words: Vec<String> = text.split_whitespace().map(|w| self.word(w)).collect();
        Ok(words.join(" "))
    }

    fn word(&self, word: &str) -> String {
        let chars: Vec<char> = word.chars().collect();
        let mut out = String::new();
        let mut i = 0;
        while i < chars.len() {
            let mut matched = false;
            for len in (1..=self.longest_key.min(chars.len() - i)).rev() {
                let key: String = chars[i..i + len].iter().collect();
                let hit = if i == 0 {
                    self.initial.get(&key).or_else(|| self.anywhere.get(&key))
                } else {
                    self.anywhere.get(&key)
                };
                if let Some(v) = hit {
                    out.push_str(v);
                    i += len;
                    matched = true;
                    break;
                }
            }
            if !matched {
                out.push(chars[i]);
                i += 1;
            }
        }
        if self.policy == VowelPolicy::FrenchFinalE && matches!(chars.last(), Some('ن' | 'م')) {
            out.push('e');
        }
        capitalize(&out)
    }
}

/// Upper-case the first letter.
pub fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}
