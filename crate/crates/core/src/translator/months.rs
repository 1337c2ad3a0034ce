//! Month names: Arabic (Gregorian transliterations, Levantine and Hijri
//! names) to French.
//!
//! Table file: `arabic TAB french [TAB hijri]`, `#` comments. Rows marked
//! `hijri` belong to the lunar calendar; their second column is only a
//! romanization, since converting the date is out of scope.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::translit::TableError;
use crate::morphology::normalize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Month {
    pub french: String,
    pub hijri: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonthTable {
    months: BTreeMap<String, Month>,
}

fn key(arabic: &str) -> String {
    let words: Vec<&str> = arabic.split_whitespace().collect();
    normalize(&words.join(" "))
}

impl MonthTable {
    pub fn parse(file: &str, text: &str) -> Result<Self, TableError> {
        let mut months = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| TableError {
                file: file.into(),
                line: i + 1,
                reason,
            };
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            let hijri = match cols.as_slice() {
                [_, _] => false,
                [_, _, "hijri"] => true,
                [_, _, other] => return Err(err(format!("unknown calendar `{other}`"))),
                _ => return Err(err("expected `arabic<TAB>french[<TAB>hijri]`".into())),
            };
            let (arabic, french) = (key(cols[0]), cols[1]);
            if arabic.is_empty() || french.is_empty() {
                return Err(err("empty column".into()));
            }
            let month = Month {
                french: french.into(),
                hijri,
            };
            if months.insert(arabic.clone(), month).is_some() {
                return Err(err(format!("duplicate month `{arabic}`")));
            }
        }
        Ok(MonthTable { months })
    }

    pub fn get(&self, arabic: &str) -> Option<&Month> {
        self.months.get(&key(arabic))
    }

    pub fn len(&self) -> usize {
        self.months.len()
    }

    pub fn is_empty(&self) -> bool {
        self.months.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Month)> {
        self.months.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Canonical table text; parsing it yields an equal table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, m) in &self.months {
            let _ = write!(out, "{k}\t{}", m.french);
            if m.hijri {
                out.push_str("\thijri");
            }
            out.push('\n');
        }
        out
    }
}
