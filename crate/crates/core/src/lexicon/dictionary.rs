use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::features::{
    parse_feature_item, set_once, split_unquoted, unquote, write_features, Category, FeatureItem,
    FeatureSet, Flag, Lang,
};
use super::LexiconError;
use crate::morphology::normalize;

/// Where an entry was read from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SourcePos {
    pub file: String,
    pub line: usize,
}

/// One dictionary line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub lang: Lang,
    pub lemma: String,
    pub features: FeatureSet,
    /// The `FLX=` inflection model.
    pub paradigm: Option<String>,
    /// The `FR=` French lemma, Arabic entries only.
    pub translation: Option<String>,
    pub source: SourcePos,
}

impl LexEntry {
    /// Equality on content, ignoring where the entry was read from.
    pub fn same_content(&self, other: &LexEntry) -> bool {
        self.lang == other.lang
            && self.lemma == other.lemma
            && self.features == other.features
            && self.paradigm == other.paradigm
            && self.translation == other.translation
    }

    /// Canonical dictionary line for this entry.
    pub fn to_line(&self) -> String {
        let mut out = String::new();
        push_value(&mut out, &self.lemma);
        out.push(',');
        out.push_str(self.features.category.as_str());
        write_features(
            &mut out,
            self.features.flags,
            self.features.gender,
            self.features.number,
        );
        if let Some(p) = &self.paradigm {
            out.push_str("+FLX=");
            push_value(&mut out, p);
        }
        if let Some(t) = &self.translation {
            out.push_str("+FR=");
            push_value(&mut out, t);
        }
        out
    }
}

fn push_value(out: &mut String, value: &str) {
    if value.chars().any(char::is_whitespace) {
        out.push('"');
        out.push_str(value);
        out.push('"');
    } else {
        out.push_str(value);
    }
}

/// Parse a dictionary document: one entry per non-blank line, `#` comments.
///
/// Grammar: `lemma , CAT ( '+' flag | '+' key '=' value )*`. Arabic lemmas are
/// normalized (diacritics and tatweel removed).
pub fn parse_dictionary(file: &str, text: &str, lang: Lang) -> Result<Vec<LexEntry>, LexiconError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let source = SourcePos {
            file: file.to_owned(),
            line: idx + 1,
        };
        let entry = parse_line(line, lang, source.clone()).map_err(|reason| {
            LexiconError::MalformedLine {
                file: source.file.clone(),
                line: source.line,
                reason,
            }
        })?;
        entries.push(entry);
    }
    Ok(entries)
}

fn parse_line(line: &str, lang: Lang, source: SourcePos) -> Result<LexEntry, String> {
    let (lemma_part, rest) = split_lemma(line)?;
    let lemma = unquote(lemma_part)?;
    let lemma = match lang {
        Lang::Ar => normalize(lemma),
        Lang::Fr => lemma.to_owned(),
    };
    if lemma.is_empty() {
        return Err("missing lemma".into());
    }
    if lemma.contains(',') || lemma.contains('+') {
        return Err(format!("lemma `{lemma}` contains a delimiter"));
    }

    let mut items = split_unquoted(rest, '+').into_iter().map(str::trim);
    let cat = items.next().unwrap_or_default();
    let category = Category::parse(cat).ok_or_else(|| format!("unknown category `{cat}`"))?;
    let mut features = FeatureSet::new(category);
    let mut paradigm = None;
    let mut translation = None;
    for item in items {
        match parse_feature_item(item)? {
            FeatureItem::Flag(flag) => {
                if lang == Lang::Ar && matches!(flag, Flag::DETZ | Flag::Apostrophe) {
                    return Err(format!("`{}` is a French-side feature", flag.name()));
                }
                features.flags.insert(flag);
            }
            FeatureItem::Gender(g) => set_once(&mut features.gender, g, "gender")?,
            FeatureItem::Number(n) => set_once(&mut features.number, n, "number")?,
            FeatureItem::Attr(key, value) => {
                let value = unquote(value)?;
                if value.is_empty() {
                    return Err(format!("empty `{key}=` value"));
                }
                let slot = match key {
                    "FLX" => &mut paradigm,
                    "FR" if lang == Lang::Ar => &mut translation,
                    "FR" => return Err("`FR=` is an Arabic-side attribute".into()),
                    other => return Err(format!("unknown attribute `{other}`")),
                };
                if slot.is_some() {
                    return Err(format!("duplicate `{key}=` attribute"));
                }
                *slot = Some(value.to_string());
            }
        }
    }
    features.flags = features.flags.closed();
    Ok(LexEntry {
        lang,
        lemma,
        features,
        paradigm,
        translation,
        source,
    })
}

fn split_lemma(line: &str) -> Result<(&str, &str), String> {
    let comma = if let Some(rest) = line.strip_prefix('"') {
        let close = rest.find('"').ok_or("unterminated quoted lemma")? + 1;
        line[close..].find(',').map(|i| i + close)
    } else {
        line.find(',')
    };
    let comma = comma.ok_or("missing `,` after lemma")?;
    Ok((&line[..comma], &line[comma + 1..]))
}

/// Render entries back to dictionary text, one canonical line each.
pub fn serialize_dictionary(entries: &[LexEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&e.to_line());
        out.push('\n');
    }
    out
}
