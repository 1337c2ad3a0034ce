use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::dictionary::{LexEntry, SourcePos};
use super::features::{
    parse_feature_item, set_once, unquote, write_features, FeatureItem, FeatureSet, PartialFeatures,
};
use super::LexiconError;

/// How a rule turns a lemma into a surface form. Counts are in chars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Transform {
    /// `N:"xyz"`: drop the last N chars, then append.
    Suffix { strip: usize, append: String },
    /// `^"xyz"`: prepend.
    Prefix(String),
    /// `@N:"xyz"`: insert before the last N chars (broken plurals).
    Infix { from_end: usize, insert: String },
}

impl Transform {
    pub fn apply(&self, lemma: &str) -> Option<String> {
        let n = lemma.chars().count();
        let out = match self {
            Transform::Suffix { strip, append } => {
                if *strip > n {
                    return None;
                }
                let mut s: String = lemma.chars().take(n - strip).collect();
                s.push_str(append);
                s
            }
            Transform::Prefix(p) => {
                let mut s = p.clone();
                s.push_str(lemma);
                s
            }
            Transform::Infix { from_end, insert } => {
                if *from_end > n {
                    return None;
                }
                let mut s: String = lemma.chars().take(n - from_end).collect();
                s.push_str(insert);
                s.extend(lemma.chars().skip(n - from_end));
                s
            }
        };
        (!out.is_empty()).then_some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadigmRule {
    pub transform: Transform,
    pub features: PartialFeatures,
}

/// A named inflection model (`FLX=` value).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paradigm {
    pub id: String,
    pub rules: Vec<ParadigmRule>,
    pub source: SourcePos,
}

impl Paradigm {
    pub fn to_line(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.id);
        out.push_str(" : ");
        for (i, rule) in self.rules.iter().enumerate() {
            if i > 0 {
                out.push_str(" ; ");
            }
            match &rule.transform {
                Transform::Suffix { strip, append } => {
                    out.push_str(&format!("{strip}:\"{append}\""))
                }
                Transform::Prefix(p) => out.push_str(&format!("^\"{p}\"")),
                Transform::Infix { from_end, insert } => {
                    out.push_str(&format!("@{from_end}:\"{insert}\""))
                }
            }
            let f = &rule.features;
            if !f.is_empty() {
                let mut feats = String::new();
                write_features(&mut feats, f.flags, f.gender, f.number);
                out.push('/');
                out.push_str(&feats[1..]);
            }
        }
        out
    }
}

/// Parse a paradigm document: `id : rule (';' rule)*` per line, rules
/// `<strip>:<append>[/features]`, `^<prefix>[/features]` or
/// `@<from-end>:<insert>[/features]`.
pub fn parse_paradigms(file: &str, text: &str) -> Result<Vec<Paradigm>, LexiconError> {
    let mut out: Vec<Paradigm> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let source = SourcePos {
            file: file.to_owned(),
            line: idx + 1,
        };
        let err = |reason: String| LexiconError::MalformedParadigm {
            file: file.to_owned(),
            line: idx + 1,
            reason,
        };
        let (id, rules) = line
            .split_once(" : ")
            .or_else(|| line.split_once(':').filter(|(id, _)| !id.trim().is_empty()))
            .ok_or_else(|| err("expected `id : rules`".into()))?;
        let id = id.trim();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(err(format!("bad paradigm id `{id}`")));
        }
        if out.iter().any(|p| p.id == id) {
            return Err(err(format!("paradigm `{id}` defined twice")));
        }
        let rules = rules
            .split(';')
            .map(|r| parse_rule(r.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        out.push(Paradigm {
            id: id.to_owned(),
            rules,
            source,
        });
    }
    Ok(out)
}

fn parse_rule(text: &str) -> Result<ParadigmRule, String> {
    let (body, feats) = match text.rfind('/') {
        // a slash inside the quoted string is part of the string
        Some(i) if text[i..].matches('"').count() == 0 => (&text[..i], Some(&text[i + 1..])),
        _ => (text, None),
    };
    let body = body.trim();
    let transform = if let Some(p) = body.strip_prefix('^') {
        Transform::Prefix(unquote(p)?.to_owned())
    } else if let Some(rest) = body.strip_prefix('@') {
        let (n, ins) = rest.split_once(':').ok_or("infix rule needs `@N:text`")?;
        Transform::Infix {
            from_end: n.trim().parse().map_err(|_| format!("bad count `{n}`"))?,
            insert: unquote(ins)?.to_owned(),
        }
    } else {
        let (n, app) = body
            .split_once(':')
            .ok_or_else(|| format!("rule `{body}` needs `N:text`"))?;
        Transform::Suffix {
            strip: n.trim().parse().map_err(|_| format!("bad count `{n}`"))?,
            append: unquote(app)?.to_owned(),
        }
    };
    let mut features = PartialFeatures::default();
    if let Some(feats) = feats {
        for item in feats.split('+').map(str::trim) {
            match parse_feature_item(item)? {
                FeatureItem::Flag(f) => features.flags.insert(f),
                FeatureItem::Gender(g) => set_once(&mut features.gender, g, "gender")?,
                FeatureItem::Number(n) => set_once(&mut features.number, n, "number")?,
                FeatureItem::Attr(k, _) => return Err(format!("attribute `{k}` in a rule")),
            }
        }
    }
    Ok(ParadigmRule {
        transform,
        features,
    })
}

pub fn serialize_paradigms(paradigms: &[Paradigm]) -> String {
    let mut out = String::new();
    for p in paradigms {
        out.push_str(&p.to_line());
        out.push('\n');
    }
    out
}

/// All surface forms of `entry`: the lemma with its own features first, then
/// one form per paradigm rule, duplicates removed.
pub fn expand_inflections(
    entry: &LexEntry,
    paradigms: &[Paradigm],
) -> Result<Vec<(String, FeatureSet)>, LexiconError> {
    let mut forms = alloc::vec![(entry.lemma.clone(), entry.features)];
    let Some(id) = &entry.paradigm else {
        return Ok(forms);
    };
    let paradigm =
        paradigms
            .iter()
            .find(|p| &p.id == id)
            .ok_or_else(|| LexiconError::UnknownParadigm {
                id: id.clone(),
                lemma: entry.lemma.clone(),
                file: entry.source.file.clone(),
                line: entry.source.line,
            })?;
    for rule in &paradigm.rules {
        let surface =
            rule.transform
                .apply(&entry.lemma)
                .ok_or_else(|| LexiconError::InvalidInflection {
                    id: id.clone(),
                    lemma: entry.lemma.clone(),
                    file: entry.source.file.clone(),
                    line: entry.source.line,
                })?;
        let form = (surface, entry.features.merged(&rule.features));
        if !forms.contains(&form) {
            forms.push(form);
        }
    }
    Ok(forms)
}
