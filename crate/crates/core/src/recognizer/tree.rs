use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use super::Document;
use crate::grammar::{scan, Capture, Component, EngineError, Grammar, MatchResult};
use crate::lexicon::{Flag, Reading};

/// Which kind of place a toponym names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ToponymKind {
    Ville,
    Pays,
    Region,
    Unspecified,
}

impl ToponymKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ToponymKind::Ville => "Ville",
            ToponymKind::Pays => "Pays",
            ToponymKind::Region => "Region",
            ToponymKind::Unspecified => "unspecified",
        }
    }

    fn of(reading: &Reading) -> Self {
        let f = &reading.features;
        if f.has(Flag::Ville) {
            ToponymKind::Ville
        } else if f.has(Flag::Pays) {
            ToponymKind::Pays
        } else if f.has(Flag::Region) {
            ToponymKind::Region
        } else {
            ToponymKind::Unspecified
        }
    }
}

/// Uncaptured material that sat between a node and its previous sibling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lead {
    /// A free-standing hyphen, as in `ملعب طرطوس - طرطوس`.
    Hyphen,
    /// A separate preposition word such as في.
    Preposition,
}

/// Annotations that qualify a node without changing its type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeFlag {
    /// Category plus demonym only: may name a sports club rather than a venue.
    ClubCandidate,
    /// Contains a month name the month table marks as not translatable.
    Untranslated,
}

impl NodeFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeFlag::ClubCandidate => "club-candidate",
            NodeFlag::Untranslated => "untranslated",
        }
    }
}

impl fmt::Display for NodeFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A recognized named entity or one of its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTree {
    pub kind: Component,
    /// Set on Toponym nodes only.
    pub toponym: Option<ToponymKind>,
    /// Source text of the node, leading conjunction/preposition clitics
    /// excluded.
    pub arabic: String,
    /// Char span of `arabic` in the source document.
    pub chars: Range<usize>,
    pub tokens: Range<usize>,
    /// The resolved analysis of a lexical leaf.
    pub lex: Option<Reading>,
    pub lead: Option<Lead>,
    pub flag: Option<NodeFlag>,
    /// Filled in by the translator.
    pub french: Option<String>,
    pub children: Vec<ComponentTree>,
}

impl ComponentTree {
    /// Leaves with no analysis stand for proper-name material that has to be
    /// transliterated.
    pub fn is_unknown_leaf(&self) -> bool {
        self.lex.is_none() && self.children.is_empty()
    }

    /// This node and all its descendants, parents first.
    pub fn preorder(&self) -> Vec<&ComponentTree> {
        let mut out = alloc::vec![self];
        for c in &self.children {
            out.extend(c.preorder());
        }
        out
    }
}

/// Find every venue name in `doc` and build its component tree.
pub fn recognize(doc: &Document, grammar: &Grammar) -> Result<Vec<ComponentTree>, EngineError> {
    Ok(scan(grammar, &doc.tokens)?
        .iter()
        .map(|m| build_root(doc, m))
        .collect())
}

fn build_root(doc: &Document, m: &MatchResult) -> ComponentTree {
    let children = build_children(doc, &m.captures, m.tokens.start);
    let start = display_start(doc, m.tokens.start, &children);
    let chars = start..m.chars.end;
    let club = children.len() >= 2
        && children[0].kind == Component::SportVenueCategory
        && children[1..].iter().all(|c| c.kind == Component::Demonym);
    ComponentTree {
        kind: Component::SportVenue,
        toponym: None,
        arabic: String::from(doc.slice(chars.clone())),
        chars,
        tokens: m.tokens.clone(),
        lex: None,
        lead: None,
        flag: club.then_some(NodeFlag::ClubCandidate),
        french: None,
        children,
    }
}

fn build_children(doc: &Document, captures: &[Capture], from: usize) -> Vec<ComponentTree> {
    let mut prev = from;
    let mut out = Vec::with_capacity(captures.len());
    for cap in captures {
        let mut node = build_node(doc, cap);
        let gap = &doc.tokens[prev.min(cap.tokens.start)..cap.tokens.start];
        if !gap.is_empty() {
            node.lead = Some(if gap.iter().any(|t| is_dash(&t.surface)) {
                Lead::Hyphen
            } else {
                Lead::Preposition
            });
        }
        prev = cap.tokens.end;
        out.push(node);
    }
    out
}

fn is_dash(s: &str) -> bool {
    matches!(s, "-" | "–" | "—" | "ـ")
}

fn build_node(doc: &Document, cap: &Capture) -> ComponentTree {
    let end = doc.tokens[cap.tokens.end - 1].chars.end;
    if let Some(a) = &cap.analysis {
        let lex = choose_reading(cap.tag, &a.readings);
        let start = doc.tokens[cap.tokens.start].chars.start + a.particle_chars;
        return ComponentTree {
            kind: cap.tag,
            toponym: (cap.tag == Component::Toponym).then(|| {
                lex.as_ref()
                    .map_or(ToponymKind::Unspecified, ToponymKind::of)
            }),
            arabic: String::from(doc.slice(start..end)),
            chars: start..end,
            tokens: cap.tokens.clone(),
            lex,
            lead: None,
            flag: None,
            french: None,
            children: Vec::new(),
        };
    }
    let mut children = build_children(doc, &cap.children, cap.tokens.start);
    // A tagged call whose only capture has the same tag and span is one node.
    if children.len() == 1
        && children[0].kind == cap.tag
        && children[0].tokens == cap.tokens
        && children[0].lead.is_none()
    {
        return children.pop().unwrap_or_else(|| unreachable!());
    }
    let start = display_start(doc, cap.tokens.start, &children);
    let toponym = (cap.tag == Component::Toponym).then(|| {
        children
            .iter()
            .find_map(|c| c.toponym)
            .unwrap_or(ToponymKind::Unspecified)
    });
    ComponentTree {
        kind: cap.tag,
        toponym,
        arabic: String::from(doc.slice(start..end)),
        chars: start..end,
        tokens: cap.tokens.clone(),
        lex: None,
        lead: None,
        flag: None,
        french: None,
        children,
    }
}

fn display_start(doc: &Document, first_token: usize, children: &[ComponentTree]) -> usize {
    match children.first() {
        Some(c) if c.tokens.start == first_token && c.lead.is_none() => c.chars.start,
        _ => doc.tokens[first_token].chars.start,
    }
}

/// Toponym slots that accept any place resolve a country/capital homograph
/// to the city.
fn choose_reading(tag: Component, readings: &[Reading]) -> Option<Reading> {
    if tag == Component::Toponym {
        for kind in [ToponymKind::Ville, ToponymKind::Pays, ToponymKind::Region] {
            if let Some(r) = readings.iter().find(|r| ToponymKind::of(r) == kind) {
                return Some(*r);
            }
        }
    }
    readings.first().copied()
}
