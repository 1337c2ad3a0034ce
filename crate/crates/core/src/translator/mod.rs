//! French generation from component trees: per-component transfer, French
//! word order, agreement, linker selection and romanization of unknown names.

mod months;
mod translit;

use alloc::string::String;
use alloc::vec::Vec;

pub use months::{Month, MonthTable};
pub use translit::{capitalize, RomanizationTable, TableError, VowelPolicy};

use crate::grammar::Component;
use crate::lexicon::{EntryId, Flag, FlagSet, Gender, Lexicon, Number};
use crate::recognizer::{ComponentTree, Lead, NodeFlag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("no French entry for `{lemma}`")]
    MissingFrenchEntry { lemma: String },
    #[error("`{lemma}` has no form for {gender:?} {number:?}")]
    MissingInflection {
        lemma: String,
        gender: Option<Gender>,
        number: Number,
    },
    #[error("unknown month `{surface}`")]
    UnknownMonth { surface: String },
    #[error("date without day or month")]
    MalformedDate,
    #[error("nothing to transliterate")]
    EmptyInput,
}

/// A French rendering of one component with what agreement and linker
/// selection need to know about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrenchFragment {
    pub surface: String,
    pub gender: Option<Gender>,
    pub number: Option<Number>,
    /// DETZ and Apostrophe, from the French entry.
    pub flags: FlagSet,
    pub role: Component,
    /// The French entry, when the fragment comes from the dictionary.
    pub entry: Option<EntryId>,
}

impl FrenchFragment {
    pub fn new(surface: impl Into<String>, role: Component) -> Self {
        FrenchFragment {
            surface: surface.into(),
            gender: None,
            number: None,
            flags: FlagSet::empty(),
            role,
            entry: None,
        }
    }
}

/// The words joining a head to a complement `right`: a bare preposition for
/// names that refuse a determiner, otherwise a contracted article chosen by
/// number, elision and gender.
pub fn choose_linker(_left: &FrenchFragment, right: &FrenchFragment) -> &'static str {
    let apostrophe = right.flags.contains(Flag::Apostrophe);
    if right.flags.contains(Flag::DETZ) {
        return if apostrophe { "d'" } else { "de " };
    }
    if right.number == Some(Number::Plural) {
        return "des ";
    }
    if apostrophe {
        return "de l'";
    }
    match right.gender {
        Some(Gender::Masculine) => "du ",
        Some(Gender::Feminine) => "de la ",
        None => "de ",
    }
}

fn rank(kind: Component) -> u8 {
    match kind {
        Component::SportVenueCategory => 0,
        Component::Date => 1,
        Component::Adjective | Component::Demonym => 2,
        Component::Toponym => 4,
        _ => 3,
    }
}

/// French order of a venue's children, as indices into `children`: category,
/// date, adjectives, names and nested venues, then places. Arabic order is
/// kept within each group.
pub fn reorder(children: &[ComponentTree]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..children.len()).collect();
    order.sort_by_key(|&i| rank(children[i].kind));
    order
}

/// Components joined to the head with a linker.
fn takes_linker(kind: Component) -> bool {
    matches!(
        kind,
        Component::Toponym | Component::CommonNoun | Component::SportVenue | Component::CatGeo
    )
}

#[derive(Debug, Clone, Copy)]
pub struct Translator<'a> {
    arabic: &'a Lexicon,
    french: &'a Lexicon,
    romanization: &'a RomanizationTable,
    months: &'a MonthTable,
}

impl<'a> Translator<'a> {
    pub fn new(
        arabic: &'a Lexicon,
        french: &'a Lexicon,
        romanization: &'a RomanizationTable,
        months: &'a MonthTable,
    ) -> Self {
        Translator {
            arabic,
            french,
            romanization,
            months,
        }
    }

    /// French fragment of a leaf, a date or a flat composite such as a
    /// function + person name. Sets `french` on the node and its children.
    pub fn transfer(&self, node: &mut ComponentTree) -> Result<FrenchFragment, TranslateError> {
        let frag =
            if node.kind == Component::Date {
                let (text, hijri) = self.translate_date(node)?;
                if hijri {
                    node.flag = Some(NodeFlag::Untranslated);
                }
                // "<day> <month>": the parts are the two halves of the text
                if let Some((day, month)) = text.split_once(' ') {
                    for child in &mut node.children {
                        match child.kind {
                            Component::DateNum => child.french = Some(day.into()),
                            Component::Month => child.french = Some(month.into()),
                            _ => {}
                        }
                    }
                }
                FrenchFragment::new(text, Component::Date)
            } else if let Some(month) = node
                .lex
                .map(|r| self.arabic.entry(r.entry))
                .filter(|e| e.translation.is_none() && e.features.has(Flag::Mois))
            {
                // a month named on its own, outside a date
                let m =
                    self.months
                        .get(&month.lemma)
                        .ok_or_else(|| TranslateError::UnknownMonth {
                            surface: month.lemma.clone(),
                        })?;
                if m.hijri {
                    node.flag = Some(NodeFlag::Untranslated);
                }
                FrenchFragment::new(m.french.clone(), node.kind)
            } else if let Some(reading) = node.lex {
                let entry = self.arabic.entry(reading.entry);
                let lemma = entry.translation.as_deref().ok_or_else(|| {
                    TranslateError::MissingFrenchEntry {
                        lemma: entry.lemma.clone(),
                    }
                })?;
                let (id, fr) = self
                    .french
                    .entries_with_lemma(lemma)
                    .next()
                    .ok_or_else(|| TranslateError::MissingFrenchEntry {
                        lemma: lemma.into(),
                    })?;
                let mut frag = FrenchFragment {
                    surface: fr.lemma.clone(),
                    gender: fr.features.gender,
                    number: fr.features.number,
                    flags: fr
                        .features
                        .flags
                        .intersection(FlagSet::empty().with(Flag::DETZ).with(Flag::Apostrophe)),
                    role: node.kind,
                    entry: Some(id),
                };
                if reading.features.number == Some(Number::Plural)
                    && !matches!(node.kind, Component::Adjective | Component::Demonym)
                {
                    frag.surface = self.form(id, frag.gender, Number::Plural)?;
                    frag.number = Some(Number::Plural);
                }
                frag
            } else if node.children.is_empty() {
                FrenchFragment::new(self.transliterate(&node.arabic)?, node.kind)
            } else {
                let mut parts = Vec::with_capacity(node.children.len());
                let mut last = None;
                for child in &mut node.children {
                    let f = self.transfer(child)?;
                    parts.push(f.surface.clone());
                    last = Some(f);
                }
                let last = last.unwrap_or_else(|| unreachable!());
                FrenchFragment {
                    surface: parts.join(" "),
                    role: node.kind,
                    entry: None,
                    ..last
                }
            };
        node.french = Some(frag.surface.clone());
        Ok(frag)
    }

    /// The adjective's form agreeing with the head noun.
    pub fn agree(
        &self,
        adjective: &FrenchFragment,
        head: &FrenchFragment,
    ) -> Result<String, TranslateError> {
        match adjective.entry {
            Some(id) => self.form(id, head.gender, head.number.unwrap_or(Number::Singular)),
            None => Ok(adjective.surface.clone()),
        }
    }

    /// The generated form of a French entry compatible with `gender` and
    /// `number`, preferring cells that state them explicitly.
    fn form(
        &self,
        id: EntryId,
        gender: Option<Gender>,
        number: Number,
    ) -> Result<String, TranslateError> {
        let fits = |want: Option<Gender>, have: Option<Gender>| {
            want.is_none() || have.is_none() || want == have
        };
        let score = |g: Option<Gender>, n: Option<Number>| {
            u8::from(g.is_some() && g == gender) + u8::from(n == Some(number))
        };
        let mut best: Option<(&String, u8)> = None;
        for (surface, f) in self.french.forms(id) {
            if !fits(gender, f.gender) || f.number.is_some_and(|n| n != number) {
                continue;
            }
            let s = score(f.gender, f.number);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((surface, s));
            }
        }
        best.map(|(s, _)| s.clone())
            .ok_or_else(|| TranslateError::MissingInflection {
                lemma: self.french.entry(id).lemma.clone(),
                gender,
                number,
            })
    }

    /// `<day> <month>`, plus whether the month is a Hijri one (kept as a
    /// romanization, not converted).
    pub fn translate_date(&self, node: &ComponentTree) -> Result<(String, bool), TranslateError> {
        let day = node
            .children
            .iter()
            .find(|c| c.kind == Component::DateNum)
            .ok_or(TranslateError::MalformedDate)?;
        let month = node
            .children
            .iter()
            .find(|c| c.kind == Component::Month)
            .ok_or(TranslateError::MalformedDate)?;
        let day_text: String = day
            .arabic
            .chars()
            .map(|c| match c {
                '\u{0660}'..='\u{0669}' => char::from(b'0' + (c as u32 - 0x0660) as u8),
                c => c,
            })
            .collect();
        let m = self
            .months
            .get(&month.arabic)
            .ok_or_else(|| TranslateError::UnknownMonth {
                surface: month.arabic.clone(),
            })?;
        let mut out = day_text;
        out.push(' ');
        out.push_str(&m.french);
        Ok((out, m.hijri))
    }

    pub fn transliterate(&self, arabic: &str) -> Result<String, TranslateError> {
        self.romanization.transliterate(arabic)
    }

    /// Translate a recognized venue name, filling `french` on every node.
    pub fn translate(&self, tree: &mut ComponentTree) -> Result<String, TranslateError> {
        if tree.kind == Component::SportVenue {
            Ok(self.venue(tree)?.surface)
        } else {
            Ok(self.transfer(tree)?.surface)
        }
    }

    fn venue(&self, node: &mut ComponentTree) -> Result<FrenchFragment, TranslateError> {
        let mut frags = Vec::with_capacity(node.children.len());
        for child in &mut node.children {
            frags.push(if child.kind == Component::SportVenue {
                self.venue(child)?
            } else {
                self.transfer(child)?
            });
        }
        let head = frags
            .iter()
            .find(|f| f.role == Component::SportVenueCategory)
            .or(frags.first())
            .cloned()
            .unwrap_or_else(|| FrenchFragment::new("", Component::SportVenueCategory));
        for (child, frag) in node.children.iter_mut().zip(&mut frags) {
            if matches!(child.kind, Component::Adjective | Component::Demonym) {
                frag.surface = self.agree(frag, &head)?;
                child.french = Some(frag.surface.clone());
            }
        }
        let mut out = String::new();
        for (n, i) in reorder(&node.children).into_iter().enumerate() {
            let frag = &frags[i];
            if n > 0 {
                if node.children[i].lead == Some(Lead::Hyphen) {
                    out.push_str(" - ");
                } else {
                    out.push(' ');
                    if takes_linker(frag.role) {
                        out.push_str(choose_linker(&head, frag));
                    }
                }
            }
            out.push_str(&frag.surface);
        }
        if node.flag == Some(NodeFlag::ClubCandidate) {
            out = out.split(' ').map(capitalize).collect::<Vec<_>>().join(" ");
        }
        node.french = Some(out.clone());
        Ok(FrenchFragment {
            surface: out,
            role: Component::SportVenue,
            entry: None,
            ..head
        })
    }
}

impl core::fmt::Display for FrenchFragment {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.surface)
    }
}
