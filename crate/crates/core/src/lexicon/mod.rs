//! Feature-annotated dictionaries and their inflected surface index.
//!
//! Dictionary lines look like `ملعب,N+LieuSport+FLX=ملعب+FR=stade`: a lemma,
//! a category, flags, agreement features, the inflection model (`FLX=`) and,
//! on the Arabic side, the French lemma (`FR=`).

mod dictionary;
mod features;
mod paradigm;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

pub use dictionary::{parse_dictionary, serialize_dictionary, LexEntry, SourcePos};
pub use features::{
    Category, Constraint, FeatureSet, Flag, FlagSet, Gender, Lang, Number, PartialFeatures,
};
pub use paradigm::{
    expand_inflections, parse_paradigms, serialize_paradigms, Paradigm, ParadigmRule, Transform,
};

use crate::morphology::normalize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("{file}:{line}: {reason}")]
    MalformedLine {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("{file}:{line}: {reason}")]
    MalformedParadigm {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("{file}:{line}: entry `{lemma}` uses unknown paradigm `{id}`")]
    UnknownParadigm {
        id: String,
        lemma: String,
        file: String,
        line: usize,
    },
    #[error("{file}:{line}: paradigm `{id}` cannot inflect `{lemma}`")]
    InvalidInflection {
        id: String,
        lemma: String,
        file: String,
        line: usize,
    },
}

/// Index of an entry inside its [`Lexicon`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryId(pub usize);

/// One analysis of a surface form: which entry, with which merged features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Reading {
    pub entry: EntryId,
    pub features: FeatureSet,
}

/// A multiword surface form, split into normalized words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiwordForm {
    pub words: Vec<String>,
    pub reading: Reading,
}

/// An immutable, inflection-expanded dictionary.
#[derive(Debug, Clone)]
pub struct Lexicon {
    lang: Lang,
    entries: Vec<LexEntry>,
    forms: Vec<Vec<(String, FeatureSet)>>,
    surfaces: BTreeMap<String, Vec<Reading>>,
    multiword: BTreeMap<String, Vec<MultiwordForm>>,
}

impl Lexicon {
    /// Expand every entry through its paradigm and index all surfaces.
    pub fn build(
        lang: Lang,
        entries: Vec<LexEntry>,
        paradigms: &[Paradigm],
    ) -> Result<Self, LexiconError> {
        let mut forms = Vec::with_capacity(entries.len());
        let mut surfaces: BTreeMap<String, Vec<Reading>> = BTreeMap::new();
        let mut multiword: BTreeMap<String, Vec<MultiwordForm>> = BTreeMap::new();
        for (i, entry) in entries.iter().enumerate() {
            let expanded = expand_inflections(entry, paradigms)?;
            for (surface, features) in &expanded {
                let reading = Reading {
                    entry: EntryId(i),
                    features: *features,
                };
                let words: Vec<String> = surface.split_whitespace().map(String::from).collect();
                if words.len() > 1 {
                    multiword
                        .entry(words[0].clone())
                        .or_default()
                        .push(MultiwordForm { words, reading });
                }
                surfaces.entry(surface.clone()).or_default().push(reading);
            }
            forms.push(expanded);
        }
        Ok(Lexicon {
            lang,
            entries,
            forms,
            surfaces,
            multiword,
        })
    }

    pub fn lang(&self) -> Lang {
        self.lang
    }

    pub fn entries(&self) -> &[LexEntry] {
        &self.entries
    }

    pub fn entry(&self, id: EntryId) -> &LexEntry {
        &self.entries[id.0]
    }

    /// Surface forms generated for an entry, lemma first.
    pub fn forms(&self, id: EntryId) -> &[(String, FeatureSet)] {
        &self.forms[id.0]
    }

    /// Readings of an already-normalized surface.
    pub fn readings(&self, surface: &str) -> &[Reading] {
        self.surfaces.get(surface).map_or(&[], Vec::as_slice)
    }

    /// Multiword forms whose first word is `word`.
    pub fn multiword_starting(&self, word: &str) -> &[MultiwordForm] {
        self.multiword.get(word).map_or(&[], Vec::as_slice)
    }

    /// Every homograph of `surface` after normalization.
    pub fn lookup(&self, surface: &str) -> Vec<(&LexEntry, FeatureSet)> {
        let key = match self.lang {
            Lang::Ar => normalize(surface),
            Lang::Fr => String::from(surface.trim()),
        };
        self.readings(&key)
            .iter()
            .map(|r| (self.entry(r.entry), r.features))
            .collect()
    }

    /// Entries whose lemma is exactly `lemma`, in file order.
    pub fn entries_with_lemma<'a>(
        &'a self,
        lemma: &'a str,
    ) -> impl Iterator<Item = (EntryId, &'a LexEntry)> + 'a {
        self.readings(lemma)
            .iter()
            .map(|r| r.entry)
            .filter(move |id| self.entry(*id).lemma == lemma)
            .fold(Vec::new(), |mut acc, id| {
                if !acc.contains(&id) {
                    acc.push(id);
                }
                acc
            })
            .into_iter()
            .map(move |id| (id, self.entry(id)))
    }

    /// Number of indexed distinct surfaces.
    pub fn surface_count(&self) -> usize {
        self.surfaces.len()
    }

    pub fn surfaces(&self) -> impl Iterator<Item = (&str, &[Reading])> {
        self.surfaces
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

/// Does a reading meet a grammar constraint?
pub fn satisfies(candidate: (&LexEntry, &FeatureSet), constraint: &Constraint) -> bool {
    constraint.accepts(candidate.1)
}
