//! The full set of linguistic resources, compiled and cross-checked.

use alloc::string::String;
use alloc::vec::Vec;

use crate::grammar::{parse_grammar, Grammar, GrammarError};
use crate::lexicon::{
    parse_dictionary, parse_paradigms, serialize_dictionary, serialize_paradigms, Flag, Lang,
    LexEntry, Lexicon, LexiconError, Paradigm,
};
use crate::translator::{MonthTable, RomanizationTable, TableError, Translator};

/// A named source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Source {
            name: name.into(),
            text: text.into(),
        }
    }
}

/// The six resource texts the pipeline is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sources {
    pub dict_ar: Source,
    pub dict_fr: Source,
    pub paradigms: Source,
    pub grammar: Source,
    pub translit: Source,
    pub months: Source,
}

impl Sources {
    /// The resources shipped with the crate.
    pub fn shipped() -> Self {
        Sources {
            dict_ar: Source::new("ar.dic", include_str!("../resources/ar.dic")),
            dict_fr: Source::new("fr.dic", include_str!("../resources/fr.dic")),
            paradigms: Source::new("paradigms.flx", include_str!("../resources/paradigms.flx")),
            grammar: Source::new(
                "venues.grammar",
                include_str!("../resources/venues.grammar"),
            ),
            translit: Source::new("translit.tsv", include_str!("../resources/translit.tsv")),
            months: Source::new("months.tsv", include_str!("../resources/months.tsv")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResourceError {
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("{file}: {source}")]
    Grammar {
        file: String,
        #[source]
        source: GrammarError,
    },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{file}:{line}: entry `{lemma}` links to missing French entry `{target}`")]
    MissingFrenchEntry {
        lemma: String,
        target: String,
        file: String,
        line: usize,
    },
    #[error("{file}:{line}: month `{lemma}` is not in the month table")]
    MissingMonth {
        lemma: String,
        file: String,
        line: usize,
    },
}

/// Compiled, validated resources. Immutable once built.
#[derive(Debug, Clone)]
pub struct Resources {
    pub arabic: Lexicon,
    pub french: Lexicon,
    pub paradigms: Vec<Paradigm>,
    pub grammar: Grammar,
    pub romanization: RomanizationTable,
    pub months: MonthTable,
}

impl Resources {
    /// Parse every source and check the links between them: paradigm ids,
    /// subgraph calls, FR= targets and month names.
    pub fn compile(sources: &Sources) -> Result<Self, ResourceError> {
        let paradigms = parse_paradigms(&sources.paradigms.name, &sources.paradigms.text)?;
        let ar = parse_dictionary(&sources.dict_ar.name, &sources.dict_ar.text, Lang::Ar)?;
        let fr = parse_dictionary(&sources.dict_fr.name, &sources.dict_fr.text, Lang::Fr)?;
        let arabic = Lexicon::build(Lang::Ar, ar, &paradigms)?;
        let french = Lexicon::build(Lang::Fr, fr, &paradigms)?;
        let grammar =
            parse_grammar(&sources.grammar.text).map_err(|source| ResourceError::Grammar {
                file: sources.grammar.name.clone(),
                source,
            })?;
        let romanization =
            RomanizationTable::parse(&sources.translit.name, &sources.translit.text)?;
        let months = MonthTable::parse(&sources.months.name, &sources.months.text)?;
        for entry in arabic.entries() {
            if let Some(target) = &entry.translation {
                if french.entries_with_lemma(target).next().is_none() {
                    return Err(ResourceError::MissingFrenchEntry {
                        lemma: entry.lemma.clone(),
                        target: target.clone(),
                        file: entry.source.file.clone(),
                        line: entry.source.line,
                    });
                }
            }
            if entry.features.has(Flag::Mois) && months.get(&entry.lemma).is_none() {
                return Err(ResourceError::MissingMonth {
                    lemma: entry.lemma.clone(),
                    file: entry.source.file.clone(),
                    line: entry.source.line,
                });
            }
        }
        Ok(Resources {
            arabic,
            french,
            paradigms,
            grammar,
            romanization,
            months,
        })
    }

    /// The shipped resources; they are known to compile.
    pub fn shipped() -> Self {
        Resources::compile(&Sources::shipped())
            .unwrap_or_else(|e| panic!("shipped resources are invalid: {e}"))
    }

    pub fn translator(&self) -> Translator<'_> {
        Translator::new(&self.arabic, &self.french, &self.romanization, &self.months)
    }

    /// Canonical source texts: comments and layout dropped, entries in file
    /// order. Compiling them gives equivalent resources, and compiling the
    /// same sources twice gives identical text.
    pub fn canonical_sources(&self) -> Sources {
        Sources {
            dict_ar: Source::new("ar.dic", serialize_dictionary(self.arabic.entries())),
            dict_fr: Source::new("fr.dic", serialize_dictionary(self.french.entries())),
            paradigms: Source::new("paradigms.flx", serialize_paradigms(&self.paradigms)),
            grammar: Source::new("venues.grammar", self.grammar.to_dsl()),
            translit: Source::new("translit.tsv", self.romanization.to_text()),
            months: Source::new("months.tsv", self.months.to_text()),
        }
    }
}

/// Entry lists compare equal ignoring source positions.
pub fn same_entries(a: &[LexEntry], b: &[LexEntry]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_content(y))
}
