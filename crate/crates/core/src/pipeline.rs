//! The recognition + translation cascade over one document.

use alloc::string::String;
use alloc::vec::Vec;

use crate::evaluation::Prediction;
use crate::grammar::EngineError;
use crate::recognizer::{recognize, ComponentTree, Document};
use crate::resources::Resources;
use crate::translator::TranslateError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("{doc}: {source}")]
    Engine {
        doc: String,
        #[source]
        source: EngineError,
    },
    #[error("{doc}: cannot translate `{arabic}`: {source}")]
    Translate {
        doc: String,
        arabic: String,
        #[source]
        source: TranslateError,
    },
}

/// A document with its recognized, translated venue names in text order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedDocument {
    pub document: Document,
    pub entities: Vec<ComponentTree>,
}

impl TaggedDocument {
    pub fn predictions(&self) -> Vec<Prediction> {
        self.entities
            .iter()
            .map(|e| Prediction {
                doc_id: self.document.id.clone(),
                chars: e.chars.clone(),
                french: e.french.clone().unwrap_or_default(),
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    resources: Resources,
}

impl Pipeline {
    pub fn new(resources: Resources) -> Self {
        Pipeline { resources }
    }

    pub fn resources(&self) -> &Resources {
        &self.resources
    }

    /// Tokenize, recognize and translate one document.
    pub fn tag(&self, id: &str, text: &str) -> Result<TaggedDocument, PipelineError> {
        let r = &self.resources;
        let document = Document::new(id, text, &r.arabic);
        let mut entities =
            recognize(&document, &r.grammar).map_err(|source| PipelineError::Engine {
                doc: id.into(),
                source,
            })?;
        let translator = r.translator();
        for e in &mut entities {
            translator
                .translate(e)
                .map_err(|source| PipelineError::Translate {
                    doc: id.into(),
                    arabic: e.arabic.clone(),
                    source,
                })?;
        }
        Ok(TaggedDocument { document, entities })
    }
}
