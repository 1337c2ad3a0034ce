//! Leftmost-longest application of a [`Grammar`] over analyzed tokens.
//!
//! Every (graph, state, position) triple is solved once: its result is the
//! list of reachable end positions, each with the captures of the first path
//! (in arc-declaration order) that reaches it. Accepting at a final state is
//! tried after the state's outgoing arcs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use super::{Component, Grammar, Graph, Label};
use crate::lexicon::{Constraint, Flag, Reading};
use crate::token::Token;

/// The lexicon analyses a lexical arc accepted, restricted to those that
/// satisfy the arc's constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub tokens: Range<usize>,
    pub readings: Vec<Reading>,
    /// Chars of conjunction/preposition clitics in front of the first token.
    pub particle_chars: usize,
    pub determined: bool,
}

/// A tagged piece of a match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capture {
    pub tag: Component,
    pub tokens: Range<usize>,
    /// Set for captures made on a lexical arc.
    pub analysis: Option<Analysis>,
    /// Captures made inside a tagged subgraph call.
    pub children: Vec<Capture>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub tokens: Range<usize>,
    /// Char offsets of the covered tokens in the source text.
    pub chars: Range<usize>,
    pub captures: Vec<Capture>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("graph `{graph}` re-entered state `{state}` without consuming input")]
    RecursionLimit { graph: String, state: String },
}

type Outcomes = Rc<Vec<(usize, Vec<Capture>)>>;

struct Run<'a> {
    grammar: &'a Grammar,
    tokens: &'a [Token],
    memo: BTreeMap<(usize, usize, usize), Outcomes>,
    active: BTreeSet<(usize, usize, usize)>,
}

/// The longest match starting at token `start`, if any. Equal-length
/// alternatives resolve to the first path in arc-declaration order (each end
/// position appears once in the outcome list, with its first path).
pub fn apply(
    grammar: &Grammar,
    tokens: &[Token],
    start: usize,
) -> Result<Option<MatchResult>, EngineError> {
    if start >= tokens.len() {
        return Ok(None);
    }
    let mut run = Run {
        grammar,
        tokens,
        memo: BTreeMap::new(),
        active: BTreeSet::new(),
    };
    let outcomes = run.solve(grammar.main(), Graph::INITIAL, start)?;
    let best = outcomes
        .iter()
        .filter(|(end, _)| *end > start)
        .max_by_key(|(end, _)| *end);
    Ok(best.map(|(end, captures)| MatchResult {
        tokens: start..*end,
        chars: tokens[start].chars.start..tokens[*end - 1].chars.end,
        captures: captures.clone(),
    }))
}

/// Left-to-right sweep emitting non-overlapping leftmost-longest matches.
pub fn scan(grammar: &Grammar, tokens: &[Token]) -> Result<Vec<MatchResult>, EngineError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        match apply(grammar, tokens, i)? {
            Some(m) => {
                i = m.tokens.end;
                out.push(m);
            }
            None => i += 1,
        }
    }
    Ok(out)
}

impl Run<'_> {
    fn solve(&mut self, graph: usize, state: usize, pos: usize) -> Result<Outcomes, EngineError> {
        let key = (graph, state, pos);
        if let Some(o) = self.memo.get(&key) {
            return Ok(o.clone());
        }
        let g = self.grammar.graph(graph);
        if !self.active.insert(key) {
            return Err(EngineError::RecursionLimit {
                graph: g.name.clone(),
                state: g.states[state].clone(),
            });
        }
        let mut result: Vec<(usize, Vec<Capture>)> = Vec::new();
        for arc in g.outgoing(state) {
            for (mid, head) in self.step(&arc.label, arc.capture, pos)? {
                let tails = self.solve(graph, arc.to, mid)?;
                for (end, tail) in tails.iter() {
                    if result.iter().all(|(e, _)| e != end) {
                        let mut caps = head.clone();
                        caps.extend(tail.iter().cloned());
                        result.push((*end, caps));
                    }
                }
            }
        }
        if g.is_final(state) && result.iter().all(|(e, _)| *e != pos) {
            result.push((pos, Vec::new()));
        }
        self.active.remove(&key);
        let result = Rc::new(result);
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    /// Ways to traverse one arc from `pos`, in preference order.
    fn step(
        &mut self,
        label: &Label,
        tag: Option<Component>,
        pos: usize,
    ) -> Result<Vec<(usize, Vec<Capture>)>, EngineError> {
        let tokens = self.tokens;
        let lexical = |analysis: Analysis| -> (usize, Vec<Capture>) {
            let end = analysis.tokens.end;
            let caps = match tag {
                Some(tag) => alloc::vec![Capture {
                    tag,
                    tokens: analysis.tokens.clone(),
                    analysis: Some(analysis),
                    children: Vec::new(),
                }],
                None => Vec::new(),
            };
            (end, caps)
        };
        let Some(token) = tokens.get(pos) else {
            return Ok(match label {
                Label::Epsilon => alloc::vec![(pos, Vec::new())],
                Label::Call { graph, .. } => self.call(*graph, tag, pos)?,
                _ => Vec::new(),
            });
        };
        Ok(match label {
            Label::Epsilon => alloc::vec![(pos, Vec::new())],
            Label::Call { graph, .. } => self.call(*graph, tag, pos)?,
            Label::Literal(s) => {
                if token.surface == *s {
                    alloc::vec![lexical(Analysis {
                        tokens: pos..pos + 1,
                        readings: Vec::new(),
                        particle_chars: 0,
                        determined: false,
                    })]
                } else {
                    Vec::new()
                }
            }
            Label::Unknown => {
                if token.is_unknown() {
                    alloc::vec![lexical(Analysis {
                        tokens: pos..pos + 1,
                        readings: Vec::new(),
                        particle_chars: 0,
                        determined: false,
                    })]
                } else {
                    Vec::new()
                }
            }
            Label::DigitRun { min, max } => {
                let len = token.surface.chars().count();
                if token.is_number() && (*min..=*max).contains(&len) {
                    alloc::vec![lexical(Analysis {
                        tokens: pos..pos + 1,
                        readings: Vec::new(),
                        particle_chars: 0,
                        determined: false,
                    })]
                } else {
                    Vec::new()
                }
            }
            Label::Lexical(c) => {
                let mut alts = Vec::new();
                for hit in &token.multiword {
                    let readings: Vec<Reading> = hit
                        .readings
                        .iter()
                        .filter(|r| c.accepts(&r.features))
                        .copied()
                        .collect();
                    if !readings.is_empty() {
                        alts.push(lexical(Analysis {
                            tokens: pos..pos + hit.len,
                            readings,
                            particle_chars: 0,
                            determined: false,
                        }));
                    }
                }
                if let Some(a) = single_token(token, pos, c) {
                    alts.push(lexical(a));
                }
                alts
            }
        })
    }

    fn call(
        &mut self,
        graph: usize,
        tag: Option<Component>,
        pos: usize,
    ) -> Result<Vec<(usize, Vec<Capture>)>, EngineError> {
        let inner = self.solve(graph, Graph::INITIAL, pos)?;
        Ok(inner
            .iter()
            .map(|(end, caps)| match tag {
                Some(tag) if *end > pos => (
                    *end,
                    alloc::vec![Capture {
                        tag,
                        tokens: pos..*end,
                        analysis: None,
                        children: caps.clone(),
                    }],
                ),
                _ => (*end, caps.clone()),
            })
            .collect())
    }
}

/// The first segmentation of `token` with a reading that meets `c`. Proper
/// names surface with the article ال only when they are flagged DetOpt.
fn single_token(token: &Token, pos: usize, c: &Constraint) -> Option<Analysis> {
    token.segmentations().iter().find_map(|seg| {
        let readings: Vec<Reading> = seg
            .readings
            .iter()
            .filter(|r| c.accepts(&r.features))
            .filter(|r| {
                !seg.determined || !r.features.has(Flag::PR) || r.features.has(Flag::DetOpt)
            })
            .copied()
            .collect();
        (!readings.is_empty()).then(|| Analysis {
            tokens: pos..pos + 1,
            readings,
            particle_chars: seg.particle_chars(),
            determined: seg.determined,
        })
    })
}
