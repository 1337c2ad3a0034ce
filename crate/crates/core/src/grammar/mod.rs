//! Local grammars: named transducer graphs with lexical arcs, subgraph calls
//! and captures, applied leftmost-longest over analyzed tokens.
//!
//! Grammars are written in a small text format:
//!
//! ```text
//! main MAIN;
//! graph MAIN {
//!   q0 -[<N+LieuSport> @SportVenueCategory]-> q1;
//!   q1 -[:LIEU]-> q2;
//!   final q2;
//! }
//! ```
//!
//! Arc labels are `"literal"`, `<CAT+flag+...>`, `<?>` (unknown word),
//! `#digits(min,max)`, `:SUBGRAPH` and `~eps`. An optional `@Tag` records
//! what the arc consumed as a typed capture.

mod engine;
mod parse;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use engine::{apply, scan, Analysis, Capture, EngineError, MatchResult};
pub use parse::parse_grammar;

use crate::lexicon::Constraint;

/// Component types, used both as capture tags and as tree node types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    SportVenue,
    SportVenueCategory,
    Ethnonym,
    Toponym,
    Adjective,
    Pragmonym,
    CommonNoun,
    Function,
    Demonym,
    Date,
    DateNum,
    Month,
    CatGeo,
}

impl Component {
    pub const ALL: [Component; 13] = [
        Component::SportVenue,
        Component::SportVenueCategory,
        Component::Ethnonym,
        Component::Toponym,
        Component::Adjective,
        Component::Pragmonym,
        Component::CommonNoun,
        Component::Function,
        Component::Demonym,
        Component::Date,
        Component::DateNum,
        Component::Month,
        Component::CatGeo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::SportVenue => "SportVenue",
            Component::SportVenueCategory => "SportVenueCategory",
            Component::Ethnonym => "Ethnonym",
            Component::Toponym => "Toponym",
            Component::Adjective => "Adjective",
            Component::Pragmonym => "Pragmonym",
            Component::CommonNoun => "CommonNoun",
            Component::Function => "Function",
            Component::Demonym => "Demonym",
            Component::Date => "Date",
            Component::DateNum => "DateNum",
            Component::Month => "Month",
            Component::CatGeo => "CatGeo",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Component::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    Literal(String),
    Lexical(Constraint),
    /// A word with no lexicon analysis.
    Unknown,
    DigitRun {
        min: usize,
        max: usize,
    },
    Call {
        name: String,
        graph: usize,
    },
    Epsilon,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Literal(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    if c == '"' || c == '\\' {
                        f.write_str("\\")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("\"")
            }
            Label::Lexical(c) => write!(f, "<{c}>"),
            Label::Unknown => f.write_str("<?>"),
            Label::DigitRun { min, max } => write!(f, "#digits({min},{max})"),
            Label::Call { name, .. } => write!(f, ":{name}"),
            Label::Epsilon => f.write_str("~eps"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub label: Label,
    pub capture: Option<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub name: String,
    /// State names; index 0 is the initial state.
    pub states: Vec<String>,
    pub finals: Vec<usize>,
    pub arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Graph {
    pub const INITIAL: usize = 0;

    pub(crate) fn new(
        name: String,
        states: Vec<String>,
        finals: Vec<usize>,
        arcs: Vec<Arc>,
    ) -> Self {
        let mut out = alloc::vec![Vec::new(); states.len()];
        for (i, a) in arcs.iter().enumerate() {
            out[a.from].push(i);
        }
        Graph {
            name,
            states,
            finals,
            arcs,
            out,
        }
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals.contains(&state)
    }

    /// Outgoing arcs of `state` in declaration order.
    pub fn outgoing(&self, state: usize) -> impl Iterator<Item = &Arc> {
        self.out[state].iter().map(move |&i| &self.arcs[i])
    }
}

/// A validated set of graphs with a designated main graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    graphs: Vec<Graph>,
    main: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("call to undefined subgraph `{name}` in graph `{graph}`")]
    UndefinedSubgraph { name: String, graph: String },
    #[error("graph `{graph}` has no reachable final state")]
    NoFinalState { graph: String },
    #[error("final state `{state}` of graph `{graph}` is unreachable")]
    UnreachableFinal { graph: String, state: String },
    #[error("graph `{graph}` can loop through `{state}` without consuming input")]
    RecursionLimit { graph: String, state: String },
}

impl Grammar {
    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn graph(&self, index: usize) -> &Graph {
        &self.graphs[index]
    }

    pub fn graph_named(&self, name: &str) -> Option<&Graph> {
        self.graphs.iter().find(|g| g.name == name)
    }

    pub fn main(&self) -> usize {
        self.main
    }

    pub fn main_name(&self) -> &str {
        &self.graphs[self.main].name
    }

    /// Canonical DSL text; parsing it yields an equal grammar.
    pub fn to_dsl(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "main {};", self.main_name());
        for g in &self.graphs {
            let _ = writeln!(out, "\ngraph {} {{", g.name);
            let _ = writeln!(out, "  initial {};", g.states[Graph::INITIAL]);
            for a in &g.arcs {
                let _ = write!(out, "  {} -[{}", g.states[a.from], a.label);
                if let Some(tag) = a.capture {
                    let _ = write!(out, " @{tag}");
                }
                let _ = writeln!(out, "]-> {};", g.states[a.to]);
            }
            for f in &g.finals {
                let _ = writeln!(out, "  final {};", g.states[*f]);
            }
            out.push_str("}\n");
        }
        out
    }

    pub(crate) fn validated(graphs: Vec<Graph>, main: usize) -> Result<Self, GrammarError> {
        for g in &graphs {
            let reach = reachable(g);
            if !g.finals.iter().any(|f| reach[*f]) {
                return Err(GrammarError::NoFinalState {
                    graph: g.name.clone(),
                });
            }
            if let Some(f) = g.finals.iter().find(|f| !reach[**f]) {
                return Err(GrammarError::UnreachableFinal {
                    graph: g.name.clone(),
                    state: g.states[*f].clone(),
                });
            }
        }
        let grammar = Grammar { graphs, main };
        grammar.check_empty_loops()?;
        Ok(grammar)
    }

    /// Which graphs can accept without consuming a token.
    fn nullable(&self) -> Vec<bool> {
        let mut nullable = alloc::vec![false; self.graphs.len()];
        loop {
            let mut changed = false;
            for (gi, g) in self.graphs.iter().enumerate() {
                if nullable[gi] {
                    continue;
                }
                let mut seen = alloc::vec![false; g.states.len()];
                let mut stack = alloc::vec![Graph::INITIAL];
                seen[Graph::INITIAL] = true;
                while let Some(s) = stack.pop() {
                    if g.is_final(s) {
                        nullable[gi] = true;
                        changed = true;
                        break;
                    }
                    for a in g.outgoing(s) {
                        let free = match &a.label {
                            Label::Epsilon => true,
                            Label::Call { graph, .. } => nullable[*graph],
                            _ => false,
                        };
                        if free && !seen[a.to] {
                            seen[a.to] = true;
                            stack.push(a.to);
                        }
                    }
                }
            }
            if !changed {
                return nullable;
            }
        }
    }

    /// Reject cycles of epsilon moves and subgraph entries that consume
    /// nothing; the engine could otherwise recurse forever.
    fn check_empty_loops(&self) -> Result<(), GrammarError> {
        let nullable = self.nullable();
        let offsets: Vec<usize> = self
            .graphs
            .iter()
            .scan(0, |acc, g| {
                let start = *acc;
                *acc += g.states.len();
                Some(start)
            })
            .collect();
        let total: usize = self.graphs.iter().map(|g| g.states.len()).sum();
        let mut edges = alloc::vec![Vec::new(); total];
        for (gi, g) in self.graphs.iter().enumerate() {
            for a in &g.arcs {
                let from = offsets[gi] + a.from;
                match &a.label {
                    Label::Epsilon => edges[from].push(offsets[gi] + a.to),
                    Label::Call { graph, .. } => {
                        edges[from].push(offsets[*graph] + Graph::INITIAL);
                        if nullable[*graph] {
                            edges[from].push(offsets[gi] + a.to);
                        }
                    }
                    _ => {}
                }
            }
        }
        // iterative three-colour DFS
        let mut colour = alloc::vec![0u8; total];
        for root in 0..total {
            if colour[root] != 0 {
                continue;
            }
            let mut stack = alloc::vec![(root, 0usize)];
            colour[root] = 1;
            while let Some((node, next)) = stack.pop() {
                if let Some(&succ) = edges[node].get(next) {
                    stack.push((node, next + 1));
                    match colour[succ] {
                        0 => {
                            colour[succ] = 1;
                            stack.push((succ, 0));
                        }
                        1 => {
                            let gi = offsets.iter().rposition(|&o| o <= succ).unwrap_or(0);
                            let g = &self.graphs[gi];
                            return Err(GrammarError::RecursionLimit {
                                graph: g.name.clone(),
                                state: g.states[succ - offsets[gi]].clone(),
                            });
                        }
                        _ => {}
                    }
                } else {
                    colour[node] = 2;
                }
            }
        }
        Ok(())
    }
}

fn reachable(g: &Graph) -> Vec<bool> {
    let mut seen = alloc::vec![false; g.states.len()];
    let mut stack = alloc::vec![Graph::INITIAL];
    seen[Graph::INITIAL] = true;
    while let Some(s) = stack.pop() {
        for a in g.outgoing(s) {
            if !seen[a.to] {
                seen[a.to] = true;
                stack.push(a.to);
            }
        }
    }
    seen
}
