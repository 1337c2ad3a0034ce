use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Arc, Component, Grammar, GrammarError, Graph, Label};
use crate::lexicon::Constraint;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, reason: impl Into<String>) -> GrammarError {
        GrammarError::Syntax {
            line: self.line,
            reason: reason.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn bump(&mut self, n: usize) {
        self.line += self.text[self.pos..self.pos + n].matches('\n').count();
        self.pos += n;
    }

    fn skip_trivia(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.bump(rest.len() - trimmed.len());
            if self.rest().starts_with("//") {
                let end = self.rest().find('\n').unwrap_or(self.rest().len());
                self.bump(end);
            } else {
                return;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos == self.text.len()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_trivia();
        if self.rest().starts_with(s) {
            self.bump(s.len());
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), GrammarError> {
        if self.eat(s) {
            Ok(())
        } else {
            let found: String = self.rest().chars().take(12).collect();
            Err(self.err(format!("expected `{s}`, found `{found}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, GrammarError> {
        self.skip_trivia();
        let len = self
            .rest()
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            let found: String = self.rest().chars().take(12).collect();
            return Err(self.err(format!("expected a name, found `{found}`")));
        }
        let id = &self.rest()[..len];
        self.bump(len);
        Ok(id)
    }

    fn string(&mut self) -> Result<String, GrammarError> {
        self.expect("\"")?;
        let mut out = String::new();
        let mut chars = self.rest().char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.bump(i + 1);
                    return Ok(out);
                }
                '\\' => match chars.next() {
                    Some((_, e)) => out.push(e),
                    None => break,
                },
                '\n' => break,
                c => out.push(c),
            }
        }
        Err(self.err("unterminated string literal"))
    }

    fn number(&mut self) -> Result<usize, GrammarError> {
        self.skip_trivia();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| self.err("expected a number"))?;
        self.bump(len);
        Ok(n)
    }
}

struct GraphBuilder {
    name: String,
    states: Vec<String>,
    initial: Option<usize>,
    finals: Vec<usize>,
    arcs: Vec<(usize, usize, Label, Option<Component>, usize)>,
}

impl GraphBuilder {
    fn state(&mut self, name: &str) -> usize {
        match self.states.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.states.push(name.to_owned());
                self.states.len() - 1
            }
        }
    }
}

/// Parse and validate a grammar document.
pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: 1,
    };
    let mut main: Option<(String, usize)> = None;
    let mut builders: Vec<GraphBuilder> = Vec::new();

    while !cur.at_end() {
        let kw = cur.ident()?;
        match kw {
            "main" => {
                let line = cur.line;
                let name = cur.ident()?.to_owned();
                cur.expect(";")?;
                if main.is_some() {
                    return Err(cur.err("`main` declared twice"));
                }
                main = Some((name, line));
            }
            "graph" => {
                let name = cur.ident()?.to_owned();
                if builders.iter().any(|b| b.name == name) {
                    return Err(cur.err(format!("graph `{name}` defined twice")));
                }
                cur.expect("{")?;
                let mut b = GraphBuilder {
                    name,
                    states: Vec::new(),
                    initial: None,
                    finals: Vec::new(),
                    arcs: Vec::new(),
                };
                parse_body(&mut cur, &mut b)?;
                builders.push(b);
            }
            other => return Err(cur.err(format!("unexpected `{other}`"))),
        }
    }

    let (main_name, main_line) = main.ok_or(GrammarError::Syntax {
        line: cur.line,
        reason: "missing `main` declaration".into(),
    })?;
    let names: Vec<String> = builders.iter().map(|b| b.name.clone()).collect();
    let main = names
        .iter()
        .position(|n| *n == main_name)
        .ok_or(GrammarError::Syntax {
            line: main_line,
            reason: format!("main graph `{main_name}` is not defined"),
        })?;

    let mut graphs = Vec::with_capacity(builders.len());
    for b in builders {
        graphs.push(finish(b, &names)?);
    }
    Grammar::validated(graphs, main)
}

fn parse_body(cur: &mut Cursor<'_>, b: &mut GraphBuilder) -> Result<(), GrammarError> {
    loop {
        if cur.eat("}") {
            return Ok(());
        }
        if cur.at_end() {
            return Err(cur.err(format!("unclosed graph `{}`", b.name)));
        }
        let first = cur.ident()?;
        match first {
            "final" => {
                loop {
                    let s = cur.ident()?;
                    let s = b.state(s);
                    if !b.finals.contains(&s) {
                        b.finals.push(s);
                    }
                    if !cur.eat(",") {
                        break;
                    }
                }
                cur.expect(";")?;
            }
            "initial" => {
                let s = cur.ident()?;
                if b.initial.is_some() {
                    return Err(cur.err("`initial` declared twice"));
                }
                b.initial = Some(b.state(s));
                cur.expect(";")?;
            }
            from => {
                let line = cur.line;
                let from = b.state(from);
                cur.expect("-[")?;
                let label = parse_label(cur)?;
                let capture = if cur.eat("@") {
                    let tag = cur.ident()?;
                    Some(
                        Component::parse(tag)
                            .ok_or_else(|| cur.err(format!("unknown capture tag `{tag}`")))?,
                    )
                } else {
                    None
                };
                cur.expect("]->")?;
                let to = cur.ident()?;
                let to = b.state(to);
                cur.expect(";")?;
                b.arcs.push((from, to, label, capture, line));
            }
        }
    }
}

fn parse_label(cur: &mut Cursor<'_>) -> Result<Label, GrammarError> {
    cur.skip_trivia();
    let rest = cur.rest();
    if rest.starts_with('"') {
        let s = cur.string()?;
        if s.is_empty() {
            return Err(cur.err("empty literal"));
        }
        Ok(Label::Literal(crate::morphology::normalize(&s)))
    } else if rest.starts_with("<?>") {
        cur.bump(3);
        Ok(Label::Unknown)
    } else if rest.starts_with('<') {
        let end = rest.find('>').ok_or_else(|| cur.err("unclosed `<`"))?;
        let body = &rest[1..end];
        let c = Constraint::parse(body).map_err(|r| cur.err(r))?;
        cur.bump(end + 1);
        Ok(Label::Lexical(c))
    } else if cur.eat("#digits(") {
        let min = cur.number()?;
        cur.expect(",")?;
        let max = cur.number()?;
        cur.expect(")")?;
        if min == 0 || min > max {
            return Err(cur.err(format!("bad digit range ({min},{max})")));
        }
        Ok(Label::DigitRun { min, max })
    } else if cur.eat(":") {
        let name = cur.ident()?.to_owned();
        Ok(Label::Call {
            name,
            graph: usize::MAX,
        })
    } else if cur.eat("~eps") {
        Ok(Label::Epsilon)
    } else {
        let found: String = rest.chars().take(12).collect();
        Err(cur.err(format!("unknown arc label `{found}`")))
    }
}

/// Resolve calls and renumber states canonically: initial first, then in
/// order of appearance along the arcs, then remaining finals.
fn finish(b: GraphBuilder, names: &[String]) -> Result<Graph, GrammarError> {
    if b.states.is_empty() {
        return Err(GrammarError::NoFinalState { graph: b.name });
    }
    // without an `initial` statement, the graph starts where its first arc does
    let initial = b.initial.or(b.arcs.first().map(|a| a.0)).unwrap_or(0);
    let mut order: Vec<usize> = alloc::vec![initial];
    let push = |s: usize, order: &mut Vec<usize>| {
        if !order.contains(&s) {
            order.push(s);
        }
    };
    for (from, to, ..) in &b.arcs {
        push(*from, &mut order);
        push(*to, &mut order);
    }
    for f in &b.finals {
        push(*f, &mut order);
    }
    for s in 0..b.states.len() {
        push(s, &mut order);
    }
    let mut remap = alloc::vec![0; b.states.len()];
    for (new, old) in order.iter().enumerate() {
        remap[*old] = new;
    }
    let states = order.iter().map(|&s| b.states[s].clone()).collect();
    let finals = b.finals.iter().map(|&f| remap[f]).collect();
    let mut arcs = Vec::with_capacity(b.arcs.len());
    for (from, to, mut label, capture, _line) in b.arcs {
        if let Label::Call { name, graph } = &mut label {
            *graph = names.iter().position(|n| n == name).ok_or_else(|| {
                GrammarError::UndefinedSubgraph {
                    name: name.clone(),
                    graph: b.name.clone(),
                }
            })?;
        }
        arcs.push(Arc {
            from: remap[from],
            to: remap[to],
            label,
            capture,
        });
    }
    Ok(Graph::new(b.name, states, finals, arcs))
}
