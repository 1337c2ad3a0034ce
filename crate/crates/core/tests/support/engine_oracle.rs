//! An exhaustive path-enumeration oracle for `apply`.
//!
//! The oracle works from the generator's own description of the grammar (not
//! the parsed one) and knows the five-word lexicon by heart. Among all
//! accepting paths it picks the longest; ties go to the path whose choice
//! sequence (arc index, alternative index, ...; accepting = after every arc)
//! is lexicographically smallest.

use malaab_core::grammar::{apply, parse_grammar, Capture, Component};
use malaab_core::lexicon::{parse_dictionary, Lang, Lexicon};
use malaab_core::recognizer::tokenize;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const WORDS: [&str; 5] = ["stade", "sfax", "grand", "de", "zz"];

fn lexicon() -> Lexicon {
    let text = "\
stade,N+LieuSport+FR=stade
sfax,N+PR+Ville+FR=Sfax
grand,A+FR=grand
de,PREP+FR=de
grand sfax,N+PR+Ville+FR=Grand Sfax
";
    Lexicon::build(
        Lang::Ar,
        parse_dictionary("t.dic", text, Lang::Ar).unwrap(),
        &[],
    )
    .unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Lab {
    Sport,
    Place,
    Adj,
    Prep,
    Noun,
    LitDe,
    LitStade,
    Unknown,
    Eps,
    Call,
}

impl Lab {
    fn dsl(self) -> &'static str {
        match self {
            Lab::Sport => "<N+LieuSport>",
            Lab::Place => "<N+Toponyme>",
            Lab::Adj => "<A>",
            Lab::Prep => "<PREP>",
            Lab::Noun => "<N>",
            Lab::LitDe => "\"de\"",
            Lab::LitStade => "\"stade\"",
            Lab::Unknown => "<?>",
            Lab::Eps => "~eps",
            Lab::Call => ":G1",
        }
    }

    /// Token counts this label can consume at `pos`, in preference order:
    /// multiword readings first, then the single word.
    fn consume(self, words: &[&str], pos: usize) -> Vec<usize> {
        let Some(&w) = words.get(pos) else {
            return Vec::new();
        };
        let grand_sfax = w == "grand" && words.get(pos + 1) == Some(&"sfax");
        let mut out = Vec::new();
        if grand_sfax && matches!(self, Lab::Place | Lab::Noun) {
            out.push(2);
        }
        let single = match self {
            Lab::Sport | Lab::LitStade => w == "stade",
            Lab::Place => w == "sfax",
            Lab::Adj => w == "grand",
            Lab::Prep | Lab::LitDe => w == "de",
            Lab::Noun => w == "stade" || w == "sfax",
            Lab::Unknown => w == "zz",
            Lab::Eps | Lab::Call => false,
        };
        if single {
            out.push(1);
        }
        out
    }
}

#[derive(Debug, Clone)]
struct ArcDesc {
    from: usize,
    to: usize,
    label: Lab,
    tag: Option<Component>,
}

#[derive(Debug, Clone)]
struct GraphDesc {
    arcs: Vec<ArcDesc>,
    finals: Vec<usize>,
    explicit_initial: bool,
}

impl GraphDesc {
    fn initial(&self) -> usize {
        if self.explicit_initial {
            0
        } else {
            self.arcs.first().map_or(0, |a| a.from)
        }
    }

    fn dsl(&self, name: &str, prefix: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        if self.explicit_initial {
            s += &format!("  initial {prefix}0;\n");
        }
        for a in &self.arcs {
            let tag = a.tag.map(|t| format!(" @{}", t.name())).unwrap_or_default();
            s += &format!(
                "  {prefix}{} -[{}{tag}]-> {prefix}{};\n",
                a.from,
                a.label.dsl(),
                a.to
            );
        }
        let finals: Vec<String> = self.finals.iter().map(|f| format!("{prefix}{f}")).collect();
        s += &format!("  final {};\n}}\n", finals.join(", "));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    tag: Component,
    span: (usize, usize),
    children: Vec<Node>,
}

fn project(c: &Capture) -> Node {
    Node {
        tag: c.tag,
        span: (c.tokens.start, c.tokens.end),
        children: c.children.iter().map(project).collect(),
    }
}

struct Path {
    key: Vec<usize>,
    end: usize,
    caps: Vec<Node>,
}

/// Every accepting path from `state` at `pos` of graph `g`.
fn paths(graphs: &[GraphDesc], g: usize, state: usize, pos: usize, words: &[&str]) -> Vec<Path> {
    let graph = &graphs[g];
    let outgoing: Vec<&ArcDesc> = graph.arcs.iter().filter(|a| a.from == state).collect();
    let mut out = Vec::new();
    for (i, arc) in outgoing.iter().enumerate() {
        // (choice key, position after the arc, captures of the arc)
        let mut steps: Vec<(Vec<usize>, usize, Vec<Node>)> = Vec::new();
        match arc.label {
            Lab::Eps => steps.push((vec![i, 0], pos, Vec::new())),
            Lab::Call => {
                let initial = graphs[1].initial();
                for p in paths(graphs, 1, initial, pos, words) {
                    let mut key = vec![i];
                    key.extend(p.key);
                    let caps = match arc.tag {
                        Some(tag) if p.end > pos => vec![Node {
                            tag,
                            span: (pos, p.end),
                            children: p.caps,
                        }],
                        _ => p.caps,
                    };
                    steps.push((key, p.end, caps));
                }
            }
            lab => {
                for (j, n) in lab.consume(words, pos).into_iter().enumerate() {
                    let caps = arc
                        .tag
                        .map(|tag| {
                            vec![Node {
                                tag,
                                span: (pos, pos + n),
                                children: Vec::new(),
                            }]
                        })
                        .unwrap_or_default();
                    steps.push((vec![i, j], pos + n, caps));
                }
            }
        }
        for (key, mid, caps) in steps {
            for tail in paths(graphs, g, arc.to, mid, words) {
                let mut k = key.clone();
                k.extend(tail.key);
                let mut c = caps.clone();
                c.extend(tail.caps);
                out.push(Path {
                    key: k,
                    end: tail.end,
                    caps: c,
                });
            }
        }
    }
    if graph.finals.contains(&state) {
        out.push(Path {
            key: vec![outgoing.len()],
            end: pos,
            caps: Vec::new(),
        });
    }
    out
}

fn oracle(
    graphs: &[GraphDesc],
    words: &[&str],
    start: usize,
) -> Option<((usize, usize), Vec<Node>)> {
    if start >= words.len() {
        return None;
    }
    paths(graphs, 0, graphs[0].initial(), start, words)
        .into_iter()
        .filter(|p| p.end > start)
        .min_by(|a, b| b.end.cmp(&a.end).then_with(|| a.key.cmp(&b.key)))
        .map(|p| ((start, p.end), p.caps))
}

fn random_graph(rng: &mut StdRng, may_call: bool) -> GraphDesc {
    let states = rng.gen_range(1..=6);
    let n_arcs = rng.gen_range(1..=8);
    let labels = [
        Lab::Sport,
        Lab::Place,
        Lab::Adj,
        Lab::Prep,
        Lab::Noun,
        Lab::LitDe,
        Lab::LitStade,
        Lab::Unknown,
        Lab::Eps,
        Lab::Call,
    ];
    let mut arcs = Vec::new();
    for _ in 0..n_arcs {
        let mut label = labels[rng.gen_range(0..labels.len())];
        if label == Lab::Call && !may_call {
            label = Lab::Adj;
        }
        let from = rng.gen_range(0..states);
        // input-free arcs only go forward, so no path can loop without input
        let to = if matches!(label, Lab::Eps | Lab::Call) {
            if from + 1 >= states {
                continue;
            }
            rng.gen_range(from + 1..states)
        } else {
            rng.gen_range(0..states)
        };
        let tag = rng
            .gen_bool(0.5)
            .then(|| Component::ALL[rng.gen_range(0..Component::ALL.len())]);
        let tag = if label == Lab::Eps { None } else { tag };
        arcs.push(ArcDesc {
            from,
            to,
            label,
            tag,
        });
    }
    let mut finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.4)).collect();
    if finals.is_empty() {
        finals.push(rng.gen_range(0..states));
    }
    GraphDesc {
        arcs,
        finals,
        explicit_initial: rng.gen_bool(0.5),
    }
}

/// Outcome of an oracle run.
#[derive(Debug, Default)]
pub struct OracleReport {
    /// Valid random (grammar, token stream) pairs.
    pub pairs: usize,
    /// `apply` calls compared (one per start position).
    pub compared: usize,
    /// Comparisons where the oracle found a match.
    pub matched: usize,
    /// Descriptions of the disagreements.
    pub mismatches: Vec<String>,
}

/// Compare `apply` with the oracle on `pairs` random grammar/stream pairs.
pub fn run(pairs: usize, seed: u64) -> OracleReport {
    let lex = lexicon();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = OracleReport::default();
    while report.pairs < pairs {
        let graphs = vec![random_graph(&mut rng, true), random_graph(&mut rng, false)];
        let text = format!(
            "main G0;\n{}{}",
            graphs[0].dsl("G0", "s"),
            graphs[1].dsl("G1", "t")
        );
        // generated grammars with unreachable finals are rejected by the parser
        let Ok(grammar) = parse_grammar(&text) else {
            continue;
        };
        report.pairs += 1;
        let len = rng.gen_range(1..=8);
        let words: Vec<&str> = (0..len)
            .map(|_| WORDS[rng.gen_range(0..WORDS.len())])
            .collect();
        let doc = tokenize(&words.join(" "), &lex);
        assert_eq!(doc.tokens.len(), words.len());
        for start in 0..words.len() {
            let got = apply(&grammar, &doc.tokens, start).map(|m| {
                m.map(|m| {
                    let caps: Vec<Node> = m.captures.iter().map(project).collect();
                    ((m.tokens.start, m.tokens.end), caps)
                })
            });
            let want = oracle(&graphs, &words, start);
            report.compared += 1;
            report.matched += usize::from(want.is_some());
            if got.as_ref() != Ok(&want) {
                report.mismatches.push(format!(
                    "grammar:\n{text}words: {words:?} start {start}\ngot {got:?}\nwant {want:?}"
                ));
            }
        }
    }
    report
}

/// Text of a random two-graph grammar; may fail validation.
pub fn random_grammar_text(seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let graphs = [random_graph(&mut rng, true), random_graph(&mut rng, false)];
    format!(
        "main G0;\n{}{}",
        graphs[0].dsl("G0", "s"),
        graphs[1].dsl("G1", "t")
    )
}
