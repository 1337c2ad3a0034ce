//! Output formats for tagged documents. Documents without entities produce
//! no output at all.

use std::fmt::Write;

use clap::ValueEnum;
use malaab_core::evaluation::{concordance, EvalReport};
use malaab_core::recognizer::{document_xml, ComponentTree};
use malaab_core::TaggedDocument;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// The typological-model XML; several documents are wrapped in `<Corpus>`.
    Xml,
    /// One JSON object per document and line.
    Json,
    /// Keyword-in-context rows: doc, before, arabic/french, after.
    Concordance,
    /// Spans in the gold-file layout, usable as a gold file.
    Tsv,
}

pub fn render(format: Format, docs: &[TaggedDocument], width: usize) -> String {
    let docs: Vec<&TaggedDocument> = docs.iter().filter(|d| !d.entities.is_empty()).collect();
    if docs.is_empty() {
        return String::new();
    }
    match format {
        Format::Xml => xml(&docs),
        Format::Json => docs.iter().map(|d| json_line(d)).collect(),
        Format::Concordance => concordance_rows(&docs, width),
        Format::Tsv => tsv(&docs),
    }
}

fn escape_attr(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn xml(docs: &[&TaggedDocument]) -> String {
    if let [one] = docs {
        return document_xml(&one.entities);
    }
    let mut out = String::from("<Corpus>\n");
    for d in docs {
        let _ = writeln!(out, "  <Document id=\"{}\">", escape_attr(&d.document.id));
        for line in document_xml(&d.entities).lines() {
            let _ = writeln!(out, "    {line}");
        }
        out.push_str("  </Document>\n");
    }
    out.push_str("</Corpus>\n");
    out
}

/// JSON mirror of a component tree.
pub fn tree_json(t: &ComponentTree) -> Value {
    let mut m = Map::new();
    m.insert("type".into(), json!(t.kind.name()));
    m.insert("kind".into(), json!(t.toponym.map(|k| k.as_str())));
    m.insert("arabic".into(), json!(t.arabic));
    m.insert("french".into(), json!(t.french));
    m.insert("start".into(), json!(t.chars.start));
    m.insert("end".into(), json!(t.chars.end));
    if let Some(flag) = t.flag {
        m.insert("flag".into(), json!(flag.as_str()));
    }
    m.insert(
        "children".into(),
        Value::Array(t.children.iter().map(tree_json).collect()),
    );
    Value::Object(m)
}

fn json_line(d: &TaggedDocument) -> String {
    let v = json!({
        "doc": d.document.id,
        "entities": d.entities.iter().map(tree_json).collect::<Vec<_>>(),
    });
    format!("{v}\n")
}

/// Context cells stay on one line and inside their column.
fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn concordance_rows(docs: &[&TaggedDocument], width: usize) -> String {
    let mut out = String::from("doc_id\tbefore\tsequence\tafter\n");
    for d in docs {
        for row in concordance(&d.document, &d.entities, width) {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                d.document.id,
                one_line(&row.before),
                one_line(&row.pair()),
                one_line(&row.after)
            );
        }
    }
    out
}

fn tsv(docs: &[&TaggedDocument]) -> String {
    let mut w = csv::WriterBuilder::new()
        .delimiter(b'\t')
        .from_writer(Vec::new());
    let header = ["doc_id", "start", "end", "arabic", "french"];
    w.write_record(header).expect("in-memory write");
    for d in docs {
        for e in &d.entities {
            w.write_record([
                d.document.id.as_str(),
                &e.chars.start.to_string(),
                &e.chars.end.to_string(),
                &e.arabic,
                e.french.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

/// Plain-text evaluation report, two decimals per ratio.
pub fn report_text(r: &EvalReport) -> String {
    format!(
        "tp={} fp={} fn={}\nP={:.2} R={:.2} F={:.2}\ntranslation accuracy={:.2} ({}/{})\n",
        r.tp,
        r.fp,
        r.fn_,
        r.precision,
        r.recall,
        r.f_measure,
        r.translation_accuracy,
        r.translation_matches,
        r.tp
    )
}

pub fn report_json(r: &EvalReport) -> Value {
    json!({
        "tp": r.tp,
        "fp": r.fp,
        "fn": r.fn_,
        "precision": r.precision,
        "recall": r.recall,
        "f_measure": r.f_measure,
        "translation_matches": r.translation_matches,
        "translation_accuracy": r.translation_accuracy,
    })
}
