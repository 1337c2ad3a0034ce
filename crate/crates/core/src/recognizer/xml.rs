//! XML rendering in the typological-model vocabulary: a venue element with
//! its full text, followed by a `<Categories>` element holding its parts.

use alloc::string::String;
use core::fmt::Write;

use super::ComponentTree;
use crate::grammar::Component;

/// Render one tree. Each element's text is `arabic = french` once the tree
/// has been translated, the Arabic alone before that.
pub fn to_xml(tree: &ComponentTree) -> String {
    let mut out = String::new();
    write_node(&mut out, tree, 0);
    out
}

/// Render every tree of a document as `<Examples><Example1>…</Examples>`.
pub fn document_xml(trees: &[ComponentTree]) -> String {
    let mut out = String::from("<Examples>\n");
    for (i, tree) in trees.iter().enumerate() {
        let _ = writeln!(out, "  <Example{}>", i + 1);
        write_node(&mut out, tree, 2);
        let _ = writeln!(out, "  </Example{}>", i + 1);
    }
    out.push_str("</Examples>\n");
    out
}

fn write_node(out: &mut String, node: &ComponentTree, depth: usize) {
    indent(out, depth);
    let name = node.kind.name();
    out.push('<');
    out.push_str(name);
    if let Some(flag) = node.flag {
        // flag names are plain ASCII, safe inside an attribute
        let _ = write!(out, " ambiguity=\"{flag}\"");
    }
    out.push('>');
    escape_into(out, &node.arabic);
    if let Some(fr) = &node.french {
        out.push_str(" = ");
        escape_into(out, fr);
    }
    let _ = writeln!(out, "</{name}>");
    if node.kind == Component::SportVenue && !node.children.is_empty() {
        indent(out, depth);
        out.push_str("<Categories>\n");
        for child in &node.children {
            write_node(out, child, depth + 1);
        }
        indent(out, depth);
        out.push_str("</Categories>\n");
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn escape_into(out: &mut String, text: &str) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
}
