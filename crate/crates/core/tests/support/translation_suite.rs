//! Agreement, elision and linker rules over every shipped French noun, every
//! shipped adjective and every complement form.

use std::collections::BTreeSet;

use malaab_core::evaluation::normalize_french;
use malaab_core::grammar::Component;
use malaab_core::lexicon::{Category, EntryId, Flag, FlagSet, Gender, Lexicon, Number};
use malaab_core::translator::{choose_linker, FrenchFragment, Translator};

#[derive(Debug, Default)]
pub struct TranslationReport {
    pub checks: usize,
    pub violations: Vec<String>,
    /// Every generated `noun adjective` pair.
    pub pairs: BTreeSet<String>,
}

/// French adjective agreement written out from the spelling rules the
/// shipped adjectives follow.
pub fn expected_adjective(masc: &str, gender: Option<Gender>, number: Number) -> String {
    let feminine = gender == Some(Gender::Feminine);
    let plural = number == Number::Plural;
    if feminine {
        let fem = if let Some(stem) = masc.strip_suffix('f') {
            format!("{stem}ve")
        } else if masc.ends_with("ien") {
            format!("{masc}ne")
        } else if masc.ends_with('e') {
            masc.to_string()
        } else {
            format!("{masc}e")
        };
        if plural {
            format!("{fem}s")
        } else {
            fem
        }
    } else if plural {
        if let Some(stem) = masc.strip_suffix("al") {
            format!("{stem}aux")
        } else if masc.ends_with('s') || masc.ends_with('x') {
            masc.to_string()
        } else {
            format!("{masc}s")
        }
    } else {
        masc.to_string()
    }
}

fn starts_with_vowel_sound(s: &str) -> bool {
    s.chars()
        .next()
        .is_some_and(|c| "aeiouyhéèêâîôûAEIOUYHÉÈÊÂÎÔÛ".contains(c))
}

fn fragment(
    lex: &Lexicon,
    id: EntryId,
    surface: &str,
    number: Option<Number>,
    role: Component,
) -> FrenchFragment {
    let e = lex.entry(id);
    FrenchFragment {
        surface: surface.to_string(),
        gender: e.features.gender,
        number,
        flags: e
            .features
            .flags
            .intersection(FlagSet::empty().with(Flag::DETZ).with(Flag::Apostrophe)),
        role,
        entry: Some(id),
    }
}

pub fn run(translator: &Translator<'_>, french: &Lexicon) -> TranslationReport {
    let mut report = TranslationReport::default();
    let ids: Vec<EntryId> = (0..french.entries().len()).map(EntryId).collect();
    let nouns: Vec<EntryId> = ids
        .iter()
        .copied()
        .filter(|&i| {
            let f = &french.entry(i).features;
            f.category == Category::N && !f.has(Flag::PR)
        })
        .collect();
    let adjectives: Vec<EntryId> = ids
        .iter()
        .copied()
        .filter(|&i| french.entry(i).features.category == Category::A)
        .collect();
    // complement contexts: every generated form of every noun, names included
    let mut complements = Vec::new();
    for &i in ids
        .iter()
        .filter(|&&i| french.entry(i).features.category == Category::N)
    {
        for (surface, f) in french.forms(i) {
            let number = f.number.or(french.entry(i).features.number);
            complements.push(fragment(french, i, surface, number, Component::Toponym));
        }
    }
    for &n in &nouns {
        for (head_surface, hf) in french.forms(n) {
            let number = hf.number.unwrap_or(Number::Singular);
            let head = fragment(
                french,
                n,
                head_surface,
                Some(number),
                Component::SportVenueCategory,
            );
            for &a in &adjectives {
                let lemma = &french.entry(a).lemma;
                let adj = fragment(french, a, lemma, None, Component::Adjective);
                report.checks += 1;
                let got = match translator.agree(&adj, &head) {
                    Ok(s) => s,
                    Err(e) => {
                        report
                            .violations
                            .push(format!("{head_surface} + {lemma}: {e}"));
                        continue;
                    }
                };
                let want = expected_adjective(lemma, head.gender, number);
                if got != want {
                    report
                        .violations
                        .push(format!("{head_surface} + {lemma}: got {got}, want {want}"));
                }
                let compatible = french.forms(a).iter().any(|(s, f)| {
                    *s == got
                        && f.gender.is_none_or(|g| Some(g) == head.gender)
                        && f.number.is_none_or(|k| k == number)
                });
                if !compatible {
                    report.violations.push(format!(
                        "{got} is not a {:?} {number:?} form of {lemma}",
                        head.gender
                    ));
                }
                report.pairs.insert(format!("{head_surface} {got}"));

                for c in &complements {
                    report.checks += 1;
                    let linker = choose_linker(&head, c);
                    let phrase = format!("{head_surface} {got} {linker}{}", c.surface);
                    let detz = c.flags.contains(Flag::DETZ);
                    let elidable = c.flags.contains(Flag::Apostrophe);
                    let plural = c.number == Some(Number::Plural);
                    let mut bad = Vec::new();
                    if linker.ends_with('\'') != (elidable && (detz || !plural)) {
                        bad.push("elision");
                    }
                    if linker.ends_with('\'') && !starts_with_vowel_sound(&c.surface) {
                        bad.push("elision before a consonant");
                    }
                    if detz && !matches!(linker, "de " | "d'") {
                        bad.push("article before a name without determiner");
                    }
                    if linker == "du " && !(c.gender == Some(Gender::Masculine) && !plural) {
                        bad.push("du");
                    }
                    if linker == "de la " && !(c.gender == Some(Gender::Feminine) && !plural) {
                        bad.push("de la");
                    }
                    if (linker == "des ") != (plural && !detz) {
                        bad.push("des");
                    }
                    if phrase.contains("de le ") || phrase.contains("de les ") {
                        bad.push("uncontracted article");
                    }
                    if normalize_french(&phrase) != phrase {
                        bad.push("spacing");
                    }
                    let again = choose_linker(&adj, c);
                    if again != linker {
                        bad.push("linker depends on the head");
                    }
                    if !bad.is_empty() {
                        report
                            .violations
                            .push(format!("`{phrase}`: {}", bad.join(", ")));
                    }
                }
            }
        }
    }
    report
}
