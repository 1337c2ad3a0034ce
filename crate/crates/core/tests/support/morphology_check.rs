//! Every dictionary stem behind every legal proclitic sequence.

use malaab_core::lexicon::Lexicon;
use malaab_core::morphology::{legal_sequences, segment};

#[derive(Debug, Default)]
pub struct MorphologyReport {
    pub words: usize,
    pub failures: Vec<String>,
}

/// Build `clitics + stem` for every single-word surface of `lexicon` and check
/// that `segment` finds that split and that every split it returns spells the
/// word back.
pub fn run(lexicon: &Lexicon) -> MorphologyReport {
    let mut report = MorphologyReport::default();
    let stems: Vec<&str> = lexicon
        .surfaces()
        .map(|(s, _)| s)
        .filter(|s| !s.contains(' '))
        .collect();
    for stem in stems {
        for seq in legal_sequences() {
            let prefix: String = seq.iter().map(|p| p.as_str()).collect();
            let word = format!("{prefix}{stem}");
            report.words += 1;
            let segs = segment(&word, lexicon);
            if !segs.iter().any(|s| s.stem == stem && s.proclitics == seq) {
                report
                    .failures
                    .push(format!("{word}: no split {seq:?} + {stem}"));
            }
            for s in &segs {
                let back: String = s
                    .proclitics
                    .iter()
                    .map(|p| p.as_str())
                    .chain([s.stem.as_str()])
                    .collect();
                if back != word {
                    report
                        .failures
                        .push(format!("{word}: split spells `{back}`"));
                }
            }
        }
    }
    report
}
