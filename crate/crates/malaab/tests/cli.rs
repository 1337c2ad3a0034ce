//! The `malaab` binary end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn resources() -> PathBuf {
    root().join("crates/core/resources")
}

fn malaab(args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_malaab"));
    c.args(args).env_remove("MALAAB_BUNDLE");
    c
}

fn run(args: &[&str]) -> Output {
    malaab(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn compile_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.bundle");
    let b = dir.path().join("b.bundle");
    let o = run(&["compile", "--out", s(&a)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dic = resources().join("ar.dic");
    let o = run(&["compile", "--dict-ar", s(&dic), "--out", s(&b)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn unknown_paradigm_is_named() {
    let dir = TempDir::new().unwrap();
    let mut dic = std::fs::read_to_string(resources().join("ar.dic")).unwrap();
    dic.push_str("ملعبون,N+LieuSport+FLX=NOPE+FR=stade\n");
    let dic = write(&dir, "ar.dic", &dic);
    let out = dir.path().join("x.bundle");
    let o = run(&["compile", "--dict-ar", s(&dic), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NOPE"), "{}", stderr(&o));
    assert!(!out.exists(), "no partial output");
}

#[test]
fn dangling_french_link_is_reported() {
    let dir = TempDir::new().unwrap();
    let mut dic = std::fs::read_to_string(resources().join("ar.dic")).unwrap();
    dic.push_str("ملاعيب,N+LieuSport+FR=stadium\n");
    let dic = write(&dir, "ar.dic", &dic);
    let o = run(&[
        "compile",
        "--dict-ar",
        s(&dic),
        "--out",
        s(&dir.path().join("x")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("missing French entry `stadium`"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn tag_renders_xml() {
    let o = run(&["tag", s(&root().join("corpus/docs/two_venues.txt"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let xml = stdout(&o);
    assert!(xml.contains(
        "<SportVenue>استاد الملك فهد الدولي بالرياض = stade international roi Fahd de Ryadh</SportVenue>"
    ));
    assert!(xml.contains("<Pragmonym>تشرين = Tchrine</Pragmonym>"));
}

#[test]
fn tag_reads_stdin_and_writes_out() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.tsv");
    let mut child = malaab(&["tag", "--format", "tsv", "--out", s(&out), "-"])
        .stdin(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all("في ملعب صفاقس".as_bytes())
        .unwrap();
    assert_eq!(child.wait().unwrap().code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        text,
        "doc_id\tstart\tend\tarabic\tfrench\nstdin\t3\t13\tملعب صفاقس\tstade de Sfax\n"
    );
}

#[test]
fn empty_file_gives_empty_output() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.txt", "");
    for format in ["xml", "json", "concordance", "tsv"] {
        let o = run(&["tag", "--format", format, s(&empty)]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "", "{format}");
    }
}

#[test]
fn concordance_has_one_row_per_entity() {
    let o = run(&[
        "tag",
        "--format",
        "concordance",
        s(&root().join("corpus/docs/venue_list.txt")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("doc_id\tbefore\tsequence\tafter"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 18);
    assert!(rows
        .iter()
        .all(|r| r.starts_with("venue_list\t") && r.split('\t').count() == 4));
}

#[test]
fn json_lines_are_valid_json() {
    let o = run(&["tag", "--format", "json", s(&root().join("corpus/docs"))]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["entities"].as_array().is_some_and(|e| !e.is_empty()));
    }
}

#[test]
fn eval_reports_text_and_json() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let gold = root().join("corpus/gold.tsv");
    let docs = root().join("corpus/docs");
    let o = run(&["eval", "--gold", s(&gold), "--out", s(&report), s(&docs)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "tp=40 fp=0 fn=0\nP=1.00 R=1.00 F=1.00\ntranslation accuracy=0.95 (38/40)\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["tp"], 40);
    assert_eq!(json["translation_matches"], 38);

    let o = run(&["eval", "--gold", s(&gold), s(&docs)]);
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(last).unwrap(),
        json
    );
}

#[test]
fn eval_rejects_bad_gold() {
    let dir = TempDir::new().unwrap();
    let docs = root().join("corpus/docs");
    let o = run(&["eval", "--gold", s(&dir.path().join("none.tsv")), s(&docs)]);
    assert_eq!(o.status.code(), Some(3));
    let wrong = write(
        &dir,
        "gold.tsv",
        "doc_id\tstart\tend\tarabic\tfrench\ntwo_venues\t0\t4\tملعب\tstade\n",
    );
    let o = run(&["eval", "--gold", s(&wrong), s(&docs)]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(
        run(&["tag", "--format", "yaml", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["compile"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["tag", "/nonexistent/doc.txt"]).status.code(), Some(3));
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.bundle", "not a bundle");
    let doc = root().join("corpus/docs/two_venues.txt");
    let o = run(&["tag", "--bundle", s(&junk), s(&doc)]);
    assert_eq!(o.status.code(), Some(2));
    let dic = resources().join("ar.dic");
    let o = run(&["tag", "--bundle", s(&junk), "--dict-ar", s(&dic), s(&doc)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bundle_from_environment() {
    let dir = TempDir::new().unwrap();
    let bundle = dir.path().join("env.bundle");
    let o = malaab(&["compile"])
        .env("MALAAB_BUNDLE", &bundle)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = root().join("corpus/docs/two_venues.txt");
    let with_env = malaab(&["tag", s(&doc)])
        .env("MALAAB_BUNDLE", &bundle)
        .output()
        .unwrap();
    assert_eq!(with_env.status.code(), Some(0));
    assert_eq!(stdout(&with_env), stdout(&run(&["tag", s(&doc)])));
    std::fs::write(&bundle, b"garbage").unwrap();
    let broken = malaab(&["tag", s(&doc)])
        .env("MALAAB_BUNDLE", &bundle)
        .output()
        .unwrap();
    assert_eq!(broken.status.code(), Some(2));
}
