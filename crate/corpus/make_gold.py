"""Build docs/*.txt and gold.tsv from the [[arabic|french]] markup in annotated/.

Offsets are Unicode code point offsets, end exclusive.
"""
import pathlib
import re

ROOT = pathlib.Path(__file__).resolve().parent
MARK = re.compile(r"\[\[([^|\]]+)\|([^\]]+)\]\]")


def main():
    docs = ROOT / "docs"
    docs.mkdir(exist_ok=True)
    rows = ["doc_id\tstart\tend\tarabic\tfrench"]
    for src in sorted((ROOT / "annotated").glob("*.txt")):
        marked = src.read_text(encoding="utf-8")
        text, pos = [], 0
        for m in MARK.finditer(marked):
            text.append(marked[pos:m.start()])
            start = sum(len(t) for t in text)
            arabic, french = m.group(1), m.group(2)
            text.append(arabic)
            rows.append(f"{src.stem}\t{start}\t{start + len(arabic)}\t{arabic}\t{french}")
            pos = m.end()
        text.append(marked[pos:])
        plain = "".join(text)
        (docs / src.name).write_text(plain, encoding="utf-8")
        for row in rows[1:]:
            doc, s, e, ar, _ = row.split("\t")
            if doc == src.stem:
                assert plain[int(s):int(e)] == ar, row
    (ROOT / "gold.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
