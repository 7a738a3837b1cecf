"""Regenerate src/skat/data/corpus.jsonl.

Provable entries get an explicit proof (from search or a derived-rule
template), refutable ones either a hand-written model or search bounds.
Every entry is checked before it is written.

    python3 scripts/build_corpus.py [--out PATH]
"""
import argparse
from pathlib import Path

from skat import harness as h
from skat import proofsys as ps
from skat import relmodel as rm
from skat.syntax import programs as pr
from skat.syntax import slang as s

OUT = Path(__file__).resolve().parents[1] / "src" / "skat" / "data" / "corpus.jsonl"

PROVABLE = [
    ("b0 |- b0", "identity axiom"),
    ("|- 1", "implication introduction over the zero axiom"),
    ("b0, 0, p0 |- b1", "zero axiom inside a context"),
    ("b0, p0 => b1, p0 |- b1", "modus ponens after weakening"),
    ("!!b0 |- b0", "double negation via test cases"),
    ("b0 |- !!b0", "double negation introduction"),
    ("|- b0 => b0", "implication introduction"),
    ("|- 0 => b0", "ex falso"),
    ("b0 => b1, b0 |- b1", "test modus ponens"),
    ("!b0, b0 |- b1", "contradictory tests"),
    ("b0 ; b1 |- b0", "composition elimination, left"),
    ("b0 ; b1 |- b1", "composition elimination, right"),
    ("(b0 ; p0) => b1, b0, p0 |- b1", "Hoare triple used forwards"),
    ("p0 => p1 => b2 |- p0 ; p1 => b2", "nested box to sequence"),
    ("p0 ; p1 => b0 |- p0 => p1 => b0", "sequence to nested box"),
    ("p0 + p1 => b0 |- p0 => b0", "choice elimination"),
    ("p0^+ => b0 |- p0 => b0", "one step of a closure"),
    ("p0^+ => b0 |- p0^+ => p0^+ => b0", "closure is transitive"),
    ("p0^+ => b0, p0^+, p0^+ |- b0", "closure contraction"),
    ("p0 ; p1 => b0, p0, p1 |- b0", "sequence box used forwards"),
    ("b0, (b1 ; p0 ; b0)^* |- b0", "loop that re-establishes its guard"),
    ("b0 ; (!b0 ; p0 + b0) |- b0", "conditional with a dead branch"),
]

REFUTABLE = [
    ("p0 |- b0", {"W": 2, "valuation": {"p0": [[0, 1]], "b0": []}}, "program gives no test"),
    ("b0 |- b1", None, "unrelated tests"),
    ("|- b0", None, "test need not hold"),
    ("|- 0", None, "falsum"),
    ("b0 |- !b0", None, "test does not imply its negation"),
    ("p0 => b0 |- b0", None, "box does not hold now"),
    ("p0 |- p0 => b0", None, "program does not prove its box"),
    ("b0, p0 |- b0", None, "tests are not preserved by programs"),
    ("(b0 ; p0) => b1 |- p0 => b1", None, "guard cannot be dropped"),
    ("p0 => b0 |- p0^+ => b0", None, "one step does not cover the closure"),
    ("b0 + b1 |- b0", None, "choice does not give the left test"),
    ("b0, p0 => b0 |- p0^* => b0", None, "invariance needs the box inside the loop"),
]


def template_entries():
    out = []
    g = s.parse_term("p0^+ => b0")
    b, p = s.TestVar(1), s.ProgVar(0)
    body = ps.search_proof(s.Sequent((g, s.Seq(b, p)), g))
    pt = ps.hoare_while(g, b, p, body)
    out.append(h.CorpusEntry(pt.conclusion, "provable", pt, note="invariant rule for while b1 do p0"))

    h0 = s.parse_term("(p0 + p1)^+ => b0")
    q = s.ProgVar(1)
    first = ps.search_proof(s.Sequent((h0, p), h0))
    second = ps.search_proof(s.Sequent((h0, q), h0))
    pt = ps.hoare_seq(h0, p, h0, q, h0, first, second)
    out.append(h.CorpusEntry(pt.conclusion, "provable", pt, note="sequential composition of invariance triples"))

    b0 = s.TestVar(0)
    loop = pr.encode_while(pr.While(b0, pr.Action(0)))
    seq = s.Sequent((), s.Imp(s.Seq(b0, loop), s.neg(b0)))
    out.append(h.CorpusEntry(seq, "provable", ps.search_proof(seq),
                             note="while b0 do p0 establishes the negated guard"))
    return out


def build():
    entries = []
    for text, note in PROVABLE:
        seq = s.parse_sequent(text)
        pt = ps.search_proof(seq)
        if pt is None:
            raise SystemExit(f"no proof found for {text}")
        entries.append(h.CorpusEntry(seq, "provable", pt, note=note))
    entries += template_entries()
    for text, model, note in REFUTABLE:
        M = rm.RelModel.from_json(model) if model else None
        bounds = {} if model else {"max_w": 3}
        entries.append(h.CorpusEntry(text, "refutable", model=M, bounds=bounds, note=note))
    return entries


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    entries = build()
    report = h.run_embedding_corpus(entries)
    print(report.summary())
    if not report.ok:
        raise SystemExit("corpus has failing entries; not written")
    h.save_corpus(entries, args.out)
    print(f"wrote {len(entries)} entries to {args.out}")


if __name__ == "__main__":
    main()
