"""Run the per-rule validity checks and a few unsound control rules.

The controls should all be refuted; the report shows whether the finite
algebras or only the relational samples catch them.

    python3 scripts/run_rule_checks.py [--samples 1000] [--W 3] [--max-size 3]
"""
import argparse

from skat import harness as h

CONTROLS = [
    h.RuleValidityCheck("Wp-right", "c(g) <= c(f) ==> c(g;p) <= c(f)", (("f", "g"),)),
    h.RuleValidityCheck("IImp-mirror", "c(g;p;c(f);d) <= c(h) ==> c(g;p;c(p -> e(c(f)));d) <= c(h)",
                        (("h", "g;p;c(f);d"),)),
    h.RuleValidityCheck("IPlus-weak", f"c(c(h);p) <= c(f) ==> c(c(h);{h.PLUS_P}) <= c(f)",
                        (("f", "c(h);p"),)),
    h.RuleValidityCheck("swap", "c(g;p;q) <= c(f) ==> c(g;q;p) <= c(f)", (("f", "g;p;q"),)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--W", type=int, default=3)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    algebras = h.skat_star_algebras(args.max_size)
    print(f"{len(algebras)} *-continuous SKAT algebras of size <= {args.max_size}")
    reps = h.lemma2_suite(args.samples, args.W, args.seed, args.max_size)
    for r in reps:
        print("  " + r.line())
    print(f"{sum(r.ok for r in reps)}/{len(reps)} rules hold")

    print("controls:")
    for rc in CONTROLS:
        r = h.lemma2_rule_check(rc, algebras, args.samples, args.W, args.seed)
        finite = sum("algebra" in w for w in r.witnesses)
        rel = len(r.witnesses) - finite
        print(f"  {rc.rule:12s} finite witnesses {finite:4d}, relational witnesses {rel:4d}")


if __name__ == "__main__":
    main()
