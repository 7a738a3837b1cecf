"""Print the two built-in counterexamples and their witnesses.

fig2 is a residuated KAT where x -> 0 differs from the test complement;
fig3 is a *-continuous SKAT where c(c(x) -> c(y)) differs from c(x) -> c(y).
The second equation is also checked in the full relational algebra on two
points, since it fails there as well.

    python3 scripts/reproduce_counterexamples.py [--json]
"""
import argparse
import json

from skat.finalg import (
    CLOSURE_EQUATION, TheoryLevel, builtin_fig2, builtin_fig3, check_axioms, check_equation,
    full_relational_algebra,
)


def run():
    out = {}
    A = builtin_fig2()
    rep = check_axioms(A, TheoryLevel.RKAT)
    w = check_equation(A, "x -> 0 = bar(x)", domains={"x": A.B})
    out["fig2"] = {"level": "RKAT", "axioms_ok": rep.ok, "equation": "x -> 0 = bar(x)",
                   "witness": w.describe(A) if w else None}

    A = builtin_fig3()
    rep = check_axioms(A, TheoryLevel.SKATStar)
    w = check_equation(A, CLOSURE_EQUATION)
    out["fig3"] = {"level": "SKATStar", "axioms_ok": rep.ok, "equation": CLOSURE_EQUATION,
                   "witness": w.describe(A) if w else None}

    R = full_relational_algebra(2)
    w = check_equation(R, CLOSURE_EQUATION)
    out["relational_w2"] = {"equation": CLOSURE_EQUATION, "witness": w.describe(R) if w else None}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    out = run()
    if args.json:
        print(json.dumps(out, indent=2))
        return
    for name, r in out.items():
        head = f"{name}: " + (f"{r['level']} axioms {'pass' if r['axioms_ok'] else 'FAIL'}; " if "level" in r else "")
        print(f"{head}{r['equation']}  ->  {r['witness'] or 'holds'}")


if __name__ == "__main__":
    main()
