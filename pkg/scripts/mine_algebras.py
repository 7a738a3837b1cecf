"""Count small algebras per theory level and run the derived-property suite.

Also reports how many mined SKAT algebras are *-continuous and whether any
non-*-continuous one refutes a rule of the calculus (evidence on the plain
SKAT embedding question).

    python3 scripts/mine_algebras.py [--max-size 4] [--jobs 2]
"""
import argparse
import time

from skat.finalg import (
    TheoryLevel, check_quasi, check_star_continuity, derived_property_suite, enumerate_algebras,
)
from skat.harness import RULE_CHECKS

LEVELS = [TheoryLevel.KleeneAlgebra, TheoryLevel.KAT, TheoryLevel.RKAT, TheoryLevel.KAC,
          TheoryLevel.SKAT, TheoryLevel.SKATStar]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    print(f"{'size':>4} " + " ".join(f"{lv.value:>14}" for lv in LEVELS))
    for n in range(1, args.max_size + 1):
        counts = [len(list(enumerate_algebras(n, lv, args.jobs))) for lv in LEVELS]
        print(f"{n:>4} " + " ".join(f"{c:>14}" for c in counts))

    for n in range(1, args.max_size + 1):
        t0 = time.perf_counter()
        skat = list(enumerate_algebras(n, TheoryLevel.SKAT, args.jobs))
        bad = [A for A in skat if not derived_property_suite(A).ok]
        cont = [A for A in skat if check_star_continuity(A).ok]
        plain = [A for A in skat if A not in cont]
        rule_fail = [(rc.rule, i) for i, A in enumerate(plain) for rc in RULE_CHECKS
                     if check_quasi(A, rc.quasi) is not None]
        print(f"size {n}: {len(skat)} SKAT, {len(bad)} fail derived properties, "
              f"{len(cont)} *-continuous, rules refuted by the others: {rule_fail or 'none'} "
              f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
