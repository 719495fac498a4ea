#!/usr/bin/env python3
"""Build one tower family and narrate its floors.

Prints every member with its homogeneity degree, then re-checks the ladder
relations and reports PASS/FAIL per check.  Everything is exact rational
arithmetic; any FAIL here is a real bug, not roundoff.

Example:
    python3 scripts/tower_walkthrough.py --n 3 --q 1 --sign minus --sigma 1
"""

import argparse
import sys

from towercalc.towers import build_tower_pair, verify_family


def describe(form):
    comps = sorted(form.components)
    degree = form.homogeneous_degree()
    return f"degree {degree:>3}, {len(comps)} component(s)"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--q", type=int, default=1, help="family rank (D-line)")
    ap.add_argument("--sign", choices=["plus", "minus"], default="plus")
    ap.add_argument("--sigma", type=int, default=0)
    ap.add_argument("--floors", type=int, default=3)
    args = ap.parse_args()

    sign = 1 if args.sign == "plus" else -1
    fam = build_tower_pair(args.n, args.q, sign, args.sigma, args.floors)
    print(f"family n={args.n} q={args.q} sign={args.sign} sigma={args.sigma}, "
          f"floors 0..{args.floors}")
    for k in range(args.floors + 1):
        d = fam.d_floors[k]
        r = fam.r_floors[k]
        print(f"  floor {k}: {len(d)} D member(s), {len(r)} R member(s)")
        for m, form in enumerate(d, 1):
            print(f"    D[{m}]: {describe(form)}")
        for m, form in enumerate(r, 1):
            print(f"    R[{m}]: {describe(form)}")

    report = verify_family(fam, rebuild=True, independence=True)
    for check in report["checks"]:
        state = "PASS" if check["passed"] else "FAIL"
        line = f"{state} {check['name']}"
        if not check["passed"] and check.get("detail"):
            line += f": {check['detail']}"
        print(line)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
