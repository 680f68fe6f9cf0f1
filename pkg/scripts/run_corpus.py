"""Shape table for the standard corpus, then every verification suite."""
import argparse
import json
import time

from cdlab.suites import SUITES, lattice_for, run_suite, standard_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=64)
    ap.add_argument("--json", help="write the shape table here")
    args = ap.parse_args()
    table = []
    for s in standard_corpus(args.max_order):
        L = lattice_for(s)
        sh = L.shape()
        table.append({"group": s.label, "order": str(s.order), "members": len(L),
                      "m_star": str(L.m_star.value), "shape": sh.label(), "fast": L.is_fast})
        print(f"{s.label:45s} {len(L):4d} members  {sh.label()}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(table, fh, indent=2)
    failed = False
    for name in SUITES:
        t0 = time.perf_counter()
        res = run_suite(name, args.max_order)
        print(f"{res.summary():40s} {time.perf_counter() - t0:6.1f}s")
        for label, _, detail in res.failures:
            print(f"   FAIL {label} {detail}")
        failed |= not res.passed
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
