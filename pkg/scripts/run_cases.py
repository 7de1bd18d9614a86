"""Run every reproduction case and print a one-line verdict per case.

    python3 scripts/run_cases.py [--case k6e --case h11] [--json out.json]
"""
import argparse
import json
import sys

from cuthilbert.verify import CASES, paper_verify


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--case", action="append", choices=sorted(CASES), help="run only these cases")
    ap.add_argument("--json", metavar="FILE", help="also write the reports as JSON")
    args = ap.parse_args(argv)

    reports = []
    for name in args.case or list(CASES):
        rep = paper_verify(name)
        reports.append(rep)
        mark = "ok  " if rep.passed else "FAIL"
        print(f"{mark} {name:17s} {rep.elapsed:7.1f}s / {rep.budget_s:g}s  {CASES[name].summary}")
        if not rep.passed:
            print(f"     {rep.error}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
