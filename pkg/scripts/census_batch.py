"""Count curves whose sub-leading coefficient has the opposite sign to the leading one.

The input is a user-supplied CSV of curves (label,a1,a2,a3,a4,a6), for example
an export of all curves up to some conductor from a curve database. No such
table ships with the package. Without an input the fixture catalog is used.
"""
import argparse
import collections
import csv
import io

from subleading.cli import batch
from subleading.fixtures import catalog_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", nargs="?")
    parser.add_argument("--tol", type=float, default=1e-6)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    if args.input:
        with open(args.input, newline="") as fh:
            rows = list(csv.DictReader(fh))
    else:
        rows = list(csv.DictReader(io.StringIO(catalog_csv())))
    results = batch(rows, args.tol, args.threads)
    status = collections.Counter(r["status"] for r in results)
    done = [r for r in results if r["status"] != "error"]
    flips = [r for r in done if (float(r["a_r"]) > 0) != (float(r["a_r1"]) > 0)]
    print(f"curves {len(results)}  pass {status['pass']}  fail {status['fail']}  error {status['error']}")
    print(f"sign flips {len(flips)}; smallest conductor with a flip: "
          f"{min((int(r['conductor']) for r in flips), default='-')}")
    small_flip = [r["label"] for r in flips if int(r["conductor"]) <= 125]
    print(f"flips at conductor <= 125: {small_flip or 'none'}")


if __name__ == "__main__":
    main()
