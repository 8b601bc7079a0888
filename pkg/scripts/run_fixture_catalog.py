"""Analyze every fixture curve and print a table of the theorem check."""
import argparse
import time

from subleading import analytic_engine as ae
from subleading.fixtures import CATALOG
from subleading.selftest import prepare
from subleading.theorem import FieldInvariants, verify_theorem


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t0", type=float, default=1.0)
    parser.add_argument("--tol", type=float, default=1e-6)
    args = parser.parse_args()

    start = time.perf_counter()
    print(f"{'label':>7} {'N':>5} {'eps':>3} {'r':>2} {'a_r':>16} {'a_r+1':>16} {'rho':>12} {'residual':>9} {'published':>9}")
    for fx in CATALOG:
        p = prepare(fx.label)
        rep = ae.analyze(p.N, p.coeffs, t0=args.t0).report
        v = verify_theorem(rep, FieldInvariants(p.N), args.tol)
        pub = "-" if fx.special_value is None else f"{abs(rep.a_r - fx.special_value):.1e}"
        print(f"{fx.label:>7} {p.N:>5} {p.epsilon:>+3} {rep.r:>2} {rep.a_r:>16.12f} {rep.a_r1:>16.12f} "
              f"{v.rho:>12.8f} {v.abs_residual:>9.1e} {pub:>9}")
    print(f"total {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()
