"""Sign threshold of the predicted ratio over a grid of degrees and discriminants."""
import argparse

from subleading.theorem import sign_boundary_log, sign_threshold


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=6)
    parser.add_argument("--discs", type=int, nargs="+", default=[1, 3, 4, 5, 8, 23, 49, 1000])
    args = parser.parse_args()

    for n in range(1, args.max_degree + 1):
        for d in args.discs:
            if n == 1 and d != 1:
                continue
            print(f"n={n} |disc|={d:>5}  log boundary {sign_boundary_log(n, d):10.4f}  threshold {sign_threshold(n, d)}")


if __name__ == "__main__":
    main()
