#!/usr/bin/env python3
"""Survey certificates for bipartite Kneser graphs H(n, r), n - r > r.

Usage: python scripts/kneser_survey.py [--max-n N]
"""

import argparse

from gnorm import certify_family


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=13)
    args = ap.parse_args()

    print(f"{'(n, r)':>8}  {'verdict':<22} {'obstruction':<22} rule")
    for n in range(3, args.max_n + 1):
        for r in range(1, n // 2 + 1):
            if n - r <= r:
                continue
            cert = certify_family("kneser", [n, r])
            print(f"({n:2d},{r:2d})  {cert.verdict:<22} "
                  f"{str(cert.obstruction):<22} {cert.rule}")


if __name__ == "__main__":
    main()
