"""Oracle-check every H, P and CNOT for a range of N on both backends."""

import argparse
import time

from walkqc.cli import verify_gates


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    print(f"{'N':>2} {'backend':8} {'passed':>7} {'cases':>5} {'seconds':>8}")
    for backend, lo in (("main", 2), ("alt", 4)):
        for n in range(lo, args.max_n + 1):
            t = time.perf_counter()
            r = verify_gates(n, backend)
            dt = time.perf_counter() - t
            print(f"{n:>2} {backend:8} {r['passed']:>3}/{r['total']:<3} {len(r['cnot_cases_fired']):>5} {dt:>8.3f}")


if __name__ == "__main__":
    main()
