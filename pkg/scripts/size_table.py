"""Knowledge sets held by the Savitch construction against the N^(3(k+1)) ceiling."""
from __future__ import annotations

import argparse
import time

from swnet.harness import savitch_size_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=3)
    args = ap.parse_args()
    t = time.perf_counter()
    rows = savitch_size_table(args.k_max, cap=max(3, args.k_max))
    print("k,N,vertices,ceiling,ratio")
    for r in rows:
        print(f"{r.k},{r.N},{r.vertices},{r.ceiling},{r.vertices / r.ceiling:.3g}")
    print(f"# {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
