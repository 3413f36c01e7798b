"""Orthogonal certificate families and the size bound they give, next to real network sizes."""
from __future__ import annotations

import argparse

from swnet.certificates import ck_states
from swnet.harness import family_certificates, lower_bound_estimate, partition_certificate, partition_code_family
from swnet.harness import spectrum_dot
from swnet.knowledge import build_savitch_network


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--families", default="2:0,3:0,5:0,3:1,5:1,5:2", help="comma list of p:k")
    args = ap.parse_args()
    nets = {n: build_savitch_network(n) for n in (4, 5, 6)}
    print("family,n,K,M_sq,bound,networks")
    for item in args.families.split(","):
        p, k = map(int, item.split(":"))
        fam, certs = family_certificates(p, k)
        usable = [(f"savitch{n}", net, ck_states(lab)) for n, (net, lab) in nets.items() if n >= fam.n]
        rep = lower_bound_estimate(certs, usable, family=f"p{p}k{k}")
        sizes = " ".join(f"{name}={size}" for name, size, *_ in rep.networks) or "-"
        print(f"p{p}k{k},{fam.n},{rep.K},{rep.M_sq},{rep.bound_floor},{sizes}")
    print()
    print("partition codes: m,d,k,codewords,max |dot|")
    for m, d, k in ((4, 1, 1), (4, 2, 1), (4, 3, 1), (4, 4, 1), (8, 7, 1)):
        certs = [partition_certificate(w1, w2, k) for w1, w2 in partition_code_family(m, d)]
        worst = max((abs(spectrum_dot(a.spectrum, b.spectrum))
                     for i, a in enumerate(certs) for b in certs[i + 1:]), default=0)
        print(f"{m},{d},{k},{len(certs)},{worst}")


if __name__ == "__main__":
    main()
