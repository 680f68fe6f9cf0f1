"""Search the catalog for nonabelian H with CD(H) = {H, Z(H)} and report CD(H x H).

Such H give the width-2 quasi-antichain {Z x Z, Z x H, H x Z, H x H} with no
abelian atoms.
"""
import argparse
import time

from cdlab.cd import cd_lattice
from cdlab.constructions import catalog, spec
from cdlab.subgroups import center, is_abelian, whole


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=128)
    ap.add_argument("--product-cap", type=int, default=4096, help="skip H x H above this order")
    args = ap.parse_args()
    hits = []
    for s in catalog(args.max_order):
        G = s.build()
        if is_abelian(whole(G)):
            continue
        L = cd_lattice(G)
        if len(L) == 2 and L.members[L.top] == whole(G) and L.members[L.bottom] == center(G):
            hits.append(s)
    print(f"{len(hits)} groups with CD(H) = {{H, Z(H)}}:")
    for s in hits:
        line = f"  {s.label:40s} |H| = {s.order}"
        if s.order**2 <= args.product_cap:
            t0 = time.perf_counter()
            P = cd_lattice(spec("direct_product", s, s).build(cap=args.product_cap))
            sh = P.shape()
            line += f"   CD(H x H): {sh.label()} orders {P.orders()} ({time.perf_counter() - t0:.2f}s)"
        print(line)


if __name__ == "__main__":
    main()
