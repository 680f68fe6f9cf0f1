"""Find CD intervals [L, H] with [HH*, HH*] <= L cap L* whose quotient H/L has
exponent divisible by p^2, and check the omega/agemo correspondence on them."""
import argparse

from cdlab.cd import agemo_subgroup, cd_lattice, omega_hypothesis, omega_subgroup, quotient_exponent
from cdlab.constructions import catalog
from cdlab.gfp import prime_factors


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=64)
    args = ap.parse_args()
    total = 0
    for s in catalog(args.max_order):
        G = s.build()
        L = cd_lattice(G)
        for lo in range(len(L)):
            for hi in range(len(L)):
                if lo == hi or not L.lattice.leq[lo, hi]:
                    continue
                H, Lo = L.members[hi], L.members[lo]
                exp = quotient_exponent(G, H, Lo)
                primes = [p for p in prime_factors(H.order // Lo.order) if exp % (p * p) == 0]
                if not primes or not omega_hypothesis(L, lo, hi):
                    continue
                for p in primes:
                    A, B = omega_subgroup(L, lo, hi, 1, p), agemo_subgroup(L, lo, hi, 1, p)
                    Bs = agemo_subgroup(L, L.duality[hi], L.duality[lo], 1, p)
                    ok = (L.contains(A) and L.contains(B) and L.members[L.duality[L.index(A)]] == Bs
                          and (A.order // Lo.order) * B.order == H.order)
                    total += 1
                    print(f"{s.label:30s} [{lo:2d},{hi:2d}] |H/L| = {H.order // Lo.order:4d} "
                          f"exp = {exp} p = {p}  A_1 = {A.order} B_1 = {B.order}  {'ok' if ok else 'FAIL'}")
    print(f"{total} instances")


if __name__ == "__main__":
    main()
