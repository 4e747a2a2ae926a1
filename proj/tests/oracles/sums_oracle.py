#!/usr/bin/env python3
"""Brute-force T(a,b) and S(a,b,c) value distributions at (3,3); c ranges over one element per trace value."""
from collections import Counter
from bruteforce import Field, cyc_canon


def main():
    F = Field(3, 3)
    q, p = F.q, F.p
    s = (q - 1) // 2
    for e in (7, 8):
        pe = [F.pow(x, e) for x in range(q)]
        ps = [F.pow(x, s) if x else 0 for x in range(q)]
        omega = {}
        for c in range(q):
            omega.setdefault(F.tr[c], c)
        T = Counter(); S = Counter()
        for a in range(q):
            for b in range(q):
                h = [0] * p
                for x in range(q):
                    h[F.tr[F.add(F.mul(a, x), F.mul(b, pe[x]))]] += 1
                T[cyc_canon(h, p)] += 1
                for t in range(p):
                    c = omega[t]
                    h = [0] * p
                    for x in range(q):
                        v = F.add(F.add(F.mul(a, x), F.mul(b, pe[x])), F.mul(c, ps[x]))
                        h[F.tr[v]] += 1
                    S[cyc_canon(h, p)] += 1
        print('e', e, 'T', sorted(T.items()))
        print('e', e, 'S', sorted(S.items()))


main()
