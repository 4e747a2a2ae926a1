#!/usr/bin/env python3
"""Independent brute-force oracle used to freeze expected values for the C++ tests.

Field elements are integers 0..q-1 read as base-p digit vectors (polynomial basis);
arithmetic is schoolbook polynomial multiplication modulo the modulus. Nothing here
uses discrete logarithms, so it stays independent of the library's log/antilog path.
"""
import itertools, sys
from collections import Counter
from math import gcd


def digits(x, p, m):
    return [(x // p**i) % p for i in range(m)]


def undigits(d, p):
    return sum(c * p**i for i, c in enumerate(d))


class Field:
    def __init__(self, p, m, modulus=None):
        self.p, self.m, self.q = p, m, p**m
        self.modulus = modulus or self.canonical_modulus()
        assert self.is_primitive(self.modulus), "not primitive"
        self.tr = [self.trace(x) for x in range(self.q)]

    def polymulmod(self, a, b, mod):
        p, m = self.p, self.m
        prod = [0] * (2 * m)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * m - 1, m - 1, -1):
            c = prod[d]
            if c:
                for i in range(m + 1):
                    prod[d - m + i] = (prod[d - m + i] - c * mod[i]) % p
        return prod[:m]

    def mul_with(self, x, y, mod):
        return undigits(self.polymulmod(digits(x, self.p, self.m), digits(y, self.p, self.m), mod), self.p)

    def mul(self, x, y):
        return self.mul_with(x, y, self.modulus)

    def pow(self, x, e, mod=None):
        mod = mod or self.modulus
        r, b = 1, x
        while e:
            if e & 1:
                r = self.mul_with(r, b, mod)
            b = self.mul_with(b, b, mod)
            e >>= 1
        return r

    def add(self, x, y):
        p, m = self.p, self.m
        return undigits([(a + b) % p for a, b in zip(digits(x, p, m), digits(y, p, m))], p)

    def neg(self, x):
        p, m = self.p, self.m
        return undigits([(-a) % p for a in digits(x, p, m)], p)

    def smul(self, c, x):
        p, m = self.p, self.m
        return undigits([(c * a) % p for a in digits(x, p, m)], p)

    def trace(self, x):
        s, y = 0, x
        for _ in range(self.m):
            s = self.add(s, y)
            y = self.pow(y, self.p)
        assert s < self.p
        return s

    def is_primitive(self, mod):
        q = self.q
        n = q - 1
        xelem = self.p if self.m > 1 else (-mod[0]) % self.p
        if self.m == 1:
            xelem = (-mod[0]) % self.p
            if xelem == 0:
                return False
        # order of x must be exactly n
        seen = set()
        y = 1
        for _ in range(n):
            seen.add(y)
            y = self.mul_with(y, xelem, mod)
        return len(seen) == n and 0 not in seen

    def canonical_modulus(self, skip=0):
        p, m = self.p, self.m
        for N in range(p**m):
            mod = digits(N, p, m) + [1]
            self.modulus = mod
            if self.is_primitive(mod):
                if skip == 0:
                    return mod
                skip -= 1
        raise RuntimeError


def cyc_canon(hist, p):
    return tuple(hist[i] - hist[p - 1] for i in range(p - 1))


def trace_hist_sum(F, f):
    h = [0] * F.p
    for x in range(F.q):
        h[f(x)] += 1
    return cyc_canon(h, F.p)


def main():
    out = {}
    F = Field(3, 3)
    out['mod33'] = F.modulus
    G = Field(3, 3, Field(3, 3).canonical_modulus(skip=1)) if False else None
    F2 = Field(3, 3)
    F2.modulus = F2.canonical_modulus(skip=1)
    out['mod33_second'] = F2.modulus
    out['mod35'] = Field(3, 5).modulus
    out['mod73'] = Field(7, 3).modulus
    out['mod31'] = Field(3, 1).modulus
    print(out)

    # T0 distribution at (3,3,k=1)
    p, m, q = 3, 3, 27
    d = p + 1
    pw_d = [F.pow(x, d) for x in range(q)]
    sq = [F.mul(x, x) for x in range(q)]
    T0 = {}
    for a in range(q):
        for b in range(q):
            T0[(a, b)] = trace_hist_sum(F, lambda x: F.tr[F.add(F.mul(a, pw_d[x]), F.mul(b, sq[x]))])
    print('T0 dist', sorted(Counter(T0.values()).items()))
    pair = Counter((T0[(a, b)], T0[(F.neg(a), b)]) for a in range(q) for b in range(q))
    print('pair dist', sorted(pair.items()))

    # N1 / N2 appendix counts for k=1 and k=2
    for k in (1, 2):
        d = p**k + 1
        pwd = [F.pow(x, d) for x in range(q)]
        A = Counter(); B = Counter()
        for x in range(q):
            for y in range(q):
                A[(F.add(sq[x], sq[y]), F.add(pwd[x], pwd[y]))] += 1
                B[(F.add(sq[x], sq[y]), F.add(pwd[x], F.neg(pwd[y])))] += 1
        n4 = sum(A[(u, v)] * B[(F.neg(u), F.neg(v))] for (u, v) in A)
        print('k', k, 'N4', n4)
        squares = set(sq[1:])
        bad = []
        for alpha in range(1, q):
            h = F.pow(alpha, d // 2)
            s1 = 0
            for beta in range(1, q):
                n1 = A[(alpha, beta)]
                n2 = B[(F.neg(alpha), F.neg(beta))]
                if beta == h:
                    ok = n1 == p + 1
                elif beta == F.neg(h):
                    ok = n1 == 0
                else:
                    ok = n1 in (0, 2 * (p + 1))
                    if n1 == 2 * (p + 1):
                        s1 += 1
                if not ok:
                    bad.append(('N1', alpha, beta, n1))
                if n2 not in (0, 2, 4):
                    bad.append(('N2', alpha, beta, n2))
            print(' alpha', alpha, 'square' if alpha in squares else 'non-square', '|S1|=', s1,
                  'circle', sum(A[(alpha, v)] for v in range(q)))
        print(' k', k, 'violations', bad[:10], len(bad))


if __name__ == '__main__':
    main()
