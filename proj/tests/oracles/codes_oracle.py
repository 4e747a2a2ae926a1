#!/usr/bin/env python3
"""Brute-force weight distributions and dual distances at (p, m) = (3, 3), polynomial-basis arithmetic."""
import itertools
from collections import Counter
from bruteforce import Field


def code_columns(F, exps):
    n = F.q - 1
    pi = F.p if F.m > 1 else (-F.modulus[0]) % F.p
    pows = [1]
    for _ in range(n - 1):
        pows.append(F.mul(pows[-1], pi))
    return [[pows[(j * e) % n] for e in exps] for j in range(n)]


def weight_dist(F, exps):
    cols = code_columns(F, exps)
    dist = Counter()
    for msg in itertools.product(range(F.q), repeat=len(exps)):
        w = 0
        for col in cols:
            s = 0
            for a, x in zip(msg, col):
                s += F.tr[F.mul(a, x)]
            if s % F.p:
                w += 1
        dist[w] += 1
    return dict(sorted(dist.items()))


def dual_distance(F, exps, bound=5):
    cols = code_columns(F, exps)
    n = len(cols)
    p = F.p
    def comb(cs, js):
        acc = [0] * len(exps)
        for c, j in zip(cs, js):
            acc = [F.add(a, F.smul(c, x)) for a, x in zip(acc, cols[j])]
        return tuple(acc)
    zero = tuple([0] * len(exps))
    for w in range(1, bound + 1):
        if w <= 3:
            for js in itertools.combinations(range(n), w):
                for cs in itertools.product(range(1, p), repeat=w - 1):
                    if comb((1,) + cs, js) == zero:
                        return w
        else:
            # pairs/triples table (meet in the middle) to keep python tractable
            half = w // 2
            table = {}
            for js in itertools.combinations(range(n), half):
                for cs in itertools.product(range(1, p), repeat=half):
                    table.setdefault(comb(cs, js), []).append(js)
            for js in itertools.combinations(range(n), w - half):
                for cs in itertools.product(range(1, p), repeat=w - half - 1):
                    s = comb((1,) + cs, js)
                    neg = tuple(F.neg(x) for x in s)
                    for other in table.get(neg, []):
                        if not set(other) & set(js):
                            return w
    return None


if __name__ == '__main__':
    F = Field(3, 3)
    for exps in [(1,), (1, 7), (1, 8), (1, 4), (1, 10), (1, 7, 13), (1, 8, 13), (1, 20, 13)]:
        print(exps, weight_dist(F, exps))
    for exps in [(1,), (1, 8), (1, 8, 13), (1, 20, 13)]:
        print('dual', exps, dual_distance(F, exps))
