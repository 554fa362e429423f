"""Brute-force reference computations that only read the raw multiplication table.

Nothing here calls into the package beyond ``G.table``; these are the
independent side of every cross-check.
"""

from itertools import combinations
from math import log2


def rows(G):
    return G.table.tolist()


def naive_power(t, x, k):
    y = 0
    for _ in range(k):
        y = t[y][x]
    return y


def naive_order(t, x):
    y, k = x, 1
    while y != 0:
        y = t[y][x]
        k += 1
    return k


def naive_inverse(t, x):
    return next(y for y in range(len(t)) if t[x][y] == 0)


def naive_non_powers(G, k):
    t = rows(G)
    image = {naive_power(t, x, k) for x in range(len(t))}
    return set(range(len(t))) - image


def naive_roots(G, k):
    t = rows(G)
    counts = {}
    for y in range(len(t)):
        x = naive_power(t, y, k)
        counts[x] = counts.get(x, 0) + 1
    return counts


def naive_classes(G):
    t = rows(G)
    n = len(t)
    inv = [naive_inverse(t, g) for g in range(n)]
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        cls = {t[t[inv[g]][x]][g] for g in range(n)}
        seen |= cls
        out.append(cls)
    return out


def naive_centralizer(G, x):
    t = rows(G)
    return {g for g in range(len(t)) if t[g][x] == t[x][g]}


def naive_closure(t, gens):
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = t[a][g]
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(members)


def subgroups_by_generating_sets(G):
    """Every subgroup, as closures of all element subsets of size <= floor(log2 |G|).

    Complete because each strictly growing chain <g1> < <g1,g2> < ... at least
    doubles the order, so any subgroup has a generating set that small.
    """
    t = rows(G)
    n = len(t)
    depth = int(log2(n)) if n > 1 else 0
    found = {frozenset({0})}
    for r in range(1, depth + 1):
        for gens in combinations(range(1, n), r):
            found.add(naive_closure(t, gens))
    return found


def subgroups_exhaustive(G):
    """Every subset containing the identity that is closed under products. 2^(n-1) subsets."""
    t = rows(G)
    n = len(t)
    found = set()
    for mask in range(1 << (n - 1)):
        s = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1]
        ss = set(s)
        if all(t[a][b] in ss for a in s for b in s):
            found.add(frozenset(ss))
    return found


def naive_is_normal(G, members):
    t = rows(G)
    n = len(t)
    inv = [naive_inverse(t, g) for g in range(n)]
    return all(t[t[inv[g]][h]][g] in members for g in range(n) for h in members)


def violating_triples(t):
    n = len(t)
    return {(a, b, c) for a in range(n) for b in range(n) for c in range(n) if t[t[a][b]][c] != t[a][t[b][c]]}
