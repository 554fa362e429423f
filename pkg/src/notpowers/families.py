"""Parametric group constructors and the built-in verification corpus.

Family specs have a textual form used for labels and on the command line::

    cyclic:4   abelian:2,6   dihedral:5   dicyclic:3   symmetric:4
    alternating:5   metacyclic_frobenius:7,6   semidirect:7,3,2
    dp:cyclic:2|dihedral:3
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import factorial, gcd

import numpy as np

from .errors import InvalidParameters, ParseError
from .group import (
    FiniteGroup,
    PermutationGenSet,
    _make,
    build_from_permutations,
    conjugacy_classes,
    cyclic_action,
    direct_product,
    semidirect_product,
)
from .ntheory import is_prime, multiplicative_order

FAMILIES = (
    "cyclic", "abelian", "dihedral", "dicyclic", "symmetric", "alternating",
    "metacyclic_frobenius", "direct_product", "semidirect",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    parameters: tuple[int, ...] = ()
    factors: tuple[FamilySpec, ...] = field(default=())

    def __str__(self) -> str:
        if self.family == "direct_product":
            return "dp:" + "|".join(str(f) for f in self.factors)
        return f"{self.family}:" + ",".join(str(v) for v in self.parameters)


def parse_spec(text: str) -> FamilySpec:
    text = text.strip()
    if text.startswith("dp:"):
        parts = text[3:].split("|")
        if len(parts) < 2:
            raise ParseError(f"direct product needs at least two factors: {text!r}")
        return FamilySpec("direct_product", (), tuple(parse_spec(p) for p in parts))
    name, sep, rest = text.partition(":")
    if not sep or name not in FAMILIES or name == "direct_product":
        raise ParseError(f"unknown family spec {text!r}")
    try:
        params = tuple(int(v) for v in rest.split(","))
    except ValueError:
        raise ParseError(f"bad integer parameters in {text!r}") from None
    return FamilySpec(name, params)


def make(spec: FamilySpec | str) -> FiniteGroup:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    label = str(spec)
    ps = spec.parameters
    fam = spec.family
    if fam == "direct_product":
        if len(spec.factors) < 2:
            raise InvalidParameters("direct_product needs at least two factors")
        G = make(spec.factors[0])
        for f in spec.factors[1:]:
            G = direct_product(G, make(f))
        return G.relabeled(label)

    def need(count: int):
        if len(ps) != count or any(v < 1 for v in ps):
            raise InvalidParameters(f"{fam} takes {count} positive integer parameter(s), got {ps}")

    if fam == "cyclic":
        need(1)
        return cyclic(ps[0], label)
    if fam == "abelian":
        if not ps or any(v < 1 for v in ps):
            raise InvalidParameters(f"abelian needs positive invariant factors, got {ps}")
        G = cyclic(ps[0])
        for d in ps[1:]:
            G = direct_product(G, cyclic(d))
        return G.relabeled(label)
    if fam == "dihedral":
        need(1)
        return dihedral(ps[0], label)
    if fam == "dicyclic":
        need(1)
        return dicyclic(ps[0], label)
    if fam == "symmetric":
        need(1)
        return symmetric(ps[0], label)
    if fam == "alternating":
        need(1)
        return alternating(ps[0], label)
    if fam == "metacyclic_frobenius":
        need(2)
        return metacyclic_frobenius(ps[0], ps[1], label)
    if fam == "semidirect":
        need(3)
        return cyclic_semidirect(ps[0], ps[1], ps[2], label)
    raise InvalidParameters(f"unknown family {fam!r}")


def cyclic(n: int, label: str = "") -> FiniteGroup:
    """Z/n with element i the i-th power of the generator 1."""
    if n < 1:
        raise InvalidParameters(f"cyclic order must be positive, got {n}")
    i = np.arange(n)
    return _make((i[:, None] + i[None, :]) % n, label or f"cyclic:{n}")


def dihedral(m: int, label: str = "") -> FiniteGroup:
    """Order 2m: r^i s^j with s r s = r^-1; element r^i s^j has index i + m*j."""
    if m < 1:
        raise InvalidParameters(f"dihedral parameter must be positive, got {m}")
    n = 2 * m
    t = np.empty((n, n), dtype=np.int64)
    i = np.arange(m)[:, None]
    k = np.arange(m)[None, :]
    for j in range(2):
        for l in range(2):
            # s^j r^k = r^{(-1)^j k} s^j
            rot = (i + (k if j == 0 else -k)) % m
            t[j * m:(j + 1) * m, l * m:(l + 1) * m] = rot + m * ((j + l) % 2)
    return _make(t, label or f"dihedral:{m}")


def dicyclic(m: int, label: str = "") -> FiniteGroup:
    """Order 4m: a^{2m} = 1, b^2 = a^m, b^-1 a b = a^-1; element a^i b^j has index i + 2m*j."""
    if m < 1:
        raise InvalidParameters(f"dicyclic parameter must be positive, got {m}")
    N = 2 * m
    n = 2 * N
    t = np.empty((n, n), dtype=np.int64)
    for j in range(2):
        for l in range(2):
            i = np.arange(N)[:, None]
            k = np.arange(N)[None, :]
            # b^j a^k = a^{(-1)^j k} b^j, and b^2 = a^m
            a_exp = i + (k if j == 0 else -k) + (m if j + l == 2 else 0)
            b_exp = (j + l) % 2
            t[j * N:(j + 1) * N, l * N:(l + 1) * N] = a_exp % N + N * b_exp
    return _make(t, label or f"dicyclic:{m}")


def symmetric(n: int, label: str = "") -> FiniteGroup:
    if n < 1:
        raise InvalidParameters(f"symmetric degree must be positive, got {n}")
    gens = []
    if n >= 2:
        gens.append([1, 0] + list(range(2, n)))
        gens.append(list(range(1, n)) + [0])
    return build_from_permutations(PermutationGenSet(n, tuple(gens)), label=label or f"symmetric:{n}")


def alternating(n: int, label: str = "") -> FiniteGroup:
    """Generated by the 3-cycles (0 1 i)."""
    if n < 1:
        raise InvalidParameters(f"alternating degree must be positive, got {n}")
    gens = []
    for i in range(2, n):
        g = list(range(n))
        g[0], g[1], g[i] = 1, i, 0
        gens.append(g)
    return build_from_permutations(PermutationGenSet(n, tuple(gens)), label=label or f"alternating:{n}")


def smallest_unit_of_order(d: int, q: int) -> int:
    for t in range(2, q):
        if gcd(t, q) == 1 and multiplicative_order(t, q) == d:
            return t
    raise InvalidParameters(f"no unit of order {d} modulo {q}")


def cyclic_semidirect(n: int, m: int, t: int, label: str = "") -> FiniteGroup:
    """C_n x| C_m where the generator of C_m acts by x -> t x (written additively)."""
    if gcd(t, n) != 1 or pow(t, m, n) != 1 % n:
        raise InvalidParameters(f"x -> {t}x is not an automorphism of C_{n} of order dividing {m}")
    N, H = cyclic(n), cyclic(m)
    auto = (t * np.arange(n)) % n
    return semidirect_product(N, H, cyclic_action(N, m, auto), label or f"semidirect:{n},{m},{t}")


def metacyclic_frobenius(q: int, d: int, label: str = "") -> FiniteGroup:
    """C_q x| C_d, generator acting as x -> x^t with t the smallest unit of order d mod q."""
    if not is_prime(q) or d <= 1 or (q - 1) % d:
        raise InvalidParameters(f"metacyclic_frobenius needs q prime and 1 < d | q-1, got q={q}, d={d}")
    t = smallest_unit_of_order(d, q)
    return cyclic_semidirect(q, d, t, label or f"metacyclic_frobenius:{q},{d}")


# ---------------------------------------------------------------- corpus


def invariant_factor_lists(n: int) -> list[tuple[int, ...]]:
    """All (d1, ..., dr) with d1 | d2 | ... | dr, d1 > 1, product n. [()] for n = 1."""
    out = []

    def rec(remaining: int, last: int, acc: tuple[int, ...]):
        if remaining == 1:
            out.append(acc)
            return
        for d in range(max(last, 2), remaining + 1, last):
            rest = remaining // d
            if remaining % d == 0 and (rest == 1 or rest % d == 0):
                rec(rest, d, acc + (d,))

    rec(n, 1, ())
    return sorted(out, key=lambda f: (len(f), f))


def fingerprint(G: FiniteGroup) -> tuple:
    """Cheap isomorphism-invariant used to drop duplicate corpus entries."""
    orders = tuple(sorted(Counter(G.element_orders.tolist()).items()))
    sizes = tuple(sorted(Counter(c.size for c in conjugacy_classes(G)).items()))
    return (G.order, orders, sizes)


def base_specs(max_order: int) -> list[FamilySpec]:
    specs: list[FamilySpec] = []
    for n in range(1, max_order + 1):
        specs.append(FamilySpec("cyclic", (n,)))
    for n in range(1, max_order + 1):
        for f in invariant_factor_lists(n):
            if len(f) > 1:
                specs.append(FamilySpec("abelian", f))
    for n in range(1, 6):
        if factorial(n) <= max_order:
            specs.append(FamilySpec("symmetric", (n,)))
        if factorial(n) // 2 <= max_order and n >= 3:
            specs.append(FamilySpec("alternating", (n,)))
    for q in range(3, max_order + 1):
        if is_prime(q):
            for d in range(2, q):
                if (q - 1) % d == 0 and q * d <= max_order:
                    specs.append(FamilySpec("metacyclic_frobenius", (q, d)))
    for m in range(3, max_order // 2 + 1):
        specs.append(FamilySpec("dihedral", (m,)))
    for m in range(2, max_order // 4 + 1):
        specs.append(FamilySpec("dicyclic", (m,)))
    return specs


def builtin_corpus(max_order: int) -> list[FiniteGroup]:
    """Deterministic corpus of groups of order <= max_order.

    Base families first, then pairwise direct products of base groups (both
    factors nontrivial). Duplicates by :func:`fingerprint` are dropped, keeping
    the first; the result is sorted by order, ties in construction order.
    """
    if max_order < 1:
        return []
    base = [(s, make(s)) for s in base_specs(max_order)]
    kept: dict[tuple, FiniteGroup] = {}
    for _, G in base:
        kept.setdefault(fingerprint(G), G)
    nontrivial = [(s, G) for s, G in base if G.order > 1]
    for (s1, G1), (s2, G2) in combinations_with_replacement(nontrivial, 2):
        if G1.order * G2.order > max_order:
            continue
        spec = FamilySpec("direct_product", (), (s1, s2))
        P = direct_product(G1, G2, str(spec))
        kept.setdefault(fingerprint(P), P)
    groups = list(kept.values())
    position = {id(G): i for i, G in enumerate(groups)}
    return sorted(groups, key=lambda G: (G.order, position[id(G)]))
