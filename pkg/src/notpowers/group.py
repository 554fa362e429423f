"""Finite groups as dense Cayley tables.

Elements are the indices ``0..order-1`` and the identity is always 0. Every
structural query (centralizers, classes, subgroups, quotients) is an index loop
over the table, vectorized with numpy where that is straightforward.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ActionNotHomomorphism,
    CapExceeded,
    InvalidParameters,
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotAutomorphism,
    NotClosed,
    NotNormal,
)
from .ntheory import is_prime, prime_factors

DEFAULT_ASSOCIATIVITY_CAP = 512
DEFAULT_CLOSURE_CAP = 5000
DEFAULT_LATTICE_CAP = 200
RANDOM_TRIPLES = 1000

_INDEX = np.int32


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated finite group. Build with :func:`build_from_cayley` and friends."""

    table: np.ndarray
    inverse: np.ndarray
    element_orders: np.ndarray
    label: str = ""
    # memo for derived data (classes, lattice, ...); never changes the group itself
    _cache: dict = field(default_factory=dict, repr=False)

    identity = 0

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def relabeled(self, label: str) -> FiniteGroup:
        return FiniteGroup(self.table, self.inverse, self.element_orders, label)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by descending element order."""
        gens: list[int] = []
        inside = np.zeros(self.order, dtype=bool)
        inside[0] = True
        members = np.array([0])
        for x in sorted(range(self.order), key=lambda y: (-int(self.element_orders[y]), y)):
            if len(members) == self.order:
                break
            if not inside[x]:
                gens.append(x)
                members = _closure(self.table, members, gens)
                inside[members] = True
        return tuple(gens)

    def same_table(self, other: FiniteGroup) -> bool:
        return self.order == other.order and bool(np.array_equal(self.table, other.table))


@dataclass(frozen=True)
class PermutationGenSet:
    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidParameters(f"degree must be positive, got {self.degree}")
        gens = tuple(tuple(int(v) for v in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for i, g in enumerate(gens):
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise InvalidParameters(f"generator {i} is not a permutation of 0..{self.degree - 1}: {g}")


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.member_set

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.intp)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.array] = True
        return m

    def issubset(self, other: Subgroup | Iterable[int]) -> bool:
        other_set = other.member_set if isinstance(other, Subgroup) else set(other)
        return self.member_set <= other_set


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: frozenset[int]
    element_order: int

    @property
    def size(self) -> int:
        return len(self.members)


# ---------------------------------------------------------------- construction


def build_from_cayley(
    table,
    *,
    label: str = "",
    associativity_cap: int = DEFAULT_ASSOCIATIVITY_CAP,
    seed: int = 0,
) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    The identity is moved to index 0 by swapping it with whatever element sat
    there. Error messages cite indices of the table as given.
    """
    try:
        raw = np.asarray(table)
    except ValueError as exc:  # ragged rows
        raise MalformedTable(f"table is not rectangular: {exc}") from None
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] < 1:
        raise MalformedTable(f"expected a non-empty square table, got shape {raw.shape}")
    n = raw.shape[0]
    if raw.dtype.kind not in "iu":
        bad = [(i, j) for i in range(n) for j in range(n) if not _is_int(raw[i, j])]
        if bad:
            i, j = bad[0]
            raise NotClosed(i, j, raw[i, j])
        raw = raw.astype(np.int64)
    out = np.argwhere((raw < 0) | (raw >= n))
    if len(out):
        i, j = (int(v) for v in out[0])
        raise NotClosed(i, j, int(raw[i, j]))
    t = raw.astype(_INDEX)

    ar = np.arange(n)
    ids = np.flatnonzero(np.all(t == ar, axis=1) & np.all(t.T == ar, axis=1))
    if len(ids) == 0:
        raise NoIdentity()
    e = int(ids[0])

    hits = (t == e) & (t.T == e)
    has_inv = hits.any(axis=1)
    if not has_inv.all():
        raise NoInverse(int(np.flatnonzero(~has_inv)[0]))

    _check_associative(t, associativity_cap, seed)

    if e != 0:
        perm = ar.copy()
        perm[0], perm[e] = e, 0
        # perm is an involution, so it is its own inverse
        t = perm[t[np.ix_(perm, perm)]].astype(_INDEX)
    return _make(t, label)


def _is_int(v) -> bool:
    try:
        return float(v) == int(v)
    except (TypeError, ValueError):
        return False


def _check_associative(t: np.ndarray, cap: int, seed: int) -> None:
    n = t.shape[0]
    if n <= cap:
        for a in range(n):
            lhs = t[t[a]]  # [b, c] -> (ab)c
            rhs = t[a][t]  # [b, c] -> a(bc)
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                b, c = (int(v) for v in bad[0])
                raise NotAssociative(a, b, c)
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, RANDOM_TRIPLES))
        bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
        if len(bad):
            i = bad[0]
            raise NotAssociative(int(a[i]), int(b[i]), int(c[i]))


def _make(t: np.ndarray, label: str) -> FiniteGroup:
    """Wrap a table already known to be a group with identity 0."""
    t = np.ascontiguousarray(t, dtype=_INDEX)
    t.setflags(write=False)
    n = t.shape[0]
    inverse = np.argmax(t == 0, axis=1).astype(_INDEX)
    inverse.setflags(write=False)
    orders = np.zeros(n, dtype=np.int64)
    ar = np.arange(n)
    cur = ar.copy()
    step = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = step
        if orders.all():
            break
        cur = t[cur, ar]
        step += 1
    orders.setflags(write=False)
    return FiniteGroup(t, inverse, orders, label)


def build_from_permutations(
    gens: PermutationGenSet,
    cap: int = DEFAULT_CLOSURE_CAP,
    *,
    label: str = "",
    associativity_cap: int = DEFAULT_ASSOCIATIVITY_CAP,
) -> FiniteGroup:
    """Breadth-first closure of a permutation generating set.

    Products compose left to right: ``(p*q)(i) = q(p(i))``. Element 0 is the
    identity permutation; the rest appear in BFS order.
    """
    ident = tuple(range(gens.degree))
    gen_list = [g for g in gens.generators if g != ident] or []
    elements = [ident]
    index = {ident: 0}
    parent = [(-1, -1)]
    right = [[0] * len(gen_list)]  # right[x][j] = index of x * gen_j
    queue = deque([0])
    while queue:
        x = queue.popleft()
        px = elements[x]
        for j, g in enumerate(gen_list):
            y = tuple(g[v] for v in px)
            yi = index.get(y)
            if yi is None:
                if len(elements) >= cap:
                    raise CapExceeded("permutation group closure", cap)
                yi = len(elements)
                index[y] = yi
                elements.append(y)
                parent.append((x, j))
                right.append([0] * len(gen_list))
                queue.append(yi)
            right[x][j] = yi
    n = len(elements)
    rg = np.array(right, dtype=np.intp).reshape(n, len(gen_list))
    t = np.empty((n, n), dtype=_INDEX)
    t[:, 0] = np.arange(n)
    # column y = column parent(y) followed by right multiplication by its generator
    for y in range(1, n):
        x, j = parent[y]
        t[:, y] = rg[t[:, x], j]
    return build_from_cayley(t, label=label, associativity_cap=associativity_cap)


# ---------------------------------------------------------------- element queries


def power(G: FiniteGroup, x: int, k: int) -> int:
    if k < 0:
        raise InvalidParameters(f"exponent must be non-negative, got {k}")
    t = G.table
    result, base = 0, int(x)
    while k:
        if k & 1:
            result = int(t[result, base])
        base = int(t[base, base])
        k >>= 1
    return result


def center(G: FiniteGroup) -> Subgroup:
    mask = np.all(G.table == G.table.T, axis=1)
    return Subgroup(G, tuple(np.flatnonzero(mask).tolist()))


def centralizer(G: FiniteGroup, x: int) -> Subgroup:
    mask = G.table[x, :] == G.table[:, x]
    return Subgroup(G, tuple(np.flatnonzero(mask).tolist()))


def conjugates(G: FiniteGroup, x: int) -> np.ndarray:
    """g^-1 x g for every g, indexed by g."""
    t = G.table
    return t[t[G.inverse, x], np.arange(G.order)]


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """Classes ordered by their smallest member, which is also the representative."""
    cached = G._cache.get("classes")
    if cached is not None:
        return cached
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        members = np.unique(conjugates(G, x))
        seen[members] = True
        classes.append(ConjugacyClass(x, frozenset(members.tolist()), int(G.element_orders[x])))
    G._cache["classes"] = classes
    return classes


def class_index(G: FiniteGroup) -> np.ndarray:
    """Map element -> position of its class in :func:`conjugacy_classes`."""
    cached = G._cache.get("class_index")
    if cached is None:
        cached = np.empty(G.order, dtype=np.intp)
        for i, c in enumerate(conjugacy_classes(G)):
            cached[list(c.members)] = i
        G._cache["class_index"] = cached
    return cached


# ---------------------------------------------------------------- subgroups


def _closure(t: np.ndarray, base: np.ndarray, gens: Sequence[int]) -> np.ndarray:
    """Subgroup generated by the subgroup ``base`` and ``gens``.

    ``gens`` must generate ``base`` together with the new elements, i.e. pass the
    base subgroup's own generators too. Works coset by coset: the result is a
    union of right cosets ``base * r``.
    """
    n = t.shape[0]
    inside = np.zeros(n, dtype=bool)
    inside[base] = True
    reps = [0]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for g in gens:
            y = int(t[r, g])
            if not inside[y]:
                inside[t[base, y]] = True
                reps.append(y)
    return np.flatnonzero(inside)


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    gens = sorted(set(int(s) for s in S) - {0})
    members = _closure(G.table, np.array([0]), gens)
    return Subgroup(G, tuple(members.tolist()))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def is_subgroup(G: FiniteGroup, S: Iterable[int]) -> bool:
    s = np.asarray(sorted(set(int(v) for v in S)), dtype=np.intp)
    if len(s) == 0 or s[0] != 0:
        return False
    mask = np.zeros(G.order, dtype=bool)
    mask[s] = True
    return bool(mask[G.table[np.ix_(s, s)]].all() and mask[G.inverse[s]].all())


def is_normal(G: FiniteGroup, H: Subgroup | Iterable[int]) -> bool:
    members = H.array if isinstance(H, Subgroup) else np.asarray(sorted(set(H)), dtype=np.intp)
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    t = G.table
    for g in G.generators:
        if not mask[t[t[G.inverse[g], members], g]].all():
            return False
    return True


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    mask = H.mask
    t = G.table
    keep = [g for g in range(G.order) if mask[t[t[G.inverse[g], H.array], g]].all()]
    return Subgroup(G, tuple(keep))


def _bits(members: np.ndarray, n: int) -> int:
    mask = np.zeros(n, dtype=np.uint8)
    mask[members] = 1
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    """Every subgroup of G, sorted by (order, members).

    Starts from the trivial group and repeatedly joins each newly found subgroup
    with every cyclic subgroup of prime-power order, until nothing new appears.
    Every subgroup is generated by its prime-power-order elements, so the
    fixpoint is the full lattice.
    """
    if G.order > cap:
        raise CapExceeded(f"subgroup lattice of a group of order {G.order}", cap)
    cached = G._cache.get("lattice")
    if cached is not None:
        return cached
    t = G.table
    n = G.order
    zuppos: list[int] = []
    seen_cyclic: set[int] = set()
    for x in range(1, n):
        o = int(G.element_orders[x])
        if len(prime_factors(o)) != 1:
            continue
        cyc = _closure(t, np.array([0]), [x])
        b = _bits(cyc, n)
        if b not in seen_cyclic:
            seen_cyclic.add(b)
            zuppos.append(x)

    found: dict[int, tuple[np.ndarray, tuple[int, ...]]] = {1: (np.array([0]), ())}
    layer = [1]
    while layer:
        nxt = []
        for b in layer:
            members, gens = found[b]
            done = np.zeros(n, dtype=bool)
            done[members] = True
            for x in zuppos:
                if done[x]:
                    continue
                joined = _closure(t, members, gens + (x,))
                if is_prime(len(joined) // len(members)):
                    # prime index: a cover of H, so every zuppo in it joins to it
                    done[joined] = True
                jb = _bits(joined, n)
                if jb not in found:
                    found[jb] = (joined, gens + (x,))
                    nxt.append(jb)
        layer = nxt
    subs = sorted((tuple(m.tolist()) for m, _ in found.values()), key=lambda m: (len(m), m))
    result = [Subgroup(G, m) for m in subs]
    G._cache["lattice"] = result
    return result


def normal_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    cached = G._cache.get("normal_subgroups")
    if cached is None:
        cached = [H for H in all_subgroups(G, cap) if is_normal(G, H)]
        G._cache["normal_subgroups"] = cached
    return cached


def is_cyclic(G: FiniteGroup) -> bool:
    return bool((G.element_orders == G.order).any())


def is_cyclic_of_order_4(G: FiniteGroup) -> bool:
    return G.order == 4 and is_cyclic(G)


def subgroup_as_group(G: FiniteGroup, H: Subgroup, label: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """H as a group in its own right, plus the embedding (local index -> index in G).

    H's members are sorted and contain 0, so the identity stays at index 0.
    """
    emb = H.array
    local = np.full(G.order, -1, dtype=np.intp)
    local[emb] = np.arange(len(emb))
    sub = local[G.table[np.ix_(emb, emb)]]
    return _make(sub, label or f"{G.label}<{len(emb)}>"), emb


# ---------------------------------------------------------------- quotients and products


def quotient(G: FiniteGroup, N: Subgroup, label: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """G/N on coset indices. Coset 0 is N; cosets are numbered by their least element."""
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.label or 'G'}")
    t = G.table
    proj = np.full(G.order, -1, dtype=np.intp)
    reps = []
    for x in range(G.order):
        if proj[x] < 0:
            proj[t[x, N.array]] = len(reps)
            reps.append(x)
    r = np.asarray(reps, dtype=np.intp)
    qt = proj[t[np.ix_(r, r)]]
    return _make(qt, label or f"{G.label}/{N.order}"), proj


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str = "") -> FiniteGroup:
    """Element (a, b) has index a * |H| + b."""
    m = H.order
    big = G.table.astype(np.int64)[:, None, :, None] * m + H.table.astype(np.int64)[None, :, None, :]
    n = G.order * m
    return _make(big.reshape(n, n), label or f"{G.label}x{H.label}")


def validate_automorphism(N: FiniteGroup, phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.intp)
    if phi.shape != (N.order,) or sorted(phi.tolist()) != list(range(N.order)):
        raise NotAutomorphism(f"not a bijection of 0..{N.order - 1}: {phi.tolist()}")
    bad = np.argwhere(phi[N.table] != N.table[np.ix_(phi, phi)])
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise NotAutomorphism(f"phi({a}*{b}) != phi({a})*phi({b})")
    return phi


def semidirect_product(N: FiniteGroup, H: FiniteGroup, action, label: str = "") -> FiniteGroup:
    """N x| H with ``(a, h)(b, k) = (a * action[h](b), h k)``; index a * |H| + h.

    ``action[h]`` is an automorphism of N given as an index array, one per element
    of H. The action must compose as ``action[h g] = action[h] o action[g]``; this
    is checked for every h against a generating set of H, which forces it
    everywhere.
    """
    m = H.order
    if len(action) != m:
        raise ActionNotHomomorphism(f"need one automorphism per element of H ({m}), got {len(action)}")
    phis = np.stack([validate_automorphism(N, a) for a in action])
    if not np.array_equal(phis[0], np.arange(N.order)):
        raise ActionNotHomomorphism("identity of H does not act trivially")
    for g in H.generators:
        for h in range(m):
            if not np.array_equal(phis[H.table[h, g]], phis[h][phis[g]]):
                raise ActionNotHomomorphism(f"action[{h}*{g}] != action[{h}] o action[{g}]")
    n = N.order
    a = np.arange(n)[:, None, None, None]
    h = np.arange(m)[None, :, None, None]
    b = np.arange(n)[None, None, :, None]
    k = np.arange(m)[None, None, None, :]
    npart = N.table[a, phis[h, b]].astype(np.int64)
    big = npart * m + H.table[h, k]
    return _make(big.reshape(n * m, n * m), label or f"{N.label}:{H.label}")


def cyclic_action(N: FiniteGroup, m: int, auto) -> list[np.ndarray]:
    """Action of C_m (element i = generator^i) where the generator acts by ``auto``."""
    auto = np.asarray(auto, dtype=np.intp)
    acts = [np.arange(N.order)]
    for _ in range(m - 1):
        acts.append(auto[acts[-1]])
    return acts
