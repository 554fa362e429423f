"""k-th power maps: images, non-powers, root counts, and class profiles of N_p(G)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidParameters, NoSuchPrime, NotPrime
from .group import FiniteGroup, Subgroup, class_index, conjugacy_classes
from .ntheory import is_prime, p_part, prime_factors


@dataclass(frozen=True)
class PowerAnalysis:
    k: int
    power_image: frozenset[int]
    non_powers: frozenset[int]
    n_k: int
    theta: Mapping[int, int]  # x in the image -> number of k-th roots of x

    def theta_histogram(self) -> dict[int, int]:
        """multiplicity -> how many image elements have that many roots"""
        return dict(sorted(Counter(self.theta.values()).items()))


@dataclass(frozen=True)
class ProfileClass:
    representative: int
    size: int
    element_order: int


@dataclass(frozen=True)
class NonPowerProfile:
    p: int
    n_p: int
    classes: tuple[ProfileClass, ...]

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(c.element_order for c in self.classes)

    @property
    def length(self) -> int:
        return len(self.classes)


def power_map(G: FiniteGroup, k: int) -> np.ndarray:
    """Array whose entry x is x^k, by vectorized square-and-multiply."""
    if k < 0:
        raise InvalidParameters(f"k must be non-negative, got {k}")
    t = G.table
    result = np.zeros(G.order, dtype=np.intp)
    base = np.arange(G.order)
    while k:
        if k & 1:
            result = t[result, base]
        k >>= 1
        if k:
            base = t[base, base]
    return result


def image_mask(G: FiniteGroup, k: int) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[power_map(G, k)] = True
    return mask


def count_non_powers(G: FiniteGroup, k: int) -> int:
    return G.order - int(image_mask(G, k).sum())


def analyze_powers(G: FiniteGroup, k: int) -> PowerAnalysis:
    if k < 1:
        raise InvalidParameters(f"k must be positive, got {k}")
    counts = np.bincount(power_map(G, k), minlength=G.order)
    image = np.flatnonzero(counts)
    non = np.flatnonzero(counts == 0)
    theta = {int(x): int(counts[x]) for x in image}
    return PowerAnalysis(k, frozenset(image.tolist()), frozenset(non.tolist()), len(non), theta)


def analyze_powers_in_subgroup(G: FiniteGroup, H: Subgroup, k: int) -> PowerAnalysis:
    """Power analysis of H as a group of its own, reported in G's element indices."""
    if k < 1:
        raise InvalidParameters(f"k must be positive, got {k}")
    roots = power_map(G, k)[H.array]
    counts = Counter(roots.tolist())
    image = frozenset(counts)
    non = H.member_set - image
    return PowerAnalysis(k, image, frozenset(non), len(non), dict(sorted(counts.items())))


def subgroup_non_powers(pmap: np.ndarray, H: Subgroup) -> np.ndarray:
    """Mask over G of N_k(H), given the k-th power map of G."""
    inside = H.mask.copy()
    inside[pmap[H.array]] = False
    return inside


def cyclic_subgroup_key(G: FiniteGroup, x: int) -> frozenset[int]:
    t = G.table
    members = {0}
    y = x
    while y != 0:
        members.add(y)
        y = int(t[y, x])
    return frozenset(members)


def generator_partition(G: FiniteGroup, S: Iterable[int]) -> list[frozenset[int]]:
    """Split S into blocks of elements generating the same cyclic subgroup.

    Blocks come out ordered by their least element.
    """
    blocks: dict[frozenset[int], set[int]] = {}
    for x in sorted(set(int(v) for v in S)):
        blocks.setdefault(cyclic_subgroup_key(G, x), set()).add(x)
    return [frozenset(b) for b in blocks.values()]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(p)


def non_power_profile(G: FiniteGroup, p: int) -> NonPowerProfile:
    """Conjugacy classes making up N_p(G), sorted by element order, then size, then representative."""
    _require_prime(p)
    image = image_mask(G, p)
    chosen = []
    for c in conjugacy_classes(G):
        if not image[c.representative]:
            chosen.append(ProfileClass(c.representative, c.size, c.element_order))
    chosen.sort(key=lambda c: (c.element_order, c.size, c.representative))
    return NonPowerProfile(p, G.order - int(image.sum()), tuple(chosen))


def non_powers_are_class_closed(G: FiniteGroup, k: int) -> bool:
    image = image_mask(G, k)
    idx = class_index(G)
    per_class = np.zeros(idx.max() + 1, dtype=np.int64)
    np.add.at(per_class, idx, image.astype(np.int64))
    sizes = np.bincount(idx)
    return bool(np.all((per_class == 0) | (per_class == sizes)))


def p_singular_data(G: FiniteGroup, p: int) -> tuple[frozenset[int], frozenset[int]]:
    """(Y, X): orders of p-singular elements, and their parts prime to p."""
    _require_prime(p)
    Y = frozenset(int(o) for o in set(G.element_orders.tolist()) if o % p == 0)
    X = frozenset(o // p_part(o, p) for o in Y)
    return Y, X


def exponent(G: FiniteGroup) -> int:
    return lcm(*(int(o) for o in set(G.element_orders.tolist())))


def reduce_k_to_prime(G: FiniteGroup, k: int) -> int:
    """Smallest prime p dividing k with 0 < n_p(G) <= n_k(G)."""
    n_k = count_non_powers(G, k)
    if n_k == 0:
        raise InvalidParameters(f"n_{k}(G) = 0; nothing to reduce")
    for p in prime_factors(k):
        if 0 < count_non_powers(G, p) <= n_k:
            return p
    raise NoSuchPrime(f"no prime p | {k} with 0 < n_p <= n_k = {n_k} in {G.label}")


def reduced_exponent(G: FiniteGroup, k: int) -> int:
    """gcd(k, exp G); G^k equals G^d for this d."""
    return gcd(k, exponent(G))


def analysis_report(G: FiniteGroup, analysis: PowerAnalysis, profile: NonPowerProfile | None = None) -> dict:
    report = {
        "group_label": G.label,
        "order": G.order,
        "k_or_p": analysis.k,
        "n_k": analysis.n_k,
        "theta_histogram": {str(m): c for m, c in analysis.theta_histogram().items()},
        "type": list(profile.type) if profile else [],
        "length": profile.length if profile else 0,
    }
    if profile:
        report["classes"] = [
            {"representative": c.representative, "size": c.size, "element_order": c.element_order}
            for c in profile.classes
        ]
    return report
