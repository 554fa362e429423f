"""Sylow subgroups, O^{p'}, Frobenius kernels/complements, and the odd-prime case split."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import NotOddPrime, NotPrime, PrimeDoesNotDivideOrder
from .group import (
    DEFAULT_LATTICE_CAP,
    FiniteGroup,
    Subgroup,
    _closure,
    all_subgroups,
    center,
    centralizer,
    normal_subgroups,
    normalizer,
    quotient,
    subgroup_generated,
)
from .ntheory import is_prime, p_part
from .powers import analyze_powers, count_non_powers, image_mask


def _is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown from a cyclic p-subgroup of maximal order.

    While P is not Sylow, N_G(P)/P has order divisible by p, so some p-element of
    N_G(P) lies outside P and P<g> is a larger p-subgroup.
    """
    if not is_prime(p):
        raise NotPrime(p)
    target = p_part(G.order, p)
    orders = G.element_orders
    p_elements = [x for x in range(G.order) if _is_p_power(int(orders[x]), p)]
    start = max(p_elements, key=lambda x: (int(orders[x]), -x))
    P = subgroup_generated(G, [start])
    gens = [start] if start else []
    while P.order < target:
        N = normalizer(G, P)
        g = next(x for x in N.members if x not in P and _is_p_power(int(orders[x]), p))
        gens.append(g)
        P = Subgroup(G, tuple(_closure(G.table, P.array, gens).tolist()))
    return P


def sylow_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    """All conjugates of one Sylow p-subgroup, by scanning conjugation."""
    P = sylow_subgroup(G, p)
    t = G.table
    seen = {}
    for g in range(G.order):
        conj = tuple(sorted(set(t[t[G.inverse[g], P.array], g].tolist())))
        seen.setdefault(conj, None)
    return [Subgroup(G, m) for m in sorted(seen)]


def p_residual(G: FiniteGroup, p: int) -> Subgroup:
    """O^{p'}(G): the subgroup generated by all elements of p-power order."""
    if not is_prime(p):
        raise NotPrime(p)
    orders = G.element_orders
    return subgroup_generated(G, [x for x in range(G.order) if _is_p_power(int(orders[x]), p)])


# ---------------------------------------------------------------- Frobenius groups


@dataclass(frozen=True)
class FrobeniusStructure:
    kernel: Subgroup
    complement: Subgroup


def centralizers_inside(G: FiniteGroup, K: Subgroup) -> bool:
    """True iff C_G(x) is contained in K for every nonidentity x in K."""
    t = G.table
    outside = ~K.mask
    for x in K.members[1:]:
        if (outside & (t[x, :] == t[:, x])).any():
            return False
    return True


def frobenius_with_kernel(G: FiniteGroup, K: Subgroup, cap: int = DEFAULT_LATTICE_CAP) -> FrobeniusStructure | None:
    """Frobenius structure with the given kernel candidate, if there is one."""
    if not (1 < K.order < G.order) or not K.mask[0]:
        return None
    if K not in normal_subgroups(G, cap):
        return None
    if not centralizers_inside(G, K):
        return None
    h = G.order // K.order
    for H in all_subgroups(G, cap):
        if H.order == h and not (H.mask[1:] & K.mask[1:]).any():
            return FrobeniusStructure(K, H)
    return None


def frobenius_structure(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> FrobeniusStructure | None:
    """Kernel and a complement if G is a Frobenius group, else None.

    Kernel candidates are the proper nontrivial normal subgroups whose
    nonidentity elements have their centralizers inside them; a complement is a
    subgroup of the complementary order meeting the kernel trivially.
    """
    key = ("frobenius", cap)
    if key in G._cache:
        return G._cache[key]
    found = None
    for K in normal_subgroups(G, cap):
        found = frobenius_with_kernel(G, K, cap)
        if found:
            break
    G._cache[key] = found
    return found


def is_frobenius(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    return frobenius_structure(G, cap) is not None


def non_powers_are_kernel(G: FiniteGroup, non_powers: frozenset[int], cap: int = DEFAULT_LATTICE_CAP) -> str | None:
    """How ``non_powers`` sits as the nonidentity part of a Frobenius kernel.

    Returns ``"frobenius"`` for a genuine Frobenius group whose kernel is
    ``non_powers`` plus the identity, ``"degenerate"`` when that set is all of G
    (kernel G, trivial complement; this is how C2 and C3 meet the bounds with
    equality), else None.
    """
    if not non_powers:
        return None
    if len(non_powers) + 1 == G.order:
        return "degenerate"
    fs = frobenius_structure(G, cap)
    if fs is not None and fs.kernel.member_set - {0} == non_powers:
        return "frobenius"
    return None


def is_theoremB_exception(G: FiniteGroup, k: int, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """G is Frobenius with kernel of order n_k + 1 whose nonidentity elements are exactly N_k(G).

    The degenerate kernel G (trivial complement) counts; it only meets
    |G| = n(n+1) for G = C2.
    """
    analysis = analyze_powers(G, k)
    return non_powers_are_kernel(G, analysis.non_powers, cap) is not None


@dataclass(frozen=True)
class CentralQuotientWitness:
    involution: int
    quotient: FiniteGroup = field(repr=False)
    projection: np.ndarray = field(repr=False)
    structure: FrobeniusStructure = field(repr=False)


def central_involution_quotient_check(G: FiniteGroup, p: int, cap: int = DEFAULT_LATTICE_CAP) -> CentralQuotientWitness | None:
    """First central involution z with G/<z> Frobenius of kernel n/2 + 1, complement n/2 (n = n_p(G))."""
    if not is_prime(p) or p == 2:
        raise NotOddPrime(p)
    n = count_non_powers(G, p)
    if n == 0 or n % 2:
        return None
    for z in center(G).members:
        if G.element_orders[z] != 2:
            continue
        Q, proj = quotient(G, Subgroup(G, (0, z)))
        fs = frobenius_structure(Q, cap)
        if fs and fs.kernel.order == n // 2 + 1 and fs.complement.order == n // 2:
            return CentralQuotientWitness(z, Q, proj, fs)
    return None


# ---------------------------------------------------------------- odd-prime classification


class Case(enum.Enum):
    FROBENIUS_N_NPLUS1 = 1  # |G| = n(n+1), Frobenius exception
    CENTRAL_EXT_HALF = 2  # |G| = (n/2)(n+2), central extension by an involution
    FROBENIUS_HALF = 3  # |G| = (n/2)(n+1), Frobenius with kernel N_p u {1}
    GENERIC_BOUND = 4  # |G| <= n^2 / 2
    UNCLASSIFIED = 0  # none of the above verified; contradicts the classification


@dataclass(frozen=True)
class ClassificationOutcome:
    case: Case
    order: int
    n: int
    witness: dict
    # an equality case was chosen while |G| <= n^2/2 also holds
    also_generic_bound: bool = False


def classify_new_jumps(G: FiniteGroup, p: int, cap: int = DEFAULT_LATTICE_CAP) -> ClassificationOutcome:
    """Place (G, p) in the first verified case, equality cases before the bound."""
    if not is_prime(p) or p == 2:
        raise NotOddPrime(p)
    if G.order % p:
        raise PrimeDoesNotDivideOrder(p, G.order)
    order = G.order
    analysis = analyze_powers(G, p)
    n = analysis.n_k
    generic = 2 * order <= n * n

    shape = non_powers_are_kernel(G, analysis.non_powers, cap) if order in (n * (n + 1), n * (n + 1) // 2) else None
    if order == n * (n + 1) and shape:
        return ClassificationOutcome(
            Case.FROBENIUS_N_NPLUS1, order, n,
            {"kernel_order": n + 1, "complement_order": order // (n + 1), "shape": shape}, generic,
        )
    if 2 * order == n * (n + 2):
        w = central_involution_quotient_check(G, p, cap)
        if w:
            return ClassificationOutcome(
                Case.CENTRAL_EXT_HALF, order, n,
                {
                    "involution": w.involution,
                    "quotient_order": w.quotient.order,
                    "kernel_order": w.structure.kernel.order,
                    "complement_order": w.structure.complement.order,
                },
                generic,
            )
    if 2 * order == n * (n + 1) and shape:
        return ClassificationOutcome(
            Case.FROBENIUS_HALF, order, n,
            {"kernel_order": n + 1, "complement_order": order // (n + 1), "shape": shape}, generic,
        )
    if generic:
        return ClassificationOutcome(Case.GENERIC_BOUND, order, n, {"order_times_2": 2 * order, "n_squared": n * n})
    return ClassificationOutcome(Case.UNCLASSIFIED, order, n, {"order": order, "n": n})


def kernel_complement_coprime(fs: FrobeniusStructure) -> bool:
    return gcd(fs.kernel.order, fs.complement.order) == 1
