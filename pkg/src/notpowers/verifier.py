"""One executable check per lemma/theorem, and the corpus runner.

A check returns a :class:`CheckResult`; it never raises on a mathematical
failure. Inequalities with fractions are compared by integer cross-multiplication.
"""

from __future__ import annotations

import enum
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import CapExceeded, NoSuchPrime
from .group import (
    DEFAULT_LATTICE_CAP,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    is_cyclic,
    is_cyclic_of_order_4,
    is_normal,
    normal_subgroups,
    quotient,
)
from .ntheory import divisors, is_prime, p_adic_valuation, prime_factors
from .powers import (
    count_non_powers,
    exponent,
    image_mask,
    non_power_profile,
    p_singular_data,
    power_map,
    reduce_k_to_prime,
    subgroup_non_powers,
)
from .structure import (
    Case,
    central_involution_quotient_check,
    classify_new_jumps,
    is_theoremB_exception,
    non_powers_are_kernel,
    p_residual,
    sylow_subgroup,
)

log = logging.getLogger(__name__)


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"
    NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    group_label: str
    param: int | None
    status: Status
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "group_label": self.group_label,
            "param": self.param,
            "status": self.status.value,
            "witness": self.witness,
        }


def _result(check_id, G, param, ok, witness=None) -> CheckResult:
    return CheckResult(check_id, G.label, param, Status.PASS if ok else Status.FAIL, witness or {})


def _na(check_id, G, param, why: str) -> CheckResult:
    return CheckResult(check_id, G.label, param, Status.NOT_APPLICABLE, {"reason": why})


def _skipped(check_id, G, param, exc: Exception) -> CheckResult:
    return CheckResult(check_id, G.label, param, Status.SKIPPED, {"reason": str(exc)})


# ---------------------------------------------------------------- lemma checks


def check_divisible(G: FiniteGroup, p: int, **_) -> CheckResult:
    n = count_non_powers(G, p)
    return _result("divisible", G, p, n % (p - 1) == 0, {"n_p": n, "p_minus_1": p - 1})


def check_subgroup_monotonicity(G: FiniteGroup, p: int, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    try:
        subs = all_subgroups(G, lattice_cap)
    except CapExceeded as exc:
        return _skipped("subgroup_monotonicity", G, p, exc)
    pmap = power_map(G, p)
    nG_mask = ~image_mask(G, p)
    nG = int(nG_mask.sum())
    equal_witnesses = []
    for H in subs:
        nH_mask = subgroup_non_powers(pmap, H)
        nH = int(nH_mask.sum())
        same_set = bool(np.array_equal(nH_mask, nG_mask))
        if nH > nG or (nH == nG) != same_set:
            return _result("subgroup_monotonicity", G, p, False, {
                "subgroup": list(H.members), "n_p_H": nH, "n_p_G": nG, "same_set": same_set,
            })
        if nH == nG and H.order < G.order and len(equal_witnesses) < 3:
            equal_witnesses.append(H.order)
    return _result("subgroup_monotonicity", G, p, True, {
        "n_p_G": nG, "subgroups": len(subs), "proper_equality_orders": equal_witnesses,
    })


def check_sylow_restricts(G: FiniteGroup, p: int, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    try:
        subs = all_subgroups(G, lattice_cap)
    except CapExceeded as exc:
        return _skipped("sylow_restricts", G, p, exc)
    pmap = power_map(G, p)
    nG = count_non_powers(G, p)
    if nG == 0:
        return _na("sylow_restricts", G, p, "n_p(G) = 0")
    residual = p_residual(G, p)
    hits = 0
    for H in subs:
        if H.order == G.order or int(subgroup_non_powers(pmap, H).sum()) != nG:
            continue
        hits += 1
        if not residual.issubset(H):
            return _result("sylow_restricts", G, p, False, {
                "subgroup": list(H.members), "residual": list(residual.members),
            })
    return _result("sylow_restricts", G, p, True, {"residual_order": residual.order, "proper_equal_subgroups": hits})


def check_center_bound(G: FiniteGroup, p: int, **_) -> CheckResult:
    z = center(G).order
    if z % p:
        return _na("center_bound", G, p, "p does not divide |Z(G)|")
    n = count_non_powers(G, p)
    lhs, rhs = G.order * (p - 1), p * n
    witness = {"order": G.order, "n_p": n, "center_order": z}
    if lhs > rhs:
        return _result("center_bound", G, p, False, witness)
    if lhs == rhs:
        S = sylow_subgroup(G, p)
        normal_cyclic = is_normal(G, S) and bool((G.element_orders[S.array] == S.order).any())
        witness["equality"] = True
        witness["sylow_normal_cyclic"] = normal_cyclic
        return _result("center_bound", G, p, normal_cyclic, witness)
    return _result("center_bound", G, p, True, witness)


def check_quotient_ratio(G: FiniteGroup, k: int, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    """n_k(G/N)/|G/N| <= n_k(G)/|G| for every normal N, with the stated equality condition.

    The condition "every coset representative of x^k N is a k-th power" says
    exactly that G^k is a union of N-cosets.
    """
    try:
        normals = normal_subgroups(G, lattice_cap)
    except CapExceeded as exc:
        return _skipped("quotient_ratio", G, k, exc)
    image = image_mask(G, k)
    nG = G.order - int(image.sum())
    image_idx = np.flatnonzero(image)
    equalities = 0
    for N in normals:
        Q, proj = _cached_quotient(G, N)
        nQ = count_non_powers(Q, k)
        lhs, rhs = nQ * G.order, nG * Q.order
        saturated = bool(image[G.table[np.ix_(image_idx, N.array)]].all())
        if lhs > rhs or (lhs == rhs) != saturated:
            return _result("quotient_ratio", G, k, False, {
                "normal_subgroup": list(N.members), "n_k_quotient": nQ, "quotient_order": Q.order,
                "n_k": nG, "condition_holds": saturated,
            })
        equalities += lhs == rhs
    return _result("quotient_ratio", G, k, True, {"normal_subgroups": len(normals), "equalities": equalities})


def _cached_quotient(G: FiniteGroup, N: Subgroup):
    cache = G._cache.setdefault("quotients", {})
    if N.members not in cache:
        cache[N.members] = quotient(G, N)
    return cache[N.members]


def check_pgroup_bound(G: FiniteGroup, p: int, **_) -> CheckResult:
    if G.order == 1 or prime_factors(G.order) != [p]:
        return _na("pgroup_bound", G, p, "not a nontrivial p-group")
    m = p_adic_valuation(G.order, p)
    n = count_non_powers(G, p)
    witness = {"n_p": n, "m": m, "cyclic": is_cyclic(G)}
    if is_cyclic(G):
        return _result("pgroup_bound", G, p, n == p**m - p ** (m - 1), witness)
    return _result("pgroup_bound", G, p, n >= p**m - p ** (m - 2), witness)


def check_propagation(G: FiniteGroup, p: int, **_) -> CheckResult:
    Y, X = p_singular_data(G, p)
    profile = non_power_profile(G, p)
    witness = {"Y": sorted(Y), "X": sorted(X), "length": profile.length}
    if profile.n_p == 0:
        return _result("propagation", G, p, not Y, witness)
    return _result("propagation", G, p, len(X) <= profile.length, witness)


def check_theoremB(G: FiniteGroup, k: int, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    n = count_non_powers(G, k)
    if n == 0:
        return _na("theoremB", G, k, "n_k(G) = 0")
    witness = {"order": G.order, "n_k": n}
    if G.order > n * (n + 1):
        return _result("theoremB", G, k, False, witness)
    if G.order <= n * n:
        return _result("theoremB", G, k, True, witness)
    try:
        exc = is_theoremB_exception(G, k, lattice_cap)
    except CapExceeded as err:
        return _skipped("theoremB", G, k, err)
    witness["frobenius_exception"] = exc
    if exc:
        witness["kernel_order"] = n + 1
    return _result("theoremB", G, k, exc, witness)


def check_k_to_prime(G: FiniteGroup, k: int, **_) -> CheckResult:
    n = count_non_powers(G, k)
    if n == 0:
        return _na("k_to_prime", G, k, "n_k(G) = 0")
    try:
        p = reduce_k_to_prime(G, k)
    except NoSuchPrime:
        return _result("k_to_prime", G, k, False, {"n_k": n, "primes": prime_factors(k)})
    return _result("k_to_prime", G, k, True, {"n_k": n, "p": p, "n_p": count_non_powers(G, p)})


def check_newbound(G: FiniteGroup, _param=None, **_) -> CheckResult:
    """Scan k over 1..exp(G); G^k only depends on k mod exp(G)."""
    attained = [k for k in range(1, exponent(G) + 1) if (n := count_non_powers(G, k)) and n * n == G.order]
    ok = all(is_cyclic_of_order_4(G) and k % 4 == 2 for k in attained)
    return _result("newbound", G, None, ok, {"attaining_k": attained, "order": G.order})


def check_length_bounds(G: FiniteGroup, p: int, **_) -> CheckResult:
    profile = non_power_profile(G, p)
    n, m, order = profile.n_p, profile.length, G.order
    if n == 0:
        return _na("length_bounds", G, p, "n_p(G) = 0")
    witness = {"order": order, "n_p": n, "type": list(profile.type), "length": m}
    ok = True
    if order == n * n:
        ok &= m == 1 or (p == 2 and m == 2)
    if 2 * order > n * n:
        ok &= m <= 2 or (p == 2 and m == 3)
        if p != 2 and order % p == 0:
            ok &= _odd_case_shape(profile.type, p)
    return _result("length_bounds", G, p, ok, witness)


def _odd_case_shape(type_: tuple[int, ...], p: int) -> bool:
    if type_ in ((p,), (p, p)):
        return True
    return len(type_) == 2 and type_[0] == p and type_[1] % p == 0 and is_prime(type_[1] // p)


def check_exponent_bound(G: FiniteGroup, p: int, **_) -> CheckResult:
    k = max(p_adic_valuation(int(o), p) for o in G.element_orders.tolist())
    if k <= 1:
        return _na("exponent_bound", G, p, "no element of order p^2")
    n = count_non_powers(G, p)
    ok = G.order * p ** (k - 2) * (p - 1) <= n * n
    return _result("exponent_bound", G, p, ok, {"order": G.order, "n_p": n, "k": k})


def check_odd_type1(G: FiniteGroup, p: int, **_) -> CheckResult:
    if p == 2 or G.order % p:
        return _na("odd_type1", G, p, "p even or not dividing |G|")
    profile = non_power_profile(G, p)
    if profile.type != (p,):
        return _na("odd_type1", G, p, f"type {list(profile.type)} is not (p)")
    n = profile.n_p
    order = G.order
    equal = order == n * (n + 1)
    return _result("odd_type1", G, p, equal or 3 * order <= n * (n + 1), {
        "order": order, "n_p": n, "branch": "n(n+1)" if equal else "n(n+1)/3",
    })


def check_odd_type2(G: FiniteGroup, p: int, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    if p == 2 or G.order % p:
        return _na("odd_type2", G, p, "p even or not dividing |G|")
    profile = non_power_profile(G, p)
    n, order = profile.n_p, G.order
    if profile.length != 2 or 2 * order <= n * n:
        return _na("odd_type2", G, p, "length != 2 or |G| <= n^2/2")
    witness = {"order": order, "n_p": n, "type": list(profile.type)}
    try:
        if profile.type == (p, p) and 2 * order == n * (n + 1):
            nonpow = frozenset(np.flatnonzero(~image_mask(G, p)).tolist())
            shape = non_powers_are_kernel(G, nonpow, lattice_cap)
            witness["branch"] = "(p,p)"
            witness["shape"] = shape
            return _result("odd_type2", G, p, shape is not None, witness)
        if profile.type == (p, 2 * p) and 2 * order == n * (n + 2):
            w = central_involution_quotient_check(G, p, lattice_cap)
            witness["branch"] = "(p,2p)"
            if w:
                witness["involution"] = w.involution
            return _result("odd_type2", G, p, w is not None, witness)
    except CapExceeded as exc:
        return _skipped("odd_type2", G, p, exc)
    return _result("odd_type2", G, p, False, witness)


def check_new_jumps(G: FiniteGroup, p: int, lattice_cap: int = DEFAULT_LATTICE_CAP) -> CheckResult:
    if p == 2 or G.order % p:
        return _na("new_jumps", G, p, "p even or not dividing |G|")
    try:
        outcome = classify_new_jumps(G, p, lattice_cap)
    except CapExceeded as exc:
        return _skipped("new_jumps", G, p, exc)
    witness = {"case": outcome.case.name, "order": outcome.order, "n_p": outcome.n, **outcome.witness}
    return _result("new_jumps", G, p, outcome.case is not Case.UNCLASSIFIED, witness)


def check_frobenius_solution(G: FiniteGroup, _param=None, **_) -> CheckResult:
    orders = G.element_orders
    for m in divisors(G.order):
        count = int((m % orders == 0).sum())
        if count % m:
            return _result("frobenius_solution", G, None, False, {"m": m, "solutions": count})
    return _result("frobenius_solution", G, None, True, {"divisors_checked": len(divisors(G.order))})


# ---------------------------------------------------------------- registry and runner

PRIME, K_RANGE, K_DIVISORS, NONE = "prime", "k", "k_divisors", "none"

# `--checks all` expands to exactly this list, in this order.
CHECKS: dict[str, tuple[Callable[..., CheckResult], str]] = {
    "divisible": (check_divisible, PRIME),
    "subgroup_monotonicity": (check_subgroup_monotonicity, PRIME),
    "sylow_restricts": (check_sylow_restricts, PRIME),
    "center_bound": (check_center_bound, PRIME),
    "quotient_ratio": (check_quotient_ratio, K_DIVISORS),
    "pgroup_bound": (check_pgroup_bound, PRIME),
    "propagation": (check_propagation, PRIME),
    "theoremB": (check_theoremB, K_RANGE),
    "k_to_prime": (check_k_to_prime, K_RANGE),
    "newbound": (check_newbound, NONE),
    "length_bounds": (check_length_bounds, PRIME),
    "exponent_bound": (check_exponent_bound, PRIME),
    "odd_type1": (check_odd_type1, PRIME),
    "odd_type2": (check_odd_type2, PRIME),
    "new_jumps": (check_new_jumps, PRIME),
    "frobenius_solution": (check_frobenius_solution, NONE),
}
ALL_CHECKS = tuple(CHECKS)

LEMMA_CHECKS = (
    "divisible", "subgroup_monotonicity", "sylow_restricts", "center_bound", "quotient_ratio",
    "pgroup_bound", "propagation", "length_bounds", "exponent_bound", "odd_type1", "odd_type2",
    "frobenius_solution",
)


def params_for(G: FiniteGroup, kind: str) -> list[int | None]:
    if kind == PRIME:
        return list(prime_factors(G.order))
    if kind == K_RANGE:
        return list(range(1, exponent(G) + 1))
    if kind == K_DIVISORS:
        # G^k = G^gcd(k, exp G), so divisors of the exponent cover every k
        return divisors(exponent(G))
    return [None]


def run_group(G: FiniteGroup, checks: Sequence[str], lattice_cap: int = DEFAULT_LATTICE_CAP) -> list[CheckResult]:
    out = []
    for cid in checks:
        fn, kind = CHECKS[cid]
        for param in params_for(G, kind):
            out.append(fn(G, param, lattice_cap=lattice_cap))
    return out


def _run_group_packed(args):
    G, checks, cap = args
    return run_group(G, checks, cap)


@dataclass
class VerificationReport:
    config: dict
    corpus: list[str]
    results: list[CheckResult]
    runtime: float = 0.0

    @property
    def tallies(self) -> dict[str, dict[str, int]]:
        keys = {Status.PASS: "pass", Status.FAIL: "fail", Status.SKIPPED: "skipped", Status.NOT_APPLICABLE: "na"}
        out: dict[str, dict[str, int]] = {}
        for cid in self.config.get("checks", []):
            out[cid] = {"pass": 0, "fail": 0, "skipped": 0, "na": 0}
        for r in self.results:
            out.setdefault(r.check_id, {"pass": 0, "fail": 0, "skipped": 0, "na": 0})[keys[r.status]] += 1
        return out

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status is Status.FAIL]

    @property
    def skipped(self) -> list[CheckResult]:
        return [r for r in self.results if r.status is Status.SKIPPED]

    def coverage(self) -> dict[str, list[str]]:
        """For new_jumps: case name -> 'label@p' entries that landed there."""
        cases: dict[str, list[str]] = {c.name: [] for c in Case}
        for r in self.results:
            if r.check_id == "new_jumps" and r.status in (Status.PASS, Status.FAIL):
                cases[r.witness["case"]].append(f"{r.group_label}@{r.param}")
        return cases

    def to_dict(self, full: bool = False) -> dict:
        """Byte-stable content: no timings. ``full`` lists every result, else only FAIL/SKIPPED."""
        listed = self.results if full else [r for r in self.results if r.status in (Status.FAIL, Status.SKIPPED)]
        return {
            "config": self.config,
            "corpus": self.corpus,
            "results": [r.to_dict() for r in listed],
            "tallies": self.tallies,
            "coverage": {"new_jumps": self.coverage()},
        }


def run_suite(
    corpus: Sequence[FiniteGroup],
    checks: Sequence[str] = ALL_CHECKS,
    *,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    jobs: int = 1,
) -> VerificationReport:
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    start = time.perf_counter()
    tasks = [(G, tuple(checks), lattice_cap) for G in corpus]
    if jobs > 1 and len(tasks) > 1 and checks:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_group = list(pool.map(_run_group_packed, tasks, chunksize=4))
    else:
        per_group = [_run_group_packed(t) for t in tasks]
    results = [r for chunk in per_group for r in chunk]
    config = {"checks": list(checks), "lattice_cap": lattice_cap}
    report = VerificationReport(config, [G.label for G in corpus], results, time.perf_counter() - start)
    log.info("ran %d results over %d groups in %.1fs", len(results), len(corpus), report.runtime)
    return report


def default_jobs() -> int:
    env = os.environ.get("NOTPOWERS_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
