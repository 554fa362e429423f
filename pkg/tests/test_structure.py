import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from notpowers import errors
from notpowers.families import builtin_corpus, make
from notpowers.group import is_normal, is_subgroup
from notpowers.ntheory import p_part, prime_factors
from notpowers.powers import analyze_powers
from notpowers.structure import (
    Case,
    central_involution_quotient_check,
    classify_new_jumps,
    frobenius_structure,
    is_frobenius,
    is_theoremB_exception,
    kernel_complement_coprime,
    non_powers_are_kernel,
    p_residual,
    sylow_subgroup,
    sylow_subgroups,
)

from oracles import naive_inverse, rows, subgroups_by_generating_sets

CORPUS = builtin_corpus(32)
groups = st.sampled_from(CORPUS)


def malnormal_subgroup_exists(G):
    """Frobenius by definition: a proper nontrivial H with H meets H^g trivially for all g outside H."""
    t = rows(G)
    n = len(t)
    inv = [naive_inverse(t, g) for g in range(n)]
    for H in subgroups_by_generating_sets(G):
        if not 1 < len(H) < n:
            continue
        if all(
            not ({t[t[inv[g]][h]][g] for h in H} & H) - {0}
            for g in range(n) if g not in H
        ):
            return True
    return False


@pytest.mark.parametrize("spec, kernel, complement", [
    ("symmetric:3", 3, 2),
    ("dihedral:5", 5, 2),
    ("alternating:4", 4, 3),
    ("metacyclic_frobenius:7,3", 7, 3),
    ("metacyclic_frobenius:7,6", 7, 6),
    ("metacyclic_frobenius:5,4", 5, 4),
])
def test_frobenius_examples(spec, kernel, complement):
    fs = frobenius_structure(make(spec))
    assert fs is not None
    assert (fs.kernel.order, fs.complement.order) == (kernel, complement)
    assert kernel_complement_coprime(fs)


@pytest.mark.parametrize("spec", ["cyclic:1", "cyclic:2", "cyclic:6", "abelian:2,2", "dicyclic:3", "dihedral:4", "symmetric:4"])
def test_not_frobenius(spec):
    assert not is_frobenius(make(spec))


def test_frobenius_detection_matches_definition():
    for G in builtin_corpus(24):
        assert is_frobenius(G) == malnormal_subgroup_exists(G), G.label


@given(groups)
@settings(max_examples=40, deadline=None)
def test_frobenius_structure_invariants(G):
    fs = frobenius_structure(G)
    if fs is None:
        return
    K, H = fs.kernel, fs.complement
    assert 1 < K.order < G.order and H.order > 1
    assert K.order * H.order == G.order
    assert is_normal(G, K)
    assert K.member_set & H.member_set == {0}
    assert K.order % H.order == 1
    assert kernel_complement_coprime(fs)


@pytest.mark.parametrize("spec, p, order, count", [
    ("symmetric:3", 2, 2, 3),
    ("symmetric:3", 3, 3, 1),
    ("alternating:4", 2, 4, 1),
    ("alternating:4", 3, 3, 4),
    ("symmetric:4", 2, 8, 3),
    ("cyclic:6", 5, 1, 1),
])
def test_sylow_examples(spec, p, order, count):
    G = make(spec)
    assert sylow_subgroup(G, p).order == order
    assert len(sylow_subgroups(G, p)) == count


@given(groups)
@settings(max_examples=40, deadline=None)
def test_sylow_theorems(G):
    for p in prime_factors(G.order):
        P = sylow_subgroup(G, p)
        assert P.order == p_part(G.order, p)
        assert is_subgroup(G, P.members)
        count = len(sylow_subgroups(G, p))
        assert count % p == 1 % p and G.order % count == 0


def test_sylow_requires_prime():
    with pytest.raises(errors.NotPrime):
        sylow_subgroup(make("cyclic:4"), 4)


@pytest.mark.parametrize("spec, p, order", [
    ("symmetric:3", 2, 6),
    ("symmetric:3", 3, 3),
    ("alternating:4", 2, 4),
    ("alternating:4", 3, 12),
    ("cyclic:6", 2, 2),
])
def test_p_residual(spec, p, order):
    G = make(spec)
    R = p_residual(G, p)
    assert R.order == order
    assert is_normal(G, R)


def test_theoremB_exception_shapes():
    assert is_theoremB_exception(make("metacyclic_frobenius:7,6"), 7)
    assert is_theoremB_exception(make("symmetric:3"), 3)  # N_3 is the two 3-cycles
    assert not is_theoremB_exception(make("cyclic:4"), 2)


def test_c2_is_degenerate():
    C2 = make("cyclic:2")
    non = analyze_powers(C2, 2).non_powers
    assert non_powers_are_kernel(C2, non) == "degenerate"
    assert is_theoremB_exception(C2, 2)
    assert not is_frobenius(C2)


def test_non_powers_are_kernel_frobenius():
    F = make("metacyclic_frobenius:7,6")
    assert non_powers_are_kernel(F, analyze_powers(F, 7).non_powers) == "frobenius"
    assert non_powers_are_kernel(F, frozenset()) is None


@pytest.mark.parametrize("spec, p, case", [
    ("metacyclic_frobenius:7,6", 7, Case.FROBENIUS_N_NPLUS1),
    ("dicyclic:3", 3, Case.CENTRAL_EXT_HALF),
    ("metacyclic_frobenius:7,3", 7, Case.FROBENIUS_HALF),
    ("cyclic:3", 3, Case.FROBENIUS_HALF),
    ("alternating:4", 3, Case.GENERIC_BOUND),
    ("abelian:3,3", 3, Case.GENERIC_BOUND),
])
def test_classification_cases(spec, p, case):
    out = classify_new_jumps(make(spec), p)
    assert out.case is case


def test_classification_witnesses():
    out = classify_new_jumps(make("metacyclic_frobenius:7,6"), 7)
    assert (out.order, out.n) == (42, 6)
    assert out.witness == {"kernel_order": 7, "complement_order": 6, "shape": "frobenius"}
    out = classify_new_jumps(make("dicyclic:3"), 3)
    assert (out.order, out.n) == (12, 4)
    assert out.witness["quotient_order"] == 6
    assert (out.witness["kernel_order"], out.witness["complement_order"]) == (3, 2)
    out = classify_new_jumps(make("cyclic:3"), 3)
    assert out.witness["shape"] == "degenerate"


def test_classification_errors():
    with pytest.raises(errors.NotOddPrime):
        classify_new_jumps(make("symmetric:3"), 2)
    with pytest.raises(errors.NotOddPrime):
        classify_new_jumps(make("symmetric:3"), 9)
    with pytest.raises(errors.PrimeDoesNotDivideOrder):
        classify_new_jumps(make("symmetric:3"), 5)


def test_central_quotient_check():
    w = central_involution_quotient_check(make("dicyclic:3"), 3)
    assert w is not None and w.quotient.order == 6
    assert central_involution_quotient_check(make("alternating:4"), 3) is None
    with pytest.raises(errors.NotOddPrime):
        central_involution_quotient_check(make("dicyclic:3"), 2)


@given(groups)
@settings(max_examples=60, deadline=None)
def test_every_odd_prime_is_classified(G):
    for p in prime_factors(G.order):
        if p > 2:
            assert classify_new_jumps(G, p).case is not Case.UNCLASSIFIED
