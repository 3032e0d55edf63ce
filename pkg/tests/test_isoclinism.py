import itertools

import numpy as np
import pytest

import oracles
from conftest import trivial
from skewbrace.enumeration import census_up_to
from skewbrace.errors import InvarianceViolation
from skewbrace.isoclinism import (
    Classification,
    Isoclinism,
    additive_square_only,
    are_isomorphic,
    brace_isomorphisms,
    check_multiplicative_commutators,
    classify,
    is_isoclinic,
    theorem_invariance_report,
    verify_isoclinism,
)
from skewbrace.properties import predicates
from skewbrace.structure import corners


def identity_witness(B):
    c = corners(B)
    return Isoclinism(tuple(range(c.quotient.order)), tuple(range(len(c.derived))))


@pytest.fixture(scope="module")
def census6():
    return census_up_to(6)


@pytest.fixture(scope="module")
def classified8(census8):
    return classify(census8)


def test_brace_isomorphisms_match_bruteforce(census6, c4v4):
    braces = census6 + [c4v4, c4v4.relabel((0, 3, 2, 1)), c4v4.relabel((0, 2, 1, 3))]
    for B1, B2 in itertools.product(braces, repeat=2):
        if B1.order == B2.order:
            ref = oracles.all_isomorphisms([B1.add.rows, B1.circ.rows], [B2.add.rows, B2.circ.rows])
            assert brace_isomorphisms(B1, B2) == ref


def test_isomorphic_braces_found(census8):
    for B in census8:
        rest = tuple(reversed(range(1, B.order)))
        assert are_isomorphic(B, B.relabel((0, *rest)))
    distinct = [(a, b) for a, b in itertools.combinations(census8, 2) if a.order == b.order]
    assert not any(are_isomorphic(a, b) for a, b in distinct)


def test_isoclinic_examples(c4v4):
    assert is_isoclinic(trivial("S3"), c4v4) is None
    w = is_isoclinic(trivial("C4"), trivial("C2"))
    assert w == Isoclinism((0,), (0,))
    assert is_isoclinic(trivial("C2^2"), trivial("C1")) is not None
    # order 8 dihedral and quaternion trivial braces are isoclinic as groups are
    w = is_isoclinic(trivial("D4"), trivial("Q8"))
    assert w is not None and verify_isoclinism(trivial("D4"), trivial("Q8"), w) == (True, None)
    assert is_isoclinic(trivial("S3"), trivial("D4")) is None


def test_witness_is_lexicographically_first(census8):
    for B in census8:
        w = is_isoclinic(B, B)
        assert w is not None
        assert w.xi == tuple(range(len(w.xi)))


def test_agrees_with_bruteforce(census6):
    for B1, B2 in itertools.combinations_with_replacement(census6, 2):
        assert (is_isoclinic(B1, B2) is not None) == oracles.isoclinic_brute(B1, B2), (B1.name, B2.name)


def test_agrees_with_bruteforce_order8_spot(census8):
    braces = [B for B in census8 if B.order in (4, 8)][:20]
    for B1, B2 in itertools.combinations(braces, 2):
        if len(corners(B1).derived) <= 4 and len(corners(B2).derived) <= 4:
            assert (is_isoclinic(B1, B2) is not None) == oracles.isoclinic_brute(B1, B2), (B1.name, B2.name)


def test_verify_rejects_shape_and_bijection(c4v4):
    T = trivial("S3")
    ok, why = verify_isoclinism(T, c4v4, Isoclinism((0, 1), (0, 1)))
    assert not ok and why.startswith("shape")
    ok, why = verify_isoclinism(c4v4, c4v4, Isoclinism((0, 0), (0, 1)))
    assert not ok and "bijection" in why


def _star_only_failure(census):
    """A pair and bijections for which every check except the star square passes."""
    for B1, B2 in itertools.combinations(census, 2):
        if not additive_square_only(B1, B2) or is_isoclinic(B1, B2) is not None:
            continue
        c1, c2 = corners(B1), corners(B2)
        for xi in brace_isomorphisms(c1.quotient.quotient, c2.quotient.quotient):
            for th in brace_isomorphisms(c1.derived.as_brace, c2.derived.as_brace):
                x = np.asarray(xi)
                if (np.asarray(th)[c1.comm] == c2.comm[np.ix_(x, x)]).all():
                    return B1, B2, Isoclinism(xi, th)
    return None


def test_verify_detects_star_square_failure(census8):
    found = _star_only_failure(census8)
    assert found is not None
    B1, B2, w = found
    ok, why = verify_isoclinism(B1, B2, w)
    assert not ok and why.startswith("star square")


def test_equivalence_relation(census8, classified8):
    for B in census8:
        assert verify_isoclinism(B, B, identity_witness(B)) == (True, None)
    for (i, j), w in classified8.witnesses.items():
        assert verify_isoclinism(census8[i], census8[j], w) == (True, None)
        assert verify_isoclinism(census8[j], census8[i], w.inverse()) == (True, None)
    for members in classified8.classes:
        for i, j, k in itertools.permutations(members, 3):
            wij = classified8.witnesses[(i, j)] if i < j else classified8.witnesses[(j, i)].inverse()
            wjk = classified8.witnesses[(j, k)] if j < k else classified8.witnesses[(k, j)].inverse()
            assert verify_isoclinism(census8[i], census8[k], wij.then(wjk))[0]


def test_isomorphic_implies_isoclinic(census8):
    for B in census8[::3]:
        R = B.relabel((0, *reversed(range(1, B.order))))
        w = is_isoclinic(B, R)
        assert w is not None and verify_isoclinism(B, R, w)[0]


def test_classification_shape(census8, classified8):
    cl = classified8
    assert isinstance(cl, Classification)
    assert sorted(i for c in cl.classes for i in c) == list(range(len(census8)))
    assert cl.classes == sorted(cl.classes)
    for members in cl.classes:
        for i, j in itertools.combinations(members, 2):
            assert (i, j) in cl.witnesses
    # trivial braces on abelian groups form one class (everything is annihilated)
    abelian_trivial = [i for i, B in enumerate(census8)
                       if B.add.is_abelian and all(g == tuple(range(B.order)) for g in B.gamma)]
    assert len({cl.class_of(i) for i in abelian_trivial}) == 1


def test_classification_deterministic_with_jobs(census6):
    a = classify(census6)
    b = classify(census6, jobs=2)
    assert a.classes == b.classes and a.witnesses == b.witnesses


def test_multiplicative_commutator_checks(census8, classified8):
    for (i, j), w in classified8.witnesses.items():
        assert check_multiplicative_commutators(census8[i], census8[j], w) == (True, None)


def test_report(census8, classified8):
    ids = [B.name for B in census8]
    report = theorem_invariance_report(census8, classified8, ids=ids)
    s = report["summary"]
    assert s["violations"] == 0 and s["multiplicative_commutator_failures"] == 0
    assert s["classes"] == len(classified8.classes)
    assert s["additive_square_only_pairs"] > 0
    by_name = {B.name: B for B in census8}
    for c in report["classes"]:
        assert len({predicates(by_name[m]) for m in c["members"]}) == 1
        assert tuple(c["predicates"].values()) == predicates(by_name[c["members"][0]])


def test_report_raises_on_forged_class(census8):
    # force two braces with different predicates into a class
    pair = [next(B for B in census8 if B.name == name) for name in ("C4#0", "C4#1")]
    assert predicates(pair[0]) != predicates(pair[1])
    cl = Classification(pair, [[0, 1]], {(0, 1): Isoclinism((0,), (0,))})
    with pytest.raises(InvarianceViolation) as info:
        theorem_invariance_report(pair, cl)
    assert info.value.report["summary"]["violations"] > 0
